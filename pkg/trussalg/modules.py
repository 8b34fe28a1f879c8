import itertools

import numpy as np
from interface_meta import override

from trussalg.errors import (
    AxiomViolation,
    NotASubheap,
    NotInduced,
    VerificationFailure,
)
from trussalg.heaps import (
    DirectSum,
    IntegerGroup,
    class_index,
    class_label,
    direct_sum as direct_sum_groups,
    heap_quotient,
    retract,
    sub_heap_congruence,
)
from trussalg.morphisms import ModuleMorphism
from trussalg.structure import Operation, Structure, check_law
from trussalg.trusses import universal_ring, zero_ring
from trussalg.utils.debug import logging_scope


class ActionStructure(Structure):
    """
    Shared plumbing of structures with a scalar action on a carrier.

    The action is stored as a nested list table `[scalar][element]` when both
    the scalars and the carrier are finite, and as a callable otherwise.

    Attributes:
        scalars (Truss, Ring): The acting truss or ring.
        carrier (Heap, AbelianGroup): The acted upon heap or group.
    """

    ARITY = 1

    def __init__(self, scalars, carrier, action, name=None, validate=True):
        Structure.__init__(self, name=name, labels=getattr(carrier, "_labels", None))
        self.scalars = scalars
        self.carrier = carrier
        self.FINITE = carrier.FINITE
        if callable(action) and not isinstance(action, (list, tuple, np.ndarray)):
            if self.exhaustive:
                action = self._tabulate(action)
            else:
                self._table = None
                self._func = action
        if not callable(action) or isinstance(action, (list, tuple, np.ndarray)):
            table = np.asarray(action, dtype=np.int64)
            shape = (scalars.size,) + (carrier.size,) * self.ARITY
            self._table = table.reshape(shape).tolist()
            self._func = None
        if validate:
            self.validate()

    def _tabulate(self, action):
        xs = self.carrier.elements()
        return [
            [action(t, *args) for args in itertools.product(xs, repeat=self.ARITY)]
            for t in self.scalars.elements()
        ]

    @property
    def exhaustive(self):
        """bool: Whether scalars and carrier are finite, so that checks are exhaustive."""
        return self.carrier.FINITE and self.scalars.FINITE

    @property
    def size(self):
        return self.carrier.size

    def elements(self, window=None):
        return self.carrier.elements(window)

    def _contains(self, x):
        return x in self.carrier

    @property
    def window_exponent(self):
        return self.carrier.window_exponent

    def action_table(self):
        """np.ndarray: The action table (finite scalars and carrier only)."""
        if self._table is None:
            raise TypeError(f"`{self.name}` has a closed-form action.")
        return np.asarray(self._table, dtype=np.int64).reshape(
            (self.scalars.size,) + (self.carrier.size,) * self.ARITY
        )

    def _fail(self, name, witness):
        return AxiomViolation(name, witness, self.name)

    def _check(self, name, law, *domains):
        check_law(self._fail, name, law, *domains, exhaustive=self.exhaustive)


class TrussModule(ActionStructure):
    """
    A module over a truss: an abelian heap `M` with an action `T x M -> M`
    satisfying

        (M1) t(t'm) = (tt')m
        (M2) [t,t',t'']m = [tm, t'm, t''m]
        (M3) t[m,n,e] = [tm, tn, te]
    """

    KIND = Structure.Kind.MODULE
    KEYWORDS = ["module"]

    @property
    def truss(self):
        return self.scalars

    @property
    def heap(self):
        return self.carrier

    def act(self, t, m):
        if self._table is not None:
            return self._table[t][m]
        return self._func(t, m)

    def bracket(self, a, b, c):
        return self.carrier.bracket(a, b, c)

    @override
    def operations(self):
        return [
            Operation("bracket", 3, self.bracket),
            Operation("act", 1, self.act, scalars=self.truss.elements()),
        ]

    def validate(self):
        """
        Check M1-M3, exhaustively when finite.

        Raises:
            AxiomViolation: With the failing axiom and a witness `(t,...,m,...)`.
        """
        ts, ms = self.truss.elements(), self.elements()
        act, mul, br, tbr = self.act, self.truss.mul, self.bracket, self.truss.bracket
        self._check("M1", lambda t, s, m: act(t, act(s, m)) == act(mul(t, s), m), ts, ts, ms)
        self._check(
            "M2",
            lambda t, s, r, m: act(tbr(t, s, r), m) == br(act(t, m), act(s, m), act(r, m)),
            ts, ts, ts, ms,
        )
        self._check(
            "M3",
            lambda t, m, n, e: act(t, br(m, n, e)) == br(act(t, m), act(t, n), act(t, e)),
            ts, ms, ms, ms,
        )
        return self

    @property
    def is_unital(self):
        """bool: Whether the unit of a unital truss acts as the identity."""
        u = self.truss.unit
        return u is not None and all(self.act(u, m) == m for m in self.elements())

    def describe(self):
        return f"module {self.name or ''} over `{self.truss.name}` on {self.heap.describe()}"


def validate_module(truss, heap, action, name=None):
    """Build and validate a module over a truss (exhaustively when finite)."""
    return TrussModule(truss, heap, action, name=name)


def absorbers(module):
    """set: The elements `e` with `t.e = e` for every `t`."""
    ts = module.truss.elements()
    return {e for e in module.elements() if all(module.act(t, e) == e for t in ts)}


def induced_action(module, e, name=None):
    """
    The e-induced module: `t |>_e m = [t.m, t.e, e]`. The element `e` is an
    absorber of the result.
    """
    module.require(e)
    return TrussModule(
        module.truss,
        module.heap,
        lambda t, m: module.bracket(module.act(t, m), module.act(t, e), e),
        name=name or f"{module.name}|>{module.label(e)}",
    )


def induced_violation(module, subset):
    """The first `(t, n, e)` in `T x N x N` with `t |>_e n` outside `N`, or `None`."""
    inside = set(subset)
    for t in module.truss.elements():
        for n in sorted(inside):
            for e in sorted(inside):
                if module.bracket(module.act(t, n), module.act(t, e), e) not in inside:
                    return t, n, e
    return None


def is_induced_submodule(module, subset):
    """Whether `subset` is a sub-heap closed under every induced action."""
    try:
        sub_heap_congruence(module.heap, subset)
    except NotASubheap:
        return False
    return induced_violation(module, subset) is None


@logging_scope("Module quotient")
def module_quotient(module, subset, name=None):
    """
    The quotient of a finite module by an induced submodule.

    Returns:
        tuple<TrussModule, ModuleMorphism>: The quotient and its projection.

    Raises:
        NotASubheap: If `subset` is not a non-empty sub-heap.
        NotInduced: If some `t |>_e n` leaves `subset`.
    """
    classes = sub_heap_congruence(module.heap, subset)
    witness = induced_violation(module, subset)
    if witness is not None:
        t, n, e = witness
        raise NotInduced(
            f"{class_label(module, subset)} is not an induced submodule.",
            (module.truss.label(t), module.label(n), module.label(e)),
        )
    quotient_heap, projection = heap_quotient(module.heap, subset)
    class_of = class_index(classes, module.size)
    table = [[class_of[module.act(t, min(c))] for c in classes] for t in module.truss.elements()]
    for t in module.truss.elements():
        for m in module.elements():
            if class_of[module.act(t, m)] != table[t][class_of[m]]:
                raise VerificationFailure("action well defined on classes", (t, m))
    quotient = TrussModule(
        module.truss, quotient_heap, table, name=name or f"{module.name}/{class_label(module, subset)}"
    )
    return quotient, ModuleMorphism(module, quotient, projection.table, name="projection")


# Pointed modules


class PointedModule(ActionStructure):
    """
    A pointed module over a truss: an abelian group `G` with an action
    satisfying

        [t,t',t''].g = t.g - t'.g + t''.g
        t.(g + h) = t.g + t.h
        t.(t'.g) = (tt').g

    Equivalently (see `action_representation`), a truss morphism
    T -> T(End(G)).
    """

    KIND = Structure.Kind.POINTED
    KEYWORDS = ["pointed"]

    @property
    def truss(self):
        return self.scalars

    @property
    def group(self):
        return self.carrier

    @property
    def zero(self):
        return self.carrier.zero

    def act(self, t, g):
        if self._table is not None:
            return self._table[t][g]
        return self._func(t, g)

    def add(self, x, y):
        return self.carrier.add(x, y)

    @override
    def operations(self):
        return [
            Operation("add", 2, self.add),
            Operation("act", 1, self.act, scalars=self.truss.elements()),
        ]

    @override
    def constants(self):
        return {"zero": self.zero}

    def validate(self):
        """
        Raises:
            AxiomViolation: With the failing law (`bracket-linearity`,
                `additivity` or `associativity`) and a witness.
        """
        ts, gs = self.truss.elements(), self.elements()
        G, act, mul, tbr = self.group, self.act, self.truss.mul, self.truss.bracket
        self._check(
            "bracket-linearity",
            lambda t, s, r, g: act(tbr(t, s, r), g) == G.bracket(act(t, g), act(s, g), act(r, g)),
            ts, ts, ts, gs,
        )
        self._check(
            "additivity", lambda t, g, h: act(t, G.add(g, h)) == G.add(act(t, g), act(t, h)), ts, gs, gs
        )
        self._check("associativity", lambda t, s, g: act(t, act(s, g)) == act(mul(t, s), g), ts, ts, gs)
        return self

    def describe(self):
        return f"pointed module {self.name or ''} over `{self.truss.name}` on {self.group.describe()}"


def validate_pointed(truss, group, action, name=None):
    """Build and validate a pointed module (exhaustively when finite)."""
    return PointedModule(truss, group, action, name=name)


def action_representation(pointed):
    """
    The map `t -> (g -> t.g)` into the endomorphisms of the group, checked
    to be a truss morphism into T(End(G)): brackets are sent to pointwise
    `f - f' + f''` and products to composites.

    Returns:
        dict: The endomorphism (as an image tuple) of each scalar.

    Raises:
        AxiomViolation: With the scalars at which the representation fails.
    """
    G = pointed.group
    gs = pointed.elements()
    ts = pointed.truss.elements()
    rep = {t: tuple(pointed.act(t, g) for g in gs) for t in ts}
    index = {g: i for i, g in enumerate(gs)}
    for t in ts:
        for g in gs:
            for h in gs:
                if rep[t][index[G.add(g, h)]] != G.add(rep[t][index[g]], rep[t][index[h]]):
                    raise AxiomViolation("endomorphism", (t, g, h), pointed.name)
    for t, s, r in itertools.product(ts, repeat=3):
        expected = tuple(G.bracket(a, b, c) for a, b, c in zip(rep[t], rep[s], rep[r]))
        if rep[pointed.truss.bracket(t, s, r)] != expected:
            raise AxiomViolation("representation bracket", (t, s, r), pointed.name)
    for t, s in itertools.product(ts, repeat=2):
        if rep[pointed.truss.mul(t, s)] != tuple(rep[t][index[x]] for x in rep[s]):
            raise AxiomViolation("representation product", (t, s), pointed.name)
    return rep


class DirectSumModule(PointedModule):
    """The direct sum of pointed modules over the same truss, acting componentwise."""

    def __init__(self, *summands, name=None):
        self.summands = summands
        group = direct_sum_groups(*[s.group for s in summands])
        if group.FINITE:
            tuples = list(itertools.product(*[s.elements() for s in summands]))
            index = {parts: i for i, parts in enumerate(tuples)}

            def action(t, g):
                return index[tuple(s.act(t, x) for s, x in zip(summands, tuples[g]))]

        else:

            def action(t, g):
                return tuple(s.act(t, x) for s, x in zip(summands, g))

        PointedModule.__init__(
            self,
            summands[0].truss,
            group,
            action,
            name=name or " (+) ".join(s.name or "?" for s in summands),
            validate=False,
        )


def direct_sum(*pointed, name=None):
    """The direct sum of pointed modules over one truss."""
    return DirectSumModule(*pointed, name=name)


# Ring modules and the isomorphism with pointed modules


class RingModule(ActionStructure):
    """
    A module over a ring (in the usual sense, not necessarily unital).
    Actions of symbolic rings are checked on the integer window.
    """

    KIND = Structure.Kind.RING_MODULE

    truss = None

    @property
    def ring(self):
        return self.scalars

    @property
    def group(self):
        return self.carrier

    @property
    def zero(self):
        return self.carrier.zero

    def act(self, r, g):
        if self._table is not None:
            return self._table[r][g]
        return self._func(r, g)

    def add(self, x, y):
        return self.carrier.add(x, y)

    @override
    def operations(self):
        return [
            Operation("add", 2, self.add),
            Operation("act", 1, self.act, scalars=self.ring.elements()),
        ]

    @override
    def constants(self):
        return {"zero": self.zero}

    def validate(self):
        """
        Raises:
            AxiomViolation: With the failing law and a witness.
        """
        rs, gs = self.ring.elements(), self.elements()
        R, G, act = self.ring, self.group, self.act
        self._check("scalar additivity", lambda r, s, g: act(R.add(r, s), g) == G.add(act(r, g), act(s, g)), rs, rs, gs)
        self._check("additivity", lambda r, g, h: act(r, G.add(g, h)) == G.add(act(r, g), act(r, h)), rs, gs, gs)
        self._check("associativity", lambda r, s, g: act(R.mul(r, s), g) == act(r, act(s, g)), rs, rs, gs)
        return self

    def describe(self):
        return f"module {self.name or ''} over `{self.ring.name}` on {self.group.describe()}"


def pointed_to_ring_module(pointed, o=None, ring=None):
    """
    The R(T)-module of a pointed T-module:
    `(t,n).g = t.g + (n-1)(o.g)`.

    Args:
        pointed (PointedModule): The pointed module.
        o: The basepoint of R(T) (ignored when `ring` is given).
        ring (UniversalRing, None): A prebuilt R(T).
    """
    truss = pointed.truss
    G = pointed.group
    if truss.is_empty:
        ring = ring or zero_ring(name=f"R({truss.name})")
        module = RingModule(ring, G, lambda r, g: G.zero, name=f"{pointed.name}@R")
        module.truss = truss
        return module
    if ring is None:
        ring, _ = universal_ring(truss, o, validate=False)
    o = ring.basepoint
    module = RingModule(
        ring,
        G,
        lambda r, g: G.add(pointed.act(r[0], g), G.multiple(r[1] - 1, pointed.act(o, g))),
        name=f"{pointed.name}@R",
    )
    module.truss = truss
    return module


def ring_module_to_pointed(module, truss=None):
    """
    The pointed T-module of an R(T)-module, by restriction along iota:
    `t.g = (t,1).g`.
    """
    truss = truss or getattr(module, "truss", None) or module.ring.truss
    G = module.group
    if truss.is_empty:
        return PointedModule(truss, G, lambda t, g: g, name=f"{module.name}@T")
    return PointedModule(truss, G, lambda t, g: module.act((t, 1), g), name=f"{module.name}@T")


def transport_pointed_morphism(f, source=None, target=None, o=None):
    """
    Regard a T-linear map of pointed modules as an R(T)-linear map of the
    corresponding ring modules, validating it as such.
    """
    ring = None if f.dom.truss.is_empty else universal_ring(f.dom.truss, o, validate=False)[0]
    source = source or pointed_to_ring_module(f.dom, ring=ring)
    target = target or pointed_to_ring_module(f.cod, ring=source.ring)
    return ModuleMorphism(source, target, f.table if f.table is not None else f, name=f.name)


def transport_ring_morphism(f, source=None, target=None):
    """
    Regard an R(T)-linear map of ring modules as a T-linear map of the pointed
    modules obtained by restriction along iota, validating it as such. This
    inverts `transport_pointed_morphism`.
    """
    source = source or ring_module_to_pointed(f.dom)
    target = target or ring_module_to_pointed(f.cod, truss=source.truss)
    return ModuleMorphism(source, target, f.table if f.table is not None else f, name=f.name)


# Generated submodules


def single_generated(pointed, x, e=None):
    """
    The closed form `{t.x + n(e.x) + m x}` of the submodule generated by `x`,
    with `n`, `m` reduced modulo the group exponent.
    """
    G = pointed.group
    k = G.exponent
    multiples = [G.multiple(m, x) for m in range(k)]
    if pointed.truss.is_empty:
        return frozenset(multiples)
    e = pointed.truss.default_basepoint() if e is None else e
    ex = pointed.act(e, x)
    shifts = {G.add(G.multiple(n, ex), mx) for n in range(k) for mx in multiples}
    return frozenset(G.add(pointed.act(t, x), s) for t in pointed.truss.elements() for s in shifts)


def generated_submodule(pointed, generators, e=None):
    """
    The R(T)-submodule generated by `generators`: the sum of the closed forms
    of the submodules generated by each generator.

    Returns:
        frozenset: The submodule.
    """
    G = pointed.group
    out = {G.zero}
    for x in generators:
        part = single_generated(pointed, x, e)
        out = {G.add(a, b) for a in out for b in part}
    return frozenset(out)


def submodule_closure(pointed, generators):
    """The closure of `{0} + generators` under `+`, `-` and every `t.`."""
    G = pointed.group
    ts = pointed.truss.elements()
    out = {G.zero} | set(generators)
    frontier = set(out)
    while frontier:
        new = set()
        for a in frontier:
            candidates = [G.neg(a)] + [pointed.act(t, a) for t in ts] + [G.add(a, b) for b in out]
            new.update(c for c in candidates if c not in out)
        out |= new
        frontier = new
    return frozenset(out)


# Free pointed modules


class FreePointedModule(PointedModule):
    """
    The free pointed module on one generator, on G(T;o) x Z x Z, with action

        t.(s,n,p) = (ts + (n-1)to + pt, n+p, 0)

    and basis `(o,0,1)`.
    """

    def __init__(self, truss, o=None, name=None):
        o = truss.default_basepoint() if o is None else o
        self.basepoint = o
        G = retract(truss.heap, o)
        self.retract = G

        def action(t, x):
            s, n, p = x
            return (
                G.sum([truss.mul(t, s), G.multiple(n - 1, truss.mul(t, o)), G.multiple(p, t)]),
                n + p,
                0,
            )

        PointedModule.__init__(
            self,
            truss,
            DirectSum(G, IntegerGroup(), IntegerGroup()),
            action,
            name=name or f"F({truss.name})",
            validate=False,
        )

    @property
    def basis(self):
        return (self.basepoint, 0, 1)

    def universal_map(self, target, g):
        """The linear map `(s,n,p) -> s.g + (n-1)(o.g) + p g` sending the basis to `g`."""
        H = target.group
        og = target.act(self.basepoint, g)
        return lambda x: H.sum([target.act(x[0], g), H.multiple(x[1] - 1, og), H.multiple(x[2], g)])

    def decompose(self, x):
        """Rebuild `(s,n,p)` as `s.b + (n-1)(o.b) + p b` from the basis `b`."""
        b = self.basis
        G = self.group
        return G.sum(
            [self.act(x[0], b), G.multiple(x[1] - 1, self.act(self.basepoint, b)), G.multiple(x[2], b)]
        )


class UnitalFreeModule(PointedModule):
    """
    The free unital pointed module on one generator over a unital truss, on
    G(T;1) x Z with action `t.(s,n) = (ts + (n-1)t, n)` and basis `(1,1)`.
    """

    def __init__(self, truss, name=None):
        u = truss.unit
        G = retract(truss.heap, u)
        self.retract = G

        def action(t, x):
            s, n = x
            return (G.add(truss.mul(t, s), G.multiple(n - 1, t)), n)

        PointedModule.__init__(
            self, truss, DirectSum(G, IntegerGroup()), action, name=name or f"F1({truss.name})", validate=False
        )

    @property
    def basis(self):
        return (self.truss.unit, 1)

    def universal_map(self, target, g):
        """The linear map `(s,n) -> s.g + (n-1)g`."""
        H = target.group
        return lambda x: H.add(target.act(x[0], g), H.multiple(x[1] - 1, g))

    def decompose(self, x):
        b = self.basis
        return self.group.add(self.act(x[0], b), self.group.multiple(x[1] - 1, b))


class FreeAbelianModule(PointedModule):
    """The free pointed module over the empty truss: Z with basis 1."""

    def __init__(self, truss, name=None):
        PointedModule.__init__(self, truss, IntegerGroup(), lambda t, x: x, name=name or "Z", validate=False)

    @property
    def basis(self):
        return 1

    def universal_map(self, target, g):
        return lambda x: target.group.multiple(x, g)

    def decompose(self, x):
        return self.group.multiple(x, 1)


def free_module_on_one(truss, o=None, unital=False, name=None):
    if truss.is_empty:
        return FreeAbelianModule(truss, name=name)
    if unital:
        return UnitalFreeModule(truss, name=name)
    return FreePointedModule(truss, o, name=name)


def free_pointed_module(truss, symbols=("*",), o=None, unital=False, validate=True):
    """
    The free pointed module on a finite set of symbols: one free module per
    symbol, summed when there are several.

    Args:
        truss (Truss): The truss.
        symbols (iterable): The generators.
        o: The basepoint of G(T;o).
        unital (bool): Use the unital variant G(T;1) x Z (unital trusses only).
        validate (bool): Check the pointed module laws on the window.

    Returns:
        tuple<PointedModule, dict>: The free module and the insertion of
            generators.
    """
    symbols = list(symbols)
    parts = [free_module_on_one(truss, o, unital, name=f"F<{s}>") for s in symbols]
    if len(parts) == 1:
        free = parts[0]
        insertion = {symbols[0]: free.basis}
    else:
        free = DirectSumModule(*parts, name=f"F({truss.name};{','.join(map(str, symbols))})")
        zeros = [p.zero for p in parts]
        insertion = {
            s: tuple(p.basis if i == j else z for j, (p, z) in enumerate(zip(parts, zeros)))
            for i, s in enumerate(symbols)
        }
    free.symbols = symbols
    if validate:
        free.validate()
    return free, insertion


def universal_map(free, assignment, target, validate=True):
    """
    The unique pointed-module morphism out of a free module sending each
    generator to `assignment[symbol]` in `target`.

    Returns:
        ModuleMorphism: The morphism, validated on the window; its uniqueness
            follows from every element decomposing over the basis, which is
            checked as well.
    """
    if isinstance(free, DirectSumModule):
        maps = [
            part.universal_map(target, assignment[s]) for part, s in zip(free.summands, free.symbols)
        ]

        def func(x):
            return target.group.sum(m(c) for m, c in zip(maps, x))

        decomposable = all(
            part.decompose(x) == x for part in free.summands for x in part.elements()
        )
    else:
        func = free.universal_map(target, assignment[free.symbols[0]])
        decomposable = all(free.decompose(x) == x for x in free.elements())
    if not decomposable:
        raise VerificationFailure("free module generated by its basis", ())
    return ModuleMorphism(free, target, func, name="phi", validate=validate)
