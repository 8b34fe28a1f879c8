"""
Limits and colimits of heaps of modules.

Finite constructions (equalizers, products, pullbacks, quotients,
coequalizers, pushouts) produce finite heaps of modules with explicit
structure maps. Coproducts of two or more non-empty members contain free
pointed summands and are symbolic.

Every construction has a `verify_*` counterpart certifying its universal
property against all cones (or cocones) over a list of finite targets.
"""

import itertools

import numpy as np

from trussalg.errors import (
    ElementNotInCarrier,
    NotAMorphism,
    NotASubHeapOfModules,
    NotIsomorphic,
    VerificationFailure,
)
from trussalg.heap_modules import (
    HeapOfModules,
    cartesian_product,
    functor_G,
)
from trussalg.heaps import (
    FiniteHeap,
    class_index,
    class_label,
    enumerate_congruences,
    heap_from_group,
    sub_heap_congruence,
)
from trussalg.iso import hom_morphisms, iso_search
from trussalg.modules import DirectSumModule, free_module_on_one, generated_submodule
from trussalg.morphisms import HomMorphism
from trussalg.structure import find_witness, sample_limit
from trussalg.utils.config import config
from trussalg.utils.debug import logger, logging_scope

config.register(
    "cocone_target_limit",
    description="The largest finite target against which (co)cones are enumerated when "
    "certifying a universal property.",
    default=8,
    type=int,
)
config.register(
    "cocone_samples",
    description="The number of sampled tuples on which a mediating map out of a symbolic "
    "coproduct is checked to be a morphism, for each cocone.",
    default=2000,
    type=int,
)


# Sub-heaps of modules


def subhom_violation(hom, subset):
    """
    The first failure of `subset` to be closed under the bracket or under
    `(t, n, n') -> t |>_n n'`, as `(operation, *arguments)`, or `None`.
    """
    inside = set(subset)
    members = sorted(inside)
    for triple in itertools.product(members, repeat=3):
        if hom.bracket(*triple) not in inside:
            return ("bracket",) + triple
    for t in hom.truss.elements():
        for n, m in itertools.product(members, repeat=2):
            if hom.act(t, n, m) not in inside:
                return ("act", t, n, m)
    return None


def is_subhom(hom, subset):
    return subhom_violation(hom, subset) is None


def _require_subhom(hom, subset):
    witness = subhom_violation(hom, subset)
    if witness is not None:
        raise NotASubHeapOfModules(
            f"{class_label(hom, subset)} is not closed under {witness[0]} in `{hom.name}`.",
            (witness[0],) + tuple(witness[1:]),
        )


def substructure(hom, subset, name=None):
    """
    The sub-heap of modules on `subset`, with ids in increasing order.

    Returns:
        tuple<HeapOfModules, HomMorphism>: The substructure and its inclusion.

    Raises:
        NotASubHeapOfModules: If `subset` is not closed.
    """
    members = sorted(set(subset))
    _require_subhom(hom, members)
    idx = np.array(members, dtype=np.int64)
    position = {m: i for i, m in enumerate(members)}
    lookup = np.vectorize(position.__getitem__, otypes=[np.int64])
    if members:
        bracket = lookup(hom.heap.table[np.ix_(idx, idx, idx)])
        action = lookup(hom.action_table()[:, idx[:, None], idx[None, :]])
    else:
        bracket = np.zeros((0, 0, 0), dtype=np.int64)
        action = np.zeros((hom.truss.size, 0, 0), dtype=np.int64)
    sub = HeapOfModules(
        hom.truss,
        FiniteHeap(bracket, labels=[hom.label(m) for m in members], name=name, validate=False),
        action,
        name=name or f"{hom.name}|{class_label(hom, members)}",
        validate=False,
    )
    return sub, HomMorphism(sub, hom, members, name="inclusion", validate=False)


def generated_subhom(hom, subset, e=None):
    """
    The sub-heap of modules generated by `subset` and containing `e`: the
    odd-length brackets of `{e} + N + {t |>_e n}`, i.e. the subgroup of
    G(M;e) they generate.

    Returns:
        frozenset: The sub-heap of modules.
    """
    e = hom.basepoint if e is None else e
    pointed = functor_G(hom, e)
    generators = set(subset) | {hom.act(t, e, n) for t in hom.truss.elements() for n in subset}
    G = pointed.group
    out = {e}
    frontier = {e}
    while frontier:
        new = set()
        for a in frontier:
            for x in generators:
                for c in (G.add(a, x), G.sub(a, x)):
                    if c not in out:
                        new.add(c)
        out |= new
        frontier = new
    return frozenset(out)


def subhom_closure(hom, subset, e=None):
    """The closure of `{e} + subset` under the bracket and every `t |>_a`."""
    e = hom.basepoint if e is None else e
    out = {e} | set(subset)
    while True:
        members = sorted(out)
        new = {hom.bracket(*triple) for triple in itertools.product(members, repeat=3)}
        new |= {hom.act(t, a, b) for t in hom.truss.elements() for a in members for b in members}
        if new <= out:
            return frozenset(out)
        out |= new


# Limits


def equalizer(f, g, name=None):
    """
    The equalizer `{x : f(x) = g(x)}` of a parallel pair (possibly empty).

    Returns:
        tuple<HeapOfModules, HomMorphism>: The equalizer and its inclusion.
    """
    _require_parallel(f, g)
    subset = [x for x in f.dom.elements() if f(x) == g(x)]
    return substructure(f.dom, subset, name=name or f"Eq({f.name},{g.name})")


def product(family, truss=None, name=None):
    """
    The product of a finite family, with componentwise structure. The empty
    family gives the terminal singleton over `truss`.

    Returns:
        tuple<ProductHom, list<HomMorphism>>: The product and its projections.
    """
    family = list(family)
    prod = cartesian_product(*family, truss=truss, name=name)
    return prod, [prod.projection(i) for i in range(len(family))]


def terminal(truss, name="*"):
    """The terminal heap of modules: a singleton."""
    return cartesian_product(truss=truss, name=name)


def pullback(f, g, name=None):
    """
    The pullback `{(m,n) : f(m) = g(n)}` of a cospan `M -> O <- N`.

    Returns:
        tuple<HeapOfModules, list<HomMorphism>>: The pullback and its two
            projections.
    """
    if f.cod is not g.cod:
        raise ValueError("A pullback needs two maps into the same object.")
    prod = cartesian_product(f.dom, g.dom)
    subset = [i for i, (m, n) in enumerate(prod.coordinates) if f(m) == g(n)]
    sub, inclusion = substructure(prod, subset, name=name or f"{f.dom.name} x_{f.cod.name} {g.dom.name}")
    sub.coordinates = [prod.coordinates[i] for i in subset]
    projections = [prod.projection(i).compose(inclusion) for i in range(2)]
    return sub, projections


def kernel_pair(h, name=None):
    """The kernel pair `{(a,b) : h(a) = h(b)}` of a morphism, with its projections."""
    return pullback(h, h, name=name or f"KP({h.name})")


# Quotients


@logging_scope("Quotient of heap of modules")
def hom_quotient(hom, subset, name=None):
    """
    The quotient of a finite heap of modules by the sub-heap relation of a
    sub-heap of modules `N`: `a ~ b` iff `[a,b,n]` lies in `N`.

    Returns:
        tuple<HeapOfModules, HomMorphism>: The quotient and its projection.

    Raises:
        NotASubHeapOfModules: If `subset` is empty or not closed.
    """
    members = sorted(set(subset))
    if not members:
        raise NotASubHeapOfModules("A quotient needs a non-empty sub-heap of modules.", ())
    _require_subhom(hom, members)
    classes = sub_heap_congruence(hom.heap, members)
    return quotient_by_classes(hom, classes, name=name or f"{hom.name}/{class_label(hom, members)}")


def quotient_by_classes(hom, classes, name=None):
    """The quotient of a finite heap of modules by a congruence given by its classes."""
    class_of = np.asarray(class_index(classes, hom.size), dtype=np.int64)
    reps = np.array([min(c) for c in classes], dtype=np.int64)
    bracket = hom.heap.table
    action = hom.action_table()
    q_bracket = class_of[bracket[np.ix_(reps, reps, reps)]]
    q_action = class_of[action[:, reps[:, None], reps[None, :]]]
    if not (
        np.array_equal(class_of[bracket], q_bracket[np.ix_(class_of, class_of, class_of)])
        and np.array_equal(class_of[action], q_action[:, class_of[:, None], class_of[None, :]])
    ):
        raise VerificationFailure("congruence", tuple(sorted(classes[0])))
    quotient = HeapOfModules(
        hom.truss,
        FiniteHeap(q_bracket, labels=[class_label(hom, c) for c in classes], name=name, validate=False),
        q_action,
        name=name,
        validate=False,
    )
    return quotient, HomMorphism(hom, quotient, class_of.tolist(), name="projection", validate=False)


def factor_through_quotient(projection, g):
    """
    The unique morphism `g~` with `g~ o projection = g`, for a morphism `g`
    constant on the classes of the projection.

    Raises:
        VerificationFailure: If `g` separates two elements of one class.
    """
    table = [None] * projection.cod.size
    for x in projection.dom.elements():
        c = projection(x)
        if table[c] is None:
            table[c] = g(x)
        elif table[c] != g(x):
            raise VerificationFailure("constant on classes", (projection.dom.label(x),))
    return HomMorphism(projection.cod, g.cod, table, name=f"{g.name or 'g'}~")


def enumerate_hom_congruences(hom):
    """Enumerate the congruences of a finite heap of modules, as lists of classes."""
    action = hom.action_table()
    return enumerate_congruences(hom.heap, *[action[t] for t in range(hom.truss.size)])


def congruence_class_subhom(hom, classes, e=None):
    """The class of `e` in a congruence: a sub-heap of modules whose relation is the congruence."""
    e = hom.basepoint if e is None else e
    return next(c for c in classes if e in c)


# Colimits


def _require_parallel(f, g):
    if f.dom is not g.dom or f.cod is not g.cod:
        raise ValueError("Expected a parallel pair of morphisms.")


def coequalizer_subhom(f, g, e=None):
    """
    The sub-heap of modules `[[f,g]]_e` generated by `[f(x), g(x), e]`,
    whose relation is the congruence generated by the pairs `(f(x), g(x))`.
    """
    H = f.cod
    e = H.basepoint if e is None else e
    return generated_subhom(H, {H.bracket(f(x), g(x), e) for x in f.dom.elements()}, e)


def coequalizer_decomposed_subhom(f, g, o=None, e=None):
    """
    The same sub-heap of modules through the pointed decomposition
    `f = alpha + a`, `g = beta + b` at basepoints `o` and `e`:
    `Im(alpha - beta) + <a - b>_T` in G(H;e).
    """
    H = f.cod
    e = H.basepoint if e is None else e
    o = f.dom.basepoint if o is None else o
    pointed = functor_G(H, e)
    G = pointed.group
    a, b = f(o), g(o)
    image = {G.sub(H.bracket(f(x), a, e), H.bracket(g(x), b, e)) for x in f.dom.elements()}
    cyclic = generated_submodule(pointed, [G.sub(a, b)], e)
    return frozenset(G.add(u, v) for u in image for v in cyclic)


@logging_scope("Coequalizer")
def coequalizer(f, g, e=None, compare=True, name=None):
    """
    The coequalizer of a parallel pair, as a quotient of the codomain by
    `[[f,g]]_e`. With `compare`, the quotient by the pointed decomposition
    is built too and shown isomorphic (over the two projections).

    Returns:
        tuple<HeapOfModules, HomMorphism>: The coequalizer and its projection.
    """
    _require_parallel(f, g)
    H = f.cod
    if f.dom.is_empty:
        return H, HomMorphism.identity(H)
    if H.is_empty:
        return H, HomMorphism.identity(H)
    subset = coequalizer_subhom(f, g, e)
    quotient, projection = hom_quotient(H, subset, name=name or f"Coeq({f.name},{g.name})")
    if compare:
        other, other_projection = hom_quotient(H, coequalizer_decomposed_subhom(f, g, e=e))
        try:
            iso_search(
                quotient,
                other,
                constraints=lambda iso: all(
                    iso(projection(x)) == other_projection(x) for x in H.elements()
                ),
            )
        except NotIsomorphic as exc:
            raise VerificationFailure("coequalizer constructions agree", (f.name, g.name)) from exc
    return quotient, projection


@logging_scope("Pushout")
def pushout(f, g, e=None, name=None):
    """
    The pushout of a span `K <- G -> H`: the product K x H (the heap of
    G(K;f(e)) + G(H;g(e))) modulo the sub-heap of modules
    `{(f(x), -g(x))}`. An empty apex gives the coproduct.

    Returns:
        tuple<HeapOfModules, list<HomMorphism>>: The pushout and its legs
            from K and from H.
    """
    if f.dom is not g.dom:
        raise ValueError("A pushout needs two maps out of the same object.")
    if f.dom.is_empty:
        return coproduct([f.cod, g.cod], truss=f.dom.truss)
    K, H = f.cod, g.cod
    e = f.dom.basepoint if e is None else e
    fe, ge = f(e), g(e)
    prod = cartesian_product(K, H)
    subset = {prod.tuple_id((f(x), H.bracket(ge, g(x), ge))) for x in f.dom.elements()}
    quotient, projection = hom_quotient(prod, subset, name=name or f"{K.name} +_{f.dom.name} {H.name}")
    legs = [
        HomMorphism(K, quotient, [projection(prod.tuple_id((k, ge))) for k in K.elements()], name="leg1"),
        HomMorphism(H, quotient, [projection(prod.tuple_id((fe, h))) for h in H.elements()], name="leg2"),
    ]
    quotient.apex = (fe, ge)
    quotient.product = prod
    quotient.quotient_map = projection
    return quotient, legs


class CoproductHom(HeapOfModules):
    """
    The coproduct of a family of heaps of modules over one truss.

    Non-empty members are pointed at chosen basepoints `e_i`; the carrier is
    the heap of the pointed module

        G(M_0;e_0) + ... + G(M_n;e_n) + F_j (j != i0)

    with one free pointed module on a generator `b_j` per member other than
    `i0`. The injections are `x -> x` (in slot `i0`) and `x -> x + b_j`.

    Attributes:
        members (list<HeapOfModules>): The non-empty members.
        basepoints (list): The chosen `e_i`.
        i0 (int): The index of the member injected without a free summand.
        pointed (DirectSumModule): The pointed module underlying the carrier.
        free (dict<int, PointedModule>): The free summand of each `j != i0`.
        unital (bool): Whether the unital free module is used.
    """

    def __init__(self, members, basepoints=None, i0=0, name=None):
        truss = members[0].truss
        self.members = list(members)
        self.basepoints = list(basepoints) if basepoints is not None else [m.basepoint for m in members]
        self.i0 = i0
        self.unital = bool(truss.is_unital and all(m.is_isotropic for m in members))
        self._injections = {}
        parts = [functor_G(m, e) for m, e in zip(members, self.basepoints)]
        self.free = {
            j: free_module_on_one(truss, unital=self.unital, name=f"F<b{j}>")
            for j in range(len(members))
            if j != i0
        }
        self.slots = {j: len(parts) + k for k, j in enumerate(sorted(self.free))}
        self.pointed = DirectSumModule(*parts, *[self.free[j] for j in sorted(self.free)], name=name)
        G = self.pointed.group
        pointed = self.pointed
        HeapOfModules.__init__(
            self,
            truss,
            heap_from_group(G),
            lambda t, x, y: G.bracket(pointed.act(t, y), pointed.act(t, x), x),
            name=name or " + ".join(m.name or "?" for m in members),
            validate=False,
        )

    @property
    def group(self):
        return self.pointed.group

    def _slot(self, i, value):
        out = list(self.group.zero)
        out[i] = value
        return tuple(out)

    def injection(self, i):
        """HomMorphism: The injection of the `i`-th member."""
        if i in self._injections:
            return self._injections[i]
        member = self.members[i]
        if i == self.i0:
            func = lambda x: self._slot(i, x)  # noqa: E731
        else:
            b = self.basis(i)
            func = lambda x: self.group.add(self._slot(i, x), b)  # noqa: E731
        self._injections[i] = HomMorphism(member, self, func, name=f"upsilon{i}", validate=False)
        return self._injections[i]

    def injections(self):
        return [self.injection(i) for i in range(len(self.members))]

    def basis(self, j):
        """The free generator `b_j` as an element of the coproduct."""
        return self._slot(self.slots[j], self.free[j].basis)

    def mediating_map(self, legs, target):
        """
        The morphism out of the coproduct induced by a cocone `legs`:

            y0 = k_i0(e_i0)
            u(x) = y0 + sum_i [k_i(x_i), k_i(e_i), y0] + sum_j phi_j(f_j)

        in G(K;y0), where `phi_j` sends `b_j` to `k_j(e_j)`.
        """
        y0 = legs[self.i0](self.basepoints[self.i0])
        pointed = functor_G(target, y0)
        K = pointed.group
        phis = {
            j: self.free[j].universal_map(pointed, legs[j](self.basepoints[j])) for j in self.free
        }
        n = len(self.members)

        def func(x):
            terms = [target.bracket(legs[i](x[i]), legs[i](self.basepoints[i]), y0) for i in range(n)]
            terms += [phis[j](x[self.slots[j]]) for j in self.free]
            return K.sum(terms)

        return HomMorphism(self, target, func, name="u", validate=False)

    def decompose(self, x):
        """
        Rebuild `x` from the images of the injections, using only the
        bracket and the action: the finite slots from `upsilon_i(x_i)` and
        the free slots from the generators `b_j = upsilon_j(e_j)`.
        """
        G = self.group
        zero = G.zero
        terms = []
        for i in range(len(self.members)):
            inj = self.injection(i)
            terms.append(G.sub(inj(x[i]), inj(self.basepoints[i])))
        for j, free in self.free.items():
            b = self.injection(j)(self.basepoints[j])
            value = x[self.slots[j]]
            if self.unital:
                s, n = value
                terms += [self.act(s, zero, b), G.multiple(n - 1, b)]
            elif self.truss.is_empty:
                terms.append(G.multiple(value, b))
            else:
                s, n, p = value
                o = free.basepoint
                terms += [self.act(s, zero, b), G.multiple(n - 1, self.act(o, zero, b)), G.multiple(p, b)]
        return G.sum(terms)


@logging_scope("Coproduct")
def coproduct(family, truss=None, i0=0, basepoints=None, name=None):
    """
    The coproduct of a finite family of heaps of modules. Empty members are
    dropped (the empty heap is initial); the empty family gives the empty
    heap of modules, and a single non-empty member is its own coproduct.

    Returns:
        tuple<HeapOfModules, list<HomMorphism>>: The coproduct and the
            injections of every member of `family`.
    """
    family = list(family)
    truss = truss or family[0].truss
    indices = [i for i, m in enumerate(family) if not m.is_empty]
    if not indices:
        empty = HeapOfModules(
            truss, FiniteHeap(np.zeros((0, 0, 0), dtype=np.int64)), np.zeros((truss.size, 0, 0)),
            name=name or "0", validate=False,
        )
        return empty, [HomMorphism(m, empty, [], validate=False) for m in family]
    if len(indices) == 1:
        (k,) = indices
        out = family[k]
        return out, [
            HomMorphism.identity(out) if i == k else HomMorphism(m, out, [], validate=False)
            for i, m in enumerate(family)
        ]
    members = [family[i] for i in indices]
    if basepoints is not None:
        basepoints = [basepoints[i] for i in indices]
    result = CoproductHom(members, basepoints=basepoints, i0=min(i0, len(members) - 1), name=name)
    logger.debug(
        f"Coproduct of {len(members)} members with i0 = {result.i0} "
        f"({'unital' if result.unital else 'general'} free summands)."
    )
    injections = iter(result.injections())
    return result, [
        next(injections) if i in indices else HomMorphism(m, result, [], validate=False)
        for i, m in enumerate(family)
    ]


def coproduct_mediating_map(coprod, legs, target):
    """The mediating map of a cocone (legs indexed like the non-empty members)."""
    return coprod.mediating_map(legs, target)


def check_mutually_inverse(forward, backward, window=None, check="maps inverse"):
    """
    Check `backward . forward` and `forward . backward` on the elements (or
    window) of the domain and codomain of `forward`.

    Raises:
        VerificationFailure: With the first element where a composite is not
            the identity.
    """
    for dom, there, back in ((forward.dom, forward, backward), (forward.cod, backward, forward)):
        witness = find_witness(lambda x, f=there, g=back: g(f(x)) == x, dom.elements(window), description=check)
        if witness is not None:
            raise VerificationFailure(check, witness)


@logging_scope("Coproduct comparison")
def compare_coproducts(first, second, window=None):
    """
    The canonical isomorphism between two coproducts of one family, built
    with different `i0` or basepoints: each is the mediating map of the
    other's injections, and the two are checked mutually inverse and
    compatible with the injections.

    Returns:
        tuple<HomMorphism, HomMorphism>: `first -> second` and back.

    Raises:
        VerificationFailure: With the first element where the maps fail.
    """
    forward = first.mediating_map(second.injections(), second)
    backward = second.mediating_map(first.injections(), first)
    for i, member in enumerate(first.members):
        for m in member.elements():
            if forward(first.injection(i)(m)) != second.injection(i)(m):
                raise VerificationFailure("comparison commutes with injections", (i, member.label(m)))
    check_mutually_inverse(forward, backward, window, check="coproduct comparison inverse")
    return forward, backward


def star_coproduct(truss):
    """
    The coproduct of two copies of the terminal heap of modules. Over a
    unital truss it is the heap of G(T;1) x Z, with injections sending `*` to
    `(1,0)` and `(1,1)` in the last slot.
    """
    star = terminal(truss)
    return coproduct([star, star], name=f"* + * over {truss.name}")


# Universal property certification


def _targets(targets, truss):
    limit = config.cocone_target_limit
    return [X for X in targets if X.truss is truss and X.FINITE and X.size <= limit]


def _report(shape, cones, failures):
    return {"shape": shape, "cones": cones, "failures": failures, "verified": not failures}


def _hom(dom, cod, table, name=None):
    try:
        return HomMorphism(dom, cod, table, name=name)
    except (NotAMorphism, ElementNotInCarrier, ValueError):
        return None


@logging_scope("Equalizer universal property", timed=True)
def verify_equalizer(f, g, E, inclusion, targets):
    """
    Certify that every cone `k: X -> M` with `f k = g k` factors uniquely
    through the inclusion of the equalizer.

    Returns:
        dict: The shape, the number of cones and the failures found.
    """
    cones, failures = 0, []
    position = {m: i for i, m in enumerate(inclusion.table)}
    if not inclusion.is_injective():
        failures.append(("inclusion not injective",))
    for X in _targets(targets, f.dom.truss):
        for k in hom_morphisms(X, f.dom):
            if any(f(k(x)) != g(k(x)) for x in X.elements()):
                continue
            cones += 1
            if any(k(x) not in position for x in X.elements()):
                failures.append((X.name, k.table))
                continue
            if _hom(X, E, [position[k(x)] for x in X.elements()]) is None:
                failures.append((X.name, k.table))
    return _report("equalizer", cones, failures)


@logging_scope("Product universal property", timed=True)
def verify_product(family, prod, projections, targets, truss=None):
    truss = truss or prod.truss
    cones, failures = 0, []
    for X in _targets(targets, truss):
        for legs in itertools.product(*[list(hom_morphisms(X, M)) for M in family]):
            cones += 1
            table = [prod.tuple_id(tuple(k(x) for k in legs)) for x in X.elements()]
            u = _hom(X, prod, table)
            if u is None or any(p.compose(u).table != k.table for p, k in zip(projections, legs)):
                failures.append((X.name,) + tuple(k.table for k in legs))
    return _report("product", cones, failures)


@logging_scope("Pullback universal property", timed=True)
def verify_pullback(f, g, P, projections, targets):
    cones, failures = 0, []
    position = {c: i for i, c in enumerate(P.coordinates)}
    for X in _targets(targets, f.dom.truss):
        for a, b in itertools.product(list(hom_morphisms(X, f.dom)), list(hom_morphisms(X, g.dom))):
            if any(f(a(x)) != g(b(x)) for x in X.elements()):
                continue
            cones += 1
            u = _hom(X, P, [position[(a(x), b(x))] for x in X.elements()])
            if u is None or projections[0].compose(u).table != a.table or projections[1].compose(u).table != b.table:
                failures.append((X.name, a.table, b.table))
    return _report("pullback", cones, failures)


@logging_scope("Coequalizer universal property", timed=True)
def verify_coequalizer(f, g, Q, projection, targets):
    cones, failures = 0, []
    if Q is f.cod:
        return _report("coequalizer", cones, failures)
    if not projection.is_surjective():
        failures.append(("projection not surjective",))
    for X in _targets(targets, f.cod.truss):
        for k in hom_morphisms(f.cod, X):
            if any(k(f(x)) != k(g(x)) for x in f.dom.elements()):
                continue
            cones += 1
            try:
                factor_through_quotient(projection, k)
            except (VerificationFailure, NotAMorphism):
                failures.append((X.name, k.table))
    return _report("coequalizer", cones, failures)


@logging_scope("Pushout universal property", timed=True)
def verify_pushout(f, g, P, legs, targets):
    """
    Certify the pushout: every cocone `(a, b)` with `a f = b g` induces the
    morphism `(k,h) -> [a(k), a(f(e)), b(h)]` on classes, commuting with the
    legs. Uniqueness holds as every class is `[leg1(k), leg1(f(e)), leg2(h)]`.
    """
    cones, failures = 0, []
    K, H = f.cod, g.cod
    if not hasattr(P, "product"):
        return verify_coproduct(P, [K, H], legs, targets)
    fe, ge = P.apex
    for X in _targets(targets, K.truss):
        for a, b in itertools.product(list(hom_morphisms(K, X)), list(hom_morphisms(H, X))):
            if any(a(f(x)) != b(g(x)) for x in f.dom.elements()):
                continue
            cones += 1
            table = [None] * P.size
            consistent = True
            for c, (k, h) in enumerate(P.product.coordinates):
                value = X.bracket(a(k), a(fe), b(h))
                q = P.quotient_map(c)
                if table[q] is None:
                    table[q] = value
                elif table[q] != value:
                    consistent = False
            u = _hom(P, X, table) if consistent else None
            if u is None or u.compose(legs[0]).table != a.table or u.compose(legs[1]).table != b.table:
                failures.append((X.name, a.table, b.table))
    return _report("pushout", cones, failures)


@logging_scope("Coproduct universal property", timed=True)
def verify_coproduct(coprod, family, injections, targets):
    """
    Certify a coproduct against every cocone over the finite targets (only
    isotropic targets when the unital free module is used). The mediating
    map must be a morphism (checked on the window) commuting with the
    injections; it is unique as every element decomposes over the images of
    the injections, which is checked on the window too.
    """
    cones, failures = 0, []
    nonempty = [i for i, m in enumerate(family) if not m.is_empty]
    truss = coprod.truss
    if not isinstance(coprod, CoproductHom):
        return _report("coproduct", cones, failures)
    if any(coprod.decompose(x) != x for x in coprod.elements()):
        failures.append(("not generated by injections",))
    for X in _targets(targets, truss):
        if coprod.unital and not X.is_isotropic:
            continue
        for legs in itertools.product(*[list(hom_morphisms(family[i], X)) for i in nonempty]):
            cones += 1
            u = coprod.mediating_map(list(legs), X)
            try:
                with sample_limit(config.cocone_samples):
                    u.validate()
            except NotAMorphism:
                failures.append((X.name,) + tuple(k.table for k in legs))
                continue
            for leg, i in zip(legs, nonempty):
                inj = injections[i]
                if any(u(inj(x)) != leg(x) for x in family[i].elements()):
                    failures.append((X.name,) + tuple(k.table for k in legs))
                    break
    return _report("coproduct", cones, failures)
