"""
Heaps of modules over a truss.

A heap of T-modules is an abelian heap `M` with a ternary action
`t |>_m n` such that every `|>_m` is a module action (HM1) and the actions
are related by base change (HM2):

    t |>_m n = [t |>_e n, t |>_e m, m]

This module holds the structure itself, its presentations (pointed modules
at a basepoint, the Delta-form), affine R(T)-modules and the isotropic
correspondence with heaps of T_u-modules.
"""

import itertools

import numpy as np
from interface_meta import override

from trussalg.errors import ConditionViolation, NotIsotropic
from trussalg.heaps import (
    FiniteHeap,
    GroupHeap,
    heap_from_group,
    heap_multiple,
    retract,
    tuple_label,
)
from trussalg.modules import ActionStructure, PointedModule, TrussModule
from trussalg.morphisms import HomMorphism, ModuleMorphism
from trussalg.structure import Operation, Structure, find_witness
from trussalg.trusses import UnitalExtension, truss_from_ring, unital_truss_extension, universal_ring
from trussalg.utils.debug import logger, logging_scope


class HeapOfModules(ActionStructure):
    """
    A heap of modules over a truss, with its ternary action stored as a
    `[t][m][n]` table when finite.

    Attributes:
        truss (Truss): The acting truss.
        heap (Heap): The underlying abelian heap.
    """

    KIND = Structure.Kind.HOM
    KEYWORDS = ["hom"]
    ARITY = 2

    base_truss = None

    @property
    def truss(self):
        return self.scalars

    @property
    def heap(self):
        return self.carrier

    @property
    def basepoint(self):
        """The element used as default basepoint: the smallest id, or the group zero."""
        if isinstance(self.heap, GroupHeap):
            return self.heap.group.zero
        return self.elements()[0]

    def act(self, t, m, n):
        if self._table is not None:
            return self._table[t][m][n]
        return self._func(t, m, n)

    def bracket(self, a, b, c):
        return self.carrier.bracket(a, b, c)

    @override
    def operations(self):
        return [
            Operation("bracket", 3, self.bracket),
            Operation("act", 2, self.act, scalars=self.truss.elements()),
        ]

    def validate(self):
        """
        Check HM1 for every basepoint, then HM2 over `(t, m, n, e)`.

        Raises:
            AxiomViolation: With axiom `HM1(M1)`, `HM1(M2)`, `HM1(M3)` or
                `HM2`, and the first witness found.
        """
        for name, (law, domains) in self.laws().items():
            self._check(name, law, *domains)
        return self

    def laws(self):
        """dict: The HM1 and HM2 laws with their domains, in checking order."""
        ts, ms = self.truss.elements(), self.elements()
        act, br, mul, tbr = self.act, self.bracket, self.truss.mul, self.truss.bracket
        return {
            "HM1(M1)": (
                lambda m, t, s, n: act(t, m, act(s, m, n)) == act(mul(t, s), m, n),
                (ms, ts, ts, ms),
            ),
            "HM1(M2)": (
                lambda m, t, s, r, n: act(tbr(t, s, r), m, n)
                == br(act(t, m, n), act(s, m, n), act(r, m, n)),
                (ms, ts, ts, ts, ms),
            ),
            "HM1(M3)": (
                lambda m, t, a, b, c: act(t, m, br(a, b, c))
                == br(act(t, m, a), act(t, m, b), act(t, m, c)),
                (ms, ts, ms, ms, ms),
            ),
            "HM2": (
                lambda t, m, n, e: act(t, m, n) == br(act(t, e, n), act(t, e, m), m),
                (ts, ms, ms, ms),
            ),
        }

    @property
    def is_isotropic(self):
        """bool, None: Whether the unit acts as the identity (`None` for non-unital trusses)."""
        u = self.truss.unit
        if u is None:
            return None
        ms = self.elements()
        return find_witness(lambda m, n: self.act(u, m, n) == n, ms, ms, exhaustive=self.FINITE) is None

    def module_at(self, m):
        """TrussModule: The module `(M, |>_m)`."""
        return TrussModule(self.truss, self.heap, lambda t, n: self.act(t, m, n), validate=False)

    def describe(self):
        iso = ", isotropic" if self.exhaustive and self.is_isotropic else ""
        return f"heap of modules {self.name or ''} over `{self.truss.name}` on {self.heap.describe()}{iso}"


def validate_hom(truss, heap, taction, name=None):
    """Build and validate a heap of modules (exhaustively when finite)."""
    hom = HeapOfModules(truss, heap, taction, name=name)
    if truss.is_unital and hom.exhaustive:
        logger.debug(f"`{name}` is {'' if hom.is_isotropic else 'not '}isotropic.")
    return hom


def hom_from_module(module, name=None):
    """The heap of modules `t |>_m n = [t.n, t.m, m]` of a truss module."""
    act, br = module.act, module.bracket
    return HeapOfModules(
        module.truss,
        module.heap,
        lambda t, m, n: br(act(t, n), act(t, m), m),
        name=name or f"H({module.name})",
    )


def check_hom_consequences(hom):
    """
    Check `t |>_m m = m` and `t |>_m n = [n, t |>_n m, m]`.

    Raises:
        AxiomViolation: With the failing consequence and a witness.
    """
    ts, ms = hom.truss.elements(), hom.elements()
    hom._check("fixes basepoint", lambda t, m: hom.act(t, m, m) == m, ts, ms)
    hom._check(
        "swap",
        lambda t, m, n: hom.act(t, m, n) == hom.bracket(n, hom.act(t, n, m), m),
        ts, ms, ms,
    )
    return True


def translation_morphism(hom, e, f):
    """HomMorphism: The translation `x -> [x,e,f]`, validated."""
    return HomMorphism(hom, hom, lambda x: hom.bracket(x, e, f), name=f"tau[{hom.label(e)},{hom.label(f)}]")


# Pointed modules and heaps of modules


def functor_H(pointed, name=None):
    """
    The heap of modules of a pointed module: the heap `x - y + z` of the
    group with `t |>_x y = t.y - t.x + x`.
    """
    G = pointed.group
    return HeapOfModules(
        pointed.truss,
        heap_from_group(G),
        lambda t, x, y: G.bracket(pointed.act(t, y), pointed.act(t, x), x),
        name=name or f"H({pointed.name})",
        validate=False,
    )


def functor_G(hom, e=None, name=None):
    """
    The pointed module of a heap of modules at `e`: the retract G(M;e) with
    action `|>_e`.

    Raises:
        EmptyHeap: If the heap is empty.
    """
    group = retract(hom.heap, hom.basepoint if e is None and not hom.is_empty else e)
    e = group.zero
    return PointedModule(
        hom.truss,
        group,
        lambda t, n: hom.act(t, e, n),
        name=name or f"G({hom.name};{hom.label(e)})",
        validate=False,
    )


def transport_G(phi, e, f):
    """
    The pointed-linear map G(M;e) -> G(N;f) induced by a morphism of heaps
    of modules: `x -> [phi(x), phi(e), f]`.
    """
    source, target = functor_G(phi.dom, e), functor_G(phi.cod, f)
    pe = phi(e)
    return ModuleMorphism(
        source, target, lambda x: phi.cod.bracket(phi(x), pe, f), name=f"G({phi.name or 'phi'})"
    )


# Delta-form


def delta_form(hom):
    """
    The family `Delta(m)(t) = (n -> t |>_m n)`.

    Returns:
        np.ndarray: `D[m, t, n]` (finite structures only).
    """
    return np.transpose(hom.action_table(), (1, 0, 2))


def delta_violations(hom):
    """
    Check the Delta-characterization of heaps of modules on a candidate
    (possibly invalid) ternary action:

        truss: each Delta(m) is a truss morphism T -> E(M), i.e. HM1
        a: Delta(e)(t)(e) = e
        b: [Delta(e)(t)([x,f,e]), e, f] = Delta(f)(t)(x)

    Returns:
        list<ConditionViolation>: One violation (with its first witness) per
            failing condition.
    """
    laws = hom.laws()
    act, br = hom.act, hom.bracket
    ts, ms = hom.truss.elements(), hom.elements()
    conditions = [(name, *laws[name]) for name in ("HM1(M1)", "HM1(M2)", "HM1(M3)")] + [
        ("a", lambda e, t: act(t, e, e) == e, (ms, ts)),
        ("b", lambda e, f, t, x: br(act(t, e, br(x, f, e)), e, f) == act(t, f, x), (ms, ms, ts, ms)),
    ]
    out = []
    for name, law, domains in conditions:
        condition = "truss" if name.startswith("HM1") else name
        if any(v.condition == condition for v in out):
            continue
        witness = find_witness(law, *domains, exhaustive=hom.exhaustive, description=f"condition {name}")
        if witness is not None:
            out.append(ConditionViolation(condition, witness))
    return out


def check_delta_conditions(hom):
    """
    Raises:
        ConditionViolation: The first failing Delta-condition.
    """
    violations = delta_violations(hom)
    if violations:
        raise violations[0]
    return True


def bracket_morphism(hom):
    """
    The bracket `M x M x M -> M` as a morphism of heaps of modules, where the
    cube carries the componentwise structure.
    """
    cube = cartesian_product(hom, hom, hom)
    coords = cube.coordinates
    return HomMorphism(
        cube, hom, lambda x: hom.bracket(*coords[x]), name=f"[-,-,-]@{hom.name}"
    )


# Products


class ProductHom(HeapOfModules):
    """
    The product of finite heaps of modules, with componentwise bracket and
    action and ids in lexicographic order of the coordinates.

    Attributes:
        factors (tuple<HeapOfModules>): The factors.
        coordinates (list<tuple>): The coordinate ids of each element.
    """

    def __init__(self, truss, factors, name=None):
        self.factors = tuple(factors)
        sizes = [f.size for f in factors]
        self.coordinates = list(itertools.product(*[range(s) for s in sizes]))
        self._ids = None
        n = len(self.coordinates)
        labels = [tuple_label(f.label(c) for f, c in zip(factors, cs)) for cs in self.coordinates]
        if not factors:
            bracket = np.zeros((1, 1, 1), dtype=np.int64)
            action = np.zeros((truss.size, 1, 1), dtype=np.int64)
            labels = ["*"]
        elif n == 0:
            bracket = np.zeros((0, 0, 0), dtype=np.int64)
            action = np.zeros((truss.size, 0, 0), dtype=np.int64)
        else:
            coords = np.array(self.coordinates, dtype=np.int64).T
            bracket = np.ravel_multi_index(
                [
                    f.heap.table[c[:, None, None], c[None, :, None], c[None, None, :]]
                    for f, c in zip(factors, coords)
                ],
                sizes,
            )
            action = np.ravel_multi_index(
                [f.action_table()[:, c[:, None], c[None, :]] for f, c in zip(factors, coords)],
                sizes,
            )
        heap = FiniteHeap(bracket, labels=labels, name=name, validate=False)
        HeapOfModules.__init__(self, truss, heap, action, name=name, validate=False)

    def projection(self, i):
        """HomMorphism: The projection onto the `i`-th factor."""
        return HomMorphism(self, self.factors[i], [c[i] for c in self.coordinates], name=f"pi{i + 1}")

    def tuple_id(self, coordinates):
        if self._ids is None:
            self._ids = {c: i for i, c in enumerate(self.coordinates)}
        return self._ids[tuple(coordinates)]


def cartesian_product(*factors, truss=None, name=None):
    """The product of finite heaps of modules over one truss (the terminal heap when empty)."""
    truss = truss or factors[0].truss
    return ProductHom(truss, factors, name=name or " x ".join(f.name or "?" for f in factors) or "*")


# Affine R(T)-modules


def affine_action(hom, o, e=None):
    """
    The closed form of the R(T)-action extending `|>`:

        (t,k) |>_m n = t |>_m n  +_e  (k-1) (o |>_e (n -_e m))

    with sums, differences and multiples taken in G(M;e).
    """
    e = hom.basepoint if e is None else e
    heap, act = hom.heap, hom.act

    def action(r, m, n):
        t, k = r
        shift = act(o, e, heap.bracket(n, m, e))
        return heap.bracket(act(t, m, n), e, heap_multiple(heap, e, k - 1, shift))

    return action


def affine_action_via_pointed(hom, o, e=None):
    """
    The R(T)-action obtained by extending the pointed module G(M;e) to
    R(T) and returning to heaps: `(t,k).n - (t,k).m + m` in G(M;e), where
    `(t,k).x = t |>_e x + (k-1)(o |>_e x)`.
    """
    e = hom.basepoint if e is None else e
    heap, act = hom.heap, hom.act

    def dot(t, k, x):
        return heap.bracket(act(t, e, x), e, heap_multiple(heap, e, k - 1, act(o, e, x)))

    def action(r, m, n):
        t, k = r
        return heap.bracket(dot(t, k, n), dot(t, k, m), m)

    return action


@logging_scope("Affine module")
def to_affine(hom, o=None, e=None, validate=False):
    """
    The affine R(T)-module of a heap of T-modules: a heap of
    T(R(T))-modules on the same heap, in which `(t,1)` acts as `t` and the
    ring zero `(o,0)` acts by `m`.

    Args:
        hom (HeapOfModules): The heap of modules.
        o: The basepoint of R(T).
        e: The auxiliary basepoint of M used to evaluate the action.
        validate (bool): Check HM1 and HM2 (sampled over the ring window).
    """
    ring, _ = universal_ring(hom.truss, o, validate=False)
    truss = truss_from_ring(ring)
    if hom.truss.is_empty:
        action = lambda r, m, n: m  # noqa: E731
    else:
        action = affine_action(hom, ring.basepoint, e)
    affine = HeapOfModules(truss, hom.heap, action, name=f"{hom.name}@R", validate=validate)
    affine.base_truss = hom.truss
    return affine


def affine_basepoint_witness(hom, window=None):
    """
    Compare the affine action evaluated at every auxiliary basepoint of
    `hom` against the one at `hom.basepoint`, over the ring window.

    Returns:
        tuple, None: A violating `(e, r, m, n)`, or `None`.
    """
    if hom.is_empty or hom.truss.is_empty:
        return None
    ring, _ = universal_ring(hom.truss, validate=False)
    reference = affine_action(hom, ring.basepoint)
    ms = hom.elements()
    actions = {e: affine_action(hom, ring.basepoint, e) for e in ms}
    return find_witness(
        lambda e, r, m, n: actions[e](r, m, n) == reference(r, m, n),
        ms,
        ring.elements(window),
        ms,
        ms,
        exhaustive=hom.FINITE,
        description="independence of the auxiliary basepoint",
    )


def is_affine(hom):
    """Whether the ring zero acts as the basepoint projection: `0 |>_m n = m`."""
    zero = hom.truss.ring.zero
    ms = hom.elements()
    return find_witness(lambda m, n: hom.act(zero, m, n) == m, ms, ms, exhaustive=hom.FINITE) is None


def from_affine(affine, truss=None):
    """The heap of T-modules obtained by restriction along `t -> (t,1)`."""
    truss = truss or affine.base_truss or affine.truss.ring.truss
    return HeapOfModules(
        truss, affine.heap, lambda t, m, n: affine.act((t, 1), m, n), name=f"{affine.name}@T", validate=False
    )


# The isotropic correspondence


@logging_scope("Isotropic extension")
def isotropic_correspondence(hom, o=None, ext=None, validate=False):
    """
    The isotropic heap of T_u-modules extending a heap of T-modules:

        (x,k) |>_m n = [x |>_m n, n, (k-1)(o |>_m n)]

    with the multiple taken in G(M;n). The unit `(o,0)` acts as the identity.
    """
    if ext is None:
        ext, _ = unital_truss_extension(hom.truss, o, validate=False)
    heap, act = hom.heap, hom.act
    if hom.truss.is_empty:
        action = lambda r, m, n: n  # noqa: E731
    else:
        o = ext.universal.basepoint

        def action(r, m, n):
            x, k = r
            return heap.bracket(act(x, m, n), n, heap_multiple(heap, n, k - 1, act(o, m, n)))

    extended = HeapOfModules(ext, heap, action, name=f"{hom.name}@Tu", validate=validate)
    extended.base_truss = hom.truss
    return extended


def isotropic_restriction(hom, truss=None):
    """
    The heap of T-modules underlying an isotropic heap of T_u-modules (over
    a plain unital truss, the isotropy check only).

    Raises:
        NotIsotropic: If the unit does not act as the identity.
    """
    if hom.truss.unit is not None:
        ms = hom.elements()
        u = hom.truss.unit
        witness = find_witness(lambda m, n: hom.act(u, m, n) == n, ms, ms, exhaustive=hom.FINITE)
        if witness is not None:
            raise NotIsotropic(
                f"The unit of `{hom.truss.name}` does not act as the identity at {witness!r}.",
                tuple(hom.label(x) for x in witness),
            )
    truss = truss or hom.base_truss
    if truss is None and isinstance(hom.truss, UnitalExtension):
        truss = hom.truss.base
    if truss is None:
        return hom
    if truss.is_empty:
        return HeapOfModules(truss, hom.heap, lambda t, m, n: n, name=f"{hom.name}@T", validate=False)
    embed = hom.truss.embed
    return HeapOfModules(
        truss, hom.heap, lambda t, m, n: hom.act(embed(t), m, n), name=f"{hom.name}@T", validate=False
    )
