"""
Heaps of modules as pointed modules over R(T).

Over a unital truss, isotropic heaps of T-modules correspond to pointed
T-modules `G` with a surjective T-linear projection `pi: G -> R(T)`:

    slice_M(G, pi) = pi^-1(1,1)    with  [x,y,z] = x - y + z
                                         t |>_x y = t.y - t.x + x
    slice_G(M)     = G(M;e) + R(T) with  pi(m,s) = s

A general truss goes through its unital extension T_u, every heap of
T-modules being an isotropic heap of T_u-modules.
"""

import itertools

from trussalg.errors import NotIsotropic, NotSurjectiveProjection, VerificationFailure
from trussalg.heap_modules import (
    HeapOfModules,
    functor_G,
    isotropic_correspondence,
    isotropic_restriction,
)
from trussalg.heaps import FiniteHeap, Heap, cyclic_group
from trussalg.limits import CoproductHom, check_mutually_inverse, coproduct
from trussalg.modules import DirectSumModule, PointedModule
from trussalg.morphisms import HomMorphism, ModuleMorphism
from trussalg.structure import find_witness
from trussalg.trusses import unital_truss_extension, universal_ring
from trussalg.utils.debug import logging_scope


def ring_pointed(truss, ring):
    """R(T) as a pointed T-module, acting by `t.r = (t,1) r`."""
    return PointedModule(
        truss, ring.group, lambda t, r: ring.mul(ring.iota(t), r), name=ring.name, validate=False
    )


class SliceObject:
    """
    A pointed T-module over R(T).

    Attributes:
        pointed (PointedModule): The pointed module `G`.
        projection (callable): The T-linear projection `G -> R(T)`.
        ring (UniversalRing): R(T).
        base_truss (Truss, None): The original truss, when `truss` is its
            unital extension.
    """

    def __init__(self, pointed, projection, ring, base_truss=None, name=None):
        self.pointed = pointed
        self.projection = projection
        self.ring = ring
        self.base_truss = base_truss
        self.name = name or pointed.name

    def __repr__(self):
        return f"<SliceObject {self.name} over {self.ring.name}>"

    @property
    def truss(self):
        return self.pointed.truss

    @property
    def is_zero(self):
        return self.pointed.FINITE and self.pointed.size == 1

    def fiber(self, value, window=None):
        """list: The elements over `value` (among the window elements)."""
        return [g for g in self.pointed.elements(window) if self.projection(g) == value]

    def point(self):
        """An element over the unit of R(T)."""
        return self.fiber(self.ring.unit)[0]

    def validate(self):
        """
        Check that the projection is T-linear (on the window) and hits the
        generators `(1,1)` and `(1,0)` of R(T), unless this is the zero object.

        Raises:
            NotAMorphism: If the projection is not linear.
            NotSurjectiveProjection: If a generator is missed.
        """
        ModuleMorphism(self.pointed, ring_pointed(self.truss, self.ring), self.projection, name="pi")
        if self.is_zero:
            return self
        unit = self.ring.unit
        for generator in (unit, (unit[0], 0)):
            if not self.fiber(generator):
                raise NotSurjectiveProjection(
                    f"The projection of `{self.name}` misses {self.ring.format(generator)}.", (generator,)
                )
        return self


class SumSlice(SliceObject):
    """
    The direct sum of slice objects, projecting by the sum of projections.
    Its fibers are enumerated by solving for the last summand.
    """

    def __init__(self, summands, name=None):
        self.summands = list(summands)
        ring = summands[0].ring
        R = ring.group
        projections = [s.projection for s in summands]
        SliceObject.__init__(
            self,
            DirectSumModule(*[s.pointed for s in summands]),
            lambda g: R.sum(p(x) for p, x in zip(projections, g)),
            ring,
            base_truss=summands[0].base_truss,
            name=name or " (+) ".join(s.name for s in summands),
        )

    def fiber(self, value, window=None):
        R = self.ring.group
        *first, last = self.summands
        out = []
        for head in itertools.product(*[s.pointed.elements(window) for s in first]):
            rest = R.sub(value, R.sum(s.projection(x) for s, x in zip(first, head)))
            out.extend(head + (x,) for x in last.fiber(rest, window))
        return out

    def point(self):
        head = tuple(s.pointed.zero for s in self.summands[:-1])
        return head + (self.summands[-1].point(),)


class HomSlice(SliceObject):
    """`slice_G(M)`: G(M;e) + R(T), with fibers `{(m, r) : m in M}`."""

    def __init__(self, hom, e, ring, base_truss=None):
        self.hom = hom
        self.basepoint = e
        SliceObject.__init__(
            self,
            DirectSumModule(functor_G(hom, e), ring_pointed(hom.truss, ring)),
            lambda g: g[1],
            ring,
            base_truss=base_truss,
            name=f"G({hom.name})",
        )

    def fiber(self, value, window=None):
        return [(m, value) for m in self.hom.elements()]

    def point(self):
        return (self.basepoint, self.ring.unit)


def zero_slice(truss, ring):
    """The initial slice object `{0} -> R(T)`."""
    trivial = PointedModule(truss, cyclic_group(1), lambda t, g: 0, name="0", validate=False)
    return SliceObject(trivial, lambda g: ring.zero, ring, name="0")


class FiberHeap(Heap):
    """The heap `x - y + z` on the fiber of a slice object over a value."""

    FINITE = False

    def __init__(self, slice_object, value, name=None):
        Heap.__init__(self, name=name or f"pi^-1({value})")
        self.slice = slice_object
        self.value = value
        self.group = slice_object.pointed.group

    def bracket(self, a, b, c):
        return self.group.bracket(a, b, c)

    def elements(self, window=None):
        return self.slice.fiber(self.value, window)

    def _contains(self, x):
        return x in self.group and self.slice.projection(x) == self.value

    @property
    def window_exponent(self):
        return self.group.window_exponent

    def describe(self):
        return f"fiber of {self.slice.name} over {self.value}"


# The correspondence


def _unital_setting(truss, o=None):
    """The unital truss to work over, with R of it: T itself when unital, T_u otherwise."""
    if truss.is_unital:
        return truss, universal_ring(truss, validate=False)[0]
    ext, _ = unital_truss_extension(truss, o, validate=False)
    return ext, universal_ring(ext, validate=False)[0]


@logging_scope("Slice of heap of modules")
def slice_G(hom, e=None, setting=None):
    """
    The slice object G(M;e) + R(T) of a heap of modules, projecting onto
    R(T). Heaps over a non-unital truss are first extended to T_u.

    Args:
        hom (HeapOfModules): An isotropic heap of modules (any heap when the
            truss is not unital).
        e: The basepoint of M.
        setting (tuple, None): A shared `(unital truss, ring)` pair.

    Raises:
        NotIsotropic: If the truss is unital and the unit does not act as
            the identity.
    """
    base_truss = None
    unital, ring = setting or _unital_setting(hom.truss)
    if unital is not hom.truss:
        base_truss = hom.truss
        hom = isotropic_correspondence(hom, ext=unital)
    elif hom.FINITE and not hom.is_empty and not hom.is_isotropic:
        raise NotIsotropic(f"`{hom.name}` is not isotropic.", ())
    if hom.is_empty:
        out = zero_slice(unital, ring)
        out.base_truss = base_truss
        return out
    e = hom.basepoint if e is None else e
    return HomSlice(hom, e, ring, base_truss=base_truss)


@logging_scope("Heap of modules of slice")
def slice_M(slice_object, restrict=True):
    """
    The heap of modules on the fiber over `(1,1)`, with bracket `x - y + z`
    and action `t |>_x y = t.y - t.x + x`. The zero object gives the empty
    heap of modules.

    Args:
        slice_object (SliceObject): The slice object.
        restrict (bool): Return to the original truss when the slice object
            lives over T_u.
    """
    truss = slice_object.truss
    pointed = slice_object.pointed
    G = pointed.group
    if slice_object.is_zero:
        hom = HeapOfModules(
            truss, FiniteHeap([], name="0"), lambda t, x, y: x, name="0", validate=False
        )
    else:
        hom = HeapOfModules(
            truss,
            FiberHeap(slice_object, slice_object.ring.unit),
            lambda t, x, y: G.bracket(pointed.act(t, y), pointed.act(t, x), x),
            name=f"M({slice_object.name})",
            validate=False,
        )
    if restrict and slice_object.base_truss is not None:
        return isotropic_restriction(hom, slice_object.base_truss)
    return hom


def unit_map(hom, e=None):
    """
    The unit `zeta: M -> slice_M(slice_G(M))`, `m -> (m, (1,1))`, validated,
    and checked to be onto the fiber.

    Raises:
        VerificationFailure: If `zeta` is not a bijection onto the fiber.
    """
    slice_object = slice_G(hom, e)
    target = slice_M(slice_object)
    unit = slice_object.ring.unit
    zeta = HomMorphism(hom, target, lambda m: (m, unit), name="zeta")
    if set(zeta.table) != set(target.elements()) or not zeta.is_injective():
        raise VerificationFailure("unit onto the fiber", (hom.name,))
    return zeta


def unit_naturality(f):
    """
    Check the naturality square of the unit on a morphism `f: M -> N` of
    heaps of modules, `zeta_N(f(m)) = M(G(f))(zeta_M(m))`, where `M(G(f))`
    maps the fiber by `(m, r) -> (f(m), r)`. The basepoint of N is taken to
    be `f(e)`.

    Returns:
        HomMorphism, None: `M(G(f))`, or `None` when M is empty.

    Raises:
        VerificationFailure: With the first `m` where the square fails.
    """
    if f.dom.is_empty:
        return None
    e = f.dom.basepoint
    zeta_M, zeta_N = unit_map(f.dom, e), unit_map(f.cod, f(e))
    lifted = HomMorphism(
        zeta_M.cod, zeta_N.cod, lambda x: (f(x[0]), x[1]), name=f"M(G({f.name}))"
    )
    witness = find_witness(
        lambda m: zeta_N(f(m)) == lifted(zeta_M(m)), f.dom.elements(), exhaustive=True
    )
    if witness is not None:
        raise VerificationFailure("unit naturality", (f.dom.label(witness[0]),))
    return lifted


def ring_action(slice_object, r, x):
    """`r.x` for `r` in R(T), through `(s,n).x = s.x + (n-1)(1.x)`."""
    pointed = slice_object.pointed
    G = pointed.group
    s, n = r
    one = slice_object.ring.unit[0]
    return G.add(pointed.act(s, x), G.multiple(n - 1, pointed.act(one, x)))


def counit_map(slice_object, window=None):
    """
    The counit `epsilon: slice_G(slice_M(G)) -> G`,

        epsilon(y, r) = (y - x) + r.x

    for a chosen `x` over `(1,1)`, with inverse `g -> (g - r.x + x, r)` where
    `r = pi(g)`. Both maps are validated as pointed-module morphisms (on the
    window) and checked mutually inverse and compatible with the projections.

    Returns:
        tuple<ModuleMorphism, ModuleMorphism>: epsilon and its inverse.
    """
    hom = slice_M(slice_object, restrict=False)
    x = slice_object.point()
    source = slice_G(hom, x, setting=(slice_object.truss, slice_object.ring))
    G = slice_object.pointed.group

    def epsilon(pair):
        y, r = pair
        return G.add(G.sub(y, x), ring_action(slice_object, r, x))

    def inverse(g):
        r = slice_object.projection(g)
        return (G.add(G.sub(g, ring_action(slice_object, r, x)), x), r)

    forward = ModuleMorphism(source.pointed, slice_object.pointed, epsilon, name="epsilon")
    backward = ModuleMorphism(slice_object.pointed, source.pointed, inverse, name="epsilon^-1")
    witness = find_witness(
        lambda pair: inverse(epsilon(pair)) == pair and slice_object.projection(epsilon(pair)) == pair[1],
        source.pointed.elements(window),
        description="counit inverse",
    )
    if witness is not None:
        raise VerificationFailure("counit invertible", witness)
    witness = find_witness(
        lambda g: epsilon(inverse(g)) == g, slice_object.pointed.elements(window), description="counit inverse"
    )
    if witness is not None:
        raise VerificationFailure("counit invertible", witness)
    return forward, backward


@logging_scope("Coproduct through slices")
def slice_coproduct(family, truss=None):
    """
    The coproduct of a family of heaps of modules computed through slices:
    `slice_M(slice_G(M_1) + ... + slice_G(M_n))`.

    Returns:
        tuple<HeapOfModules, SliceObject>: The coproduct and the slice object
            it is the fiber of.
    """
    family = list(family)
    truss = truss or family[0].truss
    setting = _unital_setting(truss)
    summands = [slice_G(m, setting=setting) for m in family if not m.is_empty]
    if not summands:
        zero = zero_slice(*setting)
        zero.base_truss = truss if setting[0] is not truss else None
        return slice_M(zero), zero
    total = summands[0] if len(summands) == 1 else SumSlice(summands)
    return slice_M(total), total


@logging_scope("Coproduct against slices")
def compare_with_slice_coproduct(family, i0=0, window=None):
    """
    Compare the coproduct of an isotropic family over a unital truss with
    `slice_coproduct`. The comparison `phi` is the mediating map of the
    slice injections

        m -> (..., (e_j, 0), ..., (m, 1), ..., (e_k, 0))   (m in slot i)

    and its inverse `psi` keeps the heap coordinates and reads each free
    summand off the R(T)-coordinate of its slot, the unital free module on
    one generator being R(T) with basis 1.

    Returns:
        tuple<HomMorphism, HomMorphism>: phi and psi.

    Raises:
        ValueError: Unless the family has two or more non-empty isotropic
            members over a unital truss.
        VerificationFailure: If the maps fail to be mutually inverse or to
            commute with the injections.
    """
    family = [m for m in family if not m.is_empty]
    coprod, _ = coproduct(family, i0=i0)
    if not isinstance(coprod, CoproductHom) or not coprod.unital:
        raise ValueError(
            "Only coproducts of two or more isotropic heaps of modules over a unital truss "
            "are compared with their slice counterpart."
        )
    hom, total = slice_coproduct(family)
    ring = total.ring
    basepoints = coprod.basepoints

    def slot(i, m):
        return tuple((m, ring.unit) if j == i else (e, ring.zero) for j, e in enumerate(basepoints))

    legs = [
        HomMorphism(member, hom, lambda m, i=i: slot(i, m), name=f"slice{i}")
        for i, member in enumerate(coprod.members)
    ]
    frees = sorted(coprod.free)
    phi = coprod.mediating_map(legs, hom)
    psi = HomMorphism(
        hom, coprod, lambda y: tuple(g for g, _ in y) + tuple(y[j][1] for j in frees), name="psi", validate=False
    )
    for i, member in enumerate(coprod.members):
        for m in member.elements():
            x, y = coprod.injection(i)(m), legs[i](m)
            if phi(x) != y or psi(y) != x:
                raise VerificationFailure("slice comparison commutes with injections", (i, member.label(m)))
    check_mutually_inverse(phi, psi, window, check="slice comparison inverse")
    return phi, psi
