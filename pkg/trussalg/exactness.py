"""
Exactness of sequences of heaps of modules.

A composable pair `M -f-> N -g-> P` is exact at `e` in P when
`f(M) = g^-1(e)`. Choosing basepoints turns the pair into pointed-module maps
`alpha`, `beta` with `f = alpha + h` and `g = beta + k`, and exactness of the
heaps is exactness `Im alpha = ker beta` of the modules.

A fork `M =f,g=> N -h-> P` is Barr-exact when `(f,g)` is the kernel pair of
`h` and `h` is the coequalizer of `(f,g)`.
"""

import itertools

import pandas as pd

from trussalg.errors import (
    InconsistentDecomposition,
    NotAMorphism,
    NotIsomorphic,
    SizeMismatch,
    VerificationFailure,
)
from trussalg.heap_modules import cartesian_product, functor_G
from trussalg.heaps import translation
from trussalg.iso import iso_search
from trussalg.limits import coequalizer, factor_through_quotient, kernel_pair
from trussalg.morphisms import HomMorphism, ModuleMorphism
from trussalg.utils.debug import logger, logging_scope


class Exactness:
    """
    The verdict of an exactness check.

    Attributes:
        exact (bool): Whether some `e` witnesses exactness.
        witnesses (list): Every witnessing `e` of P, in id order.
        note (str, None): A remark on degenerate input.
    """

    __slots__ = ("exact", "witnesses", "note")

    def __init__(self, witnesses, note=None):
        self.witnesses = list(witnesses)
        self.exact = bool(self.witnesses)
        self.note = note

    def __bool__(self):
        return self.exact

    def __repr__(self):
        return f"<Exactness exact={self.exact} witnesses={self.witnesses}>"


def _require_composable(f, g):
    if f.cod is not g.dom:
        raise ValueError(f"`{g.name}` cannot follow `{f.name}`.")


def check_exact_at(f, g):
    """
    Every `e` in `g(N)` with `f(M) = g^-1(e)`.

    Returns:
        Exactness: The verdict and all witnesses (none for an empty P).
    """
    _require_composable(f, g)
    if g.cod.is_empty:
        return Exactness([], note="empty codomain")
    image = f.image()
    return Exactness(e for e in sorted(g.image()) if g.preimage(e) == image)


def is_short_exact(f, g):
    """Exact, with `f` injective and `g` surjective."""
    return bool(check_exact_at(f, g)) and f.is_injective() and g.is_surjective()


def pointed_parts(f, g, o_M=None, o_N=None, o_P=None):
    """
    The decomposition `f = alpha + h`, `g = beta + k` at basepoints `o_M`,
    `o_N`, `o_P`: `h = f(o_M)`, `k = g(o_N)`, `alpha(x) = [f(x), h, o_N]` and
    `beta(y) = [g(y), k, o_P]`.

    Returns:
        tuple<ModuleMorphism, ModuleMorphism, object, object>: alpha, beta, h, k.

    Raises:
        InconsistentDecomposition: If `alpha` or `beta` is not pointed-linear.
    """
    M, N, P = f.dom, f.cod, g.cod
    o_M = M.basepoint if o_M is None else o_M
    o_N = N.basepoint if o_N is None else o_N
    o_P = P.basepoint if o_P is None else o_P
    h, k = f(o_M), g(o_N)
    try:
        alpha = ModuleMorphism(
            functor_G(M, o_M), functor_G(N, o_N), lambda x: N.bracket(f(x), h, o_N), name="alpha"
        )
        beta = ModuleMorphism(
            functor_G(N, o_N), functor_G(P, o_P), lambda y: P.bracket(g(y), k, o_P), name="beta"
        )
    except NotAMorphism as exc:
        raise InconsistentDecomposition(str(exc), exc.witness) from exc
    return alpha, beta, h, k


def exactness_transfer(f, g, o_M=None, o_N=None, o_P=None):
    """
    Compare exactness of the heaps with exactness `Im alpha = ker beta` of
    the pointed parts at the given basepoints.

    Returns:
        dict: `heap_exact`, `module_exact`, `agree`, and the witness `g(h)`.
    """
    _require_composable(f, g)
    if f.dom.is_empty or g.cod.is_empty:
        verdict = bool(check_exact_at(f, g))
        return {"heap_exact": verdict, "module_exact": verdict, "agree": True, "witness": None}
    alpha, beta, h, _ = pointed_parts(f, g, o_M, o_N, o_P)
    kernel = beta.preimage(beta.cod.zero)
    module_exact = alpha.image() == kernel
    heap = check_exact_at(f, g)
    return {
        "heap_exact": heap.exact,
        "module_exact": module_exact,
        "agree": heap.exact == module_exact,
        "witness": g(h),
    }


def pointed_sequence(f, g, o_P=None):
    """
    Lift a basepoint `o_P` in `g(N)` to `o_N` in `g^-1(o_P)` and to `o_M` in
    `f^-1(o_N)` (when possible), making `f` and `g` pointed maps of the
    retracts.

    Returns:
        dict: The chosen basepoints and whether `Im f = ker g` as modules
            (`None` basepoints when no lift exists).
    """
    _require_composable(f, g)
    witnesses = check_exact_at(f, g).witnesses
    image = sorted(g.image())
    if not image:
        return {"basepoints": None, "exact": False}
    if o_P is None:
        o_P = witnesses[0] if witnesses else image[0]
    lifts = sorted(g.preimage(o_P) & f.image())
    if not lifts:
        return {"basepoints": (None, None, o_P), "exact": False}
    o_N = lifts[0]
    o_M = min(f.preimage(o_N))
    alpha, beta, _, _ = pointed_parts(f, g, o_M, o_N, o_P)
    return {
        "basepoints": (o_M, o_N, o_P),
        "exact": alpha.image() == beta.preimage(o_P),
    }


@logging_scope("Perturbation sweep")
def perturbation_sweep(f, g):
    """
    Check that exactness is unchanged when `f` and `g` are followed by any
    translations `x -> [x,a,b]` of their codomains.

    Returns:
        dict: The number of perturbed pairs, and those changing the verdict.
    """
    _require_composable(f, g)
    N, P = f.cod, g.cod
    expected = bool(check_exact_at(f, g))
    translations_N = [translation(N.heap, a, b) for a, b in itertools.product(N.elements(), repeat=2)]
    translations_P = [translation(P.heap, c, d) for c, d in itertools.product(P.elements(), repeat=2)]
    failures = []
    total = len(translations_N) * len(translations_P)
    count = 0
    for tN in translations_N:
        f2 = HomMorphism(f.dom, N, [tN(y) for y in f.table], validate=False)
        for tP in translations_P:
            g2 = HomMorphism(N, P, [tP(z) for z in g.table], validate=False)
            count += 1
            if bool(check_exact_at(f2, g2)) != expected:
                failures.append((tN.name, tP.name))
        logger.progress(100 * count // max(total, 1))
    logger.progress(100, complete=True)
    return {"pairs": count, "invariant": not failures, "failures": failures}


# Sequences and forks


class Sequence:
    """
    A composable chain of morphisms. Exactness is judged at each inner
    position separately; no compatibility of basepoints along the chain is
    assumed.
    """

    def __init__(self, maps, name=None):
        self.maps = list(maps)
        self.name = name
        if len(self.maps) < 2:
            raise ValueError("A sequence needs at least two morphisms.")
        for f, g in zip(self.maps, self.maps[1:]):
            _require_composable(f, g)

    @property
    def objects(self):
        return [self.maps[0].dom] + [f.cod for f in self.maps]

    def exactness(self):
        """list<Exactness>: The verdict at each inner object."""
        return [check_exact_at(f, g) for f, g in zip(self.maps, self.maps[1:])]

    def is_exact(self):
        return all(self.exactness())


class Fork:
    """A fork `M =f,g=> N -h-> P`."""

    def __init__(self, f, g, h, name=None):
        if f.dom is not g.dom or f.cod is not g.cod or h.dom is not f.cod:
            raise ValueError("Expected morphisms M -> N, M -> N and N -> P.")
        self.f, self.g, self.h = f, g, h
        self.name = name

    @property
    def M(self):
        return self.f.dom

    @property
    def N(self):
        return self.f.cod

    @property
    def P(self):
        return self.h.cod


def barr_conditions(fork):
    """
    The conditions of Barr-exactness:

        coequalizes: h f = h g
        kernel_pair: x -> (f(x), g(x)) is an isomorphism onto the kernel pair
            of h commuting with the projections
        coequalizer: the map induced by h on the coequalizer of (f,g) is an
            isomorphism

    Returns:
        dict<str, bool>: The three conditions.
    """
    f, g, h = fork.f, fork.g, fork.h
    coequalizes = all(h(f(x)) == h(g(x)) for x in fork.M.elements())
    out = {"coequalizes": coequalizes, "kernel_pair": False, "coequalizer": False}
    if not coequalizes:
        return out
    pair, _ = kernel_pair(h)
    position = {c: i for i, c in enumerate(pair.coordinates)}
    try:
        iso_search(fork.M, pair, constraints={x: position[(f(x), g(x))] for x in fork.M.elements()})
        out["kernel_pair"] = True
    except (SizeMismatch, NotIsomorphic, NotAMorphism):
        pass
    quotient, projection = coequalizer(f, g, compare=False)
    try:
        induced = factor_through_quotient(projection, h)
        out["coequalizer"] = induced.is_bijective()
    except (VerificationFailure, NotAMorphism):
        pass
    return out


def is_barr_exact(fork):
    return all(barr_conditions(fork).values())


def barr_sequence(fork, o):
    """
    The sequence `M -(f,g)-> N x N -h_o-> P` with `h_o(a,b) = h([a,b,o])`.
    `h_o` is returned as a plain map.
    """
    N = fork.N
    square = cartesian_product(N, N)
    pairing = HomMorphism(
        fork.M, square, [square.tuple_id((fork.f(x), fork.g(x))) for x in fork.M.elements()],
        name="(f,g)", validate=False,
    )
    h_o = HomMorphism(
        square, fork.P, [fork.h(N.bracket(a, b, o)) for a, b in square.coordinates],
        name=f"h_{N.label(o)}", validate=False,
    )
    return pairing, h_o


def barr_equivalence(fork, o=None):
    """
    Compare Barr-exactness of a fork with short exactness of its sequence
    `M -> N x N -> P` at `h(o)`.

    Returns:
        dict: `o`, `barr_exact`, `short_exact` and `agree`.
    """
    o = fork.N.basepoint if o is None else o
    barr = is_barr_exact(fork)
    pairing, h_o = barr_sequence(fork, o)
    target = fork.h(o)
    short = (
        pairing.is_injective()
        and h_o.is_surjective()
        and pairing.image() == h_o.preimage(target)
    )
    return {"o": fork.N.label(o), "barr_exact": barr, "short_exact": short, "agree": barr == short}


@logging_scope("Barr equivalence sweep")
def barr_equivalence_table(fork):
    """
    pd.DataFrame: The comparison of `barr_equivalence` for every basepoint `o`
    of N.
    """
    rows = [barr_equivalence(fork, o) for o in fork.N.elements()]
    return pd.DataFrame(rows, columns=["o", "barr_exact", "short_exact", "agree"])
