from hypothesis import given
from hypothesis import strategies as st

import pytest

from trussalg.errors import AxiomViolation, NotATrussMorphism
from trussalg.heaps import cyclic_group, heap_from_group
from trussalg.morphisms import TrussMorphism
from trussalg.structure import sample_limit
from trussalg.trusses import (
    FiniteTruss,
    change_of_basepoint,
    check_dorroh_commutation,
    check_unital_rng_dorroh,
    cyclic_ring,
    dorroh_ring,
    lift_morphism,
    progression_truss,
    truss_from_ring,
    unital_extension_map,
    unital_rng,
    unital_truss_extension,
    universal_ring,
)
from trussalg.utils.debug import logger


@pytest.fixture
def T39(fixtures):
    return fixtures.lookup("T39", "truss")


class TestFiniteTruss:
    def test_fixture(self, T39):
        assert T39.labels == ("3", "9")
        assert T39.label(T39.unit) == "9"
        assert T39.label(T39.mul(0, 0)) == "9"
        assert T39.validate() is T39

    def test_associativity(self):
        heap = heap_from_group(cyclic_group(2))
        with pytest.raises(AxiomViolation) as exc:
            FiniteTruss(heap, [[(a * b + 1) % 2 for b in range(2)] for a in range(2)])
        assert exc.value.axiom == "associativity"
        assert exc.value.witness == (0, 0, 1)

    def test_left_distributivity(self):
        heap = heap_from_group(cyclic_group(3))
        with pytest.raises(AxiomViolation) as exc:
            FiniteTruss(heap, [[max(a, b) for b in range(3)] for a in range(3)])
        assert exc.value.axiom == "T1"
        assert exc.value.witness == (1, 0, 1, 0)

    def test_empty(self, empty_truss):
        assert empty_truss.is_empty
        assert empty_truss.validate() is empty_truss

    def test_truss_from_ring(self, fixtures):
        truss = truss_from_ring(cyclic_ring(4))
        assert truss.validate() is truss
        assert (truss.table == fixtures.lookup("TZ4", "truss").table).all()
        assert truss.ring.unit == 1


class TestUniversalRing:
    def test_product_at_three(self, T39):
        ring, iota = universal_ring(T39, 0)
        assert ring.mul((1, 0), (1, 0)) == (0, 0)
        assert ring.mul(iota(1), iota(1)) == (1, 1)
        assert "with zero (3,0)" in ring.describe()
        assert ring.format((1, 4)) == "(9,4)"

    def test_decomposition(self, T39):
        ring, _ = universal_ring(T39, 0)
        for x in ring.elements(window=3):
            assert ring.decompose(x) == x

    def test_unital_product(self, T39):
        ring, _ = universal_ring(T39, T39.unit, validate=False)
        for x in ring.elements(window=2):
            for y in ring.elements(window=2):
                assert ring.mul(x, y) == ring.unital_product(x, y)

    def test_empty(self, empty_truss):
        ring, iota = universal_ring(empty_truss)
        assert ring.size == 1
        assert iota.table == ()

    def test_lift(self, T39):
        target = truss_from_ring(cyclic_ring(2))
        phi = TrussMorphism(T39, target, [1, 1], name="one")
        lift = lift_morphism(phi)
        assert lift((1, 5)) == 1
        assert lift((0, 2)) == 0

    def test_lift_rejects_non_morphisms(self, T39):
        target = truss_from_ring(cyclic_ring(2))
        phi = TrussMorphism(T39, target, [0, 1], validate=False)
        with pytest.raises(NotATrussMorphism):
            lift_morphism(phi)

    def test_integer_truss(self):
        with sample_limit(5000):
            Z63 = progression_truss(6, 3).validate()
            ring, iota = universal_ring(Z63, 3)
        assert Z63.unit is None
        assert iota(9) == (9, 1)

    def test_progression_closure(self):
        with pytest.raises(ValueError):
            progression_truss(6, 2)


elements = st.tuples(st.integers(min_value=0, max_value=1), st.integers(min_value=-6, max_value=6))


class TestUniversalRingLaws:
    @given(elements, elements, elements)
    def test_associativity(self, fixtures, x, y, z):
        ring, _ = universal_ring(fixtures["T39"], 0, validate=False)
        assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))

    @given(elements, elements, elements)
    def test_distributivity(self, fixtures, x, y, z):
        ring, _ = universal_ring(fixtures["T39"], 0, validate=False)
        assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
        assert ring.mul(ring.add(x, y), z) == ring.add(ring.mul(x, z), ring.mul(y, z))


class TestUniversalRingCertification:
    def test_full_window_without_sampling(self, fixtures, mocker):
        caveat = mocker.patch.object(logger, "caveat")
        ring, _ = universal_ring(fixtures["TZ12"])
        assert len(ring.elements()) == 636
        assert caveat.call_count == 0

    def test_rejects_non_associative_truss(self):
        heap = heap_from_group(cyclic_group(2))
        truss = FiniteTruss(heap, [[(a * b + 1) % 2 for b in range(2)] for a in range(2)], validate=False)
        with pytest.raises(AxiomViolation) as exc:
            universal_ring(truss, 0)
        assert exc.value.axiom == "associativity"

    def test_non_unital_truss(self, fixtures, mocker):
        caveat = mocker.patch.object(logger, "caveat")
        ring, _ = universal_ring(fixtures["TL3"], 1)
        assert ring.unit is None
        assert ring.validate() is ring
        assert caveat.call_count == 0


class TestChangeOfBasepoint:
    def test_unital_truss(self, fixtures):
        TZ4 = fixtures["TZ4"]
        forward, backward = change_of_basepoint(TZ4, 0, 1)
        assert forward((0, 0)) == (1, 0)
        assert forward((2, 3)) == (0, 3)
        assert forward((1, 1)) == (1, 1)
        for t in TZ4.elements():
            assert forward((t, 1)) == (t, 1)
            assert backward((t, 1)) == (t, 1)

    def test_non_unital_truss(self, fixtures):
        TL3 = fixtures["TL3"]
        forward, backward = change_of_basepoint(TL3, 0, 2)
        assert forward((1, 0)) == (0, 0)
        assert forward((2, 2)) == (0, 2)
        for x in forward.dom.elements(window=3):
            assert backward(forward(x)) == x
        for t in TL3.elements():
            assert forward((t, 1)) == (t, 1)

    def test_morphisms_are_ring_morphisms(self, fixtures):
        forward, backward = change_of_basepoint(fixtures["TZ4"], 0, 1)
        ring, target = forward.dom, forward.cod
        xs = ring.elements(window=2)
        for x in xs:
            for y in xs:
                assert forward(ring.mul(x, y)) == target.mul(forward(x), forward(y))
                assert forward(ring.add(x, y)) == target.add(forward(x), forward(y))
        assert backward.cod is ring


class TestDorroh:
    def test_dorroh_of_z2(self):
        ring = dorroh_ring(cyclic_ring(2))
        assert ring.unit == (0, 1)
        assert ring.mul((1, 0), (1, 0)) == (1, 0)
        assert ring.mul((1, 2), (0, 3)) == (1, 6)

    def test_unital_extension(self, T39):
        with sample_limit(2000):
            ext, j = unital_truss_extension(T39, 0)
        assert ext.unit == (0, 0)
        assert j(1) == (1, 1)
        assert ext.mul(j(0), ext.unit) == j(0)

    def test_unital_extension_of_empty_truss(self, empty_truss):
        ext, _ = unital_truss_extension(empty_truss)
        assert ext.size == 1
        assert ext.is_unital

    def test_extension_map(self, T39):
        target = truss_from_ring(cyclic_ring(2))
        with sample_limit(2000):
            ext, _ = unital_truss_extension(T39, 0)
            out = unital_extension_map(ext, TrussMorphism(T39, target, [1, 1]))
        assert out(ext.unit) == 1

    def test_commutation(self, T39):
        with sample_limit(2000):
            result = check_dorroh_commutation(T39, 0)
        x = ((1, 3), 2)
        assert result["phi"](result["psi"](x)) == x

    def test_unital_rng(self, T39):
        rng = unital_rng(T39)
        assert rng.zero == T39.unit
        assert check_unital_rng_dorroh(T39)

    def test_unital_rng_needs_unit(self, fixtures):
        with pytest.raises(ValueError):
            unital_rng(fixtures.lookup("T0", "truss"))
