import pytest

from trussalg.errors import NotIsotropic, NotSurjectiveProjection
from trussalg.slices import (
    HomSlice,
    SliceObject,
    SumSlice,
    compare_with_slice_coproduct,
    counit_map,
    ring_action,
    ring_pointed,
    slice_coproduct,
    slice_G,
    slice_M,
    unit_map,
    unit_naturality,
    zero_slice,
)
from trussalg.structure import sample_limit
from trussalg.trusses import universal_ring


@pytest.fixture
def HR4(fixtures):
    return fixtures.lookup("HR4", "hom")


class TestSliceOfHom:
    def test_slice(self, HR4):
        slice_object = slice_G(HR4)
        assert isinstance(slice_object, HomSlice)
        assert slice_object.base_truss is None
        assert slice_object.point() == (0, (1, 1))
        assert slice_object.fiber((1, 0)) == [(m, (1, 0)) for m in range(4)]

    def test_validate(self, HR4, small_window):
        with sample_limit(500):
            slice_object = slice_G(HR4)
            assert slice_object.validate() is slice_object

    def test_not_isotropic(self, fixtures):
        with pytest.raises(NotIsotropic):
            slice_G(fixtures["HC4"])

    def test_empty_hom(self, fixtures):
        slice_object = slice_G(fixtures["HE"])
        assert slice_object.is_zero
        assert slice_M(slice_object).is_empty

    def test_missed_generator(self, fixtures, small_window):
        TZ4 = fixtures["TZ4"]
        ring, _ = universal_ring(TZ4, validate=False)
        pointed = ring_pointed(TZ4, ring)
        constant = SliceObject(pointed, lambda r: ring.group.zero, ring, name="constant")
        with sample_limit(500), pytest.raises(NotSurjectiveProjection):
            constant.validate()


class TestUnitAndCounit:
    def test_unit(self, HR4):
        zeta = unit_map(HR4)
        assert zeta(2) == (2, (1, 1))
        assert zeta.is_injective()

    def test_unit_action(self, HR4):
        target = unit_map(HR4).cod
        for t in range(4):
            assert target.act(t, (1, (1, 1)), (3, (1, 1))) == (HR4.act(t, 1, 3), (1, 1))

    def test_counit(self, HR4, small_window):
        slice_object = slice_G(HR4)
        with sample_limit(300):
            epsilon, inverse = counit_map(slice_object, window=1)
        x = slice_object.point()
        unit = slice_object.ring.unit
        assert epsilon((x, unit)) == x
        assert inverse(x) == (x, unit)

    def test_ring_action(self, HR4):
        slice_object = slice_G(HR4)
        x = slice_object.point()
        assert ring_action(slice_object, slice_object.ring.unit, x) == x
        assert ring_action(slice_object, (3, 1), (1, (1, 1))) == (3, (3, 1))


class TestNonUnitalTruss:
    def test_extension(self, fixtures):
        HT2 = fixtures["HT2"]
        slice_object = slice_G(HT2)
        assert slice_object.base_truss is fixtures["T0"]
        assert slice_object.truss.is_unital

    def test_round_trip(self, fixtures):
        HT2 = fixtures["HT2"]
        slice_object = slice_G(HT2)
        unit = slice_object.ring.unit
        hom = slice_M(slice_object)
        assert hom.truss is fixtures["T0"]
        for t in range(2):
            for m in range(2):
                for n in range(2):
                    assert hom.act(t, (m, unit), (n, unit)) == (HT2.act(t, m, n), unit)


class TestSliceCoproduct:
    def test_two_members(self, fixtures):
        HR2 = fixtures["HR2"]
        hom, total = slice_coproduct([HR2, HR2])
        assert isinstance(total, SumSlice)
        assert hom.truss is fixtures["TZ4"]
        assert len(total.summands) == 2

    def test_single_member(self, fixtures):
        HR2 = fixtures["HR2"]
        hom, total = slice_coproduct([HR2, fixtures["HE"]])
        assert isinstance(total, HomSlice)
        assert sorted(hom.elements()) == [(0, (1, 1)), (1, (1, 1))]

    def test_empty_members(self, fixtures):
        hom, total = slice_coproduct([fixtures["HE"]])
        assert total.is_zero
        assert hom.is_empty

    def test_zero_slice(self, fixtures):
        ring, _ = universal_ring(fixtures["TZ4"], validate=False)
        zero = zero_slice(fixtures["TZ4"], ring)
        assert zero.is_zero
        assert zero.projection(0) == ring.zero


class TestCoproductComparison:
    def test_three_members(self, fixtures, HR4):
        HR2 = fixtures["HR2"]
        phi, psi = compare_with_slice_coproduct([HR2, HR4, HR2], window=2)
        unit, zero = (1, 1), (1, 0)
        x = phi.dom.injection(1)(3)
        assert x == (0, 3, 0, unit, zero)
        assert phi(x) == ((0, zero), (3, unit), (0, zero))
        assert psi(((1, unit), (0, zero), (1, zero))) == (1, 0, 1, zero, zero)

    def test_i0(self, fixtures, HR4):
        HR2 = fixtures["HR2"]
        phi, psi = compare_with_slice_coproduct([HR2, HR4], i0=1, window=2)
        assert phi.dom.i0 == 1
        assert psi(((1, (1, 1)), (2, (1, 0)))) == (1, 2, (1, 1))

    def test_requires_isotropic_members(self, fixtures, HR4):
        with pytest.raises(ValueError):
            compare_with_slice_coproduct([fixtures["HC4"], HR4])

    def test_requires_two_members(self, fixtures, HR4):
        with pytest.raises(ValueError):
            compare_with_slice_coproduct([HR4, fixtures["HE"]])


class TestUnitNaturality:
    def test_inclusion(self, fixtures):
        lifted = unit_naturality(fixtures["i2"])
        assert lifted((1, (1, 1))) == (2, (1, 1))

    def test_automorphism(self, fixtures):
        assert unit_naturality(fixtures["zeta2"]) is not None

    def test_empty_domain(self, fixtures):
        assert unit_naturality(fixtures["e2"]) is None
