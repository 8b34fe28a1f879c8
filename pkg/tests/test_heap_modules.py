import numpy as np
import pytest

from trussalg.errors import AxiomViolation, ConditionViolation, NotIsotropic
from trussalg.heap_modules import (
    HeapOfModules,
    affine_action,
    affine_action_via_pointed,
    affine_basepoint_witness,
    bracket_morphism,
    cartesian_product,
    check_delta_conditions,
    check_hom_consequences,
    delta_form,
    delta_violations,
    from_affine,
    functor_G,
    functor_H,
    is_affine,
    isotropic_correspondence,
    isotropic_restriction,
    to_affine,
    translation_morphism,
    transport_G,
)
from trussalg.trusses import universal_ring


@pytest.fixture
def HR4(fixtures):
    return fixtures.lookup("HR4", "hom")


@pytest.fixture
def scaling(fixtures, H4):
    """`t |>_m n = t.n`, which forgets the basepoint."""
    return HeapOfModules(fixtures["TZ4"], H4, lambda t, m, n: t * n % 4, name="scaling", validate=False)


class TestHeapOfModules:
    def test_fixtures(self, fixtures):
        for name in fixtures.of_kind("hom"):
            hom = fixtures[name]
            assert hom.validate() is hom
            assert check_hom_consequences(hom)

    def test_action(self, HR4):
        # t |>_m n = t(n - m) + m
        for t in range(4):
            for m in range(4):
                for n in range(4):
                    assert HR4.act(t, m, n) == (t * (n - m) + m) % 4

    def test_base_change(self, scaling):
        with pytest.raises(AxiomViolation) as exc:
            scaling.validate()
        assert exc.value.axiom == "HM2"
        assert exc.value.witness == (0, 1, 0, 0)

    def test_isotropy(self, fixtures):
        assert fixtures["HR4"].is_isotropic
        assert fixtures["HC4"].is_isotropic is False
        assert fixtures["HT2"].is_isotropic is None

    def test_module_at(self, HR4):
        module = HR4.module_at(2)
        assert module.validate() is module
        assert module.act(3, 0) == 0

    def test_translation(self, HR4):
        assert translation_morphism(HR4, 0, 1).table == (1, 2, 3, 0)


class TestDeltaForm:
    def test_shape(self, HR4):
        D = delta_form(HR4)
        assert D.shape == (4, 4, 4)
        assert D[2, 3, 0] == HR4.act(3, 2, 0)

    def test_fixtures_satisfy_conditions(self, fixtures):
        for name in fixtures.of_kind("hom"):
            assert delta_violations(fixtures[name]) == []

    def test_scaling(self, scaling):
        violations = delta_violations(scaling)
        assert [v.condition for v in violations] == ["a", "b"]
        assert violations[0].witness == (1, 0)
        assert violations[1].witness == (0, 1, 0, 0)
        with pytest.raises(ConditionViolation):
            check_delta_conditions(scaling)

    def test_agrees_with_axioms(self, fixtures, scaling):
        candidates = [fixtures[name] for name in fixtures.of_kind("hom")] + [scaling]
        for hom in candidates:
            try:
                hom.validate()
                valid = True
            except AxiomViolation:
                valid = False
            assert valid == (not delta_violations(hom))


class TestPointedFunctors:
    def test_H_of_pointed(self, fixtures, HR4):
        assert np.array_equal(functor_H(fixtures["PR4"]).action_table(), HR4.action_table())

    def test_G_of_hom(self, fixtures, HR4):
        pointed = functor_G(HR4, 0)
        assert pointed.validate() is pointed
        for t in range(4):
            for g in range(4):
                assert pointed.act(t, g) == fixtures["PR4"].act(t, g)

    def test_transport(self, fixtures):
        f = transport_G(fixtures["s2"], 0, 0)
        assert f.table == (0, 1, 2, 3)

    def test_product(self, fixtures):
        HR2 = fixtures["HR2"]
        square = cartesian_product(HR2, HR2)
        assert square.size == 4
        assert square.validate() is square
        assert square.projection(1).table == (0, 1, 0, 1)

    def test_bracket_morphism(self, fixtures):
        f = bracket_morphism(fixtures["HR2"])
        assert f.dom.size == 8


class TestAffine:
    def test_round_trip(self, HR4):
        affine = to_affine(HR4)
        assert is_affine(affine)
        assert np.array_equal(from_affine(affine).action_table(), HR4.action_table())

    def test_pointed_route(self, HR4):
        ring, _ = universal_ring(HR4.truss, validate=False)
        direct = affine_action(HR4, ring.basepoint)
        via_pointed = affine_action_via_pointed(HR4, ring.basepoint)
        for r in ring.elements(window=2):
            for m in range(4):
                for n in range(4):
                    assert direct(r, m, n) == via_pointed(r, m, n)

    def test_embedding(self, HR4):
        affine = to_affine(HR4)
        assert affine.act((3, 1), 1, 2) == HR4.act(3, 1, 2)

    @pytest.mark.parametrize("name", ["HR4", "HC4"])
    def test_independent_of_auxiliary_basepoint(self, fixtures, name):
        hom = fixtures[name]
        ring, _ = universal_ring(hom.truss, validate=False)
        ms = hom.elements()
        affines = [to_affine(hom, e=e) for e in ms]
        tables = [
            [[[affine.act(r, m, n) for n in ms] for m in ms] for r in ring.elements(window=2)] for affine in affines
        ]
        assert all(table == tables[0] for table in tables[1:])
        assert affine_basepoint_witness(hom, window=2) is None

    def test_basepoint_dependence_detected(self, fixtures, H4):
        shifted = HeapOfModules(fixtures["TZ4"], H4, lambda t, m, n: (t * n + m) % 4, validate=False)
        assert affine_basepoint_witness(shifted, window=1) is not None


class TestIsotropicCorrespondence:
    def test_round_trip(self, fixtures):
        HT2 = fixtures["HT2"]
        extended = isotropic_correspondence(HT2)
        assert extended.act(extended.truss.unit, 0, 1) == 1
        restricted = isotropic_restriction(extended)
        assert np.array_equal(restricted.action_table(), HT2.action_table())

    def test_not_isotropic(self, fixtures):
        with pytest.raises(NotIsotropic) as exc:
            isotropic_restriction(fixtures["HC4"])
        assert exc.value.witness == ("0", "1")
