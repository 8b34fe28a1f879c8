import pytest

from trussalg.errors import NotASubHeapOfModules, VerificationFailure
from trussalg.iso import hom_morphisms, is_isomorphic, iso_search
from trussalg.limits import (
    CoproductHom,
    check_mutually_inverse,
    coequalizer,
    coequalizer_decomposed_subhom,
    coequalizer_subhom,
    compare_coproducts,
    congruence_class_subhom,
    coproduct,
    enumerate_hom_congruences,
    equalizer,
    factor_through_quotient,
    generated_subhom,
    hom_quotient,
    is_subhom,
    kernel_pair,
    product,
    pushout,
    star_coproduct,
    subhom_closure,
    subhom_violation,
    substructure,
    terminal,
    verify_coequalizer,
    verify_coproduct,
    verify_equalizer,
    verify_product,
    verify_pullback,
    verify_pushout,
)
from trussalg.morphisms import HomMorphism


@pytest.fixture
def HR4(fixtures):
    return fixtures.lookup("HR4", "hom")


@pytest.fixture
def HR2(fixtures):
    return fixtures.lookup("HR2", "hom")


class TestSubHeapsOfModules:
    def test_violation(self, HR4):
        assert subhom_violation(HR4, {0, 1}) == ("bracket", 0, 1, 0)
        assert subhom_violation(HR4, {0, 2}) is None
        assert is_subhom(HR4, {1, 3})

    def test_substructure(self, HR4):
        sub, inclusion = substructure(HR4, {1, 3})
        assert sub.size == 2
        assert inclusion.table == (1, 3)
        assert sub.validate() is sub

    def test_generated(self, HR4):
        assert generated_subhom(HR4, {2}, 0) == {0, 2}
        assert subhom_closure(HR4, {2}, 0) == {0, 2}
        assert generated_subhom(HR4, {1}, 0) == {0, 1, 2, 3}

    def test_generated_matches_closure(self, fixtures):
        for name in ("HR4", "HR2", "HN4", "HC4"):
            hom = fixtures[name]
            for x in hom.elements():
                assert generated_subhom(hom, {x}) == subhom_closure(hom, {x})

    def test_morphism_count(self, HR2, HR4):
        assert len(list(hom_morphisms(HR2, HR4))) == 8
        assert len(list(hom_morphisms(HR2, HR2))) == 4


class TestQuotients:
    def test_even_quotient(self, HR4, HR2):
        quotient, projection = hom_quotient(HR4, {0, 2})
        assert quotient.size == 2
        assert projection.table == (0, 1, 0, 1)
        assert is_isomorphic(quotient, HR2)

    def test_requires_subhom(self, HR4):
        with pytest.raises(NotASubHeapOfModules):
            hom_quotient(HR4, [])
        with pytest.raises(NotASubHeapOfModules) as exc:
            hom_quotient(HR4, {0, 1})
        assert exc.value.witness == ("bracket", 0, 1, 0)

    def test_factorization(self, fixtures, HR4):
        _, projection = hom_quotient(HR4, {0, 2})
        assert factor_through_quotient(projection, fixtures["p2"]).table == (0, 1)
        with pytest.raises(VerificationFailure):
            factor_through_quotient(projection, fixtures["id4"])

    def test_congruence_classes_are_subhoms(self, fixtures):
        for name in ("HR4", "HR2", "HN4"):
            hom = fixtures[name]
            congruences = list(enumerate_hom_congruences(hom))
            assert congruences
            for classes in congruences:
                assert is_subhom(hom, congruence_class_subhom(hom, classes))


class TestLimits:
    def test_equalizer(self, fixtures, HR2, HR4):
        f, g = fixtures["id4"], fixtures["neg4"]
        E, inclusion = equalizer(f, g)
        assert inclusion.table == (0, 2)
        assert verify_equalizer(f, g, E, inclusion, [HR2, HR4])["verified"]

    def test_empty_equalizer(self, fixtures):
        E, inclusion = equalizer(fixtures["id4"], fixtures["s2"])
        assert E.is_empty
        assert inclusion.table == ()

    def test_product(self, HR2):
        prod, projections = product([HR2, HR2])
        assert prod.size == 4
        report = verify_product([HR2, HR2], prod, projections, [HR2])
        assert report["cones"] == 16
        assert report["verified"]

    def test_terminal(self, fixtures):
        star = terminal(fixtures["TZ4"])
        assert star.size == 1
        assert star.validate() is star

    def test_kernel_pair(self, fixtures, HR2):
        p2 = fixtures["p2"]
        pair, projections = kernel_pair(p2)
        assert pair.size == 8
        assert is_isomorphic(pair, fixtures["K4"])
        assert verify_pullback(p2, p2, pair, projections, [HR2])["verified"]

    def test_parallel_pair_required(self, fixtures):
        with pytest.raises(ValueError):
            equalizer(fixtures["i2"], fixtures["p2"])


class TestColimits:
    def test_coequalizer(self, fixtures, HR2):
        f, g = fixtures["id4"], fixtures["s2"]
        Q, projection = coequalizer(f, g)
        assert Q.size == 2
        assert projection.table == (0, 1, 0, 1)
        assert verify_coequalizer(f, g, Q, projection, [HR2])["verified"]

    def test_coequalizer_constructions_agree(self, fixtures):
        for f, g in (("id4", "s2"), ("id4", "neg4"), ("k1", "k2")):
            f, g = fixtures[f], fixtures[g]
            assert coequalizer_subhom(f, g) == coequalizer_decomposed_subhom(f, g)

    def test_pushout(self, fixtures, HR2):
        i2 = fixtures["i2"]
        P, legs = pushout(i2, i2)
        assert P.size == 8
        assert legs[0].compose(i2).table == legs[1].compose(i2).table
        assert verify_pushout(i2, i2, P, legs, [HR2])["verified"]

    def test_coproduct_drops_empty_members(self, fixtures, HR2):
        out, injections = coproduct([HR2, fixtures["HE"]])
        assert out is HR2
        assert injections[0].table == (0, 1)
        assert injections[1].table == ()

    def test_empty_family(self, fixtures):
        out, injections = coproduct([fixtures["HE"]])
        assert out.is_empty
        assert injections[0].table == ()

    def test_star_coproduct(self, fixtures, HR2, small_window):
        coprod, injections = star_coproduct(fixtures["TZ4"])
        assert isinstance(coprod, CoproductHom)
        assert coprod.unital
        assert injections[0](0) == (0, 0, (1, 0))
        assert injections[1](0) == (0, 0, (1, 1))
        assert verify_coproduct(coprod, coprod.members, injections, [HR2])["verified"]

    def test_mediating_map(self, fixtures, HR2, small_window):
        coprod, injections = star_coproduct(fixtures["TZ4"])
        legs = [HomMorphism(m, HR2, [k]) for m, k in zip(coprod.members, (0, 1))]
        u = coprod.mediating_map(legs, HR2)
        assert u(injections[0](0)) == 0
        assert u(injections[1](0)) == 1


class TestChoiceIndependence:
    def test_pushout_basepoint(self, fixtures):
        i2 = fixtures["i2"]
        first, legs = pushout(i2, i2, e=0)
        second, other_legs = pushout(i2, i2, e=1)
        assert first.size == second.size == 8

        def commutes(candidate):
            return all(candidate(a(k)) == b(k) for a, b in zip(legs, other_legs) for k in a.dom.elements())

        iso = iso_search(first, second, constraints=commutes)
        assert sorted(iso.table) == list(range(8))

    def test_coproduct_i0(self, HR2, HR4):
        first, _ = coproduct([HR2, HR4], i0=0)
        second, _ = coproduct([HR2, HR4], i0=1)
        forward, backward = compare_coproducts(first, second, window=2)
        assert forward(first.injection(1)(3)) == (0, 3, (1, 0))
        for i, member in enumerate(first.members):
            for m in member.elements():
                assert backward(second.injection(i)(m)) == first.injection(i)(m)

    def test_coproduct_basepoints(self, HR2, HR4):
        first, _ = coproduct([HR2, HR4])
        second, _ = coproduct([HR2, HR4], basepoints=[1, 2])
        assert second.basepoints == [1, 2]
        forward, _ = compare_coproducts(first, second, window=2)
        assert forward(first.injection(0)(1)) == (1, 2, (1, 0))

    def test_maps_not_inverse(self, fixtures):
        with pytest.raises(VerificationFailure) as exc:
            check_mutually_inverse(fixtures["id4"], fixtures["s2"])
        assert exc.value.witness == (0,)
