import itertools

import pytest

from trussalg.errors import AxiomViolation, NotInduced
from trussalg.heaps import cyclic_group, direct_product, heap_from_group
from trussalg.iso import hom_morphisms
from trussalg.modules import (
    FreeAbelianModule,
    PointedModule,
    TrussModule,
    absorbers,
    action_representation,
    direct_sum,
    free_pointed_module,
    generated_submodule,
    induced_action,
    is_induced_submodule,
    module_quotient,
    pointed_to_ring_module,
    ring_module_to_pointed,
    submodule_closure,
    transport_pointed_morphism,
    transport_ring_morphism,
    universal_map,
)
from trussalg.morphisms import ModuleMorphism
from trussalg.structure import sample_limit
from trussalg.trusses import cyclic_ring, truss_from_ring


@pytest.fixture
def TZ4(fixtures):
    return fixtures.lookup("TZ4", "truss")


@pytest.fixture
def projecting_module():
    """Z/2 acting on the Klein heap, with 0 acting as the projection (a,b) -> (a,0)."""
    heap = heap_from_group(direct_product(cyclic_group(2), cyclic_group(2)), name="V4")
    return TrussModule(truss_from_ring(cyclic_ring(2)), heap, [[0, 0, 2, 2], [0, 1, 2, 3]], name="P")


class TestTrussModule:
    def test_fixtures(self, fixtures):
        for name in fixtures.of_kind("module"):
            module = fixtures[name]
            assert module.validate() is module

    def test_shifted_action(self, TZ4, H4):
        with pytest.raises(AxiomViolation) as exc:
            TrussModule(TZ4, H4, lambda t, m: (t * m + 1) % 4)
        assert exc.value.axiom == "M1"
        assert exc.value.witness == (1, 0, 0)

    def test_unital(self, fixtures):
        assert fixtures["MR4"].is_unital
        assert not fixtures["MC4"].is_unital

    def test_absorbers(self, fixtures):
        assert absorbers(fixtures["MR4"]) == {0}
        assert absorbers(fixtures["MC4"]) == {0}

    def test_induced_action(self, fixtures):
        module = induced_action(fixtures["MR4"], 2)
        assert 2 in absorbers(module)
        assert module.act(1, 3) == 3
        assert module.act(2, 3) == 0


class TestModuleQuotient:
    def test_even_quotient(self, fixtures):
        quotient, projection = module_quotient(fixtures["MR4"], {0, 2})
        assert quotient.size == 2
        assert projection.table == (0, 1, 0, 1)
        assert quotient.act(3, 1) == 1
        assert quotient.act(2, 1) == 0

    def test_induced(self, fixtures, projecting_module):
        assert is_induced_submodule(fixtures["MR4"], {0, 2})
        assert not is_induced_submodule(fixtures["MR4"], {0, 1})
        assert not is_induced_submodule(projecting_module, {0, 3})

    def test_not_induced(self, projecting_module):
        with pytest.raises(NotInduced) as exc:
            module_quotient(projecting_module, {0, 3})
        assert exc.value.witness == (0, "(0,0)", "(1,1)")


class TestPointedModule:
    def test_fixtures(self, fixtures):
        for name in fixtures.of_kind("pointed"):
            module = fixtures[name]
            assert module.validate() is module

    def test_translated_action(self, TZ4):
        with pytest.raises(AxiomViolation) as exc:
            PointedModule(TZ4, cyclic_group(4), lambda t, g: (g + 1) % 4)
        assert exc.value.axiom == "additivity"
        assert exc.value.witness == (0, 0, 0)

    def test_action_representation(self, fixtures):
        rep = action_representation(fixtures["PR4"])
        assert rep[1] == (0, 1, 2, 3)
        assert rep[3] == (0, 3, 2, 1)

    def test_direct_sum(self, fixtures):
        module = direct_sum(fixtures["PR4"], fixtures["PZ2"])
        assert module.size == 8
        assert module.validate() is module

    def test_direct_sum_acts_componentwise(self, fixtures):
        PR4, PZ2 = fixtures["PR4"], fixtures["PZ2"]
        module = direct_sum(PR4, PZ2, PR4)
        parts = list(itertools.product(range(4), range(2), range(4)))
        for t in range(4):
            for g, (x, y, z) in enumerate(parts):
                assert parts[module.act(t, g)] == (PR4.act(t, x), PZ2.act(t, y), PR4.act(t, z))


class TestRingModules:
    def test_round_trip(self, fixtures):
        PR4 = fixtures["PR4"]
        module = pointed_to_ring_module(PR4)
        assert module.ring.basepoint == 1
        assert module.act((2, 2), 1) == 3
        back = ring_module_to_pointed(module)
        for t in PR4.truss.elements():
            for g in PR4.elements():
                assert back.act(t, g) == PR4.act(t, g)

    def test_transport(self, fixtures):
        f = ModuleMorphism(fixtures["PR4"], fixtures["PZ2"], [0, 1, 0, 1], name="mod2")
        g = transport_pointed_morphism(f)
        assert g.dom.ring is g.cod.ring
        assert g(3) == 1

    def test_transport_back(self, fixtures):
        PR4, PZ2 = fixtures["PR4"], fixtures["PZ2"]
        f = ModuleMorphism(PR4, PZ2, [0, 1, 0, 1], name="mod2")
        g = transport_pointed_morphism(f)
        assert transport_ring_morphism(g, source=PR4, target=PZ2) == f
        restricted = transport_ring_morphism(g)
        assert restricted.dom.truss is PR4.truss
        assert restricted.table == (0, 1, 0, 1)

    def test_endomorphism_round_trip(self, fixtures):
        PR4 = fixtures["PR4"]
        module = pointed_to_ring_module(PR4)
        endomorphisms = list(hom_morphisms(PR4, PR4))
        assert endomorphisms
        for f in endomorphisms:
            g = transport_pointed_morphism(f, source=module, target=module)
            assert transport_ring_morphism(g, source=PR4, target=PR4) == f

    def test_transport_back_over_empty_truss(self, empty_truss):
        pointed = PointedModule(empty_truss, cyclic_group(3), [])
        f = ModuleMorphism(pointed, pointed, [0, 2, 1], name="neg")
        g = transport_pointed_morphism(f)
        assert transport_ring_morphism(g).table == (0, 2, 1)

    def test_empty_truss(self, empty_truss):
        pointed = PointedModule(empty_truss, cyclic_group(3), [])
        module = pointed_to_ring_module(pointed)
        assert module.ring.size == 1
        assert module.act(0, 2) == 0


class TestSubmodules:
    def test_generated(self, fixtures):
        PR4 = fixtures["PR4"]
        assert generated_submodule(PR4, [2]) == {0, 2}
        assert generated_submodule(PR4, [1]) == {0, 1, 2, 3}
        assert generated_submodule(PR4, []) == {0}

    def test_matches_closure(self, fixtures):
        for name in ("PR4", "PN4", "PR6", "PZ3", "PV4"):
            module = fixtures[name]
            for x in module.elements():
                assert generated_submodule(module, [x]) == submodule_closure(module, [x])

    def test_empty_truss_is_free_abelian(self, empty_truss):
        free, insertion = free_pointed_module(empty_truss)
        assert isinstance(free, FreeAbelianModule)
        assert insertion == {"*": 1}


class TestFreeModules:
    @pytest.fixture
    def T39(self, fixtures):
        return fixtures.lookup("T39", "truss")

    def test_one_generator(self, T39, fixtures):
        with sample_limit(2000):
            free, insertion = free_pointed_module(T39)
            phi = universal_map(free, {"*": 1}, fixtures["PN4"])
        assert insertion == {"*": (1, 0, 1)}
        assert phi(free.basis) == 1
        assert phi(free.group.zero) == 0

    def test_two_generators(self, T39, fixtures):
        free, insertion = free_pointed_module(T39, symbols=("a", "b"), validate=False)
        assert insertion["b"] == ((1, 0, 0), (1, 0, 1))
        phi = universal_map(free, {"a": 1, "b": 2}, fixtures["PN4"], validate=False)
        assert phi(insertion["a"]) == 1
        assert phi(insertion["b"]) == 2

    def test_unital(self, T39, fixtures):
        free, insertion = free_pointed_module(T39, unital=True, validate=False)
        assert insertion == {"*": (1, 1)}
        phi = universal_map(free, {"*": 3}, fixtures["PN4"], validate=False)
        assert phi((0, 1)) == 1
