import numpy as np
import pytest

from trussalg.dsl import dumps
from trussalg.errors import UnresolvedReference
from trussalg.heaps import FiniteHeap, cyclic_group, heap_from_group
from trussalg.morphisms import Morphism
from trussalg.registry import StructureRegistry
from trussalg.trusses import universal_ring


class TestDumps:
    def test_group(self):
        text = dumps([("Z2", cyclic_group(2))])
        assert text == (
            "group Z2 {\n"
            "    carrier 0 1;\n"
            "    zero 0;\n"
            "    add 0 | 0 1;\n"
            "    add 1 | 1 0;\n"
            "}\n"
        )

    def test_empty_heap(self, empty_heap):
        assert dumps([("E", empty_heap)]) == "heap E {\n    carrier;\n}\n"

    def test_morphism_references(self, fixtures):
        names = ["Z2", "H2", "TZ4", "HR2", "id2"]
        text = fixtures.dumps(names)
        assert "morphism id2 {\n    kind hom;\n    from HR2;\n    to HR2;\n    images 0 1;\n}" in text

    def test_round_trip(self, fixtures):
        reread = StructureRegistry(fixtures.dumps())
        assert reread.names == fixtures.names
        for name in fixtures.of_kind("hom"):
            assert np.array_equal(reread[name].action_table(), fixtures[name].action_table())
        for name in fixtures.of_kind("truss"):
            assert np.array_equal(reread[name].table, fixtures[name].table)
        for name in fixtures.of_kind("morphism"):
            assert isinstance(reread[name], Morphism)
            assert reread[name].table == fixtures[name].table
        assert reread["S1"].is_exact()

    def test_labels_survive(self, fixtures):
        reread = StructureRegistry(fixtures.dumps(["Z2", "Z4", "H4", "TZ4", "T39", "K4"]))
        assert reread["T39"].labels == ("3", "9")
        assert reread["K4"].labels == fixtures["K4"].labels


class TestDumpErrors:
    def test_symbolic(self, fixtures):
        ring, _ = universal_ring(fixtures["T39"], validate=False)
        with pytest.raises(TypeError, match="symbolic"):
            dumps([("R", ring)])

    def test_missing_reference(self, fixtures):
        with pytest.raises(UnresolvedReference):
            dumps([("HR4", fixtures["HR4"])])

    def test_unprintable_label(self):
        heap = FiniteHeap(heap_from_group(cyclic_group(2)).table, labels=["a b", "c"], name="L")
        with pytest.raises(ValueError, match="cannot be written"):
            dumps([("L", heap)])

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            dumps([("x", 3)])
