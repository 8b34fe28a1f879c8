import pytest

from trussalg.errors import (
    AxiomViolation,
    NotAMorphism,
    StructureSyntaxError,
    TableNotTotal,
    UnresolvedReference,
)
from trussalg.exactness import Fork, Sequence
from trussalg.heaps import FiniteGroup, FiniteHeap
from trussalg.modules import PointedModule
from trussalg.morphisms import HeapMorphism, HomMorphism
from trussalg.registry import StructureRegistry

BASICS = """\
group Z2 { cyclic 2; }
heap H2 { group Z2; }
truss TZ2 { cyclic 2; }
"""


def build(text):
    return StructureRegistry(BASICS + text)


class TestStructures:
    def test_inline_group(self):
        registry = build("group G { carrier e a; zero e; add e | e a; add a | a e; }")
        G = registry.lookup("G", "group")
        assert isinstance(G, FiniteGroup)
        assert G.labels == ("e", "a")
        assert G.label(G.add(1, 1)) == "e"

    def test_inline_heap(self):
        registry = build(
            "heap H { carrier x y; bracket x x | x y; bracket x y | y x; bracket y x | y x; bracket y y | x y; }"
        )
        H = registry["H"]
        assert isinstance(H, FiniteHeap)
        assert H.label(H.bracket(0, 1, 0)) == "y"

    def test_heap_from_product(self):
        registry = build("heap V { product Z2 Z2; }")
        assert registry["V"].size == 4

    def test_ring_and_truss(self):
        registry = build("ring R3 { cyclic 3; }\ntruss T3 { ring R3; }")
        assert registry["R3"].unit == 1
        assert registry["T3"].mul(2, 2) == 1

    def test_pointed(self):
        registry = build("pointed P { truss TZ2; group Z2; act 0 | 0 0; act 1 | 0 1; }")
        assert isinstance(registry["P"], PointedModule)
        assert registry["P"].act(0, 1) == 0

    def test_axioms_are_checked(self):
        with pytest.raises(AxiomViolation) as exc:
            build(
                "heap P { carrier a b; bracket a a | a a; bracket a b | a a; "
                "bracket b a | b b; bracket b b | b b; }"
            )
        assert exc.value.axiom == "H2"

    def test_empty_truss(self):
        registry = build("truss TE { carrier; }")
        assert registry["TE"].is_empty


class TestTables:
    def test_missing_row(self):
        with pytest.raises(TableNotTotal, match="1 `add` row"):
            build("group G { carrier e a; zero e; add e | e a; }")

    def test_repeated_row(self):
        with pytest.raises(TableNotTotal, match="repeated"):
            build("group G { carrier e a; zero e; add e | e a; add e | e a; }")

    def test_short_row(self):
        with pytest.raises(TableNotTotal, match="has 1 values"):
            build("group G { carrier e a; zero e; add e | e; add a | a e; }")

    def test_row_without_values(self):
        with pytest.raises(StructureSyntaxError, match="before its values"):
            build("group G { carrier e a; zero e; add e; add a | a e; }")

    def test_unknown_label(self):
        with pytest.raises(UnresolvedReference) as exc:
            build("group G { carrier e a; zero e; add e | e b; add a | a e; }")
        assert exc.value.name == "b"

    def test_repeated_carrier_element(self):
        with pytest.raises(StructureSyntaxError, match="repeats"):
            build("heap H { carrier a a; }")


class TestStatements:
    def test_unknown_statement(self):
        with pytest.raises(StructureSyntaxError, match="not a statement of `heap`"):
            build("heap H { cyclic 2; mul 0 | 0 0; }")

    def test_integer_argument(self):
        with pytest.raises(StructureSyntaxError, match="expects an integer"):
            build("group G { cyclic four; }")

    def test_argument_count(self):
        with pytest.raises(StructureSyntaxError, match="takes 1 argument"):
            build("group G { cyclic 2 3; }")

    def test_missing_truss(self):
        with pytest.raises(StructureSyntaxError, match="needs a `truss`"):
            build("hom M { heap H2; }")

    def test_unknown_reference(self):
        with pytest.raises(UnresolvedReference) as exc:
            build("hom M { truss T9; heap H2; }")
        assert exc.value.name == "T9"

    def test_reference_of_wrong_kind(self):
        with pytest.raises(UnresolvedReference):
            build("hom M { truss H2; heap H2; }")


class TestMorphismsAndDiagrams:
    def test_inferred_kind(self):
        registry = build("morphism swap { from H2; to H2; images 1 0; }")
        swap = registry.lookup("swap", "morphism")
        assert isinstance(swap, HeapMorphism)
        assert swap.table == (1, 0)

    def test_explicit_kind(self, fixtures):
        assert isinstance(fixtures["i2"], HomMorphism)

    def test_unknown_kind(self):
        with pytest.raises(StructureSyntaxError, match="Unknown morphism kind"):
            build("morphism m { kind widget; from H2; to H2; images 0 1; }")

    def test_image_count(self):
        with pytest.raises(TableNotTotal):
            build("morphism m { from H2; to H2; images 0; }")

    def test_not_a_morphism(self):
        with pytest.raises(NotAMorphism):
            build("heap H4 { cyclic 4; }\nmorphism m { kind heap; from H2; to H4; images 0 1; }")

    def test_diagrams(self, fixtures):
        assert isinstance(fixtures.lookup("S1", "sequence"), Sequence)
        assert isinstance(fixtures.lookup("F3", "fork"), Fork)
        with pytest.raises(UnresolvedReference):
            fixtures.lookup("S1", "fork")

    def test_sequence_needs_maps(self):
        with pytest.raises(StructureSyntaxError, match="needs a `maps`"):
            build("sequence S { }")
