import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trussalg.errors import (
    AxiomViolation,
    ElementNotInCarrier,
    EmptyHeap,
    NotAMorphism,
    NotASubheap,
)
from trussalg.heaps import (
    FiniteHeap,
    cyclic_group,
    direct_product,
    enumerate_congruences,
    heap_from_group,
    heap_quotient,
    pair_group_realization,
    retract,
    sub_heap_congruence,
    subheaps,
    translation,
    translation_group,
    transport,
    validate_heap,
    validate_heap_morphism,
)
from trussalg.iso import is_isomorphic, iso_search
from trussalg.morphisms import HeapMorphism


class TestFiniteHeap:
    def test_cyclic_heap(self, H4):
        a, b, c = np.meshgrid(range(4), range(4), range(4), indexing="ij")
        assert np.array_equal(H4.table, (a - b + c) % 4)
        assert H4.validate() is H4

    def test_empty_heap(self, empty_heap):
        assert empty_heap.is_empty
        assert empty_heap.validate() is empty_heap

    def test_projection_bracket_fails_malcev(self):
        table = [[[a for _ in range(2)] for _ in range(2)] for a in range(2)]
        with pytest.raises(AxiomViolation) as exc:
            validate_heap(table)
        assert exc.value.axiom == "H2"
        assert exc.value.witness == (0, 0, 1)

    def test_non_abelian_bracket(self):
        # x y^-1 z in S3 satisfies H1 and H2, but is not symmetric.
        perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
        index = {p: i for i, p in enumerate(perms)}

        def mul(p, q):
            return tuple(p[q[i]] for i in range(3))

        def inv(p):
            out = [0] * 3
            for i, x in enumerate(p):
                out[x] = i
            return tuple(out)

        table = [
            [[index[mul(mul(x, inv(y)), z)] for z in perms] for y in perms] for x in perms
        ]
        with pytest.raises(AxiomViolation) as exc:
            validate_heap(table)
        assert exc.value.axiom == "abelian"

    def test_heap_from_group(self):
        assert heap_from_group(cyclic_group(2)).bracket(0, 1, 0) == 1
        assert heap_from_group(cyclic_group(3)).bracket(1, 2, 2) == 1

    @given(st.integers(min_value=1, max_value=7))
    def test_cyclic_heaps_validate(self, n):
        heap = heap_from_group(cyclic_group(n))
        assert heap.validate() is heap


class TestRetracts:
    def test_retract_at_zero(self, H4):
        group = retract(H4, 0)
        assert np.array_equal(group.table, cyclic_group(4).table)

    def test_retract_at_two(self, H4):
        group = retract(H4, 2)
        assert group.zero == 2
        iso = iso_search(group, cyclic_group(4))
        assert iso(2) == 0

    def test_retracts_rebuild_heap(self, H4):
        V4 = heap_from_group(direct_product(cyclic_group(2), cyclic_group(2)))
        for heap in (H4, V4):
            for e in heap.elements():
                assert np.array_equal(heap_from_group(retract(heap, e)).table, heap.table)

    def test_singleton(self):
        heap = heap_from_group(cyclic_group(1))
        assert retract(heap, 0).size == 1

    def test_empty(self, empty_heap):
        with pytest.raises(EmptyHeap):
            retract(empty_heap, 0)


class TestTranslations:
    def test_identity(self, H4):
        for a in H4.elements():
            assert translation(H4, a, a).table == (0, 1, 2, 3)

    def test_shift(self, H4):
        assert translation(H4, 0, 1).table == (1, 2, 3, 0)

    @given(
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=3),
    )
    def test_composition(self, a, b, c):
        H4 = heap_from_group(cyclic_group(4))
        composite = translation(H4, b, c).compose(translation(H4, a, b))
        assert composite.table == translation(H4, a, c).table

    def test_not_in_carrier(self, H4):
        with pytest.raises(ElementNotInCarrier):
            translation(H4, 0, 7)

    def test_translation_group(self, H4, empty_heap):
        group = translation_group(H4)
        assert group.size == 4
        assert is_isomorphic(group, cyclic_group(4))
        assert translation_group(empty_heap).size == 1

    def test_transport(self, H4, H2):
        f = HeapMorphism(H4, H2, [0, 1, 0, 1])
        source, target = translation_group(H4), translation_group(H2)
        Tr = transport(f, source, target)
        assert Tr(source.index_of(0, 1)) == target.index_of(0, 1)

    def test_pair_group(self, H4):
        pairs, iso = pair_group_realization(H4)
        assert pairs.size == 4
        assert iso.is_bijective()

    def test_pair_group_of_empty_heap(self, empty_heap):
        with pytest.raises(EmptyHeap):
            pair_group_realization(empty_heap)


class TestQuotients:
    def test_even_quotient(self, H4, H2):
        quotient, projection = heap_quotient(H4, {0, 2})
        assert quotient.size == 2
        assert projection.table == (0, 1, 0, 1)
        assert is_isomorphic(quotient, H2)

    def test_full_quotient(self, H4):
        quotient, _ = heap_quotient(H4, set(H4.elements()))
        assert quotient.size == 1

    def test_not_a_subheap(self, H4):
        with pytest.raises(NotASubheap) as exc:
            heap_quotient(H4, {0, 1})
        assert exc.value.witness == (0, 1, 0)

    def test_congruences_are_subheap_relations(self, H4):
        V4 = heap_from_group(direct_product(cyclic_group(2), cyclic_group(2)))
        for heap in (H4, V4):
            for classes in enumerate_congruences(heap):
                for members in classes:
                    assert set(sub_heap_congruence(heap, members)) == set(classes)

    def test_subheaps(self, H4):
        found = set(subheaps(H4))
        assert frozenset({0, 2}) in found
        assert frozenset({0, 1}) not in found
        assert len([s for s in found if len(s) == 1]) == 4


class TestHeapMorphisms:
    def test_identity(self, H4):
        result = validate_heap_morphism(HeapMorphism.identity(H4))
        assert result["accepted"]
        assert len(result["retract_pairs"]) == 4

    def test_reduction(self, H4, H2):
        result = validate_heap_morphism(HeapMorphism(H4, H2, [0, 1, 0, 1], validate=False))
        assert result["retract_pairs"][1] == (1, 1)

    def test_square(self, H4):
        with pytest.raises(NotAMorphism) as exc:
            HeapMorphism(H4, H4, [x * x % 4 for x in range(4)])
        assert exc.value.witness == (0, 1, 0)

    def test_empty_heap_is_initial(self, empty_heap, H4):
        f = HeapMorphism(empty_heap, H4, [])
        assert validate_heap_morphism(f)["retract_pairs"] == []


def test_labels_survive_bracket_tables():
    heap = FiniteHeap(heap_from_group(cyclic_group(2)).table, labels=["a", "b"], name="L")
    assert heap.index("b") == 1
    assert heap.label(heap.bracket(0, 1, 0)) == "b"
