import itertools
import math

import numpy as np
from interface_meta import override

from trussalg.errors import (
    AxiomViolation,
    ElementNotInCarrier,
    EmptyHeap,
    NotASubheap,
    VerificationFailure,
)
from trussalg.morphisms import GroupMorphism, HeapMorphism
from trussalg.structure import Operation, Structure, integer_window
from trussalg.utils.debug import logger, logging_scope


def first_violation(mask):
    """
    Return the first index (in lexicographic order) at which the boolean
    array `mask` is `False`, as a tuple of python ints, or `None`.
    """
    bad = np.argwhere(~np.asarray(mask, dtype=bool))
    if len(bad) == 0:
        return None
    return tuple(int(i) for i in bad[0])


def repeated(add, neg, zero, k, x):
    """The multiple `k·x` by double-and-add, for any abelian group law."""
    if k < 0:
        k, x = -k, neg(x)
    out = zero
    while k:
        if k & 1:
            out = add(out, x)
        x = add(x, x)
        k >>= 1
    return out


def tuple_label(parts):
    return "(" + ",".join(str(p) for p in parts) + ")"


def class_label(structure, members):
    return "<" + ",".join(str(structure.label(m)) for m in sorted(members)) + ">"


# Groups


class AbelianGroup(Structure):
    """
    An abstract abelian group, written additively.

    Implementations provide `add`, `neg` and `zero`; subtraction, multiples
    and the associated heap bracket `x - y + z` are derived here.
    """

    KIND = Structure.Kind.GROUP

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def bracket(self, x, y, z):
        return self.add(self.sub(x, y), z)

    def multiple(self, k, x):
        return repeated(self.add, self.neg, self.zero, k, x)

    def sum(self, items):
        out = self.zero
        for item in items:
            out = self.add(out, item)
        return out

    @property
    def exponent(self):
        """int: The exponent of the torsion part (1 for torsion-free groups)."""
        return 1

    @property
    def window_exponent(self):
        return self.exponent

    @override
    def operations(self):
        return [Operation("add", 2, self.add)]

    @override
    def constants(self):
        return {"zero": self.zero}


class FiniteGroup(AbelianGroup):
    """
    A finite abelian group given by its addition table.

    Attributes:
        table (np.ndarray): The `n x n` addition table over ids `0..n-1`.
        neg_table (np.ndarray): The negation table.
    """

    KEYWORDS = ["group"]

    def __init__(self, add, zero, neg=None, labels=None, name=None, validate=True):
        Structure.__init__(self, name=name, labels=labels)
        self.table = np.asarray(add, dtype=np.int64).reshape(len(add), len(add))
        self._zero = int(zero)
        if neg is None:
            neg = [int(np.argmax(row == self._zero)) for row in self.table]
        self.neg_table = np.asarray(neg, dtype=np.int64)
        self._add = self.table.tolist()
        self._neg = self.neg_table.tolist()
        self._exponent = None
        if validate:
            self.validate()

    @property
    def size(self):
        return self.table.shape[0]

    @property
    def zero(self):
        return self._zero

    def add(self, x, y):
        return self._add[x][y]

    def neg(self, x):
        return self._neg[x]

    def multiple(self, k, x):
        return repeated(self.add, self.neg, self._zero, k % self.exponent, x)

    @property
    def exponent(self):
        if self._exponent is None:
            orders = []
            for x in range(self.size):
                y, order = x, 1
                while y != self._zero:
                    y, order = self._add[y][x], order + 1
                orders.append(order)
            self._exponent = math.lcm(*orders) if orders else 1
        return self._exponent

    def order(self, x):
        y, order = x, 1
        while y != self._zero:
            y, order = self._add[y][x], order + 1
        return order

    def validate(self):
        """
        Exhaustively check the abelian group axioms.

        Raises:
            AxiomViolation: With the name of the failing axiom and a witness.
        """
        n = self.size
        if n == 0:
            raise AxiomViolation("nonempty", (), self.name)
        if self.table.min(initial=0) < 0 or self.table.max(initial=0) >= n:
            raise AxiomViolation("closure", first_violation((self.table >= 0) & (self.table < n)), self.name)
        if not 0 <= self._zero < n:
            raise ElementNotInCarrier(self._zero, self.name)
        ids = np.arange(n)
        a = self.table
        checks = [
            ("associativity", a[a[:, :, None], ids[None, None, :]] == a[ids[:, None, None], a[None, :, :]]),
            ("identity", (a[self._zero, :] == ids) & (a[:, self._zero] == ids)),
            ("inverse", a[ids, self.neg_table] == self._zero),
            ("commutativity", a == a.T),
        ]
        for axiom, mask in checks:
            witness = first_violation(mask)
            if witness is not None:
                raise AxiomViolation(axiom, tuple(self.label(i) for i in witness), self.name)
        return self

    def opposite(self):
        """The opposite group (with the transposed addition table)."""
        return FiniteGroup(
            self.table.T, self._zero, self.neg_table, labels=self._labels, name=f"{self.name}^op"
        )

    def describe(self):
        return f"group {self.name or ''} of order {self.size} and exponent {self.exponent}"


def cyclic_group(n, name=None):
    """The cyclic group Z/n, labelled by `0..n-1`."""
    if n < 1:
        raise ValueError("Cyclic groups need a positive order.")
    ids = np.arange(n)
    return FiniteGroup(
        (ids[:, None] + ids[None, :]) % n, 0, (-ids) % n, name=name or f"Z{n}", validate=False
    )


def direct_product(*groups, name=None):
    """
    The direct product of finite groups, with ids in lexicographic order and
    labels of the form `(a,b,...)`.
    """
    shape = [g.size for g in groups]
    tuples = list(itertools.product(*[range(s) for s in shape]))
    index = {t: i for i, t in enumerate(tuples)}
    table = [
        [index[tuple(g.add(x, y) for g, x, y in zip(groups, s, t))] for t in tuples]
        for s in tuples
    ]
    return FiniteGroup(
        table,
        index[tuple(g.zero for g in groups)],
        labels=[tuple_label(g.label(x) for g, x in zip(groups, t)) for t in tuples],
        name=name or "x".join(g.name or "?" for g in groups),
        validate=False,
    )


class IntegerGroup(AbelianGroup):
    """The additive group of integers."""

    FINITE = False

    def __init__(self, name="Z"):
        Structure.__init__(self, name=name)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    @property
    def zero(self):
        return 0

    def multiple(self, k, x):
        return k * x

    def elements(self, window=None):
        return list(integer_window(1, window))

    def _contains(self, x):
        return isinstance(x, int) and not isinstance(x, bool)

    def describe(self):
        return "Z"


class DirectSum(AbelianGroup):
    """
    The direct sum of (possibly symbolic) abelian groups, with tuples as
    elements and componentwise operations.
    """

    FINITE = False

    def __init__(self, *summands, name=None):
        Structure.__init__(self, name=name or " + ".join(s.name or "?" for s in summands))
        self.summands = summands

    def add(self, x, y):
        return tuple(g.add(a, b) for g, a, b in zip(self.summands, x, y))

    def neg(self, x):
        return tuple(g.neg(a) for g, a in zip(self.summands, x))

    @property
    def zero(self):
        return tuple(g.zero for g in self.summands)

    def multiple(self, k, x):
        return tuple(g.multiple(k, a) for g, a in zip(self.summands, x))

    @property
    def exponent(self):
        return math.lcm(*[s.window_exponent for s in self.summands]) if self.summands else 1

    def elements(self, window=None):
        parts = [
            s.elements() if s.FINITE else list(integer_window(self.exponent, window))
            if isinstance(s, IntegerGroup) else s.elements(window)
            for s in self.summands
        ]
        return list(itertools.product(*parts))

    def _contains(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.summands)
            and all(a in s for s, a in zip(self.summands, x))
        )

    def describe(self):
        return " (+) ".join(s.describe() for s in self.summands)


def direct_sum(*groups, name=None):
    """The direct sum of groups: a `FiniteGroup` when all summands are finite."""
    if all(g.FINITE for g in groups):
        return direct_product(*groups, name=name)
    return DirectSum(*groups, name=name)


class RetractGroup(AbelianGroup):
    """The retract G(H;e) of a symbolic heap: x + y = [x,e,y]."""

    FINITE = False

    def __init__(self, heap, e, name=None):
        Structure.__init__(self, name=name or f"G({heap.name};{e})")
        self.heap = heap
        self._zero = e

    def add(self, x, y):
        return self.heap.bracket(x, self._zero, y)

    def neg(self, x):
        return self.heap.bracket(self._zero, x, self._zero)

    @property
    def zero(self):
        return self._zero

    @property
    def exponent(self):
        return self.heap.window_exponent

    def elements(self, window=None):
        return self.heap.elements(window)

    def _contains(self, x):
        return x in self.heap


# Heaps


class Heap(Structure):
    """
    An abstract abelian heap: a set with a ternary bracket satisfying
    associativity, the Mal'cev identities and symmetry in the outer arguments.
    """

    KIND = Structure.Kind.HEAP

    def bracket(self, a, b, c):
        raise NotImplementedError

    @override
    def operations(self):
        return [Operation("bracket", 3, self.bracket)]


class FiniteHeap(Heap):
    """
    A finite abelian heap given by its bracket table.

    Non-empty heaps also carry the retract group at their basepoint (id 0),
    which is cross-checked against the bracket during validation.

    Attributes:
        table (np.ndarray): The `n x n x n` bracket table.
        basepoint (int, None): The stored basepoint (`None` when empty).
    """

    KEYWORDS = ["heap"]

    def __init__(self, bracket, labels=None, name=None, validate=True):
        Structure.__init__(self, name=name, labels=labels)
        table = np.asarray(bracket, dtype=np.int64)
        n = table.shape[0] if table.ndim else 0
        self.table = table.reshape(n, n, n)
        self._b = self.table.tolist()
        self.basepoint = 0 if n else None
        self._group = None
        if validate:
            self.validate()

    @property
    def size(self):
        return self.table.shape[0]

    def bracket(self, a, b, c):
        return self._b[a][b][c]

    @property
    def group(self):
        """FiniteGroup: The retract at the stored basepoint."""
        if self._group is None:
            self._group = retract(self, self.basepoint)
        return self._group

    @property
    def window_exponent(self):
        return self.group.exponent if self.size else 1

    def validate(self):
        """
        Exhaustively check H1 (associativity), H2 (the Mal'cev identities)
        and abelianness, then cross-check the stored retract group.

        Raises:
            AxiomViolation: With the name of the failing axiom and a witness.
        """
        n = self.size
        b = self.table
        if n == 0:
            return self
        if b.min() < 0 or b.max() >= n:
            witness = first_violation((b >= 0) & (b < n))
            raise AxiomViolation("closure", witness, self.name)
        i = np.arange(n)
        a5, b5 = i.reshape(n, 1, 1, 1, 1), i.reshape(1, n, 1, 1, 1)
        d5, e5 = i.reshape(1, 1, 1, n, 1), i.reshape(1, 1, 1, 1, n)
        lhs = b[a5, b5, b[None, None, :, :, :]]
        rhs = b[b[:, :, :, None, None], d5, e5]
        witness = first_violation(lhs == rhs)
        if witness is not None:
            raise AxiomViolation("H1", self._labelled(witness), self.name)

        # [a,b,b] = a, indexed by (a,b); then [b,b,a] = a, indexed by (b,a).
        right = b[i[:, None], i[None, :], i[None, :]] == i[:, None]
        witness = first_violation(right)
        if witness is not None:
            x, y = witness
            raise AxiomViolation("H2", self._labelled((x, y, y)), self.name)
        left = b[i[:, None], i[:, None], i[None, :]] == i[None, :]
        witness = first_violation(left)
        if witness is not None:
            y, x = witness
            raise AxiomViolation("H2", self._labelled((y, y, x)), self.name)

        witness = first_violation(b == b.transpose(2, 1, 0))
        if witness is not None:
            raise AxiomViolation("abelian", self._labelled(witness), self.name)

        if not np.array_equal(heap_from_group(self.group).table, b):
            raise AxiomViolation("retract", (self.label(self.basepoint),), self.name)
        logger.debug(f"Validated heap `{self.name}` on {n} elements.")
        return self

    def _labelled(self, ids):
        return tuple(self.label(x) for x in ids)

    def describe(self):
        return f"heap {self.name or ''} on {self.size} elements"


class GroupHeap(Heap):
    """The heap H(G) of a symbolic abelian group: [x,y,z] = x - y + z."""

    FINITE = False

    def __init__(self, group, name=None):
        Structure.__init__(self, name=name or f"H({group.name})")
        self.group = group

    def bracket(self, a, b, c):
        return self.group.bracket(a, b, c)

    @property
    def window_exponent(self):
        return self.group.window_exponent

    def elements(self, window=None):
        return self.group.elements(window)

    def _contains(self, x):
        return x in self.group

    def describe(self):
        return f"H({self.group.describe()})"


def validate_heap(bracket, labels=None, name=None):
    """Build and exhaustively validate a finite heap from its bracket table."""
    return FiniteHeap(bracket, labels=labels, name=name)


def heap_from_group(group, name=None):
    """
    The heap H(G) with bracket `x - y + z`.

    Returns:
        FiniteHeap, GroupHeap: A finite heap for finite groups.
    """
    if not group.FINITE:
        return GroupHeap(group, name=name)
    add = group.table
    sub = add[:, group.neg_table]
    n = group.size
    table = add[sub[:, :, None], np.arange(n)[None, None, :]]
    heap = FiniteHeap(table, labels=group._labels, name=name or f"H({group.name})", validate=False)
    if group.zero == 0:
        heap._group = group
    return heap


def retract(heap, e):
    """
    The retract group G(H;e), with `x + y = [x,e,y]` and zero `e`.

    Raises:
        EmptyHeap: If `heap` is empty.
        ElementNotInCarrier: If `e` is not an element of `heap`.
    """
    if heap.is_empty:
        raise EmptyHeap(f"The empty heap `{heap.name}` has no retracts.")
    heap.require(e)
    if not heap.FINITE:
        if isinstance(heap, GroupHeap) and heap.group.zero == e:
            return heap.group
        return RetractGroup(heap, e)
    b = heap.table
    return FiniteGroup(
        b[:, e, :],
        e,
        b[e, :, e],
        labels=heap._labels,
        name=f"G({heap.name};{heap.label(e)})",
        validate=False,
    )


def heap_multiple(heap, e, k, x):
    """The multiple `k·x` computed in the retract G(H;e)."""
    return repeated(
        lambda u, v: heap.bracket(u, e, v), lambda u: heap.bracket(e, u, e), e, k, x
    )


def translation(heap, a, b):
    """
    The translation automorphism `x -> [x,a,b]`.

    Raises:
        ElementNotInCarrier: If `a` or `b` are not elements of `heap`.
    """
    heap.require(a, b)
    return HeapMorphism(
        heap,
        heap,
        lambda x: heap.bracket(x, a, b),
        name=f"tau[{heap.label(a)},{heap.label(b)}]",
    )


class TranslationGroup(FiniteGroup):
    """
    The group Tr(H) of translations of a finite heap, under composition.

    Attributes:
        heap (FiniteHeap): The heap being translated.
        maps (list<tuple>): The distinct translations, as image tables.
        representatives (list<tuple, None>): A pair `(a, b)` per translation
            such that it equals `tau_a^b` (`None` for the identity of the
            empty heap).
    """

    def __init__(self, heap):
        self.heap = heap
        n = heap.size
        if n == 0:
            maps, reps = [()], [None]
        else:
            maps, reps, seen = [], [], {}
            for a in range(n):
                for b in range(n):
                    image = tuple(heap.table[:, a, b].tolist())
                    if image not in seen:
                        seen[image] = len(maps)
                        maps.append(image)
                        reps.append((a, b))
        self.maps = maps
        self.representatives = reps
        self._map_index = {m: i for i, m in enumerate(maps)}
        table = [[self._map_index[tuple(s[x] for x in r)] for r in maps] for s in maps]
        identity = self._map_index[tuple(range(n))]
        FiniteGroup.__init__(
            self,
            table,
            identity,
            labels=[
                "id" if r is None else f"tau[{heap.label(r[0])},{heap.label(r[1])}]" for r in reps
            ],
            name=f"Tr({heap.name})",
        )

    def index_of(self, a, b):
        """The id of the translation `tau_a^b`."""
        return self._map_index[tuple(self.heap.table[:, a, b].tolist())]


def translation_group(heap):
    """The translation group Tr(H) of a finite heap (trivial for the empty heap)."""
    return TranslationGroup(heap)


def transport(f, source=None, target=None):
    """
    The group homomorphism Tr(f): Tr(H) -> Tr(H'), tau_a^b -> tau_{f(a)}^{f(b)}.

    Args:
        f (HeapMorphism): A morphism of finite heaps.
        source, target (TranslationGroup, None): Precomputed translation groups.

    Raises:
        VerificationFailure: If the assignment is not well defined.
    """
    source = source or translation_group(f.dom)
    target = target or translation_group(f.cod)
    table = []
    for rep in source.representatives:
        if rep is None:
            table.append(target.zero)
        else:
            table.append(target.index_of(f(rep[0]), f(rep[1])))
    n = f.dom.size
    for a in range(n):
        for b in range(n):
            if table[source.index_of(a, b)] != target.index_of(f(a), f(b)):
                raise VerificationFailure("Tr(f) well defined", (f.dom.label(a), f.dom.label(b)))
    return GroupMorphism(source, target, table, name=f"Tr({f.name or 'f'})")


def pair_group_realization(heap):
    """
    Realize Tr(H)^op as the group of classes of pairs (x,y), where
    `(x,y) ~ (x',y')` iff `y' = [x',x,y]`.

    Each class has a unique representative `(o,c)` with `o` the basepoint, and
    `c = [o,x,y]`; the product `(x,y)(x',y') = (x,[y,x',y'])` becomes
    `c1.c2 = [c1,o,c2]`.

    Returns:
        tuple<FiniteGroup, GroupMorphism>: The pair group, and the verified
            isomorphism `tau_x^y -> class(x,y)` out of Tr(H)^op.

    Raises:
        EmptyHeap: If `heap` is empty.
    """
    if heap.is_empty:
        raise EmptyHeap("The pair group of the empty heap is undefined.")
    o = heap.basepoint
    n = heap.size
    b = heap.table
    pairs = FiniteGroup(
        b[:, o, :],
        o,
        b[o, :, o],
        labels=[tuple_label((heap.label(o), heap.label(c))) for c in range(n)],
        name=f"P({heap.name})",
    )
    translations = translation_group(heap).opposite()
    source = translation_group(heap)
    iso = GroupMorphism(
        translations,
        pairs,
        [b[o, x, y] for x, y in source.representatives],
        name="tau -> class",
    )
    if not iso.is_bijective():
        raise VerificationFailure("pair group isomorphism", iso.table)
    return pairs, iso


# Sub-heaps, congruences and quotients


def closure_violation(heap, subset):
    """The first triple of `subset` whose bracket leaves `subset`, or `None`."""
    members = sorted(subset)
    inside = set(members)
    for triple in itertools.product(members, repeat=3):
        if heap.bracket(*triple) not in inside:
            return triple
    return None


def is_subheap(heap, subset):
    return closure_violation(heap, subset) is None


def sub_heap_congruence(heap, subset):
    """
    The classes of the sub-heap relation: `a ~ b` iff `[a,b,s]` is in `S` for
    every `s` in `S`.

    Returns:
        list<frozenset>: The classes, ordered by their smallest member.

    Raises:
        NotASubheap: If `subset` is empty or not closed under the bracket.
    """
    subset = sorted(set(subset))
    if not subset:
        raise NotASubheap("A sub-heap relation needs a non-empty sub-heap.", ())
    witness = closure_violation(heap, subset)
    if witness is not None:
        raise NotASubheap(
            f"{[heap.label(s) for s in subset]} is not closed under the bracket: "
            f"[{', '.join(str(heap.label(x)) for x in witness)}] = {heap.label(heap.bracket(*witness))}.",
            tuple(heap.label(x) for x in witness),
        )
    related = np.isin(heap.table[:, :, subset], subset).all(axis=2)
    classes, seen = [], set()
    for a in range(heap.size):
        if a in seen:
            continue
        members = frozenset(int(x) for x in np.flatnonzero(related[a]))
        seen |= members
        classes.append(members)
    return classes


def class_index(classes, n):
    """list<int>: The class id of each element."""
    out = [0] * n
    for i, members in enumerate(classes):
        for m in members:
            out[m] = i
    return out


def is_compatible(table, class_of):
    """Whether a partition (given by `class_of`) is compatible with a table."""
    table = np.asarray(table)
    class_of = np.asarray(class_of)
    k = int(class_of.max()) + 1 if len(class_of) else 0
    reps = np.array([int(np.argmax(class_of == c)) for c in range(k)], dtype=np.int64)
    quotient = class_of[table[np.ix_(*[reps] * table.ndim)]]
    return bool(np.array_equal(class_of[table], quotient[np.ix_(*[class_of] * table.ndim)]))


def quotient_table(table, classes, n):
    """
    The table induced on classes, or `None` when the partition is not
    compatible with `table`.
    """
    class_of = class_index(classes, n)
    if not is_compatible(table, class_of):
        return None
    reps = np.array([min(c) for c in classes], dtype=np.int64)
    return np.asarray(class_of)[np.asarray(table)[np.ix_(*[reps] * np.asarray(table).ndim)]]


@logging_scope("Heap quotient")
def heap_quotient(heap, subset, name=None):
    """
    The quotient H/S by the sub-heap relation of S.

    Returns:
        tuple<FiniteHeap, HeapMorphism>: The quotient and its projection.

    Raises:
        NotASubheap: If `subset` is empty or not a sub-heap.
    """
    classes = sub_heap_congruence(heap, subset)
    table = quotient_table(heap.table, classes, heap.size)
    if table is None:
        raise VerificationFailure("sub-heap relation is a congruence", tuple(sorted(subset)))
    quotient = FiniteHeap(
        table,
        labels=[class_label(heap, c) for c in classes],
        name=name or f"{heap.name}/{class_label(heap, subset)}",
    )
    projection = HeapMorphism(heap, quotient, class_index(classes, heap.size), name="projection")
    return quotient, projection


def subheaps(heap):
    """Iterate over the non-empty sub-heaps of a finite heap, as frozensets."""
    n = heap.size
    for mask in range(1, 2**n):
        subset = [i for i in range(n) if mask >> i & 1]
        if np.isin(heap.table[np.ix_(subset, subset, subset)], subset).all():
            yield frozenset(subset)


def set_partitions(n):
    """Iterate over the partitions of `range(n)` as class-id lists."""

    def extend(prefix, k):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(k + 1):
            yield from extend(prefix + [c], max(k, c + 1))

    if n == 0:
        yield []
        return
    yield from extend([0], 1)


def enumerate_congruences(heap, *tables):
    """
    Enumerate the congruences of a finite heap (compatible with any further
    `tables` of the same carrier), as lists of classes.
    """
    n = heap.size
    for class_of in set_partitions(n):
        if all(is_compatible(t, class_of) for t in (heap.table,) + tables):
            k = max(class_of) + 1
            yield [frozenset(i for i in range(n) if class_of[i] == c) for c in range(k)]


def validate_heap_morphism(f):
    """
    Validate a heap morphism exhaustively and report, for each `e` of the
    domain, that `f` is a group homomorphism G(H;e) -> G(H';f(e)).

    Returns:
        dict: `accepted` and the list of `retract_pairs` (as labels).

    Raises:
        NotAMorphism: With the first violating triple.
    """
    f.validate()
    pairs = []
    if not f.dom.is_empty:
        for e in f.dom.elements():
            GroupMorphism(retract(f.dom, e), retract(f.cod, f(e)), f.table)
            pairs.append((f.dom.label(e), f.cod.label(f(e))))
    return {"accepted": True, "retract_pairs": pairs}
