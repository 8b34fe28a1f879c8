import numpy as np
from interface_meta import override

from trussalg.errors import AxiomViolation, NotATrussMorphism, VerificationFailure
from trussalg.heaps import (
    DirectSum,
    FiniteGroup,
    FiniteHeap,
    GroupHeap,
    IntegerGroup,
    cyclic_group,
    first_violation,
    heap_from_group,
    retract,
)
from trussalg.morphisms import (
    RingMorphism,
    TrussMorphism,
    UnitalRingMorphism,
    UnitalTrussMorphism,
)
from trussalg.structure import Operation, Structure, check_law, integer_window
from trussalg.utils.debug import logger, logging_scope


# Rings


class Ring(Structure):
    """
    An abstract (not necessarily unital) ring, over an additive group.

    Attributes:
        group (AbelianGroup): The additive group.
        unit (object, None): The multiplicative unit, if any.
    """

    KIND = Structure.Kind.RING

    def mul(self, x, y):
        raise NotImplementedError

    @property
    def unit(self):
        return self._unit

    @property
    def is_unital(self):
        return self._unit is not None

    @property
    def zero(self):
        return self.group.zero

    def add(self, x, y):
        return self.group.add(x, y)

    def neg(self, x):
        return self.group.neg(x)

    def sub(self, x, y):
        return self.group.sub(x, y)

    @property
    def window_exponent(self):
        return self.group.window_exponent

    @override
    def operations(self):
        return [Operation("add", 2, self.add), Operation("mul", 2, self.mul)]

    @override
    def constants(self):
        return {"zero": self.zero, "unit": self.unit}

    def validate(self):
        """
        Check associativity, two-sided distributivity and the unit laws,
        exhaustively for finite rings and on the integer window otherwise.

        Raises:
            AxiomViolation: With the failing axiom and a witness.
        """
        xs = self.elements()
        exhaustive = self.FINITE
        add, mul = self.add, self.mul
        check_law(
            self._axiom,
            "associativity",
            lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)),
            xs, xs, xs, structure=self, exhaustive=exhaustive,
        )
        check_law(
            self._axiom,
            "left distributivity",
            lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
            xs, xs, xs, structure=self, exhaustive=exhaustive,
        )
        check_law(
            self._axiom,
            "right distributivity",
            lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
            xs, xs, xs, structure=self, exhaustive=exhaustive,
        )
        if self.unit is not None:
            u = self.unit
            check_law(
                self._axiom,
                "unit",
                lambda a: mul(u, a) == a and mul(a, u) == a,
                xs, structure=self, exhaustive=exhaustive,
            )
        return self

    def _axiom(self, name, witness):
        return AxiomViolation(name, witness, self.name)


class FiniteRing(Ring):
    """
    A finite ring: a `FiniteGroup` together with a multiplication table.
    """

    KEYWORDS = ["ring"]

    def __init__(self, group, mul, unit=None, name=None, validate=True):
        Structure.__init__(self, name=name, labels=group._labels)
        self.group = group
        self.table = np.asarray(mul, dtype=np.int64).reshape(group.size, group.size)
        self._m = self.table.tolist()
        self._unit = None if unit is None else int(unit)
        if validate:
            self.validate()

    @property
    def size(self):
        return self.group.size

    def mul(self, x, y):
        return self._m[x][y]

    def describe(self):
        return f"ring {self.name or ''} of order {self.size}" + (" (unital)" if self.is_unital else "")


class SymbolicRing(Ring):
    """
    A ring on a symbolic group (finite part x Z^k), with a closed-form
    product.

    Attributes:
        descriptor (str): A human readable description of the product.
    """

    FINITE = False

    def __init__(self, group, mul, unit=None, descriptor=None, name=None):
        Structure.__init__(self, name=name)
        self.group = group
        self._mul = mul
        self._unit = unit
        self.descriptor = descriptor

    def mul(self, x, y):
        return self._mul(x, y)

    def elements(self, window=None):
        return self.group.elements(window)

    def _contains(self, x):
        return x in self.group

    def describe(self):
        return f"{self.name or 'ring'} on {self.group.describe()}: {self.descriptor or 'closed form'}"


def zero_ring(name="0"):
    return FiniteRing(FiniteGroup([[0]], 0), [[0]], name=name, validate=False)


def cyclic_ring(n, name=None):
    """The ring Z/n, labelled by `0..n-1`."""
    group = cyclic_group(n)
    ids = np.arange(n)
    return FiniteRing(
        group, (ids[:, None] * ids[None, :]) % n, unit=1 % n, name=name or f"Z{n}", validate=False
    )


# Trusses


class Truss(Structure):
    """
    An abstract truss: an abelian heap with an associative multiplication
    distributing over the bracket on both sides.

    Attributes:
        heap (Heap): The underlying heap.
        unit (object, None): The multiplicative unit, if any.
        ring (Ring, None): The ring this truss was obtained from, if any.
    """

    KIND = Structure.Kind.TRUSS

    ring = None

    def mul(self, x, y):
        raise NotImplementedError

    def bracket(self, a, b, c):
        return self.heap.bracket(a, b, c)

    @property
    def unit(self):
        return self._unit

    @property
    def is_unital(self):
        return self._unit is not None

    @property
    def window_exponent(self):
        return self.heap.window_exponent

    @override
    def operations(self):
        return [Operation("bracket", 3, self.bracket), Operation("mul", 2, self.mul)]

    @override
    def constants(self):
        return {"unit": self.unit}

    def default_basepoint(self):
        """The unit when there is one, the element with the smallest id otherwise."""
        if self.unit is not None:
            return self.unit
        return self.elements()[0]


class FiniteTruss(Truss):
    """
    A finite truss given by a `FiniteHeap` and a multiplication table.

    Attributes:
        table (np.ndarray): The multiplication table.
    """

    KEYWORDS = ["truss"]

    def __init__(self, heap, mul, unit=None, name=None, ring=None, validate=True):
        Structure.__init__(self, name=name, labels=heap._labels)
        self.heap = heap
        n = heap.size
        self.table = np.asarray(mul, dtype=np.int64).reshape(n, n)
        self._m = self.table.tolist()
        self._unit = None if unit is None else int(unit)
        self.ring = ring
        if validate:
            self.validate()

    @property
    def size(self):
        return self.heap.size

    def mul(self, x, y):
        return self._m[x][y]

    def default_basepoint(self):
        if self.unit is not None:
            return self.unit
        return 0

    def validate(self):
        """
        Exhaustively check associativity, left (T1) and right (T2)
        distributivity over the bracket, and the unit laws.

        Raises:
            AxiomViolation: With the failing axiom and a witness.
        """
        n = self.size
        if n == 0:
            return self
        m, b = self.table, self.heap.table
        if m.min() < 0 or m.max() >= n:
            raise AxiomViolation("closure", self._labelled(first_violation((m >= 0) & (m < n))), self.name)
        i = np.arange(n)
        t4 = i.reshape(n, 1, 1, 1)
        checks = [
            ("associativity", m[m[:, :, None], i[None, None, :]] == m[i[:, None, None], m[None, :, :]]),
            (
                "T1",
                m[t4, b[None, :, :, :]]
                == b[m[:, :, None, None], m[:, None, :, None], m[:, None, None, :]],
            ),
            (
                "T2",
                m[b[:, :, :, None], i.reshape(1, 1, 1, n)]
                == b[m[:, None, None, :], m[None, :, None, :], m[None, None, :, :]],
            ),
        ]
        if self.unit is not None:
            checks.append(("unit", (m[self.unit, :] == i) & (m[:, self.unit] == i)))
        for axiom, mask in checks:
            witness = first_violation(mask)
            if witness is not None:
                raise AxiomViolation(axiom, self._labelled(witness), self.name)
        logger.debug(f"Validated truss `{self.name}` on {n} elements.")
        return self

    def _labelled(self, ids):
        return tuple(self.label(x) for x in ids)

    def describe(self):
        return f"truss {self.name or ''} on {self.size} elements" + (
            f" with unit {self.label(self.unit)}" if self.is_unital else ""
        )


class SymbolicTruss(Truss):
    """A truss on a symbolic heap, with a closed-form product."""

    FINITE = False

    def __init__(self, heap, mul, unit=None, descriptor=None, name=None, ring=None):
        Structure.__init__(self, name=name)
        self.heap = heap
        self._mul = mul
        self._unit = unit
        self.descriptor = descriptor
        self.ring = ring

    def mul(self, x, y):
        return self._mul(x, y)

    def elements(self, window=None):
        return self.heap.elements(window)

    def _contains(self, x):
        return x in self.heap

    def validate(self):
        """
        Check the truss axioms on the integer window (the heap is a group
        heap, hence valid by construction).

        Raises:
            AxiomViolation: With the failing axiom and a witness.
        """
        xs = self.elements()
        mul, br = self.mul, self.bracket

        def fail(name, witness):
            return AxiomViolation(name, witness, self.name)

        check_law(fail, "associativity", lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c)), xs, xs, xs)
        check_law(
            fail,
            "T1",
            lambda t, a, b, c: mul(t, br(a, b, c)) == br(mul(t, a), mul(t, b), mul(t, c)),
            xs, xs, xs, xs,
        )
        check_law(
            fail,
            "T2",
            lambda a, b, c, t: mul(br(a, b, c), t) == br(mul(a, t), mul(b, t), mul(c, t)),
            xs, xs, xs, xs,
        )
        if self.unit is not None:
            u = self.unit
            check_law(fail, "unit", lambda a: mul(u, a) == a and mul(a, u) == a, xs)
        return self

    def describe(self):
        return f"{self.name or 'truss'} on {self.heap.describe()}: {self.descriptor or 'closed form'}"


def validate_truss(heap, mul, unit=None, name=None):
    """Build and exhaustively validate a finite truss."""
    return FiniteTruss(heap, mul, unit=unit, name=name)


def truss_from_ring(ring, name=None):
    """
    The truss T(R) with bracket `x - y + z` and the multiplication of `ring`.
    The unit, if any, is carried over.
    """
    name = name or f"T({ring.name})"
    if ring.FINITE:
        return FiniteTruss(
            heap_from_group(ring.group), ring.table, unit=ring.unit, name=name, ring=ring, validate=False
        )
    return SymbolicTruss(
        GroupHeap(ring.group),
        ring.mul,
        unit=ring.unit,
        descriptor=ring.descriptor,
        name=name,
        ring=ring,
    )


def validate_truss_morphism(f, unital=False):
    """
    Validate `f` as a (unital) truss morphism.

    Raises:
        NotATrussMorphism: With the failing operation and witness.
    """
    cls = UnitalTrussMorphism if unital else TrussMorphism
    return cls(f.dom, f.cod, f.table if f.table is not None else f, name=f.name)


class ProgressionHeap(GroupHeap):
    """The integers congruent to `k` modulo `n`, under `a - b + c`."""

    def __init__(self, n, k):
        GroupHeap.__init__(self, IntegerGroup(), name=f"{n}Z+{k}")
        self.modulus = n
        self.offset = k

    def elements(self, window=None):
        return [self.offset + self.modulus * z for z in integer_window(1, window)]

    def _contains(self, x):
        return isinstance(x, int) and (x - self.offset) % self.modulus == 0


def progression_truss(n, k, name=None):
    """
    The truss nZ + k of integers congruent to `k` modulo `n`, under the
    integer bracket `a - b + c` and product. Elements are the integers
    themselves.

    Raises:
        ValueError: Unless `k^2 = k` modulo `n`.
    """
    if n <= 0 or (k * k - k) % n:
        raise ValueError(f"{n}Z+{k} is not closed under multiplication.")
    return SymbolicTruss(
        ProgressionHeap(n, k),
        lambda a, b: a * b,
        unit=1 if (k - 1) % n == 0 else None,
        descriptor="integer product",
        name=name or f"Z({n},{k})",
    )


# The universal ring R(T)


class UniversalRing(SymbolicRing):
    """
    The universal ring R(T) of a truss, on G(T;o) x Z, with product

        (t,m)(s,n) = (ts + (n-1)to + (m-1)os + (m-1)(n-1)o^2, mn)

    (all sums and multiples taken in the retract G(T;o)). The truss embeds
    by `t -> (t,1)`, and every element decomposes as `iota(t) + (n-1)iota(o)`.

    Attributes:
        truss (Truss): The truss.
        basepoint: The chosen basepoint `o`.
        retract (AbelianGroup): The retract G(T;o).
    """

    def __init__(self, truss, o, name=None):
        self.truss = truss
        self.basepoint = o
        self.retract = retract(truss.heap, o)
        G = self.retract
        to_o = {}
        oo = truss.mul(o, o)

        def mul(x, y):
            (t, m), (s, n) = x, y
            if t not in to_o:
                to_o[t] = truss.mul(t, o)
            return (
                G.sum(
                    [
                        truss.mul(t, s),
                        G.multiple(n - 1, to_o[t]),
                        G.multiple(m - 1, truss.mul(o, s)),
                        G.multiple((m - 1) * (n - 1), oo),
                    ]
                ),
                m * n,
            )

        SymbolicRing.__init__(
            self,
            DirectSum(G, IntegerGroup()),
            mul,
            unit=(truss.unit, 1) if truss.is_unital else None,
            descriptor="(t,m)(s,n) = (ts + (n-1)to + (m-1)os + (m-1)(n-1)o^2, mn)",
            name=name or f"R({truss.name})",
        )

    def validate(self):
        """
        Certify the ring axioms.

        Over a finite truss the group coordinate of a sum or a product only
        sees the integer coordinates modulo the exponent `k` of G(T;o), so
        both operations are tabulated on the classes `(t, m mod k)` and every
        triple of classes is checked at once, together with every triple of
        integers from the window for the Z-coordinate. This covers each triple
        of the window without sampling.

        Raises:
            AxiomViolation: With the failing axiom and a witness.
            VerificationFailure: If the tables disagree with `mul`.
        """
        if not self.truss.FINITE:
            return SymbolicRing.validate(self)
        k = self.retract.exponent
        classes, prod, total = self._class_tables(k)
        c = np.arange(len(classes))
        a, b, d = c[:, None, None], c[None, :, None], c[None, None, :]
        checks = [
            ("associativity", prod[prod[a, b], d] == prod[a, prod[b, d]]),
            ("left distributivity", prod[a, total[b, d]] == total[prod[a, b], prod[a, d]]),
            ("right distributivity", prod[total[a, b], d] == total[prod[a, d], prod[b, d]]),
        ]
        if self.unit is not None:
            u = self.unit[0] * k + 1 % k
            checks.append(("unit", (prod[u, :] == c) & (prod[:, u] == c)))
        for axiom, mask in checks:
            witness = first_violation(mask)
            if witness is not None:
                raise AxiomViolation(axiom, tuple(classes[i] for i in witness), self.name)

        w = np.asarray(integer_window(k))
        p, q, s = w[:, None, None], w[None, :, None], w[None, None, :]
        for axiom, mask in [
            ("associativity", (p * q) * s == p * (q * s)),
            ("left distributivity", p * (q + s) == p * q + p * s),
            ("right distributivity", (p + q) * s == p * s + q * s),
        ]:
            witness = first_violation(mask)
            if witness is not None:
                raise AxiomViolation(axiom, tuple(int(w[i]) for i in witness), self.name)
        logger.debug(f"Certified {self.name} on {len(classes)} classes and the window [{w[0]}, {w[-1]}].")
        return self

    def _class_tables(self, k):
        """
        The classes `(t, r)`, `0 <= r < k`, with their product and sum tables
        (class ids `t*k + r`), cross-checked against `mul` on representatives.
        """
        G, T, o = self.retract, self.truss.table, self.basepoint
        n, A = G.size, G.table
        multiples = np.empty((k, n), dtype=np.int64)
        multiples[0] = G.zero
        for r in range(1, k):
            multiples[r] = A[multiples[r - 1], np.arange(n)]
        t, r = np.divmod(np.arange(n * k), k)
        t1, r1, t2, r2 = t[:, None], r[:, None], t[None, :], r[None, :]
        first = A[
            A[T[t1, t2], multiples[(r2 - 1) % k, T[t1, o]]],
            A[multiples[(r1 - 1) % k, T[o, t2]], multiples[((r1 - 1) * (r2 - 1)) % k, T[o, o]]],
        ]
        prod = first * k + (r1 * r2) % k
        total = A[t1, t2] * k + (r1 + r2) % k

        classes = [(int(x), int(m)) for x, m in zip(t, r)]
        for i, x in enumerate(classes):
            for j, y in enumerate(classes):
                if self.mul(x, y) != (int(first[i, j]), x[1] * y[1]):
                    raise VerificationFailure("tabulated product of R(T)", (x, y))
        return classes, prod, total

    def iota(self, t):
        return (t, 1)

    def embedding(self):
        """TrussMorphism: The universal map T -> T(R(T)), validated."""
        return TrussMorphism(self.truss, truss_from_ring(self), self.iota, name="iota")

    def unital_product(self, x, y):
        """The simplified product `(ts + (n-1)t + (m-1)s, mn)`, for o = 1."""
        (t, m), (s, n) = x, y
        G = self.retract
        return (
            G.sum([self.truss.mul(t, s), G.multiple(n - 1, t), G.multiple(m - 1, s)]),
            m * n,
        )

    def decompose(self, x):
        """Rebuild `x = (t,n)` as `iota(t) + (n-1)iota(o)`."""
        t, n = x
        return self.add(self.iota(t), self.group.multiple(n - 1, self.iota(self.basepoint)))

    def describe(self):
        return (
            f"{self.name} on G({self.truss.name};{self.truss.label(self.basepoint)}) (+) Z "
            f"with zero {self.format(self.zero)}: {self.descriptor}"
        )

    def format(self, x):
        return f"({self.truss.label(x[0])},{x[1]})"


@logging_scope("Universal ring")
def universal_ring(truss, o=None, validate=True):
    """
    The universal ring R(T) and its embedding iota(t) = (t,1).

    The empty truss has the zero ring as universal ring.

    Args:
        truss (Truss): The truss.
        o: The basepoint (default: `truss.default_basepoint()`).
        validate (bool): Certify the ring axioms on the integer window and
            that `iota` is a truss morphism.

    Returns:
        tuple<Ring, TrussMorphism>: R(T) and iota.
    """
    if truss.is_empty:
        ring = zero_ring(name=f"R({truss.name})")
        return ring, TrussMorphism(truss, truss_from_ring(ring), [], name="iota")
    o = truss.default_basepoint() if o is None else o
    truss.require(o)
    ring = UniversalRing(truss, o)
    logger.debug(f"R({truss.name}) with basepoint {truss.label(o)}.")
    if validate:
        ring.validate()
        return ring, ring.embedding()
    return ring, TrussMorphism(truss, truss_from_ring(ring), ring.iota, validate=False, name="iota")


def lift_morphism(phi, ring=None):
    """
    The unique ring homomorphism R(T) -> R extending a truss morphism
    `phi: T -> T(R)`, namely `(t,n) -> phi(t) + (n-1)phi(o)`.

    Args:
        phi (TrussMorphism): A truss morphism into a truss obtained from a ring.
        ring (UniversalRing, None): R(T) (built with the default basepoint
            when omitted).

    Returns:
        RingMorphism: The lift, verified to extend `phi` and to be determined
            by its values on iota(T).

    Raises:
        NotATrussMorphism: If `phi` is not a truss morphism.
    """
    phi = validate_truss_morphism(phi)
    target = phi.cod.ring
    if target is None:
        raise NotATrussMorphism(f"The codomain of `{phi.name}` is not the truss of a ring.")
    if ring is None:
        ring, _ = universal_ring(phi.dom)
    if phi.dom.is_empty:
        return RingMorphism(ring, target, [target.zero], name="lift")
    o = ring.basepoint
    phi_o = phi(o)
    lift = RingMorphism(
        ring,
        target,
        lambda x: target.add(phi(x[0]), target.group.multiple(x[1] - 1, phi_o)),
        name=f"lift({phi.name or 'phi'})",
    )
    for t in phi.dom.elements():
        if lift(ring.iota(t)) != phi(t):
            raise VerificationFailure("lift extends phi", (phi.dom.label(t),))
    for x in ring.elements():
        if ring.decompose(x) != x:
            raise VerificationFailure("R(T) generated by iota(T)", (x,))
    return lift


def change_of_basepoint(truss, o, o2):
    """
    The canonical ring isomorphism R(T;o) -> R(T;o'), the lift of the
    embedding of T into R(T;o').

    Returns:
        tuple<RingMorphism, RingMorphism>: The isomorphism and its inverse,
            verified mutually inverse on the integer window.
    """
    source, iota = universal_ring(truss, o)
    target, iota2 = universal_ring(truss, o2)
    forward = lift_morphism(iota2, source)
    backward = lift_morphism(iota, target)
    for x in source.elements():
        if backward(forward(x)) != x:
            raise VerificationFailure("basepoint change inverse", (x,))
    for y in target.elements():
        if forward(backward(y)) != y:
            raise VerificationFailure("basepoint change inverse", (y,))
    return forward, backward


# Dorroh extensions


class DorrohRing(SymbolicRing):
    """
    The Dorroh extension R_u on R x Z, with `(r,u)(s,v) = (rs + vr + us, uv)`
    and unit `(0,1)`.
    """

    def __init__(self, ring, name=None):
        self.base = ring
        G = ring.group

        def mul(x, y):
            (r, u), (s, v) = x, y
            return (G.sum([ring.mul(r, s), G.multiple(v, r), G.multiple(u, s)]), u * v)

        SymbolicRing.__init__(
            self,
            DirectSum(G, IntegerGroup()),
            mul,
            unit=(G.zero, 1),
            descriptor="(r,u)(s,v) = (rs + vr + us, uv)",
            name=name or f"{ring.name}_u",
        )

    def embed(self, r):
        return (r, 0)

    def embedding(self):
        return RingMorphism(self.base, self, self.embed, name="j")


def dorroh_ring(ring, validate=True):
    """The Dorroh extension of a (possibly non-unital) ring."""
    out = DorrohRing(ring)
    if validate:
        out.validate()
    return out


class UnitalExtension(SymbolicTruss):
    """
    The unital truss T_u, realized inside T(R(T)_u) as the elements
    `((x,m), 1-m)`, stored as pairs `(x,m)`. The bracket is
    `([x,y,z], m-n+p)`, the unit is `(o,0)` and T embeds by `t -> (t,1)`.

    Attributes:
        base (Truss): The truss T.
        universal (UniversalRing): R(T).
        dorroh (DorrohRing): R(T)_u.
    """

    def __init__(self, truss, o, name=None):
        self.base = truss
        self.universal = UniversalRing(truss, o)
        self.dorroh = DorrohRing(self.universal)
        Ru = self.dorroh

        def mul(x, y):
            return self.project(Ru.mul(self.include(x), self.include(y)))

        SymbolicTruss.__init__(
            self,
            GroupHeap(DirectSum(self.universal.retract, IntegerGroup())),
            mul,
            unit=(o, 0),
            descriptor="(x,m) -> ((x,m),1-m) in R(T)_u",
            name=name or f"{truss.name}_u",
        )

    @staticmethod
    def include(x):
        return (x, 1 - x[1])

    @staticmethod
    def project(y):
        return y[0]

    def embed(self, t):
        return (t, 1)

    def embedding(self):
        return TrussMorphism(self.base, self, self.embed, name="j")


def singleton_truss(name="*"):
    heap = FiniteHeap([[[0]]], labels=["*"], name=name, validate=False)
    return FiniteTruss(heap, [[0]], unit=0, name=name, validate=False)


def unital_truss_extension(truss, o=None, validate=True):
    """
    The unital extension T_u and the embedding j(t) = (t,1). The empty truss
    extends to the singleton unital truss.

    Returns:
        tuple<Truss, TrussMorphism>: T_u and j.
    """
    if truss.is_empty:
        star = singleton_truss(name=f"{truss.name}_u")
        return star, TrussMorphism(truss, star, [], name="j")
    o = truss.default_basepoint() if o is None else o
    ext = UnitalExtension(truss, o)
    if validate:
        ext.validate()
        for t in truss.elements():
            if ext.mul(ext.embed(t), ext.unit) != ext.embed(t):
                raise VerificationFailure("unit of T_u", (truss.label(t),))
    return ext, ext.embedding()


def unital_extension_map(ext, phi):
    """
    The unique unital truss morphism T_u -> T' extending `phi: T -> T'`,
    `(x,m) -> phi(x) + (m-1)phi(o)` computed in G(T';1').

    Raises:
        NotATrussMorphism: If `phi` is not a truss morphism, or its codomain
            is not unital.
    """
    phi = validate_truss_morphism(phi)
    target = phi.cod
    if not target.is_unital:
        raise NotATrussMorphism(f"`{target.name}` is not unital.")
    if not isinstance(ext, UnitalExtension):
        return UnitalTrussMorphism(ext, target, [target.unit] * ext.size, name="phi_u")
    G = retract(target.heap, target.unit)
    o = ext.universal.basepoint
    phi_o = phi(o)
    out = UnitalTrussMorphism(
        ext,
        target,
        lambda x: G.add(phi(x[0]), G.multiple(x[1] - 1, phi_o)),
        name=f"{phi.name or 'phi'}_u",
    )
    for t in phi.dom.elements():
        if out(ext.embed(t)) != phi(t):
            raise VerificationFailure("extension restricts to phi", (phi.dom.label(t),))
    # T_u is generated by j(T) and the unit: (x,m) = j(x) + (m-1)j(o) at (o,0).
    H = retract(ext.heap, ext.unit)
    for x in ext.elements():
        if H.add(ext.embed(x[0]), H.multiple(x[1] - 1, ext.embed(o))) != x:
            raise VerificationFailure("T_u generated by j(T)", (x,))
    return out


@logging_scope("Dorroh commutation", timed=True)
def check_dorroh_commutation(truss, o=None):
    """
    Certify that R(T)_u and R(T_u) are isomorphic unital rings through the
    canonical maps

        psi: R(T_u) -> R(T)_u, ((x,m),n) -> ((x,m), n-m)
        phi: R(T)_u -> R(T_u), ((t,m),u) -> ((t,m), m+u)

    by checking on the integer window that both are unital ring
    homomorphisms and mutually inverse.

    Returns:
        dict: The two rings and the two maps.

    Raises:
        VerificationFailure: With the first element where the maps fail to
            be inverse.
        NotAMorphism: If either map fails to be a unital ring homomorphism.
    """
    ext, _ = unital_truss_extension(truss, o)
    base, _ = universal_ring(truss, o)
    left = dorroh_ring(base)
    right, _ = universal_ring(ext, ext.unit)
    if truss.is_empty:
        psi = UnitalRingMorphism(right, left, lambda x: (base.zero, x[1]), name="psi")
        phi = UnitalRingMorphism(left, right, lambda y: (ext.unit, y[1]), name="phi")
    else:
        psi = UnitalRingMorphism(right, left, lambda x: (x[0], x[1] - x[0][1]), name="psi")
        phi = UnitalRingMorphism(left, right, lambda y: (y[0], y[0][1] + y[1]), name="phi")
    for x in right.elements():
        if phi(psi(x)) != x:
            raise VerificationFailure("phi o psi = id", (x,))
    for y in left.elements():
        if psi(phi(y)) != y:
            raise VerificationFailure("psi o phi = id", (y,))
    return {"R(T)_u": left, "R(T_u)": right, "psi": psi, "phi": phi}


def unital_rng(truss):
    """
    The rng on G(T;1) with product `t o s = ts - t - s`, for a unital
    finite truss. Its Dorroh extension is R(T) at basepoint 1.
    """
    if not truss.is_unital:
        raise ValueError(f"`{truss.name}` is not unital.")
    G = retract(truss.heap, truss.unit)
    n = truss.size
    table = [[G.sub(G.sub(truss.mul(t, s), t), s) for s in range(n)] for t in range(n)]
    return FiniteRing(G, table, name=f"rng({truss.name})")


def check_unital_rng_dorroh(truss):
    """
    Certify that R(T) at basepoint 1 has the product of the Dorroh extension
    of `unital_rng(T)`, and that it agrees with the simplified unital
    formula, on the integer window.

    Raises:
        VerificationFailure: With the first disagreeing pair.
    """
    ring, _ = universal_ring(truss, truss.unit, validate=False)
    dorroh = dorroh_ring(unital_rng(truss), validate=False)
    xs = ring.elements()
    check_law(
        VerificationFailure,
        "R(T) = rng(T)_u",
        lambda x, y: ring.mul(x, y) == dorroh.mul(x, y) == ring.unital_product(x, y),
        xs, xs,
    )
    return True

