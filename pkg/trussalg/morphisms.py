import itertools

import numpy as np

from trussalg.errors import ElementNotInCarrier, NotAMorphism, NotATrussMorphism
from trussalg.structure import find_witness, labelled


class Morphism:
    """
    A total map between the carriers of two structures.

    The map is stored as a table of ids when the domain is finite, and as a
    callable otherwise. On construction the map is validated against the
    operations of the domain (see `Structure.operations`), restricted to
    `OPERATIONS` and `CONSTANTS` when these are set by subclasses.

    Attributes:
        dom (Structure): The domain.
        cod (Structure): The codomain.
        table (tuple<int>, None): The images of the domain ids (finite domains).
        name (str, None): An optional name.

    Class Attributes:
        ERROR (type): The exception raised when validation fails.
        OPERATIONS (set<str>, None): Names of the operations to preserve (all
            when `None`).
        CONSTANTS (set<str>, None): Names of the constants to preserve (all
            when `None`).
    """

    ERROR = NotAMorphism
    OPERATIONS = None
    CONSTANTS = None

    def __init__(self, dom, cod, mapping, name=None, validate=True):
        self.dom = dom
        self.cod = cod
        self.name = name
        if callable(mapping) and not isinstance(mapping, (list, tuple, np.ndarray)):
            if dom.FINITE:
                mapping = [mapping(x) for x in dom.elements()]
            else:
                self.table = None
                self._func = mapping
        if not callable(mapping) or isinstance(mapping, (list, tuple, np.ndarray)):
            self.table = tuple(int(y) for y in mapping) if cod.FINITE else tuple(mapping)
            self._func = None
            if len(self.table) != dom.size:
                raise ValueError(
                    f"A map out of `{dom.name}` needs {dom.size} images, not {len(self.table)}."
                )
            for y in self.table if cod.FINITE else ():
                if y not in cod:
                    raise ElementNotInCarrier(y, cod.name)
        if validate:
            self.validate()

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.name or ''}: {self.dom.name} -> {self.cod.name}>"

    def __call__(self, x):
        if self.table is not None:
            return self.table[x]
        return self._func(x)

    def __eq__(self, other):
        if not isinstance(other, Morphism) or self.table is None:
            return NotImplemented
        return self.dom is other.dom and self.cod is other.cod and self.table == other.table

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.table))

    # Validation

    def violation(self):
        """
        Search for a failure of this map to preserve the structure.

        Returns:
            tuple, None: The name of the violated operation followed by the
                witness arguments (as labels), or `None`.
        """
        cod_ops = {op.name: op for op in self.cod.operations()}
        elements = self.dom.elements()
        for op in self.dom.operations():
            if self.OPERATIONS is not None and op.name not in self.OPERATIONS:
                continue
            target = cod_ops[op.name]
            instances = op.instances()

            def law(*args, op=op, target=target, instances=instances):
                images = [self(a) for a in args]
                return all(
                    self(op.func(*s, *args)) == target.func(*s, *images)
                    for s in instances
                )

            witness = find_witness(
                law,
                *[elements] * op.arity,
                exhaustive=self.dom.FINITE,
                description=f"{self.__class__.__name__} {op.name}",
            )
            if witness is not None:
                return (op.name,) + labelled(self.dom, witness)

        cod_constants = self.cod.constants()
        for key, value in self.dom.constants().items():
            if self.CONSTANTS is not None and key not in self.CONSTANTS:
                continue
            if value is not None and self(value) != cod_constants.get(key):
                return (key, self.dom.label(value))
        return None

    def validate(self):
        """
        Raises:
            NotAMorphism (or the subclass `ERROR`): With a witness, if the map
                does not preserve the structure.
        """
        witness = self.violation()
        if witness is not None:
            raise self.ERROR(
                f"`{self.name or 'map'}` does not preserve {witness[0]} at {witness[1:]!r}.",
                witness=witness[1:],
            )
        return self

    # Set theoretic properties (finite domains)

    def image(self):
        """set: The image of a finite morphism."""
        return set(self.table)

    def preimage(self, y):
        """set: The ids mapped onto `y`."""
        return {x for x, fx in enumerate(self.table) if fx == y}

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return self.cod.FINITE and set(self.table) == set(range(self.cod.size))

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    # Construction

    def compose(self, other, validate=False):
        """
        The composite `self ∘ other` (apply `other` first).
        """
        if other.cod is not self.dom:
            raise ValueError(
                f"Cannot compose `{self.name}` after `{other.name}`: codomain and domain differ."
            )
        if other.dom.FINITE:
            mapping = [self(other(x)) for x in other.dom.elements()]
        else:
            mapping = lambda x: self(other(x))  # noqa: E731
        return self.__class__(other.dom, self.cod, mapping, validate=validate)

    def inverse(self, validate=False):
        """The inverse of a bijective finite morphism."""
        if not self.is_bijective():
            raise ValueError(f"`{self.name or 'map'}` is not bijective.")
        table = [0] * len(self.table)
        for x, y in enumerate(self.table):
            table[y] = x
        return self.__class__(self.cod, self.dom, table, validate=validate)

    @classmethod
    def identity(cls, structure):
        if structure.FINITE:
            return cls(structure, structure, list(range(structure.size)), validate=False)
        return cls(structure, structure, lambda x: x, validate=False)

    def describe(self):
        if self.table is None:
            return f"{self.dom.name} -> {self.cod.name} (closed form)"
        pairs = ", ".join(
            f"{self.dom.label(x)}->{self.cod.label(y)}" for x, y in enumerate(self.table)
        )
        return f"{self.dom.name} -> {self.cod.name}: {pairs}"


class HeapMorphism(Morphism):
    OPERATIONS = {"bracket"}
    CONSTANTS = set()


class GroupMorphism(Morphism):
    OPERATIONS = {"add"}
    CONSTANTS = {"zero"}


class RingMorphism(Morphism):
    """
    A ring homomorphism; the unit is only checked for `UnitalRingMorphism`.
    """

    OPERATIONS = {"add", "mul"}
    CONSTANTS = {"zero"}


class UnitalRingMorphism(RingMorphism):
    CONSTANTS = {"zero", "unit"}


class TrussMorphism(Morphism):
    ERROR = NotATrussMorphism
    OPERATIONS = {"bracket", "mul"}
    CONSTANTS = set()


class UnitalTrussMorphism(TrussMorphism):
    CONSTANTS = {"unit"}


class ModuleMorphism(Morphism):
    """A linear map of (pointed, ring or truss) modules over the same scalars."""

    OPERATIONS = {"bracket", "add", "act"}
    CONSTANTS = {"zero"}


class HomMorphism(Morphism):
    """A morphism of heaps of modules: a heap morphism intertwining the ternary actions."""

    OPERATIONS = {"bracket", "act"}
    CONSTANTS = set()


def all_maps(dom, cod):
    """Iterate over every map of finite carriers, as image tables."""
    return itertools.product(range(cod.size), repeat=dom.size)
