"""
Materialization of parsed declarations into validated structures, morphisms,
forks and sequences.
"""

import numpy as np

from trussalg.errors import StructureSyntaxError, TableNotTotal, UnresolvedReference
from trussalg.exactness import Fork, Sequence
from trussalg.heaps import cyclic_group, direct_product, heap_from_group
from trussalg.iso import MORPHISMS
from trussalg.structure import Structure
from trussalg.trusses import cyclic_ring, truss_from_ring
from trussalg.utils.debug import logger

GROUP_STATEMENTS = {"carrier", "zero", "add", "cyclic", "product"}
HEAP_STATEMENTS = GROUP_STATEMENTS | {"bracket", "group", "heap"}

STATEMENTS = {
    "group": GROUP_STATEMENTS,
    "heap": HEAP_STATEMENTS - {"heap"},
    "ring": GROUP_STATEMENTS | {"group", "mul", "unit"},
    "truss": HEAP_STATEMENTS | {"ring", "mul", "unit"},
    "module": HEAP_STATEMENTS | {"truss", "act"},
    "pointed": GROUP_STATEMENTS | {"group", "truss", "act"},
    "hom": HEAP_STATEMENTS | {"truss", "act"},
    "morphism": {"kind", "from", "to", "images"},
    "fork": {"f", "g", "h"},
    "sequence": {"maps"},
}


def _syntax_error(statement, message):
    return StructureSyntaxError(message, statement.line, statement.col)


def _arguments(statement, count):
    if count is not None and len(statement.args) != count:
        raise _syntax_error(
            statement, f"`{statement.keyword}` takes {count} argument(s), not {len(statement.args)}."
        )
    return statement.args


def _integer(statement):
    (value,) = _arguments(statement, 1)
    try:
        return int(value)
    except ValueError:
        raise _syntax_error(statement, f"`{statement.keyword}` expects an integer, not `{value}`.") from None


def _positions(structure):
    return {str(label): i for i, label in enumerate(structure.labels)}


def _resolve(positions, label):
    if label not in positions:
        raise UnresolvedReference(label, "element")
    return positions[label]


class StructureBuilder:
    """
    Build the declarations of a `StructureFile` against a registry, which
    resolves references to previously declared names.
    """

    def __init__(self, registry):
        self.registry = registry

    def build(self, declaration):
        """
        Returns:
            The structure, morphism, fork or sequence declared.

        Raises:
            StructureSyntaxError: On malformed or unknown statements.
            UnresolvedReference: On references to unknown names or labels.
            TableNotTotal: On missing, repeated or short table rows.
            AxiomViolation, NotAMorphism: If validation fails.
        """
        unknown = [
            s for s in declaration.statements if s.keyword not in STATEMENTS[declaration.kind]
        ]
        if unknown:
            raise _syntax_error(
                unknown[0], f"`{unknown[0].keyword}` is not a statement of `{declaration.kind}` declarations."
            )
        logger.debug(f"Building {declaration.kind} `{declaration.name}`.")
        return getattr(self, f"_build_{declaration.kind}")(declaration)

    # Helpers

    def _reference(self, declaration, keyword, kind, required=True):
        statement = declaration.single(keyword)
        if statement is None:
            if required:
                raise StructureSyntaxError(
                    f"`{declaration.name}` needs a `{keyword}` statement.", declaration.line, declaration.col
                )
            return None
        (name,) = _arguments(statement, 1)
        return self.registry.lookup(name, kind)

    def _table(self, declaration, keyword, keys, values):
        """
        Assemble the rows `keyword k1 .. kr | v1 .. vn;` into a total table of
        shape `(|keys[0]|, ..., |keys[r-1]|, n)`.

        Args:
            keys (list<Structure>): The structures indexing the row keys.
            values (Structure): The structure the values are elements of.
        """
        key_positions = [_positions(k) for k in keys]
        value_positions = _positions(values)
        shape = tuple(k.size for k in keys) + (values.size,)
        table = np.full(shape, -1, dtype=np.int64)
        seen = set()
        for statement in declaration.get(keyword):
            _arguments(statement, len(keys))
            if statement.values is None:
                raise _syntax_error(statement, f"A `{keyword}` row needs `|` before its values.")
            key = tuple(_resolve(p, a) for p, a in zip(key_positions, statement.args))
            if key in seen:
                raise TableNotTotal(f"`{declaration.name}`: repeated `{keyword}` row {' '.join(statement.args)}.")
            seen.add(key)
            if len(statement.values) != values.size:
                raise TableNotTotal(
                    f"`{declaration.name}`: `{keyword}` row {' '.join(statement.args)} has "
                    f"{len(statement.values)} values, not {values.size}."
                )
            table[key] = [_resolve(value_positions, v) for v in statement.values]
        missing = int(np.prod(shape[:-1])) - len(seen)
        if missing:
            raise TableNotTotal(f"`{declaration.name}`: {missing} `{keyword}` row(s) missing.")
        return table

    def _labels(self, declaration):
        statement = declaration.single("carrier")
        if statement is None:
            raise StructureSyntaxError(
                f"`{declaration.name}` needs a `carrier` statement.", declaration.line, declaration.col
            )
        labels = statement.args
        if len(set(labels)) != len(labels):
            raise _syntax_error(statement, f"`{declaration.name}` repeats a carrier element.")
        return labels

    def _group(self, declaration, name):
        """The additive group given by `group`, `cyclic`, `product` or inline `add` rows."""
        if "group" in declaration.keywords:
            return self._reference(declaration, "group", "group")
        statement = declaration.single("cyclic")
        if statement is not None:
            return cyclic_group(_integer(statement), name=name)
        statement = declaration.single("product")
        if statement is not None:
            factors = [self.registry.lookup(ref, "group") for ref in _arguments(statement, None)]
            return direct_product(*factors, name=name)
        if "carrier" not in declaration.keywords or "zero" not in declaration.keywords:
            raise StructureSyntaxError(
                f"`{declaration.name}` needs a carrier and a zero (or `group`, `cyclic`, `product`).",
                declaration.line,
                declaration.col,
            )
        labels = self._labels(declaration)
        shell = _LabelShell(labels)
        table = self._table(declaration, "add", [shell], shell)
        zero = _resolve(_positions(shell), _arguments(declaration.single("zero"), 1)[0])
        return Structure.for_keyword("group")(table, zero, labels=labels, name=name)

    def _heap(self, declaration, name):
        """The heap given by `heap`, inline `bracket` rows, or a group."""
        if "heap" in declaration.keywords and declaration.kind != "heap":
            return self._reference(declaration, "heap", "heap")
        if "bracket" in declaration.keywords or (
            "carrier" in declaration.keywords and "add" not in declaration.keywords
        ):
            labels = self._labels(declaration)
            shell = _LabelShell(labels)
            table = self._table(declaration, "bracket", [shell, shell], shell)
            return Structure.for_keyword("heap")(table, labels=labels, name=name)
        return heap_from_group(self._group(declaration, name=None), name=name)

    # Structures

    def _build_group(self, declaration):
        return self._group(declaration, name=declaration.name)

    def _build_heap(self, declaration):
        return self._heap(declaration, name=declaration.name)

    def _unit(self, declaration, carrier):
        statement = declaration.single("unit")
        if statement is None:
            return None
        return _resolve(_positions(carrier), _arguments(statement, 1)[0])

    def _build_ring(self, declaration):
        if "cyclic" in declaration.keywords and "mul" not in declaration.keywords:
            return cyclic_ring(_integer(declaration.single("cyclic")), name=declaration.name)
        group = self._group(declaration, name=None)
        table = self._table(declaration, "mul", [group], group)
        return Structure.for_keyword("ring")(
            group, table, unit=self._unit(declaration, group), name=declaration.name
        )

    def _build_truss(self, declaration):
        if "ring" in declaration.keywords:
            ring = self._reference(declaration, "ring", "ring")
            return truss_from_ring(ring, name=declaration.name)
        if "cyclic" in declaration.keywords and "mul" not in declaration.keywords:
            ring = cyclic_ring(_integer(declaration.single("cyclic")))
            return truss_from_ring(ring, name=declaration.name)
        heap = self._heap(declaration, name=None)
        table = self._table(declaration, "mul", [heap], heap)
        return Structure.for_keyword("truss")(
            heap, table, unit=self._unit(declaration, heap), name=declaration.name
        )

    def _build_module(self, declaration):
        truss = self._reference(declaration, "truss", "truss")
        heap = self._heap(declaration, name=None)
        table = self._table(declaration, "act", [truss], heap)
        return Structure.for_keyword("module")(truss, heap, table, name=declaration.name)

    def _build_pointed(self, declaration):
        truss = self._reference(declaration, "truss", "truss")
        group = self._group(declaration, name=None)
        table = self._table(declaration, "act", [truss], group)
        return Structure.for_keyword("pointed")(truss, group, table, name=declaration.name)

    def _build_hom(self, declaration):
        truss = self._reference(declaration, "truss", "truss")
        heap = self._heap(declaration, name=None)
        table = self._table(declaration, "act", [truss, heap], heap)
        return Structure.for_keyword("hom")(truss, heap, table, name=declaration.name)

    # Morphisms and diagrams

    def _build_morphism(self, declaration):
        dom = self._reference(declaration, "from", None)
        cod = self._reference(declaration, "to", None)
        statement = declaration.single("kind")
        try:
            kind = Structure.Kind(_arguments(statement, 1)[0]) if statement else dom.KIND
        except ValueError:
            raise _syntax_error(statement, f"Unknown morphism kind `{statement.args[0]}`.") from None
        images = declaration.single("images")
        if images is None:
            raise StructureSyntaxError(
                f"`{declaration.name}` needs an `images` statement.", declaration.line, declaration.col
            )
        if len(images.args) != dom.size:
            raise TableNotTotal(
                f"`{declaration.name}`: {len(images.args)} images for {dom.size} elements of `{dom.name}`."
            )
        positions = _positions(cod)
        table = [_resolve(positions, label) for label in images.args]
        return MORPHISMS[kind](dom, cod, table, name=declaration.name)

    def _morphism(self, declaration, keyword):
        return self._reference(declaration, keyword, "morphism")

    def _build_fork(self, declaration):
        return Fork(
            self._morphism(declaration, "f"),
            self._morphism(declaration, "g"),
            self._morphism(declaration, "h"),
            name=declaration.name,
        )

    def _build_sequence(self, declaration):
        statement = declaration.single("maps")
        if statement is None:
            raise StructureSyntaxError(
                f"`{declaration.name}` needs a `maps` statement.", declaration.line, declaration.col
            )
        return Sequence(
            [self.registry.lookup(ref, "morphism") for ref in statement.args], name=declaration.name
        )


class _LabelShell:
    """Stands for a carrier under construction when resolving table rows."""

    def __init__(self, labels):
        self.labels = tuple(labels)

    @property
    def size(self):
        return len(self.labels)

