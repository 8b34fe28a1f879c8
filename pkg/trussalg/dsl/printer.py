"""
Printing of finite structures, morphisms and diagrams as structure files.

Carriers and tables are always written out inline; trusses acted upon and the
ends of morphisms are referenced by their registered names, so that a
registry prints to a file that parses back to the same tables.
"""

import itertools
import re

from trussalg.errors import UnresolvedReference
from trussalg.exactness import Fork, Sequence
from trussalg.morphisms import Morphism
from trussalg.structure import Structure

INDENT = "    "
LABEL = re.compile(r"^[^\s{};|#]+$")


def _label(structure, x):
    label = str(structure.label(x))
    if not LABEL.match(label):
        raise ValueError(f"The label {label!r} of `{structure.name}` cannot be written to a structure file.")
    return label


def _labels(structure, xs):
    return " ".join(_label(structure, x) for x in xs)


class StructurePrinter:
    """
    Render registered objects as declarations.

    Args:
        names (dict): A map from `id(object)` to registered name, used for
            references.
    """

    def __init__(self, names):
        self.names = names

    def _name(self, obj, kind):
        try:
            return self.names[id(obj)]
        except KeyError:
            raise UnresolvedReference(getattr(obj, "name", None) or repr(obj), kind) from None

    def render(self, name, obj):
        if isinstance(obj, Structure):
            if not obj.FINITE or not getattr(obj, "exhaustive", True):
                raise TypeError(f"`{name}` is symbolic and has no structure file form.")
            body = getattr(self, f"_{obj.KIND.value}")(obj)
            kind = obj.KIND.value
        elif isinstance(obj, Morphism):
            body, kind = self._morphism(obj), "morphism"
        elif isinstance(obj, Fork):
            body, kind = self._fork(obj), "fork"
        elif isinstance(obj, Sequence):
            body, kind = [f"maps {' '.join(self._name(f, 'morphism') for f in obj.maps)};"], "sequence"
        else:
            raise TypeError(f"Cannot print objects of type `{type(obj).__name__}`.")
        lines = [f"{kind} {name} {{"] + [INDENT + line for line in body] + ["}"]
        return "\n".join(lines)

    # Building blocks

    @staticmethod
    def _carrier(structure):
        labels = _labels(structure, structure.elements())
        return [f"carrier {labels};" if labels else "carrier;"]

    @staticmethod
    def _rows(keyword, keys, values, func):
        """One `keyword k1 .. | v1 ..;` row per tuple of keys."""
        rows = []
        for key in itertools.product(*[range(k.size) for k in keys]):
            head = " ".join(_label(k, x) for k, x in zip(keys, key))
            row = _labels(values, [func(*key, y) for y in values.elements()])
            rows.append(f"{keyword} {head} | {row};")
        return rows

    def _group_body(self, group):
        return (
            self._carrier(group)
            + [f"zero {_label(group, group.zero)};"]
            + self._rows("add", [group], group, group.add)
        )

    def _heap_body(self, heap):
        return self._carrier(heap) + self._rows("bracket", [heap, heap], heap, heap.bracket)

    def _unit(self, structure):
        return [] if structure.unit is None else [f"unit {_label(structure, structure.unit)};"]

    # Kinds

    def _group(self, group):
        return self._group_body(group)

    def _heap(self, heap):
        return self._heap_body(heap)

    def _ring(self, ring):
        return self._group_body(ring.group) + self._rows("mul", [ring], ring, ring.mul) + self._unit(ring)

    def _truss(self, truss):
        return self._heap_body(truss.heap) + self._rows("mul", [truss], truss, truss.mul) + self._unit(truss)

    def _module(self, module):
        return (
            [f"truss {self._name(module.truss, 'truss')};"]
            + self._heap_body(module.heap)
            + self._rows("act", [module.truss], module, module.act)
        )

    def _pointed(self, pointed):
        return (
            [f"truss {self._name(pointed.truss, 'truss')};"]
            + self._group_body(pointed.group)
            + self._rows("act", [pointed.truss], pointed, pointed.act)
        )

    def _hom(self, hom):
        return (
            [f"truss {self._name(hom.truss, 'truss')};"]
            + self._heap_body(hom.heap)
            + self._rows("act", [hom.truss, hom], hom, hom.act)
        )

    def _morphism(self, f):
        if f.table is None:
            raise TypeError(f"`{f.name}` has a symbolic domain and no structure file form.")
        return [
            f"kind {f.dom.KIND.value};",
            f"from {self._name(f.dom, 'structure')};",
            f"to {self._name(f.cod, 'structure')};",
            f"images {_labels(f.cod, f.table)};" if f.table else "images;",
        ]

    def _fork(self, fork):
        return [f"{key} {self._name(getattr(fork, key), 'morphism')};" for key in ("f", "g", "h")]


def dumps(objects):
    """
    Render named objects as a structure file.

    Args:
        objects (iterable<tuple<str, object>>, StructureRegistry): The
            objects to render, in an order where references precede use.

    Returns:
        str: The structure file text.

    Raises:
        TypeError: For symbolic structures.
        UnresolvedReference: For references to objects not among `objects`.
    """
    pairs = list(objects.items() if hasattr(objects, "items") else objects)
    printer = StructurePrinter({id(obj): name for name, obj in pairs})
    return "\n\n".join(printer.render(name, obj) for name, obj in pairs) + "\n"
