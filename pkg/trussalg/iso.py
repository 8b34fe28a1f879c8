import itertools

from trussalg.errors import NotIsomorphic, SizeMismatch, TrussAlgError
from trussalg.morphisms import (
    GroupMorphism,
    HeapMorphism,
    HomMorphism,
    ModuleMorphism,
    RingMorphism,
    TrussMorphism,
)
from trussalg.structure import Structure
from trussalg.utils.config import config
from trussalg.utils.debug import logger, logging_scope

config.register(
    "iso_search_limit",
    description="The largest carrier for which isomorphism search is guaranteed to complete.",
    default=12,
    type=int,
)

MORPHISMS = {
    Structure.Kind.GROUP: GroupMorphism,
    Structure.Kind.HEAP: HeapMorphism,
    Structure.Kind.RING: RingMorphism,
    Structure.Kind.TRUSS: TrussMorphism,
    Structure.Kind.MODULE: ModuleMorphism,
    Structure.Kind.POINTED: ModuleMorphism,
    Structure.Kind.RING_MODULE: ModuleMorphism,
    Structure.Kind.HOM: HomMorphism,
}


def morphism_class(structure):
    return MORPHISMS[structure.KIND]


class MorphismSearch:
    """
    Backtracking search for structure preserving maps between finite
    structures.

    Elements of the domain are assigned in id order. Every assignment is
    propagated: an operation instance whose arguments are all assigned forces
    the image of its result, and a conflict prunes the branch.

    Attributes:
        dom (Structure): The domain.
        cod (Structure): The codomain.
        bijective (bool): Whether to search for bijections only.
        fixed (dict): Pre-assigned images (`dom id -> cod id`).
    """

    def __init__(self, dom, cod, kind=None, bijective=False, fixed=None):
        if not (dom.FINITE and cod.FINITE):
            raise TrussAlgError("Morphism search needs finite structures.")
        self.dom = dom
        self.cod = cod
        self.kind = kind or morphism_class(dom)
        self.bijective = bijective
        self.fixed = dict(fixed or {})

        cod_ops = {op.name: op for op in cod.operations()}
        self.ops = []
        for op in dom.operations():
            if self.kind.OPERATIONS is not None and op.name not in self.kind.OPERATIONS:
                continue
            target = cod_ops[op.name]
            for prefix in op.instances():
                self.ops.append((op.arity, prefix, op.func, target.func))
        self.impossible = False
        cod_constants = cod.constants()
        for key, value in dom.constants().items():
            if self.kind.CONSTANTS is not None and key not in self.kind.CONSTANTS:
                continue
            if value is None:
                continue
            if cod_constants.get(key) is None:
                self.impossible = True
            else:
                self.fixed.setdefault(value, cod_constants[key])

    def _assign(self, image, used, x, y):
        """
        Assign `x -> y` and propagate. Returns the list of newly assigned
        elements, or `None` on conflict (in which case nothing is assigned).
        """
        trail = []
        queue = [(x, y)]
        while queue:
            a, b = queue.pop()
            if image[a] is not None:
                if image[a] != b:
                    self._undo(image, used, trail)
                    return None
                continue
            if self.bijective and b in used:
                self._undo(image, used, trail)
                return None
            image[a] = b
            used.add(b)
            trail.append(a)
            assigned = [i for i, v in enumerate(image) if v is not None]
            for arity, prefix, f, g in self.ops:
                for position in range(arity):
                    for rest in itertools.product(assigned, repeat=arity - 1):
                        args = rest[:position] + (a,) + rest[position:]
                        result = f(*prefix, *args)
                        queue.append((result, g(*prefix, *[image[u] for u in args])))
        return trail

    @staticmethod
    def _undo(image, used, trail):
        for a in trail:
            used.discard(image[a])
            image[a] = None

    def solutions(self):
        """Iterate over the image tables of all structure preserving maps."""
        n, m = self.dom.size, self.cod.size
        if self.impossible or (self.bijective and n != m):
            return
        if n == 0:
            yield ()
            return
        if m == 0:
            return
        image = [None] * n
        used = set()
        for x, y in sorted(self.fixed.items()):
            if self._assign(image, used, x, y) is None:
                return
        yield from self._search(image, used)

    def _search(self, image, used):
        try:
            x = image.index(None)
        except ValueError:
            yield tuple(image)
            return
        for y in range(self.cod.size):
            if self.bijective and y in used:
                continue
            trail = self._assign(image, used, x, y)
            if trail is None:
                continue
            yield from self._search(image, used)
            self._undo(image, used, trail)


def hom_morphisms(dom, cod, kind=None, fixed=None):
    """
    Enumerate every structure preserving map between finite structures.

    Args:
        dom, cod (Structure): Finite structures of the same kind.
        kind (type): The morphism class (inferred from `dom.KIND` by default).
        fixed (dict): Images that are imposed (`dom id -> cod id`).

    Returns:
        generator<Morphism>: The morphisms.
    """
    search = MorphismSearch(dom, cod, kind=kind, fixed=fixed)
    for table in search.solutions():
        yield search.kind(dom, cod, list(table), validate=False)


@logging_scope("Isomorphism search")
def iso_search(A, B, constraints=None, kind=None):
    """
    Find an isomorphism between finite structures.

    Args:
        A, B (Structure): The structures.
        constraints (dict, callable, None): Either pre-assigned images
            (`A id -> B id`), or a predicate a candidate morphism must satisfy
            (e.g. commuting with given projections).
        kind (type): The morphism class (inferred from `A.KIND` by default).

    Returns:
        Morphism: The isomorphism, re-validated.

    Raises:
        SizeMismatch: If the carriers have different sizes.
        NotIsomorphic: If no isomorphism exists.
    """
    if A.size != B.size:
        raise SizeMismatch(f"`{A.name}` has {A.size} elements and `{B.name}` has {B.size}.")
    if A.size > config.iso_search_limit:
        logger.caveat(f"isomorphism search beyond {config.iso_search_limit} elements")
    fixed = constraints if isinstance(constraints, dict) else None
    predicate = constraints if callable(constraints) else None
    search = MorphismSearch(A, B, kind=kind, bijective=True, fixed=fixed)
    for table in search.solutions():
        candidate = search.kind(A, B, list(table), name="iso", validate=False)
        if predicate is None or predicate(candidate):
            return candidate.validate()
    raise NotIsomorphic(f"`{A.name}` and `{B.name}` are not isomorphic.")


def is_isomorphic(A, B, constraints=None, kind=None):
    try:
        iso_search(A, B, constraints=constraints, kind=kind)
    except (SizeMismatch, NotIsomorphic):
        return False
    return True
