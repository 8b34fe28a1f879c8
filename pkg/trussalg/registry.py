from trussalg.dsl import StructureBuilder, dumps, parse
from trussalg.errors import UnresolvedReference
from trussalg.exactness import Fork, Sequence
from trussalg.morphisms import Morphism
from trussalg.structure import Structure
from trussalg.utils.debug import logger, logging_scope

DIAGRAMS = {"morphism": Morphism, "fork": Fork, "sequence": Sequence}


class StructureRegistry:
    """
    A registry of named structures, morphisms and diagrams.

    Structure files are materialized into a registry declaration by
    declaration, so that later declarations can refer to earlier ones by
    name. Registries also print back to structure files (see `dumps`).
    """

    def __init__(self, text=None):
        """
        Args:
            text (str, None): Structure file text to register immediately.
        """
        self._registry = {}

        if text:
            self.register_from_text(text)

    def __repr__(self):
        return f"<StructureRegistry with {len(self._registry)} registered objects>"

    # Registration methods
    def register(self, obj, name=None, override=False):
        """
        Register a structure, morphism, fork or sequence.

        Args:
            obj (object): The object to register.
            name (str): The name to register under (defaults to `obj.name`).
            override (bool): Whether to replace an existing object of the same
                name. If `False`, a name clash raises.

        Returns:
            object: The registered object.
        """
        name = name or getattr(obj, "name", None)
        if name is None:
            raise ValueError("Objects must be named to be registered. Please pass `name='...'`.")
        if name in self._registry and not override:
            raise ValueError(
                f"An object named '{name}' is already present in the registry. Please pass `override=True` to replace it."
            )
        self._registry[name] = obj
        return obj

    # Inspection and retrieval methods
    @property
    def names(self):
        """list: The names of all registered objects, in registration order."""
        return list(self._registry)

    def items(self):
        return self._registry.items()

    def __getitem__(self, name):
        return self._registry[name]

    def __contains__(self, name):
        return name in self._registry

    def __iter__(self):
        return iter(self._registry.values())

    def __len__(self):
        return len(self._registry)

    def lookup(self, name, kind=None):
        """
        Look up a registered object by name and (optionally) kind.

        Args:
            name (str): The registered name.
            kind (str, Structure.Kind, None): A structure kind (`'truss'`,
                `Structure.Kind.HOM`, ...) or one of `'morphism'`, `'fork'`
                and `'sequence'`.

        Returns:
            object: The registered object.

        Raises:
            UnresolvedReference: If no object of that name (and kind) exists.
        """
        if name not in self._registry:
            raise UnresolvedReference(name, kind)
        obj = self._registry[name]
        if kind is None:
            return obj
        if kind in DIAGRAMS:
            if not isinstance(obj, DIAGRAMS[kind]):
                raise UnresolvedReference(name, kind)
            return obj
        kind = Structure.Kind(kind)
        if not isinstance(obj, Structure) or obj.KIND is not kind:
            raise UnresolvedReference(name, kind)
        return obj

    def of_kind(self, kind):
        """list<str>: The names of the registered objects of a given kind."""
        out = []
        for name in self._registry:
            try:
                self.lookup(name, kind)
                out.append(name)
            except UnresolvedReference:
                pass
        return out

    # Batch registration from structure files
    @logging_scope("Loading structure file")
    def register_from_text(self, text, filename=None, override=False):
        """
        Parse structure file text and register every declaration, in file
        order.

        Returns:
            list<str>: The registered names.
        """
        builder = StructureBuilder(self)
        names = []
        for declaration in parse(text, filename=filename):
            self.register(builder.build(declaration), name=declaration.name, override=override)
            names.append(declaration.name)
        logger.info(f"Registered {len(names)} declarations{f' from {filename}' if filename else ''}.")
        return names

    def register_from_file(self, filename, override=False):
        with open(filename, encoding="utf-8") as f:
            return self.register_from_text(f.read(), filename=str(filename), override=override)

    def dumps(self, names=None):
        """str: The registered objects (all, or those named) as a structure file."""
        names = self.names if names is None else names
        return dumps([(name, self._registry[name]) for name in names])
