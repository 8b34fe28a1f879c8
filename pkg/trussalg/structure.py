import itertools
import math
import numbers
import random
from abc import abstractmethod
from contextlib import contextmanager
from enum import Enum

from interface_meta import InterfaceMeta

from trussalg.errors import ElementNotInCarrier, TrussAlgError
from trussalg.utils.config import config
from trussalg.utils.debug import logger

config.register(
    "verification_window",
    description="Half-width of the integer window used when verifying symbolic structures. "
    "When unset, it is derived as 2k+2 from the exponent k of the finite group part.",
    default=None,
    type=int,
)
config.register(
    "sample_limit",
    description="The maximum number of tuples enumerated by a law check over a symbolic "
    "domain, beyond which a seeded random sample of this size is checked instead.",
    default=200000,
    type=int,
)
config.register(
    "random_seed",
    description="Seed for the negative corpus and for any sampling of symbolic domains.",
    default=2718,
    type=int,
)


def integer_window(exponent=1, window=None):
    """
    The integers sampled for a Z-coordinate of a symbolic structure.

    All operations of the symbolic structures in this package are polynomials
    of degree at most two in each integer coordinate, with coefficients in a
    finite abelian group of exponent `k`. Checking identities over
    `[-(2k+2), 2k+2]` therefore determines them on all of Z.

    Args:
        exponent (int): The exponent `k` of the finite group part (use 1 when
            there is none).
        window (int, None): An explicit half-width overriding both the
            configured and the derived value.

    Returns:
        range: The integers in the window.
    """
    if window is None:
        window = config.verification_window
    if window is None:
        window = 2 * max(exponent, 1) + 2
    return range(-window, window + 1)


class Operation:
    """
    A named operation of a structure, as used by generic morphism checks and
    by isomorphism search.

    Attributes:
        name (str): The operation name (operations of the domain and codomain
            of a morphism are matched by name).
        arity (int): The number of carrier arguments.
        func (callable): The operation. Scalar operations (actions) receive
            their scalar as first argument.
        scalars (list, None): For actions, the scalars to quantify over;
            `None` for plain operations.
    """

    __slots__ = ("name", "arity", "func", "scalars")

    def __init__(self, name, arity, func, scalars=None):
        self.name = name
        self.arity = arity
        self.func = func
        self.scalars = scalars

    def __repr__(self):
        return f"<Operation {self.name}/{self.arity}>"

    def instances(self):
        """list<tuple>: The scalar prefixes to apply the operation with."""
        if self.scalars is None:
            return [()]
        return [(s,) for s in self.scalars]


class Structure(metaclass=InterfaceMeta):
    """
    The abstract base class of all algebraic structures.

    Finite structures store operation tables over the dense ids `0..n-1`,
    together with a tuple of labels used for input and output. Symbolic
    structures have carriers of the form (finite group part) x Z^k, and
    implement their operations by closed formulae; their `elements()` are the
    points of the integer verification window.

    Subclasses register themselves against the keywords of the structure
    definition language via `KEYWORDS`, and are looked up with
    `Structure.for_keyword`.

    Class Attributes:
        KIND (Structure.Kind): The kind of structure.
        KEYWORDS (list<str>): Declaration keywords handled by this class.
        FINITE (bool): Whether instances have finite, tabulated carriers.
    """

    INTERFACE_EXPLICIT_OVERRIDES = False
    INTERFACE_SKIPPED_NAMES = {"__init__", "_init"}

    class Kind(Enum):
        GROUP = "group"
        HEAP = "heap"
        RING = "ring"
        TRUSS = "truss"
        MODULE = "module"
        POINTED = "pointed"
        RING_MODULE = "ring_module"
        HOM = "hom"

    KIND = None
    KEYWORDS = None
    FINITE = True

    @classmethod
    def __register_implementation__(cls):
        if not hasattr(cls, "_keywords"):
            cls._keywords = {}
        for keyword in getattr(cls, "KEYWORDS", None) or []:
            if keyword in cls._keywords and cls._keywords[keyword] is not cls:
                logger.debug(
                    f"Ignoring attempt by `{cls.__name__}` to register keyword '{keyword}', "
                    f"which is already handled by `{cls._keywords[keyword].__name__}`."
                )
            else:
                cls._keywords[keyword] = cls

    @classmethod
    def for_keyword(cls, keyword):
        """
        Retrieve the `Structure` subclass handling a declaration keyword.

        Raises:
            KeyError: If no class handles `keyword`.
        """
        if keyword not in cls._keywords:
            raise KeyError(f"No structure is declared with the keyword '{keyword}'.")
        return cls._keywords[keyword]

    def __init__(self, name=None, labels=None):
        self.name = name
        self._labels = tuple(labels) if labels is not None else None
        self._index = None

    def __repr__(self):
        size = f"{len(self)} elements" if self.FINITE else "symbolic"
        return f"<{self.__class__.__name__} {self.name or ''} ({size})>".replace("  ", " ")

    # Carrier

    @property
    def size(self):
        """int: The number of elements of a finite structure."""
        raise TypeError(f"`{self.__class__.__name__}` does not have a finite carrier.")

    def __len__(self):
        return self.size

    @property
    def is_empty(self):
        return self.FINITE and self.size == 0

    @property
    def labels(self):
        """tuple: The labels of the elements, in id order."""
        if self._labels is None:
            return tuple(range(self.size))
        return self._labels

    def label(self, x):
        """The label of the element `x` (symbolic elements are their own label)."""
        if not self.FINITE:
            return x
        return self.labels[x]

    def index(self, label):
        """
        The id of the element labelled `label`. Labels read from structure
        files are strings, so the string form of `label` is tried as well.

        Raises:
            ElementNotInCarrier: If no element carries this label.
        """
        if not self.FINITE:
            if label not in self:
                raise ElementNotInCarrier(label, self.name)
            return label
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        for candidate in (label, str(label)):
            try:
                return self._index[candidate]
            except (KeyError, TypeError):
                continue
        raise ElementNotInCarrier(label, self.name)

    def elements(self, window=None):
        """
        list: All elements of a finite structure, or the verification window
        of a symbolic one.
        """
        return list(range(self.size))

    def __contains__(self, x):
        if self.FINITE:
            return isinstance(x, numbers.Integral) and 0 <= x < self.size
        return self._contains(x)

    def _contains(self, x):
        raise NotImplementedError

    def require(self, *elements):
        """Raise `ElementNotInCarrier` unless all `elements` belong to this structure."""
        for x in elements:
            if x not in self:
                raise ElementNotInCarrier(x, self.name)

    @property
    def window_exponent(self):
        """int: The exponent driving the integer window of symbolic elements."""
        return 1

    # Signature

    @abstractmethod
    def operations(self):
        """
        The operations of this structure.

        Returns:
            list<Operation>: The operations morphisms must preserve.
        """
        raise NotImplementedError

    def constants(self):
        """dict: Named constants (zero, unit) that morphisms must preserve."""
        return {}

    def describe(self):
        """str: A one line description of the structure."""
        return repr(self)


# Law checking


def sample_tuples(domains, limit=None, seed=None):
    """
    Enumerate the product of `domains`, or a seeded random sample of `limit`
    tuples when the product is larger than `limit`.

    Returns:
        tuple<iterable, bool>: The tuples, and whether they are exhaustive.
    """
    domains = [list(d) for d in domains]
    total = math.prod(len(d) for d in domains)
    if limit is None:
        limit = config.sample_limit
    if total <= limit:
        return itertools.product(*domains), True
    rng = random.Random(config.random_seed if seed is None else seed)
    return ([rng.choice(d) for d in domains] for _ in range(limit)), False


def find_witness(law, *domains, exhaustive=False, description=None):
    """
    Search for a tuple of arguments violating `law`.

    Args:
        law (callable): A predicate of `len(domains)` arguments.
        *domains (iterable): The ranges of the arguments.
        exhaustive (bool): Enumerate the full product whatever its size (used
            for finite structures).
        description (str, None): Description used in the sampling caveat.

    Returns:
        tuple, None: The first violating tuple, or `None`.
    """
    tuples, complete = sample_tuples(
        domains, limit=float("inf") if exhaustive else None
    )
    if not complete:
        logger.caveat(
            f"{description or getattr(law, '__name__', 'law')} checked on {config.sample_limit} sampled tuples"
        )
    for args in tuples:
        if not law(*args):
            return tuple(args)
    return None


def check_law(error, name, law, *domains, structure=None, exhaustive=False):
    """
    Raise `error` with a witness if `law` fails anywhere on `domains`.

    `error` is called as `error(name, witness)`, with the witness translated
    to labels when `structure` is provided.
    """
    witness = find_witness(law, *domains, exhaustive=exhaustive, description=name)
    if witness is not None:
        raise error(name, labelled(structure, witness) if structure is not None else witness)


def labelled(structure, elements):
    """Translate a tuple of ids into labels (leaving non-carrier values as-is)."""
    out = []
    for x in elements:
        try:
            out.append(structure.label(x) if structure.FINITE and x in structure else x)
        except (TypeError, IndexError):
            out.append(x)
    return tuple(out)


def as_callable(op):
    """Wrap a numpy table as a fast callable using nested python lists."""
    table = op.tolist()
    if op.ndim == 1:
        return table.__getitem__
    if op.ndim == 2:
        return lambda a, b: table[a][b]
    if op.ndim == 3:
        return lambda a, b, c: table[a][b][c]
    raise TrussAlgError(f"Unsupported table dimension {op.ndim}.")


@contextmanager
def sample_limit(limit):
    """Temporarily lower the number of sampled tuples of symbolic law checks."""
    previous = config.sample_limit
    config.sample_limit = min(limit, previous)
    try:
        yield
    finally:
        config.sample_limit = previous
