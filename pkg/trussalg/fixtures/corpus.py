"""
The negative corpus: every finite fixture with a table to corrupt is mutated
in one randomly chosen entry, so that it must be rejected with a witness.
Forks are mutated differently, by replacing one parallel arrow with another
morphism, which yields valid but (usually) non Barr-exact forks.
"""

import random

import numpy as np

from trussalg.errors import WitnessedError
from trussalg.exactness import Fork
from trussalg.heap_modules import HeapOfModules
from trussalg.heaps import FiniteGroup, FiniteHeap
from trussalg.iso import hom_morphisms
from trussalg.modules import PointedModule, TrussModule
from trussalg.morphisms import Morphism
from trussalg.structure import Structure
from trussalg.trusses import FiniteRing, FiniteTruss
from trussalg.utils.config import config
from trussalg.utils.debug import logger, logging_scope

ACTION_CLASSES = (TrussModule, PointedModule, HeapOfModules)


def _table(obj):
    """The table to corrupt, and a rebuild function of the corrupted table."""
    if isinstance(obj, Morphism):
        return np.array(obj.table, dtype=np.int64), lambda t: type(obj)(obj.dom, obj.cod, t.tolist(), name=obj.name)
    if isinstance(obj, FiniteGroup):
        return obj.table.copy(), lambda t: FiniteGroup(t, obj.zero, labels=obj._labels, name=obj.name)
    if isinstance(obj, FiniteHeap):
        return obj.table.copy(), lambda t: FiniteHeap(t, labels=obj._labels, name=obj.name)
    if isinstance(obj, FiniteRing):
        return obj.table.copy(), lambda t: FiniteRing(obj.group, t, unit=obj.unit, name=obj.name)
    if isinstance(obj, FiniteTruss):
        return obj.table.copy(), lambda t: FiniteTruss(obj.heap, t, unit=obj.unit, name=obj.name)
    if isinstance(obj, ACTION_CLASSES) and obj.exhaustive:
        cls = next(c for c in ACTION_CLASSES if isinstance(obj, c))
        return obj.action_table(), lambda t: cls(obj.scalars, obj.carrier, t, name=obj.name)
    return None, None


class Mutant:
    """
    A corrupted copy of a fixture.

    Attributes:
        name (str): The name of the mutated fixture.
        position (tuple): The corrupted table entry.
        value (int): The value written there.
    """

    def __init__(self, name, position, value, table, rebuild):
        self.name = name
        self.position = position
        self.value = value
        self._table = table
        self._rebuild = rebuild

    def __repr__(self):
        return f"<Mutant of {self.name} at {self.position} -> {self.value}>"

    def build(self):
        """
        Rebuild (and validate) the corrupted fixture.

        Raises:
            AxiomViolation, NotAMorphism: With a witness.
        """
        return self._rebuild(self._table.copy())

    def rejection(self):
        """WitnessedError, None: The error raised on rebuilding, if any."""
        try:
            self.build()
        except WitnessedError as exc:
            return exc
        return None


def _values(obj):
    if isinstance(obj, Morphism):
        return obj.cod.size
    if isinstance(obj, ACTION_CLASSES):
        return obj.carrier.size
    return obj.size


@logging_scope("Negative corpus")
def mutants(registry, seed=None, attempts=32):
    """
    Build one invalid mutant per mutable fixture of a registry.

    A mutation rewrites one random table entry with a different random
    value; mutations that happen to produce a valid structure are redrawn,
    up to `attempts` times.

    Returns:
        list<Mutant>: The mutants, in registration order.
    """
    rng = random.Random(config.random_seed if seed is None else seed)
    out = []
    for name, obj in registry.items():
        if not isinstance(obj, (Structure, Morphism)):
            continue
        table, rebuild = _table(obj)
        if table is None or table.size == 0 or _values(obj) < 2:
            continue
        for _ in range(attempts):
            position = tuple(rng.randrange(s) for s in table.shape)
            value = rng.choice([v for v in range(_values(obj)) if v != table[position]])
            corrupted = table.copy()
            corrupted[position] = value
            mutant = Mutant(name, position, value, corrupted, rebuild)
            if mutant.rejection() is not None:
                out.append(mutant)
                break
        else:
            logger.caveat(f"no invalid mutation of `{name}` found")
    return out


def fork_mutants(forks, seed=None):
    """
    Replace the second parallel arrow of each fork by another morphism
    (chosen at random among all morphisms with the same ends).

    Args:
        forks (iterable<Fork>): The forks to mutate.
        seed (int, None): The random seed (default: `config.random_seed`).

    Returns:
        list<Fork>: The mutated forks, named `<fork>~`.
    """
    rng = random.Random(config.random_seed if seed is None else seed)
    out = []
    for fork in forks:
        alternatives = [g for g in hom_morphisms(fork.M, fork.N) if g.table != fork.g.table]
        if not alternatives:
            continue
        g = rng.choice(alternatives)
        out.append(Fork(fork.f, g, fork.h, name=f"{fork.name}~"))
    return out


__all__ = ["Mutant", "fork_mutants", "mutants"]
