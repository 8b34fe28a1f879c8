"""
The shipped fixtures: the structure file `fixtures.heap`, the symbolic
structures of `catalog`, the negative corpus of `corpus`, and the
verification suite manifest `suite.yaml`.
"""

import os

from trussalg.utils.config import config

FIXTURES_DIR = os.path.dirname(os.path.abspath(__file__))
SUITE_MANIFEST = os.path.join(FIXTURES_DIR, "suite.yaml")

config.register(
    "fixtures_path",
    description="The structure file loaded when no file is given on the command line.",
    default=os.path.join(FIXTURES_DIR, "fixtures.heap"),
    type=str,
)


def load_fixtures(path=None):
    """
    Load a structure file (by default the shipped fixtures) into a fresh
    registry.

    Returns:
        StructureRegistry: The registered declarations.
    """
    from trussalg.registry import StructureRegistry

    registry = StructureRegistry()
    registry.register_from_file(path or config.fixtures_path)
    return registry
