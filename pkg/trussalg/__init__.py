# flake8: noqa

from trussalg.registry import StructureRegistry
from trussalg.structure import Structure
from trussalg.utils.config import config
from trussalg.utils.debug import logger

from ._version import __author__, __author_email__, __docs_url__, __version__


def about():
    from collections import OrderedDict

    import numpy
    import pandas

    from .utils.about import show_about

    return show_about(
        "trussalg",
        version=__version__,
        maintainers=OrderedDict(
            zip(
                [a.strip() for a in __author__.split(",")],
                [a.strip() for a in __author_email__.split(",")],
            )
        ),
        attributes={
            "Documentation": __docs_url__,
        },
        description="""
        trussalg builds and verifies heaps, trusses, their modules and heaps of
        modules, together with the universal rings, limits, colimits, slices
        and exactness checks relating them. Finite structures are checked
        exhaustively, symbolic ones on an integer window.
        """,
        endorsements=[
            {"name": "numpy", "version": numpy.__version__},
            {"name": "pandas", "version": pandas.__version__},
        ],
    )
