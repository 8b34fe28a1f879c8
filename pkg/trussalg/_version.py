import os

try:
    from ._version_info import __version__, __version_tuple__
except ImportError:
    __version__ = "unknown"
    __version_tuple__ = (0, 0, 0, "+unknown")

__all__ = [
    "__author__",
    "__author_email__",
    "__version__",
    "__version_tuple__",
    "__docs_url__",
    "__fixtures__",
]

__author__ = "trussalg maintainers"
__author_email__ = "trussalg@users.noreply.github.com"
__docs_url__ = "https://github.com/trussalg/trussalg"
__fixtures__ = (
    os.path.join(os.path.dirname(__file__), "fixtures", "fixtures.heap")
    if "__file__" in globals()
    else None
)


# These are the core dependencies.
# Order matters since installation happens from the end of the list
__dependencies__ = [
    "interface_meta>=1.1.0,<2",  # Metaclass for the extensible `Structure` hierarchy
    "pyyaml",  # Verification suite manifests
    "decorator",  # Logging scopes and argument-checking decorators
    "progressbar2>=3.30.0",  # Support for progressbars in logging routines
    "jinja2",  # Text reports and `about()`
    "numpy",  # Operation tables of finite structures
    "pandas>=0.20.3",  # Verdict tables (basepoint sweeps, suite summaries)
]

__optional_dependencies__ = {
    # Documentation requirements
    "docs": [
        "sphinx",  # The documentation engine
        "sphinx_rtd_theme",  # The Spinx theme used by the docs
    ],
    "test": [
        "pytest",  # test runner
        "pytest-cov",  # test coverage monitoring
        "pytest-mock",  # mocking fixture
        "mock",  # mocking
        "hypothesis",  # property based law checks
        "flake8",  # Code linting
    ],
}
__optional_dependencies__["all"] = [
    dep for deps in __optional_dependencies__.values() for dep in deps
]
