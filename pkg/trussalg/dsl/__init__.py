from .builder import StructureBuilder
from .parser import Declaration, Statement, StructureFile, parse, tokenize
from .printer import dumps

__all__ = [
    "Declaration",
    "Statement",
    "StructureBuilder",
    "StructureFile",
    "dumps",
    "parse",
    "tokenize",
]
