"""Exact class-product computations for small finite groups."""

__version__ = "0.1.0"

from .errors import CforgeError
from .perm import Perm, PermGroup, bsgs_build
from .classes import ClassTable, conjugacy_classes
from .chartab import CharTable, character_table
from .zoo import GroupMeta, make_group, zsigmondy

__all__ = [
    "CforgeError",
    "Perm",
    "PermGroup",
    "bsgs_build",
    "ClassTable",
    "conjugacy_classes",
    "CharTable",
    "character_table",
    "GroupMeta",
    "make_group",
    "zsigmondy",
]
