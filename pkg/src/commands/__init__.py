"""CLI subcommands, one module per command family."""

from .bounds import register_bounds_commands
from .classify import register_classify_commands
from .gn import register_gn_commands
from .lemmas import register_lemma_commands
from .maolperm import register_maolperm_commands
from .selftest import register_selftest_commands
from .table1 import register_table1_commands

__all__ = [
    "register_bounds_commands",
    "register_classify_commands",
    "register_gn_commands",
    "register_lemma_commands",
    "register_maolperm_commands",
    "register_selftest_commands",
    "register_table1_commands",
]
