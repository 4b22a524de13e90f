"""
Sub-commands of the congruence-kit command line
Each module exposes setup_<name>_command(subparsers, parent) and a run function returning a Report
"""

import argparse
from typing import Union

from core.errors import InputError
from core.links import BraidWord, DBCReference, LinkDiagram, braid_closure
from core.surgery import SurgeryPresentation
from storage import LoadedInput, resolve_input
from views.report import Report

Manifold = Union[SurgeryPresentation, DBCReference]


def common_options() -> argparse.ArgumentParser:
    """Flags shared by every sub-command."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--json", action="store_true", help="machine-readable JSON output")
    parent.add_argument("--budget", type=int, default=None,
                        help="GL(n, Z_d) search budget (overrides CONGRUENCE_KIT_BUDGET)")
    parent.add_argument("--verbose", action="store_true", help="log progress to stderr")
    return parent


def load(report: Report, token: str) -> LoadedInput:
    loaded = resolve_input(token)
    report.add_input(token, loaded.digest)
    return loaded


def as_manifold(loaded: LoadedInput) -> Manifold:
    """Surgery presentations stay as they are; links stand for their double branched covers."""
    value = loaded.value
    if isinstance(value, (SurgeryPresentation, DBCReference)):
        return value
    if isinstance(value, LinkDiagram):
        return DBCReference(value, f"Σ_2({value})")
    if isinstance(value, BraidWord):
        return DBCReference(braid_closure(value), f"Σ_2({value})", value)
    raise InputError(f"{loaded.token} is not a manifold (got {type(value).__name__})", loaded.token)


def as_link(loaded: LoadedInput) -> LinkDiagram:
    value = loaded.value
    if isinstance(value, LinkDiagram):
        return value
    if isinstance(value, BraidWord):
        return braid_closure(value)
    if isinstance(value, DBCReference):
        return value.link
    raise InputError(f"{loaded.token} is not a link (got {type(value).__name__})", loaded.token)
