"""
Catalog of named manifolds and links
Closed manifolds come back as surgery presentations or double branched covers
"""

import json
import logging
import os
import re
from functools import lru_cache
from typing import Dict, List, Union

import config
from core.burnside import GroupKind
from core.errors import InputError, InvalidDiagramError
from core.links import (BraidWord, DBCReference, LinkDiagram, braid_closure, reverse_component,
                        torus_braid, unlink)
from core.milnor import milnor_triple
from core.surgery import SurgeryCoefficient, SurgeryPresentation, unlink_presentation
from core.zmod import ZdModuleStructure

logger = logging.getLogger(__name__)

LINKS_FILE = "links.json"
NAME_PATTERN = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\(\s*([^()]*)\))?\s*$")

Entry = Union[SurgeryPresentation, DBCReference, LinkDiagram]


@lru_cache(maxsize=None)
def load_golden_links() -> Dict[str, Dict]:
    """Braid words and PD codes shipped in the data directory."""
    path = os.path.join(config.DATA_DIR, LINKS_FILE)
    try:
        with open(path, "r", encoding="utf-8") as f:
            entries = json.load(f)
        logger.info(f"Loaded {len(entries)} golden links from {path}")
        return entries
    except FileNotFoundError:
        logger.error(f"Golden link file not found: {path}")
        raise
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise


def golden_braid(name: str) -> BraidWord:
    entry = load_golden_links()[name]
    return BraidWord.from_json(entry["braid"])


def golden_link(name: str) -> LinkDiagram:
    entry = load_golden_links().get(name)
    if entry is None:
        raise InputError(f"no golden link named {name!r}")
    if "braid" in entry:
        return braid_closure(BraidWord.from_json(entry["braid"]), name=name)
    return LinkDiagram.from_json(entry["pd"], name=name)


@lru_cache(maxsize=None)
def standard_borromean() -> LinkDiagram:
    """Borromean rings oriented so that μ̄(123) = +1."""
    L = golden_link("Borromean")
    if milnor_triple(L) < 0:
        L = reverse_component(L, 0)
    return L


def _integers(args: List[str], name: str, count: int) -> List[int]:
    if len(args) != count:
        raise InputError(f"catalog entry {name} takes {count} argument(s), got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise InputError(f"catalog entry {name} needs integer arguments, got {args}") from None


def catalog(name: str) -> Entry:
    """
    Resolve a catalog name such as ``Lens(5,2)`` or ``Borromean``.

    Manifolds: S3, S1xS2, SumS1xS2(k), T3, Lens(p,q), Poincare, Sigma237.
    Links: Unlink(c), TorusLink(p,q), Borromean, Hopf, Trefoil and the other golden links.

    Raises:
        InputError: for an unknown name or bad arguments
    """
    match = NAME_PATTERN.match(name or "")
    if not match:
        raise InputError(f"malformed catalog name {name!r}")
    key = match.group(1).lower()
    args = [a.strip() for a in match.group(2).split(",")] if match.group(2) else []

    if key == "s3":
        _integers(args, "S3", 0)
        return SurgeryPresentation(triple=(), group_kind=GroupKind.free(0), label="S3")
    if key == "s1xs2":
        _integers(args, "S1xS2", 0)
        return unlink_presentation(["0"], label="S1xS2", group_kind=GroupKind.free(1))
    if key == "sums1xs2":
        (k,) = _integers(args, "SumS1xS2", 1)
        if k < 0:
            raise InputError(f"SumS1xS2 needs k >= 0, got {k}")
        return unlink_presentation(["0"] * k, label=f"#{k} S1xS2", group_kind=GroupKind.free(k))
    if key == "t3":
        _integers(args, "T3", 0)
        return SurgeryPresentation.from_parts(
            ["0", "0", "0"], triple={(0, 1, 2): 1}, label="T3", group_kind=GroupKind.abelian((0, 0, 0)))
    if key == "lens":
        if len(args) == 1:
            args = args + ["1"]
        p, q = _integers(args, "Lens", 2)
        if q == 0:
            raise InputError("Lens(p, q) needs q != 0")
        c = SurgeryCoefficient.of(p, q)
        return SurgeryPresentation.from_parts([c], triple=(), label=f"Lens({p},{q})", group_kind=GroupKind.abelian((p,)))
    if key == "poincare":
        _integers(args, "Poincare", 0)
        return DBCReference(braid_closure(torus_braid(3, 5), name="T(3,5)"), "Poincare", torus_braid(3, 5))
    if key == "sigma237":
        _integers(args, "Sigma237", 0)
        return DBCReference(braid_closure(torus_braid(3, 7), name="T(3,7)"), "Sigma237", torus_braid(3, 7))

    if key == "unlink":
        (c,) = _integers(args, "Unlink", 1)
        try:
            return unlink(c)
        except InvalidDiagramError as e:
            raise InputError(str(e)) from e
    if key == "toruslink":
        p, q = _integers(args, "TorusLink", 2)
        try:
            return braid_closure(torus_braid(p, q), name=f"T({p},{q})")
        except InvalidDiagramError as e:
            raise InputError(str(e)) from e
    if key == "borromean":
        _integers(args, "Borromean", 0)
        return standard_borromean()

    for golden in load_golden_links():
        if golden.lower() == key:
            _integers(args, golden, 0)
            return golden_link(golden)
    raise InputError(f"unknown catalog entry {name!r}")


def catalog_names() -> List[str]:
    return ["S3", "S1xS2", "SumS1xS2(k)", "T3", "Lens(p,q)", "Poincare", "Sigma237",
            "Unlink(c)", "TorusLink(p,q)"] + [n for n in load_golden_links() if n != "Borromean"] + ["Borromean"]


def montesinos_rank(c: int) -> ZdModuleStructure:
    """Z_2 homology forced on the double branched cover of any c-component link: Z_2^{c-1}."""
    if c < 1:
        raise InputError(f"a link needs at least one component, got {c}")
    return ZdModuleStructure.free(c - 1, 2)
