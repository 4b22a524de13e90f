"""
Storage module for congruence-kit inputs
Reads JSON input files and catalog tokens, and writes the canonical JSON used for digests
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

from core.burnside import BurnsideCertificate, GroupKind
from core.catalog import catalog
from core.cup import TrilinearFormZd
from core.errors import (CongruenceKitError, InputError, InvalidDiagramError, InvalidFormError,
                         InvalidPresentationError)
from core.links import BraidWord, DBCReference, LinkDiagram, braid_closure
from core.surgery import SurgeryCoefficient, SurgeryPresentation
from core.zmod import IntMatrix

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"

Resolved = Union[SurgeryPresentation, DBCReference, LinkDiagram, BraidWord, TrilinearFormZd, BurnsideCertificate]


@dataclass(frozen=True)
class LoadedInput:
    """A resolved input together with the token it came from and its digest."""

    token: str
    value: Resolved
    digest: str


# --- canonical JSON ---

def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


# --- codecs ---

def coefficient_from_json(value: Any) -> SurgeryCoefficient:
    """A slope given as ``[p, q]``, ``"p/q"`` or a plain integer."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise InvalidPresentationError(f"surgery coefficient pair needs [p, q], got {value!r}")
        return SurgeryCoefficient.of(int(value[0]), int(value[1]))
    return SurgeryCoefficient.parse(value)


def _zero_based(ijk: Any) -> tuple:
    indices = tuple(int(x) for x in ijk)
    if any(x < 1 for x in indices):
        raise InvalidPresentationError(f"triple indices are 1-based, got {list(indices)}")
    return tuple(x - 1 for x in indices)


def presentation_to_json(P: SurgeryPresentation) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "type": "surgery",
        "coeffs": [[c.p, c.q] for c in P.coeffs],
        "linking": P.linking.to_json(),
    }
    if P.triple is not None:
        data["triple"] = [{"ijk": [i + 1 for i in idx], "value": v} for idx, v in P.triple]
    if P.group_kind is not None:
        kind = P.group_kind
        data["pi1"] = {"free": kind.rank} if kind.kind == "free" else {"abelian": list(kind.factors)}
    if P.label:
        data["label"] = P.label
    return data


def presentation_from_json(data: Dict[str, Any]) -> SurgeryPresentation:
    """
    Decode a surgery presentation. Triple indices ``ijk`` are 1-based.

    Raises:
        InvalidPresentationError: for values that break the presentation's invariants
        ValueError / KeyError / TypeError: for structurally malformed data
    """
    coeffs = [coefficient_from_json(c) for c in data["coeffs"]]
    n = len(coeffs)
    linking = IntMatrix.from_json(data["linking"]) if data.get("linking") is not None else IntMatrix.zeros(n, n)
    triple = None
    if data.get("triple") is not None:
        triple = [(_zero_based(e["ijk"]), int(e["value"])) for e in data["triple"]]
    kind = None
    pi1 = data.get("pi1")
    if pi1 is not None:
        if "free" in pi1:
            kind = GroupKind.free(int(pi1["free"]))
        elif "abelian" in pi1:
            kind = GroupKind.abelian([int(f) for f in pi1["abelian"]])
        else:
            raise ValueError(f"pi1 must give 'free' or 'abelian', got {sorted(pi1)}")
    return SurgeryPresentation(tuple(coeffs), linking, triple, group_kind=kind, label=data.get("label", ""))


def to_json(value: Resolved) -> Dict[str, Any]:
    """Canonical JSON of any resolved input."""
    if isinstance(value, SurgeryPresentation):
        return presentation_to_json(value)
    if isinstance(value, DBCReference):
        data = {"type": "dbc", "pd": value.link.to_json()}
        if value.braid is not None:
            data["braid"] = value.braid.to_json()
        return data
    if isinstance(value, LinkDiagram):
        return {"type": "pd", **value.to_json()}
    if isinstance(value, BraidWord):
        return {"type": "braid", **value.to_json()}
    if isinstance(value, TrilinearFormZd):
        return {"type": "form", **value.to_json()}
    if isinstance(value, BurnsideCertificate):
        return {"type": "certificate", **value.to_dict()}
    raise TypeError(f"cannot serialise {type(value).__name__}")


def input_kind(data: Dict[str, Any]) -> Optional[str]:
    """The explicit "type" field, otherwise the kind implied by the document's keys."""
    if "type" in data:
        return data["type"]
    if "coeffs" in data:
        return "surgery"
    if "crossings" in data:
        return "pd"
    if "strands" in data and "word" in data:
        return "braid"
    if "images" in data and "group" in data:
        return "certificate"
    if "entries" in data or ("d" in data and "n" in data):
        return "form"
    return None


def from_json(data: Dict[str, Any], source: str = "") -> Resolved:
    """
    Decode an input document by its "type" field or, without one, by its keys.

    Raises:
        InputError: for unknown types or malformed content
    """
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object", source)
    kind = input_kind(data)
    try:
        if kind == "surgery":
            return presentation_from_json(data)
        if kind == "dbc":
            if "braid" in data:
                braid = BraidWord.from_json(data["braid"])
                return DBCReference(braid_closure(braid), data.get("label", ""), braid)
            return DBCReference(LinkDiagram.from_json(data["pd"]), data.get("label", ""))
        if kind == "pd":
            return LinkDiagram.from_json(data)
        if kind == "braid":
            return BraidWord.from_json(data)
        if kind == "form":
            return TrilinearFormZd.from_json(data)
        if kind == "certificate":
            return BurnsideCertificate.from_dict(data)
    except (InvalidPresentationError, InvalidDiagramError, InvalidFormError) as e:
        raise InputError(str(e), source) from e
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed {kind} input: {e}", source) from e
    raise InputError(f"unknown input type {kind!r}; expected surgery, dbc, pd, braid, form or certificate", source)


# --- files and tokens ---

def load_json_file(path: str) -> Any:
    """
    Parse a JSON file.

    Raises:
        InputError: when the file is missing or not valid JSON (with line and column)
    """
    if not os.path.exists(path):
        logger.error(f"Input file not found: {path}")
        raise InputError("file not found", path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        logger.info(f"Loaded input from {path}")
        return data
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {path}: {e}")
        raise InputError(e.msg, path, e.lineno, e.colno) from e


def resolve_input(token: str) -> LoadedInput:
    """
    Resolve a ``catalog:<name>`` token or a path to a JSON input file.

    Raises:
        InputError: for unknown catalog names, missing files or malformed content
    """
    if token.startswith(CATALOG_PREFIX):
        try:
            value = catalog(token[len(CATALOG_PREFIX):])
        except InputError:
            raise
        except CongruenceKitError as e:
            raise InputError(str(e), token) from e
    else:
        value = from_json(load_json_file(token), token)
    return LoadedInput(token, value, digest(to_json(value)))


def save_json(data: Any, path: Optional[str] = None) -> str:
    """Pretty JSON text; written to ``path`` when given."""
    text = json.dumps(data, indent=2, ensure_ascii=False)
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Saved JSON to {path}")
    return text
