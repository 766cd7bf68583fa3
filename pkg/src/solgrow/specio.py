"""Group spec files: JSON-shaped descriptions of generating sets.

Format (one object per file, unknown fields rejected):

    {"variant": "perm",        "degree": m, "generators": [[images..], ..]}
    {"variant": "matfp",       "n": n, "p": p, "generators": [[[row], ..], ..]}
    {"variant": "matz",        "n": n, "generators": [[[row], ..], ..]}
    {"variant": "lamplighter", "generators": [{"lamps": [..], "head": h}, ..]}
    {"variant": "treeauto",    "depth": d, "arity": m,
                               "generators": [{"<path>": [images..], ..}, ..]}

Tree portrait keys are dot-separated child indices ("" for the root);
identity labels may be omitted. An optional "symmetric": bool field
(default true) controls whether inverses are adjoined automatically.
Round-trips are lossless: parse(serialize(X)) == X.
"""

from __future__ import annotations

import json
from typing import Any

from .elements import GenSet, GroupElement, Lamplighter, MatFp, MatZ, Perm, TreeAuto
from .errors import ParseError

_FIELDS = {
    "perm": {"variant", "degree", "generators", "symmetric"},
    "matfp": {"variant", "n", "p", "generators", "symmetric"},
    "matz": {"variant", "n", "generators", "symmetric"},
    "lamplighter": {"variant", "generators", "symmetric"},
    "treeauto": {"variant", "depth", "arity", "generators", "symmetric"},
}


def _path_key(path: tuple[int, ...]) -> str:
    return ".".join(str(x) for x in path)


def _parse_path(key: str) -> tuple[int, ...]:
    if key == "":
        return ()
    try:
        return tuple(int(x) for x in key.split("."))
    except ValueError as exc:
        raise ParseError(f"bad portrait path {key!r}") from exc


def parse_genset(obj: dict[str, Any]) -> GenSet:
    """Build a GenSet from a parsed spec object."""
    if not isinstance(obj, dict):
        raise ParseError("group spec must be a JSON object")
    variant = obj.get("variant")
    if variant not in _FIELDS:
        raise ParseError(f"unknown variant {variant!r}")
    extra = set(obj) - _FIELDS[variant]
    if extra:
        raise ParseError(f"unknown fields for {variant}: {sorted(extra)}")
    gens_raw = obj.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        raise ParseError("'generators' must be a nonempty list")
    symmetric = obj.get("symmetric", True)
    if not isinstance(symmetric, bool):
        raise ParseError("'symmetric' must be a boolean")

    elems: list[GroupElement] = []
    try:
        if variant == "perm":
            degree = int(obj["degree"])
            for imgs in gens_raw:
                if len(imgs) != degree:
                    raise ParseError("generator degree mismatch")
                elems.append(Perm(imgs))
        elif variant == "matfp":
            n, p = int(obj["n"]), int(obj["p"])
            for rows in gens_raw:
                elems.append(MatFp(n, p, rows))
        elif variant == "matz":
            n = int(obj["n"])
            for rows in gens_raw:
                elems.append(MatZ(n, rows))
        elif variant == "lamplighter":
            for g in gens_raw:
                if not isinstance(g, dict) or set(g) != {"lamps", "head"}:
                    raise ParseError("lamplighter generator needs lamps and head")
                elems.append(Lamplighter(g["lamps"], g["head"]))
        else:
            depth, arity = int(obj["depth"]), int(obj["arity"])
            for port in gens_raw:
                if not isinstance(port, dict):
                    raise ParseError("treeauto generator must be a portrait object")
                elems.append(
                    TreeAuto(depth, arity, {_parse_path(k): v for k, v in port.items()})
                )
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r} for variant {variant}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    return GenSet(elems, symmetric=symmetric)


def serialize_genset(gens: GenSet) -> dict[str, Any]:
    """Spec object for a GenSet; inverse of parse_genset."""
    first = gens.elements[0]
    obj: dict[str, Any] = {"variant": first.variant}
    if isinstance(first, Perm):
        obj["degree"] = first.degree
        obj["generators"] = [list(g.images) for g in gens.elements]  # type: ignore[attr-defined]
    elif isinstance(first, MatFp):
        obj["n"], obj["p"] = first.n, first.p
        obj["generators"] = [[list(r) for r in g.rows()] for g in gens.elements]  # type: ignore[attr-defined]
    elif isinstance(first, MatZ):
        obj["n"] = first.n
        obj["generators"] = [[list(r) for r in g.rows()] for g in gens.elements]  # type: ignore[attr-defined]
    elif isinstance(first, Lamplighter):
        obj["generators"] = [
            {"lamps": sorted(g.lamps), "head": g.head} for g in gens.elements  # type: ignore[attr-defined]
        ]
    elif isinstance(first, TreeAuto):
        obj["depth"], obj["arity"] = first.depth, first.arity
        obj["generators"] = [
            {_path_key(p): list(lab) for p, lab in sorted(g.portrait.items())}  # type: ignore[attr-defined]
            for g in gens.elements
        ]
    else:
        raise ParseError(f"cannot serialize variant {first.variant!r}")
    if not gens.symmetric:
        obj["symmetric"] = False
    return obj


def load_genset(path: str) -> GenSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_genset(obj)


def dump_genset(gens: GenSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(serialize_genset(gens), fh, indent=2, sort_keys=True)
        fh.write("\n")


def spec_digest(gens: GenSet) -> str:
    """Stable digest of a generating set, used in output metadata."""
    import hashlib

    blob = json.dumps(serialize_genset(gens), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
