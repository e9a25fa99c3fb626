"""Canonical JSON serialization of sparse paving matroids (format version 1)."""

from __future__ import annotations

import json
from pathlib import Path

from .core import SparsePavingMatroid, validate
from .errors import ParseError

FORMAT_VERSION = 1


class FileFormatError(ParseError):
    pass


def to_dict(m: SparsePavingMatroid) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "n": m.n,
        "rank": m.r,
        "labels": list(m.labels),
        "circuit_hyperplanes": [m.names(h) for h in m.sorted_chs()],
    }


def dumps(m: SparsePavingMatroid) -> str:
    """Byte-stable text: one circuit hyperplane per line, members in element order."""
    d = to_dict(m)
    chs = ",\n".join("    " + json.dumps(h) for h in d["circuit_hyperplanes"])
    body = "\n" + chs + "\n  " if chs else ""
    return (
        "{\n"
        f'  "format_version": {FORMAT_VERSION},\n'
        f'  "n": {m.n},\n'
        f'  "rank": {m.r},\n'
        f'  "labels": {json.dumps(d["labels"])},\n'
        f'  "circuit_hyperplanes": [{body}]\n'
        "}\n"
    )


def from_dict(d: dict) -> SparsePavingMatroid:
    if not isinstance(d, dict):
        raise FileFormatError("matroid file must hold a JSON object")
    if d.get("format_version") != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {d.get('format_version')!r}")
    try:
        n, r, labels, chs = d["n"], d["rank"], d["labels"], d["circuit_hyperplanes"]
    except KeyError as exc:
        raise FileFormatError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(n, int) or not isinstance(r, int):
        raise FileFormatError("n and rank must be integers")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise FileFormatError("labels must be a list of strings")
    if not isinstance(chs, list) or not all(isinstance(h, list) for h in chs):
        raise FileFormatError("circuit_hyperplanes must be a list of label lists")
    if len(labels) != n:
        raise FileFormatError(f"n is {n} but {len(labels)} labels are given")
    index = {name: i for i, name in enumerate(labels)}
    masks = []
    for h in chs:
        if len(set(h)) != len(h):
            raise FileFormatError(f"repeated label in circuit hyperplane {h}")
        try:
            masks.append(sum(1 << index[x] for x in h))
        except KeyError as exc:
            raise FileFormatError(f"unknown label {exc.args[0]!r} in circuit hyperplane {h}") from None
    return validate(n, r, masks, labels)


def loads(text: str) -> SparsePavingMatroid:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return from_dict(d)


def read(path) -> SparsePavingMatroid:
    return loads(Path(path).read_text())


def write(m: SparsePavingMatroid, path) -> None:
    Path(path).write_text(dumps(m))
