"""Plain-text poset files.

::

    poset v1 n=3
    elements:
    a
    b
    c
    covers:
    a < c
    b < c

Blank lines and ``#`` comments are ignored.  Several posets may follow one
another in one file.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import CycleError, ParseError, UnknownElement
from .poset import Poset, poset_from_covers

__all__ = ["parse_poset", "parse_posets", "serialize_poset", "read_poset", "read_posets", "write_posets", "ID_RE"]

ID_RE = re.compile(r"^[A-Za-z0-9_]+$")
_HEADER = re.compile(r"^poset v1 n=(\d+)$")
_COVER = re.compile(r"^(\S+)\s*<\s*(\S+)$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_posets(text: str) -> list[Poset]:
    out: list[Poset] = []
    state = None
    n = 0
    elements: list[str] = []
    covers: list[tuple[str, str]] = []

    def finish(lineno: int) -> None:
        if state is None:
            return
        if len(elements) != n:
            raise ParseError(f"line {lineno}: header says n={n} but {len(elements)} elements listed")
        if len(set(elements)) != n:
            raise ParseError(f"line {lineno}: duplicate element ids")
        try:
            out.append(poset_from_covers(elements, covers))
        except (CycleError, UnknownElement) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc

    last = 0
    for lineno, line in _lines(text):
        last = lineno
        m = _HEADER.match(line)
        if m:
            finish(lineno)
            state, n, elements, covers = "header", int(m.group(1)), [], []
            continue
        if state is None:
            raise ParseError(f"line {lineno}: expected 'poset v1 n=<N>' header")
        if line == "elements:":
            state = "elements"
        elif line == "covers:":
            state = "covers"
        elif state == "elements":
            if not ID_RE.match(line):
                raise ParseError(f"line {lineno}: bad element id {line!r}")
            elements.append(line)
        elif state == "covers":
            c = _COVER.match(line)
            if not c:
                raise ParseError(f"line {lineno}: expected 'u < v', got {line!r}")
            u, v = c.groups()
            for x in (u, v):
                if x not in elements:
                    raise ParseError(f"line {lineno}: unknown element {x!r}")
            covers.append((u, v))
        else:
            raise ParseError(f"line {lineno}: unexpected {line!r}")
    finish(last)
    if not out:
        raise ParseError("no poset found")
    return out


def parse_poset(text: str) -> Poset:
    ps = parse_posets(text)
    if len(ps) != 1:
        raise ParseError(f"expected one poset, found {len(ps)}")
    return ps[0]


def serialize_poset(p: Poset) -> str:
    for x in p.elements:
        if not ID_RE.match(x):
            raise ValueError(f"element id {x!r} cannot be written")
    lines = [f"poset v1 n={p.n}", "elements:", *p.elements, "covers:"]
    lines += [f"{u} < {v}" for u, v in p.covers()]
    return "\n".join(lines) + "\n"


def read_posets(path) -> list[Poset]:
    return parse_posets(Path(path).read_text())


def read_poset(path) -> Poset:
    return parse_poset(Path(path).read_text())


def write_posets(posets, path) -> None:
    Path(path).write_text("\n".join(serialize_poset(p) for p in posets))
