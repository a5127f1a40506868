"""The .bmx text format for binary matroids.

    # optional comment lines
    matroid <name>
    rank <r>
    elements <label> <label> ...
    row <bitstring>            (exactly r of these)

Bitstrings list the entries of a row in element order.  Files are ASCII
with LF line endings; emitting and re-parsing is bit-exact.
"""

from __future__ import annotations

import re

from .gf2 import MAX_DIM, BitMatrix, rank_of_rows
from .matroid import BinaryMatroid

_TOKEN = re.compile(r"[!-~]+")  # printable ASCII, no whitespace


class BmxParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def emit_matroid(m: BinaryMatroid) -> str:
    name = m.name or "unnamed"
    lines = [f"matroid {name}", f"rank {m.rank}", " ".join(["elements", *m.elements])]
    lines += [f"row {s}" for s in m.rep.to_strings()]
    return "\n".join(lines) + "\n"


def parse_matroid(text: str) -> BinaryMatroid:
    if not text.isascii():
        bad = next(i for i, ln in enumerate(text.split("\n"), 1) if not ln.isascii())
        raise BmxParseError(bad, "non-ASCII character")
    if "\r" in text:
        bad = next(i for i, ln in enumerate(text.split("\n"), 1) if "\r" in ln)
        raise BmxParseError(bad, "carriage return; LF line endings are required")
    body = [(i, ln) for i, ln in enumerate(text.split("\n"), 1) if ln.strip() and not ln.lstrip().startswith("#")]
    last = len(text.split("\n"))

    def expect(k: int, keyword: str) -> tuple[int, list[str]]:
        if k >= len(body):
            raise BmxParseError(last, f"missing '{keyword}' line")
        lineno, line = body[k]
        parts = line.split()
        if parts[0] != keyword:
            raise BmxParseError(lineno, f"expected '{keyword}', found {parts[0]!r}")
        return lineno, parts[1:]

    lineno, parts = expect(0, "matroid")
    if len(parts) != 1:
        raise BmxParseError(lineno, "matroid name must be a single token")
    name = parts[0]

    lineno, parts = expect(1, "rank")
    if len(parts) != 1 or not parts[0].isdigit():
        raise BmxParseError(lineno, "rank must be a non-negative integer")
    r = int(parts[0])
    if r > MAX_DIM:
        raise BmxParseError(lineno, f"rank {r} exceeds the supported {MAX_DIM}")

    lineno, labels = expect(2, "elements")
    if len(labels) > MAX_DIM:
        raise BmxParseError(lineno, f"{len(labels)} elements exceed the supported {MAX_DIM}")
    seen = set()
    for label in labels:
        if not _TOKEN.fullmatch(label):
            raise BmxParseError(lineno, f"bad element label {label!r}")
        if label in seen:
            raise BmxParseError(lineno, f"duplicate element label {label!r}")
        seen.add(label)

    rows = []
    for k in range(r):
        lineno, parts = expect(3 + k, "row")
        if len(parts) != 1:
            raise BmxParseError(lineno, f"row {k + 1} must be a single bitstring")
        bitstring = parts[0]
        if set(bitstring) - {"0", "1"}:
            raise BmxParseError(lineno, f"row {k + 1} has non-binary characters")
        if len(bitstring) != len(labels):
            raise BmxParseError(lineno, f"row {k + 1} has length {len(bitstring)}, expected {len(labels)}")
        rows.append(sum(1 << j for j, ch in enumerate(bitstring) if ch == "1"))
    if len(body) > 3 + r:
        lineno, line = body[3 + r]
        raise BmxParseError(lineno, f"unexpected line after {r} rows: {line.split()[0]!r}")
    if rank_of_rows(rows) != r:
        raise BmxParseError(lineno, f"rows are dependent: their rank is {rank_of_rows(rows)}, not {r}")
    return BinaryMatroid(labels, BitMatrix(r, len(labels), tuple(rows)), name)


def read_matroid(path) -> BinaryMatroid:
    with open(path, "r", encoding="ascii", errors="surrogateescape", newline="") as fh:
        return parse_matroid(fh.read())


def write_matroid(m: BinaryMatroid, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(emit_matroid(m))
