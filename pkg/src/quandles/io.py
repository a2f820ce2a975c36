"""Text formats for quandles.

Table format::

    6
    1 5 1 6 4 2
    ...

Permutation-list format: the first line is ``n``, then line ``i`` holds
``mu_i`` in cycle notation.  Fixed points may be left out when reading and
are always written.  Lines starting with ``#`` are comments in both formats.
"""

from __future__ import annotations

from pathlib import Path

from .perm import format_cycles, parse_cycles
from .quandle import Quandle, QuandleAxiomError, from_table, to_table, verify

__all__ = [
    "ParseError",
    "format_table",
    "format_labeled_table",
    "format_permutation_list",
    "parse_table",
    "parse_permutation_list",
    "parse_quandle",
    "read_quandle",
    "write_quandle",
    "class_label",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


def format_table(q: Quandle) -> str:
    lines = [str(q.n)]
    lines += [" ".join(map(str, row)) for row in to_table(q)]
    return "\n".join(lines) + "\n"


def class_label(cls) -> str:
    return "{" + ",".join(map(str, sorted(cls))) + "}"


def format_labeled_table(q: Quandle, labels) -> str:
    """Table of ``q`` with element ``k`` printed as ``labels[k-1]`` (used for quotients)."""
    labels = [lab if isinstance(lab, str) else class_label(lab) for lab in labels]
    if len(labels) != q.n:
        raise ValueError(f"{len(labels)} labels for a quandle of order {q.n}")
    lines = [str(q.n)]
    lines += [" ".join(labels[x - 1] for x in row) for row in to_table(q)]
    return "\n".join(lines) + "\n"


def format_permutation_list(q: Quandle) -> str:
    return "\n".join([str(q.n)] + [format_cycles(m) for m in q.mus]) + "\n"


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield lineno, line


def _header(lines, what: str) -> int:
    if not lines:
        raise ParseError(f"empty {what}: expected the order n on the first line", 1)
    lineno, line = lines[0]
    tok = line.strip()
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(f"expected the order n, got {tok!r}", lineno, line.index(tok[0]) + 1) from None
    if n < 1:
        raise ParseError(f"order must be >= 1, got {n}", lineno, line.index(tok[0]) + 1)
    if len(lines) - 1 != n:
        last = lines[-1][0]
        raise ParseError(f"expected {n} lines after the header, found {len(lines) - 1}", last)
    return n


def parse_table(text: str) -> list:
    """Parse the table format into a list of rows; no axiom checks."""
    lines = list(_content_lines(text))
    n = _header(lines, "table")
    rows = []
    for lineno, line in lines[1:]:
        row = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"expected an integer, got {tok!r}", lineno, col + 1) from None
            if not 1 <= x <= n:
                raise ParseError(f"entry {x} outside 1..{n}", lineno, col + 1)
            row.append(x)
            col += len(tok)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", lineno)
        rows.append(row)
    return rows


def parse_permutation_list(text: str) -> list:
    """Parse the permutation-list format into a list of Permutations; no axiom checks."""
    lines = list(_content_lines(text))
    n = _header(lines, "permutation list")
    perms = []
    for lineno, line in lines[1:]:
        try:
            perms.append(parse_cycles(line, n))
        except ValueError as exc:
            col = line.index(line.strip()[0]) + 1
            raise ParseError(str(exc), lineno, col) from None
    return perms


def detect_format(text: str) -> str:
    lines = list(_content_lines(text))
    if len(lines) > 1 and "(" in lines[1][1]:
        return "perms"
    return "table"


def parse_quandle(text: str) -> Quandle:
    """Parse either format and check the axioms (QuandleAxiomError on failure)."""
    if detect_format(text) == "perms":
        perms = parse_permutation_list(text)
        bad = verify(perms)
        if bad:
            raise QuandleAxiomError(bad)
        return Quandle(perms, _verified=True)
    return from_table(parse_table(text))


def read_quandle(path) -> Quandle:
    return parse_quandle(Path(path).read_text())


def write_quandle(q: Quandle, path, fmt: str = "table") -> None:
    text = format_table(q) if fmt == "table" else format_permutation_list(q)
    Path(path).write_text(text)
