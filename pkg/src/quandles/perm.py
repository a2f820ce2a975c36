"""Permutations of {1..n}.

Points are 1-based everywhere a caller can see them.  Images are stored
0-based in a tuple so the hot loops in :mod:`quandles.search` can work on
``Permutation.raw`` directly.

Composition applies the right argument first: ``compose(p, q)(x) == p(q(x))``,
which is also what ``p * q`` means.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "identity",
    "from_cycles",
    "from_images",
    "compose",
    "inverse",
    "power",
    "conjugate",
    "cycles",
    "pattern",
    "fixed_points",
    "moved_points",
    "parse_cycles",
    "format_cycles",
]


class Permutation:
    """An immutable bijection of {1..n}."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) - 1 for x in images)
        n = len(img)
        if n == 0:
            raise ValueError("a permutation needs degree n >= 1")
        if sorted(img) != list(range(n)):
            raise ValueError(f"images {tuple(x + 1 for x in img)} are not a bijection of 1..{n}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _from_raw(cls, raw: tuple) -> "Permutation":
        # trusted constructor, raw must already be a 0-based bijection
        p = object.__new__(cls)
        p._img = raw
        p._hash = hash(raw)
        return p

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def raw(self) -> tuple:
        """0-based image tuple."""
        return self._img

    @property
    def images(self) -> tuple:
        return tuple(x + 1 for x in self._img)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= len(self._img):
            raise ValueError(f"point {x} outside 1..{len(self._img)}")
        return self._img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self._img)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("identity needs n >= 1")
    return Permutation._from_raw(tuple(range(n)))


def from_images(images: Sequence[int]) -> Permutation:
    return Permutation(images)


def from_cycles(n: int, cycle_list: Iterable[Iterable[int]]) -> Permutation:
    """Build a permutation of degree *n* from disjoint cycles; omitted points are fixed."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    img = list(range(n))
    seen = set()
    for cyc in cycle_list:
        cyc = [int(x) for x in cyc]
        for x in cyc:
            if not 1 <= x <= n:
                raise ValueError(f"point {x} outside 1..{n}")
            if x in seen:
                raise ValueError(f"point {x} repeated in cycle notation")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._from_raw(tuple(img))


def _check_degree(p: Permutation, q: Permutation) -> None:
    if len(p._img) != len(q._img):
        raise ValueError(f"degree mismatch: {p.n} vs {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    _check_degree(p, q)
    pi = p._img
    return Permutation._from_raw(tuple(pi[x] for x in q._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p._img)
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation._from_raw(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    base = p if k >= 0 else inverse(p)
    k = abs(k)
    result = tuple(range(len(p._img)))
    b = base._img
    # square-and-multiply on tuples
    while k:
        if k & 1:
            result = tuple(b[x] for x in result)
        b = tuple(b[x] for x in b)
        k >>= 1
    return Permutation._from_raw(result)


def conjugate(p: Permutation, by: Permutation) -> Permutation:
    """``by * p * by^-1``."""
    _check_degree(p, by)
    a, pi = by._img, p._img
    out = [0] * len(pi)
    for x in range(len(pi)):
        out[a[x]] = a[pi[x]]
    return Permutation._from_raw(tuple(out))


def cycles(p: Permutation) -> list:
    """Disjoint cycles including fixed points, each starting at its minimum, sorted by minimum."""
    img = p._img
    seen = [False] * len(img)
    out = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = img[x]
        out.append(cyc)
    return out


def pattern(p: Permutation) -> tuple:
    return tuple(sorted(len(c) for c in cycles(p)))


def fixed_points(p: Permutation) -> frozenset:
    return frozenset(i + 1 for i, x in enumerate(p._img) if i == x)


def moved_points(p: Permutation) -> frozenset:
    return frozenset(i + 1 for i, x in enumerate(p._img) if i != x)


def format_cycles(p: Permutation) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse ``(1 2 3)(4)`` style text; ``()`` alone is the identity."""
    stripped = text.strip()
    residue = _CYCLE_RE.sub("", stripped)
    if residue.strip():
        raise ValueError(f"unexpected text {residue.strip()!r} in cycle notation")
    groups = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.replace(",", " ").split()
        try:
            groups.append([int(tok) for tok in body])
        except ValueError:
            raise ValueError(f"non-integer point in cycle ({' '.join(body)})") from None
    return from_cycles(n, groups)
