"""Quandles on {1..n} stored as their sequence of right-translation permutations.

``mus[i-1]`` is the permutation ``mu_i`` with ``mu_i(j) = j * i``.  A sequence
of permutations is a quandle exactly when every ``mu_i`` fixes ``i`` and
``mu_{mu_i(j)} = mu_i mu_j mu_i^-1`` for all ``i, j``.

Tables are row = left operand, column = right operand, entry ``a * b = mu_b(a)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation, conjugate, pattern

__all__ = [
    "AxiomViolation",
    "QuandleAxiomError",
    "Quandle",
    "Profile",
    "verify",
    "from_permutations",
    "from_table",
    "to_table",
    "profile",
    "is_cyclic_type",
    "cyclic_type_reason",
    "infer_cyclic_type",
    "relabel",
    "cyclic_pattern",
    "table_axiom_violations",
]

NOT_BIJECTION = "NotBijection"
IDEMPOTENCY = "Idempotency"
CONJUGATION = "Conjugation"


@dataclass(frozen=True)
class AxiomViolation:
    kind: str
    indices: tuple

    def __str__(self) -> str:
        if self.kind == NOT_BIJECTION:
            return f"mu_{self.indices[0]} is not a bijection"
        if self.kind == IDEMPOTENCY:
            i = self.indices[0]
            return f"mu_{i}({i}) != {i}"
        i, j = self.indices
        return f"mu_(mu_{i}({j})) != mu_{i} mu_{j} mu_{i}^-1"


class QuandleAxiomError(ValueError):
    """Raised when a well-formed sequence of maps fails the quandle axioms."""

    def __init__(self, violations: Sequence[AxiomViolation]):
        self.violations = list(violations)
        shown = "; ".join(str(v) for v in self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"not a quandle: {shown}{more}")


def _raw_maps(perms: Sequence) -> list:
    """Return 0-based image tuples; raises ValueError on malformed input only."""
    n = len(perms)
    out = []
    for idx, p in enumerate(perms, start=1):
        if isinstance(p, Permutation):
            raw = p.raw
        else:
            raw = tuple(int(x) - 1 for x in p)
        if len(raw) != n:
            raise ValueError(f"mu_{idx} has degree {len(raw)}, expected {n}")
        for x in raw:
            if not 0 <= x < n:
                raise ValueError(f"mu_{idx} has image {x + 1} outside 1..{n}")
        out.append(raw)
    return out


def _violations_raw(maps: list) -> list:
    n = len(maps)
    out = []
    bij = [len(set(m)) == n for m in maps]
    for i in range(n):
        if not bij[i]:
            out.append(AxiomViolation(NOT_BIJECTION, (i + 1,)))
    for i in range(n):
        if bij[i] and maps[i][i] != i:
            out.append(AxiomViolation(IDEMPOTENCY, (i + 1,)))
    for i in range(n):
        if not bij[i]:
            continue
        mi = maps[i]
        # mu_{mi(j)} o mi == mi o mu_j avoids building inverses
        for j in range(n):
            k = mi[j]
            if not (bij[j] and bij[k]):
                continue
            mk, mj = maps[k], maps[j]
            if any(mk[mi[x]] != mi[mj[x]] for x in range(n)):
                out.append(AxiomViolation(CONJUGATION, (i + 1, j + 1)))
    return out


def verify(perms: Sequence) -> list:
    """Every axiom violation of the sequence ``perms`` (empty iff it is a quandle).

    Items may be :class:`Permutation` objects or sequences of 1-based images;
    the latter can fail to be bijections, which is reported as a violation.
    """
    return _violations_raw(_raw_maps(perms))


class Quandle:
    """A finite quandle given by its permutations.  Always verified on construction."""

    __slots__ = ("_mus", "_hash")

    def __init__(self, mus: Iterable[Permutation], *, _verified: bool = False):
        mus = tuple(mus)
        if not mus:
            raise ValueError("a quandle needs at least one element")
        if not all(isinstance(m, Permutation) for m in mus):
            mus = tuple(Permutation(m) for m in mus)
        if not _verified:
            bad = verify(mus)
            if bad:
                raise QuandleAxiomError(bad)
        self._mus = mus
        self._hash = hash(tuple(m.raw for m in mus))

    @property
    def n(self) -> int:
        return len(self._mus)

    @property
    def mus(self) -> tuple:
        return self._mus

    def mu(self, i: int) -> Permutation:
        return self._mus[i - 1]

    def op(self, a: int, b: int) -> int:
        """``a * b``."""
        return self._mus[b - 1](a)

    def table(self) -> list:
        return to_table(self)

    def key(self) -> tuple:
        """Row-major table as a tuple; lexicographic order on these is the table order."""
        return tuple(tuple(row) for row in to_table(self))

    def __eq__(self, other) -> bool:
        return isinstance(other, Quandle) and self._mus == other._mus

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self._mus)

    def __repr__(self) -> str:
        return f"Quandle(n={self.n}, mus=[{', '.join(str(m) for m in self._mus)}])"


def from_permutations(perms: Sequence) -> Quandle:
    return Quandle(perms)


def to_table(q: Quandle) -> list:
    n = q.n
    return [[q.mus[b].raw[a] + 1 for b in range(n)] for a in range(n)]


def from_table(table: Sequence[Sequence[int]]) -> Quandle:
    n = len(table)
    if n == 0:
        raise ValueError("empty table")
    for r, row in enumerate(table, start=1):
        if len(row) != n:
            raise ValueError(f"row {r} has {len(row)} entries, expected {n} (table must be square)")
        for c, x in enumerate(row, start=1):
            if not 1 <= int(x) <= n:
                raise ValueError(f"entry {x} at row {r}, column {c} outside 1..{n}")
    columns = [[int(table[a][b]) for a in range(n)] for b in range(n)]
    bad = verify(columns)
    if bad:
        raise QuandleAxiomError(bad)
    return Quandle([Permutation(c) for c in columns], _verified=True)


@dataclass(frozen=True)
class Profile:
    patterns: tuple  # patterns[i-1] is the pattern of mu_i

    def multiset(self) -> Counter:
        return Counter(self.patterns)

    def is_constant(self) -> bool:
        return len(set(self.patterns)) == 1

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        parts = []
        for pat, k in sorted(self.multiset().items()):
            body = "{" + ",".join(map(str, pat)) + "}"
            parts.append(body if k == 1 else f"{body}x{k}")
        return " ".join(parts)


def profile(q: Quandle) -> Profile:
    return Profile(tuple(pattern(m) for m in q.mus))


def cyclic_pattern(n: int, f: int) -> tuple:
    return (1,) * f + (n - f,)


def cyclic_type_reason(q: Quandle, f: int):
    """``None`` when ``q`` is of cyclic type with ``f`` fixed points, otherwise why not."""
    n = q.n
    if not 1 < f <= n - 2:
        return f"f={f} outside the range 1 < f <= n-2 (n={n})"
    want = cyclic_pattern(n, f)
    for i, m in enumerate(q.mus, start=1):
        if pattern(m) != want:
            return f"mu_{i} has pattern {pattern(m)}, expected {want}"
    return None


def is_cyclic_type(q: Quandle, f: int) -> bool:
    return cyclic_type_reason(q, f) is None


def infer_cyclic_type(q: Quandle):
    """The fixed-point count f if ``q`` has constant cyclic-type profile, else ``None``."""
    prof = profile(q)
    if not prof.is_constant():
        return None
    f = q.n - prof.patterns[0][-1]
    return f if is_cyclic_type(q, f) else None


def relabel(q: Quandle, alpha: Permutation) -> Quandle:
    """The isomorphic copy of ``q`` obtained by renaming each element ``i`` to ``alpha(i)``."""
    if alpha.n != q.n:
        raise ValueError(f"relabeling of degree {alpha.n} for a quandle of order {q.n}")
    new = [None] * q.n
    for i, m in enumerate(q.mus):
        new[alpha.raw[i]] = conjugate(m, alpha)
    return Quandle(new, _verified=True)



def table_axiom_violations(table: Sequence[Sequence[int]]) -> list:
    """Check the three operation axioms directly on a table.

    Independent of :func:`verify`: works with ``a * b`` only.  Returns a list
    of ``(axiom, witness)`` pairs.
    """
    n = len(table)
    op = lambda a, b: table[a - 1][b - 1]  # noqa: E731
    out = []
    for a in range(1, n + 1):
        if op(a, a) != a:
            out.append(("idempotency", (a,)))
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            sols = [x for x in range(1, n + 1) if op(x, b) == a]
            if len(sols) != 1:
                out.append(("right-invertibility", (a, b)))
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for c in range(1, n + 1):
                if op(op(a, b), c) != op(op(a, c), op(b, c)):
                    out.append(("self-distributivity", (a, b, c)))
    return out
