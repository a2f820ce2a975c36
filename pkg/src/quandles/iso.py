"""Isomorphism testing and classification up to isomorphism.

A bijection alpha is an isomorphism Q -> Q' iff ``mu'_{alpha(i)} = alpha mu_i alpha^-1``
for every i, equivalently ``alpha(j * i) = alpha(j) *' alpha(i)``.  The search
assigns alpha element by element and propagates the second form: once
``alpha(i)`` and ``alpha(j)`` are known, ``alpha(j * i)`` is forced.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Sequence

from .perm import Permutation, conjugate, format_cycles
from .quandle import Quandle, profile

__all__ = [
    "IsoWitness",
    "IsoClass",
    "is_isomorphism",
    "find_isomorphism",
    "all_isomorphisms",
    "automorphism_count",
    "are_isomorphic",
    "dedup_up_to_iso",
    "brute_force_isomorphism",
    "invariant_signature",
]


def is_isomorphism(q: Quandle, q2: Quandle, alpha: Permutation) -> bool:
    if not (q.n == q2.n == alpha.n):
        return False
    a = alpha.raw
    return all(q2.mus[a[i]] == conjugate(q.mus[i], alpha) for i in range(q.n))


@dataclass(frozen=True)
class IsoWitness:
    alpha: Permutation
    source: Quandle = field(repr=False, compare=False)
    target: Quandle = field(repr=False, compare=False)

    def __post_init__(self):
        if not is_isomorphism(self.source, self.target, self.alpha):
            raise ValueError(f"{format_cycles(self.alpha)} is not an isomorphism")

    def inverse(self) -> "IsoWitness":
        return IsoWitness(~self.alpha, self.target, self.source)

    def mapping_line(self) -> str:
        return ", ".join(f"{i} -> {self.alpha(i)}" for i in range(1, self.alpha.n + 1))

    def __str__(self) -> str:
        return f"{format_cycles(self.alpha)}\n{self.mapping_line()}"


def _element_invariants(q: Quandle) -> list:
    """Per-element data preserved by every isomorphism."""
    n = q.n
    raw = [m.raw for m in q.mus]
    fixed = [frozenset(x for x in range(n) if r[x] == x) for r in raw]
    fixed_count = Counter(fixed)
    pats = profile(q).patterns
    out = []
    for i in range(n):
        stabilisers = sum(1 for j in range(n) if raw[j][i] == i)
        associates = sum(1 for j in fixed[i] if j != i and raw[j][i] == i)
        # image sizes of the left translation b -> i * b
        left = len({raw[b][i] for b in range(n)})
        out.append((pats[i], fixed_count[fixed[i]], associates, stabilisers, left))
    return out


def invariant_signature(q: Quandle) -> tuple:
    """Isomorphism invariant: order plus the sorted multiset of element invariants."""
    return (q.n, tuple(sorted(_element_invariants(q))))


def _search(q: Quandle, q2: Quandle) -> Iterator[tuple]:
    n = q.n
    if q2.n != n:
        return
    inv1, inv2 = _element_invariants(q), _element_invariants(q2)
    if sorted(inv1) != sorted(inv2):
        return
    m1 = [m.raw for m in q.mus]
    m2 = [m.raw for m in q2.mus]
    cands = [[t for t in range(n) if inv2[t] == inv1[i]] for i in range(n)]
    # fewest associates first, then smallest index
    order = sorted(range(n), key=lambda i: (inv1[i][2], i))

    alpha = [-1] * n
    beta = [-1] * n
    assigned = []

    def assign(i: int, t: int) -> bool:
        queue = [(i, t)]
        while queue:
            x, y = queue.pop()
            if alpha[x] >= 0:
                if alpha[x] != y:
                    return False
                continue
            if beta[y] >= 0 or inv1[x] != inv2[y]:
                return False
            alpha[x] = y
            beta[y] = x
            assigned.append(x)
            mx, my = m1[x], m2[y]
            for j in list(assigned):
                aj = alpha[j]
                # alpha(j * x) = alpha(j) *' alpha(x),  alpha(x * j) = alpha(x) *' alpha(j)
                queue.append((mx[j], my[aj]))
                queue.append((m1[j][x], m2[aj][y]))
        return True

    def undo(mark: int) -> None:
        while len(assigned) > mark:
            x = assigned.pop()
            beta[alpha[x]] = -1
            alpha[x] = -1

    def rec(pos: int):
        while pos < n and alpha[order[pos]] >= 0:
            pos += 1
        if pos == n:
            yield tuple(alpha)
            return
        i = order[pos]
        for t in cands[i]:
            if beta[t] >= 0:
                continue
            mark = len(assigned)
            if assign(i, t):
                yield from rec(pos + 1)
            undo(mark)

    for a in rec(0):
        perm = Permutation._from_raw(a)
        if is_isomorphism(q, q2, perm):
            yield perm


def all_isomorphisms(q: Quandle, q2: Quandle) -> Iterator[Permutation]:
    return _search(q, q2)


def find_isomorphism(q: Quandle, q2: Quandle):
    """An IsoWitness from ``q`` to ``q2``, or None when they are not isomorphic."""
    alpha = next(_search(q, q2), None)
    return None if alpha is None else IsoWitness(alpha, q, q2)


def are_isomorphic(q: Quandle, q2: Quandle) -> bool:
    return next(_search(q, q2), None) is not None


def automorphism_count(q: Quandle) -> int:
    return sum(1 for _ in _search(q, q))


def brute_force_isomorphism(q: Quandle, q2: Quandle):
    """Scan every bijection; only sensible for small orders."""
    if q.n != q2.n:
        return None
    for images in permutations(range(1, q.n + 1)):
        alpha = Permutation(images)
        if is_isomorphism(q, q2, alpha):
            return alpha
    return None


@dataclass
class IsoClass:
    representative: Quandle
    size: int = 1
    members: list = field(default_factory=list)  # input positions


def dedup_up_to_iso(quandles: Sequence[Quandle]) -> list:
    """Group ``quandles`` into isomorphism classes, keeping first-occurrence order.

    The representative of each class is the member with the lexicographically
    least table.
    """
    classes = []
    sigs = []
    for pos, q in enumerate(quandles):
        sig = invariant_signature(q)
        for cls, csig in zip(classes, sigs):
            if csig == sig and are_isomorphic(q, cls.representative):
                cls.size += 1
                cls.members.append(pos)
                if q.key() < cls.representative.key():
                    cls.representative = q
                break
        else:
            classes.append(IsoClass(q, 1, [pos]))
            sigs.append(sig)
    return classes
