"""Structural analysis: fixed-point sets, connectedness, associate indices,
congruences and quotients, and the normal-form conditions for cyclic type."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

from .perm import (Permutation, compose, cycles, fixed_points, from_cycles,
                   inverse, moved_points, power)
from .quandle import Quandle, infer_cyclic_type, is_cyclic_type, relabel

__all__ = [
    "FixedPointData",
    "ConnectivityResult",
    "NonTransitiveAssociation",
    "ConditionReport",
    "fixed_point_data",
    "is_connected",
    "connectivity",
    "orbits",
    "are_associate",
    "association_classes",
    "association_is_transitive",
    "fixed_set_partition",
    "is_congruence",
    "quotient",
    "common_fixed_points",
    "normalize_labeling",
    "normalizing_bijection",
    "check_structure_conditions",
]


@dataclass(frozen=True)
class FixedPointData:
    F: tuple  # F[i-1] = fixed points of mu_i
    C: tuple  # C[i-1] = support of the non-singular cycle of mu_i, or None

    def fixed(self, i: int) -> frozenset:
        return self.F[i - 1]

    def cycle(self, i: int) -> frozenset:
        return self.C[i - 1]


def fixed_point_data(q: Quandle, with_cycles: bool = True) -> FixedPointData:
    """F_i for every element, and C_i too when ``q`` is of cyclic type.

    Asking for C on a quandle that is not of cyclic type raises ValueError;
    pass ``with_cycles=False`` to get only the fixed-point sets.
    """
    F = tuple(fixed_points(m) for m in q.mus)
    if not with_cycles:
        return FixedPointData(F, tuple(None for _ in F))
    if infer_cyclic_type(q) is None:
        raise ValueError("cycle sets C_i are only defined for quandles of cyclic type")
    return FixedPointData(F, tuple(moved_points(m) for m in q.mus))


@dataclass
class ConnectivityResult:
    connected: bool
    orbit: frozenset
    # words[x] = generator steps taking 1 to x; (i, +1) applies mu_i, (i, -1) its inverse
    words: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.connected

    def replay(self, q: Quandle, x: int) -> int:
        """Apply the recorded word for ``x`` to point 1; returns ``x`` for a valid certificate."""
        pt = 1
        for i, sign in self.words[x]:
            m = q.mu(i) if sign > 0 else inverse(q.mu(i))
            pt = m(pt)
        return pt


def connectivity(q: Quandle, start: int = 1) -> ConnectivityResult:
    n = q.n
    invs = [inverse(m) for m in q.mus]
    words = {start: ()}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(1, n + 1):
            for sign, m in ((1, q.mus[i - 1]), (-1, invs[i - 1])):
                y = m(x)
                if y not in words:
                    words[y] = words[x] + ((i, sign),)
                    queue.append(y)
    orbit = frozenset(words)
    return ConnectivityResult(len(orbit) == n, orbit, words)


def is_connected(q: Quandle) -> bool:
    return connectivity(q).connected


def orbits(q: Quandle) -> list:
    """Orbits of the group generated by the mu_i, sorted by minimum."""
    seen = set()
    out = []
    for x in range(1, q.n + 1):
        if x not in seen:
            orb = connectivity(q, x).orbit
            seen |= orb
            out.append(sorted(orb))
    return out


def are_associate(q: Quandle, i: int, j: int) -> bool:
    return i != j and q.op(j, i) == j and q.op(i, j) == i


class NonTransitiveAssociation(ValueError):
    def __init__(self, triple):
        self.triple = triple
        i, j, k = triple
        super().__init__(
            f"association is not transitive: {i}~{j} and {j}~{k} but not {i}~{k}"
        )


def _assoc_matrix(q: Quandle) -> list:
    n = q.n
    return [[a == b or are_associate(q, a, b) for b in range(1, n + 1)] for a in range(1, n + 1)]


def _transitivity_witness(rel):
    n = len(rel)
    for j in range(n):
        for i in range(n):
            if not rel[i][j] or i == j:
                continue
            for k in range(n):
                if rel[j][k] and not rel[i][k]:
                    return (i + 1, j + 1, k + 1)
    return None


def association_is_transitive(q: Quandle) -> bool:
    return _transitivity_witness(_assoc_matrix(q)) is None


def association_classes(q: Quandle) -> list:
    """Classes of "associate or equal", as sorted lists ordered by minimum.

    Raises NonTransitiveAssociation when the relation is not an equivalence.
    """
    rel = _assoc_matrix(q)
    bad = _transitivity_witness(rel)
    if bad is not None:
        raise NonTransitiveAssociation(bad)
    n = q.n
    out, seen = [], set()
    for a in range(n):
        if a in seen:
            continue
        cls = [b + 1 for b in range(n) if rel[a][b]]
        seen.update(b - 1 for b in cls)
        out.append(cls)
    return out


def fixed_set_partition(q: Quandle) -> list:
    """Elements grouped by equal fixed-point set of their permutation."""
    groups = {}
    for i, m in enumerate(q.mus, start=1):
        groups.setdefault(fixed_points(m), []).append(i)
    return sorted(groups.values())


def _canonical_partition(q: Quandle, partition) -> list:
    classes = [sorted(int(x) for x in c) for c in partition]
    if any(not c for c in classes):
        raise ValueError("partition has an empty class")
    flat = [x for c in classes for x in c]
    if sorted(flat) != list(range(1, q.n + 1)):
        raise ValueError(f"not a partition of 1..{q.n}")
    return sorted(classes)


def is_congruence(q: Quandle, partition) -> bool:
    classes = _canonical_partition(q, partition)
    cls_of = {x: idx for idx, c in enumerate(classes) for x in c}
    for c1 in classes:
        for c2 in classes:
            targets = {cls_of[q.op(a, b)] for a in c1 for b in c2}
            if len(targets) > 1:
                return False
    return True


def quotient(q: Quandle, partition) -> Quandle:
    """Quotient by a congruence; class k (ordered by minimum) becomes element k."""
    classes = _canonical_partition(q, partition)
    if not is_congruence(q, classes):
        raise ValueError("partition is not a congruence")
    cls_of = {x: idx for idx, c in enumerate(classes) for x in c}
    cols = [[cls_of[q.op(ca[0], cb[0])] + 1 for ca in classes] for cb in classes]
    return Quandle([Permutation(c) for c in cols])


def common_fixed_points(q: Quandle) -> frozenset:
    out = frozenset(range(1, q.n + 1))
    for m in q.mus:
        out &= fixed_points(m)
    return out


def normalizing_bijection(q: Quandle) -> Permutation:
    """Relabeling sending mu_n's long cycle to (1 2 ... n-f) and its fixed points to n-f+1..n.

    The cycle is read from its smallest moved point; fixed points keep their
    relative order, so n itself stays put.
    """
    n = q.n
    mu_n = q.mus[-1]
    moved = sorted(moved_points(mu_n))
    nontrivial = [c for c in cycles(mu_n) if len(c) > 1]
    if len(nontrivial) != 1:
        raise ValueError("mu_n must have exactly one non-singular cycle to normalize")
    cyc = nontrivial[0]
    fixed = sorted(fixed_points(mu_n))
    alpha = [0] * n
    for pos, x in enumerate(cyc):
        alpha[x - 1] = pos + 1
    for pos, x in enumerate(fixed):
        alpha[x - 1] = len(moved) + pos + 1
    return Permutation(alpha)


def normalize_labeling(q: Quandle) -> Quandle:
    return relabel(q, normalizing_bijection(q))


@dataclass
class ConditionReport:
    n: int
    f: int
    holds: dict  # condition number -> bool
    associate_exponents: dict = field(default_factory=dict)  # (h, h') -> l
    commutant: dict = field(default_factory=dict)  # m -> (k_m, sigma, tau)
    failures: dict = field(default_factory=dict)  # condition number -> first witness

    def __getitem__(self, k: int) -> bool:
        return self.holds[k]

    def all(self, conditions=(1, 2, 3, 4, 5, 6)) -> bool:
        return all(self.holds[c] for c in conditions)


def _canonical_mu_n(n: int, f: int) -> Permutation:
    return from_cycles(n, [list(range(1, n - f + 1))])


def check_structure_conditions(q: Quandle, f: int) -> ConditionReport:
    """Check the six normal-form conditions for a cyclic-type quandle.

    Condition 1 is literal: mu_n must already be (1 2 ... n-f); use
    :func:`normalize_labeling` first when it is not.
    """
    n = q.n
    if not 1 < f <= n - 2:
        raise ValueError(f"f={f} outside 1 < f <= n-2 (n={n})")
    if not is_cyclic_type(q, f):
        raise ValueError(f"quandle is not of cyclic type with {f} fixed points")
    L = n - f
    mu = lambda i: q.mus[i - 1]  # noqa: E731
    mu_n, mu_L = mu(n), mu(L)
    holds, fails = {}, {}

    holds[1] = mu_n == _canonical_mu_n(n, f)

    # 2: associate permutations are coprime powers of each other
    exps = {}
    ok = True
    for h in range(1, n + 1):
        for h2 in range(1, n + 1):
            if not are_associate(q, h, h2):
                continue
            found = None
            for l in range(1, L):
                if gcd(L, l) == 1 and power(mu(h2), l) == mu(h):
                    found = l
                    break
            if found is None:
                ok = False
                fails.setdefault(2, (h, h2))
            else:
                exps[(h, h2)] = found
    holds[2] = ok

    # 3: mu_k = mu_n^k mu_L mu_n^-k for 1 <= k <= L
    bad3 = [k for k in range(1, L + 1)
            if mu(k) != compose(compose(power(mu_n, k), mu_L), power(mu_n, -k))]
    holds[3] = not bad3
    if bad3:
        fails[3] = bad3[0]

    def shifted(e: int) -> Permutation:
        return compose(compose(power(mu_n, e), mu_L), power(mu_n, -e))

    F_n = sorted(fixed_points(mu_n))
    inv_L = inverse(mu_L)
    bad4 = [a for a in F_n if compose(compose(mu_L, mu(a)), inv_L) != shifted(mu_L(a))]
    holds[4] = not bad4
    if bad4:
        fails[4] = bad4[0]
    bad5 = [a for a in F_n if compose(compose(inv_L, mu(a)), mu_L) != shifted(inv_L(a))]
    holds[5] = not bad5
    if bad5:
        fails[5] = bad5[0]

    # 6: the twisted conjugate lies in the centraliser of mu_L as sigma * tau^k
    fixed_L = fixed_points(mu_L)
    cyc = [c for c in cycles(mu_L) if len(c) > 1][0]
    tau = from_cycles(n, [cyc])
    excluded = {inv_L(a) for a in F_n}
    commutant = {}
    ok6 = True
    for m in range(1, L + 1):
        if m in excluded:
            continue
        x = compose(compose(power(mu_n, -mu_L(m)), mu_L), power(mu_n, m))
        witness = _split_centraliser(x, tau, fixed_L)
        if witness is None or not 1 <= witness[0] < L:
            ok6 = False
            fails.setdefault(6, m)
        else:
            commutant[m] = witness + (tau,)
    holds[6] = ok6
    return ConditionReport(n, f, holds, exps, commutant, fails)


def _split_centraliser(x: Permutation, tau: Permutation, fixed: frozenset):
    """Write x = sigma * tau^k with sigma supported on ``fixed``; None if impossible."""
    support = moved_points(tau)
    for k in range(len(support)):
        tk = power(tau, k)
        sigma = compose(x, inverse(tk))
        if moved_points(sigma) <= fixed:
            return (k, sigma)
    return None

