"""Exhaustive enumeration of quandles of cyclic type (order n, f fixed points).

Three engines:

* ``general`` -- backtracking over mu_1..mu_n.  Every assignment is closed
  under the rule ``mu_{mu_i(j)} = mu_i mu_j mu_i^-1``, which both forces new
  permutations and detects conflicts.  mu_n is fixed to (1 2 ... n-f) since
  any cyclic-type quandle can be relabelled that way.
* ``structured`` -- for n >= 2f.  Same engine, but the search branches first
  on mu_{n-f}, whose candidates are filtered by the structure results for
  n > 2f, and permutations of indices fixed by mu_n are restricted to coprime
  powers of mu_n.
* ``brute`` -- the oracle.  Generate-and-test over pattern-constrained
  columns, rejecting a partial assignment only when a self-distributivity
  instance whose three columns are all present fails.  No forcing.

Closed-form feasibility rules short-circuit the search; each one (and each
structured filter) can be switched off by name to re-derive it empirically.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .iso import are_isomorphic, automorphism_count, dedup_up_to_iso
from .perm import Permutation, format_cycles
from .quandle import Quandle, is_cyclic_type, verify
from .structure import association_is_transitive, is_connected

__all__ = [
    "CLOSED_FORM_RULES",
    "STRUCTURED_RULES",
    "RULES",
    "MODES",
    "SearchParams",
    "Feasibility",
    "SearchStats",
    "EnumerationResult",
    "ClassInfo",
    "feasibility_precheck",
    "enumerate_quandles",
    "brute_force_oracle",
    "pattern_candidates",
    "candidate_count",
    "resolve_mode",
    "BudgetExceeded",
    "same_classes",
    "exponent_set",
]

CLOSED_FORM_RULES = ("divisibility", "gcd-exponents", "three-f", "c-gt-3")
STRUCTURED_RULES = ("associate-powers", "fixed-spacing", "block-image", "cycle-spacing")
RULES = CLOSED_FORM_RULES + STRUCTURED_RULES
MODES = ("auto", "structured", "general", "brute")

DEFAULT_BUDGET_NODES = 10**8
DEFAULT_BUDGET_SECONDS = 600.0
BRUTE_MAX_N = 7


def _expand_rules(names) -> frozenset:
    out = set()
    for name in names or ():
        if name == "closed-form":
            out.update(CLOSED_FORM_RULES)
        elif name == "structured":
            out.update(STRUCTURED_RULES)
        elif name == "all":
            out.update(RULES)
        elif name in RULES:
            out.add(name)
        else:
            raise ValueError(f"unknown rule {name!r}; known: {', '.join(RULES)}, closed-form, structured, all")
    return frozenset(out)


def _check_range(n: int, f: int) -> None:
    if not (1 < f <= n - 2):
        raise ValueError(f"need n-2 >= f > 1, got n={n}, f={f}")


@dataclass
class SearchParams:
    n: int
    f: int
    mode: str = "auto"
    budget_nodes: int = DEFAULT_BUDGET_NODES
    budget_seconds: float = DEFAULT_BUDGET_SECONDS
    disabled: frozenset = frozenset()
    jobs: int = 1
    ignore_precheck: bool = False

    def __post_init__(self):
        _check_range(self.n, self.f)
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        self.disabled = _expand_rules(self.disabled)
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def enabled(self, rule: str) -> bool:
        return rule not in self.disabled


@dataclass
class Feasibility:
    feasible: bool
    reasons: list = field(default_factory=list)  # (rule, explanation)

    def __bool__(self) -> bool:
        return self.feasible

    @property
    def rule(self):
        return self.reasons[0][0] if self.reasons else None

    def __str__(self) -> str:
        if self.feasible:
            return "Feasible"
        return "Infeasible(" + "; ".join(f"{r}: {why}" for r, why in self.reasons) + ")"


def exponent_set(n: int, f: int) -> list:
    """Exponents 1 + j(n-f)/f, 0 <= j < f, that relate mu_{n-f} to its associates."""
    step = (n - f) // f
    return [1 + j * step for j in range(f)]


def feasibility_precheck(n: int, f: int, disabled=()) -> Feasibility:
    _check_range(n, f)
    disabled = _expand_rules(disabled)
    reasons = []
    if "divisibility" not in disabled and n >= 2 * f and n % f:
        reasons.append(("divisibility", f"n={n} >= 2f={2 * f} but f={f} does not divide n"))
    if n > 2 * f and n % f == 0:
        if "gcd-exponents" not in disabled:
            ls = exponent_set(n, f)
            bad = [l for l in ls if math.gcd(n - f, l) != 1]
            if bad:
                reasons.append(("gcd-exponents",
                                f"exponents {ls}: gcd({n - f}, {bad[0]}) = {math.gcd(n - f, bad[0])} != 1"))
        if "three-f" not in disabled and n == 3 * f and f > 2:
            reasons.append(("three-f", f"n = 3f with f={f} > 2"))
        if "c-gt-3" not in disabled and n // f > 3:
            reasons.append(("c-gt-3", f"n = {n // f}f with {n // f} > 3"))
    return Feasibility(not reasons, reasons)


def resolve_mode(n: int, f: int, mode: str) -> str:
    if mode == "auto":
        return "structured" if n >= 2 * f else "general"
    return mode


def pattern_candidates(n: int, f: int, i: int, fixed=None) -> list:
    """All permutations (0-based image tuples) with one (n-f)-cycle and f fixed points, fixing i.

    ``fixed`` (0-based points) pins the whole fixed-point set.  Sorted
    lexicographically on images.
    """
    L = n - f
    if fixed is not None:
        fixed = set(fixed)
        if len(fixed) != f or i not in fixed:
            return []
        supports = [tuple(x for x in range(n) if x not in fixed)]
    else:
        supports = combinations([x for x in range(n) if x != i], L)
    out = []
    for support in supports:
        first, rest = support[0], support[1:]
        for order in permutations(rest):
            cyc = (first,) + order
            img = list(range(n))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
            out.append(tuple(img))
    out.sort()
    return out


def candidate_count(n: int, f: int) -> int:
    """Size of ``pattern_candidates(n, f, i)`` for any i."""
    L = n - f
    return math.comb(n - 1, L) * math.factorial(L - 1)


def _canonical_mu_n(n: int, f: int) -> tuple:
    L = n - f
    return tuple([(x + 1) % L for x in range(L)] + list(range(L, n)))


def _raw_power(p: tuple, k: int) -> tuple:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = tuple(p[x] for x in out)
    return out


class BudgetExceeded(Exception):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    seconds: float = 0.0
    top_level: list = field(default_factory=list)  # (candidate, labeled quandles below it)
    notes: list = field(default_factory=list)


@dataclass
class ClassInfo:
    representative: Quandle
    labeled_found: int
    connected: bool
    association_transitive: bool
    automorphisms: int

    @property
    def labelings(self) -> int:
        return math.factorial(self.representative.n) // self.automorphisms


@dataclass
class EnumerationResult:
    n: int
    f: int
    mode: str
    classes: list
    labeled_count: int
    labeled_kind: str  # "all" labelings or "normalized" (mu_n fixed)
    exhaustive: bool
    stats: SearchStats
    feasibility: Feasibility
    disabled: frozenset = frozenset()

    @property
    def representatives(self) -> list:
        return [c.representative for c in self.classes]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def total_labelings(self) -> int:
        """Number of labelled quandles on {1..n} in the found classes, from automorphism counts."""
        return sum(c.labelings for c in self.classes)

    def machine_line(self) -> str:
        return (f"result n={self.n} f={self.f} classes={self.class_count} "
                f"labeled={self.labeled_count} exhaustive={'yes' if self.exhaustive else 'no'}")


class _State:
    """Partial assignment of permutations closed under the conjugation rule."""

    __slots__ = ("n", "mus", "trail")

    def __init__(self, n: int):
        self.n = n
        self.mus = [None] * n
        self.trail = []

    def assign(self, i: int, p: tuple) -> bool:
        mus = self.mus
        trail = self.trail
        rng = range(self.n)
        queue = [(i, p)]
        while queue:
            k, q = queue.pop()
            cur = mus[k]
            if cur is not None:
                if cur != q:
                    return False
                continue
            mus[k] = q
            trail.append(k)
            for j in trail:
                mj = mus[j]
                # mu_{q(j)} = q mj q^-1
                t = q[j]
                mt = mus[t]
                if mt is None:
                    r = [0] * self.n
                    for x in rng:
                        r[q[x]] = q[mj[x]]
                    queue.append((t, tuple(r)))
                else:
                    for x in rng:
                        if mt[q[x]] != q[mj[x]]:
                            return False
                # mu_{mj(k)} = mj q mj^-1
                t = mj[k]
                mt = mus[t]
                if mt is None:
                    r = [0] * self.n
                    for x in rng:
                        r[mj[x]] = mj[q[x]]
                    queue.append((t, tuple(r)))
                else:
                    for x in rng:
                        if mt[mj[x]] != mj[q[x]]:
                            return False
        return True

    def undo(self, mark: int) -> None:
        mus, trail = self.mus, self.trail
        while len(trail) > mark:
            mus[trail.pop()] = None

    def pick(self):
        """Unassigned index with the most commuting constraints; ties to the smallest."""
        best, score = None, -1
        mus = self.mus
        for i in range(self.n):
            if mus[i] is None:
                s = sum(1 for j in self.trail if mus[j][i] == i)
                if s > score:
                    best, score = i, s
        return best


class _Context:
    def __init__(self, budget_nodes: int, deadline: float):
        self.nodes = 0
        self.budget = budget_nodes
        self.deadline = deadline
        self.prunes = Counter()
        self.found = []

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("node budget")
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget")


class _Candidates:
    def __init__(self, n: int, f: int, structured: bool, disabled: frozenset):
        self.n, self.f = n, f
        self._base = {}
        self.powers = None
        L = n - f
        if structured and n >= 2 * f and "associate-powers" not in disabled:
            mu_n = _canonical_mu_n(n, f)
            self.powers = [_raw_power(mu_n, l) for l in range(1, L) if math.gcd(L, l) == 1]
        self.assoc_idx = set(range(L, n - 1))

    def __call__(self, i: int, ctx: _Context) -> list:
        if self.powers is not None and i in self.assoc_idx:
            ctx.prunes["associate-powers"] += candidate_count(self.n, self.f) - len(self.powers)
            return self.powers
        if i not in self._base:
            self._base[i] = pattern_candidates(self.n, self.f, i)
        return self._base[i]


def _dfs(state: _State, cands: _Candidates, ctx: _Context) -> None:
    i = state.pick()
    if i is None:
        ctx.found.append(tuple(state.mus))
        return
    for p in cands(i, ctx):
        ctx.tick()
        mark = len(state.trail)
        if state.assign(i, p):
            _dfs(state, cands, ctx)
        else:
            ctx.prunes["conjugation"] += 1
        state.undo(mark)


def _structured_filters(n: int, f: int, p: tuple, disabled: frozenset):
    """Name of the first structured rule rejecting mu_{n-f} = p, or None."""
    if n <= 2 * f:
        return None
    L = n - f
    fixed = {x + 1 for x in range(n) if p[x] == x}
    if "fixed-spacing" not in disabled:
        if L % f or fixed != {j * (L // f) for j in range(1, f + 1)}:
            return "fixed-spacing"
    image = {p[a] + 1 for a in range(L, n)}
    if "block-image" not in disabled:
        ok = fixed <= set(range(1, L + 1)) and image <= set(range(1, L + 1))
        if ok:
            ok = any(image == {(x + k - 1) % L + 1 for x in fixed} for k in range(L))
        if not ok:
            return "block-image"
    if "cycle-spacing" not in disabled:
        if L % f:
            return "cycle-spacing"
        start = next(x for x in range(n) if p[x] != x)
        order, x = [], start
        while True:
            order.append(x + 1)
            x = p[x]
            if x == start:
                break
        pos = sorted(order.index(y) for y in image)
        gaps = {(pos[(t + 1) % len(pos)] - pos[t]) % L for t in range(len(pos))}
        if gaps != {L // f}:
            return "cycle-spacing"
    return None


def _run_tasks(n, f, structured, disabled, seeds, tasks, budget_nodes, deadline):
    """Run each task (list of (index, perm) seeds) in order; returns per-task outcomes."""
    cands = _Candidates(n, f, structured, disabled)
    ctx = _Context(budget_nodes, deadline)
    outcomes = []
    exhausted = None
    for task in tasks:
        before = len(ctx.found)
        if exhausted is None:
            state = _State(n)
            ok = all(state.assign(i, p) for i, p in seeds)
            try:
                for i, p in task:
                    ctx.tick()
                    ok = ok and state.assign(i, p)
                if ok:
                    _dfs(state, cands, ctx)
                else:
                    ctx.prunes["conjugation"] += 1
            except BudgetExceeded as exc:
                exhausted = str(exc)
        outcomes.append(ctx.found[before:])
    return outcomes, ctx.nodes, ctx.prunes, exhausted


def _run_tasks_packed(args):
    return _run_tasks(*args)


def _classify(n, f, labeled: list) -> list:
    quandles = []
    for mus in labeled:
        perms = [Permutation._from_raw(m) for m in mus]
        bad = verify(perms)
        if bad:
            raise AssertionError(f"search produced a non-quandle: {bad[0]}")  # pragma: no cover
        q = Quandle(perms, _verified=True)
        if not is_cyclic_type(q, f):
            raise AssertionError("search produced a quandle of the wrong type")  # pragma: no cover
        quandles.append(q)
    out = []
    for cls in dedup_up_to_iso(quandles):
        rep = cls.representative
        out.append(ClassInfo(rep, cls.size, is_connected(rep), association_is_transitive(rep),
                             automorphism_count(rep)))
    return out


def enumerate_quandles(params: SearchParams) -> EnumerationResult:
    """All isomorphism classes of cyclic-type quandles of order n with f fixed points."""
    n, f = params.n, params.f
    mode = resolve_mode(n, f, params.mode)
    if mode == "brute":
        return brute_force_oracle(n, f, budget_nodes=params.budget_nodes,
                                  budget_seconds=params.budget_seconds)
    t0 = time.monotonic()
    stats = SearchStats()
    feas = feasibility_precheck(n, f, params.disabled)
    if not feas and not params.ignore_precheck:
        stats.prunes["precheck:" + feas.rule] += 1
        stats.seconds = time.monotonic() - t0
        return EnumerationResult(n, f, mode, [], 0, "normalized", True, stats, feas, params.disabled)

    structured = mode == "structured"
    L = n - f
    mu_n = _canonical_mu_n(n, f)
    seeds = [(n - 1, mu_n)]
    if structured:
        if n < 2 * f:
            stats.notes.append("structured filters need n >= 2f; running them disabled")
        branch = L - 1
        tasks, labels = [], []
        pool = None
        if n > 2 * f and "fixed-spacing" not in params.disabled:
            # generate straight from the forced fixed set instead of filtering
            spaced = [j * (L // f) - 1 for j in range(1, f + 1)] if L % f == 0 else None
            pool = pattern_candidates(n, f, branch, fixed=spaced) if spaced else []
            stats.prunes["fixed-spacing"] += candidate_count(n, f) - len(pool)
        for p in (pattern_candidates(n, f, branch) if pool is None else pool):
            rule = _structured_filters(n, f, p, params.disabled)
            if rule:
                stats.prunes[rule] += 1
                continue
            tasks.append([(branch, p)])
            labels.append(format_cycles(Permutation._from_raw(p)))
    else:
        state = _State(n)
        state.assign(*seeds[0])
        branch = state.pick()
        tasks = [[(branch, p)] for p in pattern_candidates(n, f, branch)]
        labels = [format_cycles(Permutation._from_raw(p)) for _, p in (t[0] for t in tasks)]

    deadline = t0 + params.budget_seconds
    jobs = params.jobs
    if jobs > 1 and len(tasks) > 1:
        chunk = max(1, math.ceil(len(tasks) / (jobs * 4)))
        groups = [tasks[k:k + chunk] for k in range(0, len(tasks), chunk)]
        per_budget = max(1, params.budget_nodes // len(groups))
        args = [(n, f, structured, params.disabled, seeds, g, per_budget, deadline) for g in groups]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_tasks_packed, args))
        outcomes, exhausted = [], None
        for outs, nodes, prunes, exh in parts:
            outcomes += outs
            stats.nodes += nodes
            stats.prunes.update(prunes)
            exhausted = exhausted or exh
    else:
        outcomes, nodes, prunes, exhausted = _run_tasks(
            n, f, structured, params.disabled, seeds, tasks, params.budget_nodes, deadline)
        stats.nodes += nodes
        stats.prunes.update(prunes)

    labeled = []
    for lab, out in zip(labels, outcomes):
        stats.top_level.append((lab, len(out)))
        labeled += out
    if exhausted:
        stats.notes.append(f"stopped early: {exhausted} exhausted")
    classes = _classify(n, f, labeled)
    stats.seconds = time.monotonic() - t0
    return EnumerationResult(n, f, mode, classes, len(labeled), "normalized", exhausted is None,
                             stats, feas, params.disabled)


def brute_force_oracle(n: int, f: int, budget_nodes: int = DEFAULT_BUDGET_NODES,
                       budget_seconds: float = DEFAULT_BUDGET_SECONDS,
                       max_n: int = BRUTE_MAX_N) -> EnumerationResult:
    """Independent generate-and-test enumeration of every labelled quandle (small n only).

    Columns are tried in index order; a partial assignment is rejected only
    when some instance of (a*b)*c = (a*c)*(b*c) with columns b, c and b*c all
    present fails.
    """
    _check_range(n, f)
    if n > max_n:
        raise ValueError(f"brute force limited to n <= {max_n} (got n={n}); raise max_n to override")
    t0 = time.monotonic()
    deadline = t0 + budget_seconds
    cols = [pattern_candidates(n, f, i) for i in range(n)]
    chosen = [None] * n
    found = []
    stats = SearchStats()
    ctx = _Context(budget_nodes, deadline)

    def consistent(c: int) -> bool:
        # every (b, d) pair with b, d, d(b) <= c that involves column c
        for d in range(c + 1):
            md = chosen[d]
            for b in range(c + 1):
                e = md[b]
                if e > c or c not in (b, d, e):
                    continue
                mb, me = chosen[b], chosen[e]
                for a in range(n):
                    if md[mb[a]] != me[md[a]]:
                        return False
        return True

    def rec(c: int) -> None:
        if c == n:
            found.append(tuple(chosen))
            return
        for p in cols[c]:
            ctx.tick()
            chosen[c] = p
            if consistent(c):
                rec(c + 1)
            else:
                ctx.prunes["self-distributivity"] += 1
        chosen[c] = None

    exhausted = None
    try:
        rec(0)
    except BudgetExceeded as exc:
        exhausted = str(exc)
    stats.nodes = ctx.nodes
    stats.prunes = ctx.prunes
    if exhausted:
        stats.notes.append(f"stopped early: {exhausted} exhausted")
    classes = _classify(n, f, found)
    stats.seconds = time.monotonic() - t0
    return EnumerationResult(n, f, "brute", classes, len(found), "all", exhausted is None, stats,
                             Feasibility(True), frozenset())


def same_classes(r1: EnumerationResult, r2: EnumerationResult) -> bool:
    """True iff the two results list the same isomorphism classes."""
    a, b = r1.representatives, r2.representatives
    if len(a) != len(b):
        return False
    unmatched = list(b)
    for q in a:
        for k, q2 in enumerate(unmatched):
            if are_isomorphic(q, q2):
                del unmatched[k]
                break
        else:
            return False
    return True

