"""Named quandle families and the common-fixed-point surgeries."""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Permutation, compose, from_cycles, identity
from .quandle import Quandle, from_table, infer_cyclic_type, is_cyclic_type
from .structure import common_fixed_points

__all__ = [
    "FamilySpec",
    "NotCommuting",
    "trivial",
    "dihedral",
    "q62",
    "two_f_canonical",
    "divisible_family",
    "order5_f3",
    "build",
    "extract_common_fixed_point",
    "extract_unchecked",
    "adjoin_common_fixed_point",
    "iterate_adjoin",
    "FAMILIES",
]

Q62_TABLE = [
    [1, 5, 1, 6, 4, 2],
    [6, 2, 5, 2, 1, 3],
    [3, 6, 3, 5, 2, 4],
    [5, 4, 6, 4, 3, 1],
    [2, 3, 4, 1, 5, 5],
    [4, 1, 2, 3, 6, 6],
]

# order 5, three fixed points, common fixed point 1
ORDER5_TABLE = [
    [1, 1, 1, 1, 1],
    [2, 2, 2, 3, 3],
    [3, 3, 3, 2, 2],
    [5, 5, 5, 4, 4],
    [4, 4, 4, 5, 5],
]


def trivial(n: int) -> Quandle:
    if n < 1:
        raise ValueError("trivial quandle needs n >= 1")
    return Quandle([identity(n)] * n)


def dihedral(n: int) -> Quandle:
    """R_n: a * b = 2b - a mod n, residues 0..n-1 labelled 1..n."""
    if n < 2:
        raise ValueError("dihedral quandle needs n >= 2")
    cols = [[(2 * b - a) % n + 1 for a in range(n)] for b in range(n)]
    return Quandle([Permutation(c) for c in cols])


def q62() -> Quandle:
    return from_table(Q62_TABLE)


def order5_f3() -> Quandle:
    return from_table(ORDER5_TABLE)


def two_f_canonical(f: int) -> Quandle:
    """The order-2f quandle whose first f permutations are (f+1 ... 2f) and the rest (1 ... f)."""
    if f < 2:
        raise ValueError("two_f_canonical needs f >= 2")
    n = 2 * f
    upper = from_cycles(n, [list(range(f + 1, n + 1))])
    lower = from_cycles(n, [list(range(1, f + 1))])
    return Quandle([upper] * f + [lower] * f)


def divisible_family(n: int, f: int) -> Quandle:
    """Blocks of n-f equal permutations; block i cycles block i+1 (wrapping to 1)."""
    d = n - f
    if not (f + 2 <= n <= 2 * f):
        raise ValueError(f"divisible_family needs f+2 <= n <= 2f, got n={n}, f={f}")
    if f % d:
        raise ValueError(f"divisible_family needs (n-f) | f, but {d} does not divide {f}")
    blocks = n // d
    mus = []
    for i in range(1, blocks + 1):
        nxt = i % blocks  # block index i+1 read mod n/(n-f), 0-based start
        cyc = list(range(nxt * d + 1, (nxt + 1) * d + 1))
        mus += [from_cycles(n, [cyc])] * d
    return Quandle(mus)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    def build(self) -> Quandle:
        return build(self.family, *self.params)


FAMILIES = {
    "trivial": (trivial, 1),
    "dihedral": (dihedral, 1),
    "q62": (q62, 0),
    "two-f": (two_f_canonical, 1),
    "divisible": (divisible_family, 2),
    "order5": (order5_f3, 0),
}


def build(family: str, *params: int) -> Quandle:
    try:
        fn, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)


def extract_unchecked(q: Quandle, g0: int) -> Quandle:
    """Restrict every mu_i (i != g0) to Q minus g0, relabelled order-preservingly."""
    if g0 not in common_fixed_points(q):
        raise ValueError(f"{g0} is not a common fixed point")
    n = q.n
    keep = [x for x in range(1, n + 1) if x != g0]
    new_label = {x: k for k, x in enumerate(keep, start=1)}
    mus = [Permutation([new_label[q.op(x, i)] for x in keep]) for i in keep]
    return Quandle(mus)


def extract_common_fixed_point(q: Quandle, g0: int, f: int = None) -> Quandle:
    """Extraction with the cyclic-type hypotheses enforced (f > 2, f+2 <= n <= 2f)."""
    n = q.n
    if f is None:
        f = infer_cyclic_type(q)
        if f is None:
            raise ValueError("quandle is not of cyclic type")
    elif not is_cyclic_type(q, f):
        raise ValueError(f"quandle is not of cyclic type with {f} fixed points")
    if not (f > 2 and f + 2 <= n <= 2 * f):
        raise ValueError(f"extraction needs f > 2 and f+2 <= n <= 2f, got n={n}, f={f}")
    out = extract_unchecked(q, g0)
    if not is_cyclic_type(out, f - 1):
        raise AssertionError("extraction did not yield cyclic type")  # pragma: no cover
    return out


class NotCommuting(ValueError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"the adjoined permutation does not commute with mu_{index}")


def _extend(p: Permutation) -> Permutation:
    return Permutation(p.images + (p.n + 1,))


def adjoin_common_fixed_point(q: Quandle, mu: Permutation) -> Quandle:
    """Add element n+1 fixed by everything, with permutation ``mu`` extended."""
    if mu.n != q.n:
        raise ValueError(f"permutation has degree {mu.n}, quandle has order {q.n}")
    for i, m in enumerate(q.mus, start=1):
        if compose(mu, m) != compose(m, mu):
            raise NotCommuting(i)
    return Quandle([_extend(m) for m in q.mus] + [_extend(mu)])


def iterate_adjoin(q: Quandle, i0: int, k: int) -> Quandle:
    """Adjoin k common fixed points, each time using the extension of the original mu_{i0}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if not 1 <= i0 <= q.n:
        raise ValueError(f"i0={i0} outside 1..{q.n}")
    mu = q.mu(i0)
    for _ in range(k):
        q = adjoin_common_fixed_point(q, mu)
        mu = _extend(mu)
    return q
