import math

import pytest

from quandles.constructors import divisible_family, order5_f3, q62, two_f_canonical
from quandles.iso import are_isomorphic
from quandles.quandle import is_cyclic_type, verify
from quandles.search import (RULES, STRUCTURED_RULES, SearchParams, brute_force_oracle,
                             candidate_count, enumerate_quandles, exponent_set,
                             feasibility_precheck, pattern_candidates, resolve_mode, same_classes)

# class counts and labelled totals computed by brute_force_oracle, frozen here
DERIVED = {
    (4, 2): (1, 3),
    (5, 3): (1, 30),
    (6, 2): (1, 30),
    (6, 3): (1, 40),
    (6, 4): (4, 220),
    (7, 4): (2, 1120),
    (7, 5): (5, 2205),
    (8, 4): (1, 1260),
    (8, 6): (11, 26145),
}


def run(n, f, **kw):
    return enumerate_quandles(SearchParams(n, f, **kw))


def test_params_validation():
    with pytest.raises(ValueError):
        SearchParams(5, 4)
    with pytest.raises(ValueError):
        SearchParams(5, 1)
    with pytest.raises(ValueError):
        SearchParams(6, 2, mode="fast")
    with pytest.raises(ValueError):
        SearchParams(6, 2, disabled={"nope"})
    assert SearchParams(6, 2, disabled={"structured"}).disabled == frozenset(STRUCTURED_RULES)
    assert SearchParams(6, 2, disabled={"all"}).disabled == frozenset(RULES)


def test_precheck():
    assert feasibility_precheck(6, 2)
    assert feasibility_precheck(28, 7).rule == "gcd-exponents"
    rules = lambda n, f: {r for r, _ in feasibility_precheck(n, f).reasons}  # noqa: E731
    assert "three-f" in rules(9, 3) and "three-f" in rules(12, 4)
    assert "c-gt-3" in rules(8, 2)
    assert feasibility_precheck(7, 3).rule == "divisibility"
    assert feasibility_precheck(7, 5)
    assert feasibility_precheck(8, 2, disabled={"closed-form"})
    assert exponent_set(6, 2) == [1, 3]


def test_resolve_mode():
    assert resolve_mode(6, 2, "auto") == "structured"
    assert resolve_mode(6, 3, "auto") == "structured"
    assert resolve_mode(6, 4, "auto") == "general"
    assert resolve_mode(6, 4, "brute") == "brute"


def test_pattern_candidates():
    for n, f in ((5, 3), (6, 2), (6, 4)):
        c = pattern_candidates(n, f, 0)
        assert len(c) == candidate_count(n, f) == math.comb(n - 1, n - f) * math.factorial(n - f - 1)
        assert c == sorted(c) and all(p[0] == 0 for p in c)
    assert pattern_candidates(6, 2, 1, fixed=[1, 3]) == [p for p in pattern_candidates(6, 2, 1)
                                                         if p[3] == 3]


@pytest.mark.parametrize("cell", sorted(DERIVED))
def test_regression_counts(cell):
    classes, labelings = DERIVED[cell]
    r = run(*cell)
    assert r.exhaustive
    assert r.class_count == classes
    assert r.total_labelings() == labelings
    for q in r.representatives:
        assert not verify(q.mus) and is_cyclic_type(q, cell[1])


def test_six_two_is_q62():
    r = run(6, 2)
    assert r.mode == "structured" and r.class_count == 1
    assert r.classes[0].connected and r.classes[0].automorphisms == 24
    assert are_isomorphic(r.representatives[0], q62())
    # two spaced candidates for mu_4 survive the filters, one of them dies
    assert [k for _, k in r.stats.top_level] == [0, 1]


def test_known_members_present():
    assert any(are_isomorphic(q, order5_f3()) for q in run(5, 3).representatives)
    assert any(are_isomorphic(q, divisible_family(6, 4)) for q in run(6, 4).representatives)
    assert any(are_isomorphic(q, divisible_family(8, 6)) for q in run(8, 6).representatives)


def test_oracle_matches_labelled_counts():
    for cell in ((4, 2), (5, 3), (6, 4)):
        b = brute_force_oracle(*cell)
        assert b.labeled_count == DERIVED[cell][1]
        assert same_classes(b, run(*cell))


def test_brute_range():
    with pytest.raises(ValueError):
        brute_force_oracle(9, 3)


def test_budget_marks_non_exhaustive():
    r = run(7, 5, budget_nodes=50)
    assert not r.exhaustive
    assert "non" not in r.machine_line() and r.machine_line().endswith("exhaustive=no")
    r = run(6, 4, mode="brute", budget_nodes=10)
    assert not r.exhaustive


def test_precheck_short_circuit_and_override():
    r = run(8, 2)
    assert r.class_count == 0 and r.exhaustive and r.stats.nodes == 0
    r = run(8, 2, ignore_precheck=True)
    assert r.class_count == 0 and r.exhaustive and r.stats.nodes > 0


def test_general_mode_agrees_at_n_2f():
    for f in (2, 3):
        g = run(2 * f, f, mode="general")
        assert g.class_count == 1
        assert are_isomorphic(g.representatives[0], two_f_canonical(f))


def test_jobs_do_not_change_results():
    for cell in ((6, 4), (7, 5), (6, 2)):
        a, b = run(*cell), run(*cell, jobs=2)
        assert a.machine_line() == b.machine_line()
        assert [q.key() for q in a.representatives] == [q.key() for q in b.representatives]
        assert a.stats.top_level == b.stats.top_level


def test_machine_line():
    assert run(6, 2).machine_line() == "result n=6 f=2 classes=1 labeled=1 exhaustive=yes"
