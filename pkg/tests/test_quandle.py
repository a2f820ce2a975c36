import pytest
from hypothesis import given
from hypothesis import strategies as st

from quandles.constructors import dihedral, order5_f3, q62, trivial
from quandles.perm import Permutation, from_cycles, identity
from quandles.quandle import (Quandle, QuandleAxiomError, cyclic_type_reason, from_table,
                              infer_cyclic_type, is_cyclic_type, profile, relabel,
                              table_axiom_violations, to_table, verify)


def test_table_orientation():
    q = q62()
    # row a, column b holds a * b = mu_b(a)
    assert q.op(1, 2) == 5 == q.mu(2)(1)
    assert to_table(q)[0] == [1, 5, 1, 6, 4, 2]


def test_verify_reports_kinds():
    bad = verify([[2, 1], [1, 2]])
    assert {v.kind for v in bad} >= {"Idempotency"}
    bad = verify([Permutation([1, 2, 3]), from_cycles(3, [[1, 3]]), from_cycles(3, [[1, 2]])])
    assert any(v.kind == "Conjugation" for v in bad)
    bad = verify([[1, 1], [2, 2]])
    assert bad[0].kind == "NotBijection"


def test_verify_malformed_input():
    with pytest.raises(ValueError):
        verify([[1, 2, 3], [1, 2]])
    with pytest.raises(ValueError):
        verify([[1, 5], [1, 2]])


def test_quandle_rejects_violations():
    with pytest.raises(QuandleAxiomError) as exc:
        Quandle([identity(3), from_cycles(3, [[1, 3]]), from_cycles(3, [[1, 2]])])
    assert exc.value.violations


def test_from_table_errors():
    with pytest.raises(ValueError):
        from_table([])
    with pytest.raises(ValueError):
        from_table([[1, 2], [2]])
    with pytest.raises(QuandleAxiomError):
        from_table([[1, 6, 1, 6, 4, 2]] + to_table(q62())[1:])


def test_profile_and_type():
    q = q62()
    assert profile(q).is_constant()
    assert str(profile(q)) == "{1,1,4}x6"
    assert infer_cyclic_type(q) == 2
    assert is_cyclic_type(q, 2) and not is_cyclic_type(q, 3)
    assert infer_cyclic_type(trivial(4)) is None
    assert cyclic_type_reason(q, 5) is not None
    assert infer_cyclic_type(order5_f3()) == 3


def test_dihedral_is_quandle_and_r4_cyclic():
    for n in range(2, 10):
        assert not verify(dihedral(n).mus)
    assert infer_cyclic_type(dihedral(4)) == 2


@given(st.permutations(range(1, 7)))
def test_relabel_is_quandle_with_same_profile(img):
    q = q62()
    r = relabel(q, Permutation(img))
    assert not verify(r.mus)
    assert profile(r).multiset() == profile(q).multiset()


def test_table_axioms_match_verify_on_small_magmas():
    # all 2x2 tables with entries in {1,2}
    from itertools import product
    for entries in product((1, 2), repeat=4):
        t = [list(entries[:2]), list(entries[2:])]
        cols = [[t[a][b] for a in range(2)] for b in range(2)]
        assert (not table_axiom_violations(t)) == (not verify(cols))
