import random

from hypothesis import given, settings
from hypothesis import strategies as st

from gritcheck import RupEngine, WorkingSet, check_rup, propagate
from gritcheck.rup import Assignment, used_antecedents
from gritcheck.testkit import brute_force_entails, naive_propagate, random_cnf

SAMPLE_ORIGINALS = {1: (1, 2), 2: (-1, 2), 3: (1, -2), 4: (-1, 3), 5: (-2, -3)}


def replays(db, clause, ids):
    w = WorkingSet()
    for cid, c in db.items():
        w.add(cid, tuple(c))
    return propagate(w, tuple(clause), ids)


def test_first_lemma():
    ids = check_rup(SAMPLE_ORIGINALS, (1,))
    assert ids is not None
    assert ids[-1] in SAMPLE_ORIGINALS
    assert replays(SAMPLE_ORIGINALS, (1,), ids)
    # only one pair of originals drives "1" to a conflict in one step
    assert sorted(ids) == [1, 3]


def test_empty_clause_from_units():
    ids = check_rup({5: (-2, -3), 7: (2,), 8: (3,)}, ())
    assert ids in ([7, 8, 5], [8, 7, 5])
    assert replays({5: (-2, -3), 7: (2,), 8: (3,)}, (), ids)


def test_unit_three_is_rup_over_originals():
    # -3 forces -1 via clause 4, then clause 1 forces 2 and clause 3 is falsified
    _, conflict = naive_propagate(list(SAMPLE_ORIGINALS.values()), [-3])
    assert conflict
    ids = check_rup(SAMPLE_ORIGINALS, (3,))
    assert ids is not None
    assert replays(SAMPLE_ORIGINALS, (3,), ids)


def test_absent_when_not_rup():
    assert check_rup({1: (1, 2)}, (1,)) is None
    assert check_rup({}, ()) is None
    assert check_rup({1: (1, 2), 2: (-1, 2)}, (2,)) is not None


def test_tautology_is_not_rup():
    assert check_rup({1: (1,)}, (2, -2)) is None


def test_stored_empty_clause():
    assert check_rup({4: (1,), 9: ()}, (1, 2)) == [9]


def test_used_antecedents_example():
    a = Assignment()
    a.assign(-1, None)
    a.decision_marker = 1
    a.assign(2, 2)
    db = {2: (1, 2), 3: (1, -2)}
    assert used_antecedents(3, a, db) == [2, 3]
    assert used_antecedents(3, a, db.get) == [2, 3]


def test_engine_reuse_and_removal():
    engine = RupEngine(SAMPLE_ORIGINALS)
    assert engine.check((1,)) is not None
    engine.add(6, (1,))
    engine.remove(1)
    engine.remove(3)
    ids = engine.check((2,))
    assert ids is not None and 1 not in ids and 3 not in ids
    engine.remove(6)
    assert engine.check((2,)) is None
    assert len(engine) == 3


def _random_query(rng):
    n = rng.randint(2, 7)
    f = random_cnf(rng, n, rng.randint(1, 14), rng.randint(1, 3))
    db = {i: c for i, c in enumerate(f.clauses, 1)}
    clause = tuple({rng.randint(1, n) * rng.choice((1, -1)) for _ in range(rng.randint(0, 2))})
    return f, db, clause


def test_agrees_with_naive_fixpoint_and_replays():
    rng = random.Random(3)
    found = 0
    for _ in range(3000):
        f, db, clause = _random_query(rng)
        ids = check_rup(db, clause)
        tautology = any(-l in clause for l in clause)
        _, conflict = naive_propagate(f.clauses, [-l for l in clause])
        assert (ids is not None) == (conflict and not tautology)
        if ids is not None:
            found += 1
            assert replays(db, clause, ids)
            assert len(set(ids)) == len(ids)
            assert brute_force_entails(f, clause)
    assert found > 300


@settings(max_examples=300)
@given(st.randoms(use_true_random=False))
def test_insertion_order_does_not_change_answer(rnd):
    f, db, clause = _random_query(random.Random(rnd.random()))
    items = list(db.items())
    rnd.shuffle(items)
    a = check_rup(db, clause)
    b = check_rup(dict(items), clause)
    assert (a is None) == (b is None)
    if b is not None:
        assert replays(db, clause, b)
