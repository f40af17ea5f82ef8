"""Brute-force oracles and proof generators for differential testing.

Nothing here is trusted by the checker; it exists to check the checker.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import replace
from typing import Iterable, Iterator, Sequence

import numpy as np

from .clauses import Formula, normalize_clause, satisfies_clause, satisfies_formula, var
from .grit import Delete, DrupAction, DrupAdd, DrupDelete, Original, ProofAction, Rup

MAX_ENUM_VARS = 24
MAX_TREE_DEPTH = 24


class TooManyVariables(ValueError):
    pass


def _variables(clauses: Iterable[Iterable[int]]) -> list[int]:
    found = sorted(set(map(abs, itertools.chain.from_iterable(clauses))))
    if len(found) > MAX_ENUM_VARS:
        raise TooManyVariables(f"{len(found)} variables, enumeration bound is {MAX_ENUM_VARS}")
    return found


def _has_model(clauses: Sequence[Sequence[int]], normalized: bool = False) -> bool:
    variables = _variables(clauses)
    if any(len(c) == 0 for c in clauses):
        return False
    n = len(variables)
    axis = {v: i for i, v in enumerate(variables)}
    # assignments form an n-dimensional 0/1 cube (1 = variable true); each
    # clause is falsified on the subcube fixing its own variables
    falsified = np.zeros((2,) * n, dtype=bool)
    flat = falsified.reshape(-1)
    small: dict[tuple[int, ...], list[list[int]]] = {}
    for clause in clauses:
        lits = clause if normalized else sorted(set(clause), key=abs)
        vars_ = tuple(map(abs, lits))
        if len(set(vars_)) < len(vars_):
            continue
        if n - len(vars_) <= 6:
            small.setdefault(vars_, []).append(lits)
        else:
            index = [slice(None)] * n
            for lit in lits:
                index[axis[var(lit)]] = int(lit < 0)
            falsified[tuple(index)] = True
    for vars_, group in small.items():
        weights = np.array([1 << (n - 1 - axis[v]) for v in vars_], dtype=np.int64)
        corners = (np.asarray(group, dtype=np.int64).reshape(len(group), len(vars_)) < 0) @ weights
        offsets = np.zeros(1, dtype=np.int64)
        for i in set(range(n)).difference(axis[v] for v in vars_):
            offsets = np.concatenate([offsets, offsets + (1 << (n - 1 - i))])
        flat[(corners[:, None] + offsets[None, :]).ravel()] = True
    return not flat.all()


def brute_force_unsat(formula: Formula | Iterable[Iterable[int]]) -> bool:
    """True iff no assignment to the formula's variables satisfies it.

    Every clause marks the block of assignments falsifying it; the formula
    is unsatisfiable when all 2**n assignments are marked.
    """
    if isinstance(formula, Formula):
        return not _has_model(formula.clauses, normalized=True)
    return not _has_model([tuple(c) for c in formula])


def brute_force_entails(formula: Formula | Iterable[Iterable[int]], clause: Iterable[int]) -> bool:
    clause = tuple(clause)
    return not _has_model([tuple(c) for c in formula] + [(-l,) for l in clause])


def _valuations(variables: Sequence[int]) -> Iterator[dict[int, bool]]:
    # highest variable varies slowest: the reverse of the vectorized order
    order = list(reversed(variables))
    for values in itertools.product((False, True), repeat=len(order)):
        yield dict(zip(order, values))


def brute_force_unsat_naive(formula: Formula | Iterable[Iterable[int]]) -> bool:
    """Second, independently written enumerator using the literal semantics."""
    clauses = [tuple(c) for c in formula]
    return not any(satisfies_formula(v, clauses) for v in _valuations(_variables(clauses)))


def brute_force_entails_naive(formula: Formula | Iterable[Iterable[int]], clause: Iterable[int]) -> bool:
    clauses = [tuple(c) for c in formula]
    clause = tuple(clause)
    return all(
        satisfies_clause(v, clause)
        for v in _valuations(_variables(clauses + [clause]))
        if satisfies_formula(v, clauses)
    )


def naive_propagate(clauses: Iterable[Iterable[int]], assumptions: Iterable[int]) -> tuple[frozenset[int], bool]:
    """Unit propagation by repeated full scans; returns (true literals, conflict)."""
    clauses = [tuple(c) for c in clauses]
    true = set()
    for lit in assumptions:
        if -lit in true:
            return frozenset(true), True
        true.add(lit)
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            if any(l in true for l in clause):
                continue
            open_lits = [l for l in clause if -l not in true]
            if not open_lits:
                return frozenset(true), True
            if len(open_lits) == 1:
                true.add(open_lits[0])
                changed = True
    return frozenset(true), False


def complete_tree_formula(n: int) -> Formula:
    """All 2**n clauses over variables 1..n with every variable present."""
    if not 1 <= n <= MAX_TREE_DEPTH:
        raise ValueError(f"depth must be in 1..{MAX_TREE_DEPTH}, got {n}")
    # leaf i negates variable k exactly when bit n-k of i is set
    clauses = tuple(itertools.product(*((k, -k) for k in range(1, n + 1))))
    return Formula(clauses, n, len(clauses))


def _tree_proof(n: int, deletions: bool) -> Iterator[ProofAction]:
    leaf_ids = itertools.count(1)
    lemma_ids = itertools.count((1 << n) + 1)

    def node(prefix):
        if len(prefix) == n:
            cid = next(leaf_ids)
            yield Original(cid, prefix)
            return cid
        k = len(prefix) + 1
        low = yield from node(prefix + (k,))
        high = yield from node(prefix + (-k,))
        cid = next(lemma_ids)
        yield Rup(cid, prefix, (low, high))
        if deletions and prefix:
            yield Delete((low, high))
        return cid

    yield from node(())


def gen_complete_tree(n: int, deletions: bool = True) -> tuple[Formula, Iterator[ProofAction]]:
    """The full-width unsatisfiable formula on n variables and a GRIT refutation.

    The proof resolves sibling clauses bottom-up in depth-first order, so
    with deletions at most about 2n clauses are live at once.  The proof is
    returned as a lazy iterator.
    """
    formula = complete_tree_formula(n)
    return formula, _tree_proof(n, deletions)


def random_cnf(rng: random.Random, n_vars: int, n_clauses: int, width: int = 3) -> Formula:
    width = min(width, n_vars)
    clauses = []
    for _ in range(n_clauses):
        chosen = rng.sample(range(1, n_vars + 1), width)
        clauses.append([v if rng.random() < 0.5 else -v for v in chosen])
    return Formula.from_clauses(clauses, n_vars)


def dpll_refutation(
    formula: Formula,
    rng: random.Random | None = None,
    junk_rate: float = 0.0,
) -> list[DrupAction] | None:
    """Refute ``formula`` by DPLL and return the search tree as a DRUP trace.

    Every failed node contributes the negation of its decisions as a lemma,
    and both child lemmas are deleted once the parent is learnt.  With
    ``junk_rate`` some redundant weakenings of formula clauses are added so
    that trimming has something to drop.  Returns None if satisfiable.
    """
    rng = rng or random.Random(0)
    clauses = list(formula.clauses)
    if any(not c for c in clauses):
        return [DrupAdd(())]
    variables = sorted(formula.variables())
    trace: list[DrupAction] = []

    def propagate(assign: dict[int, bool]) -> bool:
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                free = None
                n_free = 0
                for lit in clause:
                    value = assign.get(var(lit))
                    if value is None:
                        n_free += 1
                        free = lit
                    elif value == (lit > 0):
                        break
                else:
                    if n_free == 0:
                        return False
                    if n_free == 1:
                        assign[var(free)] = free > 0
                        changed = True
        return True

    def junk():
        if clauses and rng.random() < junk_rate:
            base = rng.choice(clauses)
            extra = rng.choice(variables)
            lit = extra if rng.random() < 0.5 else -extra
            if -lit not in base:
                weakened = normalize_clause(base + (lit,))
                trace.append(DrupAdd(weakened))
                if rng.random() < 0.5:
                    trace.append(DrupDelete(weakened))

    def refute(decisions: tuple[int, ...]) -> tuple[int, ...] | None:
        assign = {var(d): d > 0 for d in decisions}
        lemma = normalize_clause(-d for d in decisions)
        if not propagate(assign):
            junk()
            trace.append(DrupAdd(lemma))
            return lemma
        free = [v for v in variables if v not in assign]
        if not free:
            return None
        x = rng.choice(free)
        first = x if rng.random() < 0.5 else -x
        left = refute(decisions + (first,))
        if left is None:
            return None
        right = refute(decisions + (-first,))
        if right is None:
            return None
        trace.append(DrupAdd(lemma))
        if decisions:
            trace.append(DrupDelete(left))
            trace.append(DrupDelete(right))
        return lemma

    if refute(()) is None:
        return None
    return trace


def random_unsat_instance(
    rng: random.Random,
    min_vars: int = 3,
    max_vars: int = 12,
    junk_rate: float = 0.0,
) -> tuple[Formula, list[DrupAction]]:
    """Draw random 3-CNFs above the threshold until one is unsatisfiable."""
    while True:
        n = rng.randint(min_vars, max_vars)
        ratio = rng.uniform(5.0, 9.0)
        formula = random_cnf(rng, n, max(2, int(ratio * n)), width=min(3, n))
        trace = dpll_refutation(formula, rng, junk_rate)
        if trace is not None:
            return formula, trace


MUTATIONS = ("drop", "permute", "literal", "swap_ids", "duplicate_id", "premature_delete")


def _defining(lines: list[ProofAction]) -> list[int]:
    return [i for i, a in enumerate(lines) if isinstance(a, (Original, Rup))]


def mutate_proof(proof: Iterable[ProofAction], seed: int, kind: str | None = None) -> list[ProofAction]:
    """Apply one deterministic mutation chosen from ``seed``.

    ``kind`` forces a mutation from :data:`MUTATIONS`, or ``"identity"``.
    When the chosen mutation has no target in the proof the copy is returned
    unchanged.
    """
    rng = random.Random(seed)
    lines = list(proof)
    kind = kind or rng.choice(MUTATIONS)
    if kind == "identity" or not lines:
        return lines
    defining = _defining(lines)

    if kind == "drop":
        del lines[rng.randrange(len(lines))]
    elif kind == "permute":
        targets = [i for i, a in enumerate(lines) if isinstance(a, Rup) and len(set(a.antecedents)) > 1]
        if targets:
            i = rng.choice(targets)
            ants = list(lines[i].antecedents)
            shuffled = ants[:]
            while shuffled == ants:
                rng.shuffle(shuffled)
            lines[i] = replace(lines[i], antecedents=tuple(shuffled))
    elif kind == "literal":
        if defining:
            i = rng.choice(defining)
            lines[i] = replace(lines[i], clause=_mutate_clause(rng, lines[i].clause))
    elif kind == "swap_ids":
        if len(defining) >= 2:
            i, j = rng.sample(defining, 2)
            a, b = lines[i], lines[j]
            lines[i], lines[j] = replace(a, id=b.id), replace(b, id=a.id)
    elif kind == "duplicate_id":
        if len(defining) >= 2:
            i, j = sorted(rng.sample(defining, 2))
            lines[j] = replace(lines[j], id=lines[i].id)
    elif kind == "premature_delete":
        if defining:
            i = rng.choice(defining)
            lines.insert(i + 1, Delete((lines[i].id,)))
    else:
        raise ValueError(f"unknown mutation {kind!r}")
    return lines


def _mutate_clause(rng: random.Random, clause: tuple[int, ...]) -> tuple[int, ...]:
    lits = list(clause)
    top = max((var(l) for l in lits), default=0) + 1
    choice = rng.randrange(4) if lits else 3
    if choice == 0:
        k = rng.randrange(len(lits))
        lits[k] = -lits[k]
    elif choice == 1:
        k = rng.randrange(len(lits))
        lits[k] = rng.randint(1, top) * (1 if lits[k] > 0 else -1)
    elif choice == 2:
        del lits[rng.randrange(len(lits))]
    else:
        lits.append(rng.randint(1, top) * rng.choice((1, -1)))
    return normalize_clause(lits)


def random_proof(rng: random.Random, formula: Formula, length: int) -> list[ProofAction]:
    """An unguided action sequence: formula clauses, made-up lemmas, deletions."""
    nvars = max(formula.max_var(), 1)
    lines: list[ProofAction] = []
    live: list[int] = []
    next_id = 1
    for _ in range(length):
        roll = rng.random()
        if roll < 0.35 and formula.clauses:
            cid = next_id if rng.random() < 0.9 or not live else rng.choice(live)
            next_id += 1
            lines.append(Original(cid, rng.choice(formula.clauses)))
            live.append(cid)
        elif roll < 0.85:
            size = rng.choice((0, 0, 1, 1, 2, 3))
            chosen = rng.sample(range(1, nvars + 1), min(size, nvars))
            clause = normalize_clause(v * rng.choice((1, -1)) for v in chosen)
            pool = live or [1]
            ants = tuple(rng.choice(pool) for _ in range(rng.randint(1, 4)))
            cid = next_id
            next_id += 1
            lines.append(Rup(cid, clause, ants))
            live.append(cid)
        elif live:
            victim = rng.choice(live)
            live.remove(victim)
            lines.append(Delete((victim,)))
    return lines
