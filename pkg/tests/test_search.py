import itertools

import numpy as np
import pytest

from grpd.core import Groupoid
from grpd.errors import GuardError
from grpd.search import search_tables
from grpd.terms import is_semigroup, satisfies_identity, scheme_identity


def all_idempotent_3():
    cells = [(i, j) for i in range(3) for j in range(3) if i != j]
    for values in itertools.product(range(3), repeat=6):
        table = np.zeros((3, 3), dtype=int)
        for d in range(3):
            table[d, d] = d
        for (i, j), v in zip(cells, values):
            table[i, j] = v
        yield Groupoid(("0", "1", "2"), table)


def oracle_counts(identities):
    satisfying = violations = 0
    first = None
    for idx, g in enumerate(all_idempotent_3()):
        if all(satisfies_identity(g, i)[0] for i in identities):
            satisfying += 1
            if not is_semigroup(g):
                violations += 1
                if first is None:
                    first = idx
    return satisfying, violations, first


def test_left_eq_right_4_matches_oracle():
    idents = [scheme_identity("left_eq_right", 4)]
    summary = search_tables(3, True, idents)
    sat, vio, first = oracle_counts(idents)
    assert (summary.satisfying, summary.violations) == (sat, vio) == (35, 0)
    assert summary.first_witness is None


def test_prefixed_pair_3_no_violations():
    idents = list(scheme_identity("prefixed_pair", 3))
    summary = search_tables(3, True, idents)
    assert summary.violations == 0
    assert summary.satisfying == oracle_counts(idents)[0]


def test_nulla_4_matches_oracle():
    idents = [scheme_identity("nulla", 4)]
    summary = search_tables(3, True, idents)
    sat, vio, first = oracle_counts(idents)
    assert (summary.satisfying, summary.violations) == (sat, vio)
    assert vio > 0
    assert summary.first_witness_index == first
    assert not is_semigroup(summary.first_witness)


def test_no_filter_counts_bands():
    summary = search_tables(3, True, [])
    bands = sum(1 for g in all_idempotent_3() if is_semigroup(g))
    assert summary.total == 729
    assert summary.satisfying == 729
    assert summary.violations == 729 - bands
    assert bands == 35


def test_general_size2():
    summary = search_tables(2, False, [])
    assert summary.total == 16
    nonassoc = summary.violations
    count = 0
    for values in itertools.product(range(2), repeat=4):
        g = Groupoid(("0", "1"), np.array(values).reshape(2, 2))
        if not is_semigroup(g):
            count += 1
    assert nonassoc == count


def test_threads_deterministic():
    idents = [scheme_identity("nulla", 4)]
    serial = search_tables(3, True, idents, threads=1, chunk=64)
    parallel = search_tables(3, True, idents, threads=2, chunk=64)
    assert serial.satisfying == parallel.satisfying
    assert serial.violations == parallel.violations
    assert serial.first_witness_index == parallel.first_witness_index


def test_chunking_invariance():
    idents = [scheme_identity("left_eq_right", 3)]
    a = search_tables(3, True, idents, chunk=17)
    b = search_tables(3, True, idents, chunk=100000)
    assert (a.satisfying, a.violations, a.first_witness_index) == (
        b.satisfying,
        b.violations,
        b.first_witness_index,
    )


def test_size_guards():
    with pytest.raises(GuardError):
        search_tables(5, True, [])
    with pytest.raises(GuardError):
        search_tables(4, False, [])


def test_unknown_check():
    with pytest.raises(ValueError, match="unknown check"):
        search_tables(3, True, [], check="bogus")


def test_alternate_check_predicate():
    # idempotent tables violating membership in the collapsing-product variety
    summary = search_tables(2, True, [], check="in_B")
    members = 0
    for values in itertools.product(range(2), repeat=2):
        table = np.array([[0, values[0]], [values[1], 1]])
        from grpd.terms import in_B

        members += in_B(Groupoid(("0", "1"), table))
    assert summary.total == 4
    assert summary.violations == 4 - members
