import itertools

import numpy as np
import pytest

from grpd.catalog import catalog_get
from grpd.clone import (
    binary_clone_part,
    binary_minimality_proxy,
    binary_term_table,
    f2_table,
    find_relational_witness,
    generates_basic,
    is_trivial_clone,
)
from grpd.core import Groupoid, find_isomorphism, parse_groupoid
from grpd.terms import is_left_zero, is_right_zero, parse_term


def cat(name):
    return catalog_get(name).groupoid


LEFT_ZERO = Groupoid(("p", "q"), [[0, 0], [1, 1]])
RIGHT_ZERO = Groupoid(("p", "q"), [[0, 1], [0, 1]])
SINGLETON = Groupoid(("e",), [[0]])

# the two-generated free table of the collapsing-product variety:
# x(xy)=x(yx)=(xy)x=(xy)y=(xy)(yx)=xy over generators x, y
F2_B = parse_groupoid(
    """
    x y xy yx
    x xy xy xy
    yx y yx yx
    xy xy xy xy
    yx yx yx yx
    """
)


def test_clone_part_propd():
    part = binary_clone_part(cat("propD-F2"))
    assert len(part) == 4
    assert part.names == ("x", "y", "(x y)", "(y x)")


def test_clone_part_g1():
    part = binary_clone_part(cat("G1"))
    assert len(part) == 4
    # e1, e2, the product, and its dual
    assert part.names[part.basic_index] == "(x y)"
    duals = {op.entries.tobytes() for op in part.ops}
    swapped = np.ascontiguousarray(cat("G1").table.T).reshape(-1).tobytes()
    assert swapped in duals


def test_clone_part_left_zero():
    part = binary_clone_part(LEFT_ZERO)
    assert len(part) == 2
    assert part.basic_index == 0  # xy = x is the first projection


def test_clone_part_closed_under_product():
    for name in ("G1", "propD-F2", "f2cp-2", "aba-4", "aab-eps"):
        part = binary_clone_part(cat(name))
        for i in range(len(part)):
            for j in range(len(part)):
                assert 0 <= part.product(i, j) < len(part)


def test_clone_part_basic_is_e1_e2_product():
    for name in ("G1", "G6", "propD-F2"):
        g = cat(name)
        part = binary_clone_part(g)
        assert part.product(0, 1) == part.basic_index
        assert np.array_equal(part.ops[part.basic_index].as_array(), g.table)


def test_f2_fixed_point_propd():
    g = cat("propD-F2")
    assert find_isomorphism(f2_table(g), g) is not None


def test_f2_fixed_point_f2cp2():
    g = cat("f2cp-2")
    f2 = f2_table(g)
    assert f2.n == 4  # 2p operations
    assert find_isomorphism(f2, g) is not None


def test_f2_g1_matches_free_b_table():
    assert find_isomorphism(f2_table(cat("G1")), F2_B) is not None


def test_f2_twice_is_stable():
    for name in ("propD-F2", "f2cp-2"):
        g = cat(name)
        once = f2_table(g)
        assert find_isomorphism(f2_table(once), once) is not None


def test_trivial_clone():
    assert is_trivial_clone(RIGHT_ZERO)
    assert is_trivial_clone(LEFT_ZERO)
    assert is_trivial_clone(SINGLETON)
    assert not is_trivial_clone(cat("G3"))


def closure_is_projections_only(g):
    # a capped closure decides whether the part is exactly {e1, e2}:
    # anything bigger trips the guard or reports more ops
    from grpd.errors import GuardError

    try:
        part = binary_clone_part(g, guard=8)
    except GuardError:
        return False
    return len(part) == 2 and part.basic_index in (0, 1)


def test_trivial_clone_matches_closure_size():
    # oracle equivalence over all idempotent size-3 tables
    cells = [(i, j) for i in range(3) for j in range(3) if i != j]
    for values in itertools.product(range(3), repeat=6):
        table = np.zeros((3, 3), dtype=int)
        for d in range(3):
            table[d, d] = d
        for (i, j), v in zip(cells, values):
            table[i, j] = v
        g = Groupoid(("a", "b", "c"), table)
        assert closure_is_projections_only(g) == is_trivial_clone(g)
        assert is_trivial_clone(g) == (is_left_zero(g) or is_right_zero(g))


def test_trivial_clone_matches_closure_size4_sample():
    rng = np.random.default_rng(5)
    for _ in range(200):
        table = rng.integers(0, 4, size=(4, 4))
        np.fill_diagonal(table, range(4))
        g = Groupoid(("a", "b", "c", "d"), table)
        assert closure_is_projections_only(g) == is_trivial_clone(g)


def test_proxy_passes_on_g_entries():
    for i in range(1, 11):
        assert binary_minimality_proxy(cat(f"G{i}")).passes


def test_proxy_fails_on_aba4():
    verdict = binary_minimality_proxy(cat("aba-4"))
    assert not verdict.passes
    assert verdict.witness_name is not None
    g = cat("aba-4")
    x_yx = binary_term_table(g, parse_term("(x (y x))"))
    assert not generates_basic(g, x_yx)


def test_proxy_fails_on_aab_eps():
    g = cat("aab-eps")
    assert not binary_minimality_proxy(g).passes
    x_xy = binary_term_table(g, parse_term("(x (x y))"))
    assert not generates_basic(g, x_xy)


def test_proxy_requires_nontrivial_basic_op():
    with pytest.raises(ValueError, match="projection"):
        binary_minimality_proxy(LEFT_ZERO)


def test_generates_basic_via_dual():
    # the dual always regenerates the product: f = f^d(e2, e1)
    for name in ("G1", "G3", "aba-4"):
        g = cat(name)
        dual_op = binary_term_table(g, parse_term("(y x)"))
        assert generates_basic(g, dual_op)


def test_witness_aba4_partition():
    g = cat("aba-4")
    suspect = binary_term_table(g, parse_term("(x (y x))"))
    w = find_relational_witness(g, suspect)
    assert w is not None and w.kind == "partition"
    b, d = g.index("b"), g.index("d")
    assert (b, d) in w.payload.blocks


def test_witness_aab_subset():
    g = cat("aab-eps")
    suspect = binary_term_table(g, parse_term("(x (x y))"))
    w = find_relational_witness(g, suspect)
    assert w is not None and w.kind == "subset"
    assert w.payload == frozenset({g.index("a"), g.index("b"), g.index("e")})


def test_witness_none_for_basic_op_itself():
    g = cat("G1")
    f_op = binary_term_table(g, parse_term("(x y)"))
    assert find_relational_witness(g, f_op) is None


def test_binary_term_table_validates_vars():
    with pytest.raises(ValueError, match="x and y"):
        binary_term_table(cat("G1"), parse_term("(x z)"))
