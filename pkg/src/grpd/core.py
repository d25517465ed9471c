"""Finite groupoids: tables, .gpd text I/O, and structural utilities.

A groupoid here is a finite set with one binary operation given by an
n x n table (row = left factor).  Elements are dense indices 0..n-1
internally; display names live in a side table so the hot loops stay
index-only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import GuardError, ParseError

PARTITION_MAX_N = 12  # Bell(12) ~ 4.2e6
ISO_MAX_N = 9         # 9! = 362880 bijections


@dataclass(frozen=True)
class Groupoid:
    """A finite set with named elements and a multiplication table.

    ``table[i, j]`` is the index of (element i) * (element j).
    Instances are immutable; the table array is marked read-only.
    """

    names: tuple[str, ...]
    table: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        n = len(names)
        if n < 1:
            raise ValueError("groupoid needs at least one element")
        if len(set(names)) != n:
            raise ValueError("element names must be pairwise distinct")
        table = np.asarray(self.table, dtype=np.int64)
        if table.shape != (n, n):
            raise ValueError(f"table must be {n}x{n}, got {table.shape}")
        if table.size and (table.min() < 0 or table.max() >= n):
            raise ValueError("table entry out of range")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    def prod(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def __eq__(self, other):
        return (
            isinstance(other, Groupoid)
            and self.names == other.names
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.names, self.table.tobytes()))

    def __repr__(self):
        return f"Groupoid({len(self.names)} elements: {' '.join(self.names)})"


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on {0,..,n-1} given by its blocks.

    Blocks are stored sorted internally (each block ascending, blocks
    ordered by smallest member) so equal partitions compare equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        seen = [x for b in blocks for x in b]
        n = len(seen)
        if sorted(seen) != list(range(n)):
            raise ValueError("blocks must be disjoint and cover 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_ids(self) -> list[int]:
        """Element index -> id of its block (ids follow block order)."""
        ids = [0] * self.n
        for k, b in enumerate(self.blocks):
            for x in b:
                ids[x] = k
        return ids

    def is_all_singletons(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __repr__(self):
        inner = " | ".join(",".join(map(str, b)) for b in self.blocks)
        return f"Partition({inner})"


@dataclass(frozen=True)
class Isomorphism:
    """A product-preserving bijection, possibly onto the dual."""

    mapping: tuple[int, ...]
    dual: bool = False


@dataclass(frozen=True)
class SubsetWitness:
    """A relation (partition or index subset) separating two operations.

    The payload is preserved by ``preserved_by`` but violated by
    ``violated_by``; the two operation identifiers must differ.
    """

    kind: str  # "partition" or "subset"
    payload: object
    preserved_by: str
    violated_by: str

    def __post_init__(self):
        if self.kind not in ("partition", "subset"):
            raise ValueError(f"bad witness kind {self.kind!r}")
        if self.preserved_by == self.violated_by:
            raise ValueError("witness must separate two distinct operations")
        if self.kind == "subset" and not self.payload:
            raise ValueError("subset payload must be nonempty")


# ---------------------------------------------------------------------------
# .gpd text format


def parse_groupoid(text: str) -> Groupoid:
    """Parse the .gpd table format.

    ``#`` starts a comment; blank lines are skipped.  The first
    significant line lists the n element names, the next n lines give
    the table rows (entries are element names, row = left factor).
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines:
        raise ParseError("empty document")
    names = tuple(lines[0].split())
    n = len(names)
    if len(set(names)) != n:
        dupe = next(nm for nm in names if names.count(nm) > 1)
        raise ParseError(f"duplicate element name {dupe!r}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} table rows, got {len(rows)}")
    index = {nm: i for i, nm in enumerate(names)}
    table = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != n:
            raise ParseError(f"row length mismatch in row {i + 1}: expected {n} entries, got {len(tokens)}")
        for j, tok in enumerate(tokens):
            if tok not in index:
                raise ParseError(f"unknown element {tok!r} in row {i + 1}")
            table[i, j] = index[tok]
    return Groupoid(names, table)


def write_groupoid(g: Groupoid) -> str:
    """Render a groupoid in the .gpd format (bit-exact writer)."""
    lines = [" ".join(g.names)]
    for i in range(g.n):
        lines.append(" ".join(g.names[g.table[i, j]] for j in range(g.n)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural utilities


def dual(g: Groupoid) -> Groupoid:
    """The dual groupoid: same elements, arguments swapped (table transposed)."""
    return Groupoid(g.names, g.table.T.copy())


def is_idempotent(g: Groupoid) -> bool:
    """True iff x*x = x for every element."""
    return bool(np.array_equal(np.diagonal(g.table), np.arange(g.n)))


def generate_subuniverse(g: Groupoid, seeds) -> frozenset[int]:
    """Smallest superset of ``seeds`` closed under the product."""
    seeds = set(seeds)
    if not seeds:
        raise ValueError("seeds must be nonempty")
    if any(not (0 <= s < g.n) for s in seeds):
        raise ValueError("seed index out of range")
    closed = set(seeds)
    frontier = list(seeds)
    while frontier:
        new = set()
        for a in frontier:
            for b in closed:
                new.add(g.prod(a, b))
                new.add(g.prod(b, a))
        new -= closed
        closed |= new
        frontier = list(new)
    return frozenset(closed)


def enumerate_partitions(n: int):
    """Yield every partition of {0,..,n-1} exactly once.

    Enumeration follows restricted-growth strings in lexicographic
    order, so the first partition is all-in-one-block and the last is
    all singletons.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > PARTITION_MAX_N:
        raise GuardError(f"partition enumeration capped at n={PARTITION_MAX_N}")

    def rec(i, rgs, maxid):
        if i == n:
            nblocks = maxid + 1
            blocks = [[] for _ in range(nblocks)]
            for x, b in enumerate(rgs):
                blocks[b].append(x)
            yield Partition(tuple(tuple(b) for b in blocks))
            return
        for b in range(maxid + 2):
            rgs.append(b)
            yield from rec(i + 1, rgs, max(maxid, b))
            rgs.pop()

    yield from rec(1, [0], 0)


def partition_preserved_by(table: np.ndarray, p: Partition) -> bool:
    """Is the partition compatible with an arbitrary binary op table?

    Checks a ~ a' implies a*v ~ a'*v and v*a ~ v*a' for every v; by
    transitivity this is equivalent to full two-sided compatibility.
    """
    ids = np.asarray(p.block_ids())
    t = ids[table]
    for block in p.blocks:
        if len(block) == 1:
            continue
        first = block[0]
        for other in block[1:]:
            if not np.array_equal(t[first], t[other]):
                return False
            if not np.array_equal(t[:, first], t[:, other]):
                return False
    return True


def is_congruence(g: Groupoid, p: Partition) -> bool:
    """True iff the partition is compatible with the groupoid product."""
    if p.n != g.n:
        raise ValueError("partition size does not match groupoid")
    return partition_preserved_by(g.table, p)


def quotient(g: Groupoid, p: Partition) -> Groupoid:
    """The factor groupoid by a congruence.

    Block names join the member names with "+" in file order, so the
    output is deterministic.
    """
    if not is_congruence(g, p):
        raise ValueError("partition is not a congruence")
    ids = p.block_ids()
    names = tuple("+".join(g.names[x] for x in b) for b in p.blocks)
    m = len(p.blocks)
    table = np.zeros((m, m), dtype=np.int64)
    for a, ablock in enumerate(p.blocks):
        for b, bblock in enumerate(p.blocks):
            table[a, b] = ids[g.prod(ablock[0], bblock[0])]
    return Groupoid(names, table)


def find_isomorphism(g1: Groupoid, g2: Groupoid, allow_dual: bool = False) -> Isomorphism | None:
    """Search for a product-preserving bijection g1 -> g2.

    With ``allow_dual`` a bijection onto the dual of g2 is also
    accepted (flagged in the result).  Brute force over all bijections,
    guarded at 9 elements.
    """
    if g1.n > ISO_MAX_N or g2.n > ISO_MAX_N:
        raise GuardError(f"isomorphism search capped at n={ISO_MAX_N}")
    if g1.n != g2.n:
        return None
    targets = [(g2.table, False)]
    if allow_dual:
        targets.append((np.ascontiguousarray(g2.table.T), True))
    t1 = g1.table
    for perm in itertools.permutations(range(g1.n)):
        sigma = np.asarray(perm)
        image = sigma[t1]
        for t2, is_dual in targets:
            if np.array_equal(image, t2[np.ix_(sigma, sigma)]):
                return Isomorphism(tuple(perm), is_dual)
    return None
