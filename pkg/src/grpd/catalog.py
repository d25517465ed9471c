"""Built-in catalog of reference groupoids, addressable by name.

Printed tables are embedded as .gpd text and go through the regular
parser, so a transcription slip is caught by the verification harness
instead of being reproduced by constructor code.  Families with a
uniform construction rule (the wraparound groupoids A_k, the free
p-cyclic binary parts, the chain groupoids) are built programmatically.

Every entry carries tags; the harness recomputes each tag's predicate
and fails on any mismatch, so the tags are verified facts, not notes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Groupoid, dual, parse_groupoid
from .errors import GuardError
from .terms import _is_prime

AK_MAX_K = 64
F2CP_MAX_P = 31
CHAIN_MAX_M = 5


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    groupoid: Groupoid
    provenance: str
    tags: frozenset[str]


_GPD_TEXTS = {
    "G1": """
        a b c e f
        a a c f f
        b b e e e
        c c c c c
        e e e e e
        f f f f f
    """,
    "G2": """
        a b c e
        a a c e
        b b e e
        c c c c
        e e e e
    """,
    "G3": """
        a b c
        a a c
        b b b
        c c c
    """,
    "G4": """
        a b c e f g
        a a g f f g
        a b e e f g
        c c c c c c
        e e e e e e
        f f f f f f
        g g g g g g
    """,
    "G5": """
        a b c e g
        a a g e g
        a b e e g
        c c c c c
        e e e e e
        g g g g g
    """,
    "G6": """
        a b c d f g h i
        a d f d f g d g
        h b c h i i h i
        c c c c c c c c
        d d g d g g d g
        f f f f f f f f
        g g g g g g g g
        h h i h i i h i
        i i i i i i i i
    """,
    "G7": """
        a b c d f g h
        a d f d f g d
        h b c h g g h
        c c c c c c c
        d d g d g g d
        f f f f f f f
        g g g g g g g
        h h g h g g h
    """,
    "G8": """
        a b c d f g
        a d f d f g
        d b c d g g
        c c c c c c
        d d g d g g
        f f f f f f
        g g g g g g
    """,
    "G9": """
        a b c d f h
        a d f d f d
        h b c h h h
        c c c c c c
        d d d d d d
        f f f f f f
        h h h h h h
    """,
    "G10": """
        a b c d f
        a d f d f
        d b c d d
        c c c c c
        d d d d d
        f f f f f
    """,
    "aba-4": """
        a b d e
        a a e e
        d b d d
        d d d d
        e e e e
    """,
    "aba-3": """
        a b d
        a a d
        d b d
        d d d
    """,
    "aab-eps": """
        a b c e
        a c e e
        b b b b
        c c c c
        e e e e
    """,
    "propD-F2": """
        x y xy yx
        x xy x xy
        yx y yx y
        xy xy xy xy
        yx yx yx yx
    """,
    "rectband-F2": """
        x y xy yx
        x xy xy x
        yx y y yx
        x xy xy x
        yx y y yx
    """,
    "shB-F2": """
        x y xy yx xyx yxy
        x xy xy xyx xyx xy
        yx y yxy yx yx yxy
        xyx xy xy xyx xyx xy
        yx yxy yxy yx yx yxy
        xyx xy xy xyx xyx xy
        yx yxy yxy yx yx yxy
    """,
}

_SH_TAGS = frozenset({"idempotent", "shAbc", "minimalSh", "notSemigroup"})


def build_ak(k: int) -> Groupoid:
    """The wraparound groupoid on Z_k plus a marker element e:
    x*y = y unless y = e; x*e steps x to x+1 (mod k); e*e = e."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > AK_MAX_K:
        raise GuardError(f"build_ak capped at k={AK_MAX_K}")
    names = tuple(str(i) for i in range(k)) + ("e",)
    e = k
    n = k + 1
    table = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            if y != e:
                table[x, y] = y
            elif x != e:
                table[x, y] = (x + 1) % k
            else:
                table[x, y] = e
    return Groupoid(names, table)


def build_f2_cp(p: int) -> Groupoid:
    """The 2p-element binary part of the free p-cyclic groupoid:
    fi*fj = fi, fi*fjd = f(i+1), fid*fjd = fid, fid*fj = f(i+1)d."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p > F2CP_MAX_P:
        raise GuardError(f"build_f2_cp capped at p={F2CP_MAX_P}")
    names = tuple(f"f{i}" for i in range(p)) + tuple(f"f{i}d" for i in range(p))
    n = 2 * p
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            table[i, j] = i                      # fi * fj = fi
            table[i, p + j] = (i + 1) % p        # fi * fjd = f(i+1)
            table[p + i, p + j] = p + i          # fid * fjd = fid
            table[p + i, j] = p + (i + 1) % p    # fid * fj = f(i+1)d
    return Groupoid(names, table)


def build_chain_groupoid(m: int) -> Groupoid:
    """Chains of the m-element chain semilattice, multiplied by
    appending max(top(a), top(b)) to a when it strictly exceeds top(a).

    Elements are the nonempty subsets of {1..m} (every subset of a
    chain is a chain), named like ``1<2<3``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > CHAIN_MAX_M:
        raise GuardError(f"build_chain_groupoid capped at m={CHAIN_MAX_M}")
    chains = []
    for size in range(1, m + 1):
        chains.extend(itertools.combinations(range(1, m + 1), size))
    index = {c: i for i, c in enumerate(chains)}
    names = tuple("<".join(map(str, c)) for c in chains)
    n = len(chains)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(chains):
        for j, b in enumerate(chains):
            top = max(a[-1], b[-1])
            prod = a if top == a[-1] else a + (top,)
            table[i, j] = index[prod]
    return Groupoid(names, table)


def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}

    def add(name, groupoid, provenance, tags):
        out[name] = CatalogEntry(name, groupoid, provenance, frozenset(tags))

    base = {name: parse_groupoid(text) for name, text in _GPD_TEXTS.items()}

    for i in range(1, 11):
        name = f"G{i}"
        add(name, base[name], "minimal SH family, base member", _SH_TAGS | {"inB"})
        add(name + "d", dual(base[name]), "minimal SH family, dual member", _SH_TAGS | {"inBd"})

    lemma_tags = frozenset({"idempotent", "cloneNotMinimal", "notSemigroup"})
    add("aba-4", base["aba-4"], "non-minimal-clone counterexample, 4 elements", lemma_tags | {"shAba"})
    add("aba-4d", dual(base["aba-4"]), "non-minimal-clone counterexample, dual", lemma_tags | {"shAba"})
    add("aba-3", base["aba-3"], "non-minimal-clone counterexample, 3 elements", lemma_tags | {"shAba"})
    add("aba-3d", dual(base["aba-3"]), "non-minimal-clone counterexample, dual", lemma_tags | {"shAba"})
    add("aab-eps", base["aab-eps"], "non-minimal-clone counterexample, one-sided type", lemma_tags | {"shAab"})

    add(
        "propD-F2",
        base["propD-F2"],
        "two-generated free table of the absorption-scheme variety",
        {"idempotent", "inD", "inA", "inDcapA", "notSemigroup", "spectrum2pow"},
    )
    add(
        "rectband-F2",
        base["rectband-F2"],
        "two-generated free rectangular band",
        {"idempotent", "semigroup", "rectBand"},
    )
    add(
        "shB-F2",
        base["shB-F2"],
        "generic six-element binary part of a single-defect groupoid",
        {"idempotent", "semigroup"},
    )

    for k in (2, 3, 4):
        tags = {"idempotent", "notSemigroup"}
        if k == 2:
            tags.add("spectrum2pow")
        add(f"A{k}", build_ak(k), f"wraparound groupoid, k={k}", tags)

    for p in (2, 3):
        add(
            f"f2cp-{p}",
            build_f2_cp(p),
            f"free p-cyclic binary part, p={p}",
            {"idempotent", f"inCp:{p}", "inA", "notSemigroup", "spectrum2pow"},
        )

    add(
        "chain-2",
        build_chain_groupoid(2),
        "chain groupoid over a 2-chain",
        {"idempotent", "semigroup", "inB", "inA"},
    )
    add(
        "chain-3",
        build_chain_groupoid(3),
        "chain groupoid over a 3-chain",
        {"idempotent", "inB", "inA", "notSemigroup", "spectrum2pow"},
    )
    return out


_CATALOG = _entries()


def catalog_list() -> list[str]:
    return list(_CATALOG)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None
