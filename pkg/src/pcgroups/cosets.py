"""Parabolic subgroups, double coset representatives and malnormality.

For a vertex subset Y the canonical parabolic is the subgroup generated
by Y.  Every element factors as u . d . v with u, v in the parabolic and
d without left or right divisor in it; d is the unique shortest element
of its double coset, and serves as the coset's canonical symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAClique
from .graphs import CommutationGraph, is_clique
from .words import (
    NormalForm,
    Word,
    as_word,
    canon_letters,
    left_divisor_letters,
    lexmin_letters,
    reduce_letters,
    right_divisor_letters,
    strip_back_letter,
    strip_front_letter,
    support,
    _letter_key,
)


@dataclass(frozen=True)
class ParabolicContext:
    graph: CommutationGraph
    subset: frozenset  # vertex names generating the parabolic

    def __post_init__(self):
        self.graph.check_subset(self.subset)

    @property
    def subset_idx(self):
        return frozenset(self.graph.index(v) for v in self.subset)


def parabolic(graph: CommutationGraph, subset) -> ParabolicContext:
    return ParabolicContext(graph, frozenset(subset))


@dataclass(frozen=True)
class DoubleCosetRep:
    left: NormalForm
    core: NormalForm
    right: NormalForm


def parabolic_member(ctx: ParabolicContext, w) -> bool:
    """True iff the element lies in the parabolic: supp(w) inside Y."""
    return support(ctx.graph, as_word(ctx.graph, w)) <= set(ctx.subset)


def _strip_side(adj, letters, yidx, *, front):
    """Greedily strip single parabolic letters from one side.

    Returns (stripped_letter_list, remainder).  Ties are broken by the
    letter order, which makes the factorisation deterministic.
    """
    stripped = []
    cur = letters
    while True:
        if front:
            divisors = left_divisor_letters(adj, cur)
        else:
            divisors = right_divisor_letters(adj, cur)
        cands = sorted((y for y in divisors if abs(y) in yidx), key=_letter_key)
        if not cands:
            return stripped, cur
        y = cands[0]
        if front:
            cur = strip_front_letter(adj, cur, y)
            stripped.append(y)
        else:
            cur = strip_back_letter(adj, cur, y)
            stripped.insert(0, y)


def strip_divisors(ctx: ParabolicContext, w) -> DoubleCosetRep:
    """Factor w = left . core . right with left, right in the parabolic and
    core without parabolic divisors on either side.  Left-greedy: the
    maximal left divisor is taken first."""
    g = ctx.graph
    adj = g._adj_idx
    letters = canon_letters(adj, as_word(g, w).idx)
    yidx = ctx.subset_idx
    left, rest = _strip_side(adj, letters, yidx, front=True)
    right, core = _strip_side(adj, rest, yidx, front=False)
    return DoubleCosetRep(
        left=NormalForm(Word(g, canon_letters(adj, tuple(left)))),
        core=NormalForm(Word(g, lexmin_letters(adj, core))),
        right=NormalForm(Word(g, canon_letters(adj, tuple(right)))),
    )


def double_coset_rep(ctx: ParabolicContext, w) -> NormalForm:
    """Canonical shortest representative of U w U (U the parabolic)."""
    return strip_divisors(ctx, w).core


def in_maln(g: CommutationGraph, B, w) -> bool:
    """Membership of w in Maln(<B>) = {x : x^{-1}<B>x meets <B> trivially}.

    Requires B to be a nonempty clique; then w (not itself in <B>) is
    malnormal-positioned iff for every b in B some generator in
    supp(w) \\ B fails to commute with b.  Elements of <B> are excluded by
    the definition.
    """
    B = set(B)
    if not B:
        raise NotAClique("B must be nonempty")
    if not is_clique(g, B):
        raise NotAClique(f"{sorted(B)} is not a clique")
    red = reduce_letters(g._adj_idx, as_word(g, w).idx)
    supp = {g.name(abs(x)) for x in red}
    if supp <= B:
        return False
    outside = supp - B
    for b in B:
        nbrs = g.neighbours(b)
        if not any(x not in nbrs for x in outside):
            return False
    return True
