"""Words and canonical minimal forms in a partially commutative group.

A word is a sequence of signed letters over the generators of a
CommutationGraph.  Internally letters are nonzero ints: generator i
(1-based, in declaration order) is +i, its inverse is -i.

Canonical form: the lexicographically least geodesic under the letter
order (generator index, then sign with + before -).  It is computed by
repeatedly deleting cancellable pairs x...x^{-1} whose intermediate
letters all commute with x (leftmost pair first; termination by length),
then greedily linearising the dependence order of the remaining letters.
All geodesics of one element differ only by commutations, so the result
is a class invariant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    NotCyclicallyMinimal,
    UnknownGenerator,
    WordSyntaxError,
    ZeroExponent,
)
from .graphs import CommutationGraph, complement_components

_TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")


# ---------------------------------------------------------------------------
# low-level machinery on int-encoded letter tuples


def _letter_key(x):
    return (abs(x), x < 0)


def word_key(w):
    return tuple((abs(x), x < 0) for x in w)


def invert_letters(w):
    return tuple(-x for x in reversed(w))


def reduce_letters(adj, w):
    """Delete cancellable pairs until the word is a minimal form.

    adj is the 1-based index adjacency of the graph.  A pair (i, j) is
    cancellable when w[j] == -w[i] and every letter strictly between
    commutes with w[i] (same generator counts as commuting).  By the
    cancellation property of pc groups, a word with no such pair is
    geodesic.
    """
    w = list(w)
    found = True
    while found:
        found = False
        for i in range(len(w)):
            x = w[i]
            ax = abs(x)
            nbrs = adj[ax]
            for j in range(i + 1, len(w)):
                y = w[j]
                if y == -x:
                    del w[j]
                    del w[i]
                    found = True
                    break
                ay = abs(y)
                if ay != ax and ay not in nbrs:
                    break
            if found:
                break
    return tuple(w)


def lexmin_letters(adj, w):
    """Lex-least commutation-equivalent word of a minimal form w.

    Positions p < q are dependent when their letters share a generator or
    the generators do not commute; dependent pairs keep their order.  The
    greedy smallest-available-letter linearisation of this partial order
    is the lexicographic minimum over the class.
    """
    m = len(w)
    if m <= 1:
        return tuple(w)
    rem = list(range(m))
    out = []
    while rem:
        best = None
        best_key = None
        for p in rem:
            x = w[p]
            ax = abs(x)
            nbrs = adj[ax]
            blocked = False
            for q in rem:
                if q >= p:
                    break
                ay = abs(w[q])
                if ay == ax or ay not in nbrs:
                    blocked = True
                    break
            if not blocked:
                k = (ax, x < 0)
                if best is None or k < best_key:
                    best = p
                    best_key = k
        rem.remove(best)
        out.append(w[best])
    return tuple(out)


def canon_letters(adj, w):
    return lexmin_letters(adj, reduce_letters(adj, w))


def left_divisor_letters(adj, w):
    """Single letters x with w = x . w' length-additively (w minimal)."""
    out = set()
    for p in range(len(w)):
        x = w[p]
        ax = abs(x)
        nbrs = adj[ax]
        ok = True
        for q in range(p):
            ay = abs(w[q])
            if ay == ax or ay not in nbrs:
                ok = False
                break
        if ok:
            out.add(x)
    return out


def right_divisor_letters(adj, w):
    return {-x for x in left_divisor_letters(adj, invert_letters(w))}


def strip_front_letter(adj, w, y):
    """Remove the first occurrence of y that is visible from the left."""
    for p in range(len(w)):
        if w[p] == y:
            ax = abs(y)
            nbrs = adj[ax]
            if all(abs(w[q]) != ax and abs(w[q]) in nbrs for q in range(p)):
                return w[:p] + w[p + 1:]
        # keep scanning: a blocked occurrence may be followed by a visible one
    raise ValueError(f"{y} is not a left divisor")


def strip_back_letter(adj, w, y):
    return invert_letters(strip_front_letter(adj, invert_letters(w), -y))


def is_cyclically_minimal_letters(adj, w):
    lds = left_divisor_letters(adj, w)
    if not lds:
        return True
    rds = right_divisor_letters(adj, w)
    return not any(-y in rds for y in lds)


def cyclic_core_letters(adj, w):
    """Split a canonical minimal form as u^{-1} . v . u with v cyclically
    minimal; returns (u_letters, v_letters), both canonical."""
    cur = w
    ys = []
    while True:
        lds = left_divisor_letters(adj, cur)
        rds = right_divisor_letters(adj, cur)
        cands = sorted((y for y in lds if -y in rds), key=_letter_key)
        if not cands:
            break
        y = cands[0]
        cur = strip_back_letter(adj, strip_front_letter(adj, cur, y), -y)
        ys.append(y)
    u = canon_letters(adj, tuple(-y for y in reversed(ys)))
    v = lexmin_letters(adj, cur)
    return u, v


def conjugacy_class_closure(adj, core, limit=None):
    """All canonical forms related to the cyclically minimal `core` by
    chains of rotations g = y . v -> v . y.  Single-letter rotations
    generate every split because u can be peeled one letter at a time."""
    start = lexmin_letters(adj, core)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for y in left_divisor_letters(adj, cur):
            nxt = lexmin_letters(adj, strip_front_letter(adj, cur, y) + (y,))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
                if limit is not None and len(seen) > limit:
                    raise RuntimeError("conjugacy closure exceeded limit")
    return seen


# ---------------------------------------------------------------------------
# public word types


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word over the generators of `graph`."""

    graph: CommutationGraph
    idx: tuple  # tuple of signed 1-based generator indices

    @property
    def letters(self):
        return tuple((self.graph.name(abs(x)), 1 if x > 0 else -1)
                     for x in self.idx)

    def __len__(self):
        return len(self.idx)

    def __str__(self):
        return format_word(self)


@dataclass(frozen=True)
class NormalForm:
    """Canonical minimal form of a group element."""

    word: Word
    canonical: bool = True

    @property
    def idx(self):
        return self.word.idx

    @property
    def graph(self):
        return self.word.graph

    def __len__(self):
        return len(self.word.idx)

    def __str__(self):
        return format_word(self.word)


@dataclass(frozen=True)
class CyclicDecomposition:
    conjugator: NormalForm  # u
    core: NormalForm        # v, cyclically minimal

    def __str__(self):
        return f"({self.conjugator})^-1 . ({self.core}) . ({self.conjugator})"


def word_from_idx(g: CommutationGraph, idx) -> Word:
    return Word(g, tuple(idx))


def as_word(g: CommutationGraph, w) -> Word:
    """Coerce a Word, NormalForm or string to a Word over g."""
    if isinstance(w, NormalForm):
        w = w.word
    if isinstance(w, Word):
        if w.graph is not g and w.graph != g:
            raise WordSyntaxError("word belongs to a different graph")
        return w
    if isinstance(w, str):
        return parse_word(w, g)
    return word_from_idx(g, w)


def parse_word(text: str, g: CommutationGraph) -> Word:
    """Parse whitespace-separated tokens `name` or `name^k` (k nonzero).

    The bare token `1` denotes the identity and must appear alone.
    """
    tokens = text.split()
    if tokens == ["1"]:
        return Word(g, ())
    idx = []
    for tok in tokens:
        if tok == "1":
            raise WordSyntaxError("'1' must appear alone")
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in g:
            raise UnknownGenerator(f"unknown generator {name!r}")
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise ZeroExponent(f"zero exponent in {tok!r}")
        i = g.index(name)
        letter = i if k > 0 else -i
        idx.extend([letter] * abs(k))
    return Word(g, tuple(idx))


def format_word(w: Word) -> str:
    """Canonical text: maximal runs of one signed letter as name^k."""
    if not w.idx:
        return "1"
    parts = []
    run_letter = w.idx[0]
    run_len = 1
    for x in w.idx[1:]:
        if x == run_letter:
            run_len += 1
        else:
            parts.append(_format_run(w.graph, run_letter, run_len))
            run_letter, run_len = x, 1
    parts.append(_format_run(w.graph, run_letter, run_len))
    return " ".join(parts)


def _format_run(g, letter, count):
    name = g.name(abs(letter))
    k = count if letter > 0 else -count
    return name if k == 1 else f"{name}^{k}"


# ---------------------------------------------------------------------------
# public operations


def minimal_form(g: CommutationGraph, w) -> NormalForm:
    """Canonical geodesic representative of the element of w."""
    w = as_word(g, w)
    return NormalForm(Word(g, canon_letters(g._adj_idx, w.idx)))


def equal(g: CommutationGraph, w1, w2) -> bool:
    a = minimal_form(g, w1)
    b = minimal_form(g, w2)
    return a.idx == b.idx


def length(g: CommutationGraph, w) -> int:
    return len(reduce_letters(g._adj_idx, as_word(g, w).idx))


def support(g: CommutationGraph, w) -> set:
    """Generators occurring in the minimal form (well-defined)."""
    red = reduce_letters(g._adj_idx, as_word(g, w).idx)
    return {g.name(abs(x)) for x in red}


def is_cyclically_minimal(g: CommutationGraph, w) -> bool:
    """No letter is a left divisor while its inverse is a right divisor."""
    nf = minimal_form(g, w)
    return is_cyclically_minimal_letters(g._adj_idx, nf.idx)


def cyclic_reduce(g: CommutationGraph, w) -> CyclicDecomposition:
    """Write w as u^{-1} . v . u with v cyclically minimal and lengths
    additive: l(w) = 2 l(u) + l(v)."""
    nf = minimal_form(g, w)
    u, v = cyclic_core_letters(g._adj_idx, nf.idx)
    return CyclicDecomposition(NormalForm(Word(g, u)), NormalForm(Word(g, v)))


def block_decomposition(g: CommutationGraph, v) -> list:
    """Factor a cyclically minimal element along the connected components
    of the complement graph on its support."""
    nf = minimal_form(g, v)
    adj = g._adj_idx
    if not is_cyclically_minimal_letters(adj, nf.idx):
        raise NotCyclicallyMinimal(f"{format_word(nf.word)} is not cyclically minimal")
    comps = complement_components(g, support(g, nf.word))
    factors = []
    for comp in comps:
        comp_idx = {g.index(name) for name in comp}
        sub = tuple(x for x in nf.idx if abs(x) in comp_idx)
        factors.append(NormalForm(Word(g, lexmin_letters(adj, sub))))
    return factors


def conjugate_test(g: CommutationGraph, w1, w2) -> bool:
    """Conjugacy via cyclic reduction and the rotation closure of the core."""
    adj = g._adj_idx
    c1 = cyclic_reduce(g, w1).core.idx
    c2 = cyclic_reduce(g, w2).core.idx
    if len(c1) != len(c2):
        return False
    if {abs(x) for x in c1} != {abs(x) for x in c2}:
        return False
    if c1 == c2:
        return True
    return c2 in conjugacy_class_closure(adj, c1)
