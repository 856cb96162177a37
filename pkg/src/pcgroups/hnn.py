"""HNN-relative structure of a pc group with respect to a generator t.

The group splits as an HNN extension of the parabolic over A \\ {t} with
associated subgroup U generated by lk(t).  Elements factor as
g0 t^{e1} g1 ... t^{em} gm (reduced: an inner chunk in U forces equal
neighbouring exponents).  Replacing each chunk by its double-coset
symbol lands in the free product of a free group on the symbols with
the infinite cyclic group on t; primitivity there defines t-roots.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cosets import double_coset_rep, in_maln, parabolic
from .errors import LinkNotClique, NoSplitFound
from .graphs import CommutationGraph, is_clique
from .words import (
    Word,
    as_word,
    canon_letters,
    format_word,
    invert_letters,
    word_key,
)


@dataclass(frozen=True)
class HnnWord:
    """Reduced factorisation g0 t^{e1} g1 ... t^{em} gm.

    chunks are canonical letter tuples over A \\ {t}; exps are +-1, one
    per t-letter; len(chunks) == len(exps) + 1.
    """

    graph: CommutationGraph
    t: str
    chunks: tuple
    exps: tuple

    def to_word(self) -> Word:
        t_idx = self.graph.index(self.t)
        letters = list(self.chunks[0])
        for e, chunk in zip(self.exps, self.chunks[1:]):
            letters.append(t_idx if e > 0 else -t_idx)
            letters.extend(chunk)
        return Word(self.graph, tuple(letters))

    def __str__(self):
        g = self.graph
        parts = []
        if self.chunks[0]:
            parts.append(format_word(Word(g, self.chunks[0])))
        for e, chunk in zip(self.exps, self.chunks[1:]):
            parts.append(self.t if e > 0 else f"{self.t}^-1")
            if chunk:
                parts.append(format_word(Word(g, chunk)))
        return " ".join(parts) if parts else "1"


def _u_indices(g: CommutationGraph, t) -> frozenset:
    return frozenset(g.index(v) for v in g.neighbours(t))


def _chunk_in_u(chunk, u_idx) -> bool:
    return all(abs(x) in u_idx for x in chunk)


def hnn_factorize(g: CommutationGraph, t, w) -> HnnWord:
    """Reduced factorisation of the element of w with respect to t.

    The word is canonicalised first; a geodesic admits no pinch
    t^e u t^{-e} with u in U, since such a pinch would shorten it.  A
    defensive Britton pass (leftmost pinch first) guards factorisations
    assembled by other routes.
    """
    t_idx = g.index(t)
    adj = g._adj_idx
    letters = canon_letters(adj, as_word(g, w).idx)
    chunks = [[]]
    exps = []
    for x in letters:
        if abs(x) == t_idx:
            exps.append(1 if x > 0 else -1)
            chunks.append([])
        else:
            chunks[-1].append(x)
    chunks = [canon_letters(adj, tuple(c)) for c in chunks]
    u_idx = _u_indices(g, t)
    changed = True
    while changed and len(exps) >= 2:
        changed = False
        for i in range(1, len(exps)):
            if exps[i] == -exps[i - 1] and _chunk_in_u(chunks[i], u_idx):
                merged = canon_letters(
                    adj, chunks[i - 1] + chunks[i] + chunks[i + 1])
                chunks[i - 1:i + 2] = [merged]
                del exps[i - 1:i + 1]
                changed = True
                break
    return HnnWord(g, t, tuple(chunks), tuple(exps))


def t_length(h: HnnWord) -> int:
    return len(h.exps)


def is_cyclically_reduced_hnn(g: CommutationGraph, t, h: HnnWord) -> bool:
    """True iff h.h is reduced: m <= 1, or g_m g_0 not in U, or e_m = e_1."""
    m = len(h.exps)
    if m <= 1:
        return True
    if h.exps[-1] == h.exps[0]:
        return True
    wrap = canon_letters(g._adj_idx, h.chunks[-1] + h.chunks[0])
    return not _chunk_in_u(wrap, _u_indices(g, t))


# ---------------------------------------------------------------------------
# the symbol map into F(D+) * <t>


@dataclass(frozen=True)
class SigmaWord:
    """Image of an element in the free product F(D+) * <t>.

    units is a freely reduced tuple of unit letters (sym, sign): sym is
    None for a t-letter, otherwise the canonical letter tuple of the
    positively oriented double-coset symbol.
    """

    graph: CommutationGraph
    t: str
    units: tuple

    def __len__(self):
        return len(self.units)

    def __str__(self):
        if not self.units:
            return "1"
        parts = []
        for sym, sign in self.units:
            if sym is None:
                parts.append(self.t if sign > 0 else f"{self.t}^-1")
            else:
                body = format_word(Word(self.graph, sym))
                parts.append(f"[{body}]" if sign > 0 else f"[{body}]^-1")
        return " ".join(parts)


def coset_symbol(g: CommutationGraph, t, chunk):
    """Signed double-coset symbol of an H-chunk, or None for chunks in U.

    The positive orientation of each symbol is the lex-smaller of the
    representative and its inverse, so symbols are identified up to the
    D+/D- pairing.
    """
    ctx = parabolic(g, g.neighbours(t))
    core = double_coset_rep(ctx, Word(g, tuple(chunk))).idx
    if not core:
        return None
    inv = canon_letters(g._adj_idx, invert_letters(core))
    if word_key(core) <= word_key(inv):
        return (core, 1)
    return (inv, -1)


def _free_reduce_units(units):
    out = []
    for u in units:
        if out and out[-1][0] == u[0] and out[-1][1] == -u[1]:
            out.pop()
        else:
            out.append(u)
    return tuple(out)


def sigma(g: CommutationGraph, t, h: HnnWord) -> SigmaWord:
    """sigma(p): chunks become double-coset symbols, t-powers expand to
    unit letters, and the result is freely reduced in the free product."""
    units = []
    sym = coset_symbol(g, t, h.chunks[0])
    if sym is not None:
        units.append(sym)
    for e, chunk in zip(h.exps, h.chunks[1:]):
        units.append((None, e))
        sym = coset_symbol(g, t, chunk)
        if sym is not None:
            units.append(sym)
    return SigmaWord(g, t, _free_reduce_units(units))


def cyclically_reduce_units(units):
    units = list(units)
    while len(units) >= 2 and units[0][0] == units[-1][0] \
            and units[0][1] == -units[-1][1]:
        units = units[1:-1]
    return tuple(units)


def smallest_period(seq) -> int:
    """Smallest p dividing len(seq) with seq equal to its rotation by p."""
    n = len(seq)
    for p in range(1, n):
        if n % p == 0 and all(seq[i] == seq[(i + p) % n] for i in range(n)):
            return p
    return n


def is_t_root(g: CommutationGraph, t, h: HnnWord) -> bool:
    """True iff sigma(h), cyclically reduced, is not a proper power."""
    units = cyclically_reduce_units(sigma(g, t, h).units)
    n = len(units)
    if n <= 1:
        return True
    return smallest_period(units) == n


# ---------------------------------------------------------------------------
# thickness


def _chunk_thick(g, t, lk_t, chunk):
    if _chunk_in_u(chunk, frozenset(g.index(v) for v in lk_t)):
        return True
    return in_maln(g, lk_t, Word(g, tuple(chunk)))


def is_t_thick(g: CommutationGraph, t, h: HnnWord) -> bool:
    """Every chunk lies in U or in Maln(U).

    Needs lk(t) to be a clique so the support criterion for Maln applies;
    an empty link makes U trivial and every chunk thick.
    """
    lk_t = g.neighbours(t)
    if not is_clique(g, lk_t):
        raise LinkNotClique(f"lk({t}) is not a clique")
    if not lk_t:
        return True
    return all(_chunk_thick(g, t, lk_t, c) for c in h.chunks)


def is_cyclically_t_thick(g: CommutationGraph, t, h: HnnWord) -> bool:
    """Thick, cyclically reduced, and the wrap chunk g_m g_0 is thick too."""
    if not is_t_thick(g, t, h):
        return False
    if not is_cyclically_reduced_hnn(g, t, h):
        return False
    lk_t = g.neighbours(t)
    if not lk_t or len(h.exps) == 0:
        return True
    wrap = canon_letters(g._adj_idx, h.chunks[-1] + h.chunks[0])
    return _chunk_thick(g, t, lk_t, wrap)


# ---------------------------------------------------------------------------
# uniquely positioned factorisation


@dataclass(frozen=True)
class UniquePositionSplit:
    a: SigmaWord
    b: SigmaWord
    rotation: int


def _cyclic_occurrences(haystack, needle):
    n = len(haystack)
    count = 0
    for off in range(n):
        if all(haystack[(off + i) % n] == needle[i] for i in range(len(needle))):
            count += 1
    return count


def _uniquely_positioned(units, units_inv, segment):
    return (_cyclic_occurrences(units, segment) == 1
            and _cyclic_occurrences(units_inv, segment) == 0)


def unique_position_factorization(root: SigmaWord) -> UniquePositionSplit:
    """Rotation and split of a primitive cyclic sigma-word into two
    nonempty uniquely positioned parts.

    When several splits work at a rotation, one whose first part ends in
    a t-letter (right integral) is preferred.  Existence is guaranteed
    for primitive roots; a violated precondition raises NoSplitFound.
    """
    units = cyclically_reduce_units(root.units)
    n = len(units)
    if n < 2 or units != tuple(root.units):
        raise NoSplitFound("root must be cyclically reduced of length >= 2")
    if smallest_period(units) < n:
        raise NoSplitFound("root is a proper power")
    units_inv = tuple((s, -e) for (s, e) in reversed(units))
    for r in range(n):
        rot = units[r:] + units[:r]
        valid = []
        for m in range(1, n):
            a, b = rot[:m], rot[m:]
            if _uniquely_positioned(units, units_inv, a) \
                    and _uniquely_positioned(units, units_inv, b):
                valid.append((a, b))
        if valid:
            integral = [ab for ab in valid if ab[0][-1][0] is None]
            a, b = (integral or valid)[0]
            return UniquePositionSplit(
                a=SigmaWord(root.graph, root.t, a),
                b=SigmaWord(root.graph, root.t, b),
                rotation=r,
            )
    raise NoSplitFound("no uniquely positioned split exists")
