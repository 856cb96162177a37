"""Mechanical hypothesis checking for Freiheitssatz-type embedding results.

Given a cyclically minimal relator root s and an exponent n, the report
records, per candidate generator t, whether the main embedding theorem's
four hypotheses hold (link a clique, s t-thick, s outside the star
parabolic, s a t-root), evaluates the amalgam route over a synchronised
support, and emits three-valued conclusions per Magnus subset.  Nothing
is claimed beyond the hypotheses actually verified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConflictingVerdicts, NotCyclicallyMinimal, TNotInSupport
from .graphs import (
    CommutationGraph,
    central_vertices,
    is_clique,
    is_independent,
    is_synchronised,
    link,
    star,
)
from .hnn import (
    hnn_factorize,
    is_cyclically_reduced_hnn,
    is_cyclically_t_thick,
    is_t_root,
    is_t_thick,
)
from .words import (
    NormalForm,
    Word,
    format_word,
    is_cyclically_minimal,
    minimal_form,
    support,
)

EMBEDS = "EMBEDS"
DOES_NOT_EMBED = "DOES_NOT_EMBED"
UNKNOWN = "UNKNOWN"
RESTRICTED_EMBEDS = "RESTRICTED_EMBEDS"

DECIDABLE = "decidable"


@dataclass
class TheoremMainRecord:
    t: str
    lk_clique: bool
    t_thick: bool | None
    cyclically_t_thick: bool | None
    not_in_star: bool
    t_root: bool
    verdict: str

    def hypotheses_hold(self):
        return (self.lk_clique and bool(self.t_thick)
                and bool(self.cyclically_t_thick)
                and self.not_in_star and self.t_root)

    def to_json_dict(self):
        return {
            "t": self.t,
            "lk_clique": self.lk_clique,
            "t_thick": self.t_thick,
            "cyclically_t_thick": self.cyclically_t_thick,
            "not_in_star": self.not_in_star,
            "t_root": self.t_root,
            "verdict": self.verdict,
        }


@dataclass
class AmalgamRecord:
    synchronised: bool
    supp_clique: bool
    supp_independent: bool
    decomposition: dict | None  # {"Y": [...], "lk_Y": [...], "X": [...]}

    def to_json_dict(self):
        return {
            "synchronised": self.synchronised,
            "supp_clique": self.supp_clique,
            "supp_independent": self.supp_independent,
            "decomposition": self.decomposition,
        }


@dataclass
class Conclusion:
    subset: tuple
    status: str
    justification: str
    witness: dict | None = None

    def to_json_dict(self):
        just = self.justification
        if self.witness:
            detail = ", ".join(f"{k}={v}" for k, v in sorted(self.witness.items()))
            just = f"{just}({detail})"
        return {"subset": list(self.subset), "status": self.status,
                "justification": just}


@dataclass
class FreiReport:
    graph: CommutationGraph
    s: NormalForm
    n: int
    per_t: list
    amalgam: AmalgamRecord
    conclusions: list
    order_of_s: object  # int or "unknown"
    word_problem: str
    conjugacy_problem: str
    advisories: list = field(default_factory=list)

    def to_json_dict(self):
        conclusions = [c.to_json_dict() for c in self.conclusions]
        conclusions += [c.to_json_dict() for c in self.advisories]
        return {
            "s": format_word(self.s.word),
            "n": self.n,
            "per_t": [r.to_json_dict() for r in self.per_t],
            "amalgam": self.amalgam.to_json_dict(),
            "conclusions": conclusions,
            "order_of_s": self.order_of_s,
            "word_problem": self.word_problem,
            "conjugacy_problem": self.conjugacy_problem,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_json_dict(), indent=indent)

    def conclusion_for(self, subset):
        target = tuple(sorted(subset))
        for c in self.conclusions:
            if tuple(sorted(c.subset)) == target:
                return c
        return None

    def to_text(self):
        lines = [f"relator root: {format_word(self.s.word)}   exponent n = {self.n}"]
        for r in self.per_t:
            lines.append(
                f"  t = {r.t}: lk_clique={r.lk_clique} t_thick={r.t_thick} "
                f"cyclically_t_thick={r.cyclically_t_thick} "
                f"not_in_star={r.not_in_star} t_root={r.t_root} -> {r.verdict}")
        a = self.amalgam
        lines.append(
            f"  support: synchronised={a.synchronised} clique={a.supp_clique} "
            f"independent={a.supp_independent}")
        for c in self.conclusions + self.advisories:
            w = ""
            if c.witness:
                w = "  [" + ", ".join(f"{k}={v}" for k, v in sorted(c.witness.items())) + "]"
            lines.append(f"  <{' '.join(c.subset)}>: {c.status} ({c.justification}){w}")
        lines.append(f"  order of s: {self.order_of_s}")
        lines.append(f"  word problem: {self.word_problem}")
        lines.append(f"  conjugacy problem: {self.conjugacy_problem}")
        return "\n".join(lines)


def _require_cyclically_minimal(g, s):
    nf = minimal_form(g, s)
    if not is_cyclically_minimal(g, nf.word):
        raise NotCyclicallyMinimal(
            f"{format_word(nf.word)} is not cyclically minimal")
    return nf


def _subset_without(g, t):
    return tuple(v for v in g.vertices if v != t)


def check_theorem_main(g: CommutationGraph, s, t, n: int) -> TheoremMainRecord:
    """Evaluate the four main-theorem hypotheses for one candidate t.

    The thickness flags stay None when lk(t) is not a clique (the support
    criterion for Maln needs the clique).  The per-candidate verdict is
    EMBEDS only when every hypothesis holds, including the cyclic
    thickness variant, and n >= 3.
    """
    nf = _require_cyclically_minimal(g, s)
    supp = support(g, nf.word)
    if t not in supp:
        raise TNotInSupport(f"{t} does not occur in {format_word(nf.word)}")
    lk_t = link(g, {t})
    lk_clique = is_clique(g, lk_t)
    h = hnn_factorize(g, t, nf.word)
    assert is_cyclically_reduced_hnn(g, t, h)
    if lk_clique:
        thick = is_t_thick(g, t, h)
        cyc_thick = is_cyclically_t_thick(g, t, h)
    else:
        thick = None
        cyc_thick = None
    not_in_star = not (supp <= star(g, t))
    t_root = is_t_root(g, t, h)
    ok = lk_clique and bool(thick) and bool(cyc_thick) and not_in_star and t_root
    verdict = EMBEDS if (ok and n >= 3) else UNKNOWN
    return TheoremMainRecord(
        t=t, lk_clique=lk_clique, t_thick=thick, cyclically_t_thick=cyc_thick,
        not_in_star=not_in_star, t_root=t_root, verdict=verdict)


def _abelian_relation_witness(g, nf, n, t, x):
    """Witness data for the clique converse: x commutes with t but not with
    all of supp(s), so the image of [x, a^{np} w] collapses in the quotient."""
    supp = support(g, nf.word)
    nbrs = g.neighbours(x)
    a = next(v for v in g.vertices if v in supp and v not in nbrs and v != x)
    exps = {}
    for letter in nf.idx:
        name = g.name(abs(letter))
        exps[name] = exps.get(name, 0) + (1 if letter > 0 else -1)
    rest = [f"{v}^{n * exps[v]}" for v in sorted(supp - {a, t}) if n * exps[v] != 0]
    body = f"{a}^{n * exps[a]}" + ("" if not rest else " " + " ".join(rest))
    return {"t": t, "x": x, "a": a, "relation": f"[{x}, {body}]"}


def check_amalgam(g: CommutationGraph, s, n: int):
    """Amalgam route: synchronised support, clique and independent cases.

    Returns (record, conclusions, order, word_problem, conjugacy_problem);
    the last three are None when this route proves nothing about them.
    """
    nf = _require_cyclically_minimal(g, s)
    supp = support(g, nf.word)
    if not supp:
        rec = AmalgamRecord(False, False, False, None)
        return rec, [], 1, DECIDABLE, DECIDABLE
    synchronised = is_synchronised(g, supp)
    clique = is_clique(g, supp)
    independent = is_independent(g, supp)
    lk_y = link(g, supp)
    x_set = [v for v in g.vertices if v not in supp and v not in lk_y]
    decomposition = None
    conclusions = []
    order = wp = cp = None
    if synchronised:
        decomposition = {
            "Y": [v for v in g.vertices if v in supp],
            "lk_Y": [v for v in g.vertices if v in lk_y],
            "X": x_set,
        }
        if clique:
            for t in sorted(supp, key=g.index):
                conclusions.append(Conclusion(
                    _subset_without(g, t), EMBEDS, "corollary_clique"))
            order, wp, cp = n, DECIDABLE, DECIDABLE
        elif independent:
            for t in sorted(supp, key=g.index):
                conclusions.append(Conclusion(
                    _subset_without(g, t), EMBEDS, "corollary_independent"))
            order, wp = n, DECIDABLE
            cp = DECIDABLE if n >= 2 else None
        else:
            rest = tuple(v for v in g.vertices if v not in supp)
            if rest:
                conclusions.append(Conclusion(
                    rest, EMBEDS, "theorem_amalgam_trivial_part"))
    elif clique:
        # converse of the clique corollary: some star leaks outside
        for t in sorted(supp, key=g.index):
            xs = [x for x in x_set if g.adjacent(x, t)]
            if xs:
                witness = _abelian_relation_witness(g, nf, n, t, xs[0])
                conclusions.append(Conclusion(
                    _subset_without(g, t), DOES_NOT_EMBED,
                    "corollary_clique_converse", witness=witness))
    record = AmalgamRecord(synchronised, clique, independent, decomposition)
    return record, conclusions, order, wp, cp


def _merge_conclusions(pieces):
    merged = {}
    for c in pieces:
        key = tuple(sorted(c.subset))
        if key not in merged:
            merged[key] = Conclusion(c.subset, c.status, c.justification, c.witness)
            continue
        cur = merged[key]
        if c.status == UNKNOWN:
            continue
        if cur.status == UNKNOWN:
            merged[key] = Conclusion(c.subset, c.status, c.justification, c.witness)
        elif cur.status != c.status:
            raise ConflictingVerdicts(
                f"{key}: {cur.status} ({cur.justification}) vs "
                f"{c.status} ({c.justification})")
        else:
            if c.justification not in cur.justification:
                cur.justification += "; " + c.justification
            if cur.witness is None:
                cur.witness = c.witness
    return list(merged.values())


def _cycle_chord_advisories(g, nf, n):
    """Plain-cycle reduction: if adding the chord between the two
    neighbours of t makes the main theorem apply, the parabolic away from
    st(t) still embeds in the quotient over the original graph."""
    m = len(g)
    if m < 5 or len(g.edges) != m:
        return []
    if any(len(g.neighbours(v)) != 2 for v in g.vertices):
        return []
    out = []
    for t in sorted(support(g, nf.word), key=g.index):
        p, q = sorted(g.neighbours(t), key=g.index)
        if g.adjacent(p, q):
            continue
        chorded = CommutationGraph(
            g.vertices, [tuple(e) for e in g.edges] + [(p, q)])
        word_there = Word(chorded, nf.idx)
        try:
            rec = check_theorem_main(chorded, word_there, t, n)
        except (NotCyclicallyMinimal, TNotInSupport):
            continue
        if rec.verdict == EMBEDS:
            subset = tuple(v for v in g.vertices if v not in star(g, t))
            out.append(Conclusion(
                subset, RESTRICTED_EMBEDS, f"cycle_chord_reduction(t={t})"))
    return out


def magnus_verdict(g: CommutationGraph, s, n: int, t=None) -> FreiReport:
    """Aggregate the main theorem over candidate generators plus the
    amalgam corollaries into one report.

    When the graph has central vertices away from supp(s), the group
    splits off its centre as a direct factor and the verdict is computed
    on the complement and lifted.
    """
    nf = _require_cyclically_minimal(g, s)
    supp = support(g, nf.word)
    candidates = [t] if t is not None else sorted(supp, key=g.index)
    per_t = []
    pieces = []
    order_claims = []
    wp = cp = None

    for cand in candidates:
        rec = check_theorem_main(g, nf.word, cand, n)
        per_t.append(rec)
        if rec.verdict == EMBEDS:
            pieces.append(Conclusion(
                _subset_without(g, cand), EMBEDS, "theorem_main"))
            order_claims.append(n)
            if n >= 4:
                wp = DECIDABLE

    amalgam, am_conclusions, am_order, am_wp, am_cp = check_amalgam(g, nf.word, n)
    pieces.extend(am_conclusions)
    if am_order is not None:
        order_claims.append(am_order)
    wp = am_wp or wp
    cp = am_cp or cp

    # centre reduction: quotient questions factor through the complement
    # of the central vertices when the relator avoids them
    centre = central_vertices(g)
    if centre and supp and not (supp & centre) and len(centre) < len(g):
        rest = [v for v in g.vertices if v not in centre]
        sub_g = g.induced(rest)
        sub_word = _project_word(sub_g, g, nf.idx)
        sub_report = magnus_verdict(sub_g, sub_word, n)
        for c in sub_report.conclusions:
            if c.status == UNKNOWN:
                continue
            lifted = tuple(v for v in g.vertices
                           if v in set(c.subset) or v in centre)
            pieces.append(Conclusion(
                lifted, c.status, c.justification + "; centre_split", c.witness))
        if sub_report.order_of_s != "unknown":
            order_claims.append(sub_report.order_of_s)
        if sub_report.word_problem == DECIDABLE:
            wp = DECIDABLE
        if sub_report.conjugacy_problem == DECIDABLE:
            cp = DECIDABLE

    for cand in candidates:
        pieces.append(Conclusion(_subset_without(g, cand), UNKNOWN, "no_theorem_applies"))

    conclusions = _merge_conclusions(pieces)
    if len(set(order_claims)) > 1:
        raise ConflictingVerdicts(f"order claims disagree: {order_claims}")
    order = order_claims[0] if order_claims else "unknown"
    return FreiReport(
        graph=g, s=nf, n=n, per_t=per_t, amalgam=amalgam,
        conclusions=conclusions, order_of_s=order,
        word_problem=wp or "unknown", conjugacy_problem=cp or "unknown",
        advisories=_cycle_chord_advisories(g, nf, n),
    )


def _project_word(sub_g, g, idx):
    """Re-express letters of g over the induced subgraph sub_g."""
    letters = []
    for x in idx:
        name = g.name(abs(x))
        i = sub_g.index(name)
        letters.append(i if x > 0 else -i)
    return Word(sub_g, tuple(letters))
