import pytest

from pcgroups.cosets import (
    double_coset_rep,
    in_maln,
    parabolic,
    parabolic_member,
    strip_divisors,
)
from pcgroups.errors import NotAClique
from pcgroups.graphs import build_graph, cycle_with_chord
from pcgroups.words import (
    equal,
    minimal_form,
    support,
    word_from_idx,
)

from oracles import all_words

C5P = cycle_with_chord(5)
U_CTX = parabolic(C5P, {"a1", "a4"})


def test_parabolic_member():
    g = build_graph(["a", "b"], [("a", "b")])
    assert parabolic_member(parabolic(g, {"a", "b"}), "a b^-1")
    assert not parabolic_member(parabolic(g, {"a"}), "a b a^-1")
    assert parabolic_member(parabolic(g, set()), "1")


def test_strip_divisors_basic():
    rep = strip_divisors(U_CTX, "a1 a2")
    assert (str(rep.left), str(rep.core), str(rep.right)) == ("a1", "a2", "1")


def test_strip_divisors_whole_word():
    rep = strip_divisors(U_CTX, "a4 a1^-2")
    assert str(rep.core) == "1"
    assert equal(C5P, "a4 a1^-2", str(rep.left) + " " + str(rep.right)
                 if str(rep.right) != "1" else str(rep.left))


def test_strip_divisors_left_greedy():
    rep = strip_divisors(U_CTX, "a2 a1")
    assert (str(rep.left), str(rep.core), str(rep.right)) == ("a1", "a2", "1")


def test_strip_divisors_roundtrip_lengths():
    for w in all_words(5, 4):
        word = word_from_idx(C5P, w)
        rep = strip_divisors(U_CTX, word)
        total = len(minimal_form(C5P, word))
        assert total == len(rep.left) + len(rep.core) + len(rep.right)
        recombined = rep.left.idx + rep.core.idx + rep.right.idx
        assert equal(C5P, word, word_from_idx(C5P, recombined))
        assert not (support(C5P, rep.core.word) <= {"a1", "a4"}) \
            or len(rep.core) == 0


def test_double_coset_rep_identity_cases():
    assert str(double_coset_rep(U_CTX, "a1 a4^-1")) == "1"
    assert str(double_coset_rep(U_CTX, "a1 a2 a4")) == "a2"


def test_double_coset_rep_inverse_closed():
    for w in all_words(5, 3):
        word = word_from_idx(C5P, w)
        d = double_coset_rep(U_CTX, word)
        d_inv = double_coset_rep(
            U_CTX, word_from_idx(C5P, tuple(-x for x in reversed(w))))
        assert equal(C5P, d_inv.word,
                     word_from_idx(C5P, tuple(-x for x in reversed(d.idx))))


def test_in_maln_examples():
    assert in_maln(C5P, {"a1", "a4"}, "a2 a3")
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert not in_maln(g, {"b"}, "a c")
    assert not in_maln(C5P, {"a1", "a4"}, "a1 a4^2")


def test_in_maln_requires_clique():
    with pytest.raises(NotAClique):
        in_maln(C5P, {"a1", "a3"}, "a2")
    with pytest.raises(NotAClique):
        in_maln(C5P, set(), "a2")


def test_in_maln_coset_stability():
    u_words = [(), (2,), (-5,), (2, 5)]  # 1, a1, a4^-1, a1 a4
    for w in all_words(5, 2):
        word = word_from_idx(C5P, w)
        if not in_maln(C5P, {"a1", "a4"}, word):
            continue
        for u in u_words:
            for v in u_words:
                assert in_maln(C5P, {"a1", "a4"}, word_from_idx(C5P, u + w + v))


def _u_ball(max_len):
    """Elements a4^x a1^y with |x| + |y| <= max_len as letter tuples."""
    out = []
    for x in range(-max_len, max_len + 1):
        for y in range(-max_len, max_len + 1):
            if abs(x) + abs(y) <= max_len:
                out.append((5,) * x if False else
                           tuple([5 if x > 0 else -5] * abs(x))
                           + tuple([2 if y > 0 else -2] * abs(y)))
    return out


def test_double_coset_invariance_small():
    u_ball = _u_ball(2)
    for w in all_words(5, 2):
        word = word_from_idx(C5P, w)
        d = double_coset_rep(U_CTX, word)
        for u in u_ball[:9]:
            for v in u_ball[:9]:
                other = word_from_idx(C5P, u + w + v)
                assert double_coset_rep(U_CTX, other).idx == d.idx
