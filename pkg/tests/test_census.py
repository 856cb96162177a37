import json
from itertools import product

import pytest

from pcgroups import census as C
from pcgroups.errors import (
    BadAlphabet,
    BadParameter,
    BadSeed,
    BudgetExceeded,
    NonIntegralFormula,
)
from pcgroups.words import canon_letters


def test_parse_h_word():
    assert C.parse_h_word(5, "a2 a1^-3") == (2, -1, -1, -1)
    with pytest.raises(BadAlphabet):
        C.parse_h_word(5, "a9")


def test_is_normal_form_general():
    # i = 2 pattern: a3 then a1-run then a2
    assert not C.is_normal_form(6, C.parse_h_word(6, "a3 a1 a2"))
    # beta = 0 instance of the i = 1 pattern: a2 directly before a1
    assert not C.is_normal_form(6, C.parse_h_word(6, "a2 a1 a3"))
    assert C.is_normal_form(6, C.parse_h_word(6, "a1 a2 a3"))
    assert C.is_normal_form(6, C.parse_h_word(6, "a2 a5 a3"))
    assert not C.is_normal_form(6, C.parse_h_word(6, "a3 a3^-1"))
    # wrapped pattern: a1 before a_{n-1}
    assert not C.is_normal_form(6, C.parse_h_word(6, "a1 a5"))
    assert C.is_normal_form(6, C.parse_h_word(6, "a5 a1"))


def test_is_normal_form_square():
    assert C.is_normal_form(5, C.parse_h_word(5, "a2 a4 a1"), square=True)
    assert not C.is_normal_form(5, C.parse_h_word(5, "a1 a2"), square=True)
    assert not C.is_normal_form(5, C.parse_h_word(5, "a2 a2^-1"), square=True)
    with pytest.raises(BadParameter):
        C.is_normal_form(6, (2,), square=True)


def test_every_generated_form_passes_the_membership_test():
    for lev in C._iter_general_forms(6, 3):
        for w in lev:
            assert C.is_normal_form(6, w)
    for lev in C._iter_square_forms(3):
        for w in lev:
            assert C.is_normal_form(5, w, square=True)


def test_normal_form_uniqueness_small():
    # bucket freely reduced words by canonical element: exactly one
    # normal form of each system per bucket
    for n, square, max_len in ((5, True, 4), (6, False, 4)):
        m = n - 1
        adj = C._h_adj(n)
        letters = [s * i for i in range(1, m + 1) for s in (1, -1)]
        buckets = {}
        frontier = [()]
        seen_words = [()]
        for _ in range(max_len):
            frontier = [w + (y,) for w in frontier for y in letters
                        if not w or w[-1] != -y]
            seen_words.extend(frontier)
        for w in seen_words:
            key = canon_letters(adj, w)
            entry = buckets.setdefault(key, [0, 0])
            if C.is_normal_form(n, w):
                entry[0] += 1
            if square and C.is_normal_form(n, w, square=True):
                entry[1] += 1
        for key, (general_count, square_count) in buckets.items():
            assert general_count == 1, key
            if square:
                assert square_count == 1, key


def test_formulas_small_grid():
    for d in range(0, 4):
        assert C.enumerate_LH(5, d)["l_H"] == C.formula_lH_5(d)
        lhu = C.enumerate_LHU(5, d)
        assert lhu["l_HU"] == C.formula_lHU_5(d)
        assert lhu["e"] == C.formula_e(d)
        assert lhu["a"] == 0  # no interior letters exist at n = 5
        assert C.enumerate_LU(d) == C.formula_lU(d)
        assert C.enumerate_e_prime(5, d) == C.formula_e_prime(d)


def test_first_letter_split_consistency():
    for n, d in ((5, 3), (6, 3), (7, 2)):
        lhu = C.enumerate_LHU(n, d)
        # identity carries no first letter
        assert lhu["a"] + lhu["b"] + lhu["c"] == lhu["l_HU"] - 1


def test_bounds_n6_n7():
    for n in (6, 7):
        detail = C.bounds_hold(n, d_list=[1, 2, 3], m_list=[1, 2, 3])
        assert all(ok for (*_, ok) in detail)


def test_composed_formula_match_small():
    for d, k in product(range(0, 3), range(1, 3)):
        comp = C.enumerate_composed(5, d, k)
        lH, lHU = C.formula_lH_5(d), C.formula_lHU_5(d)
        assert comp["l1"] == C.formula_l1(d, k)
        assert comp["l2"] == C.formula_l2(lH, lHU, k)
        tH = lH - C.formula_e_prime(d)
        tHU = lHU - C.formula_e(d)
        assert comp["z2_l2"] == C.formula_z2ii(tH, tHU, k)


def test_composed_spec_values():
    assert C.enumerate_composed(5, 0, 1)["l_dk"] == 3
    assert C.enumerate_composed(5, 1, 2)["l2"] == 216
    assert C.formula_l2_stratum(C.formula_lH_5(1), C.formula_lHU_5(1), 1) == 18
    assert C.formula_l2_stratum(C.formula_lH_5(1), C.formula_lHU_5(1), 2) == 180
    assert C.formula_l1(0, 1) == 2
    assert C.enumerate_LH(6, 0)["l_H"] == 1


def test_exact_division_guard():
    with pytest.raises(NonIntegralFormula):
        C._exact_div(7, 3)


def test_composition_counts():
    from math import comb
    for total in range(1, 7):
        for parts in range(1, total + 1):
            found = list(C.compositions(total, parts))
            assert len(found) == comb(total - 1, parts - 1)
            assert all(sum(p) == total and min(p) >= 1 for p in found)
            assert len(set(found)) == len(found)


def test_strict_tallies_match_per_word_classification():
    for d, k in ((1, 2), (2, 1), (2, 2)):
        comp = C.enumerate_composed(5, d, k)
        got = {"n": 0, "z1": 0, "z3": 0, "z4": 0, "tpow": 0, "z2ii": 0,
               "zY": 0}
        for stratum, letters in C.iter_strict_composed(5, d, k):
            f = C.classify_Z(5, letters)
            got["n"] += 1
            got["z1"] += f["z1"]
            got["z3"] += f["z3"]
            got["z4"] += f["z4"]
            if stratum == "L2":
                got["tpow"] += not f["z4"]
                got["z2ii"] += f["z2"]
                got["zY"] += f["zY"]
        l_u = C.enumerate_LU(d)
        assert got["n"] == comp["l_dk"]
        assert got["z1"] == comp["l_dk"] - comp["l_d0"]
        assert got["z3"] == comp["l_dk"] - l_u - comp["l1"]
        assert got["z4"] == (comp["l_d0"] + 2 * l_u
                             + comp["l2_strict"] - comp["tpowers_strict"])
        assert got["tpow"] == comp["tpowers_strict"]
        assert got["z2ii"] == comp["z2_l2_strict"]
        assert got["zY"] == comp["zY_strict"]


def test_classify_Z_examples():
    f = C.classify_Z(5, C.parse_h_word(5, "1") + (1, 1, 1))  # t^3
    assert f == {"z1": True, "z2": True, "z3": False, "z4": False,
                 "zY": False}
    f = C.classify_Z(5, (3, 1))  # a2 t
    assert f == {"z1": True, "z2": False, "z3": True, "z4": True,
                 "zY": False}
    f = C.classify_Z(5, (3, 4, 1))  # a2 a3 t
    assert all(f.values())
    f = C.classify_Z(5, (3,))  # a2: in H, and a2 alone is not maln
    assert f == {"z1": False, "z2": False, "z3": True, "z4": True,
                 "zY": False}


def test_tpower_bound_holds_small():
    for d in (1, 2, 3):
        for k in (1, 2, 3):
            comp = C.enumerate_composed(5, d, k)
            bound = C.tpower_bound(C.formula_lHU_5(d), C.formula_lH_5(d),
                                   2 * d, k)
            assert comp["tpowers_strict"] <= bound


def test_census_row_and_csv():
    row = C.census_row(5, 2, 2)
    e = row.enumerated
    assert e["l_H"] == 49 and e["l_HU"] == 21
    assert e["z2"] == row.formula["z2"]
    assert e["l2"] == row.formula["l2"]
    assert e["l_dk"] == e["l_d0"] + e["l1"] + e["l2_strict"]
    text = C.rows_to_csv([row])
    header, record = text.strip().split("\n")
    assert header == ",".join(C.CensusRow.COLUMNS)
    assert record.split(",")[:3] == ["5", "2", "2"]
    data = json.loads(row.to_json())
    assert data["enumerated"]["l_H"] == 49


def test_sample_mode_deterministic():
    r1 = C.census_row(5, 2, 2, mode="sample", samples=400, seed=11)
    r2 = C.census_row(5, 2, 2, mode="sample", samples=400, seed=11)
    assert r1.enumerated["rho_sample"] == r2.enumerated["rho_sample"]
    exact = r1.enumerated["rho_hat"]
    assert abs(r1.enumerated["rho_sample"] - exact) <= 5 * r1.rho_se + 1e-9


def test_sample_mode_needs_seed_and_samples():
    with pytest.raises(BadSeed):
        C.census_row(5, 1, 1, mode="sample", samples=10)
    with pytest.raises(BadParameter):
        C.census_row(5, 1, 1, mode="sample", seed=1)
    with pytest.raises(BadParameter):
        C.census_row(5, 1, 1, mode="nonsense")


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        C.enumerate_LH(7, 9)


def test_density_summary():
    out = C.density(5, 2, 2)
    assert out["zY"] == 72 and out["l_dk"] == 3125
    assert out["rho_hat"] == pytest.approx(72 / 3125)
