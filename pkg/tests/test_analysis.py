import json
import random
from decimal import Decimal
from fractions import Fraction

import pytest

from golombic.analysis import (
    KAPPA_ENV, TermBudgetExceeded, degree_check, fibonacci, format_symbolic, golden_minus_one,
    is_homogeneous, mallows_kappa, ratio_report, symbolic_seq_polynomial,
)
from golombic.fastseq import golombic_numbers, levine_numbers
from golombic.freegroup import Word, parse_word
from golombic.goloper import gol_seq_oracle, lev_seq_oracle
from golombic.mpoly import MPoly, evaluate
from golombic.tables import TABLES

W = parse_word
m, b = MPoly.var(1), MPoly.var(2)


def word_of(point):
    return Word(zip(point[1::2], point[0::2]))


class TestHomogeneous:
    @pytest.mark.parametrize("text,want", [
        ("1 2^2", True), ("-2 3 -1", False), ("1^-3 2^2", False), ("0^-2 -1^-4", True), ("0 -1^-4", False), ("0 3", True),
    ])
    def test_examples(self, text, want):
        assert is_homogeneous(W(text)) is want


class TestRatios:
    def test_constant_sequence(self):
        rep = ratio_report([1, 1, 1], "golden")
        assert rep.rows[0].ratio == 1
        assert rep.final_deviation > Decimal("0.3")

    def test_zero_denominator_skipped(self):
        rep = ratio_report([1, 0, 3, 4], "golden")
        assert [r.n for r in rep.rows] == []
        assert len(rep.notes) == 2

    def test_table_ratios(self):
        lev = TABLES[2].values
        assert ratio_report(lev[:14], "mallows").final_deviation < Decimal("1e-3")
        gol = TABLES[1].values
        assert ratio_report(gol[:15], "golden").final_deviation < Decimal("1e-3")

    def test_out_of_scope_flag(self):
        rep = ratio_report([1, 2, 3, 4], "golden", seed=W("1^-3 2^2"))
        assert not rep.in_scope
        assert "outside conjecture scope" in rep.render()

    def test_records(self):
        rep = ratio_report(TABLES[2].values[:8], "mallows", kind="levine", seed=W("2"))
        recs = [json.loads(line) for line in rep.render("records").splitlines()]
        assert [r["n"] for r in recs] == list(range(2, 8))
        assert recs[0]["ratio"] == "1"

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            ratio_report([1, 2, 3], "pi")

    def test_constants(self, monkeypatch):
        assert str(golden_minus_one())[:14] == "0.618033988749"
        monkeypatch.delenv(KAPPA_ENV, raising=False)
        assert mallows_kappa() == Decimal("0.278877061")
        monkeypatch.setenv(KAPPA_ENV, "0.27887706137")
        assert mallows_kappa() == Decimal("0.27887706137")


class TestSymbolic:
    def test_small_golombic(self, vs5):
        assert symbolic_seq_polynomial("golombic", 1, 1, vs5) == m
        assert symbolic_seq_polynomial("golombic", 2, 1, vs5) == m * b
        assert symbolic_seq_polynomial("golombic", 3, 1, vs5) == (b * m * (m + 1)).scale(Fraction(1, 2))

    def test_cross_check_with_table(self, vs5):
        p = symbolic_seq_polynomial("golombic", 3, 1, vs5)
        assert evaluate(p, [1, 2]) == TABLES[1].values[2]

    @pytest.mark.parametrize("kind,k", [("golombic", 1), ("golombic", 2), ("levine", 1), ("levine", 2)])
    def test_matches_oracle(self, vs5, kind, k):
        rng = random.Random(k)
        oracle = gol_seq_oracle if kind == "golombic" else lev_seq_oracle
        polys = [symbolic_seq_polynomial(kind, n, k, vs5) for n in range(1, 5)]
        for _ in range(15):
            point = [rng.randint(-3, 3) for _ in range(2 * k)]
            want = oracle(word_of(point), 4)
            assert [evaluate(p, point) for p in polys] == list(want)

    def test_budget(self, vs5):
        with pytest.raises(TermBudgetExceeded):
            symbolic_seq_polynomial("golombic", 5, 2, vs5, term_budget=10)

    def test_names(self, vs5):
        p = symbolic_seq_polynomial("golombic", 2, 2, vs5)
        assert format_symbolic(p, 2) == "m1*b1 + m2*b2"


class TestDegrees:
    def test_fibonacci(self):
        assert [fibonacci(n) for n in range(9)] == [0, 1, 1, 2, 3, 5, 8, 13, 21]

    def test_examples(self, vs7):
        rep = degree_check("golombic", 3, 1, vs7)
        assert [(r.degree, r.expected) for r in rep.rows] == [(2, 2), (1, 1)]
        assert "F_3/F_2: agree" in rep.render()
        rep = degree_check("golombic", 1, 1, vs7)
        assert rep.agrees and [r.degree for r in rep.rows] == [1, 0]

    def test_levine_two_powers(self, vs7):
        for n in range(1, 6):
            rep = degree_check("levine", n, 2, vs7)
            assert rep.agrees, rep.render()

    def test_records(self, vs5):
        recs = degree_check("golombic", 4, 1, vs5).render("records").splitlines()
        assert [json.loads(r)["variable"] for r in recs] == ["m1", "b1"]


class TestPlot:
    def test_writes_png(self, tmp_path):
        from golombic.plotting import plot_ratios

        rep = ratio_report(TABLES[2].values[:14], "mallows", kind="levine", seed=W("2"))
        out = plot_ratios(rep, tmp_path / "sub" / "ratios.png")
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
