import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golombic.freegroup import Word, content
from golombic.goloper import gol_iter
from golombic.mpoly import MPoly, is_strongly_positive, restrict, to_binomial
from golombic.vardi import (
    IDENTITIES, CacheError, CorruptCache, IntegrityError, VardiSet, WindowTooSmall, cached_window, ensure,
    eval_T, eval_T_fused, fused, generate, hat_prefix, load, save, verify,
)

x1, x2, x3 = (MPoly.var(j) for j in (1, 2, 3))
C = MPoly.binomial_power


def oracle_T(n, a):
    return content(gol_iter(a, n, Word.power(1)))


class TestGenerate:
    def test_first_polynomials(self, vs5):
        assert vs5.poly(0) == 1
        assert vs5.poly(1) == x1
        assert vs5.poly(2) == x1 * x2
        assert vs5.poly(3) == to_binomial(x1 * x2 * x3) + C((2, 1))
        assert vs5.tilde[2] == (2, x1 - 1)

    def test_polynomials_are_strongly_positive_and_integral(self, vs5):
        for n in range(1, 6):
            T = vs5.poly(n)
            assert T.basis == "binomial"
            assert is_strongly_positive(T)
            assert all(isinstance(c, int) for c in T.coefficients())
            assert T.nvars <= n

    def test_tilde_identity(self, vs5):
        for n in range(2, 6):
            d, tt = vs5.tilde[n - 1]
            assert tt * (x1 * x2) == restrict(vs5.poly(n), n - 1) * d

    def test_extension_reuses_lower_polynomials(self, vs5):
        ext = generate(6, base=vs5.truncated(4))
        assert ext.T[:5] == vs5.T
        assert ext.content_hash == generate(6).content_hash

    def test_window_limits(self, vs5):
        with pytest.raises(WindowTooSmall, match="not generated"):
            vs5.poly(6)
        with pytest.raises(ValueError):
            generate(0)


class TestEvaluation:
    def test_examples(self, vs5):
        assert eval_T(vs5, 2, (7, -3)) == -21
        assert eval_T(vs5, 4, (0, 5, 6, 7)) == 0
        assert eval_T(vs5, 3, (1, 2, 3)) == 6 == oracle_T(3, (1, 2, 3))
        assert eval_T_fused(vs5, (1, 2, 3, 4, 5))[:3] == (1, 2, 6)
        assert eval_T_fused(vs5, (0, 4, -2, 1, 9)) == (0,) * 5
        assert eval_T_fused(vs5, (6, 0, 3, 3, 3)) == (6, 0, 0, 0, 0)

    @settings(max_examples=100)
    @given(st.lists(st.integers(-6, 6), min_size=7, max_size=7))
    def test_fused_matches_definition_and_oracle(self, vs5, a):
        got = fused(vs5, a)
        assert got == [eval_T(vs5, n, a) for n in range(1, 6)]
        assert got[:4] == [oracle_T(n, a) for n in range(1, 5)]

    def test_fused_on_big_integers(self, vs7):
        rng = random.Random(7)
        a = [rng.randrange(-10**60, 10**60) for _ in range(7)]
        assert fused(vs7, a) == [eval_T(vs7, n, a) for n in range(1, 8)]

    def test_inexact_division_is_an_integrity_error(self, vs5):
        d, tt = vs5.tilde[3]
        broken = VardiSet(5, vs5.T, vs5.tilde[:3] + [(d, tt + 1)] + vs5.tilde[4:])
        with pytest.raises(IntegrityError):
            for a1 in range(1, 40):
                fused(broken, (a1, 1, 1, 1, 1))


class TestHat:
    def test_examples(self, vs5):
        assert hat_prefix(vs5, (1, 1, 1, 1), 4) == (-1, 1, 2, 2)
        assert hat_prefix(vs5, (0, 2, 3, 4, 5), 5) == (0, 2, 3, 4, 5)

    @given(st.lists(st.integers(-9, 9), min_size=7, max_size=7))
    def test_involution_and_sign_flip(self, vs5, a):
        h = hat_prefix(vs5, a, 7)
        assert hat_prefix(vs5, h, 7) == tuple(a)
        for n in range(1, 6):
            assert eval_T(vs5, n, h) == -eval_T(vs5, n, a)

    def test_window_too_small(self, vs5):
        with pytest.raises(WindowTooSmall, match="window too small"):
            hat_prefix(vs5, (1,) * 8, 8)


class TestCache:
    def test_round_trip(self, vs5, tmp_path):
        save(vs5, tmp_path)
        back = load(tmp_path)
        assert back.window == 5 and back.T == vs5.T and back.tilde == vs5.tilde
        assert back.content_hash == vs5.content_hash
        assert cached_window(tmp_path) == 5

    def test_truncated_file_is_corrupt(self, vs5, tmp_path):
        save(vs5, tmp_path)
        p = tmp_path / "T4.mpoly"
        p.write_text(p.read_text()[:-20])
        with pytest.raises(CorruptCache, match="corrupt cache"):
            load(tmp_path)

    def test_missing_file_is_corrupt(self, vs5, tmp_path):
        save(vs5, tmp_path)
        (tmp_path / "tilde2.mpoly").unlink()
        with pytest.raises(CorruptCache, match="corrupt cache"):
            load(tmp_path)

    def test_bad_manifest(self, vs5, tmp_path):
        save(vs5, tmp_path)
        (tmp_path / "manifest.json").write_text("{")
        with pytest.raises(CorruptCache):
            load(tmp_path)

    def test_wrong_format_version(self, vs5, tmp_path):
        save(vs5, tmp_path)
        m = json.loads((tmp_path / "manifest.json").read_text())
        m["format"] = "something-else/0"
        (tmp_path / "manifest.json").write_text(json.dumps(m))
        with pytest.raises(CacheError, match="regenerate"):
            load(tmp_path)

    def test_smaller_cache_than_requested(self, vs5, tmp_path):
        save(vs5, tmp_path)
        with pytest.raises(WindowTooSmall, match="vardi gen 7"):
            load(tmp_path, 7)

    def test_no_cache(self, tmp_path):
        with pytest.raises(CacheError):
            load(tmp_path / "nothing")

    def test_ensure_extends_incrementally(self, vs5, tmp_path):
        save(vs5.truncated(3), tmp_path)
        before = (tmp_path / "T3.mpoly").stat().st_mtime_ns
        vs = ensure(5, tmp_path)
        assert vs.T == vs5.T
        assert cached_window(tmp_path) == 5
        assert (tmp_path / "T3.mpoly").stat().st_mtime_ns == before
        assert ensure(4, tmp_path).window == 4


class TestVerify:
    def test_all_pass(self, vs5):
        rep = verify(vs5, 50, seed=1)
        assert rep.ok, rep.render()
        assert rep.render().endswith("all identities pass")
        assert len(rep.checks) == 9

    def test_failure_names_identity_and_witness(self, vs5):
        bad = VardiSet(5, vs5.T[:4] + [vs5.T[4] + 1], vs5.tilde)
        rep = verify(bad, 3, seed=0)
        assert not rep.ok
        f = rep.failures[0]
        assert f.n == 5 and f.identity in IDENTITIES
        assert len(f.witness) == 7  # the random tuple W + 2 long
        assert "failures" in rep.render()
