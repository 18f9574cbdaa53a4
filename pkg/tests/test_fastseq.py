import json

import pytest
from hypothesis import given, settings

from golombic.fastseq import (
    Checkpoint, InconsistentSeedError, SeqReport, UnreachableError, bootstrap, even_horizon,
    golombic_numbers, levine_numbers, plan, render,
)
from golombic.freegroup import IDENTITY, embed, parse_seed, parse_word
from golombic.goloper import gol_seq_oracle, lev_seq_oracle, triangle
from golombic.tables import TABLES
from golombic.vardi import IntegrityError
from strategies import small_words

W = parse_word
GOL2 = TABLES[1].values
LEV2 = TABLES[2].values


def h_even_from(values, W_, offset=0):
    return [values[offset + n - 1] for n in range(2, even_horizon(W_) + 1, 2)]


class TestFastCalls:
    def test_golombic_two(self, vs7):
        assert golombic_numbers(W("2"), vs7) == GOL2[:7]

    def test_identity(self, vs7):
        assert golombic_numbers(IDENTITY, vs7) == (0,) * 7
        assert levine_numbers(IDENTITY, vs7, [0, 0]) == (0,) * 7

    def test_levine_two(self, vs8):
        assert levine_numbers(W("2"), vs8, [2, 3, 7]) == (1, 2, 2, 3, 4, 7, 14, 42)

    def test_levine_deeper_row(self, vs8):
        # row 2 of the lev(2) triangle yields lev_3(2), lev_4(2), ...
        row2 = triangle("levine", W("2"), 2)[-1].word
        assert row2 == W("2 1")
        out = levine_numbers(row2, vs8, h_even_from(LEV2, 8, offset=2))
        assert out == LEV2[2:10]
        assert out[-1] == 2837

    def test_inconsistent_seed_values(self, vs7):
        with pytest.raises(InconsistentSeedError, match="inconsistent seed values"):
            levine_numbers(W("2"), vs7, [2, 4])

    def test_too_few_even_values(self, vs7):
        with pytest.raises(ValueError):
            levine_numbers(W("2"), vs7, [2])

    @settings(max_examples=100, deadline=None)
    @given(small_words)
    def test_agree_with_oracle(self, vs5, w):
        assert golombic_numbers(w, vs5) == gol_seq_oracle(w, 5)
        lev = lev_seq_oracle(w, 5)
        assert levine_numbers(w, vs5, [lev.at(2)]) == lev

    def test_even_horizon(self):
        assert [even_horizon(w) for w in range(1, 10)] == [0, 0, 0, 2, 2, 4, 4, 6, 6]


class TestCheckpoint:
    def test_resume_gives_same_answer(self, vs5, tmp_path):
        w = triangle("golombic", W("2"), 6)[-1].word
        assert len(w) == 11
        ck = Checkpoint(tmp_path / "ck.json", every=2)

        def stop(done, total):
            if done == 7:
                raise KeyboardInterrupt

        with pytest.raises(KeyboardInterrupt):
            golombic_numbers(w, vs5, checkpoint=ck, progress=stop)
        state = json.loads(ck.path.read_text())
        assert state["j"] == 6 and state["kind"] == "golombic"
        seen = []
        out = golombic_numbers(w, vs5, checkpoint=ck, progress=lambda d, t: seen.append(d))
        assert seen[0] == 7
        assert out == golombic_numbers(w, vs5)
        assert not ck.path.exists()

    def test_foreign_state_is_ignored(self, vs5, tmp_path):
        ck = Checkpoint(tmp_path / "ck.json")
        ck.save("golombic", W("3"), 0, 5, 1, [9] * 5)
        assert ck.resume("golombic", W("2"), 0, 5) is None
        assert ck.resume("levine", W("3"), 0, 5) is None
        assert golombic_numbers(W("2"), vs5, checkpoint=ck) == GOL2[:5]


class TestPlan:
    def test_schedules(self):
        assert plan("golombic", 13, 7) == ([6], 6)
        assert plan("levine", 15, 7) == ([2, 5, 8], 8)
        assert plan("levine", 14, 7) == ([1, 4, 7], 7)
        assert plan("levine", 13, 7) == ([0, 3, 6], 6)
        assert plan("levine", 20, 9) == ([2, 5, 8, 11], 11)
        assert plan("levine", 4, 7) == ([0], 2)


class TestBootstrap:
    def test_table_one_prefix(self, vs7):
        rep = bootstrap("golombic", W("2"), 13, vs7)
        assert rep.values == GOL2[:13]
        assert rep.values.at(13) == 7930047000157075949085439
        assert rep.schedule == [6] and rep.oracle_checked_prefix == 8

    def test_table_two_prefix(self, vs7):
        rep = bootstrap("levine", W("2"), 15, vs7)
        assert rep.schedule == [2, 5, 8]
        assert rep.values == LEV2[:15]

    def test_tuple_seeds(self, vs7):
        assert bootstrap("levine", parse_seed("0,0,1"), 14, vs7).values == TABLES[3].values[:14]
        assert bootstrap("levine", parse_seed("0 2"), 13, vs7).values == TABLES[4].values[:13]

    def test_short_targets(self, vs7):
        assert bootstrap("levine", W("2"), 3, vs7).values == (1, 2, 2)
        assert bootstrap("golombic", W("2"), 1, vs7).values == (1,)

    def test_oracle_only(self):
        rep = bootstrap("levine", W("2"), 9, None, oracle_only=True)
        assert rep.method == "oracle" and rep.oracle_checked_prefix == 9
        assert rep.values == LEV2[:9]

    def test_check_extends_checked_prefix(self, vs7):
        rep = bootstrap("levine", W("2"), 12, vs7, check=11)
        assert rep.oracle_checked_prefix == 11

    def test_dying_orbit_falls_back_to_oracle(self, vs5):
        rep = bootstrap("golombic", W("-2"), 12, vs5)
        assert rep.values == (1, -2, -2, 1, -1, -1)
        assert rep.orbit_died_at == 6

    def test_unreachable_names_maximal_index(self, vs5):
        with pytest.raises(UnreachableError) as info:
            bootstrap("golombic", W("2"), 16, vs5, budget=10_000)
        # row 10 cannot be built, so the last fast call sits at row 9
        assert info.value.max_index == 9 + 5
        assert "larger window" in str(info.value)
        assert bootstrap("golombic", W("2"), 14, vs5, budget=10_000).values == GOL2[:14]

    def test_fast_and_oracle_disagreement_is_fatal(self, vs5, monkeypatch):
        import golombic.fastseq as fs

        real = fs.golombic_numbers
        monkeypatch.setattr(fs, "golombic_numbers",
                            lambda *a, **k: type(real(*a, **k))([x + 1 for x in real(*a, **k)]))
        with pytest.raises(IntegrityError):
            fs.bootstrap("golombic", W("2"), 8, vs5)


class TestRender:
    def test_bfile(self, vs7):
        rep = bootstrap("levine", W("2"), 6, vs7)
        assert render(rep, "bfile") == "1 1\n2 2\n3 2\n4 3\n5 4\n6 7\n"

    def test_records(self, vs7):
        rep = bootstrap("golombic", W("2"), 13, vs7)
        recs = [json.loads(line) for line in render(rep, "records").splitlines()]
        assert recs[-1]["value"] == "7930047000157075949085439"
        assert [r["oracle_checked"] for r in recs].count(True) == rep.oracle_checked_prefix

    def test_human_header(self, vs7):
        out = render(bootstrap("levine", W("2"), 15, vs7))
        assert out.splitlines()[0].startswith("# lev(2)  method=chained(W=7, schedule=2,5,8)")

    def test_unknown_format(self, vs7):
        with pytest.raises(ValueError):
            render(bootstrap("levine", W("2"), 3, vs7), "xml")

    def test_report_invariants(self):
        with pytest.raises(ValueError):
            SeqReport("golombic", W("2"), [(1, 1), (3, 2)], "oracle", 0)
        with pytest.raises(ValueError):
            SeqReport("golombic", W("2"), [(1, 1)], "oracle", 2)


def test_unreadable_checkpoint_is_ignored(vs5, tmp_path):
    ck = Checkpoint(tmp_path / "ck.json")
    ck.path.write_text("{not json")
    assert golombic_numbers(W("2"), vs5, checkpoint=ck) == GOL2[:5]
