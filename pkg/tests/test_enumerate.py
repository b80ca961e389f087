import pytest

from ppp import enumerate as en
from ppp import geometry as g
from ppp import series as se


def test_pp_counts():
    assert [len(en.gen_pps(n)) for n in (2, 3)] == [1, 2]
    assert {g.encode(g.PPP(p, 1)) for p in en.gen_pps(3)} == {
        "PPP1:1..2;m=1",
        "PPP1:1..1,1..1;m=1",
    }


def test_smallest_table():
    table = en.count_table(2, 1)
    _, _, p1 = se.ppp_zpart(2)
    assert table.counts == {(1, 1, 1): 1} and p1[1, 1] == 1


def test_population_is_sorted_and_unique():
    ppps = en.gen_ppps(6, 2)
    assert len(set(ppps)) == len(ppps)
    assert ppps == sorted(ppps, key=en._sort_key)
    assert all(not g.is_degenerated(p) for p in ppps)


def test_thickness_bound():
    for p in en.gen_ppps(6, 2):
        assert en.thickness_or_none(p, g.DEFAULT) in (1, 2)


@pytest.mark.parametrize("k", [1, 2])
def test_table_matches_p1(k):
    table = en.count_table(6, 2)
    _, _, p1 = se.ppp_zpart(6)
    for w in range(1, 6):
        for h in range(1, 7 - w):
            assert table.counts.get((w, h, k), 0) == p1[w, h]


def test_orbit_sizes_divide_width():
    for p in en.gen_ppps(6, 2):
        assert p.width % g.orbit(p).size == 0


def test_orbits_match_polya():
    s = se.polya_S(6).integers()
    orbits = en.orbit_counts(6, 2)
    for sp in range(2, 7):
        assert orbits[sp, 1] == orbits[sp, 2] == s[sp]


def test_codomain_counts():
    assert len(en.trees_of_size(0)) == 1
    assert len(en.tuples_of_weight(3)) == 4
    assert len(list(en.marked_tuples_of_weight(3))) == 6


def test_csv_and_json():
    table = en.count_table(3, 1)
    assert table.to_csv().splitlines()[0] == "width,height,thickness,count"
    assert '"count"' in table.to_json()


class TestCalibration:
    def test_report_is_deterministic(self):
        a = en.report_json(en.calibrate(4, 2))
        b = en.report_json(en.calibrate(4, 2))
        assert a == b

    def test_default_passes(self):
        report = en.calibrate(5, 2)
        assert str(g.DEFAULT) in report["passing_all"]

    def test_failures_carry_counterexamples(self):
        report = en.calibrate(4, 2)
        for combo in report["combinations"]:
            for name, result in combo["properties"].items():
                assert result["pass"] or result["counterexample"] is not None, (combo["conventions"], name)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            en.calibrate(1, 1)
