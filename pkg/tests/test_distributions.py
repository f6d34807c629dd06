import json
import math
from fractions import Fraction
from math import comb

import pytest

from minfact.distributions import (
    PmfTable,
    compare_report,
    compare_report_text,
    pmf_limit,
    pmf_limit_table,
    pmf_montecarlo,
    pmf_oracle_dfs,
    pmf_oracle_tree,
    pmf_theorem1,
    pmf_theorem1_table,
)
from minfact.errors import CapExceededError, DomainError


def test_oracle_tree_small_tables():
    assert pmf_oracle_tree(2).entries == {(1, 1): Fraction(1)}
    third = Fraction(1, 3)
    assert pmf_oracle_tree(3).entries == {(1, 1): third, (1, 2): third, (2, 1): third}
    assert pmf_oracle_tree(4).entries == {
        (1, 1): Fraction(3, 16),
        (1, 2): Fraction(5, 16),
        (2, 1): Fraction(5, 16),
        (1, 3): Fraction(1, 16),
        (3, 1): Fraction(1, 16),
        (2, 2): Fraction(1, 16),
    }


def test_oracle_tree_caps():
    with pytest.raises(CapExceededError):
        pmf_oracle_tree(10)
    with pytest.raises(CapExceededError):
        pmf_oracle_dfs(7)


def test_oracles_agree_exactly():
    for n in range(2, 7):
        assert pmf_oracle_tree(n).entries == pmf_oracle_dfs(n).entries


def test_oracle_normalization_support_symmetry():
    for n in range(2, 9):
        table = pmf_oracle_tree(n)
        assert table.total() == 1
        for (i, j), p in table.entries.items():
            assert i >= 1 and j >= 1 and i + j <= n
            assert table.entries[(j, i)] == p


def test_oracle_marginal_closed_form():
    # P(T_1 = i) = C(n-2, i-1) (n-1)^(n-1-i) / n^(n-2)
    for n in range(2, 8):
        table = pmf_oracle_tree(n)
        marginal: dict[int, Fraction] = {}
        for (i, _j), p in table.entries.items():
            marginal[i] = marginal.get(i, Fraction(0)) + p
        for i, p in marginal.items():
            expected = Fraction(
                comb(n - 2, i - 1) * (n - 1) ** (n - 1 - i), n ** (n - 2)
            )
            assert p == expected, (n, i)


def test_theorem1_values_and_domain():
    assert pmf_theorem1(1, 1, 2) == Fraction(1, 3)
    assert pmf_theorem1(1, 1, 3) == Fraction(3, 16)
    # first bracket term vanishes at i=j=1 (zero factor)
    assert pmf_theorem1(1, 1, 4) == Fraction(18, 125)
    with pytest.raises(DomainError):
        pmf_theorem1(0, 1, 3)
    with pytest.raises(DomainError):
        pmf_theorem1(2, 2, 3)


def test_theorem1_matches_oracle_shifted_by_one():
    # the printed formula evaluated at n reproduces the oracle at n+1 on
    # the part of the support where it is defined (i+j <= n); freeze that
    # observation — the formula's index convention is off by one
    for n in range(2, 8):
        oracle = pmf_oracle_tree(n + 1)
        for (i, j), p in oracle.entries.items():
            if i + j <= n:
                assert pmf_theorem1(i, j, n) == p, (n, i, j)


def test_theorem1_disagrees_at_same_n():
    for n in (2, 3, 4):
        assert pmf_theorem1(1, 1, n) != pmf_oracle_tree(n).entries[(1, 1)]


def test_theorem1_converges_to_limit():
    for i, j in ((1, 1), (2, 1), (2, 2)):
        for n in (1000, 10000):
            exact = float(pmf_theorem1(i, j, n))
            limit = pmf_limit(i, j)
            assert abs(exact - limit) / limit < 0.02, (i, j, n)


def test_limit_values():
    assert abs(pmf_limit(1, 1) - math.exp(-2) / 2) < 1e-12
    assert abs(pmf_limit(2, 1) - math.exp(-2) * 7 / 6) < 1e-12
    assert pmf_limit(1, 2) == pmf_limit(2, 1)
    total = sum(
        pmf_limit(i, j) for i in range(1, 40) for j in range(1, 40)
    )
    assert abs(total - 1.0) < 1e-6
    with pytest.raises(DomainError):
        pmf_limit(0, 1)


def test_montecarlo_deterministic():
    a = pmf_montecarlo(12, 2000, seed=5)
    b = pmf_montecarlo(12, 2000, seed=5)
    assert a.entries == b.entries and a.stderr == b.stderr
    c = pmf_montecarlo(12, 2000, seed=6)
    assert c.entries != a.entries


def test_montecarlo_matches_oracle_within_4_sigma():
    samples = 100000
    table = pmf_montecarlo(3, samples, seed=1)
    for key, exact in pmf_oracle_tree(3).entries.items():
        p_hat = table.entries[key]
        sigma = math.sqrt(float(exact) * (1 - float(exact)) / samples)
        assert abs(p_hat - float(exact)) < 4 * sigma, key


def test_montecarlo_edge_cases():
    assert pmf_montecarlo(2, 10, seed=0).entries == {(1, 1): 1.0}
    with pytest.raises(DomainError):
        pmf_montecarlo(1, 10, seed=0)
    with pytest.raises(DomainError):
        pmf_montecarlo(5, 0, seed=0)


def test_csv_and_json_serialization():
    table = pmf_oracle_tree(3)
    csv = table.to_csv()
    lines = csv.strip().splitlines()
    assert lines[0] == "n,source,i,j,p_num,p_den,p_float,stderr"
    assert len(lines) == 4
    assert lines[1].startswith("3,oracle-tree,1,1,1,3,")
    data = json.loads(table.to_json())
    assert data["schema_version"] == 1
    assert data["source"] == "oracle-tree"
    assert data["entries"][0]["p"] == "1/3"
    mc = pmf_montecarlo(4, 100, seed=0)
    mc_data = json.loads(mc.to_json())
    assert mc_data["samples"] == 100 and mc_data["seed"] == 0
    assert all("stderr" in row for row in mc_data["entries"])
    assert "stderr=" in mc.to_text()


def test_theorem1_and_limit_tables():
    t = pmf_theorem1_table(3)
    assert set(t.entries) == {(1, 1), (1, 2), (2, 1)}
    assert t.total() == Fraction(13, 16)
    lim = pmf_limit_table(4)
    assert (1, 1) in lim.entries and not lim.is_exact()


def test_compare_report():
    report = compare_report(3)
    assert report["schema_version"] == 1
    by_n = {t["n"]: t for t in report["tables"]}
    assert by_n[2]["rows"][0]["oracle"] == "1"
    assert by_n[2]["rows"][0]["theorem1"] == "1/3"
    assert by_n[2]["rows"][0]["diff"] == "2/3"
    row = next(r for r in by_n[3]["rows"] if (r["i"], r["j"]) == (1, 1))
    assert row["diff"] == "7/48"
    assert by_n[3]["theorem1_total"] == "13/16"
    assert not by_n[3]["theorem1_total_is_one"]
    assert by_n[3]["oracle_total_is_one"]
    text = compare_report_text(report)
    assert "13/16" in text and "[total != 1]" in text
    with pytest.raises(CapExceededError):
        compare_report(10)
