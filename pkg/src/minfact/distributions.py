"""Joint distribution of the first two appearance counts (T_1, T_2).

Four exact/analytic sources and one Monte Carlo source produce comparable
tables:

* oracle-tree: coefficients of the enumerated degree polynomial, the
  canonical truth;
* oracle-dfs: a histogram over brute-force factorization enumeration — a
  fully independent path through the bijection;
* theorem1: verbatim exact evaluation of a printed finite-n formula,
  compared but never corrected (contested);
* limit: the limiting law in double precision;
* montecarlo: empirical frequencies from counter-based tree sampling,
  reproducible per seed at any parallelism level.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from minfact.errors import CapExceededError, DomainError, ValidationError
from minfact.identities import GEN_CAP, gen_G
from minfact.factorizations import (
    ENUM_FACTORIZATION_CAP,
    enumerate_factorizations,
    stat_T,
)
from minfact.stats import mc_stats_batch
from minfact.trees import prufer_entries

SCHEMA_VERSION = 1

_MC_BATCH = 4096


@dataclass
class PmfTable:
    """One source's table of P(T_1 = i, T_2 = j).

    ``entries`` maps (i, j) to an exact Fraction for exact sources; for the
    montecarlo source ``entries`` holds float frequencies and ``stderr``
    holds the matching binomial standard errors.
    """

    n: int
    source: str
    entries: dict[tuple[int, int], Fraction | float]
    stderr: dict[tuple[int, int], float] = field(default_factory=dict)
    samples: int | None = None
    seed: int | None = None

    def is_exact(self) -> bool:
        return self.source not in ("montecarlo", "limit")

    def total(self) -> Fraction | float:
        return sum(self.entries.values())

    def probability(self, i: int, j: int) -> Fraction | float:
        zero = Fraction(0) if self.is_exact() else 0.0
        return self.entries.get((i, j), zero)

    # -- serialization -------------------------------------------------------

    def _rows(self) -> list[dict]:
        rows = []
        for (i, j) in sorted(self.entries):
            p = self.entries[(i, j)]
            if isinstance(p, Fraction):
                num, den, flt = p.numerator, p.denominator, float(p)
            else:
                num, den, flt = "", "", p
            rows.append(
                {
                    "n": self.n,
                    "source": self.source,
                    "i": i,
                    "j": j,
                    "p_num": num,
                    "p_den": den,
                    "p_float": flt,
                    "stderr": self.stderr.get((i, j), ""),
                }
            )
        return rows

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("n,source,i,j,p_num,p_den,p_float,stderr\n")
        for r in self._rows():
            out.write(
                f"{r['n']},{r['source']},{r['i']},{r['j']},"
                f"{r['p_num']},{r['p_den']},{r['p_float']!r},{r['stderr']}\n"
            )
        return out.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self._rows():
            row = {"i": r["i"], "j": r["j"], "p_float": r["p_float"]}
            if r["p_num"] != "":
                row["p"] = f"{r['p_num']}/{r['p_den']}"
            if r["stderr"] != "":
                row["stderr"] = r["stderr"]
            rows.append(row)
        data = {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "source": self.source,
            "entries": rows,
        }
        if self.samples is not None:
            data["samples"] = self.samples
        if self.seed is not None:
            data["seed"] = self.seed
        return json.dumps(data, separators=(",", ":"))

    def to_text(self) -> str:
        lines = [f"pmf n={self.n} source={self.source}"]
        for (i, j) in sorted(self.entries):
            p = self.entries[(i, j)]
            if isinstance(p, Fraction):
                lines.append(f"  ({i},{j})  {p.numerator}/{p.denominator}  {float(p):.9f}")
            else:
                err = self.stderr.get((i, j))
                tail = f"  stderr={err:.3e}" if err is not None else ""
                lines.append(f"  ({i},{j})  {p:.9f}{tail}")
        return "\n".join(lines) + "\n"


def pmf_oracle_tree(n: int) -> PmfTable:
    """Exact pmf from the enumerated degree polynomial: the canonical truth."""
    if not 2 <= n <= GEN_CAP:
        raise CapExceededError(
            f"the exact tree oracle is capped at 2 <= n <= {GEN_CAP}; got n={n} "
            f"(use montecarlo for n > {GEN_CAP})"
        )
    poly = gen_G(n).substitute(z=1)
    denom = n ** (n - 2)
    entries = {
        (i, j): coeff / denom for (i, j, _k), coeff in poly.items()
    }
    return PmfTable(n, "oracle-tree", entries)


def pmf_oracle_dfs(n: int) -> PmfTable:
    """Exact pmf by brute force over all minimal factorizations."""
    if not 2 <= n <= ENUM_FACTORIZATION_CAP:
        raise CapExceededError(
            f"the factorization oracle is capped at 2 <= n <= "
            f"{ENUM_FACTORIZATION_CAP}; got n={n}"
        )
    counts: dict[tuple[int, int], int] = {}
    for f in enumerate_factorizations(n):
        key = (stat_T(f, 1), stat_T(f, 2))
        counts[key] = counts.get(key, 0) + 1
    denom = n ** (n - 2)
    entries = {key: Fraction(c, denom) for key, c in counts.items()}
    return PmfTable(n, "oracle-dfs", entries)


def pmf_theorem1(i: int, j: int, n: int) -> Fraction:
    """Verbatim exact evaluation of the printed finite-n formula.

    n!(n-1)^(n-i-j-1) / ((n-i-j)! (n+1)^(n-1)) *
    [ (i+j-2)(n-1)/((i+j-1)!(n-i-j+1)) + (i+j-1)/(i!j!) - (i+j-1)/(i+j)! ]

    At n = i+j the power (n-1)^(-1) is an exact rational.  Contested: the
    comparison report measures its disagreement with the oracle.
    """
    if i < 1 or j < 1:
        raise DomainError(f"need i, j >= 1, got i={i} j={j}")
    if n < i + j:
        raise DomainError(f"need n >= i+j, got n={n} < {i + j}")
    s = i + j
    prefactor = (
        Fraction(factorial(n)) * Fraction(n - 1) ** (n - s - 1)
        / (factorial(n - s) * Fraction(n + 1) ** (n - 1))
    )
    bracket = (
        Fraction((s - 2) * (n - 1), factorial(s - 1) * (n - s + 1))
        + Fraction(s - 1, factorial(i) * factorial(j))
        - Fraction(s - 1, factorial(s))
    )
    return prefactor * bracket


def pmf_theorem1_table(n: int) -> PmfTable:
    """The printed formula over the full support i, j >= 1, i+j <= n."""
    entries = {
        (i, j): pmf_theorem1(i, j, n)
        for i in range(1, n)
        for j in range(1, n + 1 - i)
    }
    return PmfTable(n, "theorem1", entries)


def pmf_limit(i: int, j: int) -> float:
    """Limiting law e^(-2)[(i+j-2)/(i+j-1)! + (i+j-1)/(i!j!) - (i+j-1)/(i+j)!]."""
    if i < 1 or j < 1:
        raise DomainError(f"need i, j >= 1, got i={i} j={j}")
    s = i + j
    bracket = (
        Fraction(s - 2, factorial(s - 1))
        + Fraction(s - 1, factorial(i) * factorial(j))
        - Fraction(s - 1, factorial(s))
    )
    return math.exp(-2) * float(bracket)


def pmf_limit_table(max_sum: int) -> PmfTable:
    entries = {
        (i, j): pmf_limit(i, j)
        for i in range(1, max_sum)
        for j in range(1, max_sum + 1 - i)
    }
    return PmfTable(0, "limit", entries)


def pmf_montecarlo(n: int, samples: int, seed: int) -> PmfTable:
    """Empirical pmf over ``samples`` uniformly sampled trees.

    Sample index k uses the counter-based stream keyed by (seed, k), so the
    table depends only on (n, samples, seed); batches are accumulated in
    fixed index order regardless of how the work is scheduled.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if samples < 1:
        raise DomainError(f"need samples >= 1, got {samples}")
    counts: dict[tuple[int, int], int] = {}
    if n == 2:
        counts[(1, 1)] = samples
    else:
        for start in range(0, samples, _MC_BATCH):
            stop = min(start + _MC_BATCH, samples)
            seqs = np.empty((stop - start, n - 2), np.int64)
            for k in range(start, stop):
                seqs[k - start] = prufer_entries(n, seed, k)
            d1, d2p = mc_stats_batch(seqs)
            for a, b in zip(d1.tolist(), d2p.tolist()):
                counts[(a, b)] = counts.get((a, b), 0) + 1
    entries: dict[tuple[int, int], float] = {}
    stderr: dict[tuple[int, int], float] = {}
    for key in sorted(counts):
        p = counts[key] / samples
        entries[key] = p
        stderr[key] = math.sqrt(p * (1.0 - p) / samples)
    return PmfTable(n, "montecarlo", entries, stderr, samples=samples, seed=seed)


def compare_report(n_max: int) -> dict:
    """Cross-source comparison: oracle vs the printed finite-n formula.

    For every n <= n_max and every (i, j) in the oracle support, reports
    both exact values and their exact difference, plus each source's total
    probability (a total != 1 is flagged).
    """
    if not 2 <= n_max <= GEN_CAP:
        raise CapExceededError(f"compare_report is capped at 2 <= n_max <= {GEN_CAP}")
    tables = []
    for n in range(2, n_max + 1):
        oracle = pmf_oracle_tree(n)
        theorem = pmf_theorem1_table(n)
        rows = []
        for (i, j) in sorted(set(oracle.entries) | set(theorem.entries)):
            a = oracle.probability(i, j)
            b = theorem.probability(i, j)
            diff = a - b
            rows.append(
                {
                    "i": i,
                    "j": j,
                    "oracle": str(a),
                    "theorem1": str(b),
                    "diff": str(diff),
                    "agree": diff == 0,
                }
            )
        oracle_total = oracle.total()
        theorem_total = theorem.total()
        tables.append(
            {
                "n": n,
                "rows": rows,
                "oracle_total": str(oracle_total),
                "theorem1_total": str(theorem_total),
                "oracle_total_is_one": oracle_total == 1,
                "theorem1_total_is_one": theorem_total == 1,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "pmf-comparison",
        "contested": ["theorem1"],
        "tables": tables,
    }


def compare_report_text(report: dict) -> str:
    lines = []
    for table in report["tables"]:
        n = table["n"]
        lines.append(f"n={n}  oracle total {table['oracle_total']}"
                     f"  theorem1 total {table['theorem1_total']}"
                     + ("" if table["theorem1_total_is_one"] else "  [total != 1]"))
        for r in table["rows"]:
            flag = "" if r["agree"] else f"  diff={r['diff']}"
            lines.append(
                f"  ({r['i']},{r['j']})  oracle={r['oracle']}"
                f"  theorem1={r['theorem1']}{flag}"
            )
    return "\n".join(lines) + "\n"
