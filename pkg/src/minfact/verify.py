"""Assembles the full machine-verification suite into verdict lists.

Checks are partitioned into two registries:

* settled — identities that must hold; any FAIL here is a library bug and
  gates the exit status;
* contested — printed displays whose desk analysis disagrees with the
  enumeration oracles; their verdicts (with exact witnesses) are the
  deliverable and never gate anything.
"""

from __future__ import annotations

import json
from fractions import Fraction

from minfact.errors import ValidationError
from minfact.identities import (
    GEN_CAP,
    IdentityVerdict,
    check_abel,
    check_abel_variant,
    check_closed_F,
    check_deg1_closed,
    check_egf_identity,
    check_extract_sign,
    check_gp_relation,
    check_pn_egf,
    check_recursion_F,
    check_recursion_G,
    check_s_closed,
    check_s_sum,
    check_sym_F,
    check_sym_G,
    check_u,
)
from minfact.distributions import pmf_oracle_tree, pmf_theorem1

SUITES = ("settled", "contested", "all")


def check_theorem1_vs_oracle(n: int) -> IdentityVerdict:
    """Printed finite-n formula against the tree oracle over its support."""
    oracle = pmf_oracle_tree(n)
    witness = None
    for (i, j) in sorted(oracle.entries):
        a = oracle.entries[(i, j)]
        b = pmf_theorem1(i, j, n)
        if a != b:
            witness = f"n={n} i={i} j={j}: oracle gives {a}, formula gives {b}"
            break
    return IdentityVerdict(
        "theorem1-vs-oracle", {"n": n}, witness is None, contested=True, witness=witness
    )


def settled_verdicts(n_max: int, t_order: int) -> list[IdentityVerdict]:
    verdicts: list[IdentityVerdict] = []
    for n in range(2, min(n_max, GEN_CAP) + 1):
        verdicts.append(check_deg1_closed(n))
        verdicts.append(check_sym_G(n))
        verdicts.append(check_sym_F(n))
    for n in range(3, min(n_max, 8) + 1):
        verdicts.append(check_closed_F(n))
    for n in range(0, 13):
        verdicts.append(check_abel(n))
        for variant in (1, 2, 3):
            verdicts.append(check_abel_variant(variant, n))
    for n in range(3, min(n_max, 8) + 1):
        verdicts.append(check_recursion_F(n))
    for n in range(2, min(n_max, 7) + 1):
        verdicts.append(check_recursion_G(n))
    for m in range(1, 17):
        for l in range(1, m + 1):
            verdicts.append(check_s_sum(m, l))
    verdicts.append(check_pn_egf(min(t_order, 8)))
    return verdicts


def contested_verdicts(n_max: int, t_order: int) -> list[IdentityVerdict]:
    verdicts: list[IdentityVerdict] = []
    for m in range(1, 7):
        verdicts.append(check_u(m))
    for n in range(2, min(n_max, 7) + 1):
        verdicts.append(check_gp_relation(n))
    for m in range(1, 9):
        for l in range(1, m + 1):
            verdicts.append(check_s_closed(m, l))
    verdicts.extend(check_egf_identity(min(t_order, 7)))
    for i in range(1, 4):
        for j in range(1, 5 - i):
            for sign3 in (1, -1):
                verdicts.append(check_extract_sign(i, j, min(n_max, 7), sign3))
    for n in range(2, min(n_max + 1, 8) + 1):
        verdicts.append(check_theorem1_vs_oracle(n))
    return verdicts


def run_suite(suite: str, n_max: int = 7, t_order: int = 7) -> list[IdentityVerdict]:
    if suite not in SUITES:
        raise ValidationError(f"suite must be one of {SUITES}, got {suite!r}")
    if not 2 <= n_max <= GEN_CAP:
        raise ValidationError(f"n_max must be in 2..{GEN_CAP}, got {n_max}")
    if not 1 <= t_order <= 8:
        raise ValidationError(f"t_order must be in 1..8, got {t_order}")
    verdicts: list[IdentityVerdict] = []
    if suite in ("settled", "all"):
        verdicts.extend(settled_verdicts(n_max, t_order))
    if suite in ("contested", "all"):
        verdicts.extend(contested_verdicts(n_max, t_order))
    return verdicts


def settled_all_pass(verdicts: list[IdentityVerdict]) -> bool:
    return all(v.passed for v in verdicts if not v.contested)


def report_json(verdicts: list[IdentityVerdict]) -> str:
    return json.dumps(
        {
            "schema_version": 1,
            "report": "identity-verdicts",
            "settled_all_pass": settled_all_pass(verdicts),
            "verdicts": [v.as_json() for v in verdicts],
        },
        separators=(",", ":"),
    )


def report_text(verdicts: list[IdentityVerdict]) -> str:
    lines = []
    for v in verdicts:
        tag = "contested" if v.contested else "settled"
        params = " ".join(f"{k}={val}" for k, val in v.params.items())
        line = f"[{tag}] {v.identity} {params}: {v.verdict}"
        if v.witness:
            line += f"  ({v.witness})"
        lines.append(line)
    lines.append(
        "settled: ALL PASS" if settled_all_pass(verdicts) else "settled: FAILURES PRESENT"
    )
    return "\n".join(lines) + "\n"
