"""Cross-checking sweeps. Every check runs its cases smallest-first, so the first
failing case reported is also a small one."""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from weylmod.basis import count_basis, enumerate_basis
from weylmod.branch import branch, component_basis
from weylmod.config import DEFAULT_CONFIG, config_hash
from weylmod.errors import InvalidInputError, ResourceCapError
from weylmod.fingerprints import case_fp
from weylmod.monomial import MonomialIndex, i_of_k, is_in_pi, k_of_i
from weylmod.mult import character, mult_count, mult_recursive
from weylmod.oracle import freudenthal_mult, gt_count, gt_total
from weylmod.pbw import (
    FactorWord,
    PBWPolynomial,
    straighten,
    swap_pair,
    verify_leading_term,
    word_of_exponent,
)
from weylmod.rootsys import (
    dominant_weights,
    num_positive_roots,
    positive_roots_ordered,
    restrict_weight,
    simple_reflection,
    weyl_dim,
)
from weylmod.state.report import finish_report, record_checks, start_report

CHECKS: list[str] = [
    "bijection",
    "leading_term",
    "straightening",
    "basis_cardinality",
    "branching",
    "multiplicity",
]
CHECK_LABELS = {
    "bijection": "K <-> I roundtrips",
    "leading_term": "theta^K leading terms",
    "straightening": "straightening confluence and associativity",
    "basis_cardinality": "|Pi_lambda| = Weyl dimension",
    "branching": "branching dimension sums and quotient bases",
    "multiplicity": "recursive = count = Freudenthal = Gelfand-Tsetlin",
}
# Index sweeps stay at rank <= 3 with entries <= 2 whatever the weight sweep uses.
INDEX_MAX_RANK = 3
INDEX_MAX_ENTRY = 2


@dataclass
class CheckResult:
    check: str
    status: str = "pending"
    cases: int = 0
    duration_seconds: float = 0.0
    counterexample: dict | None = None
    error: str | None = None

    def as_dict(self, *, timings: bool = False) -> dict:
        out: dict = {"check": self.check, "status": self.status, "cases": self.cases}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["duration_seconds"] = round(self.duration_seconds, 3)
        return out


@dataclass(frozen=True)
class Limits:
    max_basis_elements: int
    max_pbw_terms: int


# case builders


def weight_sweep(max_rank: int, max_coord: int, *, min_rank: int = 1) -> list[tuple[int, ...]]:
    lams = [lam for l in range(min_rank, max_rank + 1) for lam in dominant_weights(l, max_coord)]
    return sorted(lams, key=lambda lam: (len(lam), sum(lam), lam))


def _index_cases(max_rank: int) -> list[tuple]:
    cases: list[tuple] = []
    for l in range(1, min(max_rank, INDEX_MAX_RANK) + 1):
        n = num_positive_roots(l)
        for vec in itertools.product(range(INDEX_MAX_ENTRY + 1), repeat=n):
            cases.append(("I", l, vec))
            if is_in_pi(MonomialIndex(l, vec)):
                cases.append(("K", l, vec))
    return cases


def _pi_cases(max_rank: int) -> list[tuple]:
    return [(l, vec) for kind, l, vec in _index_cases(max_rank) if kind == "K"]


def _random_word(rng: random.Random, l: int, max_factors: int, max_power: int) -> tuple:
    roots = positive_roots_ordered(l)
    size = rng.randint(1, max_factors)
    return tuple((rng.randrange(len(roots)), rng.randint(1, max_power)) for _ in range(size))


def _word_cases(cfg: dict) -> list[tuple]:
    rng = random.Random(cfg["seed"])
    max_rank = min(cfg["max_rank"], INDEX_MAX_RANK)
    cases = []
    for _ in range(cfg["random_words"]):
        l = rng.randint(1, max_rank)
        word = _random_word(rng, l, cfg["max_factors"], cfg["max_power"])
        cut = rng.randint(0, len(word))
        cases.append((l, word, cut))
    return sorted(cases, key=lambda c: (c[0], len(c[1]), c[1], c[2]))


# case evaluators: module level so worker processes can unpickle them


def _eval_bijection(case: tuple, limits: Limits) -> dict | None:
    kind, l, vec = case
    if kind == "I":
        back = i_of_k(k_of_i(vec, l))
        if back != vec:
            return {"I": list(vec), "roundtrip": list(back)}
    else:
        back = k_of_i(i_of_k(MonomialIndex(l, vec)), l).entries
        if back != vec:
            return {"K": list(vec), "roundtrip": list(back)}
    return None


def _eval_leading_term(case: tuple, limits: Limits) -> dict | None:
    l, vec = case
    K = MonomialIndex(l, vec)
    if not verify_leading_term(K, max_terms=limits.max_pbw_terms):
        return {"rank": l, "K": list(vec), "expected_I": list(i_of_k(K))}
    return None


def _as_word(l: int, word: tuple) -> FactorWord:
    roots = positive_roots_ordered(l)
    return FactorWord(l, tuple((roots[p], e) for p, e in word))


def _eval_straightening(case: tuple, limits: Limits) -> dict | None:
    l, raw, cut = case
    cap = limits.max_pbw_terms
    word = _as_word(l, raw)
    left = straighten(word, max_terms=cap, strategy="leftmost")
    right = straighten(word, max_terms=cap, strategy="rightmost")
    failure = {"rank": l, "word": [list(f) for f in raw]}
    if left != right:
        return {**failure, "property": "confluence"}
    if not all(isinstance(c, int) for c in left.terms.values()):
        return {**failure, "property": "integrality"}
    u, v = _as_word(l, raw[:cut]), _as_word(l, raw[cut:])
    combined = PBWPolynomial(l)
    for I, coeff in straighten(u, max_terms=cap).terms.items():
        combined = combined + straighten(word_of_exponent(I, l) + v, max_terms=cap).scaled(coeff)
    if combined != left:
        return {**failure, "property": "associativity", "cut": cut}
    if len(word.factors) >= 2 and word.factors[0][0] != word.factors[1][0]:
        (x, a), (y, b) = word.factors[:2]
        rest = FactorWord(l, word.factors[2:])
        swapped = PBWPolynomial(l)
        for replaced, coeff in swap_pair(l, x, a, y, b):
            swapped = swapped + straighten(replaced + rest, max_terms=cap).scaled(coeff)
        if swapped != left:
            return {**failure, "property": "pair swap"}
    return None


def _eval_basis_cardinality(lam: tuple, limits: Limits) -> dict | None:
    count = count_basis(lam, max_elements=limits.max_basis_elements)
    expected = weyl_dim(lam)
    patterns = gt_total(lam)
    if not count == expected == patterns:
        return {"lambda": list(lam), "basis": str(count), "weyl_dim": str(expected), "gt_total": str(patterns)}
    return None


def _eval_branching(lam: tuple, limits: Limits) -> dict | None:
    components = branch(lam)
    total = sum(c.dim for c in components)
    if total != weyl_dim(lam):
        return {"lambda": list(lam), "dim_sum": str(total), "weyl_dim": str(weyl_dim(lam))}
    if components[0].highest_weight != restrict_weight(lam):
        return {"lambda": list(lam), "first_component": list(components[0].highest_weight)}
    seen: set[tuple[int, ...]] = set()
    for comp in components:
        block = component_basis(lam, comp.s, max_elements=limits.max_basis_elements)
        if len(block) != comp.dim:
            return {"lambda": list(lam), "s": comp.s, "quotient_basis": len(block), "dim": str(comp.dim)}
        seen.update(K.entries for K in block)
    full = {K.entries for K in enumerate_basis(lam, max_elements=limits.max_basis_elements)}
    if seen != full:
        return {"lambda": list(lam), "property": "quotient bases do not partition the basis"}
    return None


def _eval_multiplicity(lam: tuple, limits: Limits) -> dict | None:
    char = character(lam, "count", max_elements=limits.max_basis_elements)
    if char.total() != weyl_dim(lam):
        return {"lambda": list(lam), "character_mass": str(char.total()), "weyl_dim": str(weyl_dim(lam))}
    if char.multiplicity(lam) != 1:
        return {"lambda": list(lam), "highest_weight_mult": str(char.multiplicity(lam))}
    for mu in char.weights():
        values = {
            "recursive": mult_recursive(lam, mu),
            "count": mult_count(lam, mu, max_elements=limits.max_basis_elements),
            "freudenthal": freudenthal_mult(lam, mu),
            "gt": gt_count(lam, mu),
        }
        if len(set(values.values())) != 1:
            return {"lambda": list(lam), "mu": list(mu), "values": {k: str(v) for k, v in values.items()}}
        for i in range(1, len(lam) + 1):
            image = simple_reflection(mu, i)
            if char.multiplicity(image) != values["count"]:
                return {
                    "lambda": list(lam),
                    "mu": list(mu),
                    "reflection": i,
                    "image": list(image),
                    "mult": str(values["count"]),
                    "image_mult": str(char.multiplicity(image)),
                }
    recursive = character(lam, "recursive")
    if recursive.table != char.table:
        return {"lambda": list(lam), "property": "recursive character support differs"}
    return None


def _plan(cfg: dict) -> dict[str, tuple[Callable[[tuple, Limits], dict | None], list]]:
    max_rank, max_coord = cfg["max_rank"], cfg["max_coord"]
    return {
        "bijection": (_eval_bijection, _index_cases(max_rank)),
        "leading_term": (_eval_leading_term, _pi_cases(max_rank)),
        "straightening": (_eval_straightening, _word_cases(cfg)),
        "basis_cardinality": (_eval_basis_cardinality, weight_sweep(max_rank, max_coord)),
        "branching": (_eval_branching, weight_sweep(max_rank, max_coord, min_rank=2)),
        "multiplicity": (_eval_multiplicity, weight_sweep(max_rank, max_coord)),
    }


def _map_cases(fn, cases: list, limits: Limits, executor: ProcessPoolExecutor | None) -> Iterable:
    if executor is None:
        return map(fn, cases, itertools.repeat(limits))
    chunk = max(1, len(cases) // 64)
    return executor.map(fn, cases, itertools.repeat(limits), chunksize=chunk)


def _run_check(name: str, fn, cases: list, limits: Limits, executor) -> CheckResult:
    result = CheckResult(check=name)
    start = time.monotonic()
    try:
        for case, failure in zip(cases, _map_cases(fn, cases, limits, executor)):
            result.cases += 1
            if failure is not None:
                result.status = "failed"
                result.counterexample = {"case_id": case_fp(name, case), **failure}
                break
        else:
            result.status = "passed"
    except ResourceCapError as exc:
        result.status = "error"
        result.error = str(exc)
    result.duration_seconds = time.monotonic() - start
    return result


def run_verify(
    config: dict | None = None,
    *,
    checks: list[str] | None = None,
    report_path: Path | None = None,
) -> dict:
    """Run the sweeps and return a result dict whose exit_code follows the CLI contract."""
    config = config or DEFAULT_CONFIG
    cfg = config["verify"]
    limits = Limits(config["limits"]["max_basis_elements"], config["limits"]["max_pbw_terms"])
    selected = checks or CHECKS
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise InvalidInputError(f"Unknown checks {unknown}; expected some of {', '.join(CHECKS)}.")
    plan = _plan(cfg)
    if report_path is not None:
        start_report(report_path, config_hash=config_hash(config), settings=cfg)

    results: list[CheckResult] = []
    executor = ProcessPoolExecutor(max_workers=cfg["workers"]) if cfg["workers"] > 1 else None
    try:
        for name in selected:
            fn, cases = plan[name]
            result = _run_check(name, fn, cases, limits, executor)
            results.append(result)
            if report_path is not None:
                record_checks(report_path, name, [r.as_dict(timings=True) for r in results])
    finally:
        if executor is not None:
            executor.shutdown()

    capped = any(r.status == "error" for r in results)
    failed = next((r for r in results if r.status != "passed"), None)
    exit_code = 3 if capped else (1 if failed else 0)
    if report_path is not None:
        finish_report(report_path, exit_code=exit_code, failed_check=failed.check if failed else None)
    return {
        "command": "verify",
        "ok": exit_code == 0,
        "exit_code": exit_code,
        "max_rank": cfg["max_rank"],
        "max_coord": cfg["max_coord"],
        "checks": [r.as_dict() for r in results],
    }
