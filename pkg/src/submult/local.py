"""Prime-power local criteria for multiplicative functions, and the
bridge tests tying local verdicts to global sweep verdicts.

For a multiplicative f with f(1) = 1, each global property has a local
sufficient condition on prime powers:

  eq14   f(p^(a+b)) <=/>= f(p^a) f(p^b)      -> sub/sup-multiplicative
  eq18   f(p^(a+b))^k <=/>= f(p^ka) f(p^kb)  -> k-sub/sup-multiplicative
  eq21   f(p^(a+b)) <=/>= p^a f(p^b)         -> sub/sup-homogeneous
  eq22   f(p^(a+b))^k <=/>= p^ka f(p^kb)     -> k-sub/sup-homogeneous

For eq14 the implication is an equivalence (take m = p^a, n = p^b); for
the others only the local-to-global direction is established, and the
bridge checks only that direction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from submult.checks import HOLDS, REFUTED, CheckReport, Counterexample, _run_rows
from submult.core import prime_power, primes_upto, trial_factorize
from submult.errors import InconsistencyError, UsageError
from submult.functions import ArithFn, evaluate_fact
from submult.inference import (
    K_SUB_HOM,
    K_SUB_MULT,
    K_SUP_HOM,
    K_SUP_MULT,
    SUB_HOM,
    SUB_MULT,
    SUP_HOM,
    SUP_MULT,
)

EQ14, EQ18, EQ21, EQ22 = "eq14", "eq18", "eq21", "eq22"
CRITERIA = (EQ14, EQ18, EQ21, EQ22)
_K_CRITERIA = (EQ18, EQ22)

# criterion + direction -> the global property family it certifies
_GLOBAL_FAMILY = {
    (EQ14, "sub"): SUB_MULT, (EQ14, "sup"): SUP_MULT,
    (EQ18, "sub"): K_SUB_MULT, (EQ18, "sup"): K_SUP_MULT,
    (EQ21, "sub"): SUB_HOM, (EQ21, "sup"): SUP_HOM,
    (EQ22, "sub"): K_SUB_HOM, (EQ22, "sup"): K_SUP_HOM,
}


@dataclass(frozen=True)
class LocalCriterion:
    criterion: str
    direction: str  # "sub" | "sup"
    k: int | None = None

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise UsageError(f"unknown local criterion {self.criterion!r}")
        if self.direction not in ("sub", "sup"):
            raise UsageError(f"direction must be 'sub' or 'sup', got {self.direction!r}")
        if self.criterion in _K_CRITERIA:
            if self.k is None or self.k < 2:
                raise UsageError(f"{self.criterion} needs an integer k >= 2")
        elif self.k is not None:
            raise UsageError(f"{self.criterion} does not take k")

    def label(self) -> str:
        base = f"{self.criterion}:{self.direction}"
        return base if self.k is None else f"{base}(k={self.k})"

    def global_family(self) -> str:
        return _GLOBAL_FAMILY[(self.criterion, self.direction)]


@dataclass
class LocalReport:
    function: str
    criterion: LocalCriterion
    max_prime: int
    max_exp: int
    verdict: str
    counterexamples: list[Counterexample]  # points (p, a, b)
    triples_checked: int
    elapsed_seconds: float

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def _require_multiplicative(f: ArithFn) -> None:
    if not f.is_multiplicative:
        raise UsageError(
            f"{f.name} is not registered as multiplicative; local prime-power "
            "criteria apply to multiplicative functions only"
        )


def _local_sweep(f: ArithFn, crit: LocalCriterion, max_prime: int, max_exp: int,
                 compare, max_needed_exp: int, *, cap: int = 10,
                 threads: int = 1) -> LocalReport:
    t0 = time.perf_counter()
    _require_multiplicative(f)
    if max_prime < 2 or max_exp < 0:
        raise UsageError("need max_prime >= 2 and max_exp >= 0")
    primes = primes_upto(max_prime)

    def row_fn(p: int):
        # values of f at p^0 .. p^max_needed_exp, one evaluation each
        vals = [evaluate_fact(f, prime_power(p, e)) for e in range(max_needed_exp + 1)]
        row_cex = []
        count = 0
        for a in range(0, max_exp + 1):
            for b in range(0, max_exp + 1):
                count += 1
                ok, lhs, rhs = compare(p, a, b, vals)
                if not ok:
                    row_cex.append(
                        Counterexample((("p", p), ("a", a), ("b", b)), lhs, rhs))
        return count, row_cex, {}

    checked, cex, _ = _run_rows(row_fn, primes, False, threads)
    cex.sort(key=Counterexample.coords)
    return LocalReport(
        function=f.name,
        criterion=crit,
        max_prime=max_prime,
        max_exp=max_exp,
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:cap],
        triples_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
    )


def _dir_ok(direction: str, lhs, rhs) -> bool:
    return lhs <= rhs if direction == "sub" else lhs >= rhs


def check_local_submult(f: ArithFn, direction: str, max_prime: int, max_exp: int,
                        *, cap: int = 10, threads: int = 1) -> LocalReport:
    """eq14: f(p^(a+b)) vs f(p^a) f(p^b) on all primes <= max_prime and
    exponents 0 <= a, b <= max_exp."""
    crit = LocalCriterion(EQ14, direction)

    def compare(p, a, b, vals):
        lhs = vals[a + b]
        rhs = vals[a] * vals[b]
        return _dir_ok(direction, lhs, rhs), lhs, rhs

    return _local_sweep(f, crit, max_prime, max_exp, compare, 2 * max_exp,
                        cap=cap, threads=threads)


def check_local_k_submult(f: ArithFn, k: int, direction: str, max_prime: int,
                          max_exp: int, *, cap: int = 10,
                          threads: int = 1) -> LocalReport:
    """eq18: f(p^(a+b))^k vs f(p^ka) f(p^kb)."""
    crit = LocalCriterion(EQ18, direction, k)

    def compare(p, a, b, vals):
        lhs = vals[a + b] ** k
        rhs = vals[k * a] * vals[k * b]
        return _dir_ok(direction, lhs, rhs), lhs, rhs

    return _local_sweep(f, crit, max_prime, max_exp, compare,
                        max(2, k) * max_exp, cap=cap, threads=threads)


def check_local_subhom(f: ArithFn, direction: str, max_prime: int, max_exp: int,
                       *, cap: int = 10, threads: int = 1) -> LocalReport:
    """eq21: f(p^(a+b)) vs p^a f(p^b)."""
    crit = LocalCriterion(EQ21, direction)

    def compare(p, a, b, vals):
        lhs = vals[a + b]
        rhs = Fraction(p**a) * vals[b]
        return _dir_ok(direction, lhs, rhs), lhs, rhs

    return _local_sweep(f, crit, max_prime, max_exp, compare, 2 * max_exp,
                        cap=cap, threads=threads)


def check_local_k_subhom(f: ArithFn, k: int, direction: str, max_prime: int,
                         max_exp: int, *, cap: int = 10,
                         threads: int = 1) -> LocalReport:
    """eq22: f(p^(a+b))^k vs p^ka f(p^kb)."""
    crit = LocalCriterion(EQ22, direction, k)

    def compare(p, a, b, vals):
        lhs = vals[a + b] ** k
        rhs = Fraction(p ** (k * a)) * vals[k * b]
        return _dir_ok(direction, lhs, rhs), lhs, rhs

    return _local_sweep(f, crit, max_prime, max_exp, compare,
                        max(2, k) * max_exp, cap=cap, threads=threads)


def check_local(f: ArithFn, crit: LocalCriterion, max_prime: int, max_exp: int,
                *, cap: int = 10, threads: int = 1) -> LocalReport:
    """Dispatch on the criterion id."""
    if crit.criterion == EQ14:
        return check_local_submult(f, crit.direction, max_prime, max_exp,
                                   cap=cap, threads=threads)
    if crit.criterion == EQ18:
        return check_local_k_submult(f, crit.k, crit.direction, max_prime,
                                     max_exp, cap=cap, threads=threads)
    if crit.criterion == EQ21:
        return check_local_subhom(f, crit.direction, max_prime, max_exp,
                                  cap=cap, threads=threads)
    return check_local_k_subhom(f, crit.k, crit.direction, max_prime, max_exp,
                                cap=cap, threads=threads)


# ---------------------------------------------------------------------------
# Bridge consistency
# ---------------------------------------------------------------------------


@dataclass
class BridgeReport:
    function: str
    criterion: str  # LocalCriterion label
    property: str  # global property label
    consistent: bool
    notes: list[str]


def _covered(m: int, n: int, max_prime: int, max_exp: int) -> bool:
    """True when every prime power in m and n lies inside the local grid,
    so the local criterion fully determines the pair."""
    for x in (m, n):
        for p, a in trial_factorize(x).pairs:
            if p > max_prime or a > max_exp:
                return False
    return True


def bridge_consistency(f: ArithFn, crit: LocalCriterion, local: LocalReport,
                       global_report: CheckReport) -> BridgeReport:
    """Assert that the pair of verdicts cannot contradict the proved
    local-to-global implication (and its converse, for eq14).

    Local holds + a reported global counterexample whose prime support
    lies inside the local grid is impossible unless the implementation
    is wrong; likewise (eq14 only) global holds + a local counterexample
    at (p, a, b) with p^a <= max_m and p^b <= max_n.  Raises
    InconsistencyError on violation.
    """
    if local.function != f.name or global_report.function != f.name:
        raise UsageError("bridge: reports belong to a different function")
    if local.criterion != crit:
        raise UsageError("bridge: local report does not match the criterion")
    expected = crit.global_family()
    prop = global_report.property
    expected_label = expected if crit.k is None else f"{expected}(k={crit.k})"
    if prop != expected_label:
        raise UsageError(
            f"bridge: criterion {crit.label()} certifies {expected_label}, "
            f"but the global report checked {prop}"
        )

    notes = []
    if local.verdict == HOLDS:
        for cex in global_report.counterexamples:
            m, n = cex["m"], cex["n"]
            if _covered(m, n, local.max_prime, local.max_exp):
                raise InconsistencyError(
                    f"{f.name}: local criterion {crit.label()} holds on "
                    f"p <= {local.max_prime}, exponents <= {local.max_exp}, "
                    f"but the global sweep found a covered counterexample at "
                    f"(m={m}, n={n}); this is an implementation bug"
                )
        notes.append("local holds; no covered global counterexample")
    else:
        notes.append("local refuted; no forward obligation")

    if crit.criterion == EQ14:
        max_m = global_report.params.get("max_m", 0)
        max_n = global_report.params.get("max_n", 0)
        if global_report.verdict == HOLDS:
            for cex in local.counterexamples:
                p, a, b = cex["p"], cex["a"], cex["b"]
                if p**a <= max_m and p**b <= max_n:
                    raise InconsistencyError(
                        f"{f.name}: global {prop} holds on the grid but the "
                        f"local criterion fails at (p={p}, a={a}, b={b}) with "
                        f"(p^a, p^b) inside the grid; this is an implementation bug"
                    )
            notes.append("converse: no local counterexample inside the global grid")
        else:
            notes.append("converse: global refuted; no obligation")

    return BridgeReport(
        function=f.name,
        criterion=crit.label(),
        property=prop,
        consistent=True,
        notes=notes,
    )
