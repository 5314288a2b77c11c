"""Named inequality verifiers, each sweeping a range with exact
arithmetic and reporting holds-on-range or the smallest counterexamples.

Ids are stable CLI vocabulary:

  eq12        (p+1)^(p-1) < p^p                      primes p, strict
  eq13        sigma(n)^phi(n) < n^n                  n >= 2, strict
  eq16        mean-divisor local inequality on p^a   non-strict
  eq20        (a+b+1)^k >= (ka+1)(kb+1)              non-strict
  eq23        phi(p^(a+b))^k <= p^ka phi(p^kb)       non-strict
  corollary1  seed f(p)^g(p) < p^p on primes plus the full-range
              conclusion f(n)^g(n) < n^n, as two reports
"""

from __future__ import annotations

import time
from fractions import Fraction

from submult.checks import HOLDS, REFUTED, CheckReport, Counterexample, _run_rows
from submult.core import (
    DEFAULT_DIGIT_BUDGET,
    LESS,
    SpfTable,
    build_spf_table,
    cmp_power_products_detail,
    eval_phi,
    eval_sigma,
    factorize,
    prime_power,
    primes_upto,
)
from submult.errors import DomainError, UnsupportedInputError, UsageError
from submult.functions import ArithFn, Evaluator, Registry
from submult.inference import SUB_HOM, SUB_MULT

INEQUALITY_IDS = ("eq12", "eq13", "eq16", "eq20", "eq23", "corollary1")


def _one_dim_report(ineq_id: str, formula: str, params: dict, points, check_point,
                    *, var: str = "n", cap: int = 10,
                    threads: int = 1) -> CheckReport:
    """Sweep a 1-d family of instances; check_point(x) -> (ok, lhs, rhs, stats)."""
    t0 = time.perf_counter()

    def row_fn(x):
        ok, lhs, rhs, row_stats = check_point(x)
        cex = [] if ok else [Counterexample(((var, x),), lhs, rhs)]
        return 1, cex, row_stats

    checked, cex, stats = _run_rows(row_fn, points, False, threads)
    cex.sort(key=Counterexample.coords)
    return CheckReport(
        function=ineq_id,
        property=formula,
        params=params,
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:cap],
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
        stats=stats,
    )


def verify_eq12(max_prime: int, *, use_filter: bool = True,
                threads: int = 1) -> CheckReport:
    """(p+1)^(p-1) < p^p, strict, for every prime p <= max_prime."""
    if max_prime < 2:
        raise UsageError("max_prime must be >= 2")

    def check_point(p):
        lhs = ((Fraction(p + 1), p - 1),)
        rhs = ((Fraction(p), p),)
        order, used_exact = cmp_power_products_detail(lhs, rhs, use_filter=use_filter)
        row_stats = {"exact_fallbacks": 1} if used_exact else {}
        return order == LESS, lhs, rhs, row_stats

    return _one_dim_report("eq12", "(p+1)^(p-1) < p^p",
                           {"max_prime": max_prime}, primes_upto(max_prime),
                           check_point, var="p", threads=threads)


def verify_eq13(max_n: int, *, table: SpfTable | None = None,
                use_filter: bool = True, digit_budget: int = DEFAULT_DIGIT_BUDGET,
                threads: int = 1) -> CheckReport:
    """sigma(n)^phi(n) < n^n, strict, for all 2 <= n <= max_n.

    The log filter resolves almost every n; near-ties fall back to the
    exact big-integer comparison (whose cost the digit budget caps).
    Pass use_filter=False to force the exact path throughout.
    """
    if max_n < 2:
        raise UsageError("max_n must be >= 2")
    if table is None:
        table = build_spf_table(max_n)

    def check_point(n):
        fact = factorize(n, table)
        s, t = eval_sigma(fact), eval_phi(fact)
        lhs = ((s, int(t)),)
        rhs = ((Fraction(n), n),)
        order, used_exact = cmp_power_products_detail(
            lhs, rhs, use_filter=use_filter, digit_budget=digit_budget)
        row_stats = {"exact_fallbacks": 1} if used_exact else {}
        return order == LESS, lhs, rhs, row_stats

    return _one_dim_report("eq13", "sigma(n)^phi(n) < n^n",
                           {"max_n": max_n}, range(2, max_n + 1), check_point,
                           threads=threads)


def _sigma_over_d_pp(p: int, e: int) -> Fraction:
    # mean divisor of p^e: (p^(e+1) - 1) / ((p - 1) (e + 1))
    return Fraction(p ** (e + 1) - 1, (p - 1) * (e + 1))


def verify_eq16(max_prime: int, max_exp: int, *, threads: int = 1) -> CheckReport:
    """Mean-divisor super-multiplicativity on prime powers, non-strict:

        sd(p^(a+b)) >= sd(p^a) * sd(p^b),  sd = sigma/d,  a, b >= 1.
    """
    if max_prime < 2 or max_exp < 1:
        raise UsageError("need max_prime >= 2 and max_exp >= 1")
    t0 = time.perf_counter()

    def row_fn(p):
        vals = [_sigma_over_d_pp(p, e) for e in range(2 * max_exp + 1)]
        row_cex = []
        count = 0
        for a in range(1, max_exp + 1):
            for b in range(1, max_exp + 1):
                count += 1
                lhs, rhs = vals[a + b], vals[a] * vals[b]
                if not lhs >= rhs:
                    row_cex.append(
                        Counterexample((("p", p), ("a", a), ("b", b)), lhs, rhs))
        return count, row_cex, {}

    checked, cex, _ = _run_rows(row_fn, primes_upto(max_prime), False, threads)
    cex.sort(key=Counterexample.coords)
    return CheckReport(
        function="eq16",
        property="sd(p^(a+b)) >= sd(p^a) sd(p^b) with sd = sigma/d",
        params={"max_prime": max_prime, "max_exp": max_exp},
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:10],
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
    )


def verify_eq20(max_ab: int, max_k: int, *, threads: int = 1) -> CheckReport:
    """(a+b+1)^k >= (ka+1)(kb+1) for 0 <= a, b <= max_ab, 2 <= k <= max_k."""
    if max_ab < 0 or max_k < 2:
        raise UsageError("need max_ab >= 0 and max_k >= 2")
    t0 = time.perf_counter()

    def row_fn(a):
        row_cex = []
        count = 0
        for b in range(0, max_ab + 1):
            for k in range(2, max_k + 1):
                count += 1
                lhs = (a + b + 1) ** k
                rhs = (k * a + 1) * (k * b + 1)
                if not lhs >= rhs:
                    row_cex.append(
                        Counterexample((("a", a), ("b", b), ("k", k)),
                                       Fraction(lhs), Fraction(rhs)))
        return count, row_cex, {}

    checked, cex, _ = _run_rows(row_fn, range(0, max_ab + 1), False, threads)
    cex.sort(key=Counterexample.coords)
    return CheckReport(
        function="eq20",
        property="(a+b+1)^k >= (ka+1)(kb+1)",
        params={"max_ab": max_ab, "max_k": max_k},
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:10],
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
    )


def verify_eq23(max_prime: int, max_exp: int, k: int, *,
                threads: int = 1) -> CheckReport:
    """phi(p^(a+b))^k <= p^ka * phi(p^kb) for 0 <= a, b <= max_exp."""
    if max_prime < 2 or max_exp < 0 or k < 2:
        raise UsageError("need max_prime >= 2, max_exp >= 0, k >= 2")
    t0 = time.perf_counter()

    def row_fn(p):
        phis = [int(eval_phi(prime_power(p, e)))
                for e in range(max(2, k) * max_exp + 1)]
        row_cex = []
        count = 0
        for a in range(0, max_exp + 1):
            for b in range(0, max_exp + 1):
                count += 1
                lhs = phis[a + b] ** k
                rhs = p ** (k * a) * phis[k * b]
                if not lhs <= rhs:
                    row_cex.append(
                        Counterexample((("p", p), ("a", a), ("b", b)),
                                       Fraction(lhs), Fraction(rhs)))
        return count, row_cex, {}

    checked, cex, _ = _run_rows(row_fn, primes_upto(max_prime), False, threads)
    cex.sort(key=Counterexample.coords)
    return CheckReport(
        function="eq23",
        property="phi(p^(a+b))^k <= p^ka phi(p^kb)",
        params={"max_prime": max_prime, "max_exp": max_exp, "k": k},
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:10],
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
    )


def verify_corollary1(f: ArithFn, g: ArithFn, max_prime: int, max_n: int, *,
                      registry: Registry, table: SpfTable | None = None,
                      use_filter: bool = True,
                      threads: int = 1) -> tuple[CheckReport, CheckReport]:
    """Seed-and-conclusion pair for the power-function scheme.

    Requires the hypotheses on record (f sub-multiplicative, g
    sub-homogeneous) and g integer-valued.  Report A checks the prime
    seed f(p)^g(p) < p^p for p <= max_prime; report B independently
    checks the conclusion f(n)^g(n) < n^n for 2 <= n <= max_n.
    """
    if not registry.has_tag(f.name, SUB_MULT):
        raise UsageError(f"corollary1 requires a sub-mult tag on {f.name}")
    if not registry.has_tag(g.name, SUB_HOM):
        raise UsageError(f"corollary1 requires a sub-hom tag on {g.name}")
    if max_prime < 2 or max_n < 2:
        raise UsageError("need max_prime >= 2 and max_n >= 2")
    if table is None:
        table = build_spf_table(max(max_prime, max_n))
    fe, ge = Evaluator(f, table), Evaluator(g, table)

    def check_at(x):
        fx = fe(x)
        if fx <= 0:
            raise DomainError(f"{f.name}({x}) = {fx} is not positive")
        gx = ge(x)
        if gx.denominator != 1 or gx < 0:
            raise UnsupportedInputError(
                f"{g.name}({x}) = {gx}; corollary1 needs a nonnegative "
                "integer-valued exponent function")
        lhs = ((fx, int(gx)),)
        rhs = ((Fraction(x), x),)
        order, used_exact = cmp_power_products_detail(lhs, rhs, use_filter=use_filter)
        row_stats = {"exact_fallbacks": 1} if used_exact else {}
        return order == LESS, lhs, rhs, row_stats

    pair = f"{f.name}^{g.name}"
    report_a = _one_dim_report(
        "corollary1", f"{pair}: f(p)^g(p) < p^p on primes",
        {"max_prime": max_prime, "f": f.name, "g": g.name},
        primes_upto(max_prime), check_at, var="p", threads=threads)
    report_b = _one_dim_report(
        "corollary1", f"{pair}: f(n)^g(n) < n^n",
        {"max_n": max_n, "f": f.name, "g": g.name},
        range(2, max_n + 1), check_at, threads=threads)
    return report_a, report_b
