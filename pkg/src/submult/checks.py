"""Exhaustive exact verification of properties over finite (m, n) grids.

Every checker sweeps the full rectangle 1 <= m <= max_m, 1 <= n <= max_n
(properties are quantified over all m, n >= 1, so the m = 1 / n = 1 edges
are included), compares exact values, and reports either holds-on-range
or the lexicographically smallest counterexamples.

Determinism: enumeration is partitioned by rows of constant m; workers
return per-row results which are merged in row order, so reports are
identical for any thread count, byte for byte.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from submult.core import SpfTable, Value, cmp_power_products_detail, cmp_values
from submult.errors import ResourceError, UnsupportedInputError, UsageError
from submult.functions import POWER, ArithFn, Evaluator
from submult.inference import (
    GE_IDENTITY,
    K_FAMILIES,
    K_SUB_HOM,
    K_SUB_MULT,
    K_SUP_HOM,
    K_SUP_MULT,
    LE_IDENTITY,
    MULTIPLICATIVE,
    SUB_HOM,
    SUB_MULT,
    SUP_HOM,
    SUP_MULT,
    PropertySpec,
    PropertyTag,
)

HOLDS = "holds-on-range"
REFUTED = "refuted"

SUB = "sub"
SUP = "sup"

@dataclass(frozen=True)
class CheckConfig:
    max_m: int = 100
    max_n: int = 100
    k_set: tuple[int, ...] = (2,)
    stop_at_first: bool = False
    counterexample_cap: int = 10

    def __post_init__(self):
        if self.max_m < 2 or self.max_n < 2:
            raise UsageError("max_m and max_n must be >= 2")
        if self.counterexample_cap < 1:
            raise UsageError("counterexample_cap must be >= 1")
        object.__setattr__(self, "k_set", tuple(self.k_set))
        if any(k < 2 for k in self.k_set):
            raise UsageError("every k must be >= 2")


@dataclass(frozen=True)
class Counterexample:
    """A grid point where the checked inequality fails.

    lhs/rhs hold either an exact Fraction or, for cross-power checks, a
    tuple of (base, exponent) factors; both are recomputable from the
    point and the property definition."""

    point: tuple[tuple[str, int], ...]  # e.g. (("m", 2), ("n", 2))
    lhs: object
    rhs: object

    def coords(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.point)

    def __getitem__(self, key: str) -> int:
        return dict(self.point)[key]


@dataclass
class CheckReport:
    function: str
    property: str  # PropertySpec label or inequality id
    params: dict
    verdict: str
    counterexamples: list[Counterexample]
    pairs_checked: int
    elapsed_seconds: float
    stats: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


# ---------------------------------------------------------------------------
# Sweep engine
# ---------------------------------------------------------------------------

# compare(m, n) -> (ok, lhs, rhs); returning stats increments via dict
RowFn = Callable[[int], tuple[int, list[Counterexample], dict]]


def _merge_stats(total: dict, part: dict) -> None:
    for key, val in part.items():
        total[key] = total.get(key, 0) + val


def _run_rows(row_fn: RowFn, rows: Sequence[int], stop_at_first: bool,
              threads: int) -> tuple[int, list[Counterexample], dict]:
    checked = 0
    cex: list[Counterexample] = []
    stats: dict = {}

    def consume(results: Iterable[tuple[int, list[Counterexample], dict]]) -> bool:
        nonlocal checked
        for count, row_cex, row_stats in results:
            checked += count
            cex.extend(row_cex)
            _merge_stats(stats, row_stats)
            if stop_at_first and row_cex:
                return True
        return False

    if threads <= 1:
        for m in rows:
            if consume([row_fn(m)]):
                break
    else:
        chunk = max(1, len(rows) // (threads * 4))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = False
            for start in range(0, len(rows), chunk):
                if done:
                    break
                batch = rows[start : start + chunk]
                done = consume(pool.map(row_fn, batch))
    return checked, cex, stats


def _sweep(compare, cfg: CheckConfig, threads: int, *,
           coprime_only: bool = False) -> tuple[str, list[Counterexample], int, dict]:
    def row_fn(m: int):
        count = 0
        row_cex: list[Counterexample] = []
        row_stats: dict = {}
        for n in range(1, cfg.max_n + 1):
            if coprime_only and gcd(m, n) != 1:
                continue
            count += 1
            ok, lhs, rhs = compare(m, n, row_stats)
            if not ok:
                row_cex.append(Counterexample((("m", m), ("n", n)), lhs, rhs))
        return count, row_cex, row_stats

    rows = range(1, cfg.max_m + 1)
    checked, cex, stats = _run_rows(row_fn, rows, cfg.stop_at_first, threads)
    cex.sort(key=Counterexample.coords)
    verdict = REFUTED if cex else HOLDS
    return verdict, cex[: cfg.counterexample_cap], checked, stats


def _require_limit(table: SpfTable, needed: int, what: str) -> None:
    if table.limit < needed:
        raise ResourceError(
            f"{what} needs a sieve limit of at least {needed}, table covers {table.limit}"
        )


def _report(fn_name: str, spec: PropertySpec, cfg: CheckConfig, verdict, cex,
            checked, stats, t0) -> CheckReport:
    params = {"max_m": cfg.max_m, "max_n": cfg.max_n}
    if spec.k is not None:
        params["k"] = spec.k
    return CheckReport(
        function=fn_name,
        property=spec.label(),
        params=params,
        verdict=verdict,
        counterexamples=cex,
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
        stats=stats,
    )


# ---------------------------------------------------------------------------
# Property checkers
# ---------------------------------------------------------------------------


def check_multiplicative(f: ArithFn, cfg: CheckConfig, table: SpfTable, *,
                         threads: int = 1) -> CheckReport:
    """f(mn) = f(m) f(n) over all coprime pairs of the grid."""
    t0 = time.perf_counter()
    _require_limit(table, cfg.max_m * cfg.max_n, "multiplicativity check")
    ev = Evaluator(f, table)

    def compare(m, n, stats):
        lhs = ev(m * n)
        rhs = ev(m) * ev(n)
        return lhs == rhs, lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads, coprime_only=True)
    return _report(f.name, PropertySpec(MULTIPLICATIVE), cfg, verdict, cex,
                   checked, stats, t0)


def _ok(direction: str, order: int) -> bool:
    # non-strict in both directions: equality is never a counterexample
    return order <= 0 if direction == SUB else order >= 0


def check_submult(f: ArithFn, direction: str, cfg: CheckConfig, table: SpfTable, *,
                  threads: int = 1) -> CheckReport:
    """f(mn) <= f(m) f(n) (direction "sub") or >= ("sup") over the grid."""
    t0 = time.perf_counter()
    _require_limit(table, cfg.max_m * cfg.max_n, "sub/sup-multiplicativity check")
    ev = Evaluator(f, table)

    def compare(m, n, stats):
        lhs = ev(m * n)
        rhs = ev(m) * ev(n)
        return _ok(direction, cmp_values(lhs, rhs)), lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads)
    spec = PropertySpec(SUB_MULT if direction == SUB else SUP_MULT)
    return _report(f.name, spec, cfg, verdict, cex, checked, stats, t0)


def check_subhom(f: ArithFn, direction: str, cfg: CheckConfig, table: SpfTable, *,
                 threads: int = 1) -> CheckReport:
    """f(mn) <= m f(n) (direction "sub") or >= ("sup") over the grid."""
    t0 = time.perf_counter()
    _require_limit(table, cfg.max_m * cfg.max_n, "sub/sup-homogeneity check")
    ev = Evaluator(f, table)

    def compare(m, n, stats):
        lhs = ev(m * n)
        rhs = m * ev(n)
        return _ok(direction, cmp_values(lhs, rhs)), lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads)
    spec = PropertySpec(SUB_HOM if direction == SUB else SUP_HOM)
    return _report(f.name, spec, cfg, verdict, cex, checked, stats, t0)


def check_k_submult(f: ArithFn, k: int, direction: str, cfg: CheckConfig,
                    table: SpfTable, *, threads: int = 1) -> CheckReport:
    """f(mn)^k <= f(m^k) f(n^k) ("sub") or >= ("sup") over the grid.

    Refuses to start unless the sieve covers max_m^k and max_n^k."""
    t0 = time.perf_counter()
    needed = max(cfg.max_m * cfg.max_n, cfg.max_m**k, cfg.max_n**k)
    _require_limit(table, needed, f"k-multiplicativity check with k={k}")
    ev = Evaluator(f, table)

    def compare(m, n, stats):
        lhs = ev(m * n) ** k
        rhs = ev(m**k) * ev(n**k)
        return _ok(direction, cmp_values(lhs, rhs)), lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads)
    spec = PropertySpec(K_SUB_MULT if direction == SUB else K_SUP_MULT, k)
    return _report(f.name, spec, cfg, verdict, cex, checked, stats, t0)


def check_k_subhom(f: ArithFn, k: int, direction: str, cfg: CheckConfig,
                   table: SpfTable, *, threads: int = 1) -> CheckReport:
    """f(mn)^k <= m^k f(n^k) ("sub") or >= ("sup") over the grid."""
    t0 = time.perf_counter()
    needed = max(cfg.max_m * cfg.max_n, cfg.max_n**k)
    _require_limit(table, needed, f"k-homogeneity check with k={k}")
    ev = Evaluator(f, table)

    def compare(m, n, stats):
        lhs = ev(m * n) ** k
        rhs = Fraction(m**k) * ev(n**k)
        return _ok(direction, cmp_values(lhs, rhs)), lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads)
    spec = PropertySpec(K_SUB_HOM if direction == SUB else K_SUP_HOM, k)
    return _report(f.name, spec, cfg, verdict, cex, checked, stats, t0)


def _as_int(v: Value, fn_name: str, at: int) -> int:
    if v.denominator != 1:
        raise UnsupportedInputError(
            f"{fn_name}({at}) = {v} is not an integer; cross-power comparison "
            "requires an integer-valued exponent function"
        )
    return v.numerator


def check_power_submult(f: ArithFn, g: ArithFn, direction: str, cfg: CheckConfig,
                        table: SpfTable, *, threads: int = 1,
                        use_filter: bool = True) -> CheckReport:
    """Sub/sup-multiplicativity of h(n) = f(n)^(g(n)/n), decided exactly.

    h(mn) <= h(m) h(n) is equivalent, after raising both sides to the
    mn-th power, to f(mn)^g(mn) <= f(m)^(g(m) n) * f(n)^(g(n) m); both
    sides are products of integer powers of positive rationals, which
    cmp_power_products orders exactly.  g must be integer-valued.
    """
    t0 = time.perf_counter()
    _require_limit(table, cfg.max_m * cfg.max_n, "cross-power check")
    fe = Evaluator(f, table)
    ge = Evaluator(g, table)

    def compare(m, n, stats):
        gm = _as_int(ge(m), g.name, m)
        gn = _as_int(ge(n), g.name, n)
        gmn = _as_int(ge(m * n), g.name, m * n)
        if min(gm, gn, gmn) < 0:
            raise UnsupportedInputError(
                f"{g.name} takes a negative value on the grid")
        lhs = ((fe(m * n), gmn),)
        rhs = ((fe(m), gm * n), (fe(n), gn * m))
        order, used_exact = cmp_power_products_detail(lhs, rhs, use_filter=use_filter)
        if used_exact:
            stats["exact_fallbacks"] = stats.get("exact_fallbacks", 0) + 1
        return _ok(direction, order), lhs, rhs

    verdict, cex, checked, stats = _sweep(compare, cfg, threads)
    spec_label = ("power-sub-mult" if direction == SUB else "power-sup-mult")
    params = {"max_m": cfg.max_m, "max_n": cfg.max_n}
    return CheckReport(
        function=f"{f.name}^({g.name}/n)",
        property=spec_label,
        params=params,
        verdict=verdict,
        counterexamples=cex,
        pairs_checked=checked,
        elapsed_seconds=time.perf_counter() - t0,
        stats=stats,
    )


def check_identity_bound(f: ArithFn, direction: str, max_n: int,
                         table: SpfTable) -> CheckReport:
    """f(n) <= n ("le") or f(n) >= n ("ge") for all 1 <= n <= max_n.

    Verifies the side conditions consumed by the bounded-* inference
    rules."""
    t0 = time.perf_counter()
    _require_limit(table, max_n, "identity bound check")
    ev = Evaluator(f, table)
    cex = []
    for n in range(1, max_n + 1):
        v = ev(n)
        ok = v <= n if direction == "le" else v >= n
        if not ok:
            cex.append(Counterexample((("n", n),), v, Fraction(n)))
    return CheckReport(
        function=f.name,
        property=LE_IDENTITY if direction == "le" else GE_IDENTITY,
        params={"max_n": max_n},
        verdict=REFUTED if cex else HOLDS,
        counterexamples=cex[:10],
        pairs_checked=max_n,
        elapsed_seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Dispatch and classification
# ---------------------------------------------------------------------------


def run_property_check(f: ArithFn, spec: PropertySpec, cfg: CheckConfig,
                       table: SpfTable, *, threads: int = 1) -> CheckReport:
    """Run the checker matching a property spec."""
    fam = spec.family
    if fam == MULTIPLICATIVE:
        return check_multiplicative(f, cfg, table, threads=threads)
    if fam in (SUB_MULT, SUP_MULT):
        return check_submult(f, SUB if fam == SUB_MULT else SUP, cfg, table,
                             threads=threads)
    if fam in (SUB_HOM, SUP_HOM):
        return check_subhom(f, SUB if fam == SUB_HOM else SUP, cfg, table,
                            threads=threads)
    if fam in (K_SUB_MULT, K_SUP_MULT):
        return check_k_submult(f, spec.k, SUB if fam == K_SUB_MULT else SUP,
                               cfg, table, threads=threads)
    if fam in (K_SUB_HOM, K_SUP_HOM):
        return check_k_subhom(f, spec.k, SUB if fam == K_SUB_HOM else SUP,
                              cfg, table, threads=threads)
    raise UsageError(f"no checker for property {spec.label()}")


def classify(f: ArithFn, cfg: CheckConfig, table: SpfTable, *,
             threads: int = 1) -> list[CheckReport]:
    """One report per property family, k-families instantiated over
    cfg.k_set, in a fixed order."""
    if f.kind == POWER:
        raise UsageError(f"{f.name}: power combinators cannot be classified "
                         "(no standalone values)")
    reports = [
        check_multiplicative(f, cfg, table, threads=threads),
        check_submult(f, SUB, cfg, table, threads=threads),
        check_submult(f, SUP, cfg, table, threads=threads),
        check_subhom(f, SUB, cfg, table, threads=threads),
        check_subhom(f, SUP, cfg, table, threads=threads),
    ]
    for k in sorted(cfg.k_set):
        reports.append(check_k_submult(f, k, SUB, cfg, table, threads=threads))
        reports.append(check_k_submult(f, k, SUP, cfg, table, threads=threads))
        reports.append(check_k_subhom(f, k, SUB, cfg, table, threads=threads))
        reports.append(check_k_subhom(f, k, SUP, cfg, table, threads=threads))
    return reports


def reports_for_tag(f: ArithFn, tag: PropertyTag, cfg: CheckConfig,
                    table: SpfTable, *, threads: int = 1) -> list[CheckReport]:
    """Sweep reports exercising one tag; a k = None tag is instantiated
    over cfg.k_set, side conditions over [1, max_m * max_n]."""
    if tag.family in (LE_IDENTITY, GE_IDENTITY):
        direction = "le" if tag.family == LE_IDENTITY else "ge"
        return [check_identity_bound(f, direction, cfg.max_m * cfg.max_n, table)]
    if tag.family in (SUB_MULT, SUP_MULT) and f.kind == POWER:
        base, expo = f.children
        direction = SUB if tag.family == SUB_MULT else SUP
        return [check_power_submult(base, expo, direction, cfg, table,
                                    threads=threads)]
    if tag.family in K_FAMILIES:
        ks = cfg.k_set if tag.k is None else (tag.k,)
        return [run_property_check(f, PropertySpec(tag.family, k), cfg, table,
                                   threads=threads) for k in ks]
    return [run_property_check(f, PropertySpec(tag.family), cfg, table,
                               threads=threads)]
