"""Property vocabulary and the syntactic inference engine.

Tags record which functional inequalities a function satisfies.  The
closure rules mirror the implications this package verifies empirically:
they never inspect numeric values, only existing tags, so their
soundness is itself testable by sweeping every inferred tag.

Rule summary (sub/sup swap symmetrically unless noted):
  product-closure     sub-mult * sub-mult -> sub-mult
  reciprocal-flip     1 / sub-mult -> sup-mult          (base > 0)
  quotient-closure    sup-mult / sub-mult -> sup-mult   (denominator > 0)
  sum-closure         sub-mult + sub-mult -> sub-mult   (no sup dual)
  bounded-to-hom      sub-mult and f <= n -> sub-hom
  hom-to-k-hom        sub-mult and sup-hom -> k-sup-hom for every k
  bounded-to-k-hom    k-sub-mult and f <= n -> k-sub-hom (same k)
  power-closure       base sub-mult and exponent sub-hom
                      -> power combinator sub-mult      (both > 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from submult.errors import UsageError

if TYPE_CHECKING:
    from submult.functions import ArithFn

MULTIPLICATIVE = "multiplicative"
SUB_MULT = "sub-mult"
SUP_MULT = "sup-mult"
SUB_HOM = "sub-hom"
SUP_HOM = "sup-hom"
K_SUB_MULT = "k-sub-mult"
K_SUP_MULT = "k-sup-mult"
K_SUB_HOM = "k-sub-hom"
K_SUP_HOM = "k-sup-hom"

FAMILIES = (MULTIPLICATIVE, SUB_MULT, SUP_MULT, SUB_HOM, SUP_HOM,
            K_SUB_MULT, K_SUP_MULT, K_SUB_HOM, K_SUP_HOM)
K_FAMILIES = (K_SUB_MULT, K_SUP_MULT, K_SUB_HOM, K_SUP_HOM)

# Side conditions consumed as hypotheses by the bounded-* rules:
# f(n) <= n resp. f(n) >= n on the verified range.
LE_IDENTITY = "le-identity"
GE_IDENTITY = "ge-identity"
SIDE_CONDITIONS = (LE_IDENTITY, GE_IDENTITY)

ASSERTED = "asserted"
INFERRED = "inferred"
VERIFIED = "verified-on-range"
REFUTED = "refuted"


@dataclass(frozen=True)
class PropertySpec:
    """A checkable property: family plus the exponent k for k-families."""

    family: str
    k: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown property family {self.family!r}")
        if self.family in K_FAMILIES:
            if self.k is None or self.k < 2:
                raise UsageError(f"{self.family} needs an integer k >= 2, got {self.k}")
        elif self.k is not None:
            raise UsageError(f"{self.family} does not take k")

    def label(self) -> str:
        return self.family if self.k is None else f"{self.family}(k={self.k})"


@dataclass(frozen=True)
class PropertyTag:
    """A recorded property of a named function.

    For k-families, k = None means the tag holds for every k >= 2 and
    subsumes any specific k.  status tracks how we know: asserted when
    recorded at registration, inferred when produced by a closure rule,
    verified-on-range / refuted after a sweep.
    """

    subject: str
    family: str
    k: int | None = None
    status: str = ASSERTED
    provenance: str = ""
    counterexample: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES + SIDE_CONDITIONS:
            raise UsageError(f"unknown tag family {self.family!r}")
        if self.k is not None and self.family not in K_FAMILIES:
            raise UsageError(f"{self.family} does not take k")
        if self.status == REFUTED and self.counterexample is None:
            raise UsageError("a refuted tag must carry a counterexample reference")

    def label(self) -> str:
        if self.family in K_FAMILIES:
            return f"{self.family}(k={'any' if self.k is None else self.k})"
        return self.family


class _TagSet:
    """Per-function tag store with k = None subsumption."""

    def __init__(self):
        self._by_fn: dict[str, dict[tuple[str, int | None], PropertyTag]] = {}

    def has(self, name: str, family: str, k: int | None = None) -> bool:
        fam = self._by_fn.get(name, {})
        if (family, None) in fam:
            return True
        if k is not None:
            return (family, k) in fam
        return any(key[0] == family for key in fam)

    def k_tags(self, name: str, family: str) -> list[int | None]:
        return [key[1] for key in self._by_fn.get(name, {}) if key[0] == family]

    def add(self, tag: PropertyTag) -> bool:
        fam = self._by_fn.setdefault(tag.subject, {})
        if (tag.family, None) in fam:
            return False
        if (tag.family, tag.k) in fam:
            return False
        if tag.k is None:
            # universal tag replaces any specific-k entries
            for key in [key for key in fam if key[0] == tag.family]:
                del fam[key]
        fam[(tag.family, tag.k)] = tag
        return True

    def all_tags(self) -> dict[str, tuple[PropertyTag, ...]]:
        out = {}
        for name, fam in self._by_fn.items():
            out[name] = tuple(sorted(fam.values(),
                                     key=lambda t: (t.family, t.k or 0)))
        return out


def _apply_rules(fn: "ArithFn", tags: _TagSet) -> bool:
    """One pass of every rule on one function; True if anything was added."""
    from submult import functions as F

    name = fn.name
    changed = False

    def infer(family, k, rule):
        nonlocal changed
        if tags.add(PropertyTag(subject=name, family=family, k=k,
                                status=INFERRED, provenance=rule)):
            changed = True

    # implications consuming the function's own tags
    if tags.has(name, SUB_MULT) and tags.has(name, LE_IDENTITY):
        infer(SUB_HOM, None, "bounded-to-hom")
    if tags.has(name, SUP_MULT) and tags.has(name, GE_IDENTITY):
        infer(SUP_HOM, None, "bounded-to-hom")
    if tags.has(name, SUB_MULT) and tags.has(name, SUP_HOM):
        infer(K_SUP_HOM, None, "hom-to-k-hom")
    if tags.has(name, SUP_MULT) and tags.has(name, SUB_HOM):
        infer(K_SUB_HOM, None, "hom-to-k-hom")
    if tags.has(name, LE_IDENTITY):
        for k in tags.k_tags(name, K_SUB_MULT):
            infer(K_SUB_HOM, k, "bounded-to-k-hom")
    if tags.has(name, GE_IDENTITY):
        for k in tags.k_tags(name, K_SUP_MULT):
            infer(K_SUP_HOM, k, "bounded-to-k-hom")

    # combinator introductions consuming the children's tags
    kids = fn.children
    if fn.kind == F.PRODUCT:
        if all(tags.has(c.name, SUB_MULT) for c in kids):
            infer(SUB_MULT, None, "product-closure")
        if all(tags.has(c.name, SUP_MULT) for c in kids):
            infer(SUP_MULT, None, "product-closure")
    elif fn.kind == F.SUM:
        if all(tags.has(c.name, SUB_MULT) for c in kids):
            infer(SUB_MULT, None, "sum-closure")
    elif fn.kind == F.RECIPROCAL:
        base = kids[0]
        if base.positive:
            if tags.has(base.name, SUB_MULT):
                infer(SUP_MULT, None, "reciprocal-flip")
            if tags.has(base.name, SUP_MULT):
                infer(SUB_MULT, None, "reciprocal-flip")
    elif fn.kind == F.QUOTIENT:
        num, den = kids
        if den.positive:
            if tags.has(num.name, SUP_MULT) and tags.has(den.name, SUB_MULT):
                infer(SUP_MULT, None, "quotient-closure")
            if tags.has(num.name, SUB_MULT) and tags.has(den.name, SUP_MULT):
                infer(SUB_MULT, None, "quotient-closure")
    elif fn.kind == F.POWER:
        base, expo = kids
        if base.positive and expo.positive:
            if tags.has(base.name, SUB_MULT) and tags.has(expo.name, SUB_HOM):
                infer(SUB_MULT, None, "power-closure")
            if tags.has(base.name, SUP_MULT) and tags.has(expo.name, SUP_HOM):
                infer(SUP_MULT, None, "power-closure")

    return changed


def close_tags(fns: Iterable["ArithFn"], seed: Iterable[PropertyTag],
               ) -> dict[str, tuple[PropertyTag, ...]]:
    """Fixpoint of the inference rules over a set of functions."""
    fns = list(fns)
    tags = _TagSet()
    for t in seed:
        tags.add(t)
    changed = True
    while changed:
        changed = False
        for fn in fns:
            if _apply_rules(fn, tags):
                changed = True
    return tags.all_tags()


def _descendants(f: "ArithFn") -> list["ArithFn"]:
    seen: dict[str, "ArithFn"] = {}
    stack = [f]
    while stack:
        fn = stack.pop()
        if fn.name in seen:
            continue
        seen[fn.name] = fn
        stack.extend(fn.children)
    return list(seen.values())


def infer_properties(f: "ArithFn", known: Iterable[PropertyTag]) -> list[PropertyTag]:
    """Closure of the known tags under the inference rules, for f and
    everything it is built from.  Unknown hypotheses yield no inference;
    the input tags are part of the result."""
    closed = close_tags(_descendants(f), known)
    out = []
    for name in sorted(closed):
        out.extend(closed[name])
    return out
