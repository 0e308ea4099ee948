"""Exact parameter-region predicates and the coverage verdict dispatcher.

The irrational thresholds ``2 - sqrt(3)`` and ``(3 - sqrt(5))/2`` never appear
as numbers: on ``(0, 1)``

* ``lam >= 2 - sqrt(3)``       iff ``lam**2 - 4*lam + 1 <= 0``
* ``lam >= (3 - sqrt(5))/2``   iff ``lam**2 - 3*lam + 1 <= 0``
"""

from __future__ import annotations

import enum
import random
from fractions import Fraction

from .errors import CounterexampleFound, HypothesisFailure, InvalidParams
from .ifs import IfsParams, build_cover, right_window, split_window, upper_window, validate_params
from .numerics import Interval
from .products import (
    CoverageVerdict,
    depth_invariance,
    product_union,
    refute_coverage,
    renormalized_coverage,
    stability_check_unordered,
)


class RegionLabel(str, enum.Enum):
    INVALID = "invalid"
    NECESSARY_FAILS = "necessary_fails"
    BROWN = "brown"
    GRAY = "gray"
    ORANGE = "orange"
    BLUE = "blue"

    @property
    def colored(self) -> bool:
        return self not in (RegionLabel.INVALID, RegionLabel.NECESSARY_FAILS)


def at_least_lower_threshold(lam: Fraction) -> bool:
    """``lam >= 2 - sqrt(3)`` for ``lam`` in ``(0, 1)``."""
    return lam * lam - 4 * lam + 1 <= 0


def at_least_upper_threshold(lam: Fraction) -> bool:
    """``lam >= (3 - sqrt(5))/2`` for ``lam`` in ``(0, 1)``."""
    return lam * lam - 3 * lam + 1 <= 0


def necessary_condition(p: IfsParams) -> bool:
    """``(1 - lam)**2 <= c``."""
    return (1 - p.lam) ** 2 <= p.c


def strong_obstruction(p: IfsParams) -> bool:
    """``2*lam < (1 - lam)**2``: no valid ``c`` can reach the threshold."""
    return 2 * p.lam < (1 - p.lam) ** 2


def in_gray(p: IfsParams) -> bool:
    # c <= lam^2 + lam/(1-lam), cleared of the positive denominator
    lam, c = p.lam, p.c
    return c * (1 - lam) <= lam * lam * (1 - lam) + lam


def in_orange(p: IfsParams) -> bool:
    lam, c = p.lam, p.c
    return (c - lam * lam) * (1 - lam) <= c * c


def classify(p: IfsParams) -> RegionLabel:
    if not p.valid:
        return RegionLabel.INVALID
    if not necessary_condition(p):
        return RegionLabel.NECESSARY_FAILS
    if at_least_upper_threshold(p.lam):
        return RegionLabel.BROWN
    if in_gray(p):
        return RegionLabel.GRAY
    if in_orange(p):
        return RegionLabel.ORANGE
    return RegionLabel.BLUE


def classify_pair(lam, c) -> RegionLabel:
    """Like :func:`classify` but accepts raw values, ``lam`` outside (0, 1) included."""
    try:
        p = validate_params(lam, c)
    except InvalidParams:
        return RegionLabel.INVALID
    return classify(p)


# ---------------------------------------------------------------------------
# Routes


def route_window(p: IfsParams, label: RegionLabel):
    if label is RegionLabel.BROWN:
        return right_window(p)
    if label in (RegionLabel.GRAY, RegionLabel.ORANGE):
        return upper_window(p)
    if label is RegionLabel.BLUE:
        return split_window(p)
    raise ValueError(f"no window for {label}")


def _guard(ok: bool, what: str, p: IfsParams) -> None:
    if not ok:
        raise HypothesisFailure(f"{what} fails at {p}")


def route_guards(p: IfsParams, label: RegionLabel) -> Fraction:
    """Check the route's lemma-internal inequalities; return the predicted left edge ``m``."""
    lam, c = p.lam, p.c
    if label is RegionLabel.BROWN:
        m = (1 - lam) ** 2
        _guard(m <= lam, "(1-lam)^2 <= lam", p)
        return m
    if label is RegionLabel.GRAY:
        _guard(c - lam * lam >= 1 - c - lam, "c - lam^2 >= 1 - c - lam", p)
        _guard(c * (1 - lam + lam * c) > (c - lam * lam) * (1 - lam * lam), "c(1-lam+lam c) > (c-lam^2)(1-lam^2)", p)
        m = (c - lam * lam) * (1 - lam)
        _guard(m <= lam, "(c-lam^2)(1-lam) <= lam", p)
        return m
    if label is RegionLabel.ORANGE:
        _guard(c - lam * lam >= 1 - c - lam, "c - lam^2 >= 1 - c - lam", p)
        _guard((2 * lam - lam * lam) ** 2 <= lam, "(2 lam - lam^2)^2 <= lam", p)
        m = (c - lam * lam) ** 2
        _guard(m <= lam, "(c-lam^2)^2 <= lam", p)
        return m
    if label is RegionLabel.BLUE:
        _guard(2 * c >= 1, "c >= 1/2", p)
        _guard(c * c > (c - lam) * (1 - lam), "c^2 > (c-lam)(1-lam)", p)
        m = (c - lam) ** 2
        _guard(m <= lam, "(c-lam)^2 <= lam", p)
        return m
    raise ValueError(f"no route for {label}")


def verify_theorem(p: IfsParams, n_check: int | None = None) -> CoverageVerdict:
    """Decide ``K*K == [0, 1]`` and attach the evidence for the decision.

    Colored parameters go through their lemma window: check that every base
    basic interval starts at or above ``1 - c - lam`` and every base pair
    passes the refinement test, compute the exact base product, and
    renormalize. ``n_check`` (an absolute level) adds a finite-depth audit
    that the cover product does not change.
    """
    label = classify(p)
    if label is RegionLabel.INVALID:
        return CoverageVerdict(False, None, None, label.value, f"invalid parameters: {p.reason} fails")
    if label is RegionLabel.NECESSARY_FAILS:
        verdict = refute_coverage(p, max(1, n_check or 1))
        note = "; 2*lambda < (1-lambda)^2 as well" if strong_obstruction(p) else ""
        return CoverageVerdict(
            False,
            verdict.base_product,
            None,
            label.value,
            verdict.certificate + note,
            gap=verdict.gap,
            audit={"strong_obstruction": strong_obstruction(p)},
        )

    win = route_window(p, label)
    predicted_m = route_guards(p, label)
    cover = build_cover(p, win, cover_base_level(win))
    floor = 1 - p.c - p.lam
    pieces = cover.basic_intervals()
    _guard(all(iv.lo >= floor for iv in pieces), "base intervals start at or above 1 - c - lam", p)
    _guard(
        all(stability_check_unordered(p, I1, I2) for I1 in pieces for I2 in pieces),
        "refinement test on every base pair",
        p,
    )
    base = product_union(cover.union, cover.union)
    _guard(base.covers(Interval(predicted_m, 1)), f"[{predicted_m}, 1] inside the base product", p)
    verdict = renormalized_coverage(p, base, route=label.value)
    _guard(verdict.covered, "renormalized coverage", p)

    audit = {"pairwise_stability": True, "window": window_text(win), "base_level": cover.level}
    if n_check is not None and n_check > cover.level:
        ok = depth_invariance(p, win, n_check)
        _guard(ok, f"depth invariance up to level {n_check}", p)
        audit["depth_invariance"] = (cover.level, n_check, ok)
    return CoverageVerdict(True, base, verdict.m, label.value, verdict.certificate, audit=audit)


def cover_base_level(win) -> int:
    return win.base_level if hasattr(win, "base_level") else win[0].base_level


def window_text(win) -> str:
    wins = (win,) if hasattr(win, "base_level") else tuple(win)
    return " U ".join(f"[{w.a}, {w.b}]" for w in wins)


# ---------------------------------------------------------------------------
# Randomized audits of the auxiliary inequalities


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 10**4) -> Fraction:
    """Uniform grid point ``lo + k*(hi-lo)/den`` with ``0 <= k <= den``."""
    return lo + (hi - lo) * Fraction(rng.randint(0, den), den)


def sample_valid(rng: random.Random, lam_lo=Fraction(1, 20), lam_hi=Fraction(19, 20), den: int = 10**4) -> IfsParams:
    """Random valid parameters, ``lam`` drawn in ``(lam_lo, lam_hi)``."""
    while True:
        lam = random_rational(rng, Fraction(lam_lo), Fraction(lam_hi), den)
        if not 0 < lam < Fraction(1, 2) or lam in (lam_lo, lam_hi):
            continue
        c = random_rational(rng, lam, min(2 * lam, 1 - lam), den)
        p = validate_params(lam, c)
        if p.valid:
            return p


def sample_purple(rng: random.Random, den: int = 10**4) -> IfsParams:
    """Random valid parameters with ``(1 - lam)**2 <= c``."""
    lo_lam = Fraction(267, 1000)  # just below 2 - sqrt(3)
    while True:
        lam = random_rational(rng, lo_lam, Fraction(1, 2), den)
        if not at_least_lower_threshold(lam):
            continue
        c = random_rational(rng, max(lam, (1 - lam) ** 2), min(2 * lam, 1 - lam), den)
        p = validate_params(lam, c)
        if p.valid and necessary_condition(p):
            return p


def implication_lemma_check(samples: int, seed: int = 0) -> bool:
    """Audit ``1 - 2c <= lam`` and ``(1 - c)/2 <= lam`` on the purple region."""
    rng = random.Random(seed)
    for _ in range(samples):
        p = sample_purple(rng)
        if not (1 - 2 * p.c <= p.lam and (1 - p.c) / 2 <= p.lam):
            raise CounterexampleFound("implication fails", (p.lam, p.c))
    return True


def _sample_lemma_lambda(rng: random.Random, lam_range, den: int) -> Fraction:
    if lam_range is not None:
        lo, hi = map(Fraction, lam_range)
        while True:
            lam = random_rational(rng, lo, hi, den)
            if 0 < lam < 1:
                return lam
    while True:
        lam = random_rational(rng, Fraction(1, 4), Fraction(2, 5), den)
        if at_least_lower_threshold(lam) and not at_least_upper_threshold(lam):
            return lam


def lem2_auxiliary_inequality(samples: int, seed: int = 0, lam_range=None) -> bool:
    """Audit ``c**2 + (lam-1)c + lam - lam**3 > 0`` and its negative discriminant.

    ``lam`` is drawn from ``[2 - sqrt(3), (3 - sqrt(5))/2)`` unless
    ``lam_range`` is given. The inequality is false for small ``lam``
    (e.g. ``lam = 1/10, c = 9/20``), so a wide range can raise.
    """
    rng = random.Random(seed)
    den = 10**4
    for _ in range(samples):
        lam = _sample_lemma_lambda(rng, lam_range, den)
        c = random_rational(rng, Fraction(0), Fraction(1), den)
        disc = (lam - 1) ** 2 - 4 * (lam - lam**3)
        if disc >= 0:
            raise CounterexampleFound("discriminant is not negative", (lam,))
        if c * c + (lam - 1) * c + lam - lam**3 <= 0:
            raise CounterexampleFound("quadratic in c is not positive", (lam, c))
    return True


def lem4_auxiliary_inequality(samples: int, seed: int = 0, lam_range=None) -> bool:
    """Audit ``c**2 > (c - lam)(1 - lam)`` and, for ``lam <= c <= 2 lam``, ``(c - lam)**2 <= lam``."""
    rng = random.Random(seed)
    den = 10**4
    for _ in range(samples):
        lam = _sample_lemma_lambda(rng, lam_range, den)
        disc = (lam - 1) ** 2 - 4 * (lam - lam * lam)
        if disc >= 0:
            raise CounterexampleFound("discriminant is not negative", (lam,))
        c = random_rational(rng, Fraction(0), Fraction(1), den)
        if not c * c > (c - lam) * (1 - lam):
            raise CounterexampleFound("c^2 > (c-lam)(1-lam) fails", (lam, c))
        c = random_rational(rng, lam, 2 * lam, den)
        if not (c - lam) ** 2 <= lam:
            raise CounterexampleFound("(c-lam)^2 <= lam fails", (lam, c))
    return True
