"""Branch-and-bound proof that the blue parameter set satisfies ``c >= 1/2``.

The blue set is every ``(lam, c)`` with

    lam**2 - 4 lam + 1 <= 0              (lam >= 2 - sqrt 3)
    lam**2 - 3 lam + 1 >= 0              (lam <= (3 - sqrt 5)/2, closure)
    c - (1 - lam)**2 >= 0
    2 lam - c >= 0
    (c - lam**2)(1 - lam) - c**2 >= 0
    c (1 - lam) - lam**2 (1 - lam) - lam >= 0

Boxes are halved on their longer side. A leaf is closed either because one
constraint is negative on the whole box, or because the box has ``c >= 1/2``.
Polynomial ranges are enclosed monomial by monomial, which is a valid
enclosure on boxes with non-negative coordinates.

The bound is attained at ``(1 - 1/sqrt 2, 1/2)``, where the third and sixth
constraints are both tight, so boxes around that point can never be closed
by either rule. Boxes still open at the depth limit are closed with the
identity

    (1 + lam) * (c - (1 - lam)**2) + (c (1 - lam) - lam**2 (1 - lam) - lam) == 2c - 1

whose multiplier ``1 + lam`` is positive on every box.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Undecided
from .numerics import IntegerPolynomial, Interval, format_rational, isolate_smallest_root

HALF = Fraction(1, 2)
THRESHOLD_PRECISION = Fraction(1, 2**20)


class Poly2:
    """Polynomial in ``(lam, c)`` stored as ``{(i, j): coeff}`` for ``lam**i * c**j``."""

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, v):
        return cls({(0, 0): v})

    def __add__(self, other):
        other = other if isinstance(other, Poly2) else Poly2.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Poly2) else Poly2.const(other)))

    def __rsub__(self, other):
        return Poly2.const(other) - self

    def __mul__(self, other):
        other = other if isinstance(other, Poly2) else Poly2.const(other)
        out = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return Poly2(out)

    __rmul__ = __mul__

    def upper(self, lam: Interval, c: Interval) -> Fraction:
        """Upper bound on the box ``lam x c`` (both intervals non-negative)."""
        total = Fraction(0)
        for (i, j), v in self.terms.items():
            if v > 0:
                total += v * lam.hi**i * c.hi**j
            else:
                total += v * lam.lo**i * c.lo**j
        return total


LAM = Poly2({(1, 0): 1})
C = Poly2({(0, 1): 1})

CONSTRAINTS: tuple[tuple[str, Poly2], ...] = (
    ("lam>=2-sqrt3", -(LAM * LAM) + 4 * LAM - 1),
    ("lam<=(3-sqrt5)/2", LAM * LAM - 3 * LAM + 1),
    ("c>=(1-lam)^2", C - (1 - LAM) * (1 - LAM)),
    ("c<=2lam", 2 * LAM - C),
    ("(c-lam^2)(1-lam)>=c^2", (C - LAM * LAM) * (1 - LAM) - C * C),
    ("c>=lam^2+lam/(1-lam)", C * (1 - LAM) - LAM * LAM * (1 - LAM) - LAM),
)

GOAL = "c>=1/2"
COMBINED = "c>=1/2:combined"

# (multiplier, constraint index) pairs whose weighted sum is 2c - 1
COMBINATION = ((1 + LAM, 2), (Poly2.const(1), 5))


@dataclass(frozen=True)
class Box:
    lam: Interval
    c: Interval

    def split(self) -> tuple[Box, Box]:
        """Halve the longer side; ties split ``lam``."""
        if self.c.width > self.lam.width:
            mid = (self.c.lo + self.c.hi) / 2
            return Box(self.lam, Interval(self.c.lo, mid)), Box(self.lam, Interval(mid, self.c.hi))
        mid = (self.lam.lo + self.lam.hi) / 2
        return Box(Interval(self.lam.lo, mid), self.c), Box(Interval(mid, self.lam.hi), self.c)

    def key(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.lam.lo, self.lam.hi, self.c.lo, self.c.hi)


def decide(box: Box) -> str | None:
    for name, g in CONSTRAINTS:
        if g.upper(box.lam, box.c) < 0:
            return "excluded:" + name
    if box.c.lo >= HALF:
        return GOAL
    return None


def combination_residual() -> Poly2:
    """``sum(s_i * g_i) - (2c - 1)``; the zero polynomial."""
    total = Poly2()
    for mult, idx in COMBINATION:
        total = total + mult * CONSTRAINTS[idx][1]
    return total - (2 * C - 1)


def decide_combined(box: Box) -> str | None:
    residual = combination_residual()
    if residual.terms:
        return None
    # multipliers must be non-negative on the box: lower bound = -upper(-s)
    if all(-(-mult).upper(box.lam, box.c) >= 0 for mult, _ in COMBINATION):
        return COMBINED
    return None


def root_box() -> Box:
    """``[L, U] x [0, 1]`` with rational ``L <= 2 - sqrt 3`` and ``U >= (3 - sqrt 5)/2``."""
    unit = Interval(0, 1)
    lower = isolate_smallest_root(IntegerPolynomial((1, -4, 1)), unit, THRESHOLD_PRECISION)
    upper = isolate_smallest_root(IntegerPolynomial((1, -3, 1)), unit, THRESHOLD_PRECISION)
    return Box(Interval(lower.lo, upper.hi), unit)


@dataclass
class BoxCertificate:
    root: Box
    depth: int
    leaves: list[tuple[Box, str, int]] = field(default_factory=list)
    undecided: list[Box] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.undecided

    def stats(self) -> dict:
        counts: dict[str, int] = {}
        for _, verdict, _ in self.leaves:
            counts[verdict] = counts.get(verdict, 0) + 1
        return {
            "leaves": len(self.leaves),
            "undecided": len(self.undecided),
            "max_leaf_depth": max((d for _, _, d in self.leaves), default=0),
            "verdicts": dict(sorted(counts.items())),
        }

    def to_json(self) -> str:
        def box(b: Box):
            return [format_rational(x) for x in b.key()]

        return json.dumps(
            {
                "kind": "blue-lemma",
                "claim": GOAL,
                "depth": self.depth,
                "root": box(self.root),
                "leaves": [{"box": box(b), "verdict": v} for b, v, _ in self.leaves],
                "undecided": [box(b) for b in self.undecided],
            },
            indent=1,
        )


def certify_blue_lemma(
    depth: int = 24, raise_on_undecided: bool = True, combined_rule: bool = True
) -> BoxCertificate:
    """Subdivide up to ``depth`` halvings; leaves come out in depth-first order.

    With ``combined_rule=False`` only the two interval rules are used and the
    boxes around the tight point stay undecided at every depth.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    root = root_box()
    cert = BoxCertificate(root, depth)
    stack = [(root, 0)]
    while stack:
        box, level = stack.pop()
        verdict = decide(box)
        if verdict is not None:
            cert.leaves.append((box, verdict, level))
        elif level >= depth:
            verdict = decide_combined(box) if combined_rule else None
            if verdict is None:
                cert.undecided.append(box)
            else:
                cert.leaves.append((box, verdict, level))
        else:
            left, right = box.split()
            stack.append((right, level + 1))
            stack.append((left, level + 1))
    if cert.undecided and raise_on_undecided:
        raise Undecided(cert.undecided)
    return cert
