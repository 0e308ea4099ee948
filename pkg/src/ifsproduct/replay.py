"""Stand-alone checker for blue-lemma box certificates.

Shares no code with the prover: constraint coefficients are written out by
hand, boxes are re-split from the root, and every leaf verdict is re-derived.
Only :mod:`fractions` and :mod:`json` are used.
"""

from __future__ import annotations

import json
from fractions import Fraction

# lam**i * c**j -> coefficient, expanded by hand
_TABLES = {
    "lam>=2-sqrt3": {(2, 0): -1, (1, 0): 4, (0, 0): -1},
    "lam<=(3-sqrt5)/2": {(2, 0): 1, (1, 0): -3, (0, 0): 1},
    "c>=(1-lam)^2": {(0, 1): 1, (0, 0): -1, (1, 0): 2, (2, 0): -1},
    "c<=2lam": {(1, 0): 2, (0, 1): -1},
    "(c-lam^2)(1-lam)>=c^2": {(0, 1): 1, (1, 1): -1, (2, 0): -1, (3, 0): 1, (0, 2): -1},
    "c>=lam^2+lam/(1-lam)": {(0, 1): 1, (1, 1): -1, (2, 0): -1, (3, 0): 1, (1, 0): -1},
}

# (1 + lam) * table3 + 1 * table6 should expand to 2c - 1
_COMBINATION = (({(0, 0): 1, (1, 0): 1}, "c>=(1-lam)^2"), ({(0, 0): 1}, "c>=lam^2+lam/(1-lam)"))
_TARGET = {(0, 1): 2, (0, 0): -1}


def _max_on_box(table, lam_lo, lam_hi, c_lo, c_hi):
    """Max of a polynomial over a box with non-negative corners, bounded termwise."""
    if min(lam_lo, c_lo) < 0:
        raise ValueError("box leaves the non-negative quadrant")
    bound = Fraction(0)
    for (i, j), coeff in table.items():
        corner = (lam_hi**i * c_hi**j) if coeff > 0 else (lam_lo**i * c_lo**j)
        bound += coeff * corner
    return bound


def _min_on_box(table, lam_lo, lam_hi, c_lo, c_hi):
    return -_max_on_box({k: -v for k, v in table.items()}, lam_lo, lam_hi, c_lo, c_hi)


def _multiply(p, q):
    out = {}
    for (a, b), u in p.items():
        for (e, f), v in q.items():
            out[(a + e, b + f)] = out.get((a + e, b + f), 0) + u * v
    return out


def _combination_is_identity() -> bool:
    total = {}
    for mult, name in _COMBINATION:
        for k, v in _multiply(mult, _TABLES[name]).items():
            total[k] = total.get(k, 0) + v
    for k, v in _TARGET.items():
        total[k] = total.get(k, 0) - v
    return all(v == 0 for v in total.values())


def _check_leaf(box, verdict) -> str | None:
    lam_lo, lam_hi, c_lo, c_hi = box
    if verdict.startswith("excluded:"):
        table = _TABLES.get(verdict[len("excluded:"):])
        if table is None:
            return f"unknown constraint in {verdict!r}"
        if _max_on_box(table, *box) < 0:
            return None
        return f"{verdict} not confirmed on {box}"
    if verdict == "c>=1/2":
        return None if c_lo >= Fraction(1, 2) else f"c_lo < 1/2 on {box}"
    if verdict == "c>=1/2:combined":
        if not _combination_is_identity():
            return "combination is not an identity"
        if all(_min_on_box(mult, *box) >= 0 for mult, _ in _COMBINATION):
            return None
        return f"negative multiplier on {box}"
    return f"unknown verdict {verdict!r}"


def _check_root(root) -> str | None:
    lam_lo, lam_hi, c_lo, c_hi = root
    if not (0 < lam_lo < 1 and 0 < lam_hi < 1):
        return "root lambda range outside (0, 1)"
    # lam_lo <= 2 - sqrt 3 and lam_hi >= (3 - sqrt 5)/2, by quadratic signs
    if lam_lo * lam_lo - 4 * lam_lo + 1 < 0:
        return "root lambda_lo above 2 - sqrt(3)"
    if lam_hi * lam_hi - 3 * lam_hi + 1 > 0:
        return "root lambda_hi below (3 - sqrt(5))/2"
    # feasible c satisfy (1-lam)^2 <= c <= 2 lam, inside [0, 1]
    if c_lo > 0 or c_hi < 1:
        return "root c range does not contain [0, 1]"
    return None


def _inside(inner, outer) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1] and outer[2] <= inner[2] and inner[3] <= outer[3]


def replay_certificate(data) -> tuple[bool, list[str]]:
    """Validate a certificate (JSON text or parsed dict); returns ``(ok, problems)``."""
    if isinstance(data, str):
        data = json.loads(data)
    problems: list[str] = []
    if data.get("undecided"):
        problems.append(f"{len(data['undecided'])} undecided boxes")
    root = tuple(Fraction(x) for x in data["root"])
    err = _check_root(root)
    if err:
        problems.append(err)
    leaves = {}
    for leaf in data["leaves"]:
        key = tuple(Fraction(x) for x in leaf["box"])
        if key in leaves:
            problems.append(f"duplicate leaf {key}")
        leaves[key] = leaf["verdict"]
    max_depth = int(data["depth"])

    used = 0
    stack = [(root, 0)]
    while stack:
        box, level = stack.pop()
        if box in leaves:
            used += 1
            err = _check_leaf(box, leaves[box])
            if err:
                problems.append(err)
            continue
        if level >= max_depth or not any(_inside(leaf, box) for leaf in leaves):
            problems.append(f"box {box} is not covered by any leaf")
            continue
        lam_lo, lam_hi, c_lo, c_hi = box
        if c_hi - c_lo > lam_hi - lam_lo:
            mid = (c_lo + c_hi) / 2
            stack += [((lam_lo, lam_hi, mid, c_hi), level + 1), ((lam_lo, lam_hi, c_lo, mid), level + 1)]
        else:
            mid = (lam_lo + lam_hi) / 2
            stack += [((mid, lam_hi, c_lo, c_hi), level + 1), ((lam_lo, mid, c_lo, c_hi), level + 1)]
    if used != len(leaves):
        problems.append(f"{len(leaves) - used} leaves are not part of the subdivision")
    return not problems, problems
