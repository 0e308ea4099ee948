"""Parameter-square sweeps: CSV tables and SVG region maps."""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .ifs import validate_params
from .numerics import Interval, as_rational, format_rational
from .regions import RegionLabel, classify_pair, verify_theorem

COLORS = {
    RegionLabel.BROWN: "#8b5a2b",
    RegionLabel.GRAY: "#9e9e9e",
    RegionLabel.ORANGE: "#ff9800",
    RegionLabel.BLUE: "#2f6fdf",
    RegionLabel.NECESSARY_FAILS: "#f4f0f7",
    RegionLabel.INVALID: "#ffffff",
}


@dataclass(frozen=True)
class ScanConfig:
    grid_step: Fraction = Fraction(1, 10)
    lambda_range: Interval = field(default_factory=lambda: Interval(Fraction(0), Fraction(1)))
    c_range: Interval = field(default_factory=lambda: Interval(Fraction(0), Fraction(1)))
    depth_audit: int = 0
    output_format: str = "csv"

    def __post_init__(self):
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")
        for r in (self.lambda_range, self.c_range):
            if r.lo < 0 or r.hi > 1:
                raise ValueError(f"range {r} leaves [0, 1]")
        if self.output_format not in ("csv", "svg"):
            raise ValueError("output_format is csv or svg")
        if self.depth_audit < 0:
            raise ValueError("depth_audit must be >= 0")


def _parse_range(text: str) -> Interval:
    lo, hi = (as_rational(x.strip()) for x in text.split(","))
    return Interval(lo, hi)


def load_config(path: str | Path) -> ScanConfig:
    """Read ``key=value`` lines; ``#`` starts a comment. Ranges are ``lo,hi``."""
    kwargs = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "grid_step":
            kwargs[key] = as_rational(value)
        elif key in ("lambda_range", "c_range"):
            kwargs[key] = _parse_range(value)
        elif key == "depth_audit":
            kwargs[key] = int(value)
        elif key == "output_format":
            kwargs[key] = value
        else:
            raise ValueError(f"unknown config key {key!r}")
    return ScanConfig(**kwargs)


def axis_points(r: Interval, step: Fraction) -> list[Fraction]:
    """``r.lo + k*step`` strictly inside ``r``."""
    out = []
    x = r.lo + step
    while x < r.hi:
        out.append(x)
        x += step
    return out


def _cell(args) -> str:
    lam, c, depth_audit = args
    label = classify_pair(lam, c)
    if depth_audit and label.colored:
        verdict = verify_theorem(validate_params(lam, c), n_check=depth_audit)
        if not verdict.covered:
            raise AssertionError(f"colored cell ({lam}, {c}) not covered")
    return label.value


def scan(cfg: ScanConfig, workers: int = 1) -> list[tuple[Fraction, Fraction, RegionLabel]]:
    """Label every grid point, rows by ``lambda`` then ``c``."""
    lams = axis_points(cfg.lambda_range, cfg.grid_step)
    cs = axis_points(cfg.c_range, cfg.grid_step)
    jobs = [(lam, c, cfg.depth_audit) for lam in lams for c in cs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            labels = list(pool.map(_cell, jobs, chunksize=256))
    else:
        labels = [_cell(j) for j in jobs]
    return [(lam, c, RegionLabel(lab)) for (lam, c, _), lab in zip(jobs, labels)]


def to_csv(rows) -> str:
    lines = ["lambda,c,label"]
    lines += [f"{format_rational(lam)},{format_rational(c)},{label.value}" for lam, c, label in rows]
    return "\n".join(lines) + "\n"


def to_svg(rows, cfg: ScanConfig, size: int = 600) -> str:
    """One rect per cell, ``lambda`` to the right and ``c`` upward."""
    lr, cr = cfg.lambda_range, cfg.c_range
    sx = Fraction(size) / lr.width
    sy = Fraction(size) / cr.width
    half = cfg.grid_step / 2

    def num(v: Fraction) -> str:
        return f"{float(v):.4f}".rstrip("0").rstrip(".")

    w, h = num(cfg.grid_step * sx), num(cfg.grid_step * sy)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" shape-rendering="crispEdges">',
        f'<rect width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for lam, c, label in rows:
        x = (lam - half - lr.lo) * sx
        y = (cr.hi - c - half) * sy
        out.append(f'<rect x="{num(x)}" y="{num(y)}" width="{w}" height="{h}" fill="{COLORS[label]}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(cfg: ScanConfig, workers: int = 1) -> str:
    rows = scan(cfg, workers)
    return to_csv(rows) if cfg.output_format == "csv" else to_svg(rows, cfg)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
