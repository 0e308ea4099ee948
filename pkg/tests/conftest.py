import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ifsproduct.ifs import validate_params  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


def fractions_in(lo, hi, max_den=200):
    """Rationals in the closed range ``[lo, hi]`` with denominators up to ``max_den``."""
    lo, hi = Fraction(lo), Fraction(hi)

    @st.composite
    def draw(draw_):
        q = draw_(st.integers(1, max_den))
        k_lo = -(-lo.numerator * q // lo.denominator)
        k_hi = hi.numerator * q // hi.denominator
        if k_lo > k_hi:
            q = lo.denominator * hi.denominator
            k_lo = lo.numerator * hi.denominator
            k_hi = hi.numerator * lo.denominator
        return Fraction(draw_(st.integers(k_lo, k_hi)), q)

    return draw()


@st.composite
def valid_params(draw, max_den=60, lam_lo=Fraction(1, 20), lam_hi=Fraction(1, 2)):
    lam = draw(fractions_in(lam_lo, lam_hi, max_den).filter(lambda x: 0 < x < Fraction(1, 2)))
    c = draw(fractions_in(lam, min(2 * lam, 1 - lam), max_den).filter(lambda x: x < 1 - lam))
    p = validate_params(lam, c)
    assert p.valid
    return p


@st.composite
def purple_params(draw, max_den=400):
    """Valid parameters with ``(1 - lam)**2 <= c``."""
    lam = draw(fractions_in(Fraction(267, 1000), Fraction(1, 2), max_den).filter(lambda x: x * x - 4 * x + 1 <= 0 and x < Fraction(1, 2)))
    lo = max(lam, (1 - lam) ** 2)
    c = draw(fractions_in(lo, min(2 * lam, 1 - lam), max_den).filter(lambda x: x < 1 - lam))
    return validate_params(lam, c)


_ACCEPTANCE: list[tuple[str, str, float]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None and (rep.when == "call" or rep.failed):
        _ACCEPTANCE.append((mark.args[0], "PASS" if rep.passed else "FAIL", rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, verdict, secs in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name} ({secs:.1f}s)")
