import dataclasses
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import fractions_in, purple_params
from oracles import word_bounds
from ifsproduct.decompose import DecompositionCertificate, decompose, verify_certificate
from ifsproduct.errors import InvalidParams, NotInPurpleRegion
from ifsproduct.ifs import cover_contains, validate_params

P = validate_params(F(1, 3), F(4, 9))


def test_zero_and_one_are_exact():
    one = decompose(P, F(1), 7)
    assert one.word_x == one.word_y == (3,) * 7
    assert one.x == one.y == 1 and one.error_bound == 0
    zero = decompose(P, F(0), 7)
    assert zero.word_x == zero.word_y == (1,) * 7
    assert zero.x == zero.y == 0 and zero.error_bound == 0
    assert verify_certificate(P, F(1), one) and verify_certificate(P, F(0), zero)


def test_half_at_depth_ten():
    cert = decompose(P, F(1, 2), 10)
    assert cert.error_bound <= 3 * F(1, 3) ** 10
    lo1, hi1 = cert.enclosing_rect[0].lo, cert.enclosing_rect[0].hi
    lo2, hi2 = cert.enclosing_rect[1].lo, cert.enclosing_rect[1].hi
    assert lo1 * lo2 <= F(1, 2) <= hi1 * hi2
    assert abs(cert.x * cert.y - F(1, 2)) <= cert.error_bound
    assert verify_certificate(P, F(1, 2), cert)


def test_rect_matches_words():
    cert = decompose(P, F(3, 10), 8)
    assert (cert.enclosing_rect[0].lo, cert.enclosing_rect[0].hi) == word_bounds(P.lam, P.c, cert.word_x)
    assert (cert.enclosing_rect[1].lo, cert.enclosing_rect[1].hi) == word_bounds(P.lam, P.c, cert.word_y)
    assert cert.word_x[: cert.scaling_power] == (1,) * cert.scaling_power


def test_small_u_uses_scaling():
    cert = decompose(P, F(1, 1000), 6)
    assert cert.scaling_power >= 1
    assert cert.error_bound <= 3 * P.lam ** (cert.scaling_power + 6)
    assert verify_certificate(P, F(1, 1000), cert)


def test_tampered_word_rejected():
    cert = decompose(P, F(1, 2), 10)
    last = cert.word_y[-1]
    flipped = cert.word_y[:-1] + ((last % 3) + 1,)
    assert not verify_certificate(P, F(1, 2), dataclasses.replace(cert, word_y=flipped))


def test_lowered_bound_rejected():
    u = F(1, 2)
    cert = decompose(P, u, 10)
    err = abs(cert.x * cert.y - u)
    assert err > 0
    assert not verify_certificate(P, u, dataclasses.replace(cert, error_bound=err / 2))


def test_wrong_u_rejected():
    cert = decompose(P, F(1, 2), 10)
    assert not verify_certificate(P, F(1, 3), cert)


def test_bad_symbols_rejected():
    cert = decompose(P, F(1, 2), 4)
    assert not verify_certificate(P, F(1, 2), dataclasses.replace(cert, word_x=(4,) + cert.word_x[1:]))


def test_preconditions():
    with pytest.raises(NotInPurpleRegion):
        decompose(validate_params(F(1, 3), F(2, 5)), F(1, 2), 5)
    with pytest.raises(InvalidParams):
        decompose(validate_params(F(1, 3), F(1, 4)), F(1, 2), 5)
    with pytest.raises(ValueError):
        decompose(P, F(3, 2), 5)
    with pytest.raises(ValueError):
        decompose(P, F(1, 2), 0)


def test_deterministic():
    assert decompose(P, F(5, 17), 9) == decompose(P, F(5, 17), 9)


def test_json_round_trip():
    u = F(5, 17)
    cert = decompose(P, u, 9)
    lam, c, u2, back = DecompositionCertificate.from_json(cert.to_json(P, u))
    assert (lam, c, u2) == (P.lam, P.c, u)
    assert back == cert


def test_error_shrinks_with_depth():
    u = F(2, 7)
    bounds = [decompose(P, u, k).error_bound for k in range(1, 10)]
    for k, b in enumerate(bounds, start=1):
        assert b <= 3 * P.lam ** k
    assert bounds[-1] < bounds[0]


def test_members_of_deep_covers():
    cert = decompose(P, F(4, 11), 12)
    depth = len(cert.word_x)
    assert all(cover_contains(P, cert.x, depth))
    assert all(cover_contains(P, cert.y, len(cert.word_y)))


@settings(max_examples=60)
@given(purple_params(max_den=200), fractions_in(0, 1, 10**5))
def test_random_purple_decompositions(p, u):
    cert = decompose(p, u, 8)
    assert verify_certificate(p, u, cert)
    assert cert.error_bound <= 3 * p.lam ** (cert.scaling_power + 8)


def test_stress_twenty_parameters():
    rng = random.Random(8)
    from ifsproduct.regions import sample_purple

    for _ in range(20):
        p = sample_purple(rng, den=1000)
        for _ in range(500):
            u = F(rng.randint(0, 10**6), 10**6)
            assert verify_certificate(p, u, decompose(p, u, 6))
