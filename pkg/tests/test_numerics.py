import threading
from math import pi, sqrt

import pytest
from mpmath.ctx_mp import MPContext

from k3moduli import numerics
from k3moduli.classgroup import class_group
from k3moduli.errors import NotNearInteger, NotPositiveDefinite, PrecisionUnsupported
from k3moduli.numerics import (
    BigComplex,
    CMPoint,
    j_invariant,
    poly_from_roots,
    recognize_integer,
)


def as_mpc(ctx, z):
    return ctx.mpc(z.re, z.im)


def test_j_at_i_is_1728():
    value = j_invariant(CMPoint(1, 0, -4), 50)
    assert recognize_integer(value, "1e-45") == 1728


def test_j_at_rho_is_0():
    value = j_invariant(CMPoint(1, -1, -3), 50)
    assert recognize_integer(value, "1e-45") == 0


def test_j_at_2i_is_66_cubed():
    # independent classical value, re-checked at two precisions
    for digits in (40, 80):
        value = j_invariant(CMPoint(1, 0, -16), digits)
        assert recognize_integer(value, f"1e-{digits - 5}") == 287496


def test_j_periodic_under_translation():
    ctx = MPContext()
    ctx.dps = 70
    a, b, d = 2, 1, -23
    j1 = as_mpc(ctx, j_invariant(CMPoint(a, b, d), 60))
    j2 = as_mpc(ctx, j_invariant(CMPoint(a, b - 2 * a, d), 60))
    assert abs(j1 - j2) < ctx.mpf(10) ** -55


def test_j_s_invariance():
    # |j(tau) - j(-1/tau)| small on sampled CM points
    ctx = MPContext()
    ctx.dps = 70
    digits = 60
    for a, b, d in [(1, 1, -23), (2, 1, -23), (3, 2, -56), (1, 0, -4), (2, 0, -56)]:
        c = (b * b - d) // (4 * a)
        j1 = as_mpc(ctx, j_invariant(CMPoint(a, b, d), digits))
        j2 = as_mpc(ctx, j_invariant(CMPoint(c, -b, d), digits))
        assert abs(j1 - j2) < ctx.mpf(10) ** (-digits + 5) * (1 + abs(j1))


def test_j_rejects_lower_half_plane():
    with pytest.raises(NotPositiveDefinite):
        j_invariant(CMPoint(-1, 0, -4), 30)
    with pytest.raises(NotPositiveDefinite):
        j_invariant(CMPoint(1, 0, 4), 30)


def test_recognize_integer_examples():
    ctx = MPContext()
    ctx.dps = 60
    near = BigComplex(ctx.mpf("1727.9999999999999999999999") , ctx.mpf("1e-50"), 40)
    assert recognize_integer(near, "1e-20") == 1728
    half = BigComplex(ctx.mpf("0.5"), ctx.mpf(0), 40)
    with pytest.raises(NotNearInteger):
        recognize_integer(half, "1e-20")
    imag = BigComplex(ctx.mpf(3), ctx.mpf("0.25"), 40)
    with pytest.raises(NotNearInteger):
        recognize_integer(imag, "1e-20")


def test_trace_of_minus_23_roots_is_integer():
    group = class_group(-23)
    for digits in (60, 120):
        ctx = MPContext()
        ctx.dps = digits + 10
        js = [
            as_mpc(ctx, j_invariant(CMPoint(c.rep.a, c.rep.b, -23), digits))
            for c in group.classes
        ]
        total = sum(js, ctx.mpc(0))
        trace = recognize_integer(BigComplex(total.real, total.imag, digits), "1e-20")
        assert trace == -3491750  # frozen from the doubled-precision run


def test_poly_from_roots_single():
    ctx = MPContext()
    ctx.dps = 30
    coeffs = poly_from_roots([BigComplex(ctx.mpf(1728), ctx.mpf(0), 25)])
    assert [recognize_integer(c, "1e-10") for c in coeffs] == [-1728, 1]


def test_poly_from_roots_conjugate_pair_real():
    ctx = MPContext()
    ctx.dps = 40
    r = BigComplex(ctx.mpf("2.5"), ctx.mpf("3.25"), 30)
    rbar = BigComplex(ctx.mpf("2.5"), ctx.mpf("-3.25"), 30)
    coeffs = poly_from_roots([r, rbar])
    for c in coeffs:
        assert abs(ctx.mpf(c.im)) < ctx.mpf(10) ** -25


def test_class_cubic_stable_across_precision():
    group = class_group(-23)
    results = []
    for digits in (60, 120):
        js = [j_invariant(CMPoint(c.rep.a, c.rep.b, -23), digits) for c in group.classes]
        coeffs = poly_from_roots(js)
        results.append([recognize_integer(c, "1e-12") for c in coeffs])
    assert results[0] == results[1]
    assert results[0][-1] == 1


def test_terms_needed_respects_cap_bound():
    # reduced points have |q| <= exp(-pi*sqrt(3))
    log_q = -pi * sqrt(3)
    for digits in (15, 40, 100, 500, 2000, 10000):
        n = numerics._terms_needed(log_q, digits)
        assert n <= (digits + 10) / 2.3 + 4 * sqrt(digits + 10) + 32


def test_tail_bound_is_sound():
    # truncating one term earlier changes j by less than the certified target
    point = CMPoint(1, 1, -23)
    digits = 45
    full = j_invariant(point, digits)
    ctx = MPContext()
    ctx.dps = 80
    tighter = j_invariant(point, digits + 20)
    assert abs(as_mpc(ctx, full) - as_mpc(ctx, tighter)) < ctx.mpf(10) ** -digits


def test_series_cap_env(monkeypatch):
    monkeypatch.setenv("K3MODULI_SERIES_CAP", "3")
    with pytest.raises(PrecisionUnsupported):
        j_invariant(CMPoint(1, 0, -4), 50)
    monkeypatch.setenv("K3MODULI_SERIES_CAP", "100000")
    assert numerics.series_cap() == 100000


def test_coefficient_cache_matches_known_leading_terms():
    coeffs = numerics._j_coefficients(8)
    assert coeffs[:6] == [1, 744, 196884, 21493760, 864299970, 20245856256]
    assert coeffs[6] == 333202640600
    assert coeffs[7] == 4252023300096


def test_cache_concurrent_reads():
    fresh = numerics._SeriesCache()
    results = []

    def worker():
        results.append(fresh.prefix(40)[:40])

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
    assert results[0] == numerics._j_coefficients(40)


def test_parallel_j_matches_serial():
    point = CMPoint(2, 1, -23)
    expected = j_invariant(point, 80)
    out = [None] * 6

    def worker(i):
        out[i] = j_invariant(point, 80)

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for got in out:
        assert got.re == expected.re and got.im == expected.im
