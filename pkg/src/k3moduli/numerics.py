"""Arbitrary-precision evaluation of the modular j-function at CM points.

j is evaluated by its q-expansion j = 1/q + 744 + sum c_n q^n with
q = exp(2*pi*i*tau), truncated where the classical envelope c_n < exp(4*pi*sqrt(n))
certifies the tail below the accuracy target.  Integer series coefficients are
generated once from the Fourier development of E4^3 / Delta and cached
process-wide (concurrent readers, lock-guarded growth).
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from math import exp, log, pi, sqrt

from mpmath.ctx_mp import MPContext

from .errors import NotNearInteger, NotPositiveDefinite, PrecisionUnsupported

DEFAULT_SERIES_CAP = 10000
LN10 = log(10)
_GUARD_DIGITS = 15


@dataclass(frozen=True)
class CMPoint:
    """tau = (-b + sqrt(disc)) / (2a) in the upper half plane."""

    a: int
    b: int
    disc: int


@dataclass(frozen=True)
class BigComplex:
    """Complex value carried at >= digits decimal digits of working precision."""

    re: object
    im: object
    digits: int


def _context(dps: int) -> MPContext:
    # private context per call: evaluations stay independent across threads
    ctx = MPContext()
    ctx.dps = dps
    return ctx


def series_cap() -> int:
    value = os.environ.get("K3MODULI_SERIES_CAP")
    return int(value) if value else DEFAULT_SERIES_CAP


def _sigma3(m: int) -> list[int]:
    s = [0] * (m + 1)
    for d in range(1, m + 1):
        cube = d * d * d
        for k in range(d, m + 1, d):
            s[k] += cube
    return s


def _mul_trunc(u: list[int], v: list[int], m: int) -> list[int]:
    out = [0] * (m + 1)
    for i, ui in enumerate(u):
        if ui:
            top = min(len(v), m - i + 1)
            for k in range(top):
                out[i + k] += ui * v[k]
    return out


def _eta_like(m: int) -> list[int]:
    """Coefficients of prod(1 - q^n) via the pentagonal number theorem."""
    p = [0] * (m + 1)
    p[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= m:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        p[g1] += sign
        if g2 <= m:
            p[g2] += sign
        k += 1
    return p


def _j_coefficients(count: int) -> list[int]:
    """First `count` coefficients of j: entry k multiplies q^(k-1)."""
    m = max(count - 1, 1)
    sig = _sigma3(m)
    e4 = [1] + [240 * sig[n] for n in range(1, m + 1)]
    num = _mul_trunc(_mul_trunc(e4, e4, m), e4, m)
    p = _eta_like(m)
    p2 = _mul_trunc(p, p, m)
    p4 = _mul_trunc(p2, p2, m)
    p8 = _mul_trunc(p4, p4, m)
    p16 = _mul_trunc(p8, p8, m)
    dlt = _mul_trunc(p16, p8, m)  # Delta / q
    coeffs = [0] * (m + 1)
    for n in range(m + 1):
        acc = num[n]
        for k in range(1, n + 1):
            acc -= dlt[k] * coeffs[n - k]
        coeffs[n] = acc
    return coeffs[:count]


class _SeriesCache:
    """Grow-once-then-read cache of the j-expansion coefficients."""

    # known leading terms double as a self-check against regeneration
    _LEADING = [1, 744, 196884, 21493760, 864299970, 20245856256]

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._coeffs = list(self._LEADING)

    def prefix(self, count: int) -> list[int]:
        coeffs = self._coeffs
        if len(coeffs) >= count:
            return coeffs
        with self._lock:
            if len(self._coeffs) < count:
                fresh = _j_coefficients(max(count, 2 * len(self._coeffs)))
                assert fresh[: len(self._LEADING)] == self._LEADING
                self._coeffs = fresh
            return self._coeffs


_CACHE = _SeriesCache()


def _terms_needed(log_abs_q: float, digits: int) -> int:
    """Least N with sum_{n > N} exp(4*pi*sqrt(n)) |q|^n below 10^-(digits+5).

    Beyond index m the envelope terms shrink by at least
    exp(2*pi/sqrt(m)) * |q| per step, so the tail is majorized geometrically.
    """
    target = -(digits + 5) * LN10
    n = 1
    while True:
        m = n + 1
        ratio_log = 2 * pi / sqrt(m) + log_abs_q
        if ratio_log < -0.05:
            tail_log = 4 * pi * sqrt(m) + m * log_abs_q - log(1 - exp(ratio_log))
            if tail_log < target:
                return n
        n += 1


def j_invariant(point: CMPoint, digits: int) -> BigComplex:
    """j((-b + sqrt(disc)) / (2a)) to an absolute accuracy of 10^-digits."""
    if point.a <= 0 or point.disc >= 0:
        raise NotPositiveDefinite("CM point needs a > 0 and disc < 0")
    log_abs_q = -pi * sqrt(-point.disc) / point.a
    n_terms = _terms_needed(log_abs_q, digits)
    cap = series_cap()
    if n_terms + 2 > cap:
        raise PrecisionUnsupported(
            f"{n_terms} series terms needed, cap is {cap} (K3MODULI_SERIES_CAP)"
        )
    if log_abs_q <= -pi * sqrt(3) * 0.999:
        # reduced CM points: |q| <= exp(-pi*sqrt(3)), so N stays desk-scale
        assert n_terms <= (digits + 10) / 2.3 + 4 * sqrt(digits + 10) + 32
    coeffs = _CACHE.prefix(n_terms + 2)
    # the leading 1/q term has magnitude |q|^-1; cover it to keep the
    # accuracy absolute, not just relative
    magnitude = int(-log_abs_q / LN10) + 1
    ctx = _context(digits + magnitude + _GUARD_DIGITS)
    im_tau = ctx.sqrt(-point.disc) / (2 * point.a)
    re_tau = ctx.mpf(-point.b) / (2 * point.a)
    q = ctx.expjpi(2 * re_tau) * ctx.exp(-2 * ctx.pi * im_tau)
    acc = ctx.mpc(0)
    for k in range(n_terms, 0, -1):
        acc = acc * q + coeffs[k + 1]
    value = 1 / q + 744 + acc * q
    return BigComplex(value.real, value.imag, digits)


def recognize_integer(z: BigComplex, tol) -> int:
    """Nearest integer when both |Re z - round(Re z)| and |Im z| are below tol."""
    ctx = _context(z.digits + _GUARD_DIGITS)
    tol = ctx.mpf(tol)
    nearest = ctx.nint(ctx.mpf(z.re))
    if abs(z.re - nearest) < tol and abs(ctx.mpf(z.im)) < tol:
        return int(nearest)
    raise NotNearInteger(f"{z.re} + {z.im}i is not within {tol} of an integer")


def poly_from_roots(roots: list[BigComplex]) -> list[BigComplex]:
    """Coefficients of the monic prod (x - r), lowest degree first."""
    digits = max((r.digits for r in roots), default=15)
    probe = _context(digits)
    zs = [probe.mpc(r.re, r.im) for r in roots]
    # coefficient magnitudes reach the product of the large roots
    extra_bits = sum(max(0, int(probe.mag(z))) for z in zs if z)
    ctx = _context(digits + _GUARD_DIGITS + int(extra_bits * 0.30103) + len(roots))
    coeffs = [ctx.mpc(1)]
    for r in roots:
        z = ctx.mpc(r.re, r.im)
        nxt = [-z * coeffs[0]]
        for k in range(1, len(coeffs)):
            nxt.append(coeffs[k - 1] - z * coeffs[k])
        nxt.append(coeffs[-1])
        coeffs = nxt
    return [BigComplex(c.real, c.imag, digits) for c in coeffs]
