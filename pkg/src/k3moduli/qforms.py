"""Exact arithmetic of integral binary quadratic forms.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2.  Only positive definite
forms are handled (a > 0, b^2 - 4ac < 0).  Proper equivalence is equivalence
under SL2(Z) substitutions Q(p*x + q*y, r*x + s*y); every class is named by
its unique reduced representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BadDiscriminant, DiscriminantMismatch, NotPositiveDefinite, NotPrimitive

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


@dataclass(frozen=True)
class QuadForm:
    """Integral binary quadratic form with coefficients (a, b, c)."""

    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class FormClass:
    """Proper-equivalence class, named by its unique reduced representative."""

    rep: QuadForm
    disc: int

    def __repr__(self) -> str:
        return f"[{self.rep.a},{self.rep.b},{self.rep.c}]"


def discriminant(q: QuadForm) -> int:
    return q.b * q.b - 4 * q.a * q.c


def is_positive_definite(q: QuadForm) -> bool:
    return q.a > 0 and discriminant(q) < 0


def _require_positive_definite(q: QuadForm) -> None:
    if not is_positive_definite(q):
        raise NotPositiveDefinite(f"form {q} is not positive definite")


def check_discriminant(d: int) -> int:
    """Validate d < 0 and d = 0, 1 (mod 4); return d."""
    if d >= 0 or d % 4 not in (0, 1):
        raise BadDiscriminant(f"{d} is not a negative quadratic discriminant")
    return d


def is_reduced(q: QuadForm) -> bool:
    """|b| <= a <= c, with b >= 0 on either boundary."""
    a, b, c = q.a, q.b, q.c
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def transform(q: QuadForm, m: Matrix) -> QuadForm:
    """Apply the substitution Q(p*x + q*y, r*x + s*y) for m = ((p, q), (r, s))."""
    (p, u), (r, s) = m
    a2 = q(p, r)
    c2 = q(u, s)
    b2 = 2 * q.a * p * u + q.b * (p * s + u * r) + 2 * q.c * r * s
    return QuadForm(a2, b2, c2)


def reduce(q: QuadForm) -> tuple[FormClass, Matrix]:
    """Gauss-reduce q; return its class and the SL2(Z) matrix carrying q to the
    reduced representative (so transform(q, matrix) == class.rep)."""
    _require_positive_definite(q)
    a, b, c = q.a, q.b, q.c
    p, u, r, s = 1, 0, 0, 1
    while True:
        if not -a < b <= a:
            # translate: b -> b + 2ka lands in (-a, a]
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, (a * k + b) * k + c
            u, s = u + k * p, s + k * r
        if a > c or (a == c and b < 0):
            # swap generators: (a, b, c) -> (c, -b, a)
            a, b, c = c, -b, a
            p, u, r, s = u, -p, s, -r
        else:
            break
    rep = QuadForm(a, b, c)
    return FormClass(rep, discriminant(rep)), ((p, u), (r, s))


def form_class(a: int, b: int, c: int) -> FormClass:
    """Class of the form (a, b, c)."""
    return reduce(QuadForm(a, b, c))[0]


def is_primitive(q: QuadForm) -> bool:
    return gcd(q.a, q.b, q.c) == 1


def primitive_part(q: QuadForm) -> tuple[int, QuadForm]:
    """Split q = m * q0 with q0 primitive; returns (m, q0)."""
    _require_positive_definite(q)
    m = gcd(q.a, q.b, q.c)
    return m, QuadForm(q.a // m, q.b // m, q.c // m)


def principal_form(d: int) -> QuadForm:
    """Identity representative of C(d): (1, 0, -d/4) or (1, 1, (1-d)/4)."""
    check_discriminant(d)
    if d % 4 == 0:
        return QuadForm(1, 0, -d // 4)
    return QuadForm(1, 1, (1 - d) // 4)


def principal_class(d: int) -> FormClass:
    return reduce(principal_form(d))[0]


def inverse(cls: FormClass) -> FormClass:
    """Class of (a, -b, c); inverse for composition."""
    rep = cls.rep
    return reduce(QuadForm(rep.a, -rep.b, rep.c))[0]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with a*s + b*t = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 (mod m1), x = r2 (mod m2); needs gcd(m1,m2) | r2 - r1."""
    g, s, _ = _xgcd(m1, m2)
    diff = r2 - r1
    if diff % g:
        raise ValueError("incompatible congruences")
    lcm = m1 // g * m2
    return (r1 + diff // g * s % (m2 // g) * m1) % lcm


def _coprime_representative(q: QuadForm, n: int) -> QuadForm:
    """Properly equivalent form whose leading coefficient is coprime to n.

    Searches represented values q(x, y) with gcd(x, y) = 1 over |x|, |y| <= bound,
    doubling the bound until a hit; a primitive form always represents integers
    coprime to any fixed modulus, so this terminates.
    """
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if gcd(x, y) != 1:
                    continue
                v = q(x, y)
                if v != 0 and gcd(v, n) == 1:
                    # complete the column (x, y) to an SL2(Z) matrix
                    _, s, t = _xgcd(x, y)
                    return transform(q, ((x, -t), (y, s)))
        bound *= 2


def compose(x: FormClass, y: FormClass) -> FormClass:
    """Reduced Dirichlet composition of two primitive classes of one discriminant.

    Uses the congruence system B = b (mod 2a), B = b' (mod 2a'), B^2 = D
    (mod 4aa'), unique modulo 2aa'.  When the leading coefficients are not
    coprime, y is first replaced by an equivalent form whose leading
    coefficient is coprime to 2*a*D; the two linear congruences then determine
    B and the quadratic one holds automatically.
    """
    if x.disc != y.disc:
        raise DiscriminantMismatch(f"discriminants {x.disc} and {y.disc} differ")
    if not (is_primitive(x.rep) and is_primitive(y.rep)):
        raise NotPrimitive("composition needs primitive classes")
    d = x.disc
    f1, f2 = x.rep, y.rep
    if gcd(f1.a, f2.a) != 1:
        f2 = _coprime_representative(f2, 2 * f1.a * d)
    a1, b1 = f1.a, f1.b
    a2, b2 = f2.a, f2.b
    bb = _crt(b1, 2 * a1, b2, 2 * a2)
    aa = a1 * a2
    cc = (bb * bb - d) // (4 * aa)
    return reduce(QuadForm(aa, bb, cc))[0]


def power(x: FormClass, n: int) -> FormClass:
    """n-th composition power (n may be negative)."""
    if n < 0:
        return power(inverse(x), -n)
    acc = principal_class(x.disc)
    base = x
    while n:
        if n & 1:
            acc = compose(acc, base)
        base = compose(base, base)
        n >>= 1
    return acc
