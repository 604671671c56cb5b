"""Integer polynomials, cyclotomic detection, and the logarithmic Mahler sum.

The quantity of interest is sum(log|z|) over the roots z of an integer
polynomial with |z| > 1.  Roots of unity and zero roots contribute nothing,
and both are detected symbolically: powers of t are stripped exactly and
every cyclotomic factor is removed by trial division before any floating
point enters.  Only the strictly expanding/contracting moduli of the
remaining factor are bounded numerically, by a simultaneous root iteration
whose output is certified with Weierstrass-correction disks evaluated in
exact rational arithmetic.

Polynomials are dense ascending coefficient lists; the zero polynomial is [].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

DEFAULT_TOL = 1e-9

_MAX_NEWTON_SWEEPS = 512


# ---------------------------------------------------------------------------
# dense polynomial arithmetic

def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_degree(p) -> int:
    return len(poly_trim(p)) - 1


def poly_mul(p, q):
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return [-a for a in p]


def poly_eval(p, x):
    acc = 0
    for a in reversed(poly_trim(p)):
        acc = acc * x + a
    return acc


def poly_derivative(p):
    return poly_trim([i * a for i, a in enumerate(p)][1:])


def poly_divmod(p, q):
    """Quotient and remainder over Q (exact)."""
    p = [Fraction(a) for a in poly_trim(p)]
    q = [Fraction(a) for a in poly_trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = p[:]
    while len(rem) >= len(q) and any(rem):
        shift = len(rem) - len(q)
        factor = rem[-1] / q[-1]
        quot[shift] = factor
        for i, b in enumerate(q):
            rem[shift + i] -= factor * b
        rem = poly_trim(rem)
        if not rem:
            break
    return poly_trim(quot), poly_trim(rem)


def poly_divides(q, p) -> bool:
    _, rem = poly_divmod(p, q)
    return not rem


def poly_exact_div(p, q):
    quot, rem = poly_divmod(p, q)
    if rem:
        raise DomainError("polynomial division is not exact")
    return _intify(quot)


def poly_gcd(p, q):
    """Monic gcd over Q."""
    a = [Fraction(x) for x in poly_trim(p)]
    b = [Fraction(x) for x in poly_trim(q)]
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def _intify(p):
    p = poly_trim(p)
    if all(Fraction(a).denominator == 1 for a in p):
        return [int(a) for a in p]
    return p


def poly_primitive_int(p):
    """Integer polynomial with the same roots: denominators cleared, content removed."""
    p = [Fraction(a) for a in poly_trim(p)]
    if not p:
        return []
    scale = math.lcm(*[a.denominator for a in p])
    ints = [int(a * scale) for a in p]
    content = 0
    for a in ints:
        content = math.gcd(content, abs(a))
    if ints[-1] < 0:
        content = -content
    return [a // content for a in ints]


def squarefree_decomposition(p):
    """Yun decomposition [(q_1, 1), (q_2, 2), ...] with p ~ prod q_i^i.

    Factors are primitive integer polynomials, pairwise coprime and
    squarefree; constant factors are dropped.
    """
    p = poly_trim(p)
    if poly_degree(p) < 1:
        return []
    d = poly_derivative(p)
    a = poly_gcd(p, d)
    b, _ = poly_divmod(p, a)
    c, _ = poly_divmod(d, a)
    out = []
    k = 1
    while poly_degree(b) > 0:
        step = poly_add(c, poly_neg(poly_derivative(b)))
        g = poly_gcd(b, step)
        if poly_degree(g) > 0:
            out.append((poly_primitive_int(g), k))
        b, _ = poly_divmod(b, g)
        c, _ = poly_divmod(step, g)
        k += 1
    return out


# ---------------------------------------------------------------------------
# cyclotomic detection

@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """m-th cyclotomic polynomial, ascending integer coefficients."""
    if m < 1:
        raise DomainError("cyclotomic index must be positive")
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]  # t^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = poly_divmod(poly, list(cyclotomic(d)))
            assert not rem
    return tuple(int(a) for a in poly)


def cyclotomic_factors(p) -> tuple[list[tuple[int, int]], list]:
    """All cyclotomic divisors of p with multiplicity, plus the cofactor.

    Returns ([(index, multiplicity), ...], rest) with
    p = prod Phi_index^multiplicity * rest exactly.  Candidate indices m are
    those with euler_phi(m) <= deg(p); phi(m) >= sqrt(m/2) makes
    m <= 2*deg(p)^2 + 1 a sufficient search bound.
    """
    p = poly_trim(p)
    if not p:
        raise DomainError("cyclotomic factors of the zero polynomial")
    rest = list(p)
    found = []
    deg = poly_degree(rest)
    for m in range(1, 2 * deg * deg + 2):
        if euler_phi(m) > deg:
            continue
        phi_m = list(cyclotomic(m))
        mult = 0
        while poly_degree(rest) >= poly_degree(phi_m) and poly_divides(phi_m, rest):
            rest = poly_exact_div(rest, phi_m)
            mult += 1
        if mult:
            found.append((m, mult))
            deg = poly_degree(rest)
    return found, _intify(rest)


def cyclotomic_part(p) -> tuple[list, list]:
    """Split p = cyclo * rest with cyclo the full cyclotomic content."""
    found, rest = cyclotomic_factors(p)
    cyclo = [1]
    for m, mult in found:
        for _ in range(mult):
            cyclo = poly_mul(cyclo, list(cyclotomic(m)))
    return cyclo, rest


# ---------------------------------------------------------------------------
# certified root moduli

def _exact_abs_upper(coeffs, z: complex) -> float:
    """Upper bound on |p(z)| with p evaluated in exact rational arithmetic.

    The float z is converted to an exact rational point, so the only slack is
    the final square root, inflated by one part in 1e12.
    """
    zr, zi = Fraction(z.real), Fraction(z.imag)
    re, im = Fraction(0), Fraction(0)
    for a in reversed(coeffs):
        re, im = re * zr - im * zi + a, re * zi + im * zr
    sq = re * re + im * im
    if sq == 0:
        return 0.0
    val = math.sqrt(float(sq)) if sq < Fraction(10) ** 600 else float("inf")
    return val * (1.0 + 1e-12)


def _weierstrass_radii(coeffs, zs: list[complex]) -> list[float]:
    """Certified per-root inclusion radii for approximations zs.

    For monic p of degree n and pairwise distinct z_k, every root lies in the
    union of disks D(z_k, n*|W_k|) with W_k = p(z_k)/prod_{j!=k}(z_k - z_j);
    when the disks are pairwise disjoint each contains exactly one root.
    The numerator is evaluated exactly, the denominator deflated for float
    rounding, and the radius inflated to keep the bound honest.
    """
    n = len(zs)
    lead = abs(coeffs[-1])
    radii = []
    for k, z in enumerate(zs):
        num = _exact_abs_upper(coeffs, z)
        den = lead
        for j, w in enumerate(zs):
            if j != k:
                den *= abs(z - w)
        if den == 0.0 or math.isinf(num):
            radii.append(float("inf"))
        else:
            radii.append(n * num / (den * (1.0 - 1e-10)) * (1.0 + 1e-9))
    return radii


_WIDEN = 2.0**-50  # relative endpoint widening covering float rounding


def _certified_moduli(coeffs) -> list[tuple[float, float]]:
    """Intervals [lo, hi] bounding root moduli of a squarefree integer poly.

    Endpoints are widened by a relative 2^-50 so that the rounding of the
    interval arithmetic itself stays inside the reported bounds.
    """
    coeffs = [int(a) for a in poly_trim(coeffs)]
    n = poly_degree(coeffs)
    if n == 0:
        return []
    if n == 1:
        m = float(Fraction(abs(coeffs[0]), abs(coeffs[1])))
        return [(m * (1.0 - _WIDEN), m * (1.0 + _WIDEN))]
    monic = [a / coeffs[-1] for a in coeffs]
    cauchy = 1.0 + max(abs(a) for a in monic[:-1])
    zs = [cauchy * cmath.exp(2j * math.pi * k / n + 0.4j) for k in range(n)]
    deriv = poly_derivative(monic)
    for sweep in range(_MAX_NEWTON_SWEEPS):
        # one Durand-Kerner sweep
        moved = 0.0
        for k in range(n):
            z = zs[k]
            den = 1.0 + 0.0j
            for j in range(n):
                if j != k:
                    den *= z - zs[j]
            if den == 0:
                zs[k] = z + (1e-6 + 1e-6j) * (k + 1)
                moved = float("inf")
                continue
            w = poly_eval(monic, z) / den
            zs[k] = z - w
            moved = max(moved, abs(w))
        if moved > 1e-13 and sweep < _MAX_NEWTON_SWEEPS - 1:
            continue
        radii = _weierstrass_radii(coeffs, zs)
        disjoint = all(
            abs(zs[i] - zs[j]) > radii[i] + radii[j]
            for i in range(n)
            for j in range(i + 1, n)
        )
        if disjoint and all(math.isfinite(r) for r in radii):
            return [
                (max((abs(z) - r) * (1.0 - _WIDEN), 0.0), (abs(z) + r) * (1.0 + _WIDEN))
                for z, r in zip(zs, radii)
            ]
    raise ArithmeticError("root certification failed to converge")


# ---------------------------------------------------------------------------
# the entropy certificate value

@dataclass(frozen=True)
class EntropyValue:
    """Entropy as a float paired with its exact polynomial certificate.

    `exact_zero` marks values decided symbolically (zero roots, roots of
    unity, or an empty polynomial remainder); such values are exactly 0.0
    with no error.  `exact_positive` records the symbolic positivity
    decision for monic certificates (None when the certificate is not monic
    and positivity was not decided symbolically).
    """

    value: float
    certificate: tuple
    expanding_count: int
    error_bound: float
    exact_zero: bool
    exact_positive: bool | None

    def __post_init__(self):
        if self.value < 0:
            raise DomainError("entropy value must be nonnegative")


def log_mahler(p, tol: float = DEFAULT_TOL) -> EntropyValue:
    """sum(log|z|) over roots z of p with |z| > 1, within absolute error tol.

    Zero roots and cyclotomic factors are removed exactly first; when nothing
    is left the value is exactly zero.  For a monic remainder positivity is
    also exact: a monic integer polynomial with nonzero constant term and all
    roots on the unit circle is a product of cyclotomics (Kronecker), so a
    nontrivial remainder forces an expanding root.
    """
    p = poly_trim(p)
    if not p:
        raise DomainError("log-Mahler sum of the zero polynomial")
    if any(Fraction(a).denominator != 1 for a in p):
        raise DomainError("log-Mahler sum needs integer coefficients")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    certificate = tuple(int(a) for a in p)

    work = list(certificate)
    while work and work[0] == 0:  # powers of t contribute log|0->inside| = 0
        work = work[1:]
    _, rest = cyclotomic_part(work)
    if poly_degree(rest) < 1:
        return EntropyValue(0.0, certificate, 0, 0.0, True, False)

    monic = abs(rest[-1]) == 1
    value = 0.0
    error = 0.0
    expanding = 0
    factors = squarefree_decomposition(rest)
    for q, mult in factors:
        for lo, hi in _certified_moduli(q):
            c_lo = math.log(lo) if lo > 1.0 else 0.0
            c_hi = math.log(hi) if hi > 1.0 else 0.0
            value += mult * (c_lo + c_hi) / 2.0
            error += mult * (c_hi - c_lo) / 2.0
            if lo > 1.0:
                expanding += mult
    if error > tol:
        raise ArithmeticError(
            f"certified error {error:.3e} exceeds the requested tolerance {tol:.3e}"
        )
    return EntropyValue(max(value, 0.0), certificate, expanding, error, False,
                        True if monic else None)
