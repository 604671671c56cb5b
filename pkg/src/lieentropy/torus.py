"""Exact dynamics of torus endomorphisms given by integer matrices.

A torus endomorphism is the action of an integer matrix on R^n/Z^n through
its lattice of periods.  Entropy is the log-Mahler sum of the characteristic
polynomial; finite order, ergodicity, and the Li-Yorke dichotomy are decided
symbolically through cyclotomic factors, never by float comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, DomainError, ValidationError
from .exactlinalg import (
    Lattice,
    char_poly,
    det,
    mat_pow,
    min_poly,
    solve,
    transpose,
)
from .mahler import (
    DEFAULT_TOL,
    EntropyValue,
    cyclotomic_factors,
    log_mahler,
    poly_degree,
    poly_gcd,
    poly_trim,
)


@dataclass(frozen=True)
class TorusEndo:
    """Integer matrix acting on the lattice Z^n of a torus R^n/Z^n."""

    dim: int
    matrix: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows) -> "TorusEndo":
        rows = [list(r) for r in rows]
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimensionError("torus endomorphism matrix must be square")
            for x in r:
                if Fraction(x).denominator != 1:
                    raise ValidationError("torus endomorphism matrix must be integral")
        return TorusEndo(n, tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def determinant(self) -> int:
        return int(det([list(r) for r in self.matrix])) if self.dim else 1

    @property
    def is_surjective(self) -> bool:
        return self.determinant != 0

    @property
    def is_automorphism(self) -> bool:
        return abs(self.determinant) == 1

    def power(self, k: int) -> "TorusEndo":
        rows = mat_pow([list(r) for r in self.matrix], k)
        return TorusEndo.from_rows(rows)

    def char_poly(self) -> list[int]:
        return [int(c) for c in char_poly([list(r) for r in self.matrix])]


def entropy(endo: TorusEndo, tol: float = DEFAULT_TOL) -> EntropyValue:
    """Entropy as the log-Mahler sum over the expanding eigenvalues."""
    return log_mahler(endo.char_poly(), tol)


def entropy_is_positive(endo: TorusEndo) -> bool:
    """Exact positivity: after removing powers of t and cyclotomic factors
    from the (monic) characteristic polynomial, any nonconstant remainder
    carries a root off the unit circle (Kronecker), hence positive entropy.
    """
    coeffs = endo.char_poly()
    work = poly_trim(coeffs)
    while work and work[0] == 0:
        work = work[1:]
    _, rest = cyclotomic_factors(work)
    return poly_degree(rest) >= 1


def finite_order(endo: TorusEndo) -> int | None:
    """Least k with matrix^k = I, or None when no power is the identity.

    Finite order holds iff the minimal polynomial is squarefree and a
    product of cyclotomics; the order is then the lcm of the cyclotomic
    indices, verified by an exact matrix power.
    """
    if endo.dim == 0:
        return 1
    mat = [list(r) for r in endo.matrix]
    mp = min_poly(mat)
    deriv = [i * c for i, c in enumerate(mp)][1:]
    if poly_degree(poly_gcd(mp, deriv)) > 0:
        return None
    indices, rest = cyclotomic_factors(mp)
    if poly_degree(rest) >= 1:
        return None
    order = math.lcm(*[m for m, _ in indices]) if indices else 1
    powered = mat_pow(mat, order)
    identity_ok = all(
        powered[i][j] == (1 if i == j else 0)
        for i in range(endo.dim)
        for j in range(endo.dim)
    )
    if not identity_ok:
        raise ArithmeticError("cyclotomic order bound failed exact verification")
    return order


def is_ergodic(endo: TorusEndo) -> bool:
    """True iff no eigenvalue is a root of unity (requires surjectivity)."""
    if not endo.is_surjective:
        raise DomainError("ergodicity requires a surjective torus endomorphism")
    indices, _ = cyclotomic_factors(endo.char_poly())
    return not indices


LI_YORKE_ALL_POWERS = "li_yorke_all_powers"
SOME_POWER_LI_YORKE_FREE = "some_power_li_yorke_free"


@dataclass(frozen=True)
class TorusLiYorkeVerdict:
    verdict: str
    entropy_positive: bool
    certificate: tuple[int, ...]


def li_yorke_verdict(endo: TorusEndo) -> TorusLiYorkeVerdict:
    """Dichotomy for surjective torus endomorphisms: positive entropy means
    every power admits a Li-Yorke pair, zero entropy means some power has
    none.  Decided exactly through entropy_is_positive.
    """
    if not endo.is_surjective:
        raise DomainError("the Li-Yorke dichotomy assumes a surjective endomorphism")
    positive = entropy_is_positive(endo)
    verdict = LI_YORKE_ALL_POWERS if positive else SOME_POWER_LI_YORKE_FREE
    return TorusLiYorkeVerdict(verdict, positive, tuple(endo.char_poly()))


def restrict_to_sublattice(endo: TorusEndo, sub: Lattice) -> TorusEndo:
    """Action matrix in the basis of an invariant sublattice.

    The image of each basis vector must be an integer combination of the
    basis, otherwise the sublattice is not invariant and the restriction is
    undefined.
    """
    if sub.ambient_dim != endo.dim:
        raise DimensionError("sublattice has wrong ambient dimension")
    return restrict_matrix_to_lattice([list(r) for r in endo.matrix], sub)


def restrict_matrix_to_lattice(matrix, sub: Lattice) -> TorusEndo:
    """Restriction of a rational matrix to a rational lattice it preserves."""
    if sub.is_empty():
        return TorusEndo(0, tuple())
    columns = []
    basis_cols = transpose([list(v) for v in sub.basis])
    for g in sub.basis:
        image = [
            sum((Fraction(matrix[i][j]) * g[j] for j in range(sub.ambient_dim)), Fraction(0))
            for i in range(sub.ambient_dim)
        ]
        coords = solve(basis_cols, image)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise ValidationError("sublattice not invariant under the endomorphism")
        columns.append([int(c) for c in coords])
    rows = [[columns[j][i] for j in range(sub.rank)] for i in range(sub.rank)]
    return TorusEndo.from_rows(rows)
