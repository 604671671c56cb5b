"""The main analysis pipeline for presented Lie groups.

A connected Lie group enters as G = G~/Gamma~: exact structure constants for
the Lie algebra of the simply connected cover, plus log-coordinates W_i of
central lattice generators, with the convention that Gamma~ is free abelian
on exp(2*pi*W_i).  Centrality of the generators is certified rather than
decided: the W_i must commute, and each ad(W_i) must be semisimple with
spectrum in iZ (minimal polynomial dividing t * prod(t^2 + m^2)), which
places them in a compactly embedded abelian subalgebra and hence their
exponentials in the center of the cover.  Presentations without such a
certificate are rejected even if mathematically central.

The entropy of an endomorphism is computed by restricting its derivative to
the maximal central torus of the eventual image:

    eventual image  ->  lattice inside it  ->  center of the image
    ->  central sublattice  ->  integer action  ->  log-Mahler sum

Every stage is exact; a stage that cannot complete aborts with its name
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    DimensionError,
    InvariantViolationError,
    PipelineError,
    TheoremViolationError,
    ValidationError,
)
from .exactlinalg import (
    Lattice,
    Subspace,
    char_poly,
    det,
    lattice_intersect_subspace,
    mat_pow,
    mat_vec,
    min_poly,
    rank,
    solve,
    to_fraction_matrix,
    to_fraction_vector,
    transpose,
)
from .liealgebra import (
    LieAlgebra,
    center,
    centralizer_in,
    is_solvable,
    nilradical,
    quotient_algebra,
    validate_algebra,
)
from .mahler import (
    DEFAULT_TOL,
    EntropyValue,
    log_mahler,
    poly_divmod,
    poly_primitive_int,
    poly_trim,
)
from .torus import (
    LI_YORKE_ALL_POWERS,
    SOME_POWER_LI_YORKE_FREE,
    TorusEndo,
    entropy as torus_entropy,
    entropy_is_positive,
    finite_order,
    restrict_matrix_to_lattice,
)

# Result tags used in verdict chains, reports, and error messages.  Each tag
# names a mathematical fact the pipeline relied on.
ENTROPY_ON_CENTRAL_TORUS = "entropy-carried-by-central-torus-of-eventual-image"
BOWEN_UPPER_BOUND = "eigenvalue-sum-is-an-upper-bound"
POSITIVE_TORUS_ENTROPY_LI_YORKE = "positive-entropy-torus-has-li-yorke-pairs-for-all-powers"
TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE = "trivial-central-torus-excludes-li-yorke-pairs"
ZERO_ENTROPY_TORUS_SOME_POWER_FREE = "zero-entropy-torus-factor-some-power-li-yorke-free"
QUOTIENT_TORUS_TRIVIAL = "torus-quotient-has-trivial-central-torus"
TORAL_COMPONENTS_COINCIDE = "central-torus-agrees-with-radical-and-nilradical-tori"
INDUCED_TORAL_MAP_FINITE_ORDER = "induced-toral-map-has-finite-order"


# ---------------------------------------------------------------------------
# presented groups

@dataclass(frozen=True)
class PresentedGroup:
    """G = G~/Gamma~ via structure constants and central log-generators."""

    algebra: LieAlgebra
    lattice_logs: tuple[tuple[Fraction, ...], ...]
    name: str = "G"

    @staticmethod
    def build(algebra: LieAlgebra, lattice_logs, name: str = "G") -> "PresentedGroup":
        logs = tuple(to_fraction_vector(v) for v in lattice_logs)
        for v in logs:
            if len(v) != algebra.dim:
                raise DimensionError("lattice log-generator has wrong length")
        return PresentedGroup(algebra, logs, name)

    def lattice(self) -> Lattice:
        return Lattice.from_generators(self.algebra.dim, list(self.lattice_logs))

    @property
    def dim(self) -> int:
        return self.algebra.dim


@dataclass(frozen=True)
class PresentationReport:
    valid: bool
    issues: tuple[str, ...]

    def describe(self) -> str:
        return "valid presentation" if self.valid else "; ".join(self.issues)


def _compact_spectrum_certificate(minimal) -> str | None:
    """None when the minimal polynomial divides t * prod_m (t^2 + m^2),
    otherwise a human-readable reason.

    Such a minimal polynomial certifies that the adjoint is semisimple with
    spectrum in iZ, so the corresponding one-parameter group is bounded.
    """
    p = [Fraction(c) for c in poly_trim(minimal)]
    if not p:
        return "zero minimal polynomial"
    if p[0] == 0:
        p = p[1:]
        if not p or p[0] == 0:
            return "minimal polynomial divisible by t^2 (adjoint not semisimple)"
    if any(c != 0 for c in p[1::2]):
        return "minimal polynomial has odd-degree terms (spectrum not purely imaginary)"
    nu = p[::2]  # polynomial in s = t^2, roots must be -m^2
    m = 1
    while len(nu) > 1:
        if m * m > abs(nu[0]):
            return "minimal polynomial has a factor other than t^2 + m^2"
        divisor = [Fraction(m * m), Fraction(1)]
        quot, rem = poly_divmod(nu, divisor)
        if not rem:
            nu = quot
        m += 1
    if nu and nu[0] != 1:
        return "minimal polynomial is not monic after factoring"
    return None



def validate_presentation(group: PresentedGroup) -> PresentationReport:
    """Certify that the declared lattice generators are central.

    Checks, in order: the structure constants form a Lie algebra; the W_i
    commute pairwise; each ad(W_i) carries the compact-spectrum certificate;
    and the W_i are Z-linearly independent.
    """
    issues: list[str] = []
    algebra_report = validate_algebra(group.algebra)
    if not algebra_report.valid:
        issues.append(f"algebra: {algebra_report.describe()}")
    logs = group.lattice_logs
    for i in range(len(logs)):
        for j in range(i + 1, len(logs)):
            if any(x != 0 for x in group.algebra.bracket(logs[i], logs[j])):
                issues.append(f"lattice generators {i} and {j} do not commute")
    for i, w in enumerate(logs):
        reason = _compact_spectrum_certificate(min_poly(group.algebra.adjoint_matrix(w)))
        if reason is not None:
            issues.append(f"lattice generator {i}: {reason}")
    if logs and rank([list(v) for v in logs]) != len(logs):
        issues.append("lattice generators are linearly dependent")
    return PresentationReport(not issues, tuple(issues))


# ---------------------------------------------------------------------------
# endomorphisms

@dataclass(frozen=True)
class GroupEndomorphism:
    """Derivative matrix on the algebra plus its integer lattice action."""

    group: PresentedGroup
    d_phi: tuple[tuple[Fraction, ...], ...]
    lattice_action: tuple[tuple[int, ...], ...]
    surjective_on_identity_component: bool

    def d_phi_matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.d_phi]

    def power(self, k: int) -> "GroupEndomorphism":
        return validate_endomorphism(self.group, mat_pow(self.d_phi_matrix(), k))


def _exp_ad(algebra, u, v):
    """Finite exponential sum exp(ad u)(v) for ad-nilpotent u, exact."""
    result = list(to_fraction_vector(v))
    term = list(v)
    factorial = 1
    for k in range(1, algebra.dim + 1):
        term = list(algebra.bracket(u, term))
        factorial *= k
        if all(x == 0 for x in term):
            break
        result = [r + t / factorial for r, t in zip(result, term)]
    return tuple(result)


def _conjugate_correction(algebra, nil_space, v, target):
    """u in the nilradical with exp(ad u)(v) = target, or None.

    Successive linear corrections [du, v] = residual walk the residual down
    the nilpotent filtration; the returned u is certified by an exact final
    check, so incompleteness of the iteration only causes rejection.
    """
    if all(x == 0 for x in v):
        return None
    dim = algebra.dim
    nil_basis = [list(b) for b in nil_space.basis]
    if not nil_basis:
        return None
    columns = [algebra.bracket(b, v) for b in nil_basis]
    matrix = [[columns[j][i] for j in range(len(nil_basis))] for i in range(dim)]
    u = [Fraction(0)] * dim
    for _ in range(dim + 1):
        current = _exp_ad(algebra, u, v)
        residual = [t - c for t, c in zip(to_fraction_vector(target), current)]
        if all(x == 0 for x in residual):
            return tuple(u)
        coeffs = solve(matrix, residual)
        if coeffs is None:
            return None
        du = [
            sum((coeffs[j] * nil_basis[j][i] for j in range(len(nil_basis))), Fraction(0))
            for i in range(dim)
        ]
        if all(x == 0 for x in du):
            return None
        u = [a + b for a, b in zip(u, du)]
    return None


def validate_endomorphism(group: PresentedGroup, derivative) -> GroupEndomorphism:
    """Check bracket compatibility and extraction of the lattice action.

    The derivative must be an algebra endomorphism (exactly).  Each
    log-generator must map to an integer combination of the generators,
    either on the nose or up to a certified inner conjugation: when
    d(W_i) = v_i + r_i with v_i an integer combination and r_i in the
    nilradical, a conjugator u with exp(ad u)(v_i) = d(W_i) is solved for
    and verified exactly, which makes exp of the image an inner conjugate
    of the central element exp(2 pi v_i) and hence again a lattice element.
    """
    d = to_fraction_matrix(derivative)
    n = group.algebra.dim
    if len(d) != n or any(len(row) != n for row in d):
        raise DimensionError(f"derivative must be {n}x{n}")
    basis = [group.algebra.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_vec(d, group.algebra.bracket(basis[i], basis[j]))
            rhs = group.algebra.bracket(mat_vec(d, basis[i]), mat_vec(d, basis[j]))
            if lhs != rhs:
                raise ValidationError(
                    "not a Lie algebra endomorphism: bracket compatibility fails at "
                    f"({group.algebra.basis_names[i]}, {group.algebra.basis_names[j]})"
                )
    logs = group.lattice_logs
    if logs:
        log_columns = transpose([list(v) for v in logs])
        action_columns = []
        for i, w in enumerate(logs):
            image = mat_vec(d, w)
            coords = solve(log_columns, image)
            if coords is None:
                coords = _coords_up_to_conjugation(group, image)
                if coords is None:
                    raise ValidationError(
                        f"lattice not preserved: image of generator {i} leaves the "
                        "lattice span and admits no certified conjugation back into it")
            if any(c.denominator != 1 for c in coords):
                raise ValidationError(
                    f"lattice not preserved: image of generator {i} has non-integer "
                    f"coordinates {tuple(str(c) for c in coords)}")
            action_columns.append([int(c) for c in coords])
        action = tuple(
            tuple(action_columns[j][i] for j in range(len(logs)))
            for i in range(len(logs))
        )
    else:
        action = tuple()
    surjective = det(d) != 0 if n else True
    return GroupEndomorphism(group, tuple(tuple(row) for row in d), action, surjective)


def _coords_up_to_conjugation(group: PresentedGroup, image):
    """Lattice coordinates of a generator image modulo a certified inner
    conjugation, or None when no certificate is found."""
    algebra = group.algebra
    try:
        nil = nilradical(algebra)
    except (InvariantViolationError, ValueError):
        return None
    logs = group.lattice_logs
    span_w = Subspace.from_vectors(algebra.dim, [list(v) for v in logs])
    if span_w.intersect(nil.space).dim != 0:
        return None
    # unique decomposition image = v + r with v in span(W), r in nilradical
    combined = [list(v) for v in logs] + [list(b) for b in nil.space.basis]
    coeffs = solve(transpose(combined), image)
    if coeffs is None:
        return None
    v = [
        sum((coeffs[j] * logs[j][i] for j in range(len(logs))), Fraction(0))
        for i in range(algebra.dim)
    ]
    if _conjugate_correction(algebra, nil.space, tuple(v), tuple(image)) is None:
        return None
    return tuple(coeffs[: len(logs)])


# ---------------------------------------------------------------------------
# pipeline stages

def eventual_image(group: PresentedGroup, endo: GroupEndomorphism) -> Subspace:
    """Stabilized image of the derivative: the algebra of the maximal
    connected subgroup mapped onto itself."""
    n = group.algebra.dim
    power = mat_pow(endo.d_phi_matrix(), n) if n else []
    columns = transpose(power)
    image = Subspace.from_vectors(n, columns)
    mapped = Subspace.from_vectors(
        n, [mat_vec(endo.d_phi_matrix(), v) for v in image.basis])
    if mapped.dim != image.dim:
        raise InvariantViolationError(
            "eventual_image", "derivative does not map its stabilized image onto itself")
    for u in image.basis:
        for v in image.basis:
            if not image.contains(group.algebra.bracket(u, v)):
                raise InvariantViolationError(
                    "eventual_image", "stabilized image is not closed under the bracket")
    return image


@dataclass(frozen=True)
class CentralTorus:
    """Maximal central torus data: its lattice, span, and attached action."""

    lattice: Lattice
    subspace: Subspace
    action: TorusEndo | None = None

    @property
    def dim(self) -> int:
        return self.lattice.rank


def toral_lattice(group: PresentedGroup) -> CentralTorus:
    """Lattice of the maximal torus in the center: the lattice generators
    that a central exponential forces into the center of the algebra.

    A generator with nilpotent adjoint inside the nilradical must have
    adjoint zero (semisimple + nilpotent = 0), and the central torus of the
    group agrees with the one of its nilradical, so the torus directions are
    exactly the lattice points lying in the center.
    """
    z = center(group.algebra).space
    lam = lattice_intersect_subspace(group.lattice(), z)
    return CentralTorus(lam, lam.span())


@dataclass(frozen=True)
class LiYorkeChain:
    """Verdict plus the reduction chain justifying it; each link is a
    (result-tag, statement) pair."""

    verdict: str
    entropy_positive: bool
    links: tuple[tuple[str, str], ...]

    @property
    def citations(self) -> tuple[str, ...]:
        return tuple(tag for tag, _ in self.links)


@dataclass(frozen=True)
class ToralOrderCheck:
    order: int
    torus_dim: int
    action: TorusEndo


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the entropy pipeline produced, stage by stage."""

    group_name: str
    tol: float
    entropy: EntropyValue
    bowen_upper_bound: EntropyValue
    eventual_image: Subspace
    lattice_in_image: Lattice
    center_of_image: Subspace
    torus: CentralTorus
    validations: tuple[str, ...]
    citations: tuple[str, ...]
    li_yorke: LiYorkeChain | None = None
    toral_order: ToralOrderCheck | None = None


def _central_torus_action(group: PresentedGroup, endo: GroupEndomorphism):
    """Stages 1-5: eventual image, its lattice, its center, the central
    sublattice, and the integer action on it."""
    if endo.group != group:
        raise ValidationError("endomorphism was validated against a different presentation")
    g_phi = eventual_image(group, endo)
    try:
        l_phi = lattice_intersect_subspace(group.lattice(), g_phi)
    except Exception as exc:  # dimension errors signal inconsistent input
        raise PipelineError("lattice_in_image", str(exc)) from exc
    try:
        z_phi = centralizer_in(group.algebra, g_phi)
    except Exception as exc:
        raise PipelineError("center_of_image", str(exc)) from exc
    lam_phi = lattice_intersect_subspace(l_phi, z_phi)
    try:
        action = restrict_matrix_to_lattice(endo.d_phi_matrix(), lam_phi)
    except ValidationError as exc:
        raise PipelineError("restrict_action", str(exc)) from exc
    torus = CentralTorus(lam_phi, lam_phi.span(), action)
    return g_phi, l_phi, z_phi, torus


def topological_entropy(group: PresentedGroup, endo: GroupEndomorphism,
                        tol: float = DEFAULT_TOL) -> AnalysisReport:
    """Entropy of the endomorphism, with the full reduction recorded.

    The report also carries the eigenvalue-sum upper bound computed from the
    whole derivative, which is strict whenever expansion happens outside the
    central torus of the eventual image.
    """
    g_phi, l_phi, z_phi, torus = _central_torus_action(group, endo)
    ent = torus_entropy(torus.action, tol)
    bowen_cert = poly_primitive_int(char_poly(endo.d_phi_matrix()))
    bowen = log_mahler(bowen_cert, tol)
    validations = (
        "presentation invariants assumed validated",
        "eventual image verified invariant and bracket-closed",
        "central sublattice verified invariant under the derivative",
    )
    return AnalysisReport(
        group_name=group.name,
        tol=tol,
        entropy=ent,
        bowen_upper_bound=bowen,
        eventual_image=g_phi,
        lattice_in_image=l_phi,
        center_of_image=z_phi,
        torus=torus,
        validations=validations,
        citations=(ENTROPY_ON_CENTRAL_TORUS, TORAL_COMPONENTS_COINCIDE, BOWEN_UPPER_BOUND),
    )


def li_yorke_report(group: PresentedGroup, endo: GroupEndomorphism) -> LiYorkeChain:
    """Existence/nonexistence chain for Li-Yorke pairs of the endomorphism.

    Requires surjectivity on the identity component.  Positive entropy on
    the central torus of the eventual image yields pairs for every power;
    otherwise the reduction through the torus quotient shows some power has
    none, and each link of that reduction is recorded.
    """
    if not endo.surjective_on_identity_component:
        raise ValidationError(
            "hypothesis not met: endomorphism is not surjective on the identity component")
    _, _, _, torus = _central_torus_action(group, endo)
    if torus.action.dim and entropy_is_positive(torus.action):
        links = (
            (ENTROPY_ON_CENTRAL_TORUS,
             "the entropy of the endomorphism equals the entropy of its action on the "
             "maximal central torus of the eventual image"),
            (POSITIVE_TORUS_ENTROPY_LI_YORKE,
             "that torus action has positive entropy, so every power of the "
             "endomorphism has a Li-Yorke pair"),
        )
        return LiYorkeChain(LI_YORKE_ALL_POWERS, True, links)
    if torus.lattice.is_empty():
        links = (
            (TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE,
             "the maximal central torus is trivial, so some power of the endomorphism "
             "has no Li-Yorke pair"),
        )
        return LiYorkeChain(SOME_POWER_LI_YORKE_FREE, False, links)
    links = (
        (ZERO_ENTROPY_TORUS_SOME_POWER_FREE,
         "the central torus action has zero entropy, so some power of the torus factor "
         "has no Li-Yorke pair"),
        (QUOTIENT_TORUS_TRIVIAL,
         "the quotient by the central torus has trivial central torus"),
        (TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE,
         "hence some power of the induced quotient endomorphism has no Li-Yorke pair, "
         "and the two reductions combine"),
    )
    return LiYorkeChain(SOME_POWER_LI_YORKE_FREE, False, links)


def check_toral_induced_finite_order(group: PresentedGroup,
                                     endo: GroupEndomorphism) -> ToralOrderCheck:
    """Order of the endomorphism induced on the maximal torus of R/N.

    Preconditions: solvable algebra, surjective endomorphism, and a
    simply-connected nilradical (certified by the lattice missing the
    nilradical).  Under these the induced toral map must have finite order;
    an infinite answer is a theorem violation, not a result.
    """
    if not is_solvable(group.algebra):
        raise ValidationError("precondition failed: the algebra is not solvable")
    if not endo.surjective_on_identity_component:
        raise ValidationError("precondition failed: the endomorphism is not surjective")
    nil = nilradical(group.algebra)
    meet = lattice_intersect_subspace(group.lattice(), nil.space)
    if not meet.is_empty():
        raise ValidationError(
            "precondition failed: nilradical is not simply-connected "
            "(the lattice meets the nilradical)")
    d = endo.d_phi_matrix()
    for v in nil.space.basis:
        if not nil.space.contains(mat_vec(d, v)):
            raise InvariantViolationError(
                "toral_order", "derivative does not preserve the nilradical")
    quotient, projection = quotient_algebra(group.algebra, nil)
    if any(any(x != 0 for x in quotient.table[i][j])
           for i in range(quotient.dim) for j in range(quotient.dim)):
        raise InvariantViolationError("toral_order", "quotient by the nilradical is not abelian")
    pivots = [next(i for i, x in enumerate(row) if x != 0) for row in nil.space.basis]
    complement = [c for c in range(group.algebra.dim) if c not in pivots]
    induced = [
        [sum((projection[r][i] * d[i][complement[c]] for i in range(group.algebra.dim)),
             Fraction(0))
         for c in range(quotient.dim)]
        for r in range(quotient.dim)
    ]
    projected_logs = [mat_vec(projection, w) for w in group.lattice_logs]
    lattice_a = Lattice.from_generators(quotient.dim, projected_logs)
    try:
        action = restrict_matrix_to_lattice(induced, lattice_a)
    except ValidationError as exc:
        raise InvariantViolationError("toral_order", str(exc)) from exc
    order = finite_order(action)
    if order is None:
        raise TheoremViolationError(
            "toral_order",
            "induced toral map has infinite order; "
            f"expected {INDUCED_TORAL_MAP_FINITE_ORDER}")
    return ToralOrderCheck(order, lattice_a.rank, action)


def quotient_by_torus(group: PresentedGroup) -> PresentedGroup:
    """Presentation of G/T(G): quotient algebra by the torus span, with the
    lattice generators projected and re-canonicalized.

    Post-checked: the result has empty toral lattice.
    """
    torus = toral_lattice(group)
    if torus.lattice.is_empty():
        result = group
    else:
        quotient, projection = quotient_algebra(group.algebra, torus.subspace)
        projected = [mat_vec(projection, w) for w in group.lattice_logs]
        lattice = Lattice.from_generators(quotient.dim, projected)
        result = PresentedGroup(quotient, lattice.basis, f"{group.name}/T")
    post = toral_lattice(result)
    if not post.lattice.is_empty():
        raise InvariantViolationError(
            "quotient_by_torus",
            f"quotient still has a nontrivial central torus; expected {QUOTIENT_TORUS_TRIVIAL}")
    return result


def analyze(group: PresentedGroup, endo: GroupEndomorphism,
            tol: float = DEFAULT_TOL) -> AnalysisReport:
    """Entropy report extended with the Li-Yorke chain and, when the group
    is solvable with simply-connected nilradical and the endomorphism is
    surjective, the induced toral order check."""
    report = topological_entropy(group, endo, tol)
    li = li_yorke_report(group, endo) if endo.surjective_on_identity_component else None
    toral = None
    if endo.surjective_on_identity_component and is_solvable(group.algebra):
        try:
            toral = check_toral_induced_finite_order(group, endo)
        except ValidationError:
            toral = None  # preconditions not met; the check simply does not apply
    citations = report.citations
    if li is not None:
        citations = citations + tuple(t for t in li.citations if t not in citations)
    if toral is not None:
        citations = citations + (INDUCED_TORAL_MAP_FINITE_ORDER,)
    return replace(report, li_yorke=li, toral_order=toral, citations=citations)
