import math
import random
from fractions import Fraction

import pytest

from lieentropy.errors import (
    InvariantViolationError,
    ValidationError,
)
from lieentropy.exactlinalg import Subspace
from lieentropy.liealgebra import LieAlgebra, centralizer_in, nilradical, solvable_radical
from lieentropy.groups import (
    ENTROPY_ON_CENTRAL_TORUS,
    POSITIVE_TORUS_ENTROPY_LI_YORKE,
    QUOTIENT_TORUS_TRIVIAL,
    TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE,
    ZERO_ENTROPY_TORUS_SOME_POWER_FREE,
    PresentedGroup,
    analyze,
    check_toral_induced_finite_order,
    eventual_image,
    li_yorke_report,
    quotient_by_torus,
    topological_entropy,
    toral_lattice,
    validate_endomorphism,
    validate_presentation,
)
from lieentropy.torus import LI_YORKE_ALL_POWERS, SOME_POWER_LI_YORKE_FREE

TOL = 1e-9


def F(x):
    return Fraction(x)


def abelian_group(dim, logs, name="A"):
    return PresentedGroup.build(LieAlgebra.abelian(dim), logs, name)


def e2_algebra():
    return LieAlgebra.from_brackets(3, [(0, 1, 2, 1), (0, 2, 1, -1)], ["H", "X", "Y"])


def e2_group():
    return PresentedGroup.build(e2_algebra(), [(1, 0, 0)], "E2")


def e2_endo(group, h_sign, a, b, w=(0, 0)):
    a, b = Fraction(a), Fraction(b)
    plane = [[a, -b], [b, a]] if h_sign == 1 else [[a, b], [b, -a]]
    d = [
        [Fraction(h_sign), 0, 0],
        [Fraction(w[0]), plane[0][0], plane[0][1]],
        [Fraction(w[1]), plane[1][0], plane[1][1]],
    ]
    return validate_endomorphism(group, d)


def heisenberg_group(logs):
    return PresentedGroup.build(
        LieAlgebra.from_brackets(3, [(0, 1, 2, 1)], ["X", "Y", "Z"]), logs, "Heis")


# --- presentation validation -------------------------------------------------

def test_validate_presentation_examples():
    assert validate_presentation(e2_group()).valid
    report = validate_presentation(heisenberg_group([(1, 0, 0)]))
    assert not report.valid
    assert "not semisimple" in report.issues[0]
    assert validate_presentation(abelian_group(2, [(0, 1)])).valid


def test_validate_presentation_non_commuting():
    sl2 = LieAlgebra.from_brackets(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])
    report = validate_presentation(PresentedGroup.build(sl2, [(1, 0, 0), (0, 1, 0)]))
    assert not report.valid
    assert any("commute" in issue for issue in report.issues)


def test_validate_presentation_dependent_generators():
    report = validate_presentation(abelian_group(2, [(1, 0), (2, 0)]))
    assert not report.valid
    assert any("dependent" in issue for issue in report.issues)


def test_validate_presentation_reports_algebra_violations():
    tampered = LieAlgebra.from_brackets(3, [(0, 1, 2, 1), (1, 0, 2, 1)], ["X", "Y", "Z"])
    report = validate_presentation(PresentedGroup.build(tampered, []))
    assert not report.valid
    assert any(issue.startswith("algebra:") for issue in report.issues)


def test_validate_presentation_spectrum_not_integral():
    # ad(H) on the affine line has eigenvalue 1, not purely imaginary
    affine = LieAlgebra.from_brackets(2, [(0, 1, 1, 1)], ["H", "X"])
    report = validate_presentation(PresentedGroup.build(affine, [(1, 0)]))
    assert not report.valid


# --- endomorphism validation ---------------------------------------------------

def test_validate_endomorphism_examples():
    cstar = abelian_group(2, [(0, 1)], "Cstar")
    endo = validate_endomorphism(cstar, [[2, 0], [0, 2]])
    assert endo.lattice_action == ((2,),)
    assert endo.surjective_on_identity_component

    with pytest.raises(ValidationError, match="lattice not preserved"):
        validate_endomorphism(cstar, [[2, 0], [0, F("1/2")]])

    ident = validate_endomorphism(e2_group(), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert ident.lattice_action == ((1,),)


def test_validate_endomorphism_bracket_compat():
    with pytest.raises(ValidationError, match="bracket compatibility"):
        validate_endomorphism(e2_group(), [[2, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_endomorphism_respects_brackets_for_valid_family():
    group = e2_group()
    endo = e2_endo(group, -1, F("2/3"), F("1/5"), w=(F("1/2"), 3))
    assert endo.surjective_on_identity_component
    assert endo.lattice_action == ((-1,),)


# --- eventual image ------------------------------------------------------------

def test_eventual_image_examples():
    plane = abelian_group(2, [])
    endo = validate_endomorphism(plane, [[2, 0], [0, 0]])
    assert eventual_image(plane, endo) == Subspace.from_vectors(2, [(1, 0)])
    inv = validate_endomorphism(plane, [[2, 1], [1, 1]])
    assert eventual_image(plane, inv) == Subspace.full(2)
    nil = validate_endomorphism(plane, [[0, 1], [0, 0]])
    assert eventual_image(plane, nil).dim == 0


def test_eventual_image_stabilizes():
    group = abelian_group(3, [])
    endo = validate_endomorphism(group, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    image = eventual_image(group, endo)
    assert image.dim == 0


# --- toral lattice ----------------------------------------------------------

def test_toral_lattice_examples():
    assert toral_lattice(abelian_group(2, [(0, 1)])).lattice.basis == ((F(0), F(1)),)
    assert toral_lattice(abelian_group(2, [])).lattice.is_empty()
    assert toral_lattice(e2_group()).lattice.is_empty()
    heis = heisenberg_group([(0, 0, 1)])
    assert toral_lattice(heis).lattice.basis == ((F(0), F(0), F(1)),)


def test_toral_coincidence_with_radical_and_nilradical():
    # the torus lattice computed against the center agrees with the one
    # computed against the center of the radical and of the nilradical
    from lieentropy.exactlinalg import lattice_intersect_subspace

    groups = [
        abelian_group(2, [(1, 0), (0, 1)]),
        abelian_group(2, [(0, 1)]),
        e2_group(),
        heisenberg_group([(0, 0, 1)]),
        PresentedGroup.build(
            LieAlgebra.from_brackets(4, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
                                     ["H", "E", "F", "W"]),
            [(0, 0, 0, 1)], "SL2xT"),
    ]
    for group in groups:
        lam = toral_lattice(group).lattice
        rad = solvable_radical(group.algebra).space
        nil = nilradical(group.algebra).space
        lam_r = lattice_intersect_subspace(
            group.lattice(), centralizer_in(group.algebra, rad))
        lam_n = lattice_intersect_subspace(
            group.lattice(), centralizer_in(group.algebra, nil))
        assert lam.basis == lam_r.basis == lam_n.basis


# --- the entropy pipeline -----------------------------------------------------

def test_pipeline_torus_squaring():
    group = abelian_group(2, [(1, 0), (0, 1)], "T2")
    endo = validate_endomorphism(group, [[2, 0], [0, 2]])
    report = topological_entropy(group, endo, TOL)
    assert abs(report.entropy.value - 2 * math.log(2)) <= TOL
    assert report.torus.action.dim == 2
    assert report.torus.action.matrix == ((2, 0), (0, 2))


def test_pipeline_plane_doubling_exact_zero():
    group = abelian_group(2, [], "R2")
    endo = validate_endomorphism(group, [[2, 0], [0, 2]])
    report = topological_entropy(group, endo, TOL)
    assert report.entropy.exact_zero and report.entropy.value == 0.0
    assert abs(report.bowen_upper_bound.value - 2 * math.log(2)) <= TOL


def test_pipeline_cstar_squaring():
    group = abelian_group(2, [(0, 1)], "Cstar")
    endo = validate_endomorphism(group, [[2, 0], [0, 2]])
    report = topological_entropy(group, endo, TOL)
    assert abs(report.entropy.value - math.log(2)) <= TOL
    assert abs(report.bowen_upper_bound.value - 2 * math.log(2)) <= TOL
    assert report.entropy.value < report.bowen_upper_bound.value


def test_pipeline_e2_zero_entropy():
    group = e2_group()
    endo = e2_endo(group, 1, 2, 1)
    report = topological_entropy(group, endo, TOL)
    assert report.entropy.exact_zero and report.entropy.value == 0.0
    assert report.torus.dim == 0


def test_pipeline_heisenberg_central_circle():
    group = heisenberg_group([(0, 0, 1)])
    endo = validate_endomorphism(group, [[1, 0, 0], [0, 2, 0], [0, 0, 2]])
    report = topological_entropy(group, endo, TOL)
    assert abs(report.entropy.value - math.log(2)) <= TOL
    assert report.torus.action.matrix == ((2,),)


def test_pipeline_non_surjective_eventual_image():
    # diag(2, 0) on the full 2-torus: the eventual image is the first
    # coordinate circle and the entropy is log 2, not log 2 + (dead factor)
    group = abelian_group(2, [(1, 0), (0, 1)], "T2")
    endo = validate_endomorphism(group, [[2, 0], [0, 0]])
    assert not endo.surjective_on_identity_component
    report = topological_entropy(group, endo, TOL)
    assert report.eventual_image == Subspace.from_vectors(2, [(1, 0)])
    assert report.torus.action.matrix == ((2,),)
    assert abs(report.entropy.value - math.log(2)) <= TOL
    full = analyze(group, endo, TOL)
    assert full.li_yorke is None  # dichotomy hypotheses need surjectivity


def test_main_reduction_contract():
    # the reported entropy is bit-for-bit the entropy of the torus action
    from lieentropy.torus import entropy as torus_entropy

    group = abelian_group(2, [(1, 0), (0, 1)], "T2")
    endo = validate_endomorphism(group, [[2, 1], [1, 1]])
    report = topological_entropy(group, endo, TOL)
    again = torus_entropy(report.torus.action, TOL)
    assert report.entropy == again


def test_group_level_power_law():
    group = abelian_group(2, [(1, 0), (0, 1)], "T2")
    endo = validate_endomorphism(group, [[2, 1], [1, 1]])
    base = topological_entropy(group, endo, TOL).entropy.value
    for k in range(1, 5):
        powered = endo.power(k)
        value = topological_entropy(group, powered, TOL).entropy.value
        assert abs(value - k * base) <= 2 * TOL


def test_group_level_power_law_across_catalog():
    from lieentropy.catalog import builtin_catalog
    from lieentropy.formats import build_group

    for entry in builtin_catalog():
        group, derivative = build_group(entry.input_document())
        endo = validate_endomorphism(group, derivative)
        base = topological_entropy(group, endo, TOL).entropy.value
        for k in (2, 4):
            value = topological_entropy(group, endo.power(k), TOL).entropy.value
            assert abs(value - k * base) <= 2 * TOL, entry.name


def test_dimension_zero_group_is_legal():
    trivial = PresentedGroup.build(LieAlgebra.abelian(0), [], "pt")
    assert validate_presentation(trivial).valid
    endo = validate_endomorphism(trivial, [])
    report = analyze(trivial, endo, TOL)
    assert report.entropy.exact_zero and report.entropy.value == 0.0
    assert report.torus.dim == 0
    assert report.li_yorke is not None
    assert report.li_yorke.verdict == SOME_POWER_LI_YORKE_FREE


def test_direct_product_additivity():
    # product of the circle-squaring group with 2-torus tripling:
    # entropies add, witnessing equality in the bundle inequality
    product = LieAlgebra.abelian(4)
    logs = [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    group = PresentedGroup.build(product, logs, "CstarxT2")
    d = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 3]]
    endo = validate_endomorphism(group, d)
    report = topological_entropy(group, endo, TOL)
    assert abs(report.entropy.value - (math.log(2) + 2 * math.log(3))) <= 2 * TOL


# --- induced toral order ------------------------------------------------------

def test_toral_order_examples():
    group = e2_group()
    assert check_toral_induced_finite_order(group, e2_endo(group, 1, 1, 1)).order == 1
    assert check_toral_induced_finite_order(group, e2_endo(group, -1, 1, 0)).order == 2
    with pytest.raises(ValidationError, match="nilradical is not simply-connected"):
        check_toral_induced_finite_order(
            heisenberg_group([(0, 0, 1)]),
            validate_endomorphism(heisenberg_group([(0, 0, 1)]),
                                  [[1, 0, 0], [0, 2, 0], [0, 0, 2]]))


def test_toral_order_requires_solvable():
    sl2 = LieAlgebra.from_brackets(3, [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)])
    group = PresentedGroup.build(sl2, [])
    endo = validate_endomorphism(group, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValidationError, match="not solvable"):
        check_toral_induced_finite_order(group, endo)


def test_toral_order_requires_surjective():
    group = e2_group()
    endo = validate_endomorphism(group, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(ValidationError, match="not surjective"):
        check_toral_induced_finite_order(group, endo)


def test_toral_order_randomized_family_never_infinite():
    rng = random.Random(37)
    group = e2_group()
    for _ in range(25):
        h_sign = rng.choice([1, -1])
        while True:
            a = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            b = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            if a != 0 or b != 0:
                break
        w = (Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
             Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
        endo = e2_endo(group, h_sign, a, b, w)
        check = check_toral_induced_finite_order(group, endo)
        assert check.order == (1 if h_sign == 1 else 2)


# --- quotient by the torus ------------------------------------------------------

def test_quotient_by_torus_examples():
    cstar = abelian_group(2, [(0, 1)], "Cstar")
    quotient = quotient_by_torus(cstar)
    assert quotient.algebra.dim == 1 and quotient.lattice_logs == ()

    e2 = e2_group()
    assert quotient_by_torus(e2) == e2

    t2 = abelian_group(2, [(1, 0), (0, 1)], "T2")
    assert quotient_by_torus(t2).algebra.dim == 0


def test_quotient_by_torus_randomized_triviality():
    rng = random.Random(41)
    for _ in range(20):
        dim = rng.randint(1, 4)
        count = rng.randint(0, dim)
        logs = []
        seen = set()
        while len(logs) < count:
            v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim))
            if any(v) and v not in seen:
                logs.append(v)
                seen.add(v)
        group = abelian_group(dim, logs)
        if not validate_presentation(group).valid:
            continue
        assert toral_lattice(quotient_by_torus(group)).lattice.is_empty()
    for logs in ([(0, 0, 1)],):
        group = heisenberg_group(logs)
        assert toral_lattice(quotient_by_torus(group)).lattice.is_empty()
    assert toral_lattice(quotient_by_torus(e2_group())).lattice.is_empty()


# --- Li-Yorke chains -------------------------------------------------------------

def test_li_yorke_report_examples():
    t2 = abelian_group(2, [(1, 0), (0, 1)], "T2")
    squaring = validate_endomorphism(t2, [[2, 0], [0, 2]])
    chain = li_yorke_report(t2, squaring)
    assert chain.verdict == LI_YORKE_ALL_POWERS
    assert POSITIVE_TORUS_ENTROPY_LI_YORKE in chain.citations

    e2 = e2_group()
    chain = li_yorke_report(e2, e2_endo(e2, 1, 3, 4))
    assert chain.verdict == SOME_POWER_LI_YORKE_FREE
    assert chain.citations == (TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE,)

    shear = validate_endomorphism(t2, [[1, 1], [0, 1]])
    chain = li_yorke_report(t2, shear)
    assert chain.verdict == SOME_POWER_LI_YORKE_FREE
    assert ZERO_ENTROPY_TORUS_SOME_POWER_FREE in chain.citations
    assert QUOTIENT_TORUS_TRIVIAL in chain.citations


def test_li_yorke_report_requires_surjectivity():
    t2 = abelian_group(2, [(1, 0), (0, 1)], "T2")
    degenerate = validate_endomorphism(t2, [[0, 0], [0, 0]])
    with pytest.raises(ValidationError, match="surjective"):
        li_yorke_report(t2, degenerate)


def test_analyze_combines_everything():
    group = e2_group()
    endo = e2_endo(group, -1, 1, 2)
    report = analyze(group, endo, TOL)
    assert report.li_yorke is not None
    assert report.toral_order is not None and report.toral_order.order == 2
    assert ENTROPY_ON_CENTRAL_TORUS in report.citations
    assert TRIVIAL_CENTRAL_TORUS_NO_LI_YORKE in report.citations


def test_analyze_aborts_on_unverifiable_nilradical():
    # kappa vanishes identically on this solvable algebra although the
    # rotation-with-growth generator is not ad-nilpotent; the nilradical
    # post-verification must abort the toral-order stage
    trap = LieAlgebra.from_brackets(
        3, [(0, 1, 1, 1), (0, 1, 2, 1), (0, 2, 1, -1), (0, 2, 2, 1)], ["H", "X", "Y"])
    group = PresentedGroup.build(trap, [], "Trap")
    endo = validate_endomorphism(group, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(InvariantViolationError):
        analyze(group, endo, TOL)
