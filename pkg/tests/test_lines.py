"""Restriction to lines, scheme classification, binary forms."""

from fractions import Fraction

import pytest

from fermatlines.errors import LineInHypersurface
from fermatlines.exact import Matrix, sample_rational
from fermatlines.family import (DeformationPoint, FamilyShape,
                                MixedTangentSection, omega_basis)
from fermatlines.lines import (BinaryForm, LengthTwoScheme, Line, ProjPoint,
                               classify, distinct_root_count, ip_linear,
                               iz_linear, permute_point, restrict_mod_f,
                               restrict_poly, restrict_section)
from fermatlines.poly import EulerSection, HomogPoly, euler_alpha, parse_poly
from fermatlines.rng import Rng
from tests.test_poly import random_poly


def pt(*coords):
    return ProjPoint(list(coords))


def scheme(c1, c2):
    return LengthTwoScheme(pt(*c1), pt(*c2))


def test_projpoint_normalization():
    p = pt(0, 2, 4)
    assert p.coords == (0, 1, 2)
    assert pt(3, 6).coords == (1, 2)
    with pytest.raises(ValueError):
        pt(0, 0, 0)
    assert pt(0, 5, 0).is_coordinate_point()
    assert not pt(1, 1, 0).is_coordinate_point()


def test_scheme_rejects_coincident_points():
    with pytest.raises(ValueError):
        scheme((1, 2, 3), (2, 4, 6))


def test_classify_generic_example():
    z = scheme((1, 1, 1, 1), (1, 2, 3, 4))
    cls = classify(z)
    assert cls.tag == "generic" and cls.a is None
    # oracle: every drop-one restricted span is 2-dimensional
    for i in range(4):
        cols = [[z.p1.coords[j], z.p2.coords[j]] for j in range(4) if j != i]
        assert Matrix(cols).rank() == 2


def test_classify_very_special_example():
    z = scheme((1, 1, 0, 0), (1, -1, 0, 0))
    cls = classify(z)
    assert cls.tag == "very-special"
    assert set(cls.vanishing) == {2, 3} and len(cls.vanishing) == 2
    assert cls.a == 1
    assert cls.perm == (0, 1, 2, 3)


def test_classify_special_not_very_special_example():
    z = scheme((1, 1, 1, 0), (1, -1, -1, 0))
    cls = classify(z)
    assert cls.tag == "special"
    assert cls.a == 2
    assert cls.vanishing == (3,)
    # dropping x0 leaves x1, x2, x3 restricting to a 1-dimensional span
    cols = [[z.p1.coords[j], z.p2.coords[j]] for j in (1, 2, 3)]
    assert Matrix(cols).rank() == 1


def test_classify_invariant_under_swap_and_scaling():
    z = scheme((1, 1, 1, 0), (1, -1, -1, 0))
    z_swapped = scheme((1, -1, -1, 0), (1, 1, 1, 0))
    z_scaled = scheme((2, 2, 2, 0), (-3, 3, 3, 0))
    assert classify(z) == classify(z_swapped) == classify(z_scaled)


def test_classify_normalization_permutation_nontrivial():
    # drop coordinate is x1 here; x0 and x3 vanish on Z
    z = scheme((0, 1, 1, 0), (0, 1, -1, 0))
    cls = classify(z)
    assert cls.tag == "very-special"
    assert cls.perm[0] == 1 and set(cls.perm[:2]) == {1, 2}
    moved = LengthTwoScheme(permute_point(z.p1, cls.perm),
                            permute_point(z.p2, cls.perm))
    assert classify(moved).perm == (0, 1, 2, 3)


def test_restrict_linear_forms():
    line = Line(pt(1, 0, 0), pt(0, 1, 0))
    x0 = HomogPoly.variable(3, 0)
    assert restrict_poly(x0, line) == BinaryForm(1, [1, 0])   # s
    x2 = HomogPoly.variable(3, 2)
    assert restrict_poly(x2, line).is_zero()


def test_restrict_monomial_by_hand():
    line = Line(pt(1, 0, 0), pt(0, 1, 1))
    p = HomogPoly.monomial(3, (1, 1, 1))
    # x0 -> s, x1 -> t, x2 -> t: product s*t^2
    assert restrict_poly(p, line) == BinaryForm(3, [0, 0, 1, 0])


def test_restrict_fermat_value_at_first_point():
    shape = FamilyShape(2, 6)
    f = DeformationPoint.fermat(shape).f_poly()
    line = Line(pt(1, 1, 1, 1), pt(1, -1, 1, -1))
    xif = restrict_poly(f, line)
    assert xif.evaluate(1, 0) == 4 == f.evaluate([1, 1, 1, 1])
    assert xif.evaluate(0, 1) == 4 == f.evaluate([1, -1, 1, -1])


def test_restriction_is_ring_homomorphism():
    rng = Rng(21)
    line = Line(pt(1, 2, -1), pt(1, 0, 3))
    for _ in range(8):
        p = random_poly(3, 3, rng)
        q = random_poly(3, 2, rng)
        assert restrict_poly(p * q, line) == restrict_poly(p, line) * restrict_poly(q, line)
        p2 = random_poly(3, 3, rng)
        assert restrict_poly(p + p2, line) == restrict_poly(p, line) + restrict_poly(p2, line)


def test_restrict_section_euler_field():
    rng = Rng(22)
    for _ in range(5):
        a = ProjPoint([sample_rational(rng, 9) for _ in range(4)][:3] + [1])
        bpt = ProjPoint([1] + [sample_rational(rng, 9) for _ in range(3)])
        if a == bpt:
            continue
        line = Line(a, bpt)
        comps = restrict_section(euler_alpha(2), line)
        assert len(comps) == 4
        assert not all(c.is_zero() for c in comps)


def test_restrict_section_monomial_field_on_coordinate_line():
    shape = FamilyShape(2, 6)
    b = DeformationPoint.fermat(shape)
    line = Line(pt(1, 0, 0, 0), pt(0, 1, 0, 0))
    # the section x0 x1 d/dx2 is at index of (i,j,k) = (0,1,2)
    target = None
    for sec in omega_basis(b):
        nz = [(idx, c) for idx, c in enumerate(sec.components) if not c.is_zero()]
        if len(nz) == 1 and nz[0][0] == 2 and nz[0][1] == HomogPoly.monomial(4, (1, 1, 0, 0)):
            target = sec
            break
    comps = restrict_section(target, line)
    assert comps[2] == BinaryForm(2, [0, 1, 0])     # restriction of x0*x1
    assert all(comps[i].is_zero() for i in (0, 1, 3))


def test_restrict_section_matches_componentwise():
    rng = Rng(23)
    line = Line(pt(1, 1, 2, 3), pt(1, -2, 0, 1))
    comps = [random_poly(4, 2, rng) for _ in range(4)]
    sec = EulerSection(comps)
    got = restrict_section(sec, line)
    assert got == [restrict_poly(c, line) for c in comps]


def test_restrict_section_mixed_appends_contracted_base():
    line = Line(pt(1, 1, 1, 1), pt(1, -1, 1, -1))
    nv = 4
    mono = (4, 1, 1, 0)
    coeff = parse_poly("x0-x3", nv)
    sec = MixedTangentSection(EulerSection.zero(nv, 2), {mono: coeff})
    got = restrict_section(sec, line)
    assert len(got) == nv + 1
    assert got[-1] == restrict_poly(coeff * HomogPoly.monomial(nv, mono), line)


def test_restrict_mod_f_multiple_of_f_is_zero():
    shape = FamilyShape(2, 6)
    f = DeformationPoint.fermat(shape).f_poly()
    line = Line(pt(1, 1, 1, 1), pt(1, -1, 1, -1))
    p = f * HomogPoly.variable(4, 0)
    assert restrict_mod_f(p, line, f).is_zero()


def test_restrict_mod_f_additive_shift():
    shape = FamilyShape(2, 6)
    f = DeformationPoint.fermat(shape).f_poly()
    line = Line(pt(1, 1, 1, 1), pt(1, -1, 1, -1))
    extra = HomogPoly.monomial(4, (6, 0, 0, 0))       # restricts to s^6
    cls_f_plus = restrict_mod_f(f + extra, line, f)
    cls_extra = restrict_mod_f(extra, line, f)
    assert cls_f_plus == cls_extra


def test_restrict_mod_f_division_reconstruction():
    shape = FamilyShape(2, 6)
    rng = Rng(24)
    b = DeformationPoint(shape, {(4, 1, 1, 0): 2, (2, 2, 2, 0): -1})
    f = b.f_poly()
    line = Line(pt(1, 1, 2, 1), pt(1, -1, 1, 3))
    xif = restrict_poly(f, line)
    for _ in range(5):
        p = random_poly(4, 7, rng)
        rem = restrict_mod_f(p, line, f)
        diff = restrict_poly(p, line) - rem
        # difference must be xi(f) times a linear binary form
        rows = []
        for j in (0, 1):
            shifted = [Fraction(0)] * 8
            for k, c in enumerate(xif.coeffs):
                shifted[k + j] = c
            rows.append(shifted)
        assert Matrix(rows).ncols == 8
        sol = Matrix([[rows[0][k], rows[1][k]] for k in range(8)]).solve(diff.vector())
        assert sol is not None


def test_restrict_mod_f_line_inside_member():
    # x2^6 + x3^6 contains the coordinate line x2 = x3 = 0
    f = parse_poly("x2^6+x3^6", 4)
    line = Line(pt(1, 0, 0, 0), pt(0, 1, 0, 0))
    with pytest.raises(LineInHypersurface):
        restrict_mod_f(HomogPoly.monomial(4, (7, 0, 0, 0)), line, f)


def test_iz_linear_dimensions_and_vanishing():
    z = scheme((1, 1, 1, 1), (1, 2, 3, 4))
    iz = iz_linear(z)
    assert iz.dim == 2  # = n
    for v in iz.basis_vectors():
        assert sum(c * x for c, x in zip(v, z.p1.coords)) == 0
        assert sum(c * x for c, x in zip(v, z.p2.coords)) == 0


def test_iz_linear_very_special_contains_coordinates():
    z = scheme((1, 1, 0, 0), (1, -1, 0, 0))
    iz = iz_linear(z)
    assert iz.contains_vector([0, 0, 1, 0])
    assert iz.contains_vector([0, 0, 0, 1])


def test_ip_linear_dimension():
    p = pt(1, 1, 1, 1)
    assert ip_linear(p).dim == 3


def test_distinct_root_count():
    # s^3 t^3: two projective roots
    assert distinct_root_count(BinaryForm(6, [0, 0, 0, 1, 0, 0, 0])) == 2
    # (s + t)^2 * s: roots at s=0 and s=-t
    f = BinaryForm(1, [1, 1]) * BinaryForm(1, [1, 1]) * BinaryForm(1, [1, 0])
    assert distinct_root_count(f) == 2
    # s*t*(s - t)*(s + 2t): four distinct roots
    g = (BinaryForm(1, [1, 0]) * BinaryForm(1, [0, 1])
         * BinaryForm(1, [1, -1]) * BinaryForm(1, [1, 2]))
    assert distinct_root_count(g) == 4
    # a constant-free full-degree squarefree form
    h = BinaryForm(2, [1, 0, -1])   # s^2 - t^2
    assert distinct_root_count(h) == 2
    with pytest.raises(ValueError):
        distinct_root_count(BinaryForm.zero(3))


def test_binary_form_t_partial_t():
    f = BinaryForm(4, [5, 0, 3, 0, -2])
    g = f.t_partial_t()
    assert g.coeffs == (0, 0, 6, 0, -8)


def test_binary_form_monomial_index():
    assert BinaryForm(6, [0, 0, 0, 7, 0, 0, 0]).monomial_index() == 3
    assert BinaryForm(2, [1, 0, 1]).monomial_index() is None
    assert BinaryForm(2, [0, 0, 0]).monomial_index() is None
