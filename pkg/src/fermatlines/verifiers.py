"""One verifier per finite linear-algebra claim about the family.

Each verifier returns a LemmaReport with an exact verdict, the dimensions it
computed, and (on failure) an exact witness.  Claims quantified over a
general member of the family are sampled: a claim PASSes when it holds for
every one of `trials` independent random draws, FAILs when it holds for
none, and is INDETERMINATE otherwise.  Random rationals miss the bad loci
with probability zero for all practical purposes, but the protocol keeps
the sampling semantics explicit.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (CoordinatePointError, InfeasibleSystem, LineInHypersurface,
                     NonGenericScheme, NotInTangencyStratum)
from .exact import (Matrix, Subspace, ZERO, format_fraction, kernel_basis,
                    sample_rational, random_solution)
from .family import (DeformationPoint, FamilyShape, c_coeff, eta, omega_basis,
                     sample_b_through, random_deformation)
from .lines import (LengthTwoScheme, Line, ProjPoint, classify,
                    distinct_root_count, ip_linear, iz_linear, permute_point,
                    restrict_poly, restrict_section, scheme_json)
from .poly import (EulerSection, HomogPoly, all_monomials, gen_jd, mono_mul,
                   euler_alpha)
from .rng import Rng

PASS = "PASS"
FAIL = "FAIL"
INDETERMINATE = "INDETERMINATE"
INFEASIBLE = "INFEASIBLE"


@dataclass
class LemmaReport:
    """Structured outcome of one verifier run."""

    lemma: str
    n: int
    d: int
    seed: int
    verdict: str
    dims: dict
    witness: dict | None = None
    elapsed_ms: int = 0
    params: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        obj = {
            "lemma": self.lemma,
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "verdict": self.verdict,
            "dims": self.dims,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.params:
            obj["params"] = self.params
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def protocol_verdict(flags) -> str:
    flags = list(flags)
    if not flags:
        return INDETERMINATE
    if all(flags):
        return PASS
    if not any(flags):
        return FAIL
    return INDETERMINATE


def _vec_json(v):
    return [format_fraction(x) for x in v]


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def now_ms(self) -> int:
        return int((time.perf_counter() - self.t0) * 1000)

    def __exit__(self, *exc):
        self.ms = self.now_ms()
        return False


# ---------------------------------------------------------------------------
# random construction helpers

def _nonzero_sample(rng: Rng, bound: int = 9) -> Fraction:
    while True:
        q = sample_rational(rng, bound)
        if q != 0:
            return q


def _random_point(nvars: int, rng: Rng, bound: int = 9) -> ProjPoint:
    while True:
        coords = [sample_rational(rng, bound) for _ in range(nvars)]
        if any(x != 0 for x in coords):
            return ProjPoint(coords)


def _random_generic_scheme(n: int, rng: Rng, attempts: int = 60) -> LengthTwoScheme:
    nv = n + 2
    for _ in range(attempts):
        p1 = _random_point(nv, rng)
        p2 = _random_point(nv, rng)
        if p1 == p2 or p1.is_coordinate_point() or p2.is_coordinate_point():
            continue
        z = LengthTwoScheme(p1, p2)
        if classify(z).is_generic():
            return z
    raise NonGenericScheme("failed to sample a generic length-2 scheme")


def _special_scheme(n: int, rng: Rng):
    """Special but not very special scheme in normalized position.

    Points (1, u, c_2 u, ..., c_{n+1} u) and (1, v, c_2 v, ...): every
    coordinate past x_1 restricts to a multiple of x_1, with the nonzero
    multipliers packed first so the normalization permutation is trivial.
    Returns (scheme, {j: c_j}).
    """
    u = _nonzero_sample(rng)
    v = _nonzero_sample(rng)
    while v == u:
        v = _nonzero_sample(rng)
    k = rng.randint(1, n)
    cmap = {}
    for j in range(2, n + 2):
        cmap[j] = _nonzero_sample(rng) if j < 2 + k else ZERO
    p1 = ProjPoint([Fraction(1), u] + [cmap[j] * u for j in range(2, n + 2)])
    p2 = ProjPoint([Fraction(1), v] + [cmap[j] * v for j in range(2, n + 2)])
    return LengthTwoScheme(p1, p2), cmap


def _very_special_scheme(n: int, rng: Rng) -> LengthTwoScheme:
    u = _nonzero_sample(rng)
    v = _nonzero_sample(rng)
    while v == u:
        v = _nonzero_sample(rng)
    zeros = [ZERO] * n
    return LengthTwoScheme(ProjPoint([Fraction(1), u] + zeros),
                           ProjPoint([Fraction(1), v] + zeros))


def _pair_independent(z: LengthTwoScheme, i: int, j: int) -> bool:
    a = (z.p1.coords[i], z.p2.coords[i])
    b = (z.p1.coords[j], z.p2.coords[j])
    return a[0] * b[1] - a[1] * b[0] != 0


def _generic_scheme_three_independent(n: int, rng: Rng) -> LengthTwoScheme:
    """Generic scheme where x0, x1, x2 restrict pairwise independently."""
    for _ in range(60):
        z = _random_generic_scheme(n, rng)
        if (_pair_independent(z, 0, 1) and _pair_independent(z, 1, 2)
                and _pair_independent(z, 0, 2)):
            return z
    raise NonGenericScheme("failed to sample the three-independent shape")


def _generic_scheme_split_shape(n: int, rng: Rng) -> LengthTwoScheme:
    """Generic scheme where x2 is a multiple of x0 and x3 of x1 on Z, and
    every later coordinate is a multiple of x0 or x1."""
    if n < 2:
        raise ValueError("needs at least 4 coordinates beyond the spanning pair")
    for _ in range(60):
        u1 = _nonzero_sample(rng)
        u2 = _nonzero_sample(rng)
        if u1 == u2:
            continue
        a = _nonzero_sample(rng)
        bmul = _nonzero_sample(rng)
        c1 = [Fraction(1), u1, a, bmul * u1]
        c2 = [Fraction(1), u2, a, bmul * u2]
        for k in range(4, n + 2):
            e = _nonzero_sample(rng)
            if k % 2 == 0:
                c1.append(e)
                c2.append(e)
            else:
                c1.append(e * u1)
                c2.append(e * u2)
        z = LengthTwoScheme(ProjPoint(c1), ProjPoint(c2))
        if classify(z).is_generic():
            return z
    raise NonGenericScheme("failed to sample the split shape")


def _on_member(b: DeformationPoint, z: LengthTwoScheme) -> bool:
    f = b.f_poly()
    return f.evaluate(z.p1.coords) == 0 and f.evaluate(z.p2.coords) == 0


def _first_outside(big: Subspace, small: Subspace):
    for v in big.basis_vectors():
        if not small.contains_vector(v):
            return v
    return None


# ---------------------------------------------------------------------------
# basis of the distinguished quadratic sections

def verify_w_basis(n: int, d: int, rng: Rng, trials: int = 5) -> LemmaReport:
    """The sections w_ijk contract into the degree-(d+1) deformation span,
    are independent, and together with the Euler-field multiples exhaust the
    sections that do so (modulo multiples of the defining polynomial)."""
    with _Clock() as clock:
        shape = FamilyShape(n, d)
        nv = n + 2
        deg2 = all_monomials(nv, 2)
        jd1 = gen_jd(n, d + 1)
        deg_d1 = all_monomials(nv, d + 1)
        nonj = [m for m in deg_d1 if m not in jd1.index]
        nonj_index = {m: r for r, m in enumerate(nonj)}
        expected_basis = nv * comb(nv, 2)
        expected_total = expected_basis + nv
        n_unknowns = nv * len(deg2)
        alpha = euler_alpha(n)

        flags = []
        witness = None
        dims = {}
        for t in range(trials):
            sub = rng.split("trial%d" % t)
            b = random_deformation(shape, sub)
            omegas = omega_basis(b)
            etas = [eta(b, w) for w in omegas]
            membership = all(e.support_in(jd1) for e in etas)

            omega_vecs = [w.coeff_vector(deg2) for w in omegas]
            rank_omega = Matrix(omega_vecs).rank()

            fpoly = b.f_poly()
            alpha_secs = [EulerSection([comp * HomogPoly.variable(nv, i)
                                        for comp in alpha.components])
                          for i in range(nv)]
            alpha_vecs = [s.coeff_vector(deg2) for s in alpha_secs]
            euler_ok = all(
                eta(b, alpha_secs[i]) == (HomogPoly.variable(nv, i) * fpoly) * d
                for i in range(nv))
            rank_family = Matrix(omega_vecs + alpha_vecs).rank()

            # kernel of (eta followed by the quotient collapsing the
            # deformation span and multiples of F): computed on the
            # (n+2)^2 coordinates outside the deformation index set
            partials = b.f_partials()
            rows = [[ZERO] * (n_unknowns + nv) for _ in nonj]
            for j in range(nv):
                base = j * len(deg2)
                for mi, mu in enumerate(deg2.members):
                    col = base + mi
                    for mm, c in partials[j].terms.items():
                        r = nonj_index.get(mono_mul(mu, mm))
                        if r is not None:
                            rows[r][col] += c
            for i in range(nv):
                col = n_unknowns + i
                exps_i = tuple(1 if j == i else 0 for j in range(nv))
                for mm, c in fpoly.terms.items():
                    r = nonj_index.get(mono_mul(mm, exps_i))
                    if r is not None:
                        rows[r][col] += c
            stacked = Matrix(rows, ncols=n_unknowns + nv)
            f_block_rank = Matrix([row[n_unknowns:] for row in rows],
                                  ncols=nv).rank()
            kernel_total = (n_unknowns + nv) - stacked.rank()

            ok = (membership and rank_omega == expected_basis == len(omegas)
                  and euler_ok and f_block_rank == nv
                  and rank_family == expected_total
                  and kernel_total == expected_total)
            flags.append(ok)
            if not dims:
                dims = {"basis": len(omegas), "kernel_total": kernel_total}
            if not ok and witness is None:
                witness = {"trial": t, "reason": "membership" if not membership else "dimension",
                           "rank_basis": rank_omega, "kernel_total": kernel_total,
                           "b": json.loads(b.to_json())["t"]}
    return LemmaReport("w-basis", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


# ---------------------------------------------------------------------------
# kernel of restriction on the deformation span

def _xi_matrix_on(monomials, line: Line, nv: int) -> Matrix:
    """Columns: restriction of each monomial to the line."""
    cols = []
    for m in monomials:
        poly = HomogPoly.monomial(nv, m)
        cols.append(restrict_poly(poly, line).vector())
    return Matrix.from_columns(cols)


def _ideal_product_vectors(lin_forms, gens, jd, nv):
    """Coefficient vectors (on jd) of l*g for l in lin_forms, g in gens."""
    out = []
    for lv in lin_forms:
        lpoly = HomogPoly(nv, 1, {tuple(1 if j == i else 0 for j in range(nv)): c
                                  for i, c in enumerate(lv) if c != 0})
        for g in gens:
            prod = lpoly * HomogPoly.monomial(nv, g)
            out.append(prod.coeffs_on(jd))
    return out


def verify_kernel_generic(n: int, d: int, rng: Rng, trials: int = 5,
                          z: LengthTwoScheme | None = None) -> LemmaReport:
    """For a generic scheme, the part of the deformation span vanishing on
    the line is exactly (linear forms of Z) * (deformation span one degree
    down), and the quotient maps isomorphically onto the degree-d forms on
    the line (dimension d+1)."""
    with _Clock() as clock:
        shape = FamilyShape(n, d)
        nv = n + 2
        jd = shape.jd
        jdm1 = shape.monomials(d - 1)
        if z is not None and not classify(z).is_generic():
            return LemmaReport("kernel-generic", n, d, rng.origin_seed, INDETERMINATE,
                               {}, {"reason": "scheme is %s; claim is scoped to generic"
                                    % classify(z).tag},
                               clock.now_ms(), {"skipped": True})
        flags = []
        witness = None
        dims = {}
        try:
            for t in range(trials):
                sub = rng.split("trial%d" % t)
                zt = z if z is not None else _random_generic_scheme(n, sub)
                b = sample_b_through(shape, [zt.p1, zt.p2], sub)
                assert _on_member(b, zt)
                xi = _xi_matrix_on(jd, zt.line, nv)
                k2 = kernel_basis(xi)
                k1 = Subspace.from_vectors(
                    len(jd),
                    _ideal_product_vectors(iz_linear(zt).basis_vectors(),
                                           jdm1.members, jd, nv))
                qrank = xi.rank()
                ok = (k1 == k2 and qrank == d + 1)
                flags.append(ok)
                if not dims:
                    dims = {"lhs": k1.dim, "rhs": k2.dim, "quotient": qrank}
                if not ok and witness is None:
                    bad = _first_outside(k2, k1)
                    witness = {"trial": t, "reason": "subspace mismatch",
                               "lhs": k1.dim, "rhs": k2.dim,
                               "scheme": scheme_json(zt),
                               "vector": _vec_json(bad) if bad else None}
        except InfeasibleSystem as exc:
            return LemmaReport("kernel-generic", n, d, rng.origin_seed, INFEASIBLE,
                               dims, {"reason": str(exc)}, clock.now_ms(), {})
    return LemmaReport("kernel-generic", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


def verify_kernel_special(n: int, d: int, rng: Rng, trials: int = 5,
                          z: LengthTwoScheme | None = None) -> LemmaReport:
    """For a special-but-not-very-special scheme in normalized position, the
    kernel of restriction on the deformation span is the ideal part plus the
    explicit generators x0^(d-2) x_i (x_j - c_j x_1)."""
    with _Clock() as clock:
        shape = FamilyShape(n, d)
        nv = n + 2
        jd = shape.jd
        jdm1 = shape.monomials(d - 1)
        provided = None
        if z is not None:
            cls = classify(z)
            if cls.tag != "special":
                return LemmaReport("kernel-special", n, d, rng.origin_seed, INDETERMINATE,
                                   {}, {"reason": "scheme is %s; claim needs special but "
                                        "not very special" % cls.tag},
                                   clock.now_ms(), {"skipped": True})
            p1 = permute_point(z.p1, cls.perm)
            p2 = permute_point(z.p2, cls.perm)
            znorm = LengthTwoScheme(p1, p2)
            cmap = {}
            for j in range(2, nv):
                cj = p1.coords[j] / p1.coords[1]
                assert p2.coords[j] == cj * p2.coords[1]
                cmap[j] = cj
            provided = (znorm, cmap)
        flags = []
        witness = None
        dims = {}
        try:
            for t in range(trials):
                sub = rng.split("trial%d" % t)
                zt, cmap = provided if provided else _special_scheme(n, sub)
                b = sample_b_through(shape, [zt.p1, zt.p2], sub)
                assert _on_member(b, zt)
                xi = _xi_matrix_on(jd, zt.line, nv)
                lhs = kernel_basis(xi)
                vectors = _ideal_product_vectors(iz_linear(zt).basis_vectors(),
                                                 jdm1.members, jd, nv)
                extra = 0
                x1 = HomogPoly.variable(nv, 1)
                for i in range(1, nv):
                    xi_var = HomogPoly.variable(nv, i)
                    for j in range(2, nv):
                        lead = [0] * nv
                        lead[0] = d - 2
                        base = HomogPoly.monomial(nv, tuple(lead))
                        gen = base * xi_var * (HomogPoly.variable(nv, j) - x1 * cmap[j])
                        vectors.append(gen.coeffs_on(jd))
                        extra += 1
                rhs = Subspace.from_vectors(len(jd), vectors)
                ok = lhs == rhs
                flags.append(ok)
                if not dims:
                    dims = {"lhs": lhs.dim, "rhs": rhs.dim, "extra_generators": extra}
                if not ok and witness is None:
                    bad = _first_outside(lhs, rhs) or _first_outside(rhs, lhs)
                    witness = {"trial": t, "reason": "subspace mismatch",
                               "lhs": lhs.dim, "rhs": rhs.dim,
                               "scheme": scheme_json(zt),
                               "vector": _vec_json(bad) if bad else None}
        except InfeasibleSystem as exc:
            return LemmaReport("kernel-special", n, d, rng.origin_seed, INFEASIBLE,
                               dims, {"reason": str(exc)}, clock.now_ms(), {})
    return LemmaReport("kernel-special", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


# ---------------------------------------------------------------------------
# point-ideal intersection inside the next deformation span

def verify_point_ideal(n: int, d: int, rng: Rng, p: ProjPoint | None = None,
                       trials: int = 5) -> LemmaReport:
    """Vanishing at one non-coordinate point cuts the degree-(d+1)
    deformation span down to (linear forms at p) * (deformation span), of
    codimension exactly one; the same space splits through any two-point
    scheme supported at p plus one extra linear form."""
    with _Clock() as clock:
        nv = n + 2
        if p is None:
            p = ProjPoint([Fraction(1)] * nv)
        if p.is_coordinate_point():
            raise CoordinatePointError("the statement excludes coordinate points")
        jd = gen_jd(n, d)
        jd1 = gen_jd(n, d + 1)
        ambient = len(jd1)
        eval_row = [_eval_mono(m, p.coords) for m in jd1]
        lhs = kernel_basis(Matrix([eval_row]))
        ip = ip_linear(p)
        rhs = Subspace.from_vectors(
            ambient, _ideal_product_vectors(ip.basis_vectors(), jd.members, jd1, nv))
        ok_point = lhs == rhs and lhs.dim == ambient - 1

        flags = []
        witness = None
        for t in range(trials):
            sub = rng.split("trial%d" % t)
            q = _random_point(nv, sub)
            while q == p or q.is_coordinate_point():
                q = _random_point(nv, sub)
            zt = LengthTwoScheme(p, q)
            iz = iz_linear(zt)
            s = next(v for v in ip.basis_vectors() if not iz.contains_vector(v))
            vectors = _ideal_product_vectors(iz.basis_vectors(), jd.members, jd1, nv)
            vectors += _ideal_product_vectors([s], jd.members, jd1, nv)
            split = Subspace.from_vectors(ambient, vectors)
            ok = ok_point and split == lhs
            flags.append(ok)
            if not ok and witness is None:
                bad = _first_outside(lhs, split) or _first_outside(split, lhs)
                witness = {"trial": t,
                           "reason": "point part" if not ok_point else "split part",
                           "vector": _vec_json(bad) if bad else None}
        dims = {"lhs": lhs.dim, "rhs": rhs.dim, "codim": ambient - lhs.dim}
    return LemmaReport("point-ideal", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


def _eval_mono(m, coords):
    v = Fraction(1)
    for x, e in zip(coords, m):
        if e:
            v *= x ** e
    return v


# ---------------------------------------------------------------------------
# images of the quadratic sections on the line

def _restricted_vector(sec: EulerSection, line: Line):
    vec = []
    for bf in restrict_section(sec, line):
        vec.extend(bf.vector())
    return vec


def _alpha_line_vectors(n: int, line: Line):
    """Restrictions of the Euler field times x0 and x1: they span the
    rescaling directions (x0, x1 restrict independently whenever the two
    points differ in those coordinates)."""
    nv = n + 2
    alpha = euler_alpha(n)
    out = []
    for i in (0, 1):
        sec = EulerSection([c * HomogPoly.variable(nv, i) for c in alpha.components])
        out.append(_restricted_vector(sec, line))
    return out


def verify_xi_special(n: int, d: int, rng: Rng, trials: int = 5) -> LemmaReport:
    """Restriction of the quadratic sections to the line of a special
    scheme: contains the listed monomial fields and fills the full quotient
    by the rescaling directions; for a very special scheme it equals the
    explicit (3n+2)-dimensional span."""
    with _Clock() as clock:
        if n < 2:
            raise ValueError("needs n >= 2")
        shape = FamilyShape(n, d)
        nv = n + 2
        amb = 3 * nv
        flags = []
        witness = None
        dims = {}
        try:
            for t in range(trials):
                sub = rng.split("trial%d" % t)
                zs, _ = _special_scheme(n, sub)
                b = sample_b_through(shape, [zs.p1, zs.p2], sub)
                omeg = omega_basis(b)
                svecs = [_restricted_vector(w, zs.line) for w in omeg]
                s_img = Subspace.from_vectors(amb, svecs)
                x0 = HomogPoly.variable(nv, 0)
                x1 = HomogPoly.variable(nv, 1)
                listed = [EulerSection.single(nv, i, x1 * x1) for i in range(nv)]
                listed += [EulerSection.single(nv, j, x0 * x1) for j in range(1, nv)]
                member_ok = all(
                    s_img.contains_vector(_restricted_vector(sec, zs.line))
                    for sec in listed)
                rescale = Subspace.from_vectors(amb, _alpha_line_vectors(n, zs.line))
                assert rescale.dim == 2  # x0, x1 restrict independently here
                total = s_img.sum(rescale)
                quotient_rank = total.dim - rescale.dim
                surjective = total.dim == amb

                zv = _very_special_scheme(n, sub)
                bv = sample_b_through(shape, [zv.p1, zv.p2], sub)
                omev = omega_basis(bv)
                vs_img = Subspace.from_vectors(
                    amb, [_restricted_vector(w, zv.line) for w in omev])
                explicit = []
                for k in range(2, nv):
                    explicit.append(EulerSection.single(nv, k, x0 * x1))
                for k in range(1, nv):
                    explicit.append(
                        EulerSection.single(nv, k, x0 * x0)
                        - EulerSection.single(nv, 0, (x0 * x1) * c_coeff(bv, 0, 1, k)))
                for k in range(nv):
                    if k == 1:
                        continue
                    explicit.append(
                        EulerSection.single(nv, k, x1 * x1)
                        - EulerSection.single(nv, 1, (x0 * x1) * c_coeff(bv, 1, 0, k)))
                explicit_span = Subspace.from_vectors(
                    amb, [_restricted_vector(s, zv.line) for s in explicit])
                vs_ok = vs_img == explicit_span and vs_img.dim == 3 * n + 2

                ok = member_ok and surjective and vs_ok
                flags.append(ok)
                if not dims:
                    dims = {"target_quotient": amb - rescale.dim,
                            "quotient_rank": quotient_rank,
                            "xi_w_special": s_img.dim,
                            "xi_w_very_special": vs_img.dim}
                if not ok and witness is None:
                    witness = {"trial": t,
                               "reason": ("listed field missing" if not member_ok else
                                          "quotient not filled" if not surjective else
                                          "very-special span mismatch"),
                               "quotient_rank": quotient_rank,
                               "very_special_dim": vs_img.dim,
                               "scheme": scheme_json(zs if not (member_ok and surjective)
                                                     else zv)}
        except InfeasibleSystem as exc:
            return LemmaReport("xi-special", n, d, rng.origin_seed, INFEASIBLE,
                               dims, {"reason": str(exc)}, clock.now_ms(), {})
    return LemmaReport("xi-special", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


def verify_xi_generic(n: int, d: int, rng: Rng, trials: int = 5) -> LemmaReport:
    """For generic schemes the quadratic sections restrict onto the whole
    3(n+2)-dimensional space of quadratic sections on the line; both shapes
    of generic scheme are exercised."""
    with _Clock() as clock:
        if n < 2:
            raise ValueError("needs n >= 2")
        shape = FamilyShape(n, d)
        nv = n + 2
        amb = 3 * nv
        flags = []
        witness = None
        dims = {}
        try:
            for t in range(trials):
                sub = rng.split("trial%d" % t)
                ok = True
                ranks = []
                for maker in (_generic_scheme_three_independent,
                              _generic_scheme_split_shape):
                    zt = maker(n, sub)
                    b = sample_b_through(shape, [zt.p1, zt.p2], sub)
                    vecs = [_restricted_vector(w, zt.line) for w in omega_basis(b)]
                    rk = Matrix(vecs).rank()
                    ranks.append(rk)
                    ok = ok and rk == amb
                flags.append(ok)
                if not dims:
                    dims = {"rank": ranks[0], "target": amb, "basis": nv * comb(nv, 2)}
                if not ok and witness is None:
                    witness = {"trial": t, "reason": "restriction not surjective",
                               "ranks": ranks, "target": amb}
        except InfeasibleSystem as exc:
            return LemmaReport("xi-generic", n, d, rng.origin_seed, INFEASIBLE,
                               dims, {"reason": str(exc)}, clock.now_ms(), {})
    return LemmaReport("xi-generic", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials})


# ---------------------------------------------------------------------------
# the self-contained coefficient systems

_SYSTEM_KEYS = [(0, 1, 3), (0, 2, 3), (1, 0, 3), (1, 2, 3), (2, 0, 3), (2, 1, 3),
                (0, 1, 1), (0, 1, 2), (0, 2, 2), (1, 0, 0), (1, 0, 2), (1, 2, 2),
                (2, 0, 0), (2, 0, 1), (2, 1, 1)]


def _draw_coeffs(rng: Rng):
    """Random coefficient table c[i, j, k], symmetric in the last two slots."""
    c = {}
    for (i, j, k) in _SYSTEM_KEYS:
        v = sample_rational(rng, 50)
        c[(i, j, k)] = v
        c[(i, k, j)] = v
    return c


def _nine_by_six(c) -> Matrix:
    """The reduced 9-equation system in the unknowns a_i x_i^2 d/dx_j,
    ordered (01, 02, 10, 12, 20, 21)."""
    z = ZERO
    one = Fraction(1)
    rows = [
        [z, z, c[(0, 1, 3)], z, c[(0, 2, 3)], z],
        [c[(1, 0, 3)], z, z, z, z, c[(1, 2, 3)]],
        [z, c[(2, 0, 3)], z, c[(2, 1, 3)], z, z],
        [one, z, c[(0, 1, 1)], z, c[(0, 2, 1)], z],
        [z, one, c[(0, 1, 2)], z, c[(0, 2, 2)], z],
        [c[(1, 0, 0)], z, one, z, z, c[(1, 2, 0)]],
        [c[(1, 0, 2)], z, z, one, z, c[(1, 2, 2)]],
        [z, c[(2, 0, 0)], z, c[(2, 1, 0)], one, z],
        [z, c[(2, 0, 1)], z, c[(2, 1, 1)], z, one],
    ]
    return Matrix(rows)


def _two_by_two(c022, c200, a) -> Matrix:
    """Degenerate-pair system in x0^2 d/dx_0 and x0^2 d/dx_2 when x2 = a*x0
    on the scheme; singular exactly when c022*c200 = 1."""
    return Matrix([[-a * c022, Fraction(1)], [a * a, -a * c200]])


def verify_generic_systems(rng: Rng, draws: int = 5, singular_draws: int = 5,
                           n: int = 2, d: int = 6) -> LemmaReport:
    """The 9x6 coefficient system has trivial kernel for general
    coefficients; the 2x2 determinant pair is nonzero for general draws; and
    the degenerate-pair system is singular exactly on c022*c200 = 1."""
    with _Clock() as clock:
        flags = []
        witness = None
        max_kernel = 0
        for t in range(draws):
            sub = rng.split("draw%d" % t)
            c = _draw_coeffs(sub)
            m = _nine_by_six(c)
            kdim = 6 - m.rank()
            max_kernel = max(max_kernel, kdim)
            det2 = (c[(1, 0, 2)] * c[(0, 1, 3)] - c[(0, 1, 2)] * c[(1, 0, 3)])
            a = _nonzero_sample(sub)
            pair = _two_by_two(c[(0, 2, 2)], c[(2, 0, 0)], a)
            singular = pair.rank() < 2
            predicted = c[(0, 2, 2)] * c[(2, 0, 0)] == 1
            ok = kdim == 0 and det2 != 0 and singular == predicted
            flags.append(ok)
            if not ok and witness is None:
                witness = {"draw": t, "kernel_dim": kdim,
                           "det_pair": format_fraction(det2)}
        forced_ok = True
        for t in range(singular_draws):
            sub = rng.split("singular%d" % t)
            c022 = _nonzero_sample(sub, 20)
            a = _nonzero_sample(sub)
            pair = _two_by_two(c022, 1 / c022, a)
            kdim = 2 - pair.rank()
            if kdim != 1:
                forced_ok = False
                if witness is None:
                    witness = {"singular_draw": t, "kernel_dim": kdim,
                               "c022": format_fraction(c022)}
        verdict = protocol_verdict(flags)
        if not forced_ok:
            verdict = FAIL
        dims = {"system_rows": 9, "system_cols": 6, "draws": draws,
                "singular_draws": singular_draws, "kernel_dim_max": max_kernel}
    return LemmaReport("systems", n, d, rng.origin_seed, verdict, dims,
                       witness, clock.ms, {})


# ---------------------------------------------------------------------------
# secant-line obstruction

def secant_obstruction(b: DeformationPoint, z: LengthTwoScheme,
                       seed: int = 0) -> LemmaReport:
    """Exact comparison of the three equivalent descriptions of when the
    induced map on the line is well defined: kernel containment, linear
    dependence of the restricted polynomial against its radial derivative,
    and the restriction being a pure two-root monomial.  PASS means the
    three agree (whether all hold or all fail)."""
    with _Clock() as clock:
        shape = b.shape
        nv, d = shape.nvars, shape.d
        cls = classify(z)
        if not cls.is_generic():
            raise NonGenericScheme("the obstruction computation assumes a generic scheme")
        if not _on_member(b, z):
            raise ValueError("the scheme does not lie on the family member")
        line = z.line
        fpoly = b.f_poly()
        xif = restrict_poly(fpoly, line)
        if xif.is_zero():
            raise LineInHypersurface("the member contains the line")

        # evaluation map to the tangent spaces at the two points: a section
        # u kills it iff u(p) is radial at both points
        rows = []
        for pt_idx, pt in ((0, z.p1), (1, z.p2)):
            for i in range(nv):
                for j in range(i + 1, nv):
                    row = [ZERO] * (2 * nv)
                    row[2 * i + pt_idx] = pt.coords[j]
                    row[2 * j + pt_idx] = -pt.coords[i]
                    rows.append(row)
        ker_rho = kernel_basis(Matrix(rows, ncols=2 * nv))

        partial_restrictions = [restrict_poly(fpoly.partial(i), line) for i in range(nv)]
        cols = []
        for i in range(nv):
            base = partial_restrictions[i].coeffs
            cols.append(list(base) + [ZERO])      # s * dF/dx_i restricted
            cols.append([ZERO] + list(base))      # t * dF/dx_i restricted
        etahat = Matrix.from_columns(cols)
        ker_eta = kernel_basis(etahat)

        cond_kernel = ker_rho.contains(ker_eta)
        cond_pair = Matrix([list(xif.coeffs),
                            list(xif.t_partial_t().coeffs)]).rank() <= 1
        idx = xif.monomial_index()
        cond_monomial = idx is not None and 0 < idx < d

        alpha_vec = []
        for i in range(nv):
            alpha_vec.extend([z.p1.coords[i], z.p2.coords[i]])
        rho_ok = ker_rho.dim == 2 and ker_rho.contains_vector(alpha_vec)
        overlap = ker_rho.intersect(ker_eta)
        agree = cond_kernel == cond_pair == cond_monomial
        dims = {
            "ker_rho": ker_rho.dim,
            "ker_etahat": ker_eta.dim,
            "overlap": overlap.dim,
            "euler_excess": 2 * nv - (d + 1),
            "well_defined": int(cond_kernel),
            "dependent_pair": int(cond_pair),
            "two_point_line": int(cond_monomial),
            "distinct_roots": distinct_root_count(xif),
        }
        verdict = PASS if (agree and rho_ok) else FAIL
        witness = None
        if verdict == FAIL:
            witness = {"reason": "equivalent conditions disagree" if not agree
                       else "kernel of the evaluation map misbehaves",
                       "conditions": [int(cond_kernel), int(cond_pair), int(cond_monomial)],
                       "xi_f": _vec_json(xif.coeffs)}
    return LemmaReport("secant", shape.n, d, seed, verdict, dims, witness, clock.ms, {})


def _b_with_line_power(shape: FamilyShape, z: LengthTwoScheme, m: int,
                       rng: Rng, attempts: int = 20) -> DeformationPoint:
    """Family member through Z whose restriction to the line is a nonzero
    multiple of s^(d-m) t^m."""
    d = shape.d
    nv = shape.nvars
    restricted = [restrict_poly(HomogPoly.monomial(nv, f), z.line).coeffs
                  for f in shape.jd]
    fermat = DeformationPoint.fermat(shape).f_poly()
    fermat_coeffs = restrict_poly(fermat, z.line).coeffs
    rows = []
    rhs = []
    for k in range(d + 1):
        if k == m:
            continue
        rows.append([col[k] for col in restricted])
        rhs.append(-fermat_coeffs[k])
    mat = Matrix(rows, ncols=shape.N)
    for a in range(attempts):
        sol = random_solution(mat, rhs, rng.split("power%d" % a), bound=50)
        if sol is None:
            raise InfeasibleSystem("line-power conditions are inconsistent")
        b = DeformationPoint(shape, dict(zip(shape.jd, sol)))
        xif = restrict_poly(b.f_poly(), z.line)
        if xif.coeffs[m] != 0:
            return b
    raise InfeasibleSystem("could not reach a nonzero top coefficient")


def verify_secant(n: int, d: int, rng: Rng, trials: int = 5) -> LemmaReport:
    """Random secants with three or more intersection points must come out
    NOT well defined; constructed two-point lines must come out well defined
    with a nontrivial shared kernel; the three conditions agree throughout."""
    with _Clock() as clock:
        shape = FamilyShape(n, d)
        flags = []
        witness = None
        dims = {}
        m = d // 2
        try:
            for t in range(trials):
                sub = rng.split("trial%d" % t)
                rep_r = None
                for _ in range(40):
                    zt = _random_generic_scheme(n, sub)
                    b = sample_b_through(shape, [zt.p1, zt.p2], sub)
                    xif = restrict_poly(b.f_poly(), zt.line)
                    if not xif.is_zero() and distinct_root_count(xif) >= 3:
                        rep_r = secant_obstruction(b, zt, seed=rng.origin_seed)
                        break
                if rep_r is None:
                    return LemmaReport(
                        "secant", n, d, rng.origin_seed, INDETERMINATE, dims,
                        {"reason": "no secant with >= 3 intersection points "
                                   "found in 40 draws"},
                        clock.now_ms(), {"trials": trials})
                zc = _random_generic_scheme(n, sub)
                bc = _b_with_line_power(shape, zc, m, sub)
                rep_c = secant_obstruction(bc, zc, seed=rng.origin_seed)
                ok = (rep_r.verdict == PASS and rep_r.dims["well_defined"] == 0
                      and rep_c.verdict == PASS and rep_c.dims["well_defined"] == 1
                      and rep_c.dims["overlap"] >= 1)
                flags.append(ok)
                if not dims:
                    dims = dict(rep_c.dims)
                    dims["random_distinct_roots"] = rep_r.dims["distinct_roots"]
                if not ok and witness is None:
                    witness = {"trial": t,
                               "random": rep_r.dims, "constructed": rep_c.dims}
        except (InfeasibleSystem, LineInHypersurface) as exc:
            return LemmaReport("secant", n, d, rng.origin_seed, INFEASIBLE,
                               dims, {"reason": str(exc)}, clock.now_ms(), {})
    return LemmaReport("secant", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials, "m": m})


# ---------------------------------------------------------------------------
# incidence count and tangency deformations

def incidence_dimension(n: int, d: int, m: int) -> int:
    """Dimension of the two-point tangency configurations minus the
    dimension of the space of hypersurfaces: lines carry 2n parameters, the
    two points 2 more, and each configuration imposes d conditions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < m < d:
        raise ValueError("multiplicity must satisfy 0 < m < d")
    lines = 2 * n
    return lines + 2 - d


def verify_incidence(n: int, d: int, m: int, seed: int = 0) -> LemmaReport:
    with _Clock() as clock:
        offset = incidence_dimension(n, d, m)
        dims = {"offset": offset, "m": m}
    return LemmaReport("incidence", n, d, seed, PASS, dims, None, clock.ms, {"m": m})


def tangency_deformation_dim(fpoly: HomogPoly, line: Line, m: int,
                             seed: int = 0) -> LemmaReport:
    """First-order deformations of the line preserving the two-root
    tangency pattern: unknowns are normal motions (n binary linear forms),
    constrained so the derivative of the restricted polynomial stays inside
    the tangent space of the multiplicity stratum (the pure monomial and its
    two root-moving neighbours).  Verdict PASS means the count is zero, i.e.
    the configuration is rigid."""
    with _Clock() as clock:
        d = fpoly.degree
        nv = fpoly.nvars
        xif = restrict_poly(fpoly, line)
        idx = xif.monomial_index()
        if idx is None or idx != m or not 0 < m < d:
            raise NotInTangencyStratum(
                "restriction is not a nonzero multiple of s^(d-m) t^m")
        rows, pivots = Matrix([list(line.p.coords), list(line.q.coords)]).rref()
        normals = [i for i in range(nv) if i not in pivots]
        cols = []
        for i in normals:
            base = restrict_poly(fpoly.partial(i), line).coeffs
            cols.append(list(base) + [ZERO])
            cols.append([ZERO] + list(base))
        keep = [k for k in range(d + 1) if k not in (m - 1, m, m + 1)]
        mat = Matrix([[col[k] for col in cols] for k in keep], ncols=2 * len(normals))
        dim = 2 * len(normals) - mat.rank()
        dims = {"deformations": dim, "unknowns": 2 * len(normals), "m": m}
        verdict = PASS if dim == 0 else FAIL
        witness = None
        if dim > 0:
            witness = {"reason": "the line moves inside the stratum",
                       "moving_deformation": _vec_json(mat.kernel_vectors()[0]),
                       "normal_coordinates": normals}
    return LemmaReport("tangency", nv - 2, d, seed, verdict, dims, witness,
                       clock.ms, {"m": m})


def verify_tangency(n: int, d: int, m: int, rng: Rng, trials: int = 5) -> LemmaReport:
    """A random member of the stratum through the coordinate line is rigid
    (count zero); the cone-like member with no transverse terms is not."""
    with _Clock() as clock:
        nv = n + 2
        if not 0 < m < d:
            raise ValueError("multiplicity must satisfy 0 < m < d")
        line = Line(ProjPoint([1] + [0] * (nv - 1)),
                    ProjPoint([0, 1] + [0] * (nv - 2)))
        lead_exps = [0] * nv
        lead_exps[0] = d - m
        lead_exps[1] = m
        lead = HomogPoly.monomial(nv, tuple(lead_exps))
        degenerate = tangency_deformation_dim(lead, line, m, seed=rng.origin_seed)
        deg_dm1 = all_monomials(nv, d - 1)
        flags = []
        witness = None
        dims = {}
        for t in range(trials):
            sub = rng.split("trial%d" % t)
            f = lead
            for i in range(2, nv):
                g = HomogPoly(nv, d - 1,
                              {mm: sample_rational(sub, 20) for mm in deg_dm1.members})
                f = f + HomogPoly.variable(nv, i) * g
            rep = tangency_deformation_dim(f, line, m, seed=rng.origin_seed)
            ok = rep.dims["deformations"] == 0 and degenerate.dims["deformations"] > 0
            flags.append(ok)
            if not dims:
                dims = {"deformations": rep.dims["deformations"],
                        "degenerate_deformations": degenerate.dims["deformations"],
                        "unknowns": rep.dims["unknowns"], "m": m}
            if not ok and witness is None:
                witness = {"trial": t, "deformations": rep.dims["deformations"],
                           "degenerate": degenerate.dims["deformations"]}
    return LemmaReport("tangency", n, d, rng.origin_seed, protocol_verdict(flags),
                       dims, witness, clock.ms, {"trials": trials, "m": m})
