"""Exact local intersection numbers of holomorphic polynomial map germs.

A germ is a pair of polynomials (p, q) with Gaussian-rational coefficients,
both vanishing at the origin, viewed as a map germ into complex 2-space.
The local intersection number of two germs is the order of vanishing at
z = 0 of the resultant eliminating the second curve's parameter; the
double-point count of a single germ uses the same resultant applied to the
divided differences (p(z)-p(w))/(z-w), (q(z)-q(w))/(z-w).  Everything on
this path is computed in exact arithmetic, since the answers are integers
and feed positivity arguments where an off-by-one is fatal.

A second, independent path perturbs the germ, locates the finitely many
intersection parameters as polynomial roots via companion matrices, and
counts those inside a small disk in floating point.  The two paths are
checked against each other throughout the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from sympy import I, Poly, Rational, gcd as sym_gcd, symbols

from .errors import InputError

Z, W = symbols("z w")
_DOMAIN = "QQ_I"

ROOT_EDGE_TOL = 1e-6
COEFF_TRIM_TOL = 1e-11
MAX_EPSILON_REDRAWS = 10


def gaussian(re, im=0):
    """Exact Gaussian-rational scalar from rational real/imaginary parts."""
    return Rational(re) + Rational(im) * I


def _to_gaussian(value):
    if isinstance(value, (int, sympy.Integer)):
        return sympy.Integer(value)
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    expr = sympy.sympify(value)
    re, im = expr.as_real_imag()
    if not (re.is_Rational and im.is_Rational):
        raise InputError(f"coefficient {value!r} is not an exact Gaussian rational")
    return re + im * I


def _strip(coeffs: tuple) -> tuple:
    last = len(coeffs)
    while last > 0 and coeffs[last - 1] == 0:
        last -= 1
    return coeffs[:last]


def _order(coeffs: tuple):
    """Order of vanishing at 0, or None for the zero polynomial."""
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    return None


@dataclass(frozen=True)
class Germ:
    """Polynomial map germ (p(z), q(z)) into C^2 with p(0) = q(0) = 0.

    Coefficients are stored ascending in degree as exact Gaussian
    rationals; at least one coordinate must be nonzero.
    """

    p: tuple
    q: tuple

    def __post_init__(self):
        p = _strip(tuple(_to_gaussian(c) for c in self.p))
        q = _strip(tuple(_to_gaussian(c) for c in self.q))
        if not p and not q:
            raise InputError("germ is constant: both coordinates vanish identically")
        for name, coeffs in (("p", p), ("q", q)):
            if coeffs and coeffs[0] != 0:
                raise InputError(f"germ coordinate {name} does not vanish at 0")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def numeric(self):
        """Coefficient arrays as complex128, ascending in degree."""
        return (
            np.array([complex(c) for c in self.p], dtype=complex),
            np.array([complex(c) for c in self.q], dtype=complex),
        )


def germ(p, q) -> Germ:
    """Convenience constructor taking coefficient sequences ascending in z."""
    return Germ(tuple(p), tuple(q))


def monomial_germ(a: int, b: int) -> Germ:
    """The germ (z^a, z^b)."""
    if a < 1 or b < 1:
        raise InputError("monomial exponents must be >= 1")
    pa = [0] * a + [1]
    qb = [0] * b + [1]
    return germ(pa, qb)


# -- exact polynomial helpers -------------------------------------------------


def _univariate(coeffs, var) -> Poly:
    expr = sum((c * var**i for i, c in enumerate(coeffs)), sympy.Integer(0))
    return Poly(expr, var, domain=_DOMAIN)


def _difference_poly(coeffs_u, coeffs_v) -> Poly:
    """p_u(z) - p_v(w) as a Poly with gens (w, z) so resultants eliminate w."""
    expr = sum((c * Z**i for i, c in enumerate(coeffs_u)), sympy.Integer(0))
    expr -= sum((c * W**i for i, c in enumerate(coeffs_v)), sympy.Integer(0))
    return Poly(expr, W, Z, domain=_DOMAIN)


def _divided_difference(coeffs) -> Poly:
    """(f(z) - f(w)) / (z - w) as a Poly with gens (w, z)."""
    expr = sympy.Integer(0)
    for e, c in enumerate(coeffs):
        if c == 0 or e == 0:
            continue
        expr += c * sum(Z**i * W ** (e - 1 - i) for i in range(e))
    return Poly(expr, W, Z, domain=_DOMAIN)


def _order_in_z(poly: Poly):
    """Order of vanishing in z at 0 of a Poly in gens (w, z) free of w."""
    expr = poly.as_expr()
    uni = Poly(expr, Z, domain=_DOMAIN)
    coeffs = uni.all_coeffs()[::-1]
    return _order(tuple(coeffs))


def _gcd_is_monomial(u_coeffs, v_coeffs) -> bool:
    """True if gcd(p, q) has no roots besides 0 (i.e. is a monomial)."""
    pu = _univariate(u_coeffs, W) if u_coeffs else Poly(0, W, domain=_DOMAIN)
    qu = _univariate(v_coeffs, W) if v_coeffs else Poly(0, W, domain=_DOMAIN)
    if pu.is_zero and qu.is_zero:
        return False
    g = sym_gcd(pu, qu)
    return len(Poly(g, W, domain=_DOMAIN).terms()) <= 1


# -- critical order, tangents, normal form ------------------------------------


def critical_order(u: Germ):
    """Vanishing order k of the germ and its projectivized tangent.

    k = min(ord p, ord q); the differential vanishes exactly when k >= 2.
    The tangent is the coefficient pair of z^k, normalized so its first
    nonzero entry is 1.
    """
    orders = [o for o in (_order(u.p), _order(u.q)) if o is not None]
    k = min(orders)
    a = u.p[k] if k < len(u.p) else sympy.Integer(0)
    b = u.q[k] if k < len(u.q) else sympy.Integer(0)
    if a != 0:
        return k, (sympy.Integer(1), sympy.simplify(b / a))
    return k, (sympy.Integer(0), sympy.Integer(1))


def cover_index(u: Germ) -> int:
    """Largest m with u(z) = v(z^m) for a polynomial germ v."""
    exponents = [e for e, c in enumerate(u.p) if c != 0]
    exponents += [e for e, c in enumerate(u.q) if c != 0]
    return math.gcd(*exponents) if exponents else 0


def is_simple(u: Germ) -> bool:
    return cover_index(u) == 1


def change_coordinates(u: Germ, matrix) -> Germ:
    """Apply an invertible exact 2x2 matrix to the target coordinates."""
    (m00, m01), (m10, m11) = matrix
    m00, m01, m10, m11 = (_to_gaussian(x) for x in (m00, m01, m10, m11))
    if m00 * m11 - m01 * m10 == 0:
        raise InputError("coordinate change matrix is singular")
    size = max(len(u.p), len(u.q))
    p = [sympy.Integer(0)] * size
    q = [sympy.Integer(0)] * size
    for i in range(size):
        pc = u.p[i] if i < len(u.p) else 0
        qc = u.q[i] if i < len(u.q) else 0
        p[i] = sympy.expand(m00 * pc + m01 * qc)
        q[i] = sympy.expand(m10 * pc + m11 * qc)
    return germ(p, q)


def reparametrize(u: Germ, a) -> Germ:
    """Precompose with z -> a z for an exact nonzero scalar a."""
    a = _to_gaussian(a)
    if a == 0:
        raise InputError("reparametrization scalar must be nonzero")
    p = [sympy.expand(c * a**e) for e, c in enumerate(u.p)]
    q = [sympy.expand(c * a**e) for e, c in enumerate(u.q)]
    return germ(p, q)


@dataclass(frozen=True)
class GermNormalForm:
    """Vanishing order, tangent, and branch contact orders of a germ.

    ``branch_orders[j-1]`` is the order beyond k at which the j-th rotated
    branch separates from the germ (j = 1, ..., k-1); None marks a branch
    identical to the germ, which happens exactly for multiple covers.
    """

    k: int
    tangent: tuple
    branch_orders: tuple


def normal_form(u: Germ) -> GermNormalForm:
    """Extract (k, tangent, branch orders) for a monomial-normal-form germ.

    After an exact linear change aligning the tangent with the first axis,
    the first coordinate must be exactly z^k (polynomial representatives of
    general germs need non-polynomial reparametrization, which is out of
    scope); branch orders then come from the exponents of the second
    coordinate: the j-th rotated branch separates at the smallest exponent
    e with a nonzero coefficient and j*e not divisible by k.
    """
    k, _ = critical_order(u)
    a = u.p[k] if k < len(u.p) else sympy.Integer(0)
    b = u.q[k] if k < len(u.q) else sympy.Integer(0)
    if a != 0:
        aligned = change_coordinates(u, ((1 / a, 0), (-b / a, 1)))
    else:
        aligned = change_coordinates(u, ((0, 1 / b), (1, 0)))
    p_mono = tuple(sympy.Integer(c) for c in [0] * k + [1])
    if aligned.p != p_mono:
        # the aligning shear is not unique: adding a multiple of the second
        # coordinate is still aligned, and may cancel the excess terms
        size = max(len(aligned.p), len(aligned.q))
        excess = [
            (aligned.p[i] if i < len(aligned.p) else 0) - (p_mono[i] if i < len(p_mono) else 0)
            for i in range(size)
        ]
        hat = [aligned.q[i] if i < len(aligned.q) else 0 for i in range(size)]
        # solve excess + t * hat == 0 coefficientwise for a single scalar t
        t = None
        solvable = all(e == 0 for e, h in zip(excess, hat) if h == 0)
        ratios = {sympy.simplify(-e / h) for e, h in zip(excess, hat) if h != 0}
        if solvable and len(ratios) == 1:
            candidate = change_coordinates(aligned, ((1, ratios.pop()), (0, 1)))
            if candidate.p == p_mono:
                aligned = candidate
                t = True
        if t is None:
            raise InputError(
                "germ is not in monomial normal form after aligning the tangent; "
                "branch orders are undefined for general polynomial representatives"
            )
    hat = aligned.q
    exponents = [e for e, c in enumerate(hat) if c != 0]
    orders = []
    for j in range(1, k):
        separating = [e for e in exponents if (j * e) % k != 0]
        if not separating:
            orders.append(None)
        else:
            e = min(separating)
            assert e >= k + 1
            orders.append(e - k)
    return GermNormalForm(k, (a, b), tuple(orders))


def delta_from_normal_form(nf: GermNormalForm) -> int:
    """Double-point count of a simple normal-form germ from branch orders:
    half the sum of (k + l_j - 1) over the k-1 rotated branches."""
    if any(l is None for l in nf.branch_orders):
        raise InputError("not simple: germ has identical rotated branches")
    total = sum(nf.k + l - 1 for l in nf.branch_orders)
    assert total % 2 == 0
    return total // 2


# -- exact intersection numbers -----------------------------------------------


def local_intersection(u: Germ, v: Germ) -> int:
    """Local intersection multiplicity of two germs at the origin.

    Computed as the order of vanishing at z = 0 of the resultant in w of
    (p_u(z) - p_v(w), q_u(z) - q_v(w)); always >= 1, and equal to the
    algebraic count of intersections surviving near 0 after perturbation.
    """
    if not _gcd_is_monomial(v.p, v.q):
        raise InputError(
            "germ domain too large, rescale input: second germ passes through "
            "the first germ's basepoint fiber away from 0"
        )
    b1 = _difference_poly(u.p, v.p)
    b2 = _difference_poly(u.q, v.q)
    res = b1.resultant(b2)
    if res.is_zero:
        raise InputError("identical images / common branch: resultant vanishes identically")
    order = _order_in_z(res)
    assert order is not None and order >= 1
    return order


def delta_local(u: Germ) -> int:
    """Double-point count delta(u, 0) of a simple germ at the origin.

    Half the intersection multiplicity at 0 of the divided differences of
    p and q; zero exactly for immersed germs, and at least k(k-1)/2 when
    the vanishing order is k.
    """
    if not is_simple(u):
        raise InputError("not simple: germ is a multiple cover")
    k, _ = critical_order(u)
    p_dd = _divided_difference(u.p)
    q_dd = _divided_difference(u.q)
    if p_dd.is_zero or q_dd.is_zero:
        # one coordinate is constant, so the common zero set is the zero set
        # of the other divided difference; near the origin it is empty
        # exactly when that difference does not vanish at (0, 0)
        other = q_dd if p_dd.is_zero else p_dd
        if not other.is_zero and other.as_expr().subs({Z: 0, W: 0}) != 0:
            delta = 0
        else:
            raise InputError("non-isolated double points: a coordinate is constant")
    else:
        if not _gcd_is_monomial(u.p, u.q):
            raise InputError(
                "germ domain too large, rescale input: germ has self-intersection "
                "parameters in the z = 0 fiber away from 0"
            )
        res = p_dd.resultant(q_dd)
        if res.is_zero:
            raise InputError("non-isolated double points: divided differences share a component")
        order = _order_in_z(res)
        order = 0 if order is None else order
        assert order % 2 == 0
        delta = order // 2
    assert (delta == 0) == (k == 1)
    assert delta >= k * (k - 1) // 2
    return delta


def branched_cover(u: Germ, k: int) -> Germ:
    """Precompose with z -> z^k.  Intersection numbers scale by the product
    of the two covering multiplicities."""
    if not (isinstance(k, int) and k >= 1):
        raise InputError(f"cover multiplicity must be a positive integer, got {k!r}")
    if k == 1:
        return u

    def stretch(coeffs):
        out = [sympy.Integer(0)] * (k * (len(coeffs) - 1) + 1) if coeffs else []
        for e, c in enumerate(coeffs):
            if c != 0:
                out[k * e] = c
        return out

    return germ(stretch(u.p), stretch(u.q))


# -- floating-point oracle path ------------------------------------------------


def _numeric_divided_difference(coeffs: np.ndarray) -> np.ndarray:
    """2D array B[i, j] = coefficient of z^i w^j of (f(z)-f(w))/(z-w)."""
    deg = len(coeffs) - 1
    if deg < 1:
        return np.zeros((1, 1), dtype=complex)
    out = np.zeros((deg, deg), dtype=complex)
    for e in range(1, deg + 1):
        c = coeffs[e]
        if c != 0:
            for i in range(e):
                out[i, e - 1 - i] += c
    return out


def _numeric_difference(cu: np.ndarray, cv: np.ndarray) -> np.ndarray:
    nz = max(len(cu), 1)
    nw = max(len(cv), 1)
    out = np.zeros((nz, nw), dtype=complex)
    out[: len(cu), 0] += cu
    out[0, : len(cv)] -= cv
    return out


def _w_degree(b: np.ndarray) -> int:
    scale = np.abs(b).max()
    if scale == 0:
        return -1
    cols = np.flatnonzero(np.abs(b).max(axis=0) > COEFF_TRIM_TOL * scale)
    return int(cols[-1]) if len(cols) else -1


def _z_degree(b: np.ndarray) -> int:
    scale = np.abs(b).max()
    if scale == 0:
        return -1
    rows = np.flatnonzero(np.abs(b).max(axis=1) > COEFF_TRIM_TOL * scale)
    return int(rows[-1]) if len(rows) else -1


def _sylvester(fc: np.ndarray, gc: np.ndarray) -> np.ndarray:
    """Sylvester matrix of two complex univariate polys (ascending coeffs)."""
    d1, d2 = len(fc) - 1, len(gc) - 1
    n = d1 + d2
    m = np.zeros((n, n), dtype=complex)
    f_desc, g_desc = fc[::-1], gc[::-1]
    for r in range(d2):
        m[r, r : r + d1 + 1] = f_desc
    for r in range(d1):
        m[d2 + r, r : r + d2 + 1] = g_desc
    return m


def numeric_resultant_w(bf: np.ndarray, bg: np.ndarray, circle: float = 1.0) -> np.ndarray:
    """Resultant in w of two bivariate complex polynomials, rescaled.

    Returns the ascending coefficients of R(circle * zeta) in zeta, where
    R(z) = Res_w.  Sampling the Sylvester determinant on the circle where
    roots will be counted keeps the coefficients balanced even when many
    roots cluster inside it; on the unscaled unit circle the low-order
    coefficients of a tight degree-18 cluster drown in roundoff.
    """
    df, dg = _w_degree(bf), _w_degree(bg)
    dfz, dgz = _z_degree(bf), _z_degree(bg)
    if df < 0 or dg < 0:
        return np.zeros(1, dtype=complex)
    if df == 0 and dg == 0:
        return np.ones(1, dtype=complex)
    if df == 0 or dg == 0:
        # Res(f, g) = f^{deg g} when f is free of w
        base, power = (bf[:, 0], dg) if df == 0 else (bg[:, 0], df)
        scaled = base * circle ** np.arange(len(base))
        out = np.polynomial.polynomial.polypow(scaled, power) if power > 0 else np.ones(1)
        return np.asarray(out, dtype=complex)
    bound = dfz * dg + dgz * df
    samples = bound + 1
    zs = circle * np.exp(2j * np.pi * np.arange(samples) / samples)
    values = np.empty(samples, dtype=complex)
    zpow_f = np.vander(zs, dfz + 1, increasing=True)  # (samples, dfz+1)
    zpow_g = np.vander(zs, dgz + 1, increasing=True)
    f_rows = zpow_f @ bf[: dfz + 1, : df + 1]  # (samples, df+1)
    g_rows = zpow_g @ bg[: dgz + 1, : dg + 1]
    for s in range(samples):
        values[s] = np.linalg.det(_sylvester(f_rows[s], g_rows[s]))
    # coefficients from values at the roots of unity: c_m = (1/n) sum_s v_s w^{-sm}
    return np.fft.fft(values) / samples


def _nonzero_roots(coeffs: np.ndarray):
    """Roots of a complex polynomial with the cluster at 0 deflated.

    Trailing (low-order) coefficients below tolerance are treated as an
    exact zero root of that multiplicity and stripped; remaining roots come
    from the companion matrix.
    """
    scale = np.abs(coeffs).max()
    if scale == 0:
        return None  # identically zero within tolerance
    keep = np.abs(coeffs) > COEFF_TRIM_TOL * scale
    first = int(np.flatnonzero(keep)[0])
    last = int(np.flatnonzero(keep)[-1])
    trimmed = coeffs[first : last + 1]
    if len(trimmed) == 1:
        return np.array([], dtype=complex)
    return np.roots(trimmed[::-1])


def _count_unit_roots(coeffs: np.ndarray, edge_tol: float):
    """(nonzero roots inside the unit disk, hit_edge, multiplicity at 0).

    ``coeffs`` are already rescaled so that the counting circle is |zeta|=1.
    """
    scale = np.abs(coeffs).max()
    if scale == 0:
        raise InputError("oracle resultant vanished identically")
    keep = np.abs(coeffs) > COEFF_TRIM_TOL * scale
    zero_mult = int(np.flatnonzero(keep)[0])
    roots = _nonzero_roots(coeffs)
    hit_edge = bool(np.any(np.abs(np.abs(roots) - 1.0) < edge_tol))
    inside = int(np.sum(np.abs(roots) < 1.0))
    return inside, hit_edge, zero_mult


def _roots_inside(coeffs: np.ndarray, edge_tol: float):
    """(roots with |zeta| < 1, hit_edge) without deflating the origin.

    Used on perturbed resultants, whose roots may legitimately sit very
    close to 0; only leading coefficients below tolerance are dropped.
    """
    scale = np.abs(coeffs).max()
    if scale == 0:
        raise InputError("oracle resultant vanished identically")
    keep = np.abs(coeffs) > COEFF_TRIM_TOL * scale
    last = int(np.flatnonzero(keep)[-1])
    trimmed = coeffs[: last + 1]
    if len(trimmed) == 1:
        return np.array([], dtype=complex), False
    roots = np.roots(trimmed[::-1])
    hit_edge = bool(np.any(np.abs(np.abs(roots) - 1.0) < edge_tol))
    return roots[np.abs(roots) < 1.0], hit_edge


def _embedded_radius_check(res0_scaled: np.ndarray, edge_tol: float, what: str):
    """Reject a counting disk that contains unperturbed solution parameters."""
    roots = _nonzero_roots(res0_scaled)
    if roots is None:
        return  # resultant-zero cases are reported by the caller
    if len(roots) and np.min(np.abs(roots)) <= 1.0 + edge_tol:
        raise InputError(
            f"radius too large: {what} within the chosen disk; shrink the radius"
        )


def numeric_double_point_oracle(
    u: Germ, epsilon: complex = 1e-3, radius: float = 0.3, seed: int = 0
) -> int:
    """Count double points of a perturbed germ inside a disk, numerically.

    The germ is perturbed to (p(z), q(z) + eps z); ordered self-intersection
    parameter pairs are the roots of the resultant of the perturbed divided
    differences, counted inside |z| < radius via companion-matrix
    eigenvalues and halved.  Must agree with delta_local on valid inputs.
    """
    if not is_simple(u):
        raise InputError("not simple: germ is a multiple cover")
    if not (radius > 0):
        raise InputError("radius must be positive")
    edge_tol = ROOT_EDGE_TOL / radius
    cp, cq = u.numeric()
    pdd = _numeric_divided_difference(cp)
    qdd = _numeric_divided_difference(cq)
    res0 = numeric_resultant_w(pdd, qdd, circle=radius)
    _embedded_radius_check(res0, edge_tol, "germ has self-intersections")
    rng = np.random.default_rng(seed)
    last_failure = "degenerate epsilon"
    for attempt in range(MAX_EPSILON_REDRAWS):
        eps = complex(epsilon) if attempt == 0 else complex(epsilon) * np.exp(
            2j * np.pi * rng.random()
        )
        # q(z) + eps z - (q(w) + eps w) divided by (z - w) adds the constant eps
        q_pert = qdd.copy()
        q_pert[0, 0] += eps
        res = numeric_resultant_w(pdd, q_pert, circle=radius)
        count, hit_edge, zero_mult = _count_unit_roots(res, edge_tol)
        if zero_mult:
            last_failure = "perturbed intersection parameters stuck at the origin"
            continue
        if hit_edge:
            last_failure = "radius on a root, retry"
            continue
        if count % 2 != 0:
            last_failure = "unpaired intersection parameter (partner escaped the disk)"
            continue
        return count // 2
    raise InputError(f"oracle failed: {last_failure} after {MAX_EPSILON_REDRAWS} draws")


def numeric_intersection_oracle(
    u: Germ, v: Germ, epsilon: complex = 1e-3, radius: float = 0.3, seed: int = 0
) -> int:
    """Count intersections of two perturbed germs in a bidisk, numerically.

    The first germ is shifted to (p_u(z) + eps, q_u(z)) and the solution
    parameters are counted inside |z| < radius via companion-matrix roots
    of the resultant eliminating w.  The radius pre-check guarantees the
    unperturbed germs have no intersection parameters with |z| <= radius
    apart from the origin, so for small eps the count equals the number of
    perturbed intersections in the bidisk.  Must agree with
    local_intersection on valid inputs.
    """
    if not (radius > 0):
        raise InputError("radius must be positive")
    # precondition checks are exact (shared components make the float
    # resultant meaningless at any tolerance); the count itself stays float
    if sym_gcd(_difference_poly(u.p, v.p), _difference_poly(u.q, v.q)).total_degree() > 0:
        raise InputError("identical images / common branch: difference polynomials share a factor")
    edge_tol = ROOT_EDGE_TOL / radius
    cpu, cqu = u.numeric()
    cpv, cqv = v.numeric()
    b1 = _numeric_difference(cpu, cpv)
    b2 = _numeric_difference(cqu, cqv)
    res0 = numeric_resultant_w(b1, b2, circle=radius)
    _embedded_radius_check(res0, edge_tol, "germs intersect away from the origin but")
    rng = np.random.default_rng(seed)
    last_failure = "degenerate epsilon"
    for attempt in range(MAX_EPSILON_REDRAWS):
        eps = complex(epsilon) if attempt == 0 else complex(epsilon) * np.exp(
            2j * np.pi * rng.random()
        )
        b1e = b1.copy()
        b1e[0, 0] += eps
        # the resultant root z of a solution (z, w) does not see where w is,
        # but the radius pre-check has excluded unperturbed solutions with
        # |z| <= radius and w anywhere, so for small eps every perturbed
        # solution counted here lies in the bidisk
        res_z = numeric_resultant_w(b1e, b2, circle=radius)
        z_candidates, hit_edge = _roots_inside(res_z, edge_tol)
        if hit_edge:
            last_failure = "radius on a root, retry"
            continue
        return len(z_candidates)
    raise InputError(f"oracle failed: {last_failure} after {MAX_EPSILON_REDRAWS} draws")


# -- germ file format ----------------------------------------------------------

_GERM_KEYS = {"p", "q"}


def _coeff_from_json(entry):
    if not (isinstance(entry, (list, tuple)) and len(entry) == 4):
        raise InputError(f"germ coefficient {entry!r} must be [re_num, re_den, im_num, im_den]")
    re_num, re_den, im_num, im_den = (int(x) for x in entry)
    if re_den == 0 or im_den == 0:
        raise InputError("germ coefficient has zero denominator")
    return Rational(re_num, re_den) + Rational(im_num, im_den) * I


def _coeff_to_json(c):
    re, im = sympy.sympify(c).as_real_imag()
    re, im = Rational(re), Rational(im)
    return [int(re.p), int(re.q), int(im.p), int(im.q)]


def germ_from_dict(data: dict) -> Germ:
    if not isinstance(data, dict):
        raise InputError("germ file must contain a JSON object")
    for key in data:
        if key not in _GERM_KEYS:
            raise InputError(f"unknown key {key!r} in germ file")
    p = [_coeff_from_json(c) for c in data.get("p", [])]
    q = [_coeff_from_json(c) for c in data.get("q", [])]
    return germ(p, q)


def germ_to_dict(u: Germ) -> dict:
    return {"p": [_coeff_to_json(c) for c in u.p], "q": [_coeff_to_json(c) for c in u.q]}


def load_germ(path) -> Germ:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read germ file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in germ file: {exc}") from exc
    return germ_from_dict(data)
