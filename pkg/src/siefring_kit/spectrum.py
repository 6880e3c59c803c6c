"""Numerical spectral theory of the model first-order operator on the circle.

The operator acts on loops f : R/Z -> R^2 as

    (A f)(t) = -J0 f'(t) - S(t) f(t),

where J0 is the standard complex structure on R^2 and S(t) is a loop of
symmetric 2x2 matrices.  A is L^2-self-adjoint, its spectrum is a discrete
set of real eigenvalues accumulating only at +-infinity, its nontrivial
eigenfunctions are nowhere zero, and their winding numbers are a monotone
function of the eigenvalue taking each integer value exactly twice.  This
module discretizes A by Fourier-Galerkin truncation, extracts eigenvalues,
eigenfunction windings, the extremal windings on either side of zero, and
the induced data of covered orbits; it also contains a small linear-ODE
integrator and an exponential-decay fitter used as an independent check on
the asymptotic-eigenvector picture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InputError

J0 = np.array([[0.0, -1.0], [1.0, 0.0]])

SYMMETRY_TOL = 1e-12
HERMITIAN_TOL = 1e-10
ZERO_EIGENVALUE_TOL = 1e-6
CLUSTER_TOL = 1e-8
WINDING_GUARD = 0.05
RESOLVED_SAMPLE_RATIO = 1e-8
DEFAULT_CUTOFF = 32


def _check_symmetric(mat, what: str) -> np.ndarray:
    m = np.asarray(mat, dtype=float)
    if m.shape != (2, 2):
        raise InputError(f"{what} must be a 2x2 matrix, got shape {m.shape}")
    if abs(m[0, 1] - m[1, 0]) > SYMMETRY_TOL:
        raise InputError(f"asymmetric mode supplied: {what} is not symmetric")
    return m


@dataclass(frozen=True)
class SpectralLoop:
    """Loop of symmetric 2x2 matrices given by a finite Fourier series.

    ``modes`` is a tuple of (n, C, D) with n >= 0 and C, D symmetric, for

        S(t) = sum_n  C_n cos(2 pi n t) + D_n sin(2 pi n t).
    """

    modes: tuple

    def __post_init__(self):
        seen = set()
        checked = []
        for entry in self.modes:
            n, c, d = entry
            if not (isinstance(n, (int, np.integer)) and n >= 0):
                raise InputError(f"mode frequency must be a nonnegative integer, got {n!r}")
            if n in seen:
                raise InputError(f"duplicate mode frequency {n}")
            seen.add(n)
            c = _check_symmetric(c, f"cos matrix of mode {n}")
            d = _check_symmetric(d, f"sin matrix of mode {n}")
            if n == 0 and np.any(d != 0.0):
                raise InputError("sin matrix of mode 0 has no effect and must be zero")
            checked.append((int(n), c, d))
        object.__setattr__(self, "modes", tuple(checked))

    @property
    def bandwidth(self) -> int:
        return max((n for n, _, _ in self.modes), default=0)

    def __call__(self, ts) -> np.ndarray:
        """Sample S(t); returns shape (len(ts), 2, 2)."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.zeros((len(ts), 2, 2))
        for n, c, d in self.modes:
            out += np.cos(2 * np.pi * n * ts)[:, None, None] * c
            out += np.sin(2 * np.pi * n * ts)[:, None, None] * d
        return out


def constant_loop(matrix) -> SpectralLoop:
    """The loop S(t) == matrix."""
    return SpectralLoop(((0, _check_symmetric(matrix, "constant matrix"), np.zeros((2, 2))),))


def cover_operator(loop: SpectralLoop, k: int) -> SpectralLoop:
    """Model operator of the k-fold covered orbit: t -> k * S(k t).

    Every eigenpair (lam, f) of the base operator yields the eigenpair
    (k lam, f(k .)) of the cover, with winding multiplied by k.
    """
    if not (isinstance(k, int) and k >= 1):
        raise InputError(f"cover multiplicity must be a positive integer, got {k!r}")
    if k == 1:
        return loop
    return SpectralLoop(tuple((k * n, k * c, k * d) for n, c, d in loop.modes))


@dataclass(frozen=True)
class OperatorDiscretization:
    """Fourier-Galerkin truncation of the operator to modes |n| <= M.

    The matrix acts on stacked coefficient blocks (c_{-M}, ..., c_M) with
    c_n in C^2; it is Hermitian because truncation compresses a
    self-adjoint operator onto a basis-closed subspace.
    """

    loop: SpectralLoop
    mode_cutoff: int
    matrix: np.ndarray


def assemble(loop: SpectralLoop, mode_cutoff: int = DEFAULT_CUTOFF) -> OperatorDiscretization:
    """Build the truncated operator matrix for the given loop."""
    M = int(mode_cutoff)
    if M < loop.bandwidth + 4:
        raise InputError(
            f"cutoff below loop bandwidth: need mode_cutoff >= {loop.bandwidth + 4}, got {M}"
        )
    dim = 2 * (2 * M + 1)
    A = np.zeros((dim, dim), dtype=complex)
    for n in range(-M, M + 1):
        b = 2 * (n + M)
        A[b:b + 2, b:b + 2] += -2j * np.pi * n * J0
    # complex Fourier coefficients of S: S_hat[nu] couples mode m to m + nu
    s_hat: dict[int, np.ndarray] = {}
    for n, c, d in loop.modes:
        if n == 0:
            s_hat[0] = s_hat.get(0, 0) + c.astype(complex)
        else:
            s_hat[n] = s_hat.get(n, 0) + (c - 1j * d) / 2
            s_hat[-n] = s_hat.get(-n, 0) + (c + 1j * d) / 2
    for nu, block in s_hat.items():
        for m in range(-M, M + 1):
            n2 = m + nu
            if -M <= n2 <= M:
                r, cidx = 2 * (n2 + M), 2 * (m + M)
                A[r:r + 2, cidx:cidx + 2] += -block
    deviation = np.max(np.abs(A - A.conj().T))
    scale = max(1.0, np.max(np.abs(A)))
    if deviation > HERMITIAN_TOL * scale:
        raise InputError(f"assembled matrix is not Hermitian (deviation {deviation:.2e})")
    return OperatorDiscretization(loop, M, A)


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with a real, nowhere-zero eigenfunction.

    ``samples`` are the values of the eigenfunction on the uniform grid
    t_j = j/N, encoded as complex numbers x + i y; ``coeffs`` are its
    complex Fourier coefficients (shape (2M+1, 2)), kept so that the
    eigenfunction can be re-evaluated at arbitrary parameters.
    """

    eigenvalue: float
    samples: np.ndarray
    winding: int
    multiplicity: int
    coeffs: np.ndarray
    residual: float


def _real_coefficients(column: np.ndarray, M: int) -> np.ndarray:
    """Turn an eigenvector of the complexified operator into coefficients of
    a real eigenfunction.

    The complexification of a real operator has conjugation-invariant
    eigenspaces for real eigenvalues, so Re(e^{i theta} F) is again an
    eigenfunction; theta is chosen to maximize its L^2 norm, which keeps it
    bounded away from zero.
    """
    F = column.reshape(2 * M + 1, 2)
    # bilinear pairing int <F, F> dt pairs mode n with mode -n
    quad = np.sum(F * F[::-1, :])
    theta = -np.angle(quad) / 2 if abs(quad) > 1e-14 else 0.0
    G = np.exp(1j * theta) * F
    # coefficients of Re g: (c_n + conj(c_{-n})) / 2
    return (G + np.conj(G[::-1, :])) / 2


def evaluate_coefficients(coeffs: np.ndarray, ts) -> np.ndarray:
    """Evaluate a coefficient block at parameters ts; returns complex x+iy."""
    M = (coeffs.shape[0] - 1) // 2
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    ns = np.arange(-M, M + 1)
    phases = np.exp(2j * np.pi * np.outer(ns, ts))
    vals = np.tensordot(coeffs, phases, axes=(0, 0))  # (2, len(ts))
    return vals[0].real + 1j * vals[1].real


def winding(samples: np.ndarray) -> int:
    """Winding number of a nowhere-zero loop of complex samples.

    Sums principal-branch angle increments between consecutive samples and
    divides by 2 pi; the accumulated value must land within the rounding
    guard of an integer.
    """
    samples = np.asarray(samples, dtype=complex)
    mags = np.abs(samples)
    if mags.min() <= RESOLVED_SAMPLE_RATIO * mags.max():
        raise InputError("eigenfunction not resolved: samples pass too close to zero")
    ratios = np.roll(samples, -1) / samples
    total = np.angle(ratios).sum() / (2 * np.pi)
    nearest = round(total)
    if abs(total - nearest) > WINDING_GUARD:
        raise InputError(f"grid too coarse: winding accumulated to {total}, not an integer")
    return int(nearest)


def _residual(op: OperatorDiscretization, coeffs: np.ndarray, lam: float, ts) -> float:
    """Pointwise residual |A f - lam f| / max|f| using the exact operator.

    The derivative of a trigonometric polynomial is computed exactly from
    its coefficients and S(t) is evaluated pointwise, so this measures
    truncation honestly rather than reusing the Galerkin matrix.
    """
    M = op.mode_cutoff
    ns = np.arange(-M, M + 1)
    dcoeffs = coeffs * (2j * np.pi * ns)[:, None]
    phases = np.exp(2j * np.pi * np.outer(ns, ts))
    f_vals = np.tensordot(coeffs, phases, axes=(0, 0)).real.T  # (len(ts), 2)
    df_vals = np.tensordot(dcoeffs, phases, axes=(0, 0)).real.T
    s_vals = op.loop(ts)
    Af = -df_vals @ J0.T - np.einsum("tij,tj->ti", s_vals, f_vals)
    err = np.abs(Af - lam * f_vals).max()
    return err / max(np.abs(f_vals).max(), 1e-300)


def _multiplicities(eigenvalues: np.ndarray) -> list[int]:
    """Cluster sizes with eigenvalues within CLUSTER_TOL*(1+|lam|) merged."""
    mult = []
    i = 0
    while i < len(eigenvalues):
        j = i
        while (
            j + 1 < len(eigenvalues)
            and eigenvalues[j + 1] - eigenvalues[j] <= CLUSTER_TOL * (1 + abs(eigenvalues[j]))
        ):
            j += 1
        size = j - i + 1
        mult.extend([size] * size)
        i = j + 1
    return mult


def resolved_band(op: OperatorDiscretization) -> float:
    """Half-width of the eigenvalue window this truncation resolves."""
    return np.pi * op.mode_cutoff


def eigen_window(op: OperatorDiscretization, lo: float, hi: float) -> list[EigenPair]:
    """All eigenpairs with eigenvalue in [lo, hi], sorted ascending."""
    if not lo < hi:
        raise InputError(f"window requires lo < hi, got ({lo}, {hi})")
    band = resolved_band(op)
    if abs(lo) > band or abs(hi) > band:
        raise InputError(
            f"window exceeds resolution: need |lo|, |hi| <= {band:.6g} at cutoff {op.mode_cutoff}"
        )
    M = op.mode_cutoff
    evals, evecs = np.linalg.eigh(op.matrix)
    sel = np.flatnonzero((evals >= lo) & (evals <= hi))
    selected = evals[sel]
    mults = _multiplicities(selected)
    N = 8 * (2 * M + 1)
    ts = np.arange(N) / N
    pairs = []
    for pos, i in enumerate(sel):
        coeffs = _real_coefficients(evecs[:, i], M)
        samples = evaluate_coefficients(coeffs, ts)
        res = _residual(op, coeffs, evals[i], ts)
        pairs.append(
            EigenPair(
                eigenvalue=float(evals[i]),
                samples=samples,
                winding=winding(samples),
                multiplicity=mults[pos],
                coeffs=coeffs,
                residual=res,
            )
        )
    return pairs


@dataclass(frozen=True)
class AlphaRecord:
    """Extremal windings on either side of zero, with parity and the
    Conley-Zehnder index 2*alpha_minus + parity."""

    alpha_minus: int
    alpha_plus: int
    parity: int
    cz: int


def alphas_from_spectrum(
    op: OperatorDiscretization, zero_tol: float = ZERO_EIGENVALUE_TOL
) -> AlphaRecord:
    """Extract alpha_-, alpha_+, parity and the index from the spectrum.

    alpha_- is the winding of the largest negative eigenvalue and alpha_+
    that of the smallest positive one (monotonicity of the winding makes
    these the extrema over each half of the spectrum).  The double-count
    property is asserted for all windings strictly inside the inspected
    window as a consistency check on the discretization.  ``zero_tol`` is
    the nondegeneracy threshold: any eigenvalue within it of 0 rejects the
    operator as degenerate.
    """
    evals = np.linalg.eigvalsh(op.matrix)
    if np.abs(evals).min() <= zero_tol:
        raise InputError("degenerate orbit: operator has an eigenvalue at 0")
    band = resolved_band(op)
    window = band / 2
    pairs = eigen_window(op, -window, window)
    if not any(p.eigenvalue < 0 for p in pairs) or not any(p.eigenvalue > 0 for p in pairs):
        raise InputError("window around 0 resolved no eigenvalues of both signs")
    neg = [p for p in pairs if p.eigenvalue < 0]
    pos = [p for p in pairs if p.eigenvalue > 0]
    alpha_minus = neg[-1].winding
    alpha_plus = pos[0].winding
    counts: dict[int, int] = {}
    for p in pairs:
        counts[p.winding] = counts.get(p.winding, 0) + 1
    interior = [w for w in counts if min(counts) < w < max(counts)]
    for w in interior:
        if counts[w] != 2:
            raise InputError(
                f"winding {w} appears {counts[w]} times in the resolved window; "
                "discretization is inconsistent"
            )
    p = alpha_plus - alpha_minus
    if p not in (0, 1):
        raise InputError(f"computed parity {p} is not 0 or 1; spectrum not resolved")
    return AlphaRecord(alpha_minus, alpha_plus, p, 2 * alpha_minus + p)


def covering_multiplicity(pair: EigenPair, k: int, tol: float = 1e-6) -> int:
    """Largest divisor d of k with f(t + 1/d) = f(t) up to tol*max|f|."""
    best = 1
    scale = np.abs(pair.samples).max()
    N = len(pair.samples)
    ts = np.arange(N) / N
    for d in range(2, k + 1):
        if k % d != 0:
            continue
        shifted = evaluate_coefficients(pair.coeffs, ts + 1.0 / d)
        if np.abs(shifted - pair.samples).max() < tol * scale:
            best = d
    return best


# -- linear ODE trajectories and decay fitting -------------------------------


@dataclass(frozen=True)
class Trajectory:
    """Samples (s_j, v_j) of a vector-valued path."""

    s: np.ndarray
    values: np.ndarray  # shape (len(s), n)


@dataclass(frozen=True)
class DecayFit:
    lambda_fit: float
    direction_fit: np.ndarray
    residual: float


def integrate_linear_ode(A, v0, s0: float, s1: float, steps: int) -> Trajectory:
    """Fixed-step RK4 integration of v' = A(s) v on [s0, s1].

    ``A`` maps a parameter s to an n x n matrix (constant matrices are also
    accepted directly).
    """
    if steps < 100:
        raise InputError(f"integration needs at least 100 steps, got {steps}")
    if not callable(A):
        mat = np.asarray(A, dtype=float)
        A = lambda s: mat  # noqa: E731
    v = np.asarray(v0, dtype=float).copy()
    h = (s1 - s0) / steps
    ss = np.empty(steps + 1)
    out = np.empty((steps + 1, len(v)))
    ss[0] = s0
    out[0] = v
    for i in range(steps):
        s = s0 + i * h
        k1 = A(s) @ v
        k2 = A(s + h / 2) @ (v + h / 2 * k1)
        k3 = A(s + h / 2) @ (v + h / 2 * k2)
        k4 = A(s + h) @ (v + h * k3)
        v = v + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ss[i + 1] = s0 + (i + 1) * h
        out[i + 1] = v
    return Trajectory(ss, out)


def fit_decay(trajectory) -> DecayFit:
    """Fit the exponential rate of a decaying trajectory v(s) ~ e^{lam s} v_+.

    The rate is the least-squares slope of log|v(s)| over the last half of
    the samples (the early samples carry the transient and are discarded);
    the direction is the normalized final sample, and the residual is the
    worst deviation of log|v| from the fitted line over the last half.
    """
    if isinstance(trajectory, Trajectory):
        s = np.asarray(trajectory.s, dtype=float)
        vals = np.asarray(trajectory.values, dtype=float)
    else:
        items = list(trajectory)
        s = np.array([float(a) for a, _ in items])
        vals = np.array([np.asarray(b, dtype=float) for _, b in items])
    if len(s) < 20:
        raise InputError("trajectory unusable: need at least 20 samples")
    if np.any(np.diff(s) <= 0):
        raise InputError("trajectory unusable: s-grid must be increasing")
    norms = np.linalg.norm(vals, axis=1)
    if norms.min() <= 1e-290:
        raise InputError("trajectory unusable: norm underflow")
    half = len(s) // 2
    st, ln = s[half:], np.log(norms[half:])
    slope, intercept = np.polyfit(st, ln, 1)
    residual = np.abs(ln - (slope * st + intercept)).max()
    direction = vals[-1] / norms[-1]
    return DecayFit(float(slope), direction, float(residual))


# -- spectral-loop file format ------------------------------------------------

_LOOP_KEYS = {"modes"}
_MODE_KEYS = {"n", "cos", "sin"}


def loop_from_dict(data: dict) -> SpectralLoop:
    if not isinstance(data, dict):
        raise InputError("loop file must contain a JSON object")
    for key in data:
        if key not in _LOOP_KEYS:
            raise InputError(f"unknown key {key!r} in loop file")
    modes = []
    for md in data.get("modes", []):
        for key in md:
            if key not in _MODE_KEYS:
                raise InputError(f"unknown key {key!r} in loop mode")
        zero = [[0.0, 0.0], [0.0, 0.0]]
        modes.append((int(md["n"]), md.get("cos", zero), md.get("sin", zero)))
    return SpectralLoop(tuple(modes))


def load_loop(path) -> SpectralLoop:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read loop file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in loop file: {exc}") from exc
    return loop_from_dict(data)


def spectrum_report(loop: SpectralLoop, mode_cutoff: int, lo: float, hi: float) -> dict:
    """JSON-ready spectrum report for the CLI."""
    op = assemble(loop, mode_cutoff)
    pairs = eigen_window(op, lo, hi)
    record = alphas_from_spectrum(op)
    return {
        "eigenvalues": [p.eigenvalue for p in pairs],
        "windings": [p.winding for p in pairs],
        "multiplicities": [p.multiplicity for p in pairs],
        "alpha_minus": record.alpha_minus,
        "alpha_plus": record.alpha_plus,
        "parity": record.parity,
        "cz": record.cz,
    }


def orbit_from_loop(orbit_id: str, loop: SpectralLoop, covers, mode_cutoff: int = DEFAULT_CUTOFF):
    """Build scene orbit data from a spectral model of the simple orbit.

    For each requested multiplicity the cover operator k S(kt) is solved
    and its extremal windings recorded; this is the computational route to
    the winding table that scenes otherwise take as direct input.  The
    cutoff is scaled with the cover so every requested spectrum stays
    resolved.
    """
    from .core import CoverData, OrbitData

    table = {}
    for k in covers:
        record = alphas_from_spectrum(assemble(cover_operator(loop, k), mode_cutoff * k))
        table[k] = CoverData(record.alpha_minus, record.alpha_plus)
    return OrbitData(orbit_id, table)
