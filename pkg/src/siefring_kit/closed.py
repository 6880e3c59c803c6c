"""Closed-curve intersection arithmetic.

Covers the compact case, where the homological pairing [u].[v] is already
homotopy invariant: virtual dimension, normal Chern number, the adjunction
formula, and the forced arithmetic of a sphere with trivial normal bundle
degenerating into a pair of exceptional spheres.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InconsistencyError, InputError


def vdim_closed(n: int, g: int, c1A: int) -> int:
    """Virtual dimension (n-3)(2-2g) + 2 c1(A) of a genus-g moduli space."""
    if n < 2:
        raise InputError(f"ambient half-dimension must be >= 2, got {n}")
    if g < 0:
        raise InputError(f"genus must be >= 0, got {g}")
    return (n - 3) * (2 - 2 * g) + 2 * c1A


def cn_closed(c1A: int, genus: int) -> int:
    """Normal Chern number c1(A) - chi of a closed genus-g curve."""
    if genus < 0:
        raise InputError(f"genus must be >= 0, got {genus}")
    return c1A - (2 - 2 * genus)


def delta_closed(self_pairing: int, c1A: int, genus: int) -> int:
    """Double-point count of a simple closed curve from the adjunction
    formula [u].[u] = 2 delta + c_N; zero exactly for embedded curves.

    An odd or negative right-hand side cannot occur for holomorphic curves
    and is raised as an inconsistency.
    """
    numerator = self_pairing - cn_closed(c1A, genus)
    if numerator % 2 != 0 or numerator < 0:
        raise InconsistencyError(
            "inconsistent with a simple J-holomorphic curve: "
            f"[u].[u] - c_N = {numerator} must be an even nonnegative integer"
        )
    return numerator // 2


class Disjointness(Enum):
    DISJOINT_OR_IDENTICAL = "disjoint-or-identical"
    INTERSECTING = "intersecting"


def disjointness_verdict(pairing: int) -> Disjointness:
    """Positivity of intersections for curves with non-identical images:
    zero pairing forces disjointness, positive forces intersections,
    negative is impossible."""
    if pairing < 0:
        raise InconsistencyError(
            f"negative homological pairing {pairing} violates positivity of intersections"
        )
    if pairing == 0:
        return Disjointness.DISJOINT_OR_IDENTICAL
    return Disjointness.INTERSECTING


@dataclass(frozen=True)
class NodalSplitResult:
    """Forced invariants of a two-component degeneration of a square-zero,
    c1 = 2 sphere, or the reason the proposed split is impossible."""

    possible: bool
    reason: str = ""
    delta_plus: int | None = None
    delta_minus: int | None = None
    cross_pairing: int | None = None
    self_pairing_plus: int | None = None
    self_pairing_minus: int | None = None
    verdict: str = ""

    def as_dict(self) -> dict:
        out = {"possible": self.possible}
        if self.possible:
            out.update(
                {
                    "delta_plus": self.delta_plus,
                    "delta_minus": self.delta_minus,
                    "cross_pairing": self.cross_pairing,
                    "self_pairing_plus": self.self_pairing_plus,
                    "self_pairing_minus": self.self_pairing_minus,
                    "verdict": self.verdict,
                }
            )
        else:
            out["reason"] = self.reason
        return out


def analyze_nodal_split(
    total_self: int = 0, total_c1: int = 2, component_c1: tuple[int, int] = (1, 1)
) -> NodalSplitResult:
    """Deduce the component invariants when a sphere of self-intersection 0
    and c1 = 2 breaks into two sphere components.

    Bubbling components always have positive first Chern number, so the
    only split consistent with total_c1 = 2 is (1, 1); for it, expanding
    0 = (v+ + v-).(v+ + v-) with the adjunction formula forces
    delta(v+-) = 0, v+.v- = 1 and v+-.v+- = -1: a pair of exceptional
    spheres meeting once, transversely.
    """
    a, b = component_c1
    if a + b != total_c1:
        raise InputError(f"component Chern numbers {component_c1} do not sum to {total_c1}")
    if a < 1 or b < 1:
        raise InputError("bubbling components must have positive first Chern numbers")
    if total_self != 0 or total_c1 != 2:
        raise InputError(
            "analysis is specialized to the square-zero, c1 = 2 degeneration pattern"
        )
    if (a, b) != (1, 1):
        return NodalSplitResult(
            possible=False,
            reason=(
                f"split {component_c1} violates c1 >= 1 for both components "
                "together with c1(v+) + c1(v-) = 2"
            ),
        )
    # c_N(v+-) = 1 - 2 = -1; expansion of 0 = [S].[S] gives
    # 2 delta(v+) + 2 delta(v-) + 2(v+.v- - 1) = 0 with every term >= 0.
    cross = 1
    delta_each = 0
    self_each = delta_closed_inverse(delta_each, 1, 0)
    return NodalSplitResult(
        possible=True,
        delta_plus=delta_each,
        delta_minus=delta_each,
        cross_pairing=cross,
        self_pairing_plus=self_each,
        self_pairing_minus=self_each,
        verdict="pair of exceptional spheres meeting once, transversely",
    )


def delta_closed_inverse(delta: int, c1A: int, genus: int) -> int:
    """Self-pairing forced by the adjunction formula: 2 delta + c_N."""
    return 2 * delta + cn_closed(c1A, genus)


def double_cover_contradiction(total_self: int = 0, k: int = 2, component_c1: int = 1) -> str:
    """Why a square-zero sphere cannot be a k-fold cover of a c1 = 1 sphere:
    adjunction on the underlying simple curve has odd right-hand side."""
    if k < 2:
        raise InputError("covering multiplicity must be >= 2 for a multiple cover")
    rhs_parity = (component_c1 - 2) % 2
    lhs = total_self  # k^2 [v].[v] = total_self forces [v].[v] = 0 when total_self = 0
    if lhs % (k * k) != 0:
        return f"homology class not divisible: [u].[u] = {total_self} is not a multiple of {k * k}"
    vv = lhs // (k * k)
    if rhs_parity == 1 and vv % 2 == 0:
        return (
            f"parity contradiction: [v].[v] = {vv} is even but "
            f"2 delta(v) + c1([v]) - 2 is odd for c1([v]) = {component_c1}"
        )
    return "no contradiction from parity alone"


def cp2_degree_table(degree: int) -> dict:
    """Adjunction data of a degree-d sphere in the projective plane:
    [u].[u] = d^2, c1 = 3d, delta = (d-1)(d-2)/2, embedded iff d <= 2."""
    if degree < 1:
        raise InputError(f"degree must be >= 1, got {degree}")
    d = degree
    delta = delta_closed(d * d, 3 * d, 0)
    return {
        "degree": d,
        "self_pairing": d * d,
        "c1": 3 * d,
        "c_N": cn_closed(3 * d, 0),
        "delta": delta,
        "embedded": delta == 0,
    }
