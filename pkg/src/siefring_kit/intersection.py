"""Intersection bookkeeping for punctured curves in a four-manifold scene.

All operations consume a Scene (see siefring_kit.core) and return exact
integers.  The leading quantity is the star-pairing: the relative
intersection number corrected by winding-bound terms at shared asymptotic
orbits, which makes it independent of the trivializations used to record
the scene's data.  On top of it sit the normal Chern number, the Fredholm
index, spectral covering totals, and the adjunction bookkeeping that
decides when scene data is compatible with simple or embedded curves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CurveClass,
    Scene,
    alpha,
    cz_index,
    euler_char,
    parity,
    sigma_bar,
)
from .errors import InconsistencyError, InputError


def omega_pair(scene: Scene, orbit_a: tuple[str, int], orbit_b: tuple[str, int], sign: str) -> int:
    """Winding-bound term for a pair of punctures of the given sign.

    Zero when the punctures sit on distinct simple orbits; for covers k, m
    of the same simple orbit it is min{-k a(m), -m a(k)} with a = alpha_-
    when sign is '+', and min{+k a(m), +m a(k)} with a = alpha_+ when sign
    is '-'.
    """
    (id_a, k), (id_b, m) = orbit_a, orbit_b
    if id_a != id_b:
        # still validate the covers exist
        scene.orbit(id_a).cover(k)
        scene.orbit(id_b).cover(m)
        return 0
    orbit = scene.orbit(id_a)
    if sign == "+":
        return min(-k * alpha(orbit, m, "-"), -m * alpha(orbit, k, "-"))
    if sign == "-":
        return min(k * alpha(orbit, m, "+"), m * alpha(orbit, k, "+"))
    raise InputError(f"sign must be '+' or '-', got {sign!r}")


def omega_self(scene: Scene, orbit_ref: tuple[str, int], sign: str) -> int:
    """Winding-bound term for one multiply-covered puncture against its own
    reparametrizations: -+(k-1) alpha_-+ plus (sigma_bar_-+ - 1)."""
    orbit_id, k = orbit_ref
    orbit = scene.orbit(orbit_id)
    if sign == "+":
        return -(k - 1) * alpha(orbit, k, "-") + (sigma_bar(orbit, k, "-") - 1)
    if sign == "-":
        return (k - 1) * alpha(orbit, k, "+") + (sigma_bar(orbit, k, "+") - 1)
    raise InputError(f"sign must be '+' or '-', got {sign!r}")


def star(scene: Scene, u_id: str, v_id: str) -> int:
    """The trivialization-independent intersection pairing of two curves.

    Subtracts from the recorded relative intersection number the
    omega_pair term of every same-sign pair of punctures (ordered pairs,
    including coincident ones when u = v).
    """
    u = scene.curve(u_id)
    v = scene.curve(v_id)
    total = scene.pairing.get(u_id, v_id)
    for sign in ("+", "-"):
        for pu in u.punctures_with_sign(sign):
            for pv in v.punctures_with_sign(sign):
                total -= omega_pair(
                    scene, (pu.orbit, pu.multiplicity), (pv.orbit, pv.multiplicity), sign
                )
    return total


def iota_infinity(scene: Scene, u_id: str, v_id: str, geometric_count: int) -> int:
    """Hidden intersections at infinity: star(u,v) minus the actual count.

    A negative result means the supplied data cannot come from holomorphic
    curves with non-identical images, and is reported as an inconsistency.
    """
    if geometric_count < 0:
        raise InputError("geometric intersection count must be >= 0")
    hidden = star(scene, u_id, v_id) - geometric_count
    if hidden < 0:
        raise InconsistencyError(
            f"inconsistent: negative hidden count {hidden} for ({u_id!r}, {v_id!r})"
        )
    return hidden


def normal_chern(scene: Scene, u_id: str) -> int:
    """Normal Chern number: rel_c1 - chi + winding corrections at the ends."""
    u = scene.curve(u_id)
    total = u.rel_c1 - euler_char(u)
    for p in u.punctures:
        orbit = scene.orbit(p.orbit)
        if p.sign == "+":
            total += alpha(orbit, p.multiplicity, "-")
        else:
            total -= alpha(orbit, p.multiplicity, "+")
    return total


def fredholm_index(scene: Scene, u_id: str) -> int:
    """Index of the curve class: (n-3) chi + 2 rel_c1 + signed index sums."""
    u = scene.curve(u_id)
    n = u.ambient_dim_half
    total = (n - 3) * euler_char(u) + 2 * u.rel_c1
    for p in u.punctures:
        mu = cz_index(scene.orbit(p.orbit), p.multiplicity)
        total += mu if p.sign == "+" else -mu
    return total


@dataclass(frozen=True)
class CnIndexReport:
    """Both sides of the dimension-four relation 2 c_N = ind - 2 + 2g + #even."""

    two_cn: int
    index_side: int

    @property
    def holds(self) -> bool:
        return self.two_cn == self.index_side


def check_cn_index_relation(scene: Scene, u_id: str) -> CnIndexReport:
    """Verify 2*normal_chern = index - 2 + 2*genus + #even punctures."""
    u = scene.curve(u_id)
    if u.ambient_dim_half != 2:
        raise InputError("relation specific to dimension four (ambient_dim_half = 2)")
    even = sum(1 for p in u.punctures if parity(scene.orbit(p.orbit), p.multiplicity) == 0)
    lhs = 2 * normal_chern(scene, u_id)
    rhs = fredholm_index(scene, u_id) - 2 + 2 * u.genus + even
    return CnIndexReport(lhs, rhs)


def spectral_covering_total(scene: Scene, u_id: str) -> int:
    """Total spectral covering number: sum of sigma_bar_- over positive ends
    and sigma_bar_+ over negative ends; always at least #punctures."""
    u = scene.curve(u_id)
    total = 0
    for p in u.punctures:
        orbit = scene.orbit(p.orbit)
        total += sigma_bar(orbit, p.multiplicity, "-" if p.sign == "+" else "+")
    assert total >= len(u.punctures)
    return total


def adjunction_defect(scene: Scene, u_id: str) -> int:
    """Homotopy-invariant double-point count delta + delta_infinity.

    Solved from star(u,u) = 2(delta + delta_inf) + c_N + (sigma_bar - #punctures)
    for a curve the user declares simple; an odd or negative numerator means
    the scene cannot describe such a curve.
    """
    u = scene.curve(u_id)
    numerator = (
        star(scene, u_id, u_id)
        - normal_chern(scene, u_id)
        - (spectral_covering_total(scene, u_id) - len(u.punctures))
    )
    if numerator % 2 != 0:
        raise InconsistencyError(f"inconsistent scene (parity): curve {u_id!r}")
    if numerator < 0:
        raise InconsistencyError(
            f"inconsistent scene (positivity): data cannot represent a simple curve {u_id!r}"
        )
    return numerator // 2


@dataclass(frozen=True)
class RelAdjunctionReport:
    lhs_bullet: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs_bullet == self.rhs


def relative_adjunction_check(
    scene: Scene, u_id: str, delta: int, iota_tau_infty: int
) -> RelAdjunctionReport:
    """Check u .tau u = 2 delta + rel_c1 - chi + iota_tau_infty exactly."""
    u = scene.curve(u_id)
    lhs = scene.pairing.get(u_id, u_id)
    rhs = 2 * delta + u.rel_c1 - euler_char(u) + iota_tau_infty
    return RelAdjunctionReport(lhs, rhs)


def asymptotic_defect(entries) -> int:
    """Count of zeroes pushed to infinity by non-extremal end windings.

    ``entries`` is an iterable of (sign, alpha_bound, wind) where the bound
    is alpha_- for a positive end (winding must be <= it) and alpha_+ for a
    negative end (winding must be >= it).
    """
    total = 0
    for sign, alpha_bound, wind in entries:
        if sign == "+":
            if wind > alpha_bound:
                raise InputError(
                    f"winding exceeds a priori bound: {wind} > {alpha_bound} at a positive end"
                )
            total += alpha_bound - wind
        elif sign == "-":
            if wind < alpha_bound:
                raise InputError(
                    f"winding exceeds a priori bound: {wind} < {alpha_bound} at a negative end"
                )
            total += wind - alpha_bound
        else:
            raise InputError(f"sign must be '+' or '-', got {sign!r}")
    assert total >= 0
    return total


@dataclass(frozen=True)
class TransversalityReport:
    index: int
    normal_chern: int

    @property
    def automatic(self) -> bool:
        return self.index > self.normal_chern


def automatic_transversality(scene: Scene, u_id: str) -> TransversalityReport:
    """Regularity criterion for immersed curves in dimension four:
    automatic whenever ind > c_N."""
    u = scene.curve(u_id)
    if u.ambient_dim_half != 2:
        raise InputError("criterion specific to dimension four (ambient_dim_half = 2)")
    return TransversalityReport(fredholm_index(scene, u_id), normal_chern(scene, u_id))


@dataclass(frozen=True)
class FoliationReport:
    """Clause-by-clause evaluation of the local-foliation criteria."""

    index_is_two: bool
    genus_zero: bool
    all_odd: bool
    distinct_simple_orbits: bool

    @property
    def all_pass(self) -> bool:
        return (
            self.index_is_two
            and self.genus_zero
            and self.all_odd
            and self.distinct_simple_orbits
        )

    def as_dict(self) -> dict:
        return {
            "index_is_two": self.index_is_two,
            "genus_zero": self.genus_zero,
            "all_odd": self.all_odd,
            "distinct_simple_orbits": self.distinct_simple_orbits,
            "all_pass": self.all_pass,
        }


def foliation_criteria(scene: Scene, u_id: str) -> FoliationReport:
    """Evaluate the four hypotheses under which index-2 embedded curves
    foliate a neighborhood: index 2, genus 0, all asymptotic orbits odd,
    punctures at pairwise-distinct simply covered orbits."""
    u = scene.curve(u_id)
    orbits_seen = [p.orbit for p in u.punctures]
    return FoliationReport(
        index_is_two=fredholm_index(scene, u_id) == 2,
        genus_zero=u.genus == 0,
        all_odd=all(parity(scene.orbit(p.orbit), p.multiplicity) == 1 for p in u.punctures),
        distinct_simple_orbits=(
            len(set(orbits_seen)) == len(orbits_seen)
            and all(p.multiplicity == 1 for p in u.punctures)
        ),
    )


def _puncture_multiset(curve: CurveClass):
    return sorted((p.sign, p.orbit, p.multiplicity) for p in curve.punctures)


@dataclass(frozen=True)
class NodalExpansionReport:
    total_star: int
    component_sum: int

    @property
    def holds(self) -> bool:
        return self.total_star == self.component_sum


def nodal_star_expansion(
    scene: Scene, components: tuple[str, str], total_id: str
) -> NodalExpansionReport:
    """Check star(u,u) = star(v+,v+) + star(v-,v-) + 2 star(v+,v-) for a
    curve degenerating into two components whose punctures partition u's."""
    vp_id, vm_id = components
    u = scene.curve(total_id)
    vp = scene.curve(vp_id)
    vm = scene.curve(vm_id)
    if _puncture_multiset(u) != sorted(_puncture_multiset(vp) + _puncture_multiset(vm)):
        raise InputError(
            f"components do not decompose {total_id!r}: puncture multisets differ"
        )
    lhs = star(scene, total_id, total_id)
    rhs = (
        star(scene, vp_id, vp_id)
        + star(scene, vm_id, vm_id)
        + 2 * star(scene, vp_id, vm_id)
    )
    return NodalExpansionReport(lhs, rhs)


def curve_report(scene: Scene, u_id: str) -> dict:
    """JSON-ready report of every invariant of one curve in the scene.

    Raises InconsistencyError if the adjunction bookkeeping rejects the
    scene; all other fields are total.
    """
    u = scene.curve(u_id)
    report = {
        "curve": u_id,
        "chi": euler_char(u),
        "index": fredholm_index(scene, u_id),
        "c_N": normal_chern(scene, u_id),
        "sigma_bar_total": spectral_covering_total(scene, u_id),
        "foliation": foliation_criteria(scene, u_id).as_dict(),
    }
    if u.ambient_dim_half == 2:
        report["automatic_transversality"] = automatic_transversality(scene, u_id).automatic
    if scene.pairing.has(u_id, u_id):
        report["star_self"] = star(scene, u_id, u_id)
        report["adjunction_defect"] = adjunction_defect(scene, u_id)
    return report
