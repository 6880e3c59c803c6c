"""Trivialization-invariance audit.

Every quantity the theory declares trivialization-independent must be
exactly unchanged when a scene is re-expressed through random twists.
The audit recomputes them all after each random shift and reports any
discrepancy; one breach means either corrupt scene data or a bug in the
transformation law, and both are worth a hard stop.
"""

from __future__ import annotations

import numpy as np

from . import intersection as xn
from .core import Scene, TrivializationShift, euler_char, parity, shift_scene, sigma_bar
from .errors import InconsistencyError

SHIFT_RANGE = 5


def _defect_outcome(scene: Scene, curve_id: str):
    """Adjunction defect value, or the inconsistency it raises; both must be
    stable under shifts."""
    try:
        return ("value", xn.adjunction_defect(scene, curve_id))
    except InconsistencyError as exc:
        return ("inconsistent", str(exc))


def _snapshot(scene: Scene) -> dict:
    snap = {}
    for orbit in scene.orbits:
        for k in orbit.cover_table:
            snap[f"parity[{orbit.id}^{k}]"] = parity(orbit, k)
            snap[f"sigma_bar-[{orbit.id}^{k}]"] = sigma_bar(orbit, k, "-")
            snap[f"sigma_bar+[{orbit.id}^{k}]"] = sigma_bar(orbit, k, "+")
    for curve in scene.curves:
        cid = curve.id
        snap[f"chi[{cid}]"] = euler_char(curve)
        snap[f"index[{cid}]"] = xn.fredholm_index(scene, cid)
        snap[f"c_N[{cid}]"] = xn.normal_chern(scene, cid)
        snap[f"sigma_bar_total[{cid}]"] = xn.spectral_covering_total(scene, cid)
        if scene.pairing.has(cid, cid):
            snap[f"adjunction_defect[{cid}]"] = _defect_outcome(scene, cid)
    for (u, v) in scene.pairing.entries:
        snap[f"star[{u},{v}]"] = xn.star(scene, u, v)
    return snap


def audit_scene(scene: Scene, shifts: int = 50, seed: int = 0) -> dict:
    """Apply random twists and verify all invariant quantities are fixed.

    Returns {"trials": n, "breaches": [...]}; an empty breach list is a
    pass.  Also checks that twisting by m and then -m restores the scene
    verbatim (the transformation law is a group action).
    """
    rng = np.random.default_rng(seed)
    baseline = _snapshot(scene)
    breaches = []
    for trial in range(shifts):
        twist = {
            o.id: int(rng.integers(-SHIFT_RANGE, SHIFT_RANGE + 1)) for o in scene.orbits
        }
        shifted = shift_scene(scene, TrivializationShift(twist))
        snap = _snapshot(shifted)
        for key, value in baseline.items():
            if snap[key] != value:
                breaches.append(
                    {
                        "trial": trial,
                        "quantity": key,
                        "baseline": repr(value),
                        "shifted": repr(snap[key]),
                        "twist": twist,
                    }
                )
        undone = shift_scene(shifted, TrivializationShift({k: -v for k, v in twist.items()}))
        if undone != scene:
            breaches.append(
                {
                    "trial": trial,
                    "quantity": "shift round-trip",
                    "baseline": "original scene",
                    "shifted": "scene differs after shifting by m then -m",
                    "twist": twist,
                }
            )
    return {"trials": shifts, "breaches": breaches}
