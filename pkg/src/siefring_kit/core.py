"""Combinatorial data model for punctured-curve scenes.

A scene bundles Reeb-orbit winding data, curve classes and relative
intersection numbers, all measured against a fixed baseline trivialization
of each simple orbit.  Everything here is immutable; derived quantities
that must not depend on the trivialization are tested against
``shift_scene``, which re-expresses a scene in a twisted trivialization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import InputError

SIGNS = ("+", "-")


@dataclass(frozen=True)
class CoverData:
    """Extremal winding numbers of one cover of a simple orbit."""

    alpha_minus: int
    alpha_plus: int

    def __post_init__(self):
        p = self.alpha_plus - self.alpha_minus
        if p not in (0, 1):
            raise InputError(
                "cover data violates nondegeneracy: alpha_plus - alpha_minus "
                f"must be 0 or 1, got {p}"
            )


@dataclass(frozen=True)
class OrbitData:
    """A simple Reeb orbit with winding data for each needed cover.

    ``cover_table[k]`` holds the extremal windings of the k-fold cover
    relative to the baseline trivialization of the simple orbit, pulled
    back to the cover.  The table is explicit per multiplicity because the
    covers' windings are not determined by the k=1 entry alone.
    """

    id: str
    cover_table: dict[int, CoverData]

    def __post_init__(self):
        for k in self.cover_table:
            if not (isinstance(k, int) and k >= 1):
                raise InputError(f"orbit {self.id!r}: cover multiplicity {k!r} invalid")

    def cover(self, k: int) -> CoverData:
        try:
            return self.cover_table[k]
        except KeyError:
            raise InputError(f"unknown cover: orbit {self.id!r} has no multiplicity {k}") from None


@dataclass(frozen=True)
class PunctureSpec:
    """One puncture: sign, simple-orbit id, covering multiplicity."""

    sign: str
    orbit: str
    multiplicity: int

    def __post_init__(self):
        if self.sign not in SIGNS:
            raise InputError(f"puncture sign must be '+' or '-', got {self.sign!r}")
        if self.multiplicity < 1:
            raise InputError(f"puncture multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True)
class CurveClass:
    """Topological data of an asymptotically cylindrical curve class.

    ``rel_c1`` is the first Chern number of the pulled-back tangent bundle
    relative to the baseline trivializations; like the pairing entries it
    is user input, since it cannot be derived from combinatorics alone.
    """

    id: str
    genus: int
    punctures: tuple[PunctureSpec, ...]
    rel_c1: int
    ambient_dim_half: int = 2

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"curve {self.id!r}: genus must be >= 0")
        if self.ambient_dim_half < 2:
            raise InputError(f"curve {self.id!r}: ambient_dim_half must be >= 2")
        object.__setattr__(self, "punctures", tuple(self.punctures))

    def punctures_with_sign(self, sign: str) -> tuple[PunctureSpec, ...]:
        return tuple(p for p in self.punctures if p.sign == sign)


def _pair_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class RelativePairing:
    """Symmetric table of relative intersection numbers u .tau v."""

    entries: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        table = {}
        for (u, v), value in self.entries.items():
            key = _pair_key(u, v)
            if key in table and table[key] != value:
                raise InputError(f"conflicting pairing entries for {key}")
            table[key] = int(value)
        object.__setattr__(self, "entries", table)

    @staticmethod
    def from_items(items) -> "RelativePairing":
        table = {}
        for u, v, value in items:
            key = _pair_key(u, v)
            if key in table and table[key] != value:
                raise InputError(f"conflicting pairing entries for {key}")
            table[key] = int(value)
        return RelativePairing(table)

    def get(self, u: str, v: str) -> int:
        key = _pair_key(u, v)
        try:
            return self.entries[key]
        except KeyError:
            raise InputError(f"missing pairing entry for curves {u!r}, {v!r}") from None

    def has(self, u: str, v: str) -> bool:
        return _pair_key(u, v) in self.entries


@dataclass(frozen=True)
class Scene:
    """A named collection of orbits, curves and pairwise relative data."""

    orbits: tuple[OrbitData, ...]
    curves: tuple[CurveClass, ...]
    pairing: RelativePairing

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        object.__setattr__(self, "curves", tuple(self.curves))
        orbit_ids = [o.id for o in self.orbits]
        if len(set(orbit_ids)) != len(orbit_ids):
            raise InputError("duplicate orbit ids in scene")
        curve_ids = [c.id for c in self.curves]
        if len(set(curve_ids)) != len(curve_ids):
            raise InputError("duplicate curve ids in scene")
        by_id = {o.id: o for o in self.orbits}
        for c in self.curves:
            for p in c.punctures:
                if p.orbit not in by_id:
                    raise InputError(f"curve {c.id!r} references unknown orbit {p.orbit!r}")
                by_id[p.orbit].cover(p.multiplicity)  # raises if the cover is missing
        known = set(curve_ids)
        for (u, v) in self.pairing.entries:
            if u not in known or v not in known:
                raise InputError(f"pairing references unknown curve in pair ({u!r}, {v!r})")

    def orbit(self, orbit_id: str) -> OrbitData:
        for o in self.orbits:
            if o.id == orbit_id:
                return o
        raise InputError(f"unknown orbit id {orbit_id!r}")

    def curve(self, curve_id: str) -> CurveClass:
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise InputError(f"unknown curve id {curve_id!r}")


@dataclass(frozen=True)
class TrivializationShift:
    """Extra integer twists added to the baseline trivialization, per orbit."""

    shifts: dict[str, int]


def alpha(orbit: OrbitData, k: int, sign: str) -> int:
    """Extremal winding alpha_sign of the k-fold cover."""
    cov = orbit.cover(k)
    if sign == "+":
        return cov.alpha_plus
    if sign == "-":
        return cov.alpha_minus
    raise InputError(f"sign must be '+' or '-', got {sign!r}")


def parity(orbit: OrbitData, k: int) -> int:
    """Parity of the k-fold cover: alpha_plus - alpha_minus, always 0 or 1."""
    cov = orbit.cover(k)
    return cov.alpha_plus - cov.alpha_minus


def cz_index(orbit: OrbitData, k: int) -> int:
    """Conley-Zehnder index of the k-fold cover relative to the baseline.

    Computed as 2*alpha_minus + parity; the equivalent expression
    2*alpha_plus - parity must agree, which is enforced.
    """
    cov = orbit.cover(k)
    p = cov.alpha_plus - cov.alpha_minus
    mu = 2 * cov.alpha_minus + p
    assert mu == 2 * cov.alpha_plus - p
    return mu


def sigma_bar(orbit: OrbitData, k: int, sign: str) -> int:
    """Covering multiplicity gcd(k, alpha_sign) of the extremal eigenfunction.

    The convention gcd(k, 0) = k makes a winding-0 extremal eigenfunction on
    a k-fold cover count as fully multiply covered.
    """
    a = alpha(orbit, k, sign)
    return math.gcd(k, a) if a != 0 else k


def euler_char(curve: CurveClass) -> int:
    """Euler characteristic of the punctured domain: 2 - 2g - #punctures."""
    return 2 - 2 * curve.genus - len(curve.punctures)


def shift_scene(scene: Scene, shift: TrivializationShift) -> Scene:
    """Re-express a scene after adding twists to baseline trivializations.

    Adding m twists at a simple orbit decreases the windings of its k-fold
    cover by k*m; rel_c1 and the pairing entries transform so that every
    trivialization-independent quantity (index, normal Chern number, the
    star-pairing, spectral covering numbers) is fixed exactly.
    """
    for oid in shift.shifts:
        scene.orbit(oid)  # raises on unknown ids
    m = {o.id: shift.shifts.get(o.id, 0) for o in scene.orbits}

    orbits = tuple(
        OrbitData(
            o.id,
            {
                k: CoverData(c.alpha_minus - k * m[o.id], c.alpha_plus - k * m[o.id])
                for k, c in o.cover_table.items()
            },
        )
        for o in scene.orbits
    )

    def c1_correction(curve: CurveClass) -> int:
        total = 0
        for p in curve.punctures:
            term = p.multiplicity * m[p.orbit]
            total += term if p.sign == "+" else -term
        return total

    curves = tuple(
        CurveClass(c.id, c.genus, c.punctures, c.rel_c1 + c1_correction(c), c.ambient_dim_half)
        for c in scene.curves
    )

    by_id = {c.id: c for c in scene.curves}

    def bullet_correction(u: CurveClass, v: CurveClass) -> int:
        total = 0
        for sign, sgn in (("+", 1), ("-", -1)):
            for pu in u.punctures_with_sign(sign):
                for pv in v.punctures_with_sign(sign):
                    if pu.orbit == pv.orbit:
                        total += sgn * m[pu.orbit] * pu.multiplicity * pv.multiplicity
        return total

    entries = {
        key: value + bullet_correction(by_id[key[0]], by_id[key[1]])
        for key, value in scene.pairing.entries.items()
    }
    return Scene(orbits, curves, RelativePairing(entries))


# -- scene file format -------------------------------------------------------

_SCENE_KEYS = {"orbits", "curves", "pairing"}
_ORBIT_KEYS = {"id", "covers"}
_COVER_KEYS = {"alpha_minus", "alpha_plus"}
_CURVE_KEYS = {"id", "genus", "rel_c1", "ambient_dim_half", "punctures"}
_PUNCTURE_KEYS = {"sign", "orbit", "multiplicity"}
_PAIRING_KEYS = {"u", "v", "bullet"}


def _reject_unknown(obj: dict, allowed: set, where: str):
    for key in obj:
        if key not in allowed:
            raise InputError(f"unknown key {key!r} in {where}")


def scene_from_dict(data: dict) -> Scene:
    """Build a Scene from the JSON object layout, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise InputError("scene file must contain a JSON object")
    _reject_unknown(data, _SCENE_KEYS, "scene")
    orbits = []
    for od in data.get("orbits", []):
        _reject_unknown(od, _ORBIT_KEYS, "orbit")
        covers = {}
        for k_str, cd in od.get("covers", {}).items():
            _reject_unknown(cd, _COVER_KEYS, f"cover {k_str!r} of orbit {od.get('id')!r}")
            try:
                k = int(k_str)
            except ValueError:
                raise InputError(f"cover multiplicity {k_str!r} is not an integer") from None
            covers[k] = CoverData(int(cd["alpha_minus"]), int(cd["alpha_plus"]))
        orbits.append(OrbitData(str(od["id"]), covers))
    curves = []
    for cd in data.get("curves", []):
        _reject_unknown(cd, _CURVE_KEYS, "curve")
        punctures = []
        for pd in cd.get("punctures", []):
            _reject_unknown(pd, _PUNCTURE_KEYS, f"puncture of curve {cd.get('id')!r}")
            punctures.append(PunctureSpec(str(pd["sign"]), str(pd["orbit"]), int(pd["multiplicity"])))
        curves.append(
            CurveClass(
                str(cd["id"]),
                int(cd.get("genus", 0)),
                tuple(punctures),
                int(cd["rel_c1"]),
                int(cd.get("ambient_dim_half", 2)),
            )
        )
    items = []
    for pd in data.get("pairing", []):
        _reject_unknown(pd, _PAIRING_KEYS, "pairing entry")
        items.append((str(pd["u"]), str(pd["v"]), int(pd["bullet"])))
    return Scene(tuple(orbits), tuple(curves), RelativePairing.from_items(items))


def scene_to_dict(scene: Scene) -> dict:
    return {
        "orbits": [
            {
                "id": o.id,
                "covers": {
                    str(k): {"alpha_minus": c.alpha_minus, "alpha_plus": c.alpha_plus}
                    for k, c in sorted(o.cover_table.items())
                },
            }
            for o in scene.orbits
        ],
        "curves": [
            {
                "id": c.id,
                "genus": c.genus,
                "rel_c1": c.rel_c1,
                "ambient_dim_half": c.ambient_dim_half,
                "punctures": [
                    {"sign": p.sign, "orbit": p.orbit, "multiplicity": p.multiplicity}
                    for p in c.punctures
                ],
            }
            for c in scene.curves
        ],
        "pairing": [
            {"u": u, "v": v, "bullet": value}
            for (u, v), value in sorted(scene.pairing.entries.items())
        ],
    }


def load_scene(path) -> Scene:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read scene file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in scene file: {exc}") from exc
    return scene_from_dict(data)
