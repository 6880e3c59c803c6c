import json

import numpy as np
import pytest

from siefring_kit.core import (
    CoverData,
    CurveClass,
    OrbitData,
    PunctureSpec,
    RelativePairing,
    Scene,
    TrivializationShift,
    cz_index,
    euler_char,
    parity,
    scene_from_dict,
    scene_to_dict,
    shift_scene,
    sigma_bar,
)
from siefring_kit.errors import InputError

from scenegen import random_scene, random_shift


def orbit(am, ap, k=1, oid="g"):
    return OrbitData(oid, {k: CoverData(am, ap)})


class TestParityAndIndex:
    def test_odd_orbit(self):
        assert parity(orbit(0, 1), 1) == 1

    def test_even_orbit(self):
        assert parity(orbit(3, 3), 1) == 0

    def test_negative_windings(self):
        assert parity(orbit(-1, 0), 1) == 1

    def test_cz_odd(self):
        assert cz_index(orbit(0, 1), 1) == 1

    @pytest.mark.parametrize("k", [0, 1, 2, 5, -3])
    def test_cz_even_formula(self, k):
        assert cz_index(orbit(k, k), 1) == 2 * k

    def test_cz_negative(self):
        assert cz_index(orbit(-1, 0), 1) == -1

    def test_unknown_cover(self):
        with pytest.raises(InputError, match="unknown cover"):
            parity(orbit(0, 1), 2)

    def test_nondegeneracy_enforced(self):
        with pytest.raises(InputError, match="nondegeneracy"):
            CoverData(0, 2)
        with pytest.raises(InputError, match="nondegeneracy"):
            CoverData(1, 0)


class TestSigmaBar:
    def test_simple_orbit_is_one(self):
        assert sigma_bar(orbit(5, 5), 1, "-") == 1
        assert sigma_bar(orbit(5, 5), 1, "+") == 1

    def test_coprime(self):
        assert sigma_bar(orbit(1, 1, k=2), 2, "-") == 1

    def test_gcd_with_zero_is_k(self):
        assert sigma_bar(orbit(0, 0, k=4), 4, "-") == 4

    def test_divides_k(self):
        o = OrbitData("g", {4: CoverData(6, 6)})
        assert sigma_bar(o, 4, "-") == 2
        assert 4 % sigma_bar(o, 4, "-") == 0

    def test_equals_k_iff_k_divides_alpha(self):
        o = OrbitData("g", {3: CoverData(6, 7)})
        assert sigma_bar(o, 3, "-") == 3  # 3 | 6
        assert sigma_bar(o, 3, "+") == 1  # gcd(3, 7)


class TestEulerChar:
    def test_sphere(self):
        assert euler_char(CurveClass("u", 0, (), 0)) == 2

    def test_cylinder(self):
        ps = (PunctureSpec("+", "g", 1), PunctureSpec("-", "g", 1))
        assert euler_char(CurveClass("u", 0, ps, 0)) == 0

    def test_genus_two_three_punctures(self):
        ps = tuple(PunctureSpec("+", "g", 1) for _ in range(3))
        assert euler_char(CurveClass("u", 2, ps, 0)) == -5


def demo_scene():
    orbits = (
        OrbitData("a", {1: CoverData(0, 1), 2: CoverData(1, 1)}),
        OrbitData("b", {1: CoverData(-2, -1)}),
    )
    curves = (
        CurveClass(
            "u",
            0,
            (PunctureSpec("+", "a", 1), PunctureSpec("-", "a", 2)),
            3,
        ),
        CurveClass("v", 1, (PunctureSpec("+", "b", 1),), -1),
    )
    pairing = RelativePairing({("u", "u"): 2, ("u", "v"): -1, ("v", "v"): 0})
    return Scene(orbits, curves, pairing)


class TestShiftScene:
    def test_zero_shift_is_identity(self):
        scene = demo_scene()
        assert shift_scene(scene, TrivializationShift({"a": 0, "b": 0})) == scene

    def test_windings_shift_by_cover_multiple(self):
        scene = demo_scene()
        out = shift_scene(scene, TrivializationShift({"a": 2}))
        assert out.orbit("a").cover(1) == CoverData(-2, -1)
        assert out.orbit("a").cover(2) == CoverData(-3, -3)
        assert out.orbit("b").cover(1) == CoverData(-2, -1)

    def test_group_action(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            scene = random_scene(rng)
            s1 = random_shift(rng, scene)
            s2 = random_shift(rng, scene)
            once = shift_scene(shift_scene(scene, s1), s2)
            combined = TrivializationShift(
                {k: s1.shifts[k] + s2.shifts[k] for k in s1.shifts}
            )
            assert once == shift_scene(scene, combined)
            inverse = TrivializationShift({k: -v for k, v in s1.shifts.items()})
            assert shift_scene(shift_scene(scene, s1), inverse) == scene

    def test_unknown_orbit_rejected(self):
        with pytest.raises(InputError, match="unknown orbit"):
            shift_scene(demo_scene(), TrivializationShift({"nope": 1}))


class TestSceneValidation:
    def test_missing_cover_rejected(self):
        orbits = (OrbitData("a", {1: CoverData(0, 1)}),)
        curves = (CurveClass("u", 0, (PunctureSpec("+", "a", 2),), 0),)
        with pytest.raises(InputError, match="unknown cover"):
            Scene(orbits, curves, RelativePairing({}))

    def test_unknown_orbit_reference(self):
        curves = (CurveClass("u", 0, (PunctureSpec("+", "zz", 1),), 0),)
        with pytest.raises(InputError, match="unknown orbit"):
            Scene((), curves, RelativePairing({}))

    def test_pairing_symmetry_via_key_normalization(self):
        scene = demo_scene()
        assert scene.pairing.get("v", "u") == scene.pairing.get("u", "v")

    def test_duplicate_ids_rejected(self):
        o = OrbitData("a", {1: CoverData(0, 0)})
        with pytest.raises(InputError, match="duplicate orbit"):
            Scene((o, o), (), RelativePairing({}))


class TestSceneFiles:
    def test_round_trip(self):
        scene = demo_scene()
        assert scene_from_dict(scene_to_dict(scene)) == scene

    def test_unknown_top_level_key(self):
        data = scene_to_dict(demo_scene())
        data["extra"] = 1
        with pytest.raises(InputError, match="'extra'"):
            scene_from_dict(data)

    def test_unknown_nested_key(self):
        data = scene_to_dict(demo_scene())
        data["curves"][0]["surprise"] = True
        with pytest.raises(InputError, match="'surprise'"):
            scene_from_dict(data)

    def test_unknown_puncture_key(self):
        data = scene_to_dict(demo_scene())
        data["curves"][0]["punctures"][0]["weight"] = 2
        with pytest.raises(InputError, match="'weight'"):
            scene_from_dict(data)

    def test_json_serializable(self):
        text = json.dumps(scene_to_dict(demo_scene()))
        assert scene_from_dict(json.loads(text)) == demo_scene()
