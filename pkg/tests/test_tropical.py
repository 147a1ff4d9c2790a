"""Tests for tropical curves, dual fans, chart transitions, and coverings."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror import tropical as tr
from tropmirror.lpoly import LaurentPoly
from tropmirror.novikov import T

CURVES = ["pair_of_pants", "conifold", "kp2", "toriccyeg"]
ORIGIN = (Fraction(0), Fraction(0))


def pants_doc(**edits):
    doc = {
        "name": "test",
        "vertices": {"v": {"position": [0, 0], "edges": ["x", "y", "z"]}},
        "edges": {
            "x": {"ends": ["v"], "direction": [1, 0]},
            "y": {"ends": ["v"], "direction": [0, 1]},
            "z": {"ends": ["v"], "direction": [-1, -1]},
        },
    }
    for eid, d in edits.items():
        doc["edges"][eid]["direction"] = d
    return doc


class TestValidation:
    @pytest.mark.parametrize("name", CURVES)
    def test_shipped_curves_load(self, name):
        curve = tr.load_curve(name)
        assert curve.name == name

    def test_unbalanced_vertex_rejected(self):
        with pytest.raises(tr.CurveValidationError) as exc:
            tr.load_curve(pants_doc(x=[2, 1]))
        assert any("unbalanced" in e for e in exc.value.errors)

    def test_non_primitive_direction_rejected(self):
        doc = pants_doc(x=[2, 0], y=[0, 2])
        doc["edges"]["z"]["direction"] = [-2, -2]
        with pytest.raises(tr.CurveValidationError) as exc:
            tr.load_curve(doc)
        assert sum("not primitive" in e for e in exc.value.errors) == 3

    def test_positivity_failure_rejected(self):
        doc = pants_doc()
        doc["vertices"]["v"]["position"] = [-1, -1]
        with pytest.raises(tr.CurveValidationError) as exc:
            tr.load_curve(doc)
        assert any("positivity" in e for e in exc.value.errors)

    def test_missing_a1_rejected(self):
        doc = {
            "name": "test",
            "vertices": {
                "v1": {"position": [0, 0], "edges": ["e", "y1", "z1"]},
                "v2": {"position": [0, 1], "edges": ["e", "y2", "z2"]},
            },
            "edges": {
                "e": {"ends": ["v1", "v2"], "direction": [0, 1]},
                "y1": {"ends": ["v1"], "direction": [-1, -1]},
                "z1": {"ends": ["v1"], "direction": [1, 0]},
                "y2": {"ends": ["v2"], "direction": [1, 1]},
                "z2": {"ends": ["v2"], "direction": [-1, 0]},
            },
        }
        with pytest.raises(tr.CurveValidationError) as exc:
            tr.load_curve(doc)
        assert any("missing a1" in e for e in exc.value.errors)


class TestDualFan:
    def test_pair_of_pants_is_c3(self):
        fan = tr.dual_fan(tr.load_curve("pair_of_pants"))
        assert len(fan.cones) == 1
        assert len(fan.rays) == 3

    def test_conifold_is_resolved(self):
        fan = tr.dual_fan(tr.load_curve("conifold"))
        pts = {(r[0], r[1]) for r in fan.rays}
        assert pts == {(0, 0), (0, -1), (-1, 0), (-1, 1)}  # unit parallelogram
        assert len(fan.cones) == 2

    def test_kp2_rays(self):
        fan = tr.dual_fan(tr.load_curve("kp2"))
        assert set(fan.rays) == {(0, 0, 1), (1, 0, 1), (0, 1, 1), (-1, -1, 1)}

    def test_toriccyeg_shape(self):
        curve = tr.load_curve("toriccyeg")
        fan = tr.dual_fan(curve)
        assert len(fan.rays) == 5
        assert len(fan.cones) == 5
        assert len(curve.bounded_faces()) == 2

    @pytest.mark.parametrize("name", CURVES)
    def test_calabi_yau_heights(self, name):
        fan = tr.dual_fan(tr.load_curve(name))
        assert all(r[2] == 1 for r in fan.rays)
        for cone in fan.cones.values():
            assert len(cone) == 3


class TestExactOffsets:
    def test_origin_vertex(self):
        curve = tr.load_curve("kp2")
        for eid in curve.vertices["v0"].edges:
            assert curve.exact_offset("v0", eid) == 0

    def test_displaced_vertex(self):
        curve = tr.load_curve("kp2")
        # e01 points (0,-1) at v1=(0,3); the outgoing leg w1=(-1,2) pays -6
        assert curve.exact_offset("v1", "e01") == 3
        assert curve.exact_offset("v1", "w1") == -6

    def test_offsets_sum_to_zero(self):
        curve = tr.load_curve("toriccyeg")
        for vid, v in curve.vertices.items():
            assert sum(curve.exact_offset(vid, e) for e in v.edges) == 0


class TestTransitions:
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_conifold_family_gluing(self, k):
        curve = tr.conifold_curve(k)
        mm = tr.transition_map(curve, "e", exact=True, reverse=True)
        tgt = curve.chart_vars("v2")
        assert mm.image_of("v1.x") == LaurentPoly.var(tgt, "v2.x", -1)
        assert mm.image_of("v1.y") == LaurentPoly.monomial(
            tgt, [k, 0, 1]) == tr.transition_map(curve, "e", reverse=True).image_of("v1.y")
        assert mm.image_of("v1.z") == LaurentPoly.monomial(tgt, [2 - k, 1, 0])

    def test_conifold_a2_minus_a1(self):
        for k in range(4):
            curve = tr.conifold_curve(k)
            assert curve.a2("e") - curve.edges["e"].a1 == k - 2

    def test_infinite_edge_rejected(self):
        curve = tr.load_curve("kp2")
        with pytest.raises(ValueError):
            tr.transition_map(curve, "w0")

    @pytest.mark.parametrize("name", ["conifold", "kp2", "toriccyeg"])
    @pytest.mark.parametrize("exact", [True, False])
    def test_roundtrip_identity(self, name, exact):
        curve = tr.load_curve(name)
        for eid, e in curve.edges.items():
            if not e.finite:
                continue
            fwd = tr.transition_map(curve, eid, exact=exact, split="geometric")
            rev = tr.transition_map(curve, eid, exact=exact, split="geometric",
                                    reverse=True)
            assert fwd.compose(rev).is_identity()
            assert rev.compose(fwd).is_identity()

    @pytest.mark.parametrize("name", ["conifold", "kp2", "toriccyeg"])
    def test_offsets_absorb_area_factors(self, name):
        curve = tr.load_curve(name)
        for eid, e in curve.edges.items():
            if e.finite:
                assert tr.absorbs_offsets(curve, eid, split="geometric")

    def test_half_split_needs_explicit_rescaling(self):
        curve = tr.load_curve("kp2")
        assert not tr.absorbs_offsets(curve, "e01", split="half")

    def test_immersed_factors(self):
        curve = tr.load_curve("kp2")
        mm = tr.transition_map(curve, "e01", exact=False, split="geometric")
        exps, unit = mm.image_of("v1.x").single_term()
        assert unit == T(-3) and exps == (-1, 0, 0)


class TestCocycle:
    def test_trees_trivially_pass(self):
        for name in ("pair_of_pants", "conifold"):
            report = tr.cocycle_check(tr.load_curve(name))
            assert report["ok"] and report["cycles"] == []

    @pytest.mark.parametrize("name", ["kp2", "toriccyeg"])
    def test_shipped_curves_pass(self, name):
        report = tr.cocycle_check(tr.load_curve(name))
        assert report["ok"]
        assert len(report["cycles"]) == (1 if name == "kp2" else 2)

    def test_perturbed_a1_fails(self):
        curve = tr.load_curve("kp2", a1_overrides={"e01": 1})
        report = tr.cocycle_check(curve)
        assert not report["ok"]
        cyc = report["cycles"][0]
        assert "v1.x^-1*v1.y" in cyc["residual"]
        assert "v1.x*v1.z" in cyc["residual"]


class TestPotential:
    def test_single_chart(self):
        curve = tr.load_curve("pair_of_pants")
        w = tr.potential(curve, "v")
        assert w == LaurentPoly.monomial(curve.chart_vars("v"), (1, 1, 1))

    def test_conifold_pair(self):
        curve = tr.load_curve("conifold")
        mm = tr.transition_map(curve, "e")
        assert mm.substitute(tr.potential(curve, "v2")) == tr.potential(curve, "v1")

    @pytest.mark.parametrize("name", CURVES)
    @pytest.mark.parametrize(
        "mode", [("exact", "half"), ("immersed", "half"), ("immersed", "geometric")]
    )
    def test_global_check(self, name, mode):
        exact, split = mode[0] == "exact", mode[1]
        report = tr.global_potential_check(tr.load_curve(name), exact=exact, split=split)
        assert report["ok"]


class TestCovering:
    def test_pair_of_pants_single_chart(self):
        charts, cert = tr.covering_collection(tr.load_curve("pair_of_pants"))
        assert [c.label for c in charts] == ["S(v)"]
        assert cert["ok"]

    def test_kp2_collection(self):
        curve = tr.load_curve("kp2")
        charts, cert = tr.covering_collection(curve)
        assert cert["ok"]
        assert len(charts) == 6
        plain = [c for c in charts if not c.deformations]
        tilde = [c for c in charts if c.deformations]
        assert {c.vertex for c in plain} == {"v0", "v1", "v2"}
        assert {c.vertex for c in tilde} == {"v0", "v1", "v2"}
        # the v1 chart deforms along the edge toward v0 past the edge length
        (letter, shift, style), = next(
            c for c in tilde if c.vertex == "v1").deformations
        assert letter == "x" and style == "tilde"
        assert shift == Fraction(13, 4) > curve.affine_length("e01")

    def test_kp2_undeformed_charts_do_not_cover(self):
        curve = tr.load_curve("kp2")
        charts = [tr.Chart(v) for v in curve.vertices]
        cert = tr.covering_certificate(curve, charts)
        assert not cert["ok"]
        gaps = [s["edge"] for s in cert["strata"] if not s["covered"]]
        assert set(gaps) == {"e01", "e02", "e12"}

    def test_triple_overlap_detected(self):
        curve = tr.load_curve("kp2")
        charts = [tr.Chart("v0"), tr.Chart("v0"), tr.Chart("v0")]
        cert = tr.covering_certificate(curve, charts)
        assert not cert["ok"]
        assert any(s["triple_overlaps"] for s in cert["strata"])

    def test_toriccyeg_collection(self):
        curve = tr.load_curve("toriccyeg")
        charts, cert = tr.covering_collection(curve)
        assert cert["ok"]
        assert any(len(c.deformations) == 2 for c in charts)
        for c in charts:
            for _, shift, _ in c.deformations:
                assert shift.denominator <= 4

    def test_prime_style(self):
        curve = tr.load_curve("kp2")
        charts, cert = tr.covering_collection(curve, style="prime")
        assert cert["ok"]
        assert all(
            style == "prime" for c in charts for _, _, style in c.deformations
        )


class TestConeImage:
    def test_undeformed_apexes(self):
        curve = tr.load_curve("kp2")
        mats = tr.chart_matrices(curve)
        apex = {
            v: tr.cone_image(curve, tr.Chart(v), matrices=mats)["apex"]
            for v in curve.vertices
        }
        assert apex == {"v0": (0, 0), "v1": (-3, 0), "v2": (0, -3)}

    def test_deformation_translates_cone(self):
        curve = tr.load_curve("kp2")
        mats = tr.chart_matrices(curve)
        h = Fraction(13, 4)
        before = tr.cone_image(curve, tr.Chart("v1"), matrices=mats)
        after = tr.cone_image(curve, tr.Chart("v1").deformed("x", h), matrices=mats)
        assert after["rays"] == before["rays"]
        move = tuple(a - b for a, b in zip(after["apex"], before["apex"]))
        assert move == (h, 2 * h)


class TestDivisors:
    def test_kp2_divisor_coefficients(self):
        curve = tr.load_curve("kp2")
        finite = ["e01", "e02", "e12"]
        assert all(curve.a2(e) == 1 and curve.affine_length(e) == 3 for e in finite)
        for k in (-1, 0, 1, 2):
            windings = {e: 3 * k - 1 for e in finite}
            rows = tr.divisor_data(curve, ORIGIN, windings)
            assert [r["coefficient"] for r in rows] == [3 * k] * 3
            assert tr.line_bundle_degree(curve, ORIGIN, windings) == k

    def test_boundary_directions_are_ccw(self):
        curve = tr.load_curve("kp2")
        rows = tr.divisor_data(curve, ORIGIN, {e: 0 for e in ["e01", "e02", "e12"]})
        dirs = {r["edge"]: r["direction"] for r in rows}
        assert dirs == {"e01": (0, -1), "e02": (1, 0), "e12": (-1, 1)}

    def test_non_uniform_windings_have_no_degree(self):
        curve = tr.load_curve("kp2")
        w = {"e01": 2, "e02": 2, "e12": 5}
        assert tr.line_bundle_degree(curve, ORIGIN, w) is None


@settings(max_examples=40, deadline=None)
@given(k=st.integers(-4, 8), a1=st.integers(-6, 6))
def test_conifold_properties(k, a1):
    curve = tr.conifold_curve(k)
    curve = tr.load_curve(
        {
            "name": "c",
            "vertices": {v.id: {"position": [str(p) for p in v.position],
                                "edges": list(v.edges)}
                         for v in curve.vertices.values()},
            "edges": {
                e.id: ({"ends": list(e.ends), "direction": list(e.direction), "a1": a1}
                       if e.finite else
                       {"ends": list(e.ends), "direction": list(e.direction)})
                for e in curve.edges.values()
            },
        }
    )
    assert curve.a2("e") - a1 == k - 2
    fwd = tr.transition_map(curve, "e", exact=False, split="geometric")
    rev = tr.transition_map(curve, "e", exact=False, split="geometric", reverse=True)
    assert fwd.compose(rev).is_identity()
    assert tr.global_potential_check(curve, exact=False, split="half")["ok"]
    assert tr.absorbs_offsets(curve, "e", split="geometric")
