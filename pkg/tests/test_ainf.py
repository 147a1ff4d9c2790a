"""Tests for the curated A-infinity local models and coordinate-change solving."""

import random
from fractions import Fraction

import pytest

from tropmirror import ainf
from tropmirror.symbolic import AreaExp, SymPoly


def sym(name, coeff=1):
    return AreaExp.sym(name, coeff)


def area(**kwargs):
    return AreaExp.of(kwargs)


class TestLoading:
    @pytest.mark.parametrize(
        "name", ["seidel_pants", "isotopy_pair", "two_pants", "circle_seidel"]
    )
    def test_loads_and_degrees_check(self, name):
        model = ainf.load_model(name)
        assert model.name == name
        assert model.entries

    def test_unknown_generator_rejected(self):
        model = ainf.load_model("seidel_pants")
        with pytest.raises(KeyError):
            model.element([("nope", 1)])


class TestSeidelPants:
    def test_weak_mc_gives_potential(self):
        model = ainf.load_model("seidel_pants")
        kind, w = model.weak_mc_check("S")
        assert kind == "potential"
        assert w == SymPoly.term(1, sym("A1"), {"x": 1, "y": 1, "z": 1})

    def test_trivial_spin_is_obstructed(self):
        model = ainf.load_model("seidel_pants", spin=False)
        kind, gen, coeff = model.weak_mc_check("S")
        assert kind == "obstruction"
        assert gen in ("Xb", "Yb", "Zb")
        assert not coeff.is_zero()

    def test_unconstrained_areas_are_obstructed(self):
        model = ainf.load_model("seidel_pants", apply_constraints=False)
        kind = model.weak_mc_check("S")[0]
        assert kind == "obstruction"

    def test_exact_reduce_strips_areas(self):
        model = ainf.load_model("seidel_pants")
        exact = ainf.exact_reduce(model)
        for entry in exact.entries:
            _, a, _ = entry.coeff.single_term()
            assert a.is_zero()
        kind, w = exact.weak_mc_check("S")
        assert kind == "potential"
        assert w == SymPoly.term(1, None, {"x": 1, "y": 1, "z": 1})

    def test_exact_reduce_requires_offsets(self):
        model = ainf.load_model("isotopy_pair")
        with pytest.raises(ValueError):
            ainf.exact_reduce(model)


class TestIsotopyPair:
    """Isotopic pair of Seidel Lagrangians: x' = T^{2d} x, y' = T^{-d} y, z' = T^{-d} z."""

    def setup_method(self):
        self.model = ainf.load_model("isotopy_pair")
        self.alpha = self.model.element([("P6", 1)])
        self.change = ainf.solve_isomorphism(self.model, self.alpha, ("x'", "y'", "z'"))

    def test_coordinate_change(self):
        d = area(k1=2, k5=4, k6=2, k7=3)  # 2k1 + k2 - k5 - k6 - k7 after elimination
        assert self.change.solved["x'"] == SymPoly.term(1, d.scale(2), {"x": 1})
        assert self.change.solved["y'"] == SymPoly.term(1, -d, {"y": 1})
        assert self.change.solved["z'"] == SymPoly.term(1, -d, {"z": 1})

    def test_inverse_scalar_both_orders(self):
        beta = self.model.element([("P4", 1)])
        out = ainf.verify_isomorphism(self.model, self.alpha, beta, self.change)
        k = area(k1=4, k5=8, k6=6, k7=7)  # 4k1 + k2 + k3 + k5 + k6 + k7
        assert out["scalar"] == SymPoly.term(1, k)
        assert out["scalar_rev"] == SymPoly.term(1, k)
        assert out["gamma"] == {} and out["gamma_rev"] == {}

    def test_potential_invariance(self):
        assert ainf.potential_invariance(self.model, "L0", "L1", self.change)

    def test_numeric_instantiation(self):
        rng = random.Random(20240817)
        for _ in range(20):
            assignment = ainf.random_area_assignment(self.model, rng)
            mm = self.change.monomial_map(("x'", "y'", "z'"), ("x", "y", "z"), assignment)
            d = 2 * assignment["k1"] + assignment["k2"] - assignment["k5"] \
                - assignment["k6"] - assignment["k7"]
            (exps, unit), = mm.image_of("x'").terms.items()
            assert unit.val() == 2 * d and exps == (1, 0, 0)
            (exps, unit), = mm.image_of("y'").terms.items()
            assert unit.val() == -d and exps == (0, 1, 0)


class TestTwoPants:
    """Immersed two-object chart: x' = x^{-1} T^d, y' = x y T^{-e}, z' = x z T^{-e}."""

    def setup_method(self):
        self.model = ainf.load_model("two_pants")
        self.alpha = self.model.element([("P4", 1), ("Q4", -1)])
        self.change = ainf.solve_isomorphism(self.model, self.alpha, ("x'", "y'", "z'"))

    def test_coordinate_change(self):
        d = area(k1=4, k2=2, k3=2, k5=-1, k6=-1)
        e = area(k1=2, k3=2, k6=-1)
        assert self.change.solved["x'"] == SymPoly.term(1, d, {"x": -1})
        assert self.change.solved["y'"] == SymPoly.term(1, -e, {"x": 1, "y": 1})
        assert self.change.solved["z'"] == SymPoly.term(1, -e, {"x": 1, "z": 1})

    def test_inverse_scalar_both_orders(self):
        beta = self.model.element([("Q1r", 1), ("P1r", 1)])
        out = ainf.verify_isomorphism(self.model, self.alpha, beta, self.change)
        c = area(k1=4, k2=2, k3=2, k4=1)
        assert out["scalar"] == SymPoly.term(1, c)
        assert out["scalar_rev"] == SymPoly.term(1, c)

    def test_potential_invariance(self):
        assert ainf.potential_invariance(self.model, "L", "Lt", self.change)

    @pytest.mark.parametrize("a", [0, 1, 2])
    def test_twisted_variants(self, a):
        change = ainf.variant_isomorphism(self.model, a)
        d = area(k1=4, k2=2, k3=2, k5=-1, k6=-1)
        e = area(k1=2, k3=2, k6=-1)
        assert change.solved["x'"] == SymPoly.term(1, d, {"x": -1})
        assert change.solved["y'"] == SymPoly.term(1, -e, {"x": a, "y": 1})
        assert change.solved["z'"] == SymPoly.term(1, -e, {"x": 2 - a, "z": 1})

    def test_gluing_region_relations(self):
        region = self.change.gluing_region()
        rels = {r["variable"]: r["relation"] for r in region}
        assert rels == {"x'": ">", "y'": ">", "z'": ">"}


class TestCircleSeidel:
    """Circle chart against a Seidel chart: x1 = t T^d, y1 = y0 T^{-h1}, z1 = z0 T^{-h2}."""

    def setup_method(self):
        self.model = ainf.load_model("circle_seidel")
        self.alpha = self.model.element([("P1", 1), ("P2", 1)])
        self.change = ainf.solve_isomorphism(self.model, self.alpha, ("x1", "y1", "z1"))

    def test_coordinate_change(self):
        d = area(k7=1, k1=-1, k2=-1, k3=-1, k4=-1, k5=-1)
        h1 = area(k7=1, k1=-2, k2=-1)
        h2 = area(k7=1, k4=-1, k5=-2)
        assert self.change.solved["x1"] == SymPoly.term(1, d, {"t": 1})
        assert self.change.solved["y1"] == SymPoly.term(1, -h1, {"y0": 1})
        assert self.change.solved["z1"] == SymPoly.term(1, -h2, {"z0": 1})

    def test_inverse_scalar_both_orders(self):
        beta = self.model.element([("Q1r", 1), ("Q2r", -1)])
        out = ainf.verify_isomorphism(self.model, self.alpha, beta, self.change)
        assert out["scalar"] == SymPoly.term(1, sym("k7"))
        assert out["scalar_rev"] == SymPoly.term(1, sym("k7"))

    def test_potential_invariance(self):
        assert ainf.potential_invariance(self.model, "C", "S1", self.change)

    def test_holonomy_subring(self):
        region = self.change.gluing_region()
        rels = {r["variable"]: r["relation"] for r in region}
        assert rels["x1"] == ">"  # x1 lands in Lambda+; t itself is a unit


class TestGaugeChange:
    def test_base_move(self):
        change, rescale = ainf.gauge_change(0, 0)
        assert change.solved["y"] == SymPoly.term(1, None, {"t": -2, "y'": 1})
        assert change.solved["z"] == SymPoly.var("z'")
        assert rescale["A'"] == SymPoly.scalar(1)
        assert rescale["B'"] == SymPoly.scalar(1)

    def test_general_move(self):
        change, rescale = ainf.gauge_change(3, 1)
        assert change.solved["z"] == SymPoly.term(1, None, {"t": -2, "z'": 1})
        assert change.solved["y"] == SymPoly.term(1, None, {"t": 0, "y'": 1})
        assert rescale["A'"] == SymPoly.term(1, None, {"t": -3})
        assert rescale["B'"] == SymPoly.term(1, None, {"t": -1})

    def test_steps_compose_to_identity(self):
        fwd, r_fwd = ainf.gauge_change_steps(3, 1, 2, 5)
        bwd, r_bwd = ainf.gauge_change_steps(-3, -1, -2, -5)
        for var, primed in (("z", "z'"), ("y", "y'")):
            inner = bwd.solved[var].substitute({primed: SymPoly.var(var + "''")})
            total = fwd.solved[var].substitute({primed: inner, "t": SymPoly.var("t")})
            assert total == SymPoly.var(var + "''")
        for gen in ("A'", "B'"):
            assert r_fwd[gen] * r_bwd[gen] == SymPoly.scalar(1)


class TestMoveVar:
    def test_shapes(self):
        change = ainf.move_var("A")
        a = sym("A")
        assert change.solved["x~"] == SymPoly.term(1, a, {"x": 1})
        assert change.solved["y~"] == SymPoly.term(1, -a, {"y": 1})
        assert change.solved["z~"] == SymPoly.term(1, -a, {"z": 1})
        w = SymPoly.term(1, None, {"x~": 1, "y~": 1, "z~": 1})
        assert change.substitute(w) == SymPoly.term(
            1, -a, {"x": 1, "y": 1, "z": 1}
        )


class TestDegreeRule:
    def test_degree_mismatch_rejected(self):
        from tropmirror.ainf import Entry, Generator, _check_entry_degrees

        gens = {
            "a": Generator("a", "L", "L", 1),
            "u": Generator("u", "L", "L", 1),
        }
        bad = Entry(("a", "a"), "u", SymPoly.scalar(1))
        with pytest.raises(ValueError):
            _check_entry_degrees(bad, gens, "test")
