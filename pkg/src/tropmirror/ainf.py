"""Curated finite A-infinity local models and their Floer-theoretic algebra.

A local model lists two or three Lagrangian-type objects, the generators of
the Hom spaces between them, boundary deformations b per object, and a finite
table of structure-constant entries.  Each entry records one polygon count:
an ordered input sequence (real generators interleaved with deformation
generators), an output generator, a sign, a Novikov area (linear form in the
model's area symbols) and an optional holonomy monomial.

Operations: the deformed operations m_k^{b_0,...,b_k}, weak Maurer-Cartan
verification, solving for coordinate changes from the vanishing of m_1 of an
isomorphism candidate, verification of the isomorphism equations, gauge
changes on a pair-of-circles, and reduction to exact (T-free) models.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .lpoly import MonomialMap
from .symbolic import AreaExp, SymPoly

SUBRING_NAMES = ("Lambda", "Lambda0", "Lambda+", "Lambda0x")


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str
    degree: int  # Z/2


@dataclass(frozen=True)
class Entry:
    inputs: tuple
    output: str
    coeff: SymPoly  # sign * T^{area} * holonomy monomial
    sign_unknown: bool = False


@dataclass
class AInfLocalModel:
    name: str
    objects: tuple
    generators: dict  # name -> Generator
    units: dict  # object -> tuple of unit-summand generator names
    variables: dict  # object -> tuple of deformation/holonomy variable names
    deformations: dict  # object -> {generator name: variable name}
    entries: list
    constraints: dict  # symbol -> AreaExp (eliminations among area symbols)
    area_symbols: tuple
    free_symbols: tuple
    subrings: dict = field(default_factory=dict)  # variable -> subring name
    offsets: dict = field(default_factory=dict)  # generator -> AreaExp
    max_b_insertions: int = 3
    ainf_complete: bool = False

    # -- basic structure ----------------------------------------------------

    def unit_element(self, obj: str) -> dict:
        return {g: SymPoly.scalar(1) for g in self.units[obj]}

    def element(self, pairs) -> dict:
        """Formal sum from (generator, coefficient) pairs."""
        out = {}
        for g, c in pairs:
            if g not in self.generators:
                raise KeyError(f"unknown generator {g}")
            c = c if isinstance(c, SymPoly) else SymPoly.scalar(c)
            out[g] = out.get(g, SymPoly.zero()) + c
        return {g: c for g, c in out.items() if not c.is_zero()}

    def hom_pair(self, element: dict):
        """(source, target) shared by all generators of a formal sum."""
        pairs = {(self.generators[g].source, self.generators[g].target) for g in element}
        if len(pairs) != 1:
            raise ValueError(f"element mixes Hom spaces: {sorted(pairs)}")
        return next(iter(pairs))

    def normalize(self, poly: SymPoly) -> SymPoly:
        return poly.normalize(self.constraints)

    # -- deformed operations ------------------------------------------------

    def _match_entry(self, entry: Entry, seq, slots):
        """All ways to read an entry as (b-insertions interleaved with seq).

        Returns a list of variable-name tuples, one per match; each match
        also certifies the b-insertion budget.
        """
        tokens = entry.inputs
        if len(tokens) - len(seq) > self.max_b_insertions:
            return []
        results = []

        def go(ti, si, acc):
            if ti == len(tokens):
                if si == len(seq):
                    results.append(tuple(acc))
                return
            tok = tokens[ti]
            if si < len(seq) and tok == seq[si]:
                go(ti + 1, si + 1, acc)
            var = self.deformations.get(slots[si], {}).get(tok)
            if var is not None:
                go(ti + 1, si, acc + [var])

        go(0, 0, [])
        return results

    def deformed_m(self, inputs, obj=None) -> dict:
        """m_k^{b_0,...,b_k} of formal sums, with all b-insertions.

        ``inputs`` is a list of formal sums (dicts generator -> SymPoly);
        for k = 0 pass an empty list and the object label.
        """
        if not inputs:
            if obj is None:
                raise ValueError("m_0 needs the object label")
            basis_lists = [()]
            coeff_lists = [SymPoly.scalar(1)]
            slot_lists = [(obj,)]
        else:
            basis_lists, coeff_lists, slot_lists = [()], [SymPoly.scalar(1)], [None]
            for element in inputs:
                nb, nc = [], []
                for seq, coeff in zip(basis_lists, coeff_lists):
                    for g, c in element.items():
                        nb.append(seq + (g,))
                        nc.append(coeff * c)
                basis_lists, coeff_lists = nb, nc
            slot_lists = []
            for seq in basis_lists:
                gens = [self.generators[g] for g in seq]
                ok = all(gens[i].target == gens[i + 1].source for i in range(len(gens) - 1))
                slot_lists.append(
                    (gens[0].source,) + tuple(g.target for g in gens) if ok else None
                )
        out: dict = {}
        for seq, coeff, slots in zip(basis_lists, coeff_lists, slot_lists):
            if slots is None:
                continue  # non-composable basis combination contributes nothing
            for entry in self.entries:
                for match in self._match_entry(entry, seq, slots):
                    term = coeff * entry.coeff
                    for var in match:
                        term = term * SymPoly.var(var)
                    out[entry.output] = out.get(entry.output, SymPoly.zero()) + term
        return {
            g: c
            for g, c in ((g, self.normalize(c)) for g, c in out.items())
            if not c.is_zero()
        }

    def weak_mc_check(self, obj: str):
        """Return ("potential", W) or ("obstruction", generator, coefficient)."""
        m0 = self.deformed_m([], obj=obj)
        units = tuple(self.units[obj])
        for g, c in m0.items():
            if g not in units:
                return ("obstruction", g, c)
        if not m0:
            return ("potential", SymPoly.zero())
        w = m0.get(units[0], SymPoly.zero())
        for u in units[1:]:
            if not (m0.get(u, SymPoly.zero()) - w).is_zero():
                return ("obstruction", u, m0.get(u, SymPoly.zero()))
        return ("potential", w)

    def potential(self, obj: str) -> SymPoly:
        kind, value = self.weak_mc_check(obj)
        if kind != "potential":
            raise ValueError(f"object {obj} is obstructed at {value}")
        return value


@dataclass
class CoordinateChange:
    """Solved variables as monomials in the remaining ones."""

    solved: dict  # variable -> SymPoly monomial
    unknowns: tuple
    constraints: dict
    subrings: dict = field(default_factory=dict)

    def substitute(self, poly: SymPoly) -> SymPoly:
        return poly.substitute(self.solved).normalize(self.constraints)

    def apply(self, element: dict) -> dict:
        out = {g: self.substitute(c) for g, c in element.items()}
        return {g: c for g, c in out.items() if not c.is_zero()}

    def monomial_map(self, source_order, target_order, assignment) -> MonomialMap:
        """Numeric MonomialMap at an exact rational area assignment."""
        from .novikov import NovikovSeries

        table = {}
        for v in source_order:
            scalar, area, mono = self.solved[v].normalize(self.constraints).single_term()
            unit = NovikovSeries.monomial(area.evaluate(assignment), scalar)
            table[v] = (unit, dict(mono))
        return MonomialMap.build(tuple(source_order), tuple(target_order), table)

    def gluing_region(self, subrings: dict = None):
        """Valuation inequalities cutting out the overlap of the two charts.

        Each solved relation v = s*T^a*prod(w^e) yields the requirement that
        val(v) stay in its declared subring; returned as records
        (variable, {w: e}, AreaExp a, relation) with relation from the
        subring of v (">" for Lambda+, ">=" for Lambda0, "==" for Lambda0x).
        """
        rels = {"Lambda+": ">", "Lambda0": ">=", "Lambda0x": "==", "Lambda": "any"}
        out = []
        for v, expr in self.solved.items():
            _, area, mono = expr.normalize(self.constraints).single_term()
            rel = rels[(subrings or self.subrings).get(v, "Lambda+")]
            out.append({"variable": v, "exponents": dict(mono), "area": area, "relation": rel})
        return out

    def __str__(self) -> str:
        return "\n".join(f"{v} <- {self.solved[v]}" for v in sorted(self.solved))


def solve_isomorphism(model: AInfLocalModel, alpha: dict, unknowns) -> CoordinateChange:
    """Coordinate change making the candidate alpha a Floer cocycle.

    Collects m_1^{b,b'}(alpha) per output generator, equates the coefficients
    to zero and eliminates the unknown variables from binomial relations.
    Non-binomial or inconsistent systems are reported, not guessed at.
    """
    unknowns = tuple(unknowns)
    image = model.deformed_m([alpha])
    equations = [(g, c) for g, c in image.items()]
    solved: dict = {}

    def reduce(poly: SymPoly) -> SymPoly:
        return model.normalize(poly.substitute(solved))

    pending = list(equations)
    progress = True
    while pending and progress:
        progress = False
        remaining = []
        for g, poly in pending:
            cur = reduce(poly)
            if cur.is_zero():
                progress = True
                continue
            sol = _solve_binomial(cur, unknowns, solved)
            if sol is not None:
                var, expr = sol
                solved[var] = model.normalize(expr)
                progress = True
            else:
                remaining.append((g, poly))
        pending = remaining
    residuals = [(g, reduce(p)) for g, p in pending if not reduce(p).is_zero()]
    if residuals:
        lines = ", ".join(f"{g}: {p}" for g, p in residuals)
        raise ValueError(f"isomorphism system not solvable by monomial relations ({lines})")
    return CoordinateChange(solved, unknowns, model.constraints, dict(model.subrings))


def _solve_binomial(poly: SymPoly, unknowns, solved):
    """From c1*M1 + c2*M2 = 0, isolate one unsolved unknown of exponent +-1."""
    if len(poly.terms) != 2:
        return None
    (k1, s1), (k2, s2) = poly.terms.items()
    for (area, mono), scalar, (oarea, omono), oscalar in (
        (k1, s1, k2, s2),
        (k2, s2, k1, s1),
    ):
        for var, exp in mono:
            if var not in unknowns or var in solved or exp not in (1, -1):
                continue
            others = [v for v, _ in mono if v != var and v in unknowns and v not in solved]
            if others or any(v in unknowns and v not in solved for v, _ in omono):
                continue
            rest = SymPoly.term(scalar, area, {v: e for v, e in mono if v != var})
            expr = SymPoly.term(-oscalar, oarea, dict(omono)) * rest.inv()
            return var, expr if exp == 1 else expr.inv()
    return None


def verify_isomorphism(model: AInfLocalModel, alpha: dict, beta: dict, change: CoordinateChange):
    """Check m1(alpha) = m1(beta) = 0 and m2(alpha,beta) = c * unit both ways.

    Returns {"scalar": c, "scalar_rev": c', "gamma": 0, "gamma_rev": 0};
    raises with the residual otherwise (nonzero homotopies are out of scope
    for the shipped models, which satisfy the identities on the nose).
    """
    src, mid = model.hom_pair(alpha)
    mid2, src2 = model.hom_pair(beta)
    if (mid, src) != (mid2, src2):
        raise ValueError("beta is not a candidate inverse of alpha")
    for name, el in (("alpha", alpha), ("beta", beta)):
        image = change.apply(model.deformed_m([el]))
        if image:
            raise ValueError(f"m1({name}) != 0 after coordinate change: {image}")
    out = {}
    for tag, first, second, obj in (
        ("scalar", alpha, beta, src),
        ("scalar_rev", beta, alpha, mid),
    ):
        prod = change.apply(model.deformed_m([first, second]))
        units = tuple(model.units[obj])
        extra = {g: c for g, c in prod.items() if g not in units}
        if extra:
            raise ValueError(f"m2 product has non-unit output: {extra}")
        coeffs = [prod.get(u, SymPoly.zero()) for u in units]
        for c in coeffs[1:]:
            if not (c - coeffs[0]).is_zero():
                raise ValueError(f"m2 product is not a multiple of the unit: {prod}")
        out[tag] = coeffs[0]
    out["gamma"] = {}
    out["gamma_rev"] = {}
    return out


def potential_invariance(model: AInfLocalModel, obj_from: str, obj_to: str, change: CoordinateChange) -> bool:
    """W_from == W_to after rewriting obj_to's variables via the change."""
    w_from = model.potential(obj_from)
    w_to = change.substitute(model.potential(obj_to))
    return (model.normalize(w_from) - w_to).is_zero()


def variant_isomorphism(model: AInfLocalModel, a: int, base: str = "P4", other: str = "Q4",
                        unknowns=("x'", "y'", "z'"), invert: str = "x") -> CoordinateChange:
    """Coordinate change from the twisted candidate x^{a-1} P4 - Q4."""
    alpha = model.element([(base, SymPoly.var(invert, a - 1)), (other, -1)])
    return solve_isomorphism(model, alpha, unknowns)


def gauge_change_steps(z1: int, z2: int, y1: int, y2: int):
    """Compose elementary gauge-point crossings on a pair-of-circles.

    The two gauge points cross the immersed point z by z1 and z2 times and
    the immersed point y by y1 and y2 times (signed; negative undoes an
    upward crossing).  Per upward crossing of the first point through z:
    z = t^{-1} z' and A' picks t^{-1}; of the second point through z:
    z = t z' and B' picks t^{-1}; crossings through y act on y by t and
    t^{-1} respectively with trivial gluing on A', B'.
    """
    zpow = -z1 + z2
    ypow = y1 - y2
    change = CoordinateChange(
        {
            "z": SymPoly.term(1, None, {"t": zpow, "z'": 1}),
            "y": SymPoly.term(1, None, {"t": ypow, "y'": 1}),
            "t": SymPoly.var("t'"),
        },
        ("z", "y", "t"),
        {},
    )
    rescale = {"A'": SymPoly.term(1, None, {"t": -z1}), "B'": SymPoly.term(1, None, {"t": -z2})}
    return change, rescale


def gauge_change(a1: int, a2: int):
    """Gauge change on a pair-of-circles moving the gauge cycle P to P'.

    The two gauge points pass through the immersed point z by a1 and a2
    times; the geometry of the move makes them pass through y by a1 - 1 and
    a2 + 1 times.  Composed totals: z = t^{a2-a1} z', y = t^{a1-a2-2} y',
    t = t', with gluing A' <-> t^{-a1} A', B' <-> t^{-a2} B'.
    """
    return gauge_change_steps(a1, a2, a1 - 1, a2 + 1)


def move_var(area_symbol: str = "A") -> CoordinateChange:
    """Isomorphism between a Seidel Lagrangian and its stretched deformation.

    The stretched chart's triangle has area A while the limit chart's has 0:
    x~ = T^A x, y~ = T^{-A} y, z~ = T^{-A} z.
    """
    a = AreaExp.sym(area_symbol)
    return CoordinateChange(
        {
            "x~": SymPoly.term(1, a, {"x": 1}),
            "y~": SymPoly.term(1, -a, {"y": 1}),
            "z~": SymPoly.term(1, -a, {"z": 1}),
        },
        ("x~", "y~", "z~"),
        {},
    )


def exact_reduce(model: AInfLocalModel) -> AInfLocalModel:
    """Rescale generators by their exact offsets, producing a T-free model.

    A generator g with offset f becomes g_ex = T^{f} g; an entry with inputs
    g_1..g_n, output h and area a acquires area a + f(g_1)+...+f(g_n) - f(h),
    which must vanish under the model's area constraints (the exactness
    certificate).  The reduced model's deformation variables are the exact
    variables x_ex = T^{-f} x.
    """
    if not model.offsets:
        raise ValueError(f"model {model.name} carries no exact offsets")

    def offset(g):
        return model.offsets.get(g, AreaExp.constant(0)).normalize(model.constraints)

    new_entries = []
    for entry in model.entries:
        scalar, area, mono = entry.coeff.single_term()
        shifted = area
        for g in entry.inputs:
            shifted = shifted + offset(g)
        shifted = (shifted - offset(entry.output)).normalize(model.constraints)
        if not shifted.is_zero():
            raise ValueError(
                f"entry {entry.inputs} -> {entry.output} is not exact: residual T^({shifted})"
            )
        new_entries.append(
            Entry(entry.inputs, entry.output, SymPoly.term(scalar, None, dict(mono)), entry.sign_unknown)
        )
    return AInfLocalModel(
        name=model.name + "_exact",
        objects=model.objects,
        generators=dict(model.generators),
        units=dict(model.units),
        variables=dict(model.variables),
        deformations=dict(model.deformations),
        entries=new_entries,
        constraints=dict(model.constraints),
        area_symbols=model.area_symbols,
        free_symbols=model.free_symbols,
        subrings=dict(model.subrings),
        offsets={},
        max_b_insertions=model.max_b_insertions,
        ainf_complete=model.ainf_complete,
    )


# -- loading ----------------------------------------------------------------


def _area_from_json(spec) -> AreaExp:
    if spec is None:
        return AreaExp.constant(0)
    mapping = {k: Fraction(str(v)) for k, v in spec.items() if k != "_const"}
    const = Fraction(str(spec.get("_const", 0)))
    return AreaExp.of(mapping, const)


def load_model(name: str, apply_constraints: bool = True, spin: bool = True) -> AInfLocalModel:
    """Load a shipped model from the package data directory.

    ``spin=False`` drops the per-entry sign flips coming from the marked
    spin point (useful to exhibit the obstructed, trivial-spin case);
    ``apply_constraints=False`` keeps all area symbols independent.
    """
    text = resources.files("tropmirror.data").joinpath(f"{name}.json").read_text()
    doc = json.loads(text)
    generators = {
        g["name"]: Generator(g["name"], g["source"], g["target"], int(g["degree"]))
        for g in doc["generators"]
    }
    entries = []
    for e in doc["entries"]:
        sign = int(e.get("sign", 1))
        if spin and e.get("spin_parity", 0) % 2:
            sign = -sign
        coeff = SymPoly.term(sign, _area_from_json(e.get("area")), e.get("vars", {}))
        entry = Entry(tuple(e["inputs"]), e["output"], coeff, bool(e.get("sign_unknown", False)))
        _check_entry_degrees(entry, generators, doc["name"])
        entries.append(entry)
    constraints = (
        {sym: _area_from_json(spec) for sym, spec in doc.get("constraints", {}).items()}
        if apply_constraints
        else {}
    )
    return AInfLocalModel(
        name=doc["name"],
        objects=tuple(doc["objects"]),
        generators=generators,
        units={k: tuple(v) for k, v in doc["units"].items()},
        variables={k: tuple(v) for k, v in doc.get("variables", {}).items()},
        deformations={k: dict(v) for k, v in doc["deformations"].items()},
        entries=entries,
        constraints=constraints,
        area_symbols=tuple(doc.get("area_symbols", ())),
        free_symbols=tuple(doc.get("free_symbols", ())),
        subrings=dict(doc.get("subrings", {})),
        offsets={k: _area_from_json(v) for k, v in doc.get("offsets", {}).items()},
        max_b_insertions=int(doc.get("max_b_insertions", 3)),
        ainf_complete=bool(doc.get("ainf_complete", False)),
    )


def _check_entry_degrees(entry: Entry, generators: dict, model_name: str):
    """|output|' = 1 + sum |inputs|' over Z/2."""
    degs = []
    for g in entry.inputs:
        if g not in generators:
            raise KeyError(f"{model_name}: unknown generator {g} in entry")
        degs.append(generators[g].degree)
    expected = (sum(degs) + 2 - len(degs)) % 2
    actual = generators[entry.output].degree % 2
    if expected != actual:
        raise ValueError(
            f"{model_name}: degree mismatch in entry {entry.inputs} -> {entry.output}"
        )


def random_area_assignment(model: AInfLocalModel, rng) -> dict:
    """Random positive rationals for the free symbols, extended to all symbols."""
    assignment = {
        s: Fraction(rng.randint(1, 40), rng.randint(1, 8)) for s in model.free_symbols
    }
    for sym in model.area_symbols:
        if sym in assignment:
            continue
        if sym in model.constraints:
            assignment[sym] = model.constraints[sym].normalize(model.constraints).evaluate(assignment)
        else:
            assignment[sym] = Fraction(rng.randint(1, 40), rng.randint(1, 8))
    return assignment
