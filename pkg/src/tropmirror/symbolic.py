"""Symbolic Novikov coefficients: rational linear forms in named area symbols.

A model's structure constants are Novikov monomials whose T-exponents are
linear expressions in formal area symbols (with rational coefficients),
times a Laurent monomial in named chart/holonomy variables, times an exact
rational scalar.  This module provides that coefficient arithmetic plus
monomial substitution and numeric instantiation into :mod:`tropmirror.lpoly`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lpoly import LaurentPoly
from .novikov import NovikovSeries


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class AreaExp:
    """Linear form const + sum coeff_i * symbol_i with Fraction coefficients."""

    coeffs: tuple  # sorted tuple of (symbol, Fraction), nonzero coefficients only
    const: Fraction = Fraction(0)

    @staticmethod
    def of(mapping=None, const=0) -> "AreaExp":
        mapping = mapping or {}
        items = []
        for sym, c in mapping.items():
            c = _frac(c)
            if c:
                items.append((sym, c))
        return AreaExp(tuple(sorted(items)), _frac(const))

    @staticmethod
    def sym(name, coeff=1) -> "AreaExp":
        return AreaExp.of({name: coeff})

    @staticmethod
    def constant(c) -> "AreaExp":
        return AreaExp.of({}, c)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other) -> "AreaExp":
        if not isinstance(other, AreaExp):
            other = AreaExp.constant(other)
        acc = self.as_dict()
        for sym, c in other.coeffs:
            acc[sym] = acc.get(sym, Fraction(0)) + c
        return AreaExp.of(acc, self.const + other.const)

    def __neg__(self) -> "AreaExp":
        return AreaExp(tuple((s, -c) for s, c in self.coeffs), -self.const)

    def __sub__(self, other) -> "AreaExp":
        if not isinstance(other, AreaExp):
            other = AreaExp.constant(other)
        return self + (-other)

    def scale(self, k) -> "AreaExp":
        k = _frac(k)
        if not k:
            return AreaExp.constant(0)
        return AreaExp(tuple((s, c * k) for s, c in self.coeffs), self.const * k)

    def is_zero(self) -> bool:
        return not self.coeffs and not self.const

    def normalize(self, substitutions: dict) -> "AreaExp":
        """Eliminate constrained symbols via symbol -> AreaExp substitutions."""
        out = AreaExp.constant(self.const)
        for sym, c in self.coeffs:
            if sym in substitutions:
                out = out + substitutions[sym].normalize(substitutions).scale(c)
            else:
                out = out + AreaExp.sym(sym).scale(c)
        return out

    def evaluate(self, assignment: dict) -> Fraction:
        total = self.const
        for sym, c in self.coeffs:
            total += c * _frac(assignment[sym])
        return total

    def symbols(self) -> set:
        return {s for s, _ in self.coeffs}

    def __str__(self) -> str:
        parts = []
        if self.const:
            parts.append(str(self.const))
        for s, c in self.coeffs:
            if c == 1:
                parts.append(s)
            else:
                parts.append(f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _mono_key(vars_dict: dict) -> tuple:
    return tuple(sorted((v, int(e)) for v, e in vars_dict.items() if e))


class SymPoly:
    """Finite sum of terms scalar * T^{AreaExp} * (Laurent monomial in named variables)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, scalar in (terms or {}).items():
            scalar = _frac(scalar)
            if not scalar:
                continue
            clean[key] = clean.get(key, Fraction(0)) + scalar
            if not clean[key]:
                del clean[key]
        self.terms = clean

    @staticmethod
    def zero() -> "SymPoly":
        return SymPoly()

    @staticmethod
    def term(scalar, area=None, variables=None) -> "SymPoly":
        area = area if isinstance(area, AreaExp) else AreaExp.constant(area or 0)
        return SymPoly({(area, _mono_key(variables or {})): _frac(scalar)})

    @staticmethod
    def scalar(c) -> "SymPoly":
        return SymPoly.term(c)

    @staticmethod
    def var(name, power=1) -> "SymPoly":
        return SymPoly.term(1, None, {name: power})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single_term(self):
        """(scalar, AreaExp, vars tuple) of the unique term."""
        if len(self.terms) != 1:
            raise ValueError(f"not a monomial: {self}")
        (area, mono), scalar = next(iter(self.terms.items()))
        return scalar, area, mono

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "SymPoly":
        other = _as_sym(other)
        out = dict(self.terms)
        for key, scalar in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + scalar
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly({k: -s for k, s in self.terms.items()})

    def __sub__(self, other) -> "SymPoly":
        return self + (-_as_sym(other))

    def __mul__(self, other) -> "SymPoly":
        other = _as_sym(other)
        out = {}
        for (a1, m1), s1 in self.terms.items():
            for (a2, m2), s2 in other.terms.items():
                mono = dict(m1)
                for v, e in m2:
                    mono[v] = mono.get(v, 0) + e
                key = (a1 + a2, _mono_key(mono))
                out[key] = out.get(key, Fraction(0)) + s1 * s2
        return SymPoly(out)

    __rmul__ = __mul__

    def inv(self) -> "SymPoly":
        scalar, area, mono = self.single_term()
        return SymPoly.term(Fraction(1) / scalar, -area, {v: -e for v, e in mono})

    def __pow__(self, n: int) -> "SymPoly":
        if n < 0:
            return self.inv() ** (-n)
        result = SymPoly.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (self - _as_sym(other)).is_zero()

    def __hash__(self):
        raise TypeError("SymPoly is not hashable")

    # -- structure ----------------------------------------------------------

    def normalize(self, substitutions: dict) -> "SymPoly":
        out = {}
        for (area, mono), scalar in self.terms.items():
            key = (area.normalize(substitutions), mono)
            out[key] = out.get(key, Fraction(0)) + scalar
        return SymPoly(out)

    def substitute(self, images: dict) -> "SymPoly":
        """Replace variables by monomial SymPolys (unbound variables stay)."""
        out = SymPoly.zero()
        for (area, mono), scalar in self.terms.items():
            term = SymPoly.term(scalar, area)
            for v, e in mono:
                base = images.get(v, SymPoly.var(v))
                term = term * (base ** e)
            out = out + term
        return out

    def variables(self) -> set:
        return {v for (_, mono) in self.terms for v, _ in mono}

    def coefficient_of(self, variables: dict):
        """SymPoly of terms whose variable monomial is exactly `variables`."""
        key = _mono_key(variables)
        return SymPoly({(a, m): s for (a, m), s in self.terms.items() if m == key})

    def to_laurent(self, variable_order, assignment: dict) -> LaurentPoly:
        """Instantiate areas at exact rationals, producing a LaurentPoly."""
        variable_order = tuple(variable_order)
        out = LaurentPoly.zero(variable_order)
        for (area, mono), scalar in self.terms.items():
            exps = [0] * len(variable_order)
            for v, e in mono:
                exps[variable_order.index(v)] = e
            coeff = NovikovSeries.monomial(area.evaluate(assignment), scalar)
            out = out + LaurentPoly.monomial(variable_order, exps, coeff)
        return out

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][1], kv[0][0].const, kv[0][0].coeffs),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (area, mono), scalar in self.sorted_terms():
            factors = []
            if scalar != 1 or (area.is_zero() and not mono):
                factors.append(str(scalar))
            if not area.is_zero():
                factors.append(f"T^({area})")
            for v, e in mono:
                factors.append(f"{v}^{e}" if e != 1 else v)
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymPoly({self})"


def _as_sym(x) -> SymPoly:
    if isinstance(x, SymPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SymPoly.scalar(x)
    raise TypeError(f"cannot coerce {x!r} to SymPoly")
