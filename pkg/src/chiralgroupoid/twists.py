"""Exact roots of unity, admissible twist data on S, induced groupoid
2-cocycles and their mirrors.

A circle value ``exp(2 pi i q)`` is stored by its angle ``q`` in [0, 1) as a
``Fraction``, so products are sums of angles and every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import product
from math import lcm
from typing import Optional, Sequence

from .groupoid import (
    FiniteGroupoid,
    GermGroupoid,
    Identification,
    build_universal_groupoid,
    canonical_universal_mirror,
    opposite_groupoid,
)
from .reports import FormatError, ValidationReport, VerificationFailed
from .semigroup import FiniteInverseSemigroup, idempotents, mirror_semigroup


@total_ordering
@dataclass(frozen=True)
class CircleValue:
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        a = Fraction(self.angle) % 1
        object.__setattr__(self, "angle", a)

    @classmethod
    def of(cls, num: int, den: int = 1) -> "CircleValue":
        if den <= 0:
            raise FormatError(f"denominator must be positive, got {den}")
        return cls(Fraction(num, den))

    @property
    def num(self) -> int:
        return self.angle.numerator

    @property
    def den(self) -> int:
        return self.angle.denominator

    def __mul__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue(self.angle + other.angle)

    def __truediv__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue(self.angle - other.angle)

    def __pow__(self, k: int) -> "CircleValue":
        return CircleValue(self.angle * k)

    def conj(self) -> "CircleValue":
        return CircleValue(-self.angle)

    def __lt__(self, other: "CircleValue") -> bool:
        return self.angle < other.angle

    @property
    def is_one(self) -> bool:
        return self.angle == 0

    def pair(self) -> list[int]:
        return [self.num, self.den]

    def __repr__(self) -> str:
        return f"T({self.num}/{self.den})"

    def __complex__(self) -> complex:
        import cmath

        return cmath.exp(2j * cmath.pi * float(self.angle))


ONE = CircleValue()


def circle_mul(a: CircleValue, b: CircleValue) -> CircleValue:
    return a * b


def circle_conj(a: CircleValue) -> CircleValue:
    return a.conj()


def circle_eq(a: CircleValue, b: CircleValue) -> bool:
    return a.angle == b.angle


# -- twist data on S ---------------------------------------------------------


@dataclass(frozen=True)
class TwistData:
    semigroup: FiniteInverseSemigroup
    values: tuple[tuple[CircleValue, ...], ...]

    def __post_init__(self):
        n = self.semigroup.n
        vals = tuple(tuple(v if isinstance(v, CircleValue) else CircleValue(Fraction(v)) for v in row) for row in self.values)
        if len(vals) != n or any(len(row) != n for row in vals):
            raise FormatError(f"twist must be {n}x{n}")
        object.__setattr__(self, "values", vals)

    def __call__(self, s: int, t: int) -> CircleValue:
        return self.values[s][t]

    @property
    def den_lcm(self) -> int:
        return lcm(*(v.den for row in self.values for v in row))

    @property
    def is_trivial(self) -> bool:
        return all(v.is_one for row in self.values for v in row)


def trivial_twist(S: FiniteInverseSemigroup) -> TwistData:
    return TwistData(S, tuple((ONE,) * S.n for _ in S.elements))


def coboundary_twist(S: FiniteInverseSemigroup, b: Sequence) -> TwistData:
    """``omega(s, t) = b(s) b(t) / b(st)`` from angles ``b`` (which should vanish on idempotents)."""
    angles = [Fraction(x) for x in b]
    return TwistData(
        S,
        tuple(tuple(CircleValue(angles[s] + angles[t] - angles[S.table[s][t]]) for t in S.elements) for s in S.elements),
    )


def twist_from_function(S: FiniteInverseSemigroup, f) -> TwistData:
    return TwistData(S, tuple(tuple(CircleValue(Fraction(f(s, t))) for t in S.elements) for s in S.elements))


def validate_twist_data(S: FiniteInverseSemigroup, omega: TwistData, gu: Optional[GermGroupoid] = None) -> ValidationReport:
    """Normalization, the associativity constraint and germ invariance.

    Germ invariance is read with composability at ``chi`` meaning ``chi`` in
    D(t*t) and ``theta_t(chi)`` in D(s*s); the germs of ``t`` at ``chi`` and
    of ``s`` at ``theta_t(chi)`` must then determine ``omega(s, t)``.
    Every violation is listed.
    """
    S.require_inverse()
    if omega.semigroup.n != S.n:
        raise FormatError(f"twist is for {omega.semigroup.n} elements, semigroup has {S.n}")
    rep = ValidationReport("twist")
    E = idempotents(S)
    w = omega.values
    for e in E:
        for s in S.elements:
            if not w[e][s].is_one:
                rep.add("normalization", (e, s), f"omega(e,s) = {w[e][s]!r}")
            if not w[s][e].is_one:
                rep.add("normalization", (s, e), f"omega(s,e) = {w[s][e]!r}")
    for s, t, u in product(S.elements, repeat=3):
        st, tu = S.table[s][t], S.table[t][u]
        if w[s][t] * w[st][u] != w[t][u] * w[s][tu]:
            rep.add("associativity", (s, t, u))
    rep.checked["triples"] = S.n ** 3

    if gu is None:
        gu = build_universal_groupoid(S)
    sp = gu.space
    seen: dict = {}
    for c in range(len(sp)):
        for t in S.elements:
            tc = sp.theta(t, c)
            if tc < 0:
                continue
            for s in S.elements:
                if sp.theta(s, tc) < 0:
                    continue
                key = (gu.germ[(s, tc)], gu.germ[(t, c)])
                if key in seen:
                    s0, t0, c0 = seen[key]
                    if w[s][t] != w[s0][t0]:
                        rep.add("germ_invariance", (s0, t0, s, t, c), f"{w[s0][t0]!r} != {w[s][t]!r}")
                else:
                    seen[key] = (s, t, c)
    return rep


def mirror_twist(omega: TwistData) -> TwistData:
    """Twist on S# given by ``omega#(s, t) = conj(omega(t, s))``; raises if it fails validation."""
    S = omega.semigroup
    Sm = mirror_semigroup(S)
    out = TwistData(Sm, tuple(tuple(omega.values[t][s].conj() for t in S.elements) for s in S.elements))
    rep = validate_twist_data(Sm, out)
    if not rep.valid:
        raise VerificationFailed("mirror twist failed validation", rep)
    return out


# -- groupoid cocycles -------------------------------------------------------


@dataclass(frozen=True)
class GroupoidCocycle:
    """Circle values on composable pairs, keyed ``(g, h)`` in written order."""

    groupoid: FiniteGroupoid
    values: dict

    def __call__(self, g: int, h: int) -> CircleValue:
        return self.values[(g, h)]

    @property
    def den_lcm(self) -> int:
        return lcm(1, *(v.den for v in self.values.values()))

    @property
    def is_trivial(self) -> bool:
        return all(v.is_one for v in self.values.values())


def trivial_cocycle(G: FiniteGroupoid) -> GroupoidCocycle:
    return GroupoidCocycle(G, {p: ONE for p in G.composable_pairs()})


def validate_cocycle(G: FiniteGroupoid, sigma: GroupoidCocycle) -> ValidationReport:
    rep = ValidationReport("cocycle")
    pairs = set(G.composable_pairs())
    if set(sigma.values) != pairs:
        rep.add("domain", (), f"{len(sigma.values)} values for {len(pairs)} composable pairs")
        return rep
    units = set(G.unit_arrow)
    for g, h in sorted(pairs):
        if (g in units or h in units) and not sigma.values[(g, h)].is_one:
            rep.add("normalization", (g, h))
    triples = 0
    for g, h in sorted(pairs):
        gh = G.comp[g][h]
        for k in G.arrows():
            hk = G.comp[h][k]
            if hk < 0:
                continue
            triples += 1
            if sigma.values[(g, h)] * sigma.values[(gh, k)] != sigma.values[(h, k)] * sigma.values[(g, hk)]:
                rep.add("cocycle_identity", (g, h, k))
    rep.checked["composable_triples"] = triples
    return rep


def induce_cocycle(gg: GermGroupoid, omega: TwistData) -> GroupoidCocycle:
    """``sigma([s, theta_t(b)], [t, b]) = omega(s, t)`` on a germ groupoid.

    Works for the universal and the representation germ model alike.  All
    representative pairs of each composable pair are evaluated; disagreement
    or a failed cocycle check raises ``VerificationFailed`` with the report.
    """
    G = gg.groupoid
    rep = ValidationReport("induced_cocycle")
    values = {}
    w = omega.values
    for g, h in G.composable_pairs():
        found = {w[s][t] for (s, _), (t, _) in product(gg.reps[g], gg.reps[h])}
        if len(found) != 1:
            rep.add("well_defined", (g, h), ", ".join(repr(v) for v in sorted(found)))
        values[(g, h)] = min(found)
    sigma = GroupoidCocycle(G, values)
    if rep.valid:
        rep.extend(validate_cocycle(G, sigma))
    if not rep.valid:
        raise VerificationFailed("induced cocycle is not well defined", rep)
    return sigma


def mirror_cocycle(sigma: GroupoidCocycle) -> GroupoidCocycle:
    """``sigma#(g, h) = conj(sigma(h, g))`` on the opposite groupoid."""
    Gop = opposite_groupoid(sigma.groupoid)
    return GroupoidCocycle(Gop, {(g, h): sigma.values[(h, g)].conj() for (h, g) in sigma.values})


def transport_cocycle(sigma: GroupoidCocycle, H: FiniteGroupoid, arrow_map: Sequence[int]) -> GroupoidCocycle:
    """Push ``sigma`` along an arrow bijection onto ``H``."""
    return GroupoidCocycle(H, {(arrow_map[g], arrow_map[h]): v for (g, h), v in sigma.values.items()})


@dataclass
class BridgeReport:
    identification: Identification
    pairs_checked: int
    failure: Optional[tuple]  # (a, b, lhs, rhs) for the first failing pair of G_u(S#)

    @property
    def ok(self) -> bool:
        return self.identification.ok and self.failure is None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "identification": self.identification.report.to_json(),
            "pairs_checked": self.pairs_checked,
            "failure": None
            if self.failure is None
            else {"pair": list(self.failure[:2]), "mirror_side": self.failure[2].pair(), "opposite_side": self.failure[3].pair()},
        }


def verify_universal_bridge(S: FiniteInverseSemigroup, omega: TwistData) -> BridgeReport:
    """Compare ``(G_u(S#), sigma_{omega#})`` with ``(G_u(S)^op, sigma_omega#)`` pair by pair."""
    gu = build_universal_groupoid(S)
    gu_m = build_universal_groupoid(mirror_semigroup(S))
    ident = canonical_universal_mirror(S, gu_m, gu)
    if not ident.ok:
        return BridgeReport(ident, 0, None)
    sigma_m = induce_cocycle(gu_m, mirror_twist(omega))
    sigma_op = mirror_cocycle(induce_cocycle(gu, omega))
    F = ident.functor.arrow_map
    checked = 0
    for (a, b), v in sorted(sigma_m.values.items()):
        checked += 1
        other = sigma_op.values.get((F[a], F[b]))
        if other is None or other != v:
            return BridgeReport(ident, checked, (a, b, v, other if other is not None else ONE))
    return BridgeReport(ident, checked, None)
