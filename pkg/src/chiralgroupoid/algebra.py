"""Finite twisted convolution *-algebras held as exact structure constants.

Basis element ``i`` is the indicator of arrow ``i``.  ``mult[(i, j)] = (k, c)``
means ``d_i d_j = c d_k``; absent pairs multiply to zero.  ``star[i] = (k, c)``
means ``d_i* = c d_k``.  The star is conjugate linear.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Optional, Sequence

from .groupoid import FiniteGroupoid, opposite_groupoid
from .reports import DomainError, ValidationReport, VerificationFailed
from .twists import ONE, CircleValue, GroupoidCocycle, mirror_cocycle, validate_cocycle


@dataclass(frozen=True)
class TwistedAlgebra:
    dim: int
    mult: dict
    star: tuple

    def product(self, i: int, j: int):
        return self.mult.get((i, j))

    @property
    def den_lcm(self) -> int:
        dens = [c.den for _, c in self.mult.values()] + [c.den for _, c in self.star]
        return lcm(1, *dens)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "mult": [[i, j, k, c.pair()] for (i, j), (k, c) in sorted(self.mult.items())],
            "star": [[i, k, c.pair()] for i, (k, c) in enumerate(self.star)],
        }

    def fingerprint(self) -> str:
        return hashlib.sha256(repr(self.to_json()).encode()).hexdigest()


def verify_algebra(A: TwistedAlgebra) -> ValidationReport:
    """Associativity on all basis triples, ``(ab)* = b* a*`` and ``a** = a``."""
    rep = ValidationReport("algebra")
    n = A.dim
    for a, b, c in product(range(n), repeat=3):
        ab, bc = A.mult.get((a, b)), A.mult.get((b, c))
        left = None if ab is None else _scale(A.mult.get((ab[0], c)), ab[1])
        right = None if bc is None else _scale(A.mult.get((a, bc[0])), bc[1])
        if left != right:
            rep.add("associativity", (a, b, c))
    rep.checked["triples"] = n ** 3
    for a, b in product(range(n), repeat=2):
        ab = A.mult.get((a, b))
        lhs = None if ab is None else _scale(A.star[ab[0]], ab[1].conj())
        (sb, cb), (sa, ca) = A.star[b], A.star[a]
        rhs = _scale(A.mult.get((sb, sa)), cb * ca)
        if lhs != rhs:
            rep.add("star_antimultiplicative", (a, b))
    for a in range(n):
        k, c = A.star[a]
        k2, c2 = A.star[k]
        if k2 != a or not (c.conj() * c2).is_one:
            rep.add("star_involutive", (a,))
    return rep


def _scale(term, c: CircleValue):
    if term is None:
        return None
    return (term[0], term[1] * c)


def build_algebra(G: FiniteGroupoid, sigma: GroupoidCocycle) -> TwistedAlgebra:
    """Structure constants ``d_a d_b = sigma(a, b) d_ab`` and
    ``d_b* = conj(sigma(b^-1, b)) d_{b^-1}``; refuses an invalid cocycle and
    raises if the result fails any algebra check."""
    cr = validate_cocycle(G, sigma)
    if not cr.valid:
        raise DomainError(f"cocycle invalid: {cr}")
    mult = {(g, h): (G.comp[g][h], sigma.values[(g, h)]) for g, h in G.composable_pairs()}
    star = tuple((G.inv[g], sigma.values[(G.inv[g], g)].conj()) for g in G.arrows())
    A = TwistedAlgebra(G.n_arrows, mult, star)
    rep = verify_algebra(A)
    if not rep.valid:
        raise VerificationFailed("built algebra fails its invariants", rep)
    return A


def mirror_algebra(G: FiniteGroupoid, sigma: GroupoidCocycle) -> TwistedAlgebra:
    """Algebra of the mirror ``(G^op, sigma#)``."""
    return build_algebra(opposite_groupoid(G), mirror_cocycle(sigma))


def opposite_algebra(A: TwistedAlgebra) -> TwistedAlgebra:
    out = TwistedAlgebra(A.dim, {(j, i): v for (i, j), v in A.mult.items()}, A.star)
    rep = verify_algebra(out)
    if not rep.valid:
        raise VerificationFailed("opposite algebra fails its invariants", rep)
    return out


# -- maps --------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """``d_i -> c_i d_{k_i}`` extended linearly."""

    basis_map: tuple

    def to_json(self) -> list:
        return [[k, c.pair()] for k, c in self.basis_map]


@dataclass
class CheckedMap:
    map: AlgebraMap
    report: ValidationReport

    @property
    def ok(self) -> bool:
        return self.report.valid


def verify_algebra_map(F: AlgebraMap, A: TwistedAlgebra, B: TwistedAlgebra) -> ValidationReport:
    rep = ValidationReport("algebra_map")
    bm = F.basis_map
    if A.dim != B.dim or len(bm) != A.dim or sorted(k for k, _ in bm) != list(range(B.dim)):
        rep.add("bijective", (), f"basis map does not permute {B.dim} basis elements")
        return rep
    for a, b in product(range(A.dim), repeat=2):
        (fa, ca), (fb, cb) = bm[a], bm[b]
        lhs = _scale(B.mult.get((fa, fb)), ca * cb)
        ab = A.mult.get((a, b))
        rhs = None if ab is None else _scale(bm[ab[0]], ab[1])
        if lhs != rhs:
            rep.add("multiplicative", (a, b), f"{lhs} != {rhs}")
    for a in range(A.dim):
        k, s = A.star[a]
        lhs = _scale(bm[k], s)
        fa, ca = bm[a]
        rhs = _scale(B.star[fa], ca.conj())
        if lhs != rhs:
            rep.add("star_preserving", (a,), f"{lhs} != {rhs}")
    rep.checked["pairs"] = A.dim ** 2
    return rep


def pullback_map(phi, A: TwistedAlgebra, B: TwistedAlgebra) -> CheckedMap:
    """``d_g -> d_{Phi(g)}`` for a groupoid iso ``Phi`` (anything with ``arrow_map``),
    checked on every basis pair; a failed check is reported, not raised."""
    arrows = getattr(phi, "arrow_map", phi)
    F = AlgebraMap(tuple((int(k), ONE) for k in arrows))
    return CheckedMap(F, verify_algebra_map(F, A, B))


# -- isomorphism search ------------------------------------------------------


@dataclass
class AlgebraIsoVerdict:
    isomorphic: bool
    map: Optional[AlgebraMap]
    phase_order: int
    search_nodes: int

    @property
    def scope(self) -> str:
        return f"phases in the {self.phase_order}-th roots of unity"

    def to_json(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "verdict": ("yes" if self.isomorphic else "no") + f" within mu_{self.phase_order}",
            "map": None if self.map is None else self.map.to_json(),
            "phase_order": self.phase_order,
            "search_nodes": self.search_nodes,
        }


def _basis_signature(A: TwistedAlgebra) -> list[tuple]:
    left = [0] * A.dim
    right = [0] * A.dim
    for i, j in A.mult:
        left[i] += 1
        right[j] += 1
    out = []
    for i in range(A.dim):
        sq = A.mult.get((i, i))
        out.append((sq is not None, sq is not None and sq[0] == i, left[i], right[i], A.star[i][0] == i))
    return out


def algebras_isomorphic(A: TwistedAlgebra, B: TwistedAlgebra, phase_order: Optional[int] = None) -> AlgebraIsoVerdict:
    """Search for a *-isomorphism sending each basis element to a phase times a basis element.

    Phases range over the ``m``-th roots of unity, ``m`` the lcm of all
    denominators of structure constants in A and B (or ``phase_order``).  A
    negative verdict is only relative to that phase group.
    """
    m = phase_order or lcm(A.den_lcm, B.den_lcm)
    n = A.dim
    if n != B.dim:
        return AlgebraIsoVerdict(False, None, m, 0)
    phases = [CircleValue.of(k, m) for k in range(m)]
    sig_a, sig_b = _basis_signature(A), _basis_signature(B)
    cands = [[b for b in range(n) if sig_b[b] == sig_a[a]] for a in range(n)]
    img = [-1] * n
    ph: list = [None] * n
    used = [False] * n
    placed: list[int] = []
    nodes = 0

    def in_group(c: CircleValue) -> bool:
        return (c.angle * m).denominator == 1

    def assign(a0, b0, c0, trail) -> bool:
        queue = [(a0, b0, c0)]
        while queue:
            a, b, c = queue.pop()
            if img[a] >= 0:
                if img[a] != b or ph[a] != c:
                    return False
                continue
            if used[b] or sig_a[a] != sig_b[b] or not in_group(c):
                return False
            img[a], ph[a] = b, c
            used[b] = True
            trail.append(a)
            placed.append(a)
            # star: F(a*) = F(a)*
            ka, sa = A.star[a]
            kb, tb = B.star[b]
            queue.append((ka, kb, c.conj() * tb / sa))
            for x in placed:
                for (p, q), (u, v) in (((a, x), (b, img[x])), ((x, a), (img[x], b))):
                    pa, pb = A.mult.get((p, q)), B.mult.get((u, v))
                    if (pa is None) != (pb is None):
                        return False
                    if pa is not None:
                        queue.append((pa[0], pb[0], ph[p] * ph[q] * pb[1] / pa[1]))
        return True

    def undo(trail):
        for a in reversed(trail):
            used[img[a]] = False
            img[a], ph[a] = -1, None
            placed.pop()

    found: list = []

    def search() -> bool:
        nonlocal nodes
        a = next((x for x in range(n) if img[x] < 0), -1)
        if a < 0:
            found.append(AlgebraMap(tuple(zip(img, ph))))
            return True
        for b in cands[a]:
            if used[b]:
                continue
            for c in phases:
                nodes += 1
                trail: list[int] = []
                ok = assign(a, b, c, trail)
                done = ok and search()
                undo(trail)
                if done:
                    return True
        return False

    search()
    if found:
        rep = verify_algebra_map(found[0], A, B)
        if not rep.valid:
            raise VerificationFailed("algebra search emitted an invalid map", rep)
        return AlgebraIsoVerdict(True, found[0], m, nodes)
    return AlgebraIsoVerdict(False, None, m, nodes)


def universal_bridge_algebra_map(S, omega) -> CheckedMap:
    """Pull back along the canonical identification ``G_u(S#) -> G_u(S)^op``:
    the algebra of ``(G_u(S#), sigma_{omega#})`` against that of the mirror
    ``(G_u(S)^op, sigma_omega#)``."""
    from .groupoid import build_universal_groupoid, canonical_universal_mirror
    from .semigroup import mirror_semigroup
    from .twists import induce_cocycle, mirror_twist

    gu = build_universal_groupoid(S)
    gu_m = build_universal_groupoid(mirror_semigroup(S))
    ident = canonical_universal_mirror(S, gu_m, gu)
    if not ident.ok:
        raise VerificationFailed("canonical mirror identification failed", ident.report)
    A = build_algebra(gu_m.groupoid, induce_cocycle(gu_m, mirror_twist(omega)))
    B = mirror_algebra(gu.groupoid, induce_cocycle(gu, omega))
    return pullback_map(ident.functor, A, B)
