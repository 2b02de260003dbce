"""Exhaustive isotopism and twisted-groupoid isomorphism search, mirror sets
and chirality indices.

Every search is complete: branches are cut only when an assignment forces a
contradiction with the defining equations.  Each emitted certificate is then
re-checked by a separate verifier that does not use the search code.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

from .groupoid import FiniteGroupoid, opposite_groupoid
from .reports import GuardrailError, ValidationReport, VerificationFailed
from .semigroup import FiniteInverseSemigroup, Representation, mirror_representation, mirror_semigroup
from .twists import GroupoidCocycle, mirror_cocycle, trivial_cocycle

NODE_LIMIT = 10 ** 9
INTERPRETATION = "v1"


@dataclass(frozen=True)
class DecoratedSemigroup:
    semigroup: FiniteInverseSemigroup
    decoration: Optional[frozenset] = None

    def __post_init__(self):
        if self.decoration is not None:
            object.__setattr__(self, "decoration", frozenset(int(x) for x in self.decoration))

    @property
    def n(self) -> int:
        return self.semigroup.n


def decoration_generates(A: DecoratedSemigroup) -> bool:
    from .semigroup import generated_subsemigroup

    if A.decoration is None:
        return True
    return generated_subsemigroup(A.semigroup, A.decoration) == frozenset(A.semigroup.elements)


def mirror_decorated(A: DecoratedSemigroup) -> DecoratedSemigroup:
    return DecoratedSemigroup(mirror_semigroup(A.semigroup), A.decoration)


@dataclass(frozen=True)
class RepresentedSemigroup:
    semigroup: FiniteInverseSemigroup
    rep: Representation


# -- morphisms ---------------------------------------------------------------


def _inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _after(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p o q``."""
    return tuple(p[x] for x in q)


@dataclass(frozen=True, order=True)
class Isotopism:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]
    interpretation: Optional[str] = field(default=None, compare=False)

    def after(self, other: "Isotopism") -> "Isotopism":
        return Isotopism(_after(self.alpha, other.alpha), _after(self.beta, other.beta), _after(self.gamma, other.gamma), self.interpretation)

    def inverse(self) -> "Isotopism":
        return Isotopism(_inverse_perm(self.alpha), _inverse_perm(self.beta), _inverse_perm(self.gamma), self.interpretation)

    def swapped(self) -> "Isotopism":
        """The same maps viewed between the mirrors: ``(beta, alpha, gamma)``."""
        return Isotopism(self.beta, self.alpha, self.gamma, self.interpretation)

    def serialize(self) -> str:
        j = lambda p: ",".join(map(str, p))
        return f"iso:a={j(self.alpha)};b={j(self.beta)};g={j(self.gamma)}"

    def to_json(self) -> dict:
        out = {"alpha": list(self.alpha), "beta": list(self.beta), "gamma": list(self.gamma)}
        if self.interpretation:
            out["interpretation"] = self.interpretation
        return out


@dataclass(frozen=True, order=True)
class GroupoidIso:
    arrow_map: tuple[int, ...]
    unit_map: tuple[int, ...]

    def after(self, other: "GroupoidIso") -> "GroupoidIso":
        return GroupoidIso(_after(self.arrow_map, other.arrow_map), _after(self.unit_map, other.unit_map))

    def inverse(self) -> "GroupoidIso":
        return GroupoidIso(_inverse_perm(self.arrow_map), _inverse_perm(self.unit_map))

    def serialize(self) -> str:
        return "gpd:u=" + ",".join(map(str, self.unit_map)) + ";a=" + ",".join(map(str, self.arrow_map))

    def to_json(self) -> dict:
        return {"unit_map": list(self.unit_map), "arrow_map": list(self.arrow_map)}


# -- weights and index -------------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """Constant 1 when ``table`` is None, otherwise a lookup by ``serialize()``."""

    table: Optional[dict] = None

    def __post_init__(self):
        if self.table is not None:
            tbl = {str(k): Fraction(v) for k, v in self.table.items()}
            for k, v in tbl.items():
                if v <= 0:
                    raise ValueError(f"weight of {k} must be positive, got {v}")
            object.__setattr__(self, "table", tbl)

    def __call__(self, morphism) -> Fraction:
        if self.table is None:
            return Fraction(1)
        key = morphism.serialize()
        if key not in self.table:
            raise ValueError(f"no weight for {key}")
        return self.table[key]


def chirality_index(mir_set: Iterable, w: Optional[WeightFunction] = None) -> Fraction:
    """Exact weighted count of mirror morphisms."""
    w = w or WeightFunction()
    total = Fraction(0)
    for m in mir_set:
        x = w(m)
        if x <= 0:
            raise ValueError(f"nonpositive weight {x} for {m.serialize()}")
        total += x
    return total


@dataclass
class SearchStats:
    nodes: int = 0
    space: int = 0
    _hash: "hashlib._Hash" = field(default_factory=hashlib.sha256)

    def log(self, *event) -> None:
        self._hash.update(repr(event).encode())

    @property
    def log_hash(self) -> str:
        return self._hash.hexdigest()


@dataclass
class MirrorReport:
    level: str
    mir_set: list
    index: Fraction
    search_nodes: int
    search_space: int
    log_hash: str
    interpretation: str = INTERPRETATION
    witness: object = None

    @property
    def is_chiral(self) -> bool:
        return not self.mir_set

    @property
    def mir_count(self) -> int:
        return len(self.mir_set)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "mir_count": len(self.mir_set),
            "index": [self.index.numerator, self.index.denominator],
            "chiral": self.is_chiral,
            "witness": None if self.witness is None else self.witness.to_json(),
            "search_nodes": self.search_nodes,
            "search_space": self.search_space,
            "log_hash": self.log_hash,
            "interpretation": self.interpretation,
        }


def _guard(space: int, force: bool, what: str) -> None:
    if space > NODE_LIMIT and not force:
        raise GuardrailError(f"{what}: naive search space {space} exceeds {NODE_LIMIT}; pass force=True")


# -- semigroup isotopisms ----------------------------------------------------


def isotopism_search_space(n: int, table) -> int:
    image = {x for row in table for x in row}
    return factorial(n) ** 2 * factorial(n - len(image))


def enumerate_isotopisms(
    A: DecoratedSemigroup,
    B: DecoratedSemigroup,
    *,
    same_image: Optional[Sequence] = None,
    force: bool = False,
    stats: Optional[SearchStats] = None,
) -> list[Isotopism]:
    """All triples ``(alpha, beta, gamma)`` with ``alpha(x) beta(y) = gamma(xy)``.

    ``alpha`` and ``beta`` are assigned alternately in element order; every
    pair whose two factors are known forces ``gamma`` on the product.  The
    decorations, when present, must be carried onto each other by all three
    maps.  ``same_image`` (a key per element of B) further requires
    ``key[alpha(s)] == key[beta(s)] == key[gamma(s)]``.
    """
    SA, SB = A.semigroup, B.semigroup
    n = SA.n
    stats = stats if stats is not None else SearchStats()
    if n != SB.n:
        return []
    if (A.decoration is None) != (B.decoration is None):
        return []
    if A.decoration is not None and len(A.decoration) != len(B.decoration):
        return []
    TA, TB = SA.table, SB.table
    stats.space = isotopism_search_space(n, TA)
    _guard(stats.space, force, "isotopism search")

    if A.decoration is None:
        allowed = [list(range(n))] * n
    else:
        inside = sorted(B.decoration)
        outside = [y for y in range(n) if y not in B.decoration]
        allowed = [inside if x in A.decoration else outside for x in range(n)]
    allowed_set = [set(a) for a in allowed]
    key = same_image

    alpha, beta, gamma = [-1] * n, [-1] * n, [-1] * n
    ua, ub, ug = [False] * n, [False] * n, [False] * n
    image = sorted({x for row in TA for x in row})
    free_gamma = [z for z in range(n) if z not in set(image)]
    results: list[Isotopism] = []

    def set_gamma(z, v, trail) -> bool:
        if gamma[z] >= 0:
            return gamma[z] == v
        if ug[v] or v not in allowed_set[z]:
            return False
        if key is not None and ((alpha[z] >= 0 and key[alpha[z]] != key[v]) or (beta[z] >= 0 and key[beta[z]] != key[v])):
            return False
        gamma[z] = v
        ug[v] = True
        trail.append(z)
        return True

    def undo(trail):
        for z in trail:
            ug[gamma[z]] = False
            gamma[z] = -1

    def place(which, x, v, trail) -> bool:
        if which == 0:
            if key is not None and ((beta[x] >= 0 and key[beta[x]] != key[v]) or (gamma[x] >= 0 and key[gamma[x]] != key[v])):
                return False
            alpha[x] = v
            ua[v] = True
            for y in range(n):
                if beta[y] >= 0 and not set_gamma(TA[x][y], TB[v][beta[y]], trail):
                    return False
        else:
            if key is not None and ((alpha[x] >= 0 and key[alpha[x]] != key[v]) or (gamma[x] >= 0 and key[gamma[x]] != key[v])):
                return False
            beta[x] = v
            ub[v] = True
            for y in range(n):
                if alpha[y] >= 0 and not set_gamma(TA[y][x], TB[alpha[y]][v], trail):
                    return False
        return True

    order = [(w, x) for x in range(n) for w in (0, 1)]

    def finish_gamma(i):
        if i == len(free_gamma):
            results.append(Isotopism(tuple(alpha), tuple(beta), tuple(gamma)))
            return
        z = free_gamma[i]
        for v in allowed[z]:
            if ug[v] or (key is not None and key[v] != key[alpha[z]]):
                continue
            gamma[z] = v
            ug[v] = True
            finish_gamma(i + 1)
            ug[v] = False
            gamma[z] = -1

    def search(i):
        if i == len(order):
            finish_gamma(0)
            return
        which, x = order[i]
        used = ua if which == 0 else ub
        for v in allowed[x]:
            if used[v]:
                continue
            stats.nodes += 1
            trail: list[int] = []
            ok = place(which, x, v, trail)
            stats.log(i, v, ok)
            if ok:
                search(i + 1)
            undo(trail)
            if which == 0:
                alpha[x] = -1
                ua[v] = False
            else:
                beta[x] = -1
                ub[v] = False

    search(0)
    results.sort()
    return results


def verify_isotopism(h: Isotopism, A: DecoratedSemigroup, B: DecoratedSemigroup) -> ValidationReport:
    """Straightforward re-check of the isotopism equations and decorations."""
    rep = ValidationReport("isotopism")
    n = A.n
    TA, TB = A.semigroup.table, B.semigroup.table
    for name, p in (("alpha", h.alpha), ("beta", h.beta), ("gamma", h.gamma)):
        if sorted(p) != list(range(B.n)) or len(p) != n:
            rep.add("bijection", (name,))
    if not rep.valid:
        return rep
    for x in range(n):
        for y in range(n):
            if TB[h.alpha[x]][h.beta[y]] != h.gamma[TA[x][y]]:
                rep.add("isotopy", (x, y))
    if A.decoration is not None or B.decoration is not None:
        target = B.decoration
        for name, p in (("alpha", h.alpha), ("beta", h.beta), ("gamma", h.gamma)):
            if A.decoration is None or target is None or frozenset(p[x] for x in A.decoration) != target:
                rep.add("decoration", (name,))
    rep.checked["pairs"] = n * n
    return rep


def _certify_all(certs, check, what):
    for c in certs:
        r = check(c)
        if not r.valid:
            raise VerificationFailed(f"{what}: search emitted an invalid certificate {c.serialize()}", r)


def mirror_set_semigroup(
    A: DecoratedSemigroup, weights: Optional[WeightFunction] = None, *, force: bool = False
) -> MirrorReport:
    """Isotopisms from A onto its mirror (reversed multiplication, same decoration)."""
    B = mirror_decorated(A)
    stats = SearchStats()
    mir = enumerate_isotopisms(A, B, force=force, stats=stats)
    _certify_all(mir, lambda h: verify_isotopism(h, A, B), "semigroup mirror")
    return MirrorReport("semigroup", mir, chirality_index(mir, weights), stats.nodes, stats.space, stats.log_hash,
                        witness=mir[0] if mir else None)


def autotopism_group(A: DecoratedSemigroup, *, force: bool = False) -> list[Isotopism]:
    atp = enumerate_isotopisms(A, A, force=force)
    _certify_all(atp, lambda h: verify_isotopism(h, A, A), "autotopism")
    _check_group(atp, "autotopisms")
    return atp


def _check_group(elements: list, what: str) -> None:
    members = set(elements)
    for a in elements:
        if a.inverse() not in members:
            raise VerificationFailed(f"{what} not closed under inverses at {a.serialize()}")
        for b in elements:
            if a.after(b) not in members:
                raise VerificationFailed(f"{what} not closed under composition")


# -- represented inverse semigroups -----------------------------------------


def _image_keys(rep: Representation) -> list[int]:
    ids: dict = {}
    return [ids.setdefault(f, len(ids)) for f in rep.images]


def enumerate_represented_isotopisms(
    A: RepresentedSemigroup, B: RepresentedSemigroup, *, force: bool = False, stats: Optional[SearchStats] = None
) -> list[Isotopism]:
    """Isotopisms with the intertwining condition read as
    ``sigma(alpha(s)) = sigma(beta(s)) = sigma(gamma(s))`` for all ``s``
    (``sigma`` the representation of B); certificates carry the tag ``v1``."""
    found = enumerate_isotopisms(
        DecoratedSemigroup(A.semigroup), DecoratedSemigroup(B.semigroup), same_image=_image_keys(B.rep), force=force, stats=stats
    )
    return [Isotopism(h.alpha, h.beta, h.gamma, INTERPRETATION) for h in found]


def verify_represented_isotopism(h: Isotopism, A: RepresentedSemigroup, B: RepresentedSemigroup) -> ValidationReport:
    rep = verify_isotopism(h, DecoratedSemigroup(A.semigroup), DecoratedSemigroup(B.semigroup))
    img = B.rep.images
    for s in A.semigroup.elements:
        if not img[h.alpha[s]] == img[h.beta[s]] == img[h.gamma[s]]:
            rep.add("intertwining_v1", (s,))
    return rep


def mirror_represented(A: RepresentedSemigroup) -> RepresentedSemigroup:
    return RepresentedSemigroup(A.semigroup, mirror_representation(A.rep).representation)


def mirror_set_represented(
    A: RepresentedSemigroup, weights: Optional[WeightFunction] = None, *, force: bool = False
) -> MirrorReport:
    B = mirror_represented(A)
    stats = SearchStats()
    mir = enumerate_represented_isotopisms(A, B, force=force, stats=stats)
    _certify_all(mir, lambda h: verify_represented_isotopism(h, A, B), "represented mirror")
    return MirrorReport("represented", mir, chirality_index(mir, weights), stats.nodes, stats.space, stats.log_hash,
                        witness=mir[0] if mir else None)


def represented_autotopisms(A: RepresentedSemigroup, *, force: bool = False) -> list[Isotopism]:
    atp = enumerate_represented_isotopisms(A, A, force=force)
    _check_group(atp, "represented autotopisms")
    return atp


# -- twisted groupoid isomorphisms -------------------------------------------


def _arrow_signature(G: FiniteGroupoid) -> list[tuple]:
    n = G.n_arrows
    hom_size: dict = {}
    for g in G.arrows():
        hom_size[(G.src[g], G.rng[g])] = hom_size.get((G.src[g], G.rng[g]), 0) + 1
    out_deg = [0] * G.n_units
    for g in G.arrows():
        out_deg[G.src[g]] += 1
    sigs = []
    for g in range(n):
        loop = G.src[g] == G.rng[g]
        order = 0
        if loop:
            p, order = g, 1
            while p != G.unit_arrow[G.src[g]]:
                p = G.comp[p][g]
                order += 1
        sigs.append((G.is_unit(g), loop, order, hom_size[(G.src[g], G.rng[g])],
                     hom_size[(G.src[g], G.src[g])], out_deg[G.src[g]]))
    return sigs


def groupoid_search_space(G: FiniteGroupoid) -> int:
    hom_size: dict = {}
    for g in G.arrows():
        hom_size[(G.src[g], G.rng[g])] = hom_size.get((G.src[g], G.rng[g]), 0) + 1
    space = factorial(G.n_units)
    for k in hom_size.values():
        space *= factorial(k)
    return space


def enumerate_groupoid_isos(
    G: FiniteGroupoid,
    sigma: Optional[GroupoidCocycle],
    H: FiniteGroupoid,
    tau: Optional[GroupoidCocycle],
    *,
    force: bool = False,
    stats: Optional[SearchStats] = None,
    first_only: bool = False,
) -> list[GroupoidIso]:
    """All arrow bijections preserving composition (hence units, inverses,
    src and rng) with ``tau(Phi g, Phi h) = sigma(g, h)`` on composable pairs.

    Arrows are assigned in index order, candidates in increasing order; each
    assignment propagates through inverses and products with every arrow
    already placed.
    """
    stats = stats if stats is not None else SearchStats()
    if G.n_arrows != H.n_arrows or G.n_units != H.n_units:
        return []
    stats.space = groupoid_search_space(G)
    _guard(stats.space, force, "groupoid isomorphism search")
    sv = sigma.values if sigma is not None else None
    tv = tau.values if tau is not None else None
    n = G.n_arrows
    sig_g, sig_h = _arrow_signature(G), _arrow_signature(H)
    cands = [[a for a in range(n) if sig_h[a] == sig_g[g]] for g in range(n)]
    phi = [-1] * n
    used = [False] * n
    placed: list[int] = []
    results: list[GroupoidIso] = []

    def twist_ok(g, h, a, b) -> bool:
        if sv is None and tv is None:
            return True
        s = sv[(g, h)] if sv is not None else None
        t = tv[(a, b)] if tv is not None else None
        s_one = s is None or s.is_one
        t_one = t is None or t.is_one
        if s is None or t is None:
            return s_one and t_one
        return s == t

    def assign(g0, a0, trail) -> bool:
        queue = [(g0, a0)]
        while queue:
            g, a = queue.pop()
            if phi[g] >= 0:
                if phi[g] != a:
                    return False
                continue
            if used[a] or sig_g[g] != sig_h[a]:
                return False
            phi[g] = a
            used[a] = True
            trail.append(g)
            placed.append(g)
            queue.append((G.inv[g], H.inv[a]))
            for h in placed:
                b = phi[h]
                gh, ab = G.comp[g][h], H.comp[a][b]
                if (gh >= 0) != (ab >= 0):
                    return False
                if gh >= 0:
                    if not twist_ok(g, h, a, b):
                        return False
                    queue.append((gh, ab))
                hg, ba = G.comp[h][g], H.comp[b][a]
                if (hg >= 0) != (ba >= 0):
                    return False
                if hg >= 0:
                    if not twist_ok(h, g, b, a):
                        return False
                    queue.append((hg, ba))
        return True

    def undo(trail):
        for g in reversed(trail):
            used[phi[g]] = False
            phi[g] = -1
            placed.pop()

    def search() -> bool:
        g = next((x for x in range(n) if phi[x] < 0), -1)
        if g < 0:
            arrows = tuple(phi)
            units = tuple(H.src[arrows[G.unit_arrow[u]]] for u in range(G.n_units))
            results.append(GroupoidIso(arrows, units))
            return first_only
        for a in cands[g]:
            if used[a]:
                continue
            stats.nodes += 1
            trail: list[int] = []
            ok = assign(g, a, trail)
            stats.log(g, a, ok)
            stop = ok and search()
            undo(trail)
            if stop:
                return True
        return False

    search()
    results.sort()
    return results


def verify_groupoid_iso(
    phi: GroupoidIso, G: FiniteGroupoid, sigma: Optional[GroupoidCocycle], H: FiniteGroupoid, tau: Optional[GroupoidCocycle]
) -> ValidationReport:
    """Independent check of a twist-preserving groupoid isomorphism."""
    rep = ValidationReport("groupoid_iso")
    F, U = phi.arrow_map, phi.unit_map
    if sorted(F) != list(range(H.n_arrows)) or len(F) != G.n_arrows:
        rep.add("arrow_bijection", ())
    if sorted(U) != list(range(H.n_units)) or len(U) != G.n_units:
        rep.add("unit_bijection", ())
    if not rep.valid:
        return rep
    for g in range(G.n_arrows):
        if H.src[F[g]] != U[G.src[g]] or H.rng[F[g]] != U[G.rng[g]]:
            rep.add("endpoints", (g,))
        if F[G.inv[g]] != H.inv[F[g]]:
            rep.add("inverse", (g,))
    for u in range(G.n_units):
        if F[G.unit_arrow[u]] != H.unit_arrow[U[u]]:
            rep.add("unit", (u,))
    for g in range(G.n_arrows):
        for h in range(G.n_arrows):
            gh = G.comp[g][h]
            img = H.comp[F[g]][F[h]]
            if gh < 0:
                if img >= 0:
                    rep.add("reflects_composability", (g, h))
                continue
            if img != F[gh]:
                rep.add("composition", (g, h))
                continue
            s = sigma.values[(g, h)] if sigma is not None else None
            t = tau.values[(F[g], F[h])] if tau is not None else None
            if (s is None or s.is_one) and (t is None or t.is_one):
                continue
            if s != t:
                rep.add("twist", (g, h))
    return rep


def mirror_set_groupoid(
    G: FiniteGroupoid,
    sigma: Optional[GroupoidCocycle] = None,
    weights: Optional[WeightFunction] = None,
    *,
    force: bool = False,
) -> MirrorReport:
    """Twist-preserving isomorphisms ``(G, sigma) -> (G^op, sigma#)``."""
    sigma = sigma if sigma is not None else trivial_cocycle(G)
    Gop, sigma_m = opposite_groupoid(G), mirror_cocycle(sigma)
    stats = SearchStats()
    mir = enumerate_groupoid_isos(G, sigma, Gop, sigma_m, force=force, stats=stats)
    _certify_all(mir, lambda p: verify_groupoid_iso(p, G, sigma, Gop, sigma_m), "groupoid mirror")
    return MirrorReport("groupoid", mir, chirality_index(mir, weights), stats.nodes, stats.space, stats.log_hash,
                        witness=mir[0] if mir else None)


def groupoid_autotopisms(G: FiniteGroupoid, sigma: Optional[GroupoidCocycle] = None, *, force: bool = False) -> list[GroupoidIso]:
    atp = enumerate_groupoid_isos(G, sigma, G, sigma, force=force)
    _check_group(atp, "twisted groupoid automorphisms")
    return atp


def inversion_iso(G: FiniteGroupoid) -> GroupoidIso:
    return GroupoidIso(tuple(G.inv), tuple(range(G.n_units)))


# -- transport and admissible transitions ------------------------------------


def conjugate_semigroup_mirror(h: Isotopism, m: Isotopism) -> Isotopism:
    """Move ``m`` in Mir(A) to Mir(B) along ``h: A -> B``.

    Between mirrors ``h`` acts as ``(beta, alpha, gamma)``, so the image is
    ``h# o m o h^-1``; for ``alpha = beta`` this is plain conjugation.
    """
    return h.swapped().after(m).after(h.inverse())


def conjugate_componentwise(h, m):
    return h.after(m).after(h.inverse())


@dataclass
class TransportReport:
    ok: bool
    images: int
    counterexample: Optional[str] = None


def verify_transport(h, mir_a: Sequence, mir_b: Sequence, conjugate: Callable = conjugate_semigroup_mirror) -> TransportReport:
    """Check that conjugation by ``h`` maps ``mir_a`` bijectively onto ``mir_b``."""
    images = [conjugate(h, m) for m in mir_a]
    target = set(mir_b)
    if len(set(images)) != len(images):
        return TransportReport(False, len(images), "conjugation is not injective on the mirror set")
    for m, im in zip(mir_a, images):
        if im not in target:
            return TransportReport(False, len(images), f"{m.serialize()} -> {im.serialize()} not in target")
    missing = target - set(images)
    if missing:
        return TransportReport(False, len(images), f"{min(missing).serialize()} not hit")
    return TransportReport(True, len(images))


def is_admissible_transition(m, reference, autotopisms: Sequence, mirror_of: Callable = lambda a: a) -> bool:
    """Is ``m`` in the two-sided orbit ``{a# o reference o b}`` of ``reference`` under autotopisms?

    ``mirror_of`` turns an autotopism of the source into one of the mirror
    (``Isotopism.swapped`` at semigroup level, identity for groupoids).
    """
    for b in autotopisms:
        right = reference.after(b)
        if right == m:
            return True
        for a in autotopisms:
            if mirror_of(a).after(right) == m:
                return True
    return False


# -- verdicts ----------------------------------------------------------------


@dataclass
class Verdict:
    report: MirrorReport
    witness: Optional[GroupoidIso]
    witness_source: str
    algebra_check: Optional[ValidationReport]

    @property
    def chiral(self) -> bool:
        return self.report.is_chiral

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["witness"] = None if self.witness is None else self.witness.to_json()
        out["witness_source"] = self.witness_source
        if self.chiral:
            out["certificate"] = {
                "exhausted_space": self.report.search_space,
                "search_nodes": self.report.search_nodes,
                "log_hash": self.report.log_hash,
            }
        out["algebra_check"] = None if self.algebra_check is None else self.algebra_check.to_json()
        return out


def self_oppositeness_verdict(
    G: FiniteGroupoid,
    sigma: Optional[GroupoidCocycle] = None,
    weights: Optional[WeightFunction] = None,
    *,
    force: bool = False,
    check_algebra: bool = True,
) -> Verdict:
    """Decide whether ``(G, sigma)`` is isomorphic to its mirror.

    The witness is arrow inversion when that map is twist preserving,
    otherwise the first certificate in canonical order.  A witness is
    forwarded to the convolution algebra and checked as an isomorphism onto
    the algebra of the mirror.
    """
    from .algebra import build_algebra, pullback_map

    sigma = sigma if sigma is not None else trivial_cocycle(G)
    report = mirror_set_groupoid(G, sigma, weights, force=force)
    witness, source = None, "none"
    if report.mir_set:
        inv = inversion_iso(G)
        if inv in set(report.mir_set):
            witness, source = inv, "inversion"
        else:
            witness, source = report.mir_set[0], "search"
    report.witness = witness
    algebra_check = None
    if witness is not None and check_algebra:
        A = build_algebra(G, sigma)
        B = build_algebra(opposite_groupoid(G), mirror_cocycle(sigma))
        algebra_check = pullback_map(witness, A, B).report
    return Verdict(report, witness, source, algebra_check)
