"""Character space of E(S), the universal groupoid of germs, the germ groupoid
of a representation, opposite groupoids and the comparison functors between them.

Composition is stored left to right: ``comp[g][h]`` is ``g.h`` and is defined
iff ``src[g] == rng[h]`` (first ``h``, then ``g``).  Undefined entries are -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional, Sequence

from .reports import DomainError, ValidationReport, VerificationFailed
from .semigroup import (
    FiniteInverseSemigroup,
    Representation,
    idempotents,
    mirror_representation,
    mirror_semigroup,
    validate_representation,
)

Character = tuple  # one bit per idempotent, aligned with CharacterSpace.idempotents


# -- characters --------------------------------------------------------------


@dataclass(frozen=True)
class CharacterSpace:
    semigroup: FiniteInverseSemigroup
    idempotents: tuple[int, ...]
    characters: tuple[Character, ...]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(self.idempotents)})
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.characters)})
        S = self.semigroup
        blocks = {}
        for e in self.idempotents:
            blocks[e] = frozenset(i for i, c in enumerate(self.characters) if c[self._pos[e]])
        object.__setattr__(self, "_blocks", blocks)
        theta = []
        for s in S.elements:
            row = []
            for ci, c in enumerate(self.characters):
                if ci in blocks[S.table[S.star[s]][s]]:
                    row.append(self._index[self._act(s, c)])
                else:
                    row.append(-1)
            theta.append(tuple(row))
        object.__setattr__(self, "_theta", tuple(theta))

    def __len__(self) -> int:
        return len(self.characters)

    def value(self, c: int, e: int) -> int:
        return self.characters[c][self._pos[e]]

    def index(self, chi: Character) -> int:
        return self._index[tuple(chi)]

    def D(self, e: int) -> frozenset[int]:
        """Indices of the characters with ``chi(e) = 1``."""
        return self._blocks[e]

    def theta(self, s: int, c: int) -> int:
        """Index of ``theta_s(chi_c)``, or -1 when ``chi_c`` is not in D(s*s)."""
        return self._theta[s][c]

    def _act(self, s: int, chi: Character) -> Character:
        S = self.semigroup
        ss = S.star[s]
        return tuple(chi[self._pos[S.product(ss, e, s)]] for e in self.idempotents)

    def minimum(self, c: int) -> int:
        """The least idempotent on which ``chi_c`` is 1 (each finite filter is principal)."""
        S = self.semigroup
        m = None
        for e in self.idempotents:
            if self.value(c, e):
                m = e if m is None else S.table[m][e]
        return m

    def label(self, c: int) -> str:
        return f"chi[{self.semigroup.label(self.minimum(c))}]"


def is_character(S: FiniteInverseSemigroup, E: Sequence[int], bits: Sequence[int]) -> bool:
    pos = {e: i for i, e in enumerate(E)}
    if not any(bits):
        return False
    for e, f in product(E, E):
        if bits[pos[S.table[e][f]]] != bits[pos[e]] * bits[pos[f]]:
            return False
    return True


def enumerate_characters(S: FiniteInverseSemigroup) -> CharacterSpace:
    """All nonzero semilattice homomorphisms ``E(S) -> {0,1}``, lexicographically ordered.

    A nonzero character is the indicator of a filter, and a finite filter is
    the up-set of the product of its members, so one character arises from
    each idempotent ``m``: ``chi(e) = 1`` iff ``m e = m``.
    """
    S.require_inverse()
    E = idempotents(S)
    if not E:
        raise DomainError("semigroup has no idempotents")
    chars = set()
    for m in E:
        chars.add(tuple(1 if S.table[m][e] == m else 0 for e in E))
    for chi in chars:
        if not is_character(S, E, chi):
            raise VerificationFailed(f"principal filter {chi} is not a character")
    return CharacterSpace(S, E, tuple(sorted(chars)))


def apply_partial_action(space: CharacterSpace, s: int, c: int) -> int:
    """``theta_s(chi)(e) = chi(s* e s)`` for ``chi`` in D(s*s); returns a character index."""
    out = space.theta(s, c)
    if out < 0:
        S = space.semigroup
        raise DomainError(f"character {c} not in D(s*s) for s={S.label(s)}")
    return out


def germ_equivalent(space: CharacterSpace, s: int, t: int, c: int) -> bool:
    S = space.semigroup
    for w in (s, t):
        if c not in space.D(S.table[S.star[w]][w]):
            raise DomainError(f"character {c} not in D(w*w) for w={S.label(w)}")
    return any(space.value(c, e) and S.table[s][e] == S.table[t][e] for e in space.idempotents)


# -- groupoids ---------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroupoid:
    units: tuple[str, ...]
    src: tuple[int, ...]
    rng: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    unit_arrow: tuple[int, ...]
    labels: tuple[str, ...] = ()

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @property
    def n_units(self) -> int:
        return len(self.units)

    def arrows(self) -> range:
        return range(len(self.src))

    def composable(self, g: int, h: int) -> bool:
        return self.src[g] == self.rng[h]

    def mul(self, g: int, h: int) -> int:
        gh = self.comp[g][h]
        if gh < 0:
            raise DomainError(f"arrows {g}, {h} are not composable")
        return gh

    def composable_pairs(self):
        for g in self.arrows():
            for h in self.arrows():
                if self.comp[g][h] >= 0:
                    yield g, h

    def is_unit(self, g: int) -> bool:
        return self.unit_arrow[self.src[g]] == g

    def hom(self, u: int, v: int) -> list[int]:
        """Arrows from ``u`` to ``v``."""
        return [g for g in self.arrows() if self.src[g] == u and self.rng[g] == v]

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)


def validate_groupoid(G: FiniteGroupoid) -> ValidationReport:
    rep = ValidationReport("groupoid")
    A = G.arrows()
    n = G.n_arrows
    for tbl, name in ((G.src, "src"), (G.rng, "rng")):
        if len(tbl) != n or any(not 0 <= u < G.n_units for u in tbl):
            rep.add("shape", (name,))
            return rep
    if len(G.comp) != n or any(len(row) != n for row in G.comp) or len(G.inv) != n:
        rep.add("shape", ("comp/inv",))
        return rep
    for g, h in product(A, A):
        gh = G.comp[g][h]
        if (gh >= 0) != (G.src[g] == G.rng[h]):
            rep.add("defined_iff_composable", (g, h))
        elif gh >= 0 and (G.src[gh] != G.src[h] or G.rng[gh] != G.rng[g]):
            rep.add("product_endpoints", (g, h, gh))
    triples = 0
    for g, h in product(A, A):
        gh = G.comp[g][h]
        if gh < 0:
            continue
        for k in A:
            hk = G.comp[h][k]
            if hk < 0:
                continue
            triples += 1
            if G.comp[gh][k] != G.comp[g][hk]:
                rep.add("associativity", (g, h, k))
    for u in range(G.n_units):
        a = G.unit_arrow[u]
        if G.src[a] != u or G.rng[a] != u:
            rep.add("unit_endpoints", (u, a))
            continue
        for g in A:
            if G.rng[g] == u and G.comp[a][g] != g:
                rep.add("left_unit", (u, g))
            if G.src[g] == u and G.comp[g][a] != g:
                rep.add("right_unit", (u, g))
    for g in A:
        i = G.inv[g]
        if G.inv[i] != g:
            rep.add("inverse_involution", (g, i))
        elif G.comp[g][i] != G.unit_arrow[G.rng[g]] or G.comp[i][g] != G.unit_arrow[G.src[g]]:
            rep.add("inverse_law", (g, i))
    rep.checked["composable_triples"] = triples
    return rep


def opposite_groupoid(G: FiniteGroupoid) -> FiniteGroupoid:
    """Same arrows and units; src and rng swapped; ``comp_op[g][h] = comp[h][g]``."""
    n = G.n_arrows
    comp = tuple(tuple(G.comp[h][g] for h in range(n)) for g in range(n))
    return FiniteGroupoid(G.units, G.rng, G.src, comp, G.inv, G.unit_arrow, G.labels)


def relabel_groupoid(G: FiniteGroupoid, unit_perm: Sequence[int], arrow_perm: Sequence[int]) -> FiniteGroupoid:
    """Copy of ``G`` with unit ``u`` renamed ``unit_perm[u]`` and arrow ``g`` renamed ``arrow_perm[g]``."""
    n, k = G.n_arrows, G.n_units
    ia = [0] * n
    for g, p in enumerate(arrow_perm):
        ia[p] = g
    iu = [0] * k
    for u, p in enumerate(unit_perm):
        iu[p] = u

    def m(x):
        return -1 if x < 0 else arrow_perm[x]

    return FiniteGroupoid(
        units=tuple(G.units[iu[u]] for u in range(k)),
        src=tuple(unit_perm[G.src[ia[a]]] for a in range(n)),
        rng=tuple(unit_perm[G.rng[ia[a]]] for a in range(n)),
        comp=tuple(tuple(m(G.comp[ia[a]][ia[b]]) for b in range(n)) for a in range(n)),
        inv=tuple(arrow_perm[G.inv[ia[a]]] for a in range(n)),
        unit_arrow=tuple(arrow_perm[G.unit_arrow[iu[u]]] for u in range(k)),
        labels=tuple(G.labels[ia[a]] for a in range(n)) if G.labels else (),
    )


def groupoid_from_semigroup_group(S: FiniteInverseSemigroup) -> FiniteGroupoid:
    """A group (given as a table) viewed as a one-unit groupoid."""
    n = S.n
    unit = next(e for e in S.elements if S.table[e][e] == e)
    star = S.star if S.star is not None else tuple(next(y for y in range(n) if S.table[x][y] == unit) for x in range(n))
    return FiniteGroupoid(
        units=(S.label(unit),),
        src=(0,) * n,
        rng=(0,) * n,
        comp=S.table,
        inv=tuple(star),
        unit_arrow=(unit,),
        labels=tuple(S.label(i) for i in range(n)),
    )


def pair_groupoid(k: int) -> FiniteGroupoid:
    """Full equivalence relation on ``k`` points; arrow ``(i, j)`` goes from ``j`` to ``i``."""
    arrows = [(i, j) for i in range(k) for j in range(k)]
    idx = {a: n for n, a in enumerate(arrows)}
    comp = tuple(
        tuple(idx[(g[0], h[1])] if g[1] == h[0] else -1 for h in arrows) for g in arrows
    )
    return FiniteGroupoid(
        units=tuple(str(i) for i in range(k)),
        src=tuple(j for _, j in arrows),
        rng=tuple(i for i, _ in arrows),
        comp=comp,
        inv=tuple(idx[(j, i)] for i, j in arrows),
        unit_arrow=tuple(idx[(i, i)] for i in range(k)),
        labels=tuple(f"e{i}{j}" for i, j in arrows),
    )


# -- germ groupoids ----------------------------------------------------------


@dataclass(frozen=True)
class GermGroupoid:
    """A groupoid of germs ``[s, b]`` together with the data it was built from.

    ``reps[g]`` lists every pair ``(s, b)`` in the class of arrow ``g``, the
    canonical (smallest) one first; ``germ`` is the inverse lookup.  Units
    are the bases ``b`` that lie in some domain, indexed by ``base_of_unit``.
    """

    kind: str
    semigroup: FiniteInverseSemigroup
    groupoid: FiniteGroupoid
    reps: tuple[tuple[tuple[int, int], ...], ...]
    germ: dict
    base_of_unit: tuple[int, ...]
    unit_of_base: dict
    space: Optional[CharacterSpace] = None
    representation: Optional[Representation] = None
    failures: tuple = ()

    def bisection(self, s: int) -> list[int]:
        """Arrows of U(s) = {[s, b]}."""
        return sorted({g for (w, b), g in self.germ.items() if w == s})

    def word(self, g: int) -> int:
        return self.reps[g][0][0]


def _build_germs(
    kind: str,
    S: FiniteInverseSemigroup,
    n_bases: int,
    in_dom: Callable[[int, int], bool],
    act: Callable[[int, int], int],
    base_label: Callable[[int], str],
) -> tuple[FiniteGroupoid, tuple, dict, tuple, dict, list]:
    E = idempotents(S)
    failures: list = []
    pairs = [(s, b) for s in S.elements for b in range(n_bases) if in_dom(s, b)]

    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def related(s, t, b):
        return any(in_dom(e, b) and S.table[s][e] == S.table[t][e] for e in E)

    by_base: dict[int, list[int]] = {}
    for s, b in pairs:
        by_base.setdefault(b, []).append(s)
    for b, words in by_base.items():
        for i, s in enumerate(words):
            for t in words[i + 1:]:
                if related(s, t, b):
                    ra, rb = find((s, b)), find((t, b))
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)

    classes: dict = {}
    for p in pairs:
        classes.setdefault(find(p), []).append(p)
    reps = tuple(tuple(sorted(c)) for c in sorted(classes.values(), key=min))
    # the relation is asserted to be an equivalence; check transitivity rather than trust it
    for cls in reps:
        for (s, b), (t, _) in product(cls, cls):
            if not related(s, t, b):
                failures.append(("germ_transitivity", s, t, b))
    germ = {p: g for g, cls in enumerate(reps) for p in cls}

    bases = sorted(by_base)
    unit_of_base = {b: u for u, b in enumerate(bases)}
    n = len(reps)
    src = tuple(unit_of_base[cls[0][1]] for cls in reps)
    rng_list = []
    for g, cls in enumerate(reps):
        targets = {act(s, b) for s, b in cls}
        if len(targets) != 1:
            failures.append(("range_well_defined", g))
        rng_list.append(unit_of_base[min(targets)])
    rng = tuple(rng_list)

    comp = [[-1] * n for _ in range(n)]
    for g, h in product(range(n), range(n)):
        if src[g] != rng[h]:
            continue
        results = set()
        for (s, _), (t, x) in product(reps[g], reps[h]):
            results.add(germ.get((S.table[s][t], x), -1))
        if len(results) != 1 or -1 in results:
            failures.append(("composition_well_defined", g, h))
        comp[g][h] = min(results)

    inv = []
    for g, cls in enumerate(reps):
        results = {germ.get((S.star[s], act(s, b)), -1) for s, b in cls}
        if len(results) != 1 or -1 in results:
            failures.append(("inverse_well_defined", g))
        inv.append(min(results))

    unit_arrow = []
    for b in bases:
        cands = {germ[(e, b)] for e in E if in_dom(e, b)}
        if len(cands) != 1:
            failures.append(("unit_well_defined", b))
        unit_arrow.append(min(cands))

    labels = tuple(f"[{S.label(cls[0][0])},{base_label(cls[0][1])}]" for cls in reps)
    G = FiniteGroupoid(
        units=tuple(base_label(b) for b in bases),
        src=src,
        rng=rng,
        comp=tuple(tuple(r) for r in comp),
        inv=tuple(inv),
        unit_arrow=tuple(unit_arrow),
        labels=labels,
    )
    return G, reps, germ, tuple(bases), unit_of_base, failures


def _certify(gg: GermGroupoid) -> GermGroupoid:
    rep = validate_groupoid(gg.groupoid)
    for f in gg.failures:
        rep.add(f[0], f[1:])
    for s in gg.semigroup.elements:
        arrows = gg.bisection(s)
        if len({gg.groupoid.src[g] for g in arrows}) != len(arrows):
            rep.add("bisection_src", (s,))
        if len({gg.groupoid.rng[g] for g in arrows}) != len(arrows):
            rep.add("bisection_rng", (s,))
    if not rep.valid:
        raise VerificationFailed(f"{gg.kind} groupoid failed validation", rep)
    return gg


def build_universal_groupoid(S: FiniteInverseSemigroup, space: Optional[CharacterSpace] = None) -> GermGroupoid:
    """Germs ``[s, chi]`` of the canonical partial action on characters; units are characters."""
    if space is None:
        space = enumerate_characters(S)

    def in_dom(s, c):
        return space.theta(s, c) >= 0

    G, reps, germ, bases, unit_of_base, failures = _build_germs(
        "universal", S, len(space), in_dom, space.theta, space.label
    )
    return _certify(GermGroupoid("universal", S, G, reps, germ, bases, unit_of_base, space, None, tuple(failures)))


def build_germ_groupoid(S: FiniteInverseSemigroup, rho: Representation) -> GermGroupoid:
    """Germs ``[s, x]`` with ``x`` in dom(rho(s)); units are the covered points of X."""
    S.require_inverse()
    check = validate_representation(rho)
    if not check.valid:
        raise VerificationFailed("representation failed validation", check)
    img = rho.images

    def in_dom(s, x):
        return img[s].map[x] is not None

    def act(s, x):
        return img[s].map[x]

    G, reps, germ, bases, unit_of_base, failures = _build_germs(
        "germ", S, rho.carrier, in_dom, act, lambda x: f"x{x}"
    )
    return _certify(GermGroupoid("germ", S, G, reps, germ, bases, unit_of_base, None, rho, tuple(failures)))


# -- functors ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupoidFunctor:
    unit_map: tuple[int, ...]
    arrow_map: tuple[int, ...]
    contravariant: bool = False

    def __call__(self, g: int) -> int:
        return self.arrow_map[g]


def verify_functor(F: GroupoidFunctor, G: FiniteGroupoid, H: FiniteGroupoid, bijective: bool = False) -> ValidationReport:
    rep = ValidationReport("functor")
    if len(F.unit_map) != G.n_units or len(F.arrow_map) != G.n_arrows:
        rep.add("shape", (len(F.unit_map), len(F.arrow_map)))
        return rep
    if any(not 0 <= a < H.n_arrows for a in F.arrow_map) or any(not 0 <= u < H.n_units for u in F.unit_map):
        rep.add("shape", ("out of range",))
        return rep
    s_to, r_to = (H.rng, H.src) if F.contravariant else (H.src, H.rng)
    for g in G.arrows():
        a = F.arrow_map[g]
        if s_to[a] != F.unit_map[G.src[g]] or r_to[a] != F.unit_map[G.rng[g]]:
            rep.add("endpoints", (g,))
    for u in range(G.n_units):
        if F.arrow_map[G.unit_arrow[u]] != H.unit_arrow[F.unit_map[u]]:
            rep.add("units", (u,))
    pairs = 0
    for g, h in G.composable_pairs():
        pairs += 1
        a, b = F.arrow_map[g], F.arrow_map[h]
        want = H.comp[b][a] if F.contravariant else H.comp[a][b]
        if want < 0 or want != F.arrow_map[G.comp[g][h]]:
            rep.add("composition", (g, h))
    for g in G.arrows():
        if F.arrow_map[G.inv[g]] != H.inv[F.arrow_map[g]]:
            rep.add("inverses", (g,))
    if bijective:
        if len(set(F.arrow_map)) != H.n_arrows or G.n_arrows != H.n_arrows:
            rep.add("arrow_bijection", ())
        if len(set(F.unit_map)) != H.n_units or G.n_units != H.n_units:
            rep.add("unit_bijection", ())
    rep.checked["composable_pairs"] = pairs
    return rep


def inversion_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    """``g -> g^-1``, an isomorphism ``G -> G^op``."""
    return GroupoidFunctor(tuple(range(G.n_units)), tuple(G.inv))


@dataclass
class Identification:
    """A comparison functor together with its exhaustive verification."""

    functor: GroupoidFunctor
    source: GermGroupoid
    target: GermGroupoid
    report: ValidationReport

    @property
    def ok(self) -> bool:
        return self.report.valid

    @property
    def counterexample(self):
        return self.report.violations[0] if self.report.violations else None


def canonical_universal_mirror(
    S: FiniteInverseSemigroup,
    mirror_gu: Optional[GermGroupoid] = None,
    gu: Optional[GermGroupoid] = None,
) -> Identification:
    """Identify G_u(S#) with G_u(S)^op, keeping the word ``s`` and the source ``chi``.

    In G_u(S#) the germ ``[s, chi]`` leaves ``chi``.  It is sent to the germ of
    the same ``s`` in G_u(S) that leaves ``chi`` in the opposite groupoid,
    i.e. ``[s, theta_{s*}(chi)]``.  Every representative is mapped and the
    result is checked to be a well-defined bijective functor; failures are
    returned in the report, never assumed away.
    """
    S.require_inverse()
    if gu is None:
        gu = build_universal_groupoid(S)
    if mirror_gu is None:
        mirror_gu = build_universal_groupoid(mirror_semigroup(S))
    sp, msp = gu.space, mirror_gu.space
    rep = ValidationReport("universal_mirror")

    unit_map = []
    for b in mirror_gu.base_of_unit:
        chi = msp.characters[b]
        unit_map.append(gu.unit_of_base[sp.index(chi)])

    arrow_map = []
    for a, cls in enumerate(mirror_gu.reps):
        images = set()
        for s, c in cls:
            c_here = sp.index(msp.characters[c])
            back = sp.theta(S.star[s], c_here)
            images.add(gu.germ.get((s, back), -1) if back >= 0 else -1)
        if len(images) != 1 or -1 in images:
            rep.add("well_defined", (a,), f"images {sorted(images)}")
        arrow_map.append(max(images))
    F = GroupoidFunctor(tuple(unit_map), tuple(arrow_map))
    if rep.valid:
        rep.extend(verify_functor(F, mirror_gu.groupoid, opposite_groupoid(gu.groupoid), bijective=True))
    return Identification(F, mirror_gu, gu, rep)


def point_character(S: FiniteInverseSemigroup, rho: Representation, space: CharacterSpace, x: int) -> Character:
    """``chi_x(e) = 1`` iff ``x`` lies in dom(rho(e))."""
    return tuple(1 if rho.images[e].map[x] is not None else 0 for e in space.idempotents)


def germ_to_universal(
    S: FiniteInverseSemigroup,
    rho: Representation,
    germ: Optional[GermGroupoid] = None,
    universal: Optional[GermGroupoid] = None,
) -> Identification:
    """The functor ``[s, x] -> [s, chi_x]`` from the germ model to G_u(S)."""
    if germ is None:
        germ = build_germ_groupoid(S, rho)
    if universal is None:
        universal = build_universal_groupoid(S)
    sp = universal.space
    rep = ValidationReport("germ_to_universal")
    unit_map = []
    char_of_point = {}
    for x in germ.base_of_unit:
        chi = point_character(S, rho, sp, x)
        if not is_character(S, sp.idempotents, chi):
            rep.add("degenerate_point", (x,), f"chi_x = {chi}")
            return Identification(GroupoidFunctor((), ()), germ, universal, rep)
        c = sp.index(chi)
        char_of_point[x] = c
        unit_map.append(universal.unit_of_base[c])
    arrow_map = []
    for g, cls in enumerate(germ.reps):
        images = {universal.germ.get((s, char_of_point[x]), -1) for s, x in cls}
        if len(images) != 1 or -1 in images:
            rep.add("well_defined", (g,), f"images {sorted(images)}")
        arrow_map.append(max(images))
    F = GroupoidFunctor(tuple(unit_map), tuple(arrow_map))
    if rep.valid:
        rep.extend(verify_functor(F, germ.groupoid, universal.groupoid))
    return Identification(F, germ, universal, rep)


@dataclass
class MirrorSquare:
    rho_sharp_equals_rho: bool
    germ_identification: Identification
    universal_identification: Identification
    functor: Identification
    mirror_functor: Identification
    report: ValidationReport

    @property
    def ok(self) -> bool:
        return self.report.valid


def germ_mirror_square(S: FiniteInverseSemigroup, rho: Representation) -> MirrorSquare:
    """Check that the germ-to-universal functor commutes with the mirror identifications.

    The mirror germ model is the germ groupoid of S# carried by
    ``s -> rho#(s*)`` (with ``rho#`` computed literally).  Its identification
    with the opposite germ groupoid keeps the word ``s`` and uses the base
    point as the source, exactly as on the universal side.  The square::

        G_germ(S#, rho#.*) --psi_germ--> G_germ(S, rho)^op
              |                                 |
           Phi#                                Phi
              v                                 v
           G_u(S#) -------psi_u---------> G_u(S)^op

    is compared arrow by arrow.
    """
    S.require_inverse()
    rep = ValidationReport("mirror_square")
    Sm = mirror_semigroup(S)
    mirrored = mirror_representation(rho)
    rho_m = Representation(Sm, rho.carrier, tuple(mirrored.representation.images[S.star[s]] for s in S.elements))
    rep.extend(validate_representation(rho_m), "mirror_rep.")

    gg = build_germ_groupoid(S, rho)
    gg_m = build_germ_groupoid(Sm, rho_m)
    gu = build_universal_groupoid(S)
    gu_m = build_universal_groupoid(Sm)

    germ_rep = ValidationReport("germ_mirror")
    unit_map = tuple(gg.unit_of_base[x] for x in gg_m.base_of_unit)
    arrow_map = []
    for a, cls in enumerate(gg_m.reps):
        images = set()
        for s, x in cls:
            y = rho.images[S.star[s]].map[x]
            images.add(-1 if y is None else gg.germ.get((s, y), -1))
        if len(images) != 1 or -1 in images:
            germ_rep.add("well_defined", (a,))
        arrow_map.append(max(images))
    psi_germ = GroupoidFunctor(unit_map, tuple(arrow_map))
    if germ_rep.valid:
        germ_rep.extend(verify_functor(psi_germ, gg_m.groupoid, opposite_groupoid(gg.groupoid), bijective=True))
    germ_ident = Identification(psi_germ, gg_m, gg, germ_rep)

    psi_u = canonical_universal_mirror(S, gu_m, gu)
    phi = germ_to_universal(S, rho, gg, gu)
    phi_m = germ_to_universal(Sm, rho_m, gg_m, gu_m)
    for name, ident in (("germ_mirror.", germ_ident), ("universal_mirror.", psi_u), ("functor.", phi), ("mirror_functor.", phi_m)):
        rep.extend(ident.report, name)

    if rep.valid:
        for a in gg_m.groupoid.arrows():
            left = phi.functor.arrow_map[psi_germ.arrow_map[a]]
            right = psi_u.functor.arrow_map[phi_m.functor.arrow_map[a]]
            if left != right:
                rep.add("square_commutes", (a,), f"{left} != {right}")
        for u in range(gg_m.groupoid.n_units):
            left = phi.functor.unit_map[psi_germ.unit_map[u]]
            right = psi_u.functor.unit_map[phi_m.functor.unit_map[u]]
            if left != right:
                rep.add("square_commutes_units", (u,))
        rep.checked["arrows"] = gg_m.groupoid.n_arrows
    return MirrorSquare(mirrored.equals_original, germ_ident, psi_u, phi, phi_m, rep)
