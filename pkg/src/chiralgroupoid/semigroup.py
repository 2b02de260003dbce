"""Finite (inverse) semigroups given by Cayley tables, partial bijections,
Wagner-Preston and the mirror (reversed multiplication) construction.

Elements are the integers ``0..n-1``; ``table[i][j]`` is ``i*j``.  A
semigroup whose ``star`` is ``None`` is a plain semigroup and only the
operations that do not need inverses accept it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .reports import DomainError, FormatError, ValidationReport


@dataclass(frozen=True)
class FiniteInverseSemigroup:
    table: tuple[tuple[int, ...], ...]
    star: Optional[tuple[int, ...]] = None
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        n = len(table)
        _check_shape(table, self.star, n)
        object.__setattr__(self, "table", table)
        if self.star is not None:
            object.__setattr__(self, "star", tuple(int(x) for x in self.star))
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise FormatError(f"{len(labels)} labels for {n} elements")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    @property
    def is_inverse(self) -> bool:
        return self.star is not None

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        if self.star is None:
            raise DomainError("plain semigroup has no involution")
        return self.star[i]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def product(self, *xs: int) -> int:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc][x]
        return acc

    def require_inverse(self) -> None:
        if self.star is None:
            raise DomainError("operation needs an inverse semigroup (star missing)")


def _check_shape(table, star, n: int) -> None:
    if n == 0:
        raise FormatError("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise FormatError(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise FormatError(f"table[{i}][{j}] = {x} out of range 0..{n - 1}")
    if star is not None:
        if len(star) != n:
            raise FormatError(f"star has length {len(star)}, expected {n}")
        for i, x in enumerate(star):
            if not 0 <= int(x) < n:
                raise FormatError(f"star[{i}] = {x} out of range 0..{n - 1}")


def validate_inverse_semigroup(table: Sequence[Sequence[int]], star: Optional[Sequence[int]]) -> ValidationReport:
    """Check the inverse-semigroup axioms on a raw table.

    One witness (the lexicographically first) is recorded per violated
    invariant; ``checked`` counts how many instances of each failed.  With
    ``star=None`` only associativity is checked.
    """
    table = [list(row) for row in table]
    n = len(table)
    _check_shape(table, star, n)
    rep = ValidationReport("semigroup")
    counts: dict[str, int] = {}
    first: dict[str, tuple] = {}

    def fail(name, witness):
        counts[name] = counts.get(name, 0) + 1
        first.setdefault(name, witness)

    r = range(n)
    for i, j, k in product(r, r, r):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            fail("associativity", (i, j, k))

    if star is not None:
        star = list(star)
        for i in r:
            si = star[i]
            if star[si] != i:
                fail("involution", (i, si, star[si]))
            if table[table[i][si]][i] != i:
                fail("regularity", (i, si, i))
            if table[table[si][i]][si] != si:
                fail("regularity", (si, i, si))
            for x in r:
                if x != si and table[table[i][x]][i] == i and table[table[x][i]][x] == x:
                    fail("unique_inverse", (i, si, x))
        idem = [e for e in r if table[e][e] == e]
        for e in idem:
            for f in idem:
                if table[e][f] != table[f][e]:
                    fail("idempotents_commute", (e, f, table[e][f]))

    for name in ("associativity", "involution", "regularity", "unique_inverse", "idempotents_commute"):
        if name in first:
            rep.add(name, first[name], f"{counts[name]} failing instance(s)")
    rep.checked["triples"] = n ** 3
    return rep


def validate_semigroup(S: FiniteInverseSemigroup) -> ValidationReport:
    return validate_inverse_semigroup(S.table, S.star)


def idempotents(S: FiniteInverseSemigroup) -> tuple[int, ...]:
    return tuple(e for e in S.elements if S.table[e][e] == e)


def natural_partial_order(S: FiniteInverseSemigroup) -> frozenset[tuple[int, int]]:
    """Pairs ``(s, t)`` with ``s <= t``, i.e. ``s = e t`` for an idempotent ``e``."""
    E = idempotents(S)
    return frozenset((S.table[e][t], t) for t in S.elements for e in E)


def mirror_semigroup(S: FiniteInverseSemigroup) -> FiniteInverseSemigroup:
    """Same elements and star, multiplication reversed: ``x #y = y x``."""
    n = S.n
    table = tuple(tuple(S.table[j][i] for j in range(n)) for i in range(n))
    return FiniteInverseSemigroup(table, S.star, S.labels)


# -- partial bijections ------------------------------------------------------


@dataclass(frozen=True)
class PartialBijection:
    """Injective partial map on ``{0..carrier-1}``; ``map[x]`` is ``None`` off the domain."""

    carrier: int
    map: tuple[Optional[int], ...]

    def __post_init__(self):
        m = tuple(None if y is None else int(y) for y in self.map)
        if len(m) != self.carrier:
            raise FormatError(f"map has length {len(m)}, carrier is {self.carrier}")
        seen = set()
        for x, y in enumerate(m):
            if y is None:
                continue
            if not 0 <= y < self.carrier:
                raise FormatError(f"{x} -> {y} leaves the carrier")
            if y in seen:
                raise FormatError(f"not injective: two points map to {y}")
            seen.add(y)
        object.__setattr__(self, "map", m)

    @classmethod
    def from_dict(cls, carrier: int, mapping: dict[int, int]) -> "PartialBijection":
        m = [None] * carrier
        for x, y in mapping.items():
            m[int(x)] = int(y)
        return cls(carrier, tuple(m))

    @classmethod
    def identity(cls, carrier: int, domain=None) -> "PartialBijection":
        dom = range(carrier) if domain is None else set(domain)
        return cls(carrier, tuple(x if x in dom else None for x in range(carrier)))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.map) if y is not None)

    @property
    def range(self) -> frozenset[int]:
        return frozenset(y for y in self.map if y is not None)

    def __call__(self, x: int) -> int:
        y = self.map[x]
        if y is None:
            raise DomainError(f"{x} not in domain")
        return y

    def as_dict(self) -> dict[int, int]:
        return {x: y for x, y in enumerate(self.map) if y is not None}


def compose_partial(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """``f o g``: apply ``g`` first.  Domain is ``g^-1(dom f & ran g)``."""
    if f.carrier != g.carrier:
        raise FormatError(f"carrier mismatch {f.carrier} != {g.carrier}")
    return PartialBijection(f.carrier, tuple(None if y is None else f.map[y] for y in g.map))


def invert_partial(f: PartialBijection) -> PartialBijection:
    m: list[Optional[int]] = [None] * f.carrier
    for x, y in enumerate(f.map):
        if y is not None:
            m[y] = x
    return PartialBijection(f.carrier, tuple(m))


# -- representations ---------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    source: FiniteInverseSemigroup
    carrier: int
    images: tuple[PartialBijection, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise FormatError(f"{len(self.images)} images for {self.source.n} elements")
        for i, f in enumerate(self.images):
            if f.carrier != self.carrier:
                raise FormatError(f"image of {i} lives on carrier {f.carrier}, expected {self.carrier}")

    def dom(self, s: int) -> frozenset[int]:
        return self.images[s].domain

    def ran(self, s: int) -> frozenset[int]:
        return self.images[s].range


def validate_representation(rho: Representation) -> ValidationReport:
    S = rho.source
    rep = ValidationReport("representation")
    img = rho.images
    for i, j in product(S.elements, S.elements):
        if img[S.table[i][j]] != compose_partial(img[i], img[j]):
            rep.add("multiplicativity", (i, j))
            break
    if S.star is not None:
        for i in S.elements:
            if img[S.star[i]] != invert_partial(img[i]):
                rep.add("star_compatibility", (i,))
                break
    seen: dict[PartialBijection, int] = {}
    for i in S.elements:
        if img[i] in seen:
            rep.add("faithfulness", (seen[img[i]], i))
            break
        seen[img[i]] = i
    rep.checked["pairs"] = S.n ** 2
    return rep


def wagner_preston(S: FiniteInverseSemigroup) -> Representation:
    """Left regular representation by partial bijections of ``S`` itself:
    ``s`` acts by ``x -> s x`` on ``{x : s* s x = x}``."""
    S.require_inverse()
    n = S.n
    images = []
    for s in S.elements:
        ss = S.table[S.star[s]][s]
        images.append(PartialBijection(n, tuple(S.table[s][x] if S.table[ss][x] == x else None for x in range(n))))
    return Representation(S, n, tuple(images))


@dataclass(frozen=True)
class MirroredRepresentation:
    representation: Representation
    equals_original: bool


def mirror_representation(rho: Representation) -> MirroredRepresentation:
    """``s -> rho(s*)^-1`` computed as written.

    For a homomorphism of inverse semigroups this coincides with ``rho``;
    the flag makes that visible instead of hiding it.
    """
    S = rho.source
    S.require_inverse()
    images = tuple(invert_partial(rho.images[S.star[s]]) for s in S.elements)
    mirrored = Representation(S, rho.carrier, images)
    return MirroredRepresentation(mirrored, images == rho.images)


def relabel_semigroup(S: FiniteInverseSemigroup, perm: Sequence[int]) -> FiniteInverseSemigroup:
    """Copy of ``S`` with element ``i`` renamed ``perm[i]``."""
    n = S.n
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    table = tuple(tuple(perm[S.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    star = None if S.star is None else tuple(perm[S.star[inv[a]]] for a in range(n))
    labels = None if S.labels is None else tuple(S.labels[inv[a]] for a in range(n))
    return FiniteInverseSemigroup(table, star, labels)


def generated_subsemigroup(S: FiniteInverseSemigroup, gens) -> frozenset[int]:
    closed = set(gens)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                for c in (S.table[a][b], S.table[b][a]):
                    if c not in closed:
                        closed.add(c)
                        new.append(c)
        frontier = new
    return frozenset(closed)
