"""Combinatorial skeletons of genus-zero holomorphic buildings.

A component is a branched cover of a trivial cylinder, a cover of a
nontrivial somewhere-injective curve, or a somewhere-injective curve
itself.  Buildings stack components into levels with end-matching
bijections.  The enumerator generates every skeleton within configured
bounds, subject to the combinatorial surrogates of a generic almost
complex structure (nontrivial somewhere-injective curves have index at
least one) and of dynamical convexity (contractible orbits have
Conley-Zehnder index at least three, and only contractible orbits bound
planes).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Iterator

from .errors import (
    DynamicalConvexityError,
    EnumerationLimitError,
    PreconditionError,
    SkeletonError,
)
from .orbits import CurveData, OrbitRef, cz_index, fredholm_index, is_good

INF = float("inf")


class ComponentKind(Enum):
    BRANCHED_COVER_OF_TRIVIAL_CYLINDER = "branched-cover-of-trivial-cylinder"
    COVER_OF_NONTRIVIAL_CURVE = "cover-of-nontrivial-curve"
    SOMEWHERE_INJECTIVE = "somewhere-injective"


def _ref_sort_key(ref: OrbitRef):
    return (ref.base.name, ref.multiplicity)


def _grouping_exists(cover_ends, under_ends, degree) -> bool:
    """Can the cover ends be split among the underlying ends, each group
    covering its end with total degree `degree`?"""
    remaining = [degree] * len(under_ends)

    def assign(i):
        if i == len(cover_ends):
            return all(r == 0 for r in remaining)
        end = cover_ends[i]
        seen = set()
        for j, under in enumerate(under_ends):
            if under.base != end.base or end.multiplicity % under.multiplicity:
                continue
            t = end.multiplicity // under.multiplicity
            state = (under.base.name, under.multiplicity, remaining[j])
            if t > remaining[j] or state in seen:
                continue
            seen.add(state)
            remaining[j] -= t
            if assign(i + 1):
                remaining[j] += t
                return True
            remaining[j] += t
        return False

    return assign(0)


@dataclass(frozen=True)
class ComponentSkeleton:
    """One curve in a building: cover data plus the ends of cover and base."""

    kind: ComponentKind
    cover_degree: int
    branch_count: int
    genus: int
    positive_ends: tuple
    negative_ends: tuple
    underlying_positive_ends: tuple
    underlying_negative_ends: tuple

    def __post_init__(self):
        for name in (
            "positive_ends",
            "negative_ends",
            "underlying_positive_ends",
            "underlying_negative_ends",
        ):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        d, b = self.cover_degree, self.branch_count
        if d < 1 or b < 0 or self.genus < 0:
            raise SkeletonError("cover degree, branch count, genus out of range")
        if not self.positive_ends or not self.underlying_positive_ends:
            raise SkeletonError("a component needs at least one positive end")
        k, n = len(self.positive_ends), len(self.negative_ends)
        chi = 2 - 2 * self.genus - k - n
        if self.kind is ComponentKind.SOMEWHERE_INJECTIVE:
            if d != 1 or b != 0:
                raise SkeletonError("somewhere-injective components have d=1, b=0")
            if (
                self.underlying_positive_ends != self.positive_ends
                or self.underlying_negative_ends != self.negative_ends
            ):
                raise SkeletonError("somewhere-injective ends must equal underlying ends")
            return
        if self.kind is ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
            up, un = self.underlying_positive_ends, self.underlying_negative_ends
            if len(up) != 1 or len(un) != 1 or up[0] != un[0] or up[0].multiplicity != 1:
                raise SkeletonError(
                    "the underlying trivial cylinder must sit over one embedded orbit"
                )
            base = up[0].base
            if any(r.base != base for r in self.positive_ends + self.negative_ends):
                raise SkeletonError("all ends must cover the cylinder's orbit")
            if sum(r.multiplicity for r in self.positive_ends) != d:
                raise SkeletonError("positive end multiplicities must partition the degree")
            if sum(r.multiplicity for r in self.negative_ends) != d:
                raise SkeletonError("negative end multiplicities must partition the degree")
            if chi != -b:
                raise SkeletonError("branch count violates Riemann-Hurwitz")
            return
        # Cover of a nontrivial somewhere-injective curve (underlying genus zero).
        if d < 2:
            raise SkeletonError("covers of nontrivial curves need degree >= 2")
        if self.underlying_is_trivial_cylinder:
            raise SkeletonError(
                "covers of trivial cylinders must use the dedicated kind"
            )
        kk = len(self.underlying_positive_ends)
        nn = len(self.underlying_negative_ends)
        if chi != d * (2 - kk - nn) - b:
            raise SkeletonError("branch count violates Riemann-Hurwitz")
        if not _grouping_exists(self.positive_ends, self.underlying_positive_ends, d):
            raise SkeletonError("positive ends do not cover the underlying positive ends")
        if not _grouping_exists(self.negative_ends, self.underlying_negative_ends, d):
            raise SkeletonError("negative ends do not cover the underlying negative ends")

    @property
    def is_trivial_cylinder(self) -> bool:
        one_one = len(self.positive_ends) == 1 and len(self.negative_ends) == 1
        if not one_one:
            return False
        if self.kind is ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
            return self.branch_count == 0
        return (
            self.kind is ComponentKind.SOMEWHERE_INJECTIVE
            and self.positive_ends == self.negative_ends
        )

    @property
    def underlying_is_cylinder(self) -> bool:
        return (
            len(self.underlying_positive_ends) == 1
            and len(self.underlying_negative_ends) == 1
        )

    @property
    def underlying_is_trivial_cylinder(self) -> bool:
        return (
            self.underlying_is_cylinder
            and self.underlying_positive_ends[0] == self.underlying_negative_ends[0]
        )


def component_index(c: ComponentSkeleton) -> int:
    """Fredholm index of the covering curve itself."""
    return fredholm_index(CurveData(c.genus, c.positive_ends, c.negative_ends, 0))


def underlying_index(c: ComponentSkeleton) -> int:
    """Fredholm index of the underlying somewhere-injective curve."""
    genus = c.genus if c.kind is ComponentKind.SOMEWHERE_INJECTIVE else 0
    return fredholm_index(
        CurveData(genus, c.underlying_positive_ends, c.underlying_negative_ends, 0)
    )


def component_key(c: ComponentSkeleton) -> str:
    pos = ",".join(r.key for r in c.positive_ends)
    neg = ",".join(r.key for r in sorted(c.negative_ends, key=_ref_sort_key))
    if c.kind is ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
        return f"btc[d={c.cover_degree},b={c.branch_count}]{pos}=>{neg}"
    if c.kind is ComponentKind.SOMEWHERE_INJECTIVE:
        return f"si[g={c.genus}]{pos}=>{neg}"
    upos = ",".join(r.key for r in c.underlying_positive_ends)
    uneg = ",".join(r.key for r in sorted(c.underlying_negative_ends, key=_ref_sort_key))
    return f"cov[d={c.cover_degree},b={c.branch_count};{upos}=>{uneg}]{pos}=>{neg}"


# ------------------------------------------------------------------ checks


def check_trivial_cover_nonnegative(c: ComponentSkeleton) -> bool:
    """Index of a branched cover of a trivial cylinder is never negative."""
    if c.kind is not ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
        raise PreconditionError("component is not a cover of a trivial cylinder")
    return component_index(c) >= 0


def check_cover_index_bound(c: ComponentSkeleton) -> bool:
    """ind(cover) >= d * ind(underlying) + 2(1 - d + b) for one-positive-end
    genus-zero components."""
    if c.genus != 0 or len(c.positive_ends) != 1:
        raise PreconditionError("the bound needs genus zero and one positive end")
    d, b = c.cover_degree, c.branch_count
    return component_index(c) >= d * underlying_index(c) + 2 * (1 - d + b)


def check_nontrivial_cover_bounds(c: ComponentSkeleton, profile) -> bool:
    """Two generic-profile estimates on one-positive-end components.

    Over a nontrivial underlying cylinder the index is at least the number
    of negative ends; off covers of trivial cylinders with more than one
    negative end it is at least 5 - 2n.
    """
    if not profile.generic_J:
        raise PreconditionError("the estimates assume a generic profile")
    if c.genus != 0 or len(c.positive_ends) != 1:
        raise PreconditionError("the estimates need genus zero and one positive end")
    nontrivial_underlying = (
        c.kind is not ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER
        and not c.is_trivial_cylinder
    )
    if nontrivial_underlying and underlying_index(c) < 1:
        raise PreconditionError("underlying curve violates the generic index bound")
    n = len(c.negative_ends)
    ind = component_index(c)
    ok = True
    if nontrivial_underlying and c.underlying_is_cylinder:
        ok = ok and ind >= n
    if c.kind is not ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER and n > 1:
        ok = ok and ind >= 5 - 2 * n
    return ok


def _is_hyperbolic_ref(ref: OrbitRef) -> bool:
    return (ref.base.theta * ref.multiplicity).denominator <= 2


def check_cylinder_cover_index(c: ComponentSkeleton, profile) -> bool:
    """For nontrivial cylinders: 1 <= ind(underlying) <= ind(cover).

    When both underlying ends are hyperbolic the index is exactly
    multiplicative, ind(cover) = d * ind(underlying); in particular an
    index-one cylinder with an end at a bad orbit lying over a negative
    hyperbolic underlying end cannot be multiply covered.  (With an
    elliptic underlying end and a bad end lying over an even cover of a
    negative hyperbolic orbit, multiply covered index-one cylinders do
    occur, so no constraint is asserted there.)
    """
    if not profile.generic_J:
        raise PreconditionError("the estimate assumes a generic profile")
    if len(c.positive_ends) != 1 or len(c.negative_ends) != 1:
        raise PreconditionError("component is not a cylinder")
    if c.is_trivial_cylinder or c.kind is ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
        raise PreconditionError("component is a cover of a trivial cylinder")
    ind_u = component_index(c)
    ind_under = underlying_index(c)
    ok = 1 <= ind_under <= ind_u
    both_hyperbolic = _is_hyperbolic_ref(c.underlying_positive_ends[0]) and (
        _is_hyperbolic_ref(c.underlying_negative_ends[0])
    )
    if both_hyperbolic:
        ok = ok and ind_u == c.cover_degree * ind_under
        if ind_u == 1 and (
            not is_good(c.positive_ends[0]) or not is_good(c.negative_ends[0])
        ):
            ok = ok and c.cover_degree == 1
    return ok


def check_multi_end_cover_combination(c: ComponentSkeleton) -> bool:
    """ind + 2n >= d(2k-3) + 4(b+1) for covers whose underlying curve has
    k > 1 negative ends."""
    if c.kind is not ComponentKind.COVER_OF_NONTRIVIAL_CURVE:
        raise PreconditionError("needs a cover of a nontrivial curve")
    k = len(c.underlying_negative_ends)
    if k <= 1:
        raise PreconditionError("needs more than one underlying negative end")
    n = len(c.negative_ends)
    d, b = c.cover_degree, c.branch_count
    return component_index(c) + 2 * n >= d * (2 * k - 3) + 4 * (b + 1)


# ------------------------------------------------------------------ profiles


@dataclass(frozen=True)
class GenericityProfile:
    generic_J: bool = True
    dynamically_convex: bool = False
    condition_star: bool = False


@dataclass(frozen=True)
class EnumerationBounds:
    max_levels: int = 4
    max_total_multiplicity: int = 6
    max_index: int = 3
    max_components_per_level: int = 4
    max_negative_ends: int = 1
    max_buildings: int = 200_000

    def __post_init__(self):
        if min(
            self.max_levels,
            self.max_total_multiplicity,
            self.max_components_per_level,
            self.max_buildings,
        ) < 1 or self.max_negative_ends < 0:
            raise PreconditionError("enumeration bounds must be positive")


# ------------------------------------------------------- component inventory


@lru_cache(maxsize=None)
def _partitions(n: int):
    """Partitions of n as tuples with nonincreasing parts."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def _check_convexity(orbits, profile):
    if not profile.dynamically_convex:
        return
    for orbit in orbits:
        if orbit.contractible and cz_index(OrbitRef(orbit, 1)) < 3:
            raise DynamicalConvexityError(
                f"orbit {orbit.name!r} is contractible with cz < 3; the scenario "
                "is not dynamically convex"
            )


def _scenario_refs(orbits, bounds):
    refs = []
    for orbit in orbits:
        cap = min(orbit.validity_bound, bounds.max_total_multiplicity)
        refs.extend(OrbitRef(orbit, m) for m in range(1, cap + 1))
    return refs


def _neg_multisets(refs, budget, cz):
    """All multisets of refs with total multiplicity <= budget, with their
    total multiplicity, cz sum, and size."""
    out = []

    def rec(start, left, acc, czsum):
        out.append((tuple(acc), budget - left, czsum, len(acc)))
        for j in range(start, len(refs)):
            m = refs[j].multiplicity
            if m <= left:
                acc.append(refs[j])
                rec(j, left - m, acc, czsum + cz[refs[j]])
                acc.pop()

    rec(0, budget, [], 0)
    return out


def _sorted_ends(ends):
    return tuple(sorted(ends, key=_ref_sort_key))


def enumerate_components(orbits, profile, bounds) -> Iterator[ComponentSkeleton]:
    """Yield every admissible component skeleton within the bounds.

    Components have genus zero and one positive end; negative-end
    multiplicities total at most the multiplicity bound.  Under a generic
    profile, nontrivial somewhere-injective curves must have index >= 1.
    Planes are only admitted over contractible orbits.
    """
    _check_convexity(orbits, profile)
    top = bounds.max_total_multiplicity
    refs = _scenario_refs(orbits, bounds)
    cz = {r: cz_index(r) for r in refs}
    cap = {o.name: min(o.validity_bound, top) for o in orbits}

    # Trivial cylinders and branched covers of trivial cylinders.
    for orbit in orbits:
        base = OrbitRef(orbit, 1)
        for d in range(1, cap[orbit.name] + 1):
            ref = OrbitRef(orbit, d)
            yield ComponentSkeleton(
                ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER,
                d, 0, 0, (ref,), (ref,), (base,), (base,),
            )
            for parts in _partitions(d):
                if len(parts) < 2:
                    continue
                neg = _sorted_ends(OrbitRef(orbit, p) for p in parts)
                yield ComponentSkeleton(
                    ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER,
                    d, len(parts) - 1, 0, (ref,), neg, (base,), (base,),
                )

    # Somewhere-injective curves.
    multisets = _neg_multisets(refs, top, cz)
    for pos in refs:
        pos_cz = cz[pos]
        for neg, _, czsum, n in multisets:
            if n == 1 and neg[0] == pos:
                continue  # the trivial cylinder, emitted above
            if n == 0 and not pos.base.contractible:
                continue  # planes bound disks; the orbit must be contractible
            ind = (n - 1) + pos_cz - czsum
            if profile.generic_J and ind < 1:
                continue
            yield ComponentSkeleton(
                ComponentKind.SOMEWHERE_INJECTIVE,
                1, 0, 0, (pos,), neg, (pos,), neg,
            )

    # Covers of nontrivial somewhere-injective curves.
    for d in range(2, top + 1):
        small = _neg_multisets([r for r in refs if r.multiplicity * d <= top], top // d, cz)
        for upos in refs:
            if upos.multiplicity * d > cap[upos.base.name]:
                continue
            pos = OrbitRef(upos.base, upos.multiplicity * d)
            for uneg, _, czsum, k in small:
                if k == 1 and uneg[0] == upos:
                    continue
                if k == 0 and not upos.base.contractible:
                    continue
                if profile.generic_J and (k - 1) + cz[upos] - czsum < 1:
                    continue
                yield from _covers_of(upos, pos, uneg, d, cap, bounds)


def _covers_of(upos, pos, uneg, d, cap, bounds):
    """All genus-zero degree-d covers of the underlying curve (upos, uneg)."""
    k = len(uneg)
    choices = []
    for under in uneg:
        local = []
        limit = cap[under.base.name]
        for parts in _partitions(d):
            mults = [under.multiplicity * t for t in parts]
            if all(m <= limit for m in mults):
                local.append(tuple(OrbitRef(under.base, m) for m in mults))
        choices.append(local)

    seen = set()

    def rec(i, acc):
        if i == k:
            neg = _sorted_ends(e for group in acc for e in group)
            n = len(neg)
            b = n + d - d * k - 1
            if b < 0 or neg in seen:
                return
            seen.add(neg)
            yield ComponentSkeleton(
                ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
                d, b, 0, (pos,), neg, (upos,), tuple(uneg),
            )
            return
        for group in choices[i]:
            acc.append(group)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


# ------------------------------------------------------------------ buildings


@dataclass(frozen=True)
class Level:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise SkeletonError("a level must contain at least one component")

    @property
    def has_nontrivial(self) -> bool:
        return any(not c.is_trivial_cylinder for c in self.components)

    @property
    def negative_ends(self):
        return tuple(e for c in self.components for e in c.negative_ends)

    @property
    def positive_ends(self):
        return tuple(e for c in self.components for e in c.positive_ends)


@dataclass(frozen=True)
class BuildingSkeleton:
    """Levels of components with bijective end matchings between neighbors.

    matchings[i][j] is the flattened positive-end position in level i+1
    matched to the j-th flattened negative end of level i.
    """

    levels: tuple
    matchings: tuple

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "matchings", tuple(tuple(m) for m in self.matchings))
        if not self.levels:
            raise SkeletonError("a building needs at least one level")
        if len(self.matchings) != len(self.levels) - 1:
            raise SkeletonError("one matching is required per adjacent level pair")
        if len(self.levels) > 1 and not all(l.has_nontrivial for l in self.levels):
            raise SkeletonError(
                "every level of a multi-level building needs a nontrivial component"
            )
        for i, matching in enumerate(self.matchings):
            neg = self.levels[i].negative_ends
            pos = self.levels[i + 1].positive_ends
            if len(matching) != len(neg) or len(pos) != len(neg):
                raise SkeletonError("matching is not a bijection of adjacent ends")
            if sorted(matching) != list(range(len(pos))):
                raise SkeletonError("matching is not a bijection of adjacent ends")
            for j, target in enumerate(matching):
                if neg[j] != pos[target]:
                    raise SkeletonError("matched ends must reference equal orbits")
        self._check_tree()

    def _check_tree(self):
        # Genus zero with connectedness means the component graph is a tree.
        ids = {}
        for li, level in enumerate(self.levels):
            for ci, _ in enumerate(level.components):
                ids[(li, ci)] = len(ids)
        edges = []
        for i, matching in enumerate(self.matchings):
            neg_owner = [
                ci
                for ci, c in enumerate(self.levels[i].components)
                for _ in c.negative_ends
            ]
            pos_owner = [
                ci
                for ci, c in enumerate(self.levels[i + 1].components)
                for _ in c.positive_ends
            ]
            for j, target in enumerate(matching):
                edges.append(((i, neg_owner[j]), (i + 1, pos_owner[target])))
        if len(edges) != len(ids) - 1:
            raise SkeletonError("building graph is not a tree (genus would be positive)")
        seen = {(0, 0)}
        frontier = [(0, 0)]
        adj = {}
        for a, b in edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        while frontier:
            node = frontier.pop()
            for other in adj.get(node, ()):
                if other not in seen:
                    seen.add(other)
                    frontier.append(other)
        if len(seen) != len(ids):
            raise SkeletonError("building graph is not connected")

    @property
    def total_index(self) -> int:
        return sum(component_index(c) for l in self.levels for c in l.components)

    @property
    def positive_ends(self):
        return self.levels[0].positive_ends

    @property
    def negative_ends(self):
        return self.levels[-1].negative_ends

    @property
    def is_trivial(self) -> bool:
        return (
            len(self.levels) == 1
            and len(self.levels[0].components) == 1
            and self.levels[0].components[0].is_trivial_cylinder
        )


class _Node:
    __slots__ = ("component", "children")

    def __init__(self, component):
        self.component = component
        self.children = [None] * len(component.negative_ends)


def _canonical_node(node, keys):
    """Return (serialization, node with children canonically ordered)."""
    comp = node.component
    child_data = []
    for child in node.children:
        if child is None:
            child_data.append(("!", None))
        else:
            child_data.append(_canonical_node(child, keys))
    # Sort subtree serializations within runs of equal negative-end refs.
    ends = comp.negative_ends
    ordered = list(child_data)
    i = 0
    while i < len(ends):
        j = i
        while j < len(ends) and ends[j] == ends[i]:
            j += 1
        ordered[i:j] = sorted(ordered[i:j], key=lambda t: t[0])
        i = j
    new = _Node(comp)
    new.children = [t[1] for t in ordered]
    text = keys[id(comp)] + "(" + ",".join(t[0] for t in ordered) + ")"
    return text, new


def _skeleton_from_tree(root) -> BuildingSkeleton:
    levels = []
    matchings = []
    current = [root]
    while current:
        levels.append(Level(tuple(n.component for n in current)))
        nxt = []
        matching = []
        any_child = any(c is not None for n in current for c in n.children)
        if not any_child:
            break
        for node in current:
            for child in node.children:
                matching.append(len(nxt))
                nxt.append(child)
        matchings.append(tuple(matching))
        current = nxt
    return BuildingSkeleton(tuple(levels), tuple(matchings))


def building_key(building: BuildingSkeleton) -> str:
    """Canonical serialization; equal exactly for isomorphic buildings."""
    keys = {
        id(c): component_key(c) for l in building.levels for c in l.components
    }
    if len(building.levels[0].components) != 1:
        return "|".join(
            ";".join(sorted(keys[id(c)] for c in l.components)) for l in building.levels
        )
    nodes = [[_Node(c) for c in l.components] for l in building.levels]
    for i, matching in enumerate(building.matchings):
        flat = [
            (node, ei)
            for node in nodes[i]
            for ei in range(len(node.component.negative_ends))
        ]
        for j, target in enumerate(matching):
            node, ei = flat[j]
            node.children[ei] = nodes[i + 1][target]
    text, _ = _canonical_node(nodes[0][0], keys)
    return text


class _Enumerator:
    def __init__(self, orbits, profile, bounds, deadline):
        self.bounds = bounds
        self.deadline = deadline
        self.results = {}
        components = list(enumerate_components(orbits, profile, bounds))
        self.keys = {id(c): component_key(c) for c in components}
        self.ind = {id(c): component_index(c) for c in components}
        self.by_pos = {}
        for c in components:
            self.by_pos.setdefault(c.positive_ends[0], []).append(c)
        for ref, group in self.by_pos.items():
            group.sort(key=lambda c: (self.ind[id(c)], self.keys[id(c)]))
        self._closed = self._closed_bounds()
        self._open = self._open_bounds()

    def _closed_bounds(self):
        levels = self.bounds.max_levels
        table = [dict() for _ in range(levels + 1)]
        for r in range(1, levels + 1):
            for ref, group in self.by_pos.items():
                best = table[r - 1].get(ref, INF)
                for c in group:
                    cost = self.ind[id(c)]
                    for e in c.negative_ends:
                        cost += table[r - 1].get(e, INF)
                        if cost == INF:
                            break
                    best = min(best, cost)
                if best < INF:
                    table[r][ref] = best
        return table

    def _open_bounds(self):
        levels = self.bounds.max_levels
        table = [dict() for _ in range(levels + 1)]
        for r in range(levels + 1):
            for ref in self.by_pos:
                table[r][ref] = 0
        for r in range(1, levels + 1):
            for ref, group in self.by_pos.items():
                best = min(table[r][ref], table[r - 1].get(ref, 0))
                for c in group:
                    ends = c.negative_ends
                    if not ends:
                        continue
                    closed = [self._closed[r - 1].get(e, INF) for e in ends]
                    for i, e in enumerate(ends):
                        cost = self.ind[id(c)] + table[r - 1].get(e, 0)
                        for j, cl in enumerate(closed):
                            if j == i:
                                continue
                            if cl == INF:
                                cost = INF
                                break
                            cost += cl
                        if cost != INF:
                            best = min(best, cost)
                table[r][ref] = best
        return table

    def _completion(self, frontier, rem):
        opens = self.bounds.max_negative_ends
        costs = sorted(
            (
                self._closed[rem].get(ref, INF) - self._open[rem].get(ref, 0),
                self._closed[rem].get(ref, INF),
                self._open[rem].get(ref, 0),
            )
            for ref in frontier
        )
        total = 0
        for saving, closed, opened in reversed(costs):
            if opens > 0 and (closed == INF or saving > 0):
                total += opened
                opens -= 1
            else:
                if closed == INF:
                    return INF
                total += closed
        return total

    def _emit(self, root, total):
        if time.monotonic() > self.deadline:
            raise EnumerationLimitError(
                "enumeration wall-clock limit exceeded", self._partial()
            )
        text, canon = _canonical_node(root, self.keys)
        if text in self.results:
            return
        if len(self.results) >= self.bounds.max_buildings:
            raise EnumerationLimitError(
                "enumeration building limit exceeded", self._partial()
            )
        self.results[text] = _skeleton_from_tree(canon)

    def _partial(self):
        return [self.results[k] for k in sorted(self.results)]

    def run(self):
        roots = sorted(
            (
                c
                for group in self.by_pos.values()
                for c in group
                if not c.is_trivial_cylinder
            ),
            key=lambda c: self.keys[id(c)],
        )
        for comp in roots:
            ind = self.ind[id(comp)]
            node = _Node(comp)
            self._recurse([node], list(comp.negative_ends), 1, ind, [node])
        return self._partial()

    def _recurse(self, level_nodes, frontier, depth, total, root_holder):
        b = self.bounds
        if time.monotonic() > self.deadline:
            raise EnumerationLimitError(
                "enumeration wall-clock limit exceeded", self._partial()
            )
        root = root_holder[0]
        if len(frontier) <= b.max_negative_ends and total <= b.max_index:
            self._emit(root, total)
        if depth >= b.max_levels or not frontier:
            return
        if len(frontier) > b.max_components_per_level:
            return
        rem = b.max_levels - depth
        if total + self._completion(frontier, rem) > b.max_index:
            return
        ends = []
        for node in level_nodes:
            for ei in range(len(node.component.negative_ends)):
                ends.append((node, ei))
        self._assign(ends, frontier, 0, [], {}, depth, total, 0, root_holder)

    def _assign(
        self, ends, frontier, pos, chosen, last_for_ref, depth, total, pending, root_holder
    ):
        b = self.bounds
        if pos == len(frontier):
            if all(c.is_trivial_cylinder for c in chosen):
                return
            children = [_Node(c) for c in chosen]
            for (node, ei), child in zip(ends, children):
                node.children[ei] = child
            new_frontier = [e for c in chosen for e in c.negative_ends]
            self._recurse(children, new_frontier, depth + 1, total, root_holder)
            for node, ei in ends:
                node.children[ei] = None
            return
        ref = frontier[pos]
        group = self.by_pos.get(ref, ())
        rem = b.max_levels - depth - 1
        rest_floor = sum(
            min(self._open[rem + 1].get(r, 0), self._closed[rem + 1].get(r, INF))
            for r in frontier[pos + 1 :]
        )
        start = last_for_ref.get(ref, 0)
        for idx in range(start, len(group)):
            comp = group[idx]
            ind = self.ind[id(comp)]
            down = self._completion(comp.negative_ends, rem)
            if down == INF:
                continue
            if total + ind + down + pending + rest_floor > b.max_index:
                continue
            chosen.append(comp)
            last_for_ref[ref] = idx
            self._assign(
                ends,
                frontier,
                pos + 1,
                chosen,
                last_for_ref,
                depth,
                total + ind,
                pending + min(down, 0),
                root_holder,
            )
            chosen.pop()
        if start:
            last_for_ref[ref] = start
        else:
            last_for_ref.pop(ref, None)


def enumerate_buildings(orbits, profile, bounds, time_limit=None):
    """Every genus-zero building skeleton within the bounds, canonically
    sorted and duplicate free.

    Buildings have one positive end, at most max_negative_ends negative
    ends, total index at most max_index, at most max_levels levels with at
    most max_components_per_level components each.  Raises an enumeration
    limit error carrying partial results when a configured limit is hit.
    """
    deadline = time.monotonic() + (time_limit if time_limit is not None else 10**9)
    return _Enumerator(orbits, profile, bounds, deadline).run()


# ------------------------------------------------------------------ sweeps


CHECK_NAMES = (
    "trivial_cover_nonnegative",
    "cover_index_bound",
    "nontrivial_cover_bounds",
    "cylinder_cover_index",
    "multi_end_cover_combination",
)


@dataclass
class EstimateSweepReport:
    components: int = 0
    checked: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def lines(self):
        out = [f"components: {self.components}"]
        for name in CHECK_NAMES:
            out.append(
                f"check {name}: checked={self.checked.get(name, 0)} "
                f"violations={len(self.violations.get(name, ()))}"
            )
        return out


def run_estimate_sweep(orbits, profile, bounds) -> EstimateSweepReport:
    """Apply every index estimate to every enumerated component."""
    report = EstimateSweepReport(
        checked={name: 0 for name in CHECK_NAMES},
        violations={name: [] for name in CHECK_NAMES},
    )

    def apply(name, fn, c):
        report.checked[name] += 1
        if not fn(c):
            report.violations[name].append(component_key(c))

    for c in enumerate_components(orbits, profile, bounds):
        report.components += 1
        if c.kind is ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
            apply("trivial_cover_nonnegative", check_trivial_cover_nonnegative, c)
        apply("cover_index_bound", check_cover_index_bound, c)
        apply(
            "nontrivial_cover_bounds",
            lambda comp: check_nontrivial_cover_bounds(comp, profile),
            c,
        )
        if (
            len(c.positive_ends) == 1
            and len(c.negative_ends) == 1
            and not c.is_trivial_cylinder
            and c.kind is not ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER
        ):
            apply(
                "cylinder_cover_index",
                lambda comp: check_cylinder_cover_index(comp, profile),
                c,
            )
        if (
            c.kind is ComponentKind.COVER_OF_NONTRIVIAL_CURVE
            and len(c.underlying_negative_ends) > 1
        ):
            apply(
                "multi_end_cover_combination", check_multi_end_cover_combination, c
            )
    return report


# --------------------------------------------------------- proposition check


CASE_ONE_LEVEL = "index-two:one-level"
CASE_TWO_CYLINDERS = "index-two:two-cylinder-levels"
CASE_SPLIT_PLANE = "index-two:split-off-plane"


def _is_split_plane_shape(b: BuildingSkeleton) -> bool:
    if len(b.levels) != 2:
        return False
    top = b.levels[0].components
    bottom = b.levels[1].components
    if len(top) != 1 or len(bottom) != 2:
        return False
    cover = top[0]
    if cover.kind is not ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER:
        return False
    if len(cover.negative_ends) != 2 or component_index(cover) != 0:
        return False
    trivials = [c for c in bottom if c.is_trivial_cylinder]
    planes = [c for c in bottom if not c.negative_ends]
    return (
        len(trivials) == 1
        and len(planes) == 1
        and component_index(planes[0]) == 2
    )


@dataclass
class PropositionEntry:
    key: str
    index: int
    levels: int
    negative_ends: int
    classification: str
    ok: bool


@dataclass
class PropositionReport:
    entries: list = field(default_factory=list)

    @property
    def counterexamples(self):
        return [e for e in self.entries if not e.ok]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def tally(self):
        counts = {}
        for e in self.entries:
            counts[e.classification] = counts.get(e.classification, 0) + 1
        return counts

    def lines(self):
        out = [f"buildings: {len(self.entries)}"]
        for tag in sorted(self.tally()):
            out.append(f"class {tag}: {self.tally()[tag]}")
        out.append(f"counterexamples: {len(self.counterexamples)}")
        for e in self.counterexamples:
            out.append(f"counterexample: index={e.index} {e.key}")
        return out


def classify_building(b: BuildingSkeleton):
    """Match a building against the low-index classification claims."""
    ind = b.total_index
    nneg = len(b.negative_ends)
    nlev = len(b.levels)
    if nneg == 0:
        if ind < 2:
            return ("no-negative-ends:index-below-two", False)
        if ind == 2:
            return ("index-two-plane", nlev == 1)
        return ("no-negative-ends:index-above-two", True)
    if ind < 1:
        return ("one-negative-end:index-below-one", False)
    if ind == 1:
        return ("index-one-cylinder", nlev == 1)
    if ind == 2:
        if nlev == 1:
            return (CASE_ONE_LEVEL, True)
        if nlev == 2:
            cylinders = all(
                len(l.components) == 1
                and len(l.components[0].positive_ends) == 1
                and len(l.components[0].negative_ends) == 1
                for l in b.levels
            )
            if cylinders:
                return (CASE_TWO_CYLINDERS, True)
            if _is_split_plane_shape(b):
                return (CASE_SPLIT_PLANE, True)
        return ("index-two:unclassified", False)
    return ("one-negative-end:index-above-two", True)


def verify_propositions(orbits, profile, bounds, time_limit=None) -> PropositionReport:
    """Check every enumerated building against the low-index claims.

    Needs a generic, dynamically convex profile.  Trivial buildings are
    excluded; buildings with no negative ends must have index >= 2 with
    equality only for one-level planes; nontrivial buildings with one
    negative end must have index >= 1, with index one only in one level and
    index two only in the three admissible shapes.
    """
    if not (profile.generic_J and profile.dynamically_convex):
        raise PreconditionError(
            "proposition verification assumes a generic, dynamically convex profile"
        )
    report = PropositionReport()
    if not orbits:
        return report
    bounds = replace(bounds, max_negative_ends=min(bounds.max_negative_ends, 1))
    for b in enumerate_buildings(orbits, profile, bounds, time_limit=time_limit):
        tag, ok = classify_building(b)
        report.entries.append(
            PropositionEntry(
                key=building_key(b),
                index=b.total_index,
                levels=len(b.levels),
                negative_ends=len(b.negative_ends),
                classification=tag,
                ok=ok,
            )
        )
    return report
