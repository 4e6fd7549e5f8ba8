"""Single-element extensions of a presentation and their lattices.

Adjoining a fresh element to the sets indexed by I yields an extension
of the presented matroid.  Distinct index sets can give the same
extension; each extension has a unique largest describing index set,
and those closed sets form a distributive lattice (join is union, meet
is intersection) isomorphic to the weak order on the extensions.

Two independent constructions of that lattice are kept side by side:
a fixpoint scan of the closure operator over all index sets, and a
generator route from supports of independent sets closed under
intersection.  Each serves as the oracle for the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matching
from .core import (SetSystem, GroundSet, SubsetLattice, bit_indices, family_key,
                   intersection_closure)
from .matroid import Matroid
from .presentations import is_maximal, require_full_rank

SCAN_LIMIT = 20  # the fixpoint scan walks all 2^r index sets


def fresh_label(ground: GroundSet, stem: str = "x") -> str:
    if stem not in ground.names:
        return stem
    k = 1
    while f"{stem}{k}" in ground.names:
        k += 1
    return f"{stem}{k}"


def extend(system: SetSystem, iset: int, label: str = "x") -> SetSystem:
    """Adjoin a fresh element to the sets indexed by ``iset``."""
    if label in system.ground.names:
        raise ValueError(f"label {label!r} already in the ground set")
    if iset & ~system.full_index_mask:
        raise ValueError("index set out of range")
    ground = GroundSet(system.ground.names + (label,))
    xbit = 1 << system.ground.n
    sets = tuple(a | xbit if iset & (1 << i) else a
                 for i, a in enumerate(system.sets))
    return SetSystem(ground, sets)


def iterated_extend(system: SetSystem, isets) -> SetSystem:
    """Left fold of ``extend`` with generated labels x1, x2, ..."""
    current = system
    for k, iset in enumerate(isets, start=1):
        current = extend(current, iset, fresh_label(current.ground, f"x{k}"))
    return current


def extension_matroid(system: SetSystem, iset: int, label: str = "x") -> Matroid:
    return Matroid.from_system(extend(system, iset, label))


def index_closure(system: SetSystem, iset: int) -> int:
    """The greatest index set describing the same extension as ``iset``.

    An outside index k joins the closure exactly when the new element
    would become a coloop after deleting the k-th set, i.e. when the
    new element can augment a maximum matching of that deletion.
    """
    require_full_rank(system)
    if iset & ~system.full_index_mask:
        raise ValueError("index set out of range")
    reach = matching.deletion_reach(system)
    out = iset
    for k in range(system.r):
        bit = 1 << k
        if not iset & bit and iset & reach[k][1]:
            out |= bit
    return out


def is_index_closed(system: SetSystem, iset: int) -> bool:
    return index_closure(system, iset) == iset


def extension_lattice(system: SetSystem) -> SubsetLattice:
    """All closed index sets, by fixpoint scan over the whole powerset."""
    require_full_rank(system)
    r = system.r
    if r > SCAN_LIMIT:
        raise ValueError(f"scan strategy capped at {SCAN_LIMIT} sets")
    reach = [rm for _, rm in matching.deletion_reach(system)]
    members = []
    for iset in range(1 << r):
        rest = system.full_index_mask & ~iset
        closed = True
        for k in bit_indices(rest):
            if iset & reach[k]:
                closed = False
                break
        if closed:
            members.append(iset)
    return SubsetLattice(r, frozenset(members))


def tight_supports(system: SetSystem) -> SubsetLattice:
    """Supports of sets whose rank matches their support size.

    The family is closed under union but not, in general, under
    intersection.  An index set K belongs exactly when the elements
    supported inside K admit a matching onto all of K.
    """
    require_full_rank(system)
    r = system.r
    if r > SCAN_LIMIT:
        raise ValueError(f"support strategy capped at {SCAN_LIMIT} sets")
    sup = matching.element_supports(system)
    n = system.ground.n
    members = []
    for k_mask in range(1 << r):
        inside = 0
        for e in range(n):
            if sup[e] and sup[e] & ~k_mask == 0:
                inside |= 1 << e
        restricted = SetSystem(system.ground,
                               tuple(a & inside if k_mask & (1 << i) else 0
                                     for i, a in enumerate(system.sets)))
        if matching.rank(restricted, inside) == k_mask.bit_count():
            members.append(k_mask)
    return SubsetLattice(r, frozenset(members), closed_under=("union",))


def extension_lattice_from_supports(system: SetSystem) -> SubsetLattice:
    """The closed-set lattice built as the intersection closure of supports."""
    gen = tight_supports(system)
    return SubsetLattice(gen.r, intersection_closure(gen.members, gen.r))


def cyclic_flat_supports(system: SetSystem) -> SubsetLattice:
    """Supports of the cyclic flats, plus the full index set.

    Only sensible for maximal presentations, where the intersection
    closure of this family recovers the whole closed-set lattice.
    """
    if not is_maximal(system):
        raise ValueError("cyclic flat supports require a maximal presentation")
    m = Matroid.from_system(system)
    members = {system.support(f) for f in m.cyclic_flats()}
    members.add(system.full_index_mask)
    return SubsetLattice(system.r, frozenset(members), closed_under=())


@dataclass(frozen=True)
class ExtensionRecord:
    """A closed index set paired with the extension matroid it describes."""

    index_set: int
    matroid: Matroid


def extension_matroids(system: SetSystem) -> tuple[ExtensionRecord, ...]:
    """One record per closed index set, in canonical order."""
    lat = extension_lattice(system)
    return tuple(ExtensionRecord(i, extension_matroid(system, i))
                 for i in lat.sorted_members())


def irreducibles(lat: SubsetLattice):
    """Join- and meet-irreducible members, with the least-cover map.

    Returns (join_irr, meet_irr, least_containing) where
    ``least_containing[i]`` is the smallest member containing index i.
    Join-irreducibles are the distinct such minima (omitting the bottom
    member); meet-irreducibles are the distinct maxima avoiding an index.
    """
    if not lat.members:
        raise ValueError("empty family")
    mem = lat.members
    top = 0
    bottom_candidates = None
    for m in mem:
        top |= m
        bottom_candidates = m if bottom_candidates is None else bottom_candidates & m
    bottom = bottom_candidates

    least: dict[int, int] = {}
    for i in bit_indices(top):
        inter = None
        for m in mem:
            if m & (1 << i):
                inter = m if inter is None else inter & m
        least[i] = inter
    join_irr = sorted({v for v in least.values() if v != bottom}, key=family_key)

    meet_irr = set()
    for i in bit_indices(top & ~bottom):
        union = 0
        for m in mem:
            if not m & (1 << i):
                union |= m
        if union != top:
            meet_irr.add(union)
    return join_irr, sorted(meet_irr, key=family_key), least


@dataclass(frozen=True)
class CommonExtensions:
    """The matched sublattices of common extensions of two presentations."""

    lattice_ab: SubsetLattice
    lattice_ba: SubsetLattice
    pairs: tuple[tuple[int, int], ...]


def common_extension_lattice(a: SetSystem, b: SetSystem) -> CommonExtensions:
    """Extensions reachable from both presentations of one matroid.

    Matches the extension matroids of the two sides by equality.  The
    matched index sets form sublattices on both sides, isomorphic via
    the pairing; matched sets always have equal cardinality.  A second,
    independent description (supports tight on both sides, closed under
    intersection) is asserted against the matched one.
    """
    if a.ground.names != b.ground.names:
        raise ValueError("presentations live on different ground sets")
    ma, mb = Matroid.from_system(a), Matroid.from_system(b)
    if not ma.equals(mb):
        raise ValueError("the two systems present different matroids")

    recs_a = extension_matroids(a)
    recs_b = extension_matroids(b)
    by_bases = {rec.matroid.bases(): rec.index_set for rec in recs_b}
    pairs = []
    for rec in recs_a:
        j = by_bases.get(rec.matroid.bases())
        if j is not None:
            pairs.append((rec.index_set, j))
    for i, j in pairs:
        assert i.bit_count() == j.bit_count()

    members_ab = frozenset(i for i, _ in pairs)
    members_ba = frozenset(j for _, j in pairs)
    assert members_ab == _tight_both_ways(a, b, ma), \
        "support description of common extensions disagrees with matching"
    return CommonExtensions(SubsetLattice(a.r, members_ab),
                            SubsetLattice(b.r, members_ba),
                            tuple(sorted(pairs, key=lambda p: family_key(p[0]))))


def _tight_both_ways(a: SetSystem, b: SetSystem, ma: Matroid) -> frozenset[int]:
    """Supports tight under both presentations, closed under intersection."""
    gens = set()
    for ind in ma.independent_sets():
        size = ind.bit_count()
        sa, sb = a.support(ind), b.support(ind)
        if sa.bit_count() == size and sb.bit_count() == size:
            gens.add(sa)
    return intersection_closure(gens, a.r)


def hasse_dot(lat: SubsetLattice) -> str:
    """DOT text of the Hasse diagram, byte-stable across runs.

    Nodes carry set labels, edges are cover pairs only, and members of
    equal height share a rank group.
    """
    mem = lat.sorted_members()

    def name(m: int) -> str:
        return "{" + ",".join(str(i + 1) for i in bit_indices(m)) + "}"

    heights = lat.heights()
    levels: dict[int, list[int]] = {}
    for m in mem:
        levels.setdefault(heights[m], []).append(m)

    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for m in mem:
        lines.append(f'  "{name(m)}";')
    for h in sorted(levels):
        group = "; ".join(f'"{name(m)}"' for m in levels[h])
        lines.append(f"  {{ rank=same; {group}; }}")
    for lo, hi in lat.covers():
        lines.append(f'  "{name(lo)}" -> "{name(hi)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
