"""Presentations realizing a prescribed lattice of closed index sets.

Any union- and intersection-closed family over [r] containing the empty
set and [r] arises as the closed-set lattice of some presentation.  Two
constructions are provided: a maximal presentation on blocks of fresh
elements, and a presentation of a uniform matroid on [n].  Order-ideal
helpers generate test lattices from finite posets.
"""

from __future__ import annotations

from itertools import combinations

from . import matching
from .core import GroundSet, SetSystem, SubsetLattice, bit_indices, family_key


def validate_lattice(members, r: int) -> SubsetLattice:
    """Check closure under union/intersection and presence of {} and [r]."""
    mem = frozenset(members)
    full = (1 << r) - 1
    if 0 not in mem:
        raise ValueError("the empty set is missing")
    if full not in mem:
        raise ValueError("the full index set is missing")
    for a in mem:
        if a & ~full:
            raise ValueError("member outside the index range")
    for a, b in combinations(mem, 2):
        if (a | b) not in mem:
            raise ValueError(f"union of {sorted(bit_indices(a))} and "
                             f"{sorted(bit_indices(b))} is missing")
        if (a & b) not in mem:
            raise ValueError(f"intersection of {sorted(bit_indices(a))} and "
                             f"{sorted(bit_indices(b))} is missing")
    return SubsetLattice(r, mem)


def first_occurrence(lat: SubsetLattice) -> dict[int, int]:
    """Map each member I to the indices appearing first in I.

    An index appears first in the smallest member containing it; the
    nonempty images partition [r].
    """
    occ: dict[int, int] = {}
    for m in lat.members:
        below = 0
        for other in lat.members:
            if other != m and other & m == other:
                below |= other
        occ[m] = m & ~below
    seen = 0
    for part in occ.values():
        if seen & part:
            raise ValueError("an index appears first in two members")
        seen |= part
    if seen != lat.full_mask:
        raise ValueError("an index appears first in no member")
    return occ


def _member_name(m: int) -> str:
    return "-".join(str(i + 1) for i in bit_indices(m))


def build_maximal_presentation(lat: SubsetLattice) -> SetSystem:
    """A maximal presentation whose closed-set lattice is ``lat``.

    Each nonempty member I contributes a block of |I|+1 fresh elements
    lying in exactly the sets indexed by I; the block is dependent, so
    no element can enter a set outside its support.
    """
    validate_lattice(lat.members, lat.r)
    names: list[str] = []
    blocks: list[tuple[int, int]] = []  # (member, element mask)
    for m in sorted(lat.members, key=family_key):
        if m == 0:
            continue
        start = len(names)
        stem = _member_name(m)
        names.extend(f"{stem}:{k}" for k in range(m.bit_count() + 1))
        blocks.append((m, ((1 << (len(names) - start)) - 1) << start))
    ground = GroundSet(tuple(names))
    sets = []
    for i in range(lat.r):
        a = 0
        for m, block in blocks:
            if m & (1 << i):
                a |= block
        sets.append(a)
    return SetSystem(ground, tuple(sets))


def build_uniform_presentation(lat: SubsetLattice, n: int) -> SetSystem:
    """A presentation of the rank-r uniform matroid on [n] realizing ``lat``."""
    validate_lattice(lat.members, lat.r)
    r = lat.r
    if n < r:
        raise ValueError("n must be at least the number of sets")
    occ = first_occurrence(lat)
    holder = {}
    for m, part in occ.items():
        for i in bit_indices(part):
            holder[i] = m
    tail = ((1 << n) - 1) & ~((1 << r) - 1)
    sets = []
    for i in range(r):
        member = holder[i]
        a = tail
        for j_member, part in occ.items():
            if member & j_member == member:
                a |= part
        sets.append(a)
    ground = GroundSet(tuple(str(i + 1) for i in range(n)))
    system = SetSystem(ground, tuple(sets))
    _check_uniform(system, r, n)
    return system


def _check_uniform(system: SetSystem, r: int, n: int) -> None:
    if n > 16:
        if matching.rank(system, system.ground.full_mask) != r:
            raise AssertionError("construction lost full rank")
        return
    for combo in combinations(range(n), r):
        m = 0
        for e in combo:
            m |= 1 << e
        if not matching.is_independent(system, m):
            raise AssertionError("construction is not uniform")


def ideals_of_poset(points: int, less) -> SubsetLattice:
    """The lattice of order ideals (down-closed sets) of a finite poset.

    ``less`` lists strict 1-based pairs (i, j) meaning i < j; the
    transitive closure is taken, and cycles are rejected.
    """
    if points < 0 or points > 16:
        raise ValueError("poset size out of range")
    below = [0] * points  # below[j]: strict predecessors of j
    for i, j in less:
        if not (1 <= i <= points and 1 <= j <= points) or i == j:
            raise ValueError(f"bad pair ({i}, {j})")
        below[j - 1] |= 1 << (i - 1)
    changed = True
    while changed:
        changed = False
        for j in range(points):
            merged = below[j]
            for i in bit_indices(below[j]):
                merged |= below[i]
            if merged != below[j]:
                below[j] = merged
                changed = True
    for j in range(points):
        if below[j] & (1 << j):
            raise ValueError("relation is not a partial order (cycle)")
    members = []
    for m in range(1 << points):
        if all(below[j] & ~m == 0 for j in bit_indices(m)):
            members.append(m)
    return SubsetLattice(points, frozenset(members))
