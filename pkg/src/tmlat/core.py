"""Ground sets, bitmask subsets, set systems, and subset-family lattices.

Subsets are plain ints used as bitmasks.  Bit ``i`` of an element subset
refers to ``ground.names[i]``; bit ``i`` of an index subset refers to the
``(i + 1)``-th set of a set system.  Serialized index sets are 1-based.
All values here are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

# Exhaustive 2^n sweeps appear in the oracles, so instances stay desk-sized.
MAX_ELEMENTS = 64
MAX_SETS = 32


def bit_indices(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask: int):
    """All submasks of ``mask``, descending, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def family_key(mask: int) -> tuple[int, int]:
    """Canonical sort key for subsets: cardinality, then bitmask value."""
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class GroundSet:
    """Interned element labels with a fixed index order."""

    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate ground labels")
        if len(self.names) > MAX_ELEMENTS:
            raise ValueError(f"ground set larger than {MAX_ELEMENTS} elements")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown label {name!r}") from None

    def mask(self, labels) -> int:
        return mask_of(self.index(s) for s in labels)

    def labels(self, mask: int) -> list[str]:
        return [self.names[i] for i in bit_indices(mask)]


@dataclass(frozen=True)
class SetSystem:
    """An ordered sequence of ground subsets; the order of sets is significant."""

    ground: GroundSet
    sets: tuple[int, ...]

    def __post_init__(self):
        if len(self.sets) < 1:
            raise ValueError("a set system needs at least one set")
        if len(self.sets) > MAX_SETS:
            raise ValueError(f"more than {MAX_SETS} sets")
        full = self.ground.full_mask
        for a in self.sets:
            if a & ~full:
                raise ValueError("set contains bits outside the ground set")

    @property
    def r(self) -> int:
        return len(self.sets)

    @property
    def full_index_mask(self) -> int:
        return (1 << self.r) - 1

    def support(self, x_mask: int) -> int:
        """Indices of the sets that meet ``x_mask``."""
        s = 0
        for i, a in enumerate(self.sets):
            if a & x_mask:
                s |= 1 << i
        return s

    def set_labels(self) -> list[list[str]]:
        return [self.ground.labels(a) for a in self.sets]


def make_system(names, sets_of_labels) -> SetSystem:
    """Build a SetSystem from label lists; convenience for tests and callers."""
    ground = GroundSet(tuple(names))
    return SetSystem(ground, tuple(ground.mask(s) for s in sets_of_labels))


def support(system: SetSystem, x_mask: int) -> int:
    return system.support(x_mask)


@dataclass(frozen=True)
class SubsetLattice:
    """A family of subsets of ``[r]`` with declared closure promises.

    ``closed_under`` names the operations the family is promised to be
    closed under; construction verifies the promises (skipped for very
    large families, which only arise from proven-closed scans).
    """

    r: int
    members: frozenset[int]
    closed_under: tuple[str, ...] = ("union", "intersection")

    def __post_init__(self):
        if self.r < 0 or self.r > MAX_SETS:
            raise ValueError("bad index range")
        full = (1 << self.r) - 1
        for m in self.members:
            if m & ~full:
                raise ValueError("member outside the index range")
        if len(self.members) <= 4096:
            mem = self.members
            for a in mem:
                for b in mem:
                    if "union" in self.closed_under and (a | b) not in mem:
                        raise ValueError(
                            f"family not closed under union: {a:#x} | {b:#x}")
                    if "intersection" in self.closed_under and (a & b) not in mem:
                        raise ValueError(
                            f"family not closed under intersection: {a:#x} & {b:#x}")

    def __len__(self):
        return len(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __iter__(self):
        return iter(self.sorted_members())

    def sorted_members(self) -> list[int]:
        return sorted(self.members, key=family_key)

    @property
    def full_mask(self) -> int:
        return (1 << self.r) - 1

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (lower, upper) of the containment order on members."""
        mem = self.sorted_members()
        if len(mem) > 4096:
            raise ValueError("family too large for cover enumeration")
        out = []
        for a in mem:
            for b in mem:
                if a != b and a & b == a:
                    if not any(c != a and c != b and a & c == a and c & b == c
                               for c in mem):
                        out.append((a, b))
        return sorted(out, key=lambda p: (family_key(p[0]), family_key(p[1])))

    def heights(self) -> dict[int, int]:
        """Longest-chain height of each member, bottom elements at 0."""
        up: dict[int, int] = {}
        for m in self.sorted_members():
            below = [up[c] for c in self.members if c != m and c & m == c]
            up[m] = 1 + max(below) if below else 0
        return up


def intersection_closure(masks, r: int) -> frozenset[int]:
    """Close a family of index sets under pairwise intersection."""
    fam = set(masks)
    frontier = list(fam)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(fam):
                c = a & b
                if c not in fam:
                    fam.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(fam)


# ---------------------------------------------------------------------------
# JSON interchange.
#
# Presentation file: {"ground": [labels...], "sets": [[labels...], ...]}
# Lattice file:      {"r": int, "sets": [[1-based indices...], ...]}


def _as_document(text):
    if isinstance(text, (str, bytes)):
        return json.loads(text)
    return text


def parse_presentation(text) -> SetSystem:
    """Read a presentation document (JSON text or an already-parsed dict)."""
    doc = _as_document(text)
    try:
        names = list(doc["ground"])
        raw_sets = list(doc["sets"])
    except (KeyError, TypeError):
        raise ValueError("presentation document needs 'ground' and 'sets'") from None
    if not raw_sets:
        raise ValueError("empty 'sets' list")
    ground = GroundSet(tuple(str(s) for s in names))
    return SetSystem(ground, tuple(ground.mask(str(e) for e in labels)
                                   for labels in raw_sets))


def parse_lattice(text) -> SubsetLattice:
    """Read a lattice document; members are lists of 1-based indices."""
    doc = _as_document(text)
    try:
        r = int(doc["r"])
        raw = list(doc["sets"])
    except (KeyError, TypeError):
        raise ValueError("lattice document needs 'r' and 'sets'") from None
    members = set()
    for entry in raw:
        m = 0
        for i in entry:
            i = int(i)
            if not 1 <= i <= r:
                raise ValueError(f"index {i} outside 1..{r}")
            m |= 1 << (i - 1)
        members.add(m)
    return SubsetLattice(r, frozenset(members), closed_under=())


def presentation_doc(system: SetSystem) -> dict:
    return {"ground": list(system.ground.names), "sets": system.set_labels()}


def lattice_doc(lat: SubsetLattice) -> dict:
    return {"r": lat.r,
            "sets": [[i + 1 for i in bit_indices(m)] for m in lat.sorted_members()]}


def serialize(value) -> str:
    """Canonical JSON for a SetSystem or SubsetLattice; round-trips exactly."""
    if isinstance(value, SetSystem):
        doc = presentation_doc(value)
    elif isinstance(value, SubsetLattice):
        doc = lattice_doc(value)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return json.dumps(doc, indent=2)
