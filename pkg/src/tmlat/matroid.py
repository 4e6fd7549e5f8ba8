"""Matroid queries over a rank oracle.

A matroid is backed either by a set-system presentation (rank through
maximum matchings) or by an explicit family of bases (rank through best
overlap with a basis).  Derived data (circuits, cocircuits, cyclic
flats) is computed lazily, cached, and capped at desk scale.
"""

from __future__ import annotations

import json

from . import matching
from .core import GroundSet, SetSystem, bit_indices, family_key

ENUM_LIMIT = 16  # subset scans are exponential; larger grounds refuse


class Matroid:
    """A queryable rank oracle with memoized derived structure."""

    def __init__(self, ground: GroundSet, *, system: SetSystem | None = None,
                 basis_masks=None):
        if (system is None) == (basis_masks is None):
            raise ValueError("exactly one of system/basis_masks required")
        self.ground = ground
        self.system = system
        self._rank_memo: dict[int, int] = {}
        self._circuits = None
        self._cocircuits = None
        self._cyclic_flats = None
        self._bases = None
        if basis_masks is not None:
            bases = frozenset(basis_masks)
            if not bases:
                raise ValueError("empty basis family")
            sizes = {b.bit_count() for b in bases}
            if len(sizes) != 1:
                raise ValueError("bases not equicardinal")
            if __debug__ and ground.n <= 10 and len(bases) <= 120:
                _check_basis_exchange(bases)
            self._bases = bases

    @classmethod
    def from_system(cls, system: SetSystem) -> "Matroid":
        return cls(system.ground, system=system)

    @classmethod
    def from_bases(cls, ground: GroundSet, basis_masks) -> "Matroid":
        return cls(ground, basis_masks=basis_masks)

    # -- rank oracle ----------------------------------------------------

    def rank(self, x_mask: int) -> int:
        got = self._rank_memo.get(x_mask)
        if got is not None:
            return got
        if self.system is not None:
            r = matching.rank(self.system, x_mask)
        else:
            r = max((b & x_mask).bit_count() for b in self._bases)
        self._rank_memo[x_mask] = r
        return r

    @property
    def full_rank(self) -> int:
        return self.rank(self.ground.full_mask)

    def is_independent(self, x_mask: int) -> bool:
        return self.rank(x_mask) == x_mask.bit_count()

    def closure(self, x_mask: int) -> int:
        r = self.rank(x_mask)
        out = x_mask
        for e in bit_indices(self.ground.full_mask & ~x_mask):
            if self.rank(x_mask | (1 << e)) == r:
                out |= 1 << e
        return out

    def loops(self) -> int:
        return self.closure(0)

    def is_coloop(self, e: int) -> bool:
        full = self.ground.full_mask
        return self.rank(full & ~(1 << e)) == self.full_rank - 1

    def coloops(self) -> int:
        m = 0
        for e in range(self.ground.n):
            if self.is_coloop(e):
                m |= 1 << e
        return m

    def is_cyclic(self, x_mask: int) -> bool:
        """True when the restriction to ``x_mask`` has no coloops."""
        r = self.rank(x_mask)
        return all(self.rank(x_mask & ~(1 << e)) == r for e in bit_indices(x_mask))

    # -- independent-set enumeration -------------------------------------

    def independent_sets(self, max_size: int | None = None):
        """Yield every independent subset mask once, smallest extensions first."""
        n = self.ground.n
        if self.system is not None:
            sup = matching.element_supports(self.system)

            def grow(mask, owner, start, size):
                yield mask
                if max_size is not None and size >= max_size:
                    return
                for e in range(start, n):
                    trial = dict(owner)
                    if matching._augment_rec(sup, trial, e, sup[e], [0]):
                        yield from grow(mask | (1 << e), trial, e + 1, size + 1)

            yield from grow(0, {}, 0, 0)
        else:
            def grow(mask, start, size):
                yield mask
                if max_size is not None and size >= max_size:
                    return
                for e in range(start, n):
                    m2 = mask | (1 << e)
                    if self.rank(m2) == size + 1:
                        yield from grow(m2, e + 1, size + 1)

            yield from grow(0, 0, 0)

    def bases(self) -> frozenset[int]:
        if self._bases is None:
            r = self.full_rank
            self._bases = frozenset(m for m in self.independent_sets(max_size=r)
                                    if m.bit_count() == r)
        return self._bases

    # -- derived families -------------------------------------------------

    def _guard(self, what: str):
        if self.ground.n > ENUM_LIMIT:
            raise ValueError(f"{what} enumeration capped at {ENUM_LIMIT} elements")

    def circuits(self) -> tuple[int, ...]:
        """All minimal dependent sets, canonically ordered."""
        if self._circuits is None:
            self._guard("circuit")
            n = self.ground.n
            found: list[int] = []
            by_size: list[list[int]] = [[] for _ in range(n + 1)]
            for m in range(1 << n):
                by_size[m.bit_count()].append(m)
            for size in range(1, n + 1):
                for m in by_size[size]:
                    if any(c & m == c for c in found):
                        continue
                    if self.rank(m) < size:
                        found.append(m)
            self._circuits = tuple(sorted(found, key=family_key))
        return self._circuits

    def flats_of_rank(self, k: int) -> list[int]:
        self._guard("flat")
        out = set()
        for m in self.independent_sets(max_size=k):
            if m.bit_count() == k:
                out.add(self.closure(m))
        return sorted(out, key=family_key)

    def hyperplanes(self) -> list[int]:
        return self.flats_of_rank(self.full_rank - 1)

    def cocircuits(self) -> tuple[int, ...]:
        """Complements of hyperplanes."""
        if self._cocircuits is None:
            full = self.ground.full_mask
            self._cocircuits = tuple(sorted((full & ~h for h in self.hyperplanes()),
                                            key=family_key))
        return self._cocircuits

    def cyclic_flats(self) -> tuple[int, ...]:
        if self._cyclic_flats is None:
            self._guard("flat")
            out = set()
            for k in range(self.full_rank + 1):
                for f in self.flats_of_rank(k):
                    if self.is_cyclic(f):
                        out.add(f)
            self._cyclic_flats = tuple(sorted(out, key=family_key))
        return self._cyclic_flats

    # -- minors ------------------------------------------------------------

    def restrict(self, x_mask: int) -> "Matroid":
        """The restriction to ``x_mask``, reindexed onto the surviving labels."""
        keep = bit_indices(x_mask)
        names = tuple(self.ground.names[i] for i in keep)
        sub = GroundSet(names)
        if self.system is not None:
            remap = {old: new for new, old in enumerate(keep)}
            sets = []
            for a in self.system.sets:
                m = 0
                for e in bit_indices(a & x_mask):
                    m |= 1 << remap[e]
                sets.append(m)
            return Matroid.from_system(SetSystem(sub, tuple(sets)))
        rk = self.rank(x_mask)
        bases = set()
        for m in self.independent_sets(max_size=rk):
            if m & ~x_mask == 0 and m.bit_count() == rk:
                out = 0
                for new, old in enumerate(keep):
                    if m & (1 << old):
                        out |= 1 << new
                bases.add(out)
        return Matroid.from_bases(sub, bases)

    def delete(self, d_mask: int) -> "Matroid":
        return self.restrict(self.ground.full_mask & ~d_mask)

    # -- comparisons --------------------------------------------------------

    def _require_same_ground(self, other: "Matroid"):
        if self.ground.names != other.ground.names:
            raise ValueError("matroids live on different ground sets")

    def weak_leq(self, other: "Matroid") -> bool:
        """True when every independent set here is independent in ``other``.

        Independence is hereditary, so checking the bases suffices.
        """
        self._require_same_ground(other)
        return all(other.is_independent(b) for b in self.bases())

    def equals(self, other: "Matroid") -> bool:
        self._require_same_ground(other)
        return self.bases() == other.bases()

    def __repr__(self):
        kind = "system" if self.system is not None else "bases"
        return f"Matroid(n={self.ground.n}, {kind})"


def _check_basis_exchange(bases):
    for a in bases:
        for b in bases:
            for e in bit_indices(a & ~b):
                if not any((a & ~(1 << e)) | (1 << f) in bases
                           for f in bit_indices(b & ~a)):
                    raise ValueError("basis family violates the exchange axiom")


def principal_extension(m: Matroid, y_mask: int, label: str = "x") -> Matroid:
    """Extend by one element placed freely on the closure of ``y_mask``."""
    if label in m.ground.names:
        raise ValueError(f"label {label!r} already present")
    ext = GroundSet(m.ground.names + (label,))
    xbit = 1 << m.ground.n
    r = m.full_rank
    # Rank rule: adding the new element to Z raises the rank exactly when
    # y_mask does not lie in cl(Z).  With y_mask == 0 the element is a loop.
    bases = set(m.bases())
    if y_mask:
        for ind in m.independent_sets(max_size=r - 1):
            if ind.bit_count() == r - 1 and y_mask & ~m.closure(ind):
                bases.add(ind | xbit)
    return Matroid.from_bases(ext, bases)


# -- transversality -----------------------------------------------------------


def _hall_sets_saturated(set_masks, avail_mask: int) -> bool:
    """Can each of ``set_masks`` pick a distinct representative in avail_mask?"""
    k = len(set_masks)
    union = [0] * (1 << k)
    for s in range(1, 1 << k):
        low = s & -s
        union[s] = union[s ^ low] | set_masks[low.bit_length() - 1]
    return all((union[s] & avail_mask).bit_count() >= s.bit_count()
               for s in range(1, 1 << k))


def _elements_matchable(set_masks, elem_mask: int) -> bool:
    """Can every element of ``elem_mask`` go to a distinct set?"""
    elems = bit_indices(elem_mask)
    if len(elems) > len(set_masks):
        return False
    sup = []
    for e in elems:
        s = 0
        for i, a in enumerate(set_masks):
            if a & (1 << e):
                s |= 1 << i
        sup.append(s)
    for t in range(1, 1 << len(elems)):
        need = t.bit_count()
        nbhd = 0
        for i in range(len(elems)):
            if t & (1 << i):
                nbhd |= sup[i]
        if nbhd.bit_count() < need:
            return False
    return True


def _cocircuit_search(m: Matroid, r: int) -> tuple[int, ...] | None:
    """Find r cocircuits of the coloop-free ``m`` presenting it, if any."""
    bases = sorted(m.bases(), key=family_key)
    small_circuits = [c for c in m.circuits() if c.bit_count() <= r]
    cands = sorted(m.cocircuits(), key=lambda c: (-c.bit_count(), c))
    nonloops = m.closure(0) ^ m.ground.full_mask
    # What the tail starting at index i can still cover.
    suffix_cover = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix_cover[i] = suffix_cover[i + 1] | cands[i]

    def ok_prefix(chosen):
        k = len(chosen)
        if not all(_hall_sets_saturated(chosen, b) for b in bases):
            return False
        for c in small_circuits:
            if c.bit_count() <= k and _elements_matchable(chosen, c):
                return False
        return True

    def search(chosen, covered, start):
        k = len(chosen)
        if k == r:
            return tuple(chosen)
        if nonloops & ~(covered | suffix_cover[start]):
            return None
        for i in range(start, len(cands)):
            chosen.append(cands[i])
            if ok_prefix(chosen):
                got = search(chosen, covered | cands[i], i)
                if got is not None:
                    return got
            chosen.pop()
        return None

    return search([], 0, 0)


def transversal_presentation(m: Matroid) -> SetSystem | None:
    """A presentation of ``m`` by cocircuit sets, or None if none exists.

    Minimal presentations consist of cocircuits, so searching multisets
    of cocircuits decides transversality.  Coloops split off first: each
    one forces its own singleton set, and removing them cannot create
    new coloops.
    """
    r = m.full_rank
    coloop_mask = m.coloops()
    core_mask = m.ground.full_mask & ~coloop_mask
    core = m.restrict(core_mask)
    r0 = r - coloop_mask.bit_count()

    if r0 == 0:
        core_sets: tuple[int, ...] | None = ()
    else:
        core_sets = _cocircuit_search(core, r0)
    if core_sets is None:
        return None

    # Translate core masks back to the full ground, then append singletons.
    keep = bit_indices(core_mask)
    sets = []
    for a in core_sets:
        full = 0
        for new, old in enumerate(keep):
            if a & (1 << new):
                full |= 1 << old
        sets.append(full)
    sets.extend(1 << e for e in bit_indices(coloop_mask))
    if not sets:
        sets = [0]  # rank-0 matroid: one empty set presents it
    witness = SetSystem(m.ground, tuple(sets))
    assert Matroid.from_system(witness).bases() == m.bases()
    return witness


def is_transversal(m: Matroid) -> bool:
    return transversal_presentation(m) is not None


# -- explicit-basis JSON form -------------------------------------------------


def parse_matroid(text) -> Matroid:
    """Read {"ground": [...], "bases": [[...], ...]}; extra keys are ignored."""
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    try:
        ground = GroundSet(tuple(str(s) for s in doc["ground"]))
        raw = list(doc["bases"])
    except (KeyError, TypeError):
        raise ValueError("matroid document needs 'ground' and 'bases'") from None
    return Matroid.from_bases(ground, (ground.mask(str(e) for e in b) for b in raw))


def matroid_doc(m: Matroid) -> dict:
    return {"ground": list(m.ground.names),
            "bases": [m.ground.labels(b)
                      for b in sorted(m.bases(), key=family_key)]}
