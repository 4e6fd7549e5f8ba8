"""The index-wise order on presentations of a transversal matroid.

A presentation here is a SetSystem whose matroid has rank equal to the
number of sets.  One presentation precedes another when each of its sets
is contained in the corresponding set of the other; reindexing is a
separate, coarser comparison used only where explicitly needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matching
from .core import SetSystem, bit_indices
from .matroid import Matroid


def require_full_rank(system: SetSystem) -> int:
    r = matching.rank(system, system.ground.full_mask)
    if r != system.r:
        raise ValueError(
            f"system of {system.r} sets presents a matroid of rank {r}")
    return r


def preceq(a: SetSystem, b: SetSystem) -> bool:
    """Index-wise containment of the sets of ``a`` in those of ``b``."""
    if a.ground.names != b.ground.names or a.r != b.r:
        raise ValueError("presentations have different shape")
    return all(x & ~y == 0 for x, y in zip(a.sets, b.sets))


def prec(a: SetSystem, b: SetSystem) -> bool:
    return preceq(a, b) and a.sets != b.sets


def reindexing_equivalent(a: SetSystem, b: SetSystem) -> bool:
    """Equality of the two systems as multisets of sets."""
    if a.ground.names != b.ground.names or a.r != b.r:
        return False
    return sorted(a.sets) == sorted(b.sets)


def deletion_ranks(system: SetSystem) -> list[int]:
    """Rank of the matroid after deleting each set's elements."""
    full = system.ground.full_mask
    return [matching.rank(system, full & ~a) for a in system.sets]


def presentation_rank(system: SetSystem) -> int:
    """Height of the presentation in the graded order on presentations."""
    r = require_full_rank(system)
    return r * (r - 1) - sum(deletion_ranks(system))


def is_minimal(system: SetSystem) -> bool:
    """Minimal presentations delete down to rank r-1 at every set."""
    r = require_full_rank(system)
    return all(d == r - 1 for d in deletion_ranks(system))


def addable_pairs(system: SetSystem) -> list[tuple[int, int]]:
    """(set index, element) pairs whose addition preserves the matroid.

    Adding e to the i-th set is sound exactly when e is a coloop of the
    deletion of that set.
    """
    require_full_rank(system)
    full = system.ground.full_mask
    out = []
    for i, a in enumerate(system.sets):
        rest = full & ~a
        base = matching.rank(system, rest)
        for e in bit_indices(rest):
            if matching.rank(system, rest & ~(1 << e)) == base - 1:
                out.append((i, e))
    return out


def _with_bit(system: SetSystem, i: int, e: int, on: bool) -> SetSystem:
    sets = list(system.sets)
    if on:
        sets[i] |= 1 << e
    else:
        sets[i] &= ~(1 << e)
    return SetSystem(system.ground, tuple(sets))


def maximalize(system: SetSystem) -> SetSystem:
    """The greatest presentation of the same matroid above this one.

    Fixpoint of single-element additions; the result is independent of
    the order in which additions are applied.
    """
    current = system
    while True:
        pairs = addable_pairs(current)
        if not pairs:
            return current
        i, e = pairs[0]
        current = _with_bit(current, i, e, True)


def is_maximal(system: SetSystem) -> bool:
    return not addable_pairs(system)


def removable_pairs(system: SetSystem, bases=None) -> list[tuple[int, int]]:
    """(set index, element) pairs whose removal still presents the matroid."""
    require_full_rank(system)
    if bases is None:
        bases = Matroid.from_system(system).bases()
    bases = sorted(bases)
    out = []
    for i, a in enumerate(system.sets):
        for e in bit_indices(a):
            ebit = 1 << e
            smaller = _with_bit(system, i, e, False)
            # Shrinking sets can only lose independent sets, so equality
            # holds as soon as every basis is still matchable; bases that
            # avoid the removed element cannot be affected.
            if all(matching.is_independent(smaller, b)
                   for b in bases if b & ebit):
                out.append((i, e))
    return out


@dataclass(frozen=True)
class PresentationChain:
    """Single-element steps from a minimal presentation up to some target."""

    steps: tuple[SetSystem, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1


def cover_chain(system: SetSystem) -> PresentationChain:
    """A chain of covers from some minimal presentation up to ``system``."""
    height = presentation_rank(system)
    bases = Matroid.from_system(system).bases()
    steps = [system]
    current = system
    while True:
        pairs = removable_pairs(current, bases)
        if not pairs:
            break
        i, e = pairs[0]
        current = _with_bit(current, i, e, False)
        steps.append(current)
    assert is_minimal(current)
    assert len(steps) - 1 == height
    return PresentationChain(tuple(reversed(steps)))


def minimal_presentations_below(system: SetSystem, keep: int = 0) -> list[SetSystem]:
    """All minimal presentations of the same matroid index-wise below this one.

    With a nonempty ``keep`` mask the result is filtered to presentations
    preserving the supports of every kept element; deleting the kept
    elements must not drop the rank.
    """
    r = require_full_rank(system)
    if keep:
        if matching.rank(system, system.ground.full_mask & ~keep) != r:
            raise ValueError("kept elements must leave the rank intact")
    bases = Matroid.from_system(system).bases()
    seen: set[tuple[int, ...]] = set()
    found: dict[tuple[int, ...], SetSystem] = {}

    def walk(current: SetSystem):
        key = current.sets
        if key in seen:
            return
        seen.add(key)
        pairs = removable_pairs(current, bases)
        if not pairs:
            found[key] = current
            return
        for i, e in pairs:
            walk(_with_bit(current, i, e, False))

    walk(system)
    out = [c for c in found.values()
           if all(c.support(1 << e) == system.support(1 << e)
                  for e in bit_indices(keep))]
    return sorted(out, key=lambda c: c.sets)
