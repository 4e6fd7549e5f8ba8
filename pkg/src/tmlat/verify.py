"""Brute-force oracles and checkers for the size and intersection bounds.

The census enumerates every union/intersection-closed family over [r]
by closing all 2^(2^r) generator families (r <= 4), deduplicating up to
coordinate permutation.  It is the independent oracle for the catalog
of large sublattices; the sharpness builders realize presentations that
meet each bound with equality.  All randomized sweeps are seeded and
report their seeds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from . import extlattice, matching
from .core import GroundSet, SetSystem, SubsetLattice, bit_indices, mask_of
from .presentations import (cover_chain, is_minimal, maximalize,
                            presentation_rank, reindexing_equivalent,
                            removable_pairs, addable_pairs, _with_bit)
from .constructions import (build_maximal_presentation,
                            build_uniform_presentation, first_occurrence,
                            ideals_of_poset)

CENSUS_LIMIT = 4  # the census walks 2^(2^r) generator families


# ---------------------------------------------------------------------------
# The catalog of large proper sublattices of the powerset of [r].


@dataclass(frozen=True)
class CatalogLattice:
    """One named family from the large-sublattice catalog."""

    kind: str
    r: int
    i: int | None
    lattice: SubsetLattice


def _interval_hits(x: int, low: int, high_out: int) -> bool:
    """Is x in the interval [low, complement of high_out]?"""
    return x & low == low and x & high_out == 0


def catalog_lattice(kind: str, r: int, i: int | None = None) -> CatalogLattice:
    """Build a catalog family: the powerset minus a union of intervals.

    Kinds: "implication_chain" removes the intervals forcing index 1 to
    drag along 2, then {1,2} to drag 3, and so on up to i+1;
    "exclusion_chain" is its image under complementation; and
    "two_implications" removes two disjoint single implications (needs
    r >= 4).  Sizes follow the closed formulas and are asserted here.
    """
    full = (1 << r) - 1
    if kind in ("implication_chain", "exclusion_chain"):
        if i is None or not 1 <= i < r:
            raise ValueError("chain kinds need 1 <= i < r")
        members = []
        for x in range(1 << r):
            hit = False
            for j in range(1, i + 1):
                prefix = (1 << j) - 1
                nxt = 1 << j
                if kind == "implication_chain":
                    hit = _interval_hits(x, prefix, nxt)
                else:
                    hit = _interval_hits(x, nxt, prefix)
                if hit:
                    break
            if not hit:
                members.append(x)
        expect = (1 << (r - 1)) + (1 << (r - i - 1))
    elif kind == "two_implications":
        if r < 4:
            raise ValueError("two_implications needs r >= 4")
        members = [x for x in range(1 << r)
                   if not _interval_hits(x, 0b0001, 0b0010)
                   and not _interval_hits(x, 0b0100, 0b1000)]
        expect = 9 << (r - 4)
        i = None
    else:
        raise ValueError(f"unknown catalog kind {kind!r}")
    lat = SubsetLattice(r, frozenset(members))
    assert len(lat) == expect
    assert 0 in lat and full in lat
    return CatalogLattice(kind, r, i, lat)


def catalog_classes(r: int) -> set[int]:
    """Canonical family masks of every catalog lattice at this r."""
    out = set()
    for i in range(1, r):
        for kind in ("implication_chain", "exclusion_chain"):
            out.add(canonical_family(family_mask(catalog_lattice(kind, r, i).lattice.members), r))
    if r >= 4:
        out.add(canonical_family(family_mask(catalog_lattice("two_implications", r).lattice.members), r))
    return out


# ---------------------------------------------------------------------------
# Census of all union/intersection-closed families over [r].
#
# A family of subsets of [r] is encoded as one int with bit m set when
# the subset with mask m belongs to the family.


def family_mask(members) -> int:
    f = 0
    for m in members:
        f |= 1 << m
    return f


def family_members(fmask: int) -> frozenset[int]:
    return frozenset(bit_indices(fmask))


def _add_member(closed: int, x: int, full: int) -> int:
    """Closure of a closed family plus one subset ``x``.

    In a distributive ambient lattice every word in x and the old
    members reduces to (x & a) | b, so one pass over those pairs closes.
    """
    if closed & (1 << x):
        return closed
    out = closed | (1 << x)
    members = bit_indices(closed)
    for a in members + [full]:
        xa = x & a
        out |= 1 << xa
        for b in members:
            out |= 1 << (xa | b)
    return out


@lru_cache(maxsize=8)
def closed_family_table(r: int) -> tuple[int, ...]:
    """For every generator family over [r], its union/intersection closure."""
    if r > CENSUS_LIMIT:
        raise ValueError(f"census closure table capped at r = {CENSUS_LIMIT}")
    full = (1 << r) - 1
    size = 1 << r
    table = [0] * (1 << size)
    for fam in range(1, 1 << size):
        low = fam & -fam
        rest = fam ^ low
        table[fam] = _add_member(table[rest], low.bit_length() - 1, full)
    return tuple(table)


def union_intersection_closure(members, r: int) -> frozenset[int]:
    """Generic fixpoint closure; the oracle for the table above."""
    fam = set(members)
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
    return frozenset(fam)


@lru_cache(maxsize=8)
def _perm_tables(r: int) -> tuple[tuple[int, ...], ...]:
    tables = []
    for perm in permutations(range(r)):
        remap = []
        for m in range(1 << r):
            out = 0
            for i in bit_indices(m):
                out |= 1 << perm[i]
            remap.append(out)
        tables.append(tuple(remap))
    return tuple(tables)


def canonical_family(fmask: int, r: int) -> int:
    """Least relabeling of a family under coordinate permutations."""
    best = None
    for remap in _perm_tables(r):
        g = 0
        for m in bit_indices(fmask):
            g |= 1 << remap[m]
        if best is None or g < best:
            best = g
    return best


def distinct_closed_families(r: int) -> list[int]:
    return sorted(set(closed_family_table(r)) - {0})


def census_sublattices(r: int, min_size: int) -> list[SubsetLattice]:
    """All closed families with more than min_size members, up to permutation."""
    classes = {}
    for fmask in distinct_closed_families(r):
        if fmask.bit_count() > min_size:
            classes.setdefault(canonical_family(fmask, r), fmask)
    reps = sorted(classes.keys())
    return [SubsetLattice(r, family_members(k)) for k in reps]


# ---------------------------------------------------------------------------
# Maximal proper sublattices, directly and through the irreducible rule.


def maximal_proper_sublattices(lat: SubsetLattice) -> list[frozenset[int]]:
    """Every maximal proper nonempty sublattice, by exhaustive enumeration."""
    lmask = family_mask(lat.members)
    cands = [f for f in distinct_closed_families(lat.r)
             if f != lmask and f & ~lmask == 0]
    out = [f for f in cands
           if not any(g != f and f & ~g == 0 for g in cands)]
    return [family_members(f) for f in sorted(out)]


def interval_predicted_sublattices(lat: SubsetLattice) -> list[frozenset[int]]:
    """Maximal sublattices as differences by an irreducible-bounded interval.

    The removed interval [a, b] must contain no join-irreducible other
    than a and no meet-irreducible other than b.
    """
    join_irr, meet_irr, _ = extlattice.irreducibles(lat)
    jset, mset = set(join_irr), set(meet_irr)
    out = set()
    for a in join_irr:
        for b in meet_irr:
            if a & ~b:
                continue
            interval = {m for m in lat.members if m & a == a and m & b == m}
            if interval & jset == {a} and interval & mset == {b}:
                out.add(frozenset(lat.members - interval))
    return sorted(out, key=lambda f: family_mask(f))


# ---------------------------------------------------------------------------
# Sharpness families.


def near_uniform_minimal(rank: int) -> SetSystem:
    """A minimal presentation of the rank-``rank`` uniform matroid on rank+1
    elements: every set pairs the hub element with one other."""
    if rank < 1:
        raise ValueError("rank must be positive")
    names = tuple(f"u{i}" for i in range(rank + 1))
    ground = GroundSet(names)
    hub = 1
    sets = tuple(hub | (1 << i) for i in range(1, rank + 1))
    return SetSystem(ground, sets)


def sharp_chain_presentation(minimal_system: SetSystem, k: int) -> SetSystem:
    """Adjoin a coloop to a minimal presentation and smear it over k sets.

    The result has height k in the order on presentations and its
    closed-set lattice meets the size bound for that height exactly.
    """
    if not is_minimal(minimal_system):
        raise ValueError("base presentation must be minimal")
    r = minimal_system.r + 1
    if not 0 <= k < r:
        raise ValueError("k must lie in 0..r-1")
    label = extlattice.fresh_label(minimal_system.ground, "c")
    ground = GroundSet(minimal_system.ground.names + (label,))
    ebit = 1 << minimal_system.ground.n
    sets = [ebit]
    for idx in range(1, r):
        a = minimal_system.sets[idx - 1]
        sets.append(a | ebit if idx <= k else a)
    return SetSystem(ground, tuple(sets))


def sharp_common_pair(r: int) -> tuple[SetSystem, SetSystem]:
    """Two minimal presentations meeting the common-extension bound.

    The matroid is a free part plus a three-point rank-two part; the two
    presentations disagree only on which extra point accompanies the
    last free element.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    names = tuple(f"e{i}" for i in range(1, r)) + ("a", "b")
    ground = GroundSet(names)
    abit, bbit = 1 << (r - 1), 1 << r
    singles = [1 << (i - 1) for i in range(1, r - 1)]
    last = 1 << (r - 2)
    a_sets = tuple(singles + [last | abit, abit | bbit])
    b_sets = tuple(singles + [last | bbit, abit | bbit])
    return SetSystem(ground, a_sets), SetSystem(ground, b_sets)


def disjoint_support_pair(r: int) -> tuple[SetSystem, SetSystem]:
    """Two minimal presentations of U_{r,2r} sharing only the trivial
    extensions: singletons plus the far half, and the near half plus
    singletons."""
    names = tuple(f"g{i}" for i in range(1, 2 * r + 1))
    ground = GroundSet(names)
    near = (1 << r) - 1
    far = ((1 << (2 * r)) - 1) & ~near
    a_sets = tuple((1 << (i - 1)) | far for i in range(1, r + 1))
    b_sets = tuple(near | (1 << (r + i - 1)) for i in range(1, r + 1))
    return SetSystem(ground, a_sets), SetSystem(ground, b_sets)


# ---------------------------------------------------------------------------
# The circuit-support identity for closed index sets.


def _circuit_through(ext: SetSystem, mask: int, xbit: int) -> int:
    """Shrink a dependent set with independent core to a circuit through x."""
    for e in bit_indices(mask & ~xbit):
        smaller = mask & ~(1 << e)
        if matching.rank(ext, smaller) < smaller.bit_count():
            mask = smaller
    return mask


def circuit_support_identity(system: SetSystem, iset: int) -> bool:
    """Certify that a closed set is the meet of circuit supports.

    Every circuit through the new element has support containing the
    closed set, and for each outside index some circuit avoids it; a
    witness circuit per index is built from a basis of the matching
    deletion, so no circuit enumeration is needed.
    """
    if not extlattice.is_index_closed(system, iset):
        return False
    label = extlattice.fresh_label(system.ground)
    ext = extlattice.extend(system, iset, label)
    xbit = 1 << system.ground.n
    if iset == 0:
        return matching.rank(ext, xbit) == 0
    full = system.ground.full_mask

    def witness(start_mask: int) -> int | None:
        c = _circuit_through(ext, start_mask | xbit, xbit)
        s = system.support(c & ~xbit)
        if iset & ~s:
            return None  # containment fails: not a closed set after all
        return s

    acc = system.full_index_mask
    basis = mask_of(e for e, _ in matching.max_matching(system, full).assignment)
    s = witness(basis)
    if s is None:
        return False
    acc &= s
    for h in bit_indices(system.full_index_mask & ~iset):
        rest = full & ~system.sets[h]
        zh = mask_of(e for e, _ in matching.max_matching(system, rest).assignment)
        s = witness(zh)
        if s is None or s & (1 << h):
            return False
        acc &= s
    return acc == iset


# ---------------------------------------------------------------------------
# Randomized instance sources.


def random_presentation(r: int, n: int, density: float = 0.5,
                        seed: int | None = None,
                        rng: random.Random | None = None) -> SetSystem:
    """A seeded random full-rank presentation; resamples until full rank."""
    if rng is None:
        rng = random.Random(seed)
    if not 1 <= r <= n <= 16:
        raise ValueError("need 1 <= r <= n <= 16")
    ground = GroundSet(tuple(f"e{i}" for i in range(1, n + 1)))
    for _ in range(2000):
        sets = tuple(mask_of(e for e in range(n) if rng.random() < density)
                     for _ in range(r))
        system = SetSystem(ground, sets)
        if matching.rank(system, ground.full_mask) == r:
            return system
    raise ValueError("failed to sample a full-rank system; raise the density")


def presentation_walk(system: SetSystem, steps: int,
                      rng: random.Random) -> SetSystem:
    """A random walk over presentations of the same matroid."""
    current = system
    for _ in range(steps):
        moves = [(True, p) for p in addable_pairs(current)]
        moves += [(False, p) for p in removable_pairs(current)]
        if not moves:
            break
        on, (i, e) = rng.choice(moves)
        current = _with_bit(current, i, e, on)
    return current


# ---------------------------------------------------------------------------
# Verdicts.


@dataclass
class VerdictReport:
    """Outcome of one verification suite; failures carry witnesses."""

    suite: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def lines(self) -> list[str]:
        head = f"[{self.suite}] instances={self.instances} failures={len(self.failures)}"
        if self.seed is not None:
            head += f" seed={self.seed}"
        out = [head]
        out.extend(f"  FAIL {f}" for f in self.failures)
        return out

    def to_doc(self) -> dict:
        return {"suite": self.suite, "instances": self.instances,
                "seed": self.seed, "failures": list(self.failures)}


def _indices(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in bit_indices(mask)) + "}"


def check_charmin(r: int = 4, n: int = 8, trials: int = 200,
                  seed: int = 20240406) -> VerdictReport:
    """Minimality of a presentation is equivalent to a full powerset lattice.

    Also cross-checks the two lattice constructions and the circuit
    support identity on every sampled instance.
    """
    t0 = time.perf_counter()
    rep = VerdictReport("charmin", seed=seed)
    rng = random.Random(seed)
    for t in range(trials):
        rr = rng.randint(2, r)
        nn = rng.randint(rr, n)
        system = random_presentation(rr, nn, density=rng.uniform(0.3, 0.9), rng=rng)
        rep.instances += 1
        lat = extlattice.extension_lattice(system)
        if is_minimal(system) != (len(lat) == 1 << rr):
            rep.fail(f"trial {t}: minimality vs lattice size on {system.set_labels()}")
        gen = extlattice.extension_lattice_from_supports(system)
        if gen.members != lat.members:
            rep.fail(f"trial {t}: strategies disagree on {system.set_labels()}")
        for m in lat.members:
            if not circuit_support_identity(system, m):
                rep.fail(f"trial {t}: circuit support identity at {_indices(m)}")
    rep.elapsed = time.perf_counter() - t0
    return rep


def _height_bound(r: int, j: int) -> int:
    if j == 0:
        return 1 << r
    if j < r:
        return (1 << (r - 1)) + (1 << (r - j - 1))
    return 1 << (r - 1)


def check_threequarters(r: int = 4, trials: int = 30,
                        seed: int = 20240406) -> VerdictReport:
    """Lattice size against presentation height, with the sharp family."""
    t0 = time.perf_counter()
    rep = VerdictReport("threequarters", seed=seed)
    if not 2 <= r <= 5:
        raise ValueError("height-bound checks run for 2 <= r <= 5")

    base = near_uniform_minimal(r - 1)
    for k in range(r):
        system = sharp_chain_presentation(base, k)
        rep.instances += 1
        if presentation_rank(system) != k:
            rep.fail(f"sharp family k={k}: height is not k")
        size = len(extlattice.extension_lattice(system))
        if size != _height_bound(r, k):
            rep.fail(f"sharp family k={k}: size {size} != {_height_bound(r, k)}")

    # A maximal presentation of the near-uniform matroid sits at height
    # r(r-1) >= r, exercising the deep-chain clause deterministically.
    deep = maximalize(near_uniform_minimal(r))
    rep.instances += 1
    if presentation_rank(deep) < r:
        rep.fail("deep witness is not deep")
    if len(extlattice.extension_lattice(deep)) > 1 << (r - 1):
        rep.fail("deep witness exceeds the half bound")

    rng = random.Random(seed)
    deep_seen = 0
    for t in range(trials):
        system = random_presentation(r, rng.randint(r, min(2 * r, 8)),
                                     density=rng.uniform(0.3, 0.9), rng=rng)
        chain = cover_chain(maximalize(system))
        rep.instances += 1
        previous = None
        for j, step in enumerate(chain.steps):
            if presentation_rank(step) != j:
                rep.fail(f"trial {t}: chain step {j} has wrong height")
            members = extlattice.extension_lattice(step).members
            if previous is not None and not members <= previous:
                rep.fail(f"trial {t}: lattice grew along the chain at {j}")
            previous = members
            size = len(members)
            if size > _height_bound(r, j):
                rep.fail(f"trial {t}: height {j} size {size} breaks the bound")
            if j >= r:
                deep_seen += 1
    if trials and deep_seen == 0:
        rep.fail("no deep chain positions sampled")
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_intersection(r: int = 4, trials: int = 50,
                       seed: int = 20240406) -> VerdictReport:
    """Common extensions of two genuinely different presentations."""
    t0 = time.perf_counter()
    rep = VerdictReport("intersection", seed=seed)
    if not 2 <= r <= 5:
        raise ValueError("intersection checks run for 2 <= r <= 5")
    bound = 3 << (r - 2)

    a, b = sharp_common_pair(r)
    rep.instances += 1
    if reindexing_equivalent(a, b):
        rep.fail("sharp pair is a reindexing")
    common = extlattice.common_extension_lattice(a, b)
    if len(common.lattice_ab) != bound:
        rep.fail(f"sharp pair: {len(common.lattice_ab)} common extensions, "
                 f"expected {bound}")

    a2, b2 = disjoint_support_pair(min(r, 4))
    rep.instances += 1
    if len(extlattice.common_extension_lattice(a2, b2).lattice_ab) != 2:
        rep.fail("disjoint-support pair shares more than the trivial extensions")

    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < trials and attempts < 20 * trials:
        attempts += 1
        system = random_presentation(r, rng.randint(r, min(2 * r, 8)),
                                     density=rng.uniform(0.4, 0.9), rng=rng)
        other = presentation_walk(system, rng.randint(1, 4), rng)
        if reindexing_equivalent(system, other):
            continue
        done += 1
        rep.instances += 1
        common = extlattice.common_extension_lattice(system, other)
        if len(common.lattice_ab) > bound:
            rep.fail(f"pair #{done}: {len(common.lattice_ab)} > {bound}")
        order = dict(common.pairs)
        for i1 in common.lattice_ab.members:
            for i2 in common.lattice_ab.members:
                if (i1 & i2 == i1) != (order[i1] & order[i2] == order[i1]):
                    rep.fail(f"pair #{done}: matching is not an order isomorphism")
    if done < trials:
        rep.fail(f"only {done} qualifying pairs found in {attempts} attempts")
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_classification(r: int = 4) -> VerdictReport:
    """Census equals catalog, and the maximal-sublattice rule holds."""
    if not 2 <= r <= CENSUS_LIMIT:
        raise ValueError(f"classification runs for 2 <= r <= {CENSUS_LIMIT}")
    t0 = time.perf_counter()
    rep = VerdictReport("classification")
    half = 1 << (r - 1)
    census = census_sublattices(r, half)
    rep.instances += 1
    got = {canonical_family(family_mask(lat.members), r) for lat in census}
    full_family = canonical_family(family_mask(range(1 << r)), r)
    want = catalog_classes(r) | {full_family}
    if got != want:
        rep.fail(f"census classes differ from the catalog at r={r}: "
                 f"{len(got)} vs {len(want)}")

    powerset = SubsetLattice(r, frozenset(range(1 << r)))
    chain1 = catalog_lattice("implication_chain", r, 1).lattice
    for lat, name in ((powerset, "powerset"), (chain1, "first chain lattice")):
        rep.instances += 1
        direct = set(maximal_proper_sublattices(lat))
        predicted = set(interval_predicted_sublattices(lat))
        if direct != predicted:
            rep.fail(f"{name}: interval rule misses maximal sublattices")
    direct = maximal_proper_sublattices(powerset)
    rep.instances += 1
    if len(direct) != r * (r - 1):
        rep.fail(f"powerset has {len(direct)} maximal sublattices, "
                 f"expected {r * (r - 1)}")
    chain_class = canonical_family(family_mask(chain1.members), r)
    if any(canonical_family(family_mask(f), r) != chain_class for f in direct):
        rep.fail("a maximal sublattice of the powerset is not a relabeled "
                 "first chain lattice")

    if r >= 4:
        rep.instances += 1
        vee = family_mask(catalog_lattice("two_implications", r).lattice.members)
        five_eighths = 5 << (r - 3)
        for f in distinct_closed_families(r):
            if f.bit_count() == five_eighths and vee & ~f == 0:
                rep.fail("the two-implication lattice fits inside a "
                         "five-eighths sublattice")
    rep.elapsed = time.perf_counter() - t0
    return rep


def _all_poset_lattices(max_points: int):
    """Distinct order-ideal lattices of all labeled posets on <= max_points."""
    seen = set()
    for k in range(max_points + 1):
        pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1)
                 if i != j]
        for choice in range(1 << len(pairs)):
            chosen = [pairs[t] for t in bit_indices(choice)]
            try:
                lat = ideals_of_poset(k, chosen)
            except ValueError:
                continue
            if lat.members not in seen:
                seen.add(lat.members)
                yield lat


def check_roundtrip(max_points: int = 4) -> VerdictReport:
    """Both constructions realize every small distributive lattice."""
    t0 = time.perf_counter()
    rep = VerdictReport("roundtrip")
    for lat in _all_poset_lattices(max_points):
        rep.instances += 1
        r = lat.r
        if r == 0:
            continue
        built = build_maximal_presentation(lat)
        if extlattice.extension_lattice(built).members != lat.members:
            rep.fail(f"maximal build misses the lattice at r={r}: "
                     f"{sorted(map(_indices, lat.members))}")
        if addable_pairs(built):
            rep.fail(f"maximal build is not maximal at r={r}")
        occ = first_occurrence(lat)
        for n in (r, r + 1, r + 2):
            system = build_uniform_presentation(lat, n)
            if extlattice.extension_lattice(system).members != lat.members:
                rep.fail(f"uniform build misses the lattice at r={r}, n={n}")
            for m, part in occ.items():
                for i in bit_indices(part):
                    if system.support(1 << i) != m:
                        rep.fail(f"uniform build support law fails at i={i + 1}")
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_all(seed: int = 20240406) -> list[VerdictReport]:
    return [
        check_charmin(seed=seed),
        check_threequarters(r=4, seed=seed),
        check_intersection(r=4, seed=seed),
        check_classification(),
        check_roundtrip(),
    ]
