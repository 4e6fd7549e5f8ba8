import json

import pytest

from tmlat.core import (GroundSet, SetSystem, SubsetLattice, bit_indices,
                        family_key, intersection_closure, lattice_doc,
                        make_system, mask_of, parse_lattice,
                        parse_presentation, serialize, submasks)


def test_bit_helpers():
    assert bit_indices(0b10110) == [1, 2, 4]
    assert mask_of([0, 3]) == 0b1001
    assert sorted(submasks(0b101)) == [0b000, 0b001, 0b100, 0b101]
    assert family_key(0b011) < family_key(0b101) < family_key(0b111)


def test_ground_set_basics():
    g = GroundSet(("a", "b", "c"))
    assert g.n == 3 and g.full_mask == 0b111
    assert g.mask("ac") == 0b101
    assert g.labels(0b110) == ["b", "c"]
    with pytest.raises(ValueError):
        g.index("z")
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))


def test_parse_presentation_examples():
    doc = {"ground": ["a", "b", "c", "d"],
           "sets": [["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]}
    system = parse_presentation(json.dumps(doc))
    assert system.r == 3
    assert system.ground.labels(system.sets[0]) == ["a", "b", "d"]

    single = parse_presentation({"ground": ["e"], "sets": [["e"]]})
    assert single.sets == (1,)

    with pytest.raises(ValueError):
        parse_presentation({"ground": ["a"], "sets": [["b"]]})
    with pytest.raises(ValueError):
        parse_presentation({"ground": ["a", "a"], "sets": [["a"]]})
    with pytest.raises(ValueError):
        parse_presentation({"ground": ["a"], "sets": []})


def test_support_values():
    system = make_system("abcdefghi", ["abc", "abcdef", "defghi", "ghi"])
    assert system.support(system.ground.mask("g")) == 0b1100
    assert system.support(0) == 0
    assert system.support(system.ground.mask("ad")) == 0b0111


def test_support_distributes_over_union():
    system = make_system("abcde", ["abc", "cde", "be"])
    for x in range(1 << 5):
        for y in range(1 << 5):
            assert system.support(x | y) == system.support(x) | system.support(y)


def test_loops_have_empty_support():
    system = make_system("abc", ["ab", "b"])
    assert system.support(system.ground.mask("c")) == 0


def test_serialize_round_trip(threelines_maximal, u34_first):
    for system in (threelines_maximal, u34_first):
        again = parse_presentation(serialize(system))
        assert again == system


def test_round_trip_on_all_golden_files():
    from pathlib import Path
    data = Path(__file__).parent / "data"
    for path in sorted(data.glob("*.json")):
        text = path.read_text()
        if '"sets"' in text and '"ground"' in text:
            system = parse_presentation(text)
            assert parse_presentation(serialize(system)) == system
        elif '"r"' in text:
            lat = parse_lattice(text)
            again = parse_lattice(serialize(lat))
            assert (again.r, again.members) == (lat.r, lat.members)


def test_empty_support_exactly_for_loop_sets():
    system = make_system("abcd", ["ab", "b"])
    loopless = system.ground.mask("ab")
    for x in range(1 << 4):
        assert (system.support(x) == 0) == (x & loopless == 0)


def test_serialize_lattice_canonical_order():
    lat = SubsetLattice(4, frozenset([0b0000, 0b0010, 0b0100, 0b0011, 0b0110,
                                      0b1100, 0b0111, 0b1110, 0b1111]))
    doc = lattice_doc(lat)
    assert doc["sets"] == [[], [2], [3], [1, 2], [2, 3], [3, 4],
                           [1, 2, 3], [2, 3, 4], [1, 2, 3, 4]]
    again = parse_lattice(serialize(lat))
    assert again.members == lat.members and again.r == lat.r


def test_serialize_single_empty_member():
    lat = SubsetLattice(3, frozenset([0]), closed_under=())
    assert json.loads(serialize(lat)) == {"r": 3, "sets": [[]]}


def test_lattice_closure_validation():
    SubsetLattice(2, frozenset([0b00, 0b01, 0b11]))
    with pytest.raises(ValueError):
        SubsetLattice(2, frozenset([0b01, 0b10]))  # union missing
    # declared union-only: the missing intersection is fine
    SubsetLattice(2, frozenset([0b01, 0b10, 0b11]), closed_under=("union",))
    with pytest.raises(ValueError):
        SubsetLattice(2, frozenset([0b01, 0b10, 0b11]))


def test_intersection_closure():
    got = intersection_closure([0b011, 0b110], 3)
    assert got == frozenset([0b011, 0b110, 0b010])


def test_covers_and_heights():
    lat = SubsetLattice(2, frozenset([0b00, 0b01, 0b11]))
    assert lat.covers() == [(0b00, 0b01), (0b01, 0b11)]
    assert lat.heights() == {0b00: 0, 0b01: 1, 0b11: 2}


def test_size_caps():
    with pytest.raises(ValueError):
        GroundSet(tuple(f"e{i}" for i in range(65)))
    g = GroundSet(("a",))
    with pytest.raises(ValueError):
        SetSystem(g, tuple([1] * 33))
