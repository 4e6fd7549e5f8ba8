"""Command-line interface: presentations in, lattices and reports out.

Exit status: 0 on success, 1 when a verification suite reports
failures, 2 on usage errors, 3 on invalid input.  Output on standard
output is byte-identical across identical invocations; timing goes to
standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import extlattice, matching, verify
from .core import (SetSystem, bit_indices, lattice_doc, parse_lattice,
                   parse_presentation, presentation_doc)
from .constructions import (build_maximal_presentation,
                            build_uniform_presentation, ideals_of_poset,
                            validate_lattice)
from .matroid import matroid_doc
from .presentations import (is_minimal, maximalize, minimal_presentations_below,
                            presentation_rank)

SUITES = ("charmin", "threequarters", "intersection", "classification",
          "roundtrip", "all")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_presentation(path: str) -> SetSystem:
    return parse_presentation(_read(path))


def _index_mask(arg: str, r: int) -> int:
    mask = 0
    if arg:
        for part in arg.split(","):
            i = int(part)
            if not 1 <= i <= r:
                raise ValueError(f"index {i} outside 1..{r}")
            mask |= 1 << (i - 1)
    return mask


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _index_list(mask: int) -> list[int]:
    return [i + 1 for i in bit_indices(mask)]


def cmd_lattice(args) -> int:
    system = _load_presentation(args.file)
    lat = extlattice.extension_lattice(system)
    if args.dot:
        sys.stdout.write(extlattice.hasse_dot(lat))
    else:
        _emit(lattice_doc(lat))
    return 0


def cmd_sigma(args) -> int:
    system = _load_presentation(args.file)
    closed = extlattice.index_closure(system, _index_mask(args.set, system.r))
    _emit({"r": system.r, "sets": [_index_list(closed)]})
    return 0


def cmd_extend(args) -> int:
    system = _load_presentation(args.file)
    iset = _index_mask(args.set, system.r)
    label = extlattice.fresh_label(system.ground)
    _emit(presentation_doc(extlattice.extend(system, iset, label)))
    return 0


def cmd_maximalize(args) -> int:
    system = _load_presentation(args.file)
    _emit(presentation_doc(maximalize(system)))
    return 0


def cmd_minimal(args) -> int:
    system = _load_presentation(args.file)
    keep = system.ground.mask(args.keep.split(",")) if args.keep else 0
    below = minimal_presentations_below(system, keep)
    _emit({"presentation_rank": presentation_rank(system),
           "is_minimal": is_minimal(system),
           "presentations": [presentation_doc(c) for c in below]})
    return 0


def cmd_rank(args) -> int:
    system = _load_presentation(args.file)
    mask = (system.ground.mask(args.keep.split(","))
            if args.keep else system.ground.full_mask)
    _emit({"rank": matching.rank(system, mask)})
    return 0


def cmd_supports(args) -> int:
    system = _load_presentation(args.file)
    if args.keep:
        masks = [system.support(system.ground.mask(args.keep.split(",")))]
    else:
        masks = sorted({system.support(1 << e)
                        for e in range(system.ground.n)},
                       key=lambda m: (m.bit_count(), m))
    _emit({"r": system.r, "sets": [_index_list(m) for m in masks]})
    return 0


def cmd_t_lattice(args) -> int:
    system = _load_presentation(args.file)
    records = extlattice.extension_matroids(system)
    _emit({"r": system.r,
           "extensions": [{"set": _index_list(rec.index_set),
                           **matroid_doc(rec.matroid)} for rec in records]})
    return 0


def cmd_intersect(args) -> int:
    a = _load_presentation(args.file)
    b = _load_presentation(args.other)
    common = extlattice.common_extension_lattice(a, b)
    _emit({"lattice_ab": lattice_doc(common.lattice_ab),
           "lattice_ba": lattice_doc(common.lattice_ba),
           "pairs": [[_index_list(i), _index_list(j)] for i, j in common.pairs]})
    return 0


def cmd_irreducibles(args) -> int:
    lat = parse_lattice(_read(args.file))
    lat = validate_lattice(lat.members, lat.r)
    join_irr, meet_irr, least = extlattice.irreducibles(lat)
    _emit({"join": [_index_list(m) for m in join_irr],
           "meet": [_index_list(m) for m in meet_irr],
           "least_containing": {str(i + 1): _index_list(m)
                                for i, m in sorted(least.items())}})
    return 0


def cmd_construct_maximal(args) -> int:
    raw = parse_lattice(_read(args.file))
    lat = validate_lattice(raw.members, raw.r)
    _emit(presentation_doc(build_maximal_presentation(lat)))
    return 0


def cmd_construct_uniform(args) -> int:
    raw = parse_lattice(_read(args.file))
    lat = validate_lattice(raw.members, raw.r)
    _emit(presentation_doc(build_uniform_presentation(lat, args.n)))
    return 0


def cmd_ideals(args) -> int:
    doc = json.loads(_read(args.file))
    try:
        points = int(doc["points"])
        less = [(int(i), int(j)) for i, j in doc["less"]]
    except (KeyError, TypeError):
        raise ValueError("poset document needs 'points' and 'less'") from None
    lat = ideals_of_poset(points, less)
    if args.dot:
        sys.stdout.write(extlattice.hasse_dot(lat))
    else:
        _emit(lattice_doc(lat))
    return 0


def cmd_verify(args) -> int:
    if args.suite == "all":
        reports = verify.check_all(seed=args.seed)
    elif args.suite == "charmin":
        reports = [verify.check_charmin(r=args.r, trials=args.trials,
                                        seed=args.seed)]
    elif args.suite == "threequarters":
        reports = [verify.check_threequarters(r=args.r, trials=args.trials,
                                              seed=args.seed)]
    elif args.suite == "intersection":
        reports = [verify.check_intersection(r=args.r, trials=args.trials,
                                             seed=args.seed)]
    elif args.suite == "classification":
        reports = [verify.check_classification(args.r)]
    else:
        reports = [verify.check_roundtrip()]
    if args.json:
        _emit([rep.to_doc() for rep in reports])
    else:
        for rep in reports:
            for line in rep.lines():
                print(line)
    for rep in reports:
        print(f"[{rep.suite}] elapsed {rep.elapsed:.2f}s", file=sys.stderr)
    return 0 if all(rep.ok for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmlat",
        description="Presentations of transversal matroids and their "
                    "extension lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, takes_file=True):
        p = sub.add_parser(name, help=help_text)
        if takes_file:
            p.add_argument("file", help="input path, or - for stdin")
        p.set_defaults(func=func)
        return p

    p = add("lattice", cmd_lattice, "closed index sets of a presentation")
    p.add_argument("--dot", action="store_true", help="emit a Hasse diagram")

    p = add("sigma", cmd_sigma, "closure of an index set")
    p.add_argument("--set", required=True, help="comma-separated 1-based indices")

    p = add("extend", cmd_extend, "adjoin a fresh element to the given sets")
    p.add_argument("--set", required=True, help="comma-separated 1-based indices")

    add("maximalize", cmd_maximalize, "greatest presentation of the matroid")

    p = add("minimal", cmd_minimal, "minimal presentations below the input")
    p.add_argument("--keep", help="labels whose supports must be preserved")

    p = add("rank", cmd_rank, "rank of a subset (default: the whole ground)")
    p.add_argument("--keep", help="comma-separated element labels")

    p = add("supports", cmd_supports, "support of a subset, or all supports")
    p.add_argument("--keep", help="comma-separated element labels")

    add("t-lattice", cmd_t_lattice, "extension matroids of the closed sets")

    p = add("intersect", cmd_intersect, "common extensions of two presentations")
    p.add_argument("other", help="second presentation path")

    add("irreducibles", cmd_irreducibles, "irreducible members of a lattice file")
    add("construct-maximal", cmd_construct_maximal,
        "maximal presentation realizing a lattice file")

    p = add("construct-uniform", cmd_construct_uniform,
            "uniform presentation realizing a lattice file")
    p.add_argument("--n", type=int, required=True, help="ground size")

    p = add("ideals", cmd_ideals, "order-ideal lattice of a poset file")
    p.add_argument("--dot", action="store_true", help="emit a Hasse diagram")

    p = add("verify", cmd_verify, "run a verification suite", takes_file=False)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=20240406)
    p.add_argument("--json", action="store_true", help="emit reports as JSON")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON input: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
