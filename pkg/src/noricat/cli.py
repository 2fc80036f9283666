"""Command-line front end.  Every subcommand prints a JSON document.

Exit status is 0 when the computation completed and, for the checking
commands (les-check, criterion), the verdict is PASS; 1 for a FAIL or
incomplete verdict; 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .category import module_hom, tower
from .commutant import AbstractAlgebra, StageModule, compute_end, module_structure
from .criterion import PASS, TargetPresentation, TestMap, full_criterion
from .diagram import (Representation, SubdiagramChain, base_change_Q, named_stages,
                      representation_from_json, stage_from_json, validate)
from .galois import GSet, FiniteGroup, group_algebra, permutation_module
from .graphs import Graph, homology, les_check, pair_from_json
from .linalg import matrix_class, matrix_from_json, rank, smith_normal_form, to_ring


class InputError(Exception):
    pass


def load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}\n"
                         f"    {context}") from None


def _rep(obj, ring: str | None) -> Representation:
    T = representation_from_json(obj)
    problems = validate(T)
    if problems:
        raise InputError("invalid representation: " + "; ".join(problems))
    if ring == "Q" and T.ring == "Z":
        T = base_change_Q(T)
    elif ring == "Z" and T.ring == "Q":
        raise InputError("representation is over Q; it cannot be read over Z")
    return T


def _stage(T: Representation, obj, name: str | None):
    stages = named_stages(T.diagram, obj)
    key = name or "full"
    if key not in stages:
        raise InputError(f"unknown stage {key!r}; valid stages: {', '.join(sorted(stages))}")
    return stages[key]


def _matrix(obj, ring: str | None = None):
    """A matrix given as {"rows", "cols", "entries"} or as a bare list of rows."""
    if isinstance(obj, list):
        obj = {"rows": len(obj), "cols": len(obj[0]) if obj else 0, "entries": obj}
    return matrix_from_json(obj, ring)


# ---------------------------------------------------------------------------
# subcommands; each returns (document, ok)


def cmd_snf(args):
    A = _matrix(load_json(args.matrix))
    if args.ring == "Q":
        r = rank(A)
        return {"ring": "Q", "rank": r, "diagonal": [1] * r}, True
    if A.ring != "Z":
        raise InputError("Smith normal form needs an integer matrix (use --ring Q for rank)")
    return smith_normal_form(A).to_json(), True


def cmd_end(args):
    obj = load_json(args.diagram)
    T = _rep(obj, args.ring)
    E = _stage(T, obj, args.stage)
    A = compute_end(T, E)
    out = {"stage": args.stage or "full"}
    out.update(A.to_json())
    return out, True


def cmd_hom(args):
    obj = load_json(args.diagram)
    T = _rep(obj, args.ring)
    E = _stage(T, obj, args.stage)
    X = module_structure(T, E, args.source)
    Y = module_structure(T, E, args.target)
    H = module_hom(X, Y)
    return {"stage": args.stage or "full", "source": args.source, "target": args.target,
            "group": str(H.group), "rank": H.rank,
            "generators": [F.to_json() for F in H.generators]}, True


def _graph_and_subgraph(obj, key, X: Graph):
    sub = obj.get(key)
    if sub is None:
        return None
    edges = [e["id"] if isinstance(e, dict) else e for e in sub.get("edges", [])]
    return X.subgraph(sub.get("vertices", []), edges)


def cmd_homology(args):
    P = pair_from_json(load_json(args.graph))
    H = homology(P.X, P.Y)
    return {"H1": str(H.h1), "H0": str(H.h0), "H1_rank": H.h1.free_rank,
            "H0_rank": H.h0.free_rank,
            "cycles": H.cycles.to_json()}, True


def cmd_les_check(args):
    obj = load_json(args.graph)
    P = pair_from_json(obj)
    Z = _graph_and_subgraph(obj, "Z", P.X)
    if Z is not None and not Z.is_subgraph_of(P.Y):
        raise InputError("Z must be a subgraph of Y")
    report = les_check(P.X, P.Y, Z)
    return report.to_json(), report.status == PASS


def _module_from_json(m, algebra, G: FiniteGroup | None) -> StageModule:
    ring = algebra.ring
    if "gset" in m:
        if G is None:
            raise InputError("a G-set module needs a \"group\" entry in the target file")
        return permutation_module(GSet(G, tuple(map(tuple, m["gset"]["action"]))), ring, algebra)
    n = m["generators"]
    cls = matrix_class(ring)
    rel = matrix_from_json(m["relations"], ring) if "relations" in m else cls.zeros(n, 0)
    action = [matrix_from_json(a, ring) for a in m["action"]]
    return StageModule(algebra, n, rel, action)


def load_target(T: Representation, obj) -> TargetPresentation:
    G = None
    if "group" in obj:
        g = obj["group"]
        G = FiniteGroup(tuple(map(tuple, g["table"])), g.get("identity", 0))
        algebra = group_algebra(G, T.ring)
    elif "algebra" in obj:
        algebra = AbstractAlgebra.from_json(dict(obj["algebra"], ring=T.ring))
    else:
        raise InputError("target file needs an \"algebra\" or a \"group\" entry")
    modules = {name: _module_from_json(m, algebra, G) for name, m in obj["modules"].items()}
    return TargetPresentation(T, algebra, modules, obj["S"], obj.get("generators", []))


def cmd_criterion(args):
    dobj = load_json(args.diagram)
    T = _rep(dobj, args.ring)
    E = _stage(T, dobj, args.stage)
    target = load_target(T, load_json(args.target))
    maps = []
    if args.maps:
        mobj = load_json(args.maps)
        for k, m in enumerate(mobj.get("maps", [])):
            rel = _matrix(m["relations"], T.ring) if "relations" in m else None
            maps.append(TestMap(m["object"], to_ring(_matrix(m["matrix"]), T.ring), rel,
                                m.get("name", f"map{k}")))
    report = full_criterion(T, target, maps, E)
    out = {"stage": args.stage or "full"}
    out.update(report.to_json())
    return out, report.overall == PASS


def cmd_tower(args):
    dobj = load_json(args.diagram)
    T = _rep(dobj, args.ring)
    cobj = load_json(args.chain)
    specs = cobj["chain"] if isinstance(cobj, dict) else cobj
    stages = named_stages(T.diagram, dobj)
    chain_stages = []
    for s in specs:
        if isinstance(s, str):
            if s not in stages:
                raise InputError(f"unknown stage {s!r}; valid stages: {', '.join(sorted(stages))}")
            chain_stages.append(stages[s])
        else:
            chain_stages.append(stage_from_json(T.diagram, s))
    chain = SubdiagramChain(tuple(chain_stages))
    tw = tower(T, chain)
    out = tw.to_json()
    last = tw.report[0] if tw.report else None
    out["stabilized"] = bool(last and last.status == "STABILIZED")
    return out, True


COMMANDS = {"snf": cmd_snf, "end": cmd_end, "hom": cmd_hom, "homology": cmd_homology,
            "les-check": cmd_les_check, "criterion": cmd_criterion, "tower": cmd_tower}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", choices=["Z", "Q"], default=None)
    common.add_argument("--stage", default=None, help="named stage from the diagram file")
    common.add_argument("--out", default=None, help="write the JSON report here")
    common.add_argument("--quiet", action="store_true", help="suppress stdout")

    parser = argparse.ArgumentParser(prog="noricat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    p.add_argument("matrix")
    p = sub.add_parser("end", parents=[common], help="endomorphism algebra at a stage")
    p.add_argument("diagram")
    p = sub.add_parser("hom", parents=[common], help="Hom between two tautological modules")
    p.add_argument("diagram")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p = sub.add_parser("homology", parents=[common], help="relative homology of a graph pair")
    p.add_argument("graph")
    p = sub.add_parser("les-check", parents=[common], help="exactness of the long exact sequence")
    p.add_argument("graph")
    p = sub.add_parser("criterion", parents=[common], help="check the equivalence criterion")
    p.add_argument("diagram")
    p.add_argument("target")
    p.add_argument("maps", nargs="?")
    p = sub.add_parser("tower", parents=[common], help="endomorphism tower along a chain")
    p.add_argument("diagram")
    p.add_argument("chain")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, ok = COMMANDS[args.command](args)
    except (InputError, ValueError, KeyError, TypeError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"noricat {args.command}: error: {msg}", file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    if not args.quiet:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
