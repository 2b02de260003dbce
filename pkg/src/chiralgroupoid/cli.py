"""Command-line interface.

Exit codes: 0 success, 1 a validation or verification failed, 2 usage or
input error (including a search refused by the size guardrail).
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import io
from .algebra import algebras_isomorphic, build_algebra, mirror_algebra, opposite_algebra, verify_algebra
from .chirality import (
    DecoratedSemigroup,
    RepresentedSemigroup,
    WeightFunction,
    chirality_index,
    mirror_set_represented,
    mirror_set_semigroup,
    self_oppositeness_verdict,
)
from .corpus import BUILTIN_DECORATIONS, BUILTINS, builtin
from .groupoid import (
    build_germ_groupoid,
    build_universal_groupoid,
    enumerate_characters,
    germ_mirror_square,
    germ_to_universal,
    opposite_groupoid,
)
from .reports import DomainError, FormatError, GuardrailError, VerificationFailed
from .semigroup import validate_representation, validate_semigroup, wagner_preston
from .twists import induce_cocycle, mirror_cocycle, trivial_cocycle, trivial_twist, validate_twist_data, verify_universal_bridge

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- inputs ------------------------------------------------------------------


def load_semigroup(source: str):
    if source.startswith("builtin:"):
        name = source[len("builtin:"):]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        dec = BUILTIN_DECORATIONS.get(name)
        return builtin(name), None if dec is None else frozenset(dec)
    return io.read_semigroup(source)


@dataclass
class Inputs:
    semigroup: object
    decoration: Optional[frozenset]
    twist: object = None
    rep: object = None


def _require_valid(S):
    rep = validate_semigroup(S)
    if not rep.valid:
        raise VerificationFailed("input is not a valid (inverse) semigroup", rep)


def load_inputs(args, need_inverse=False) -> Inputs:
    S, dec = load_semigroup(args.input)
    _require_valid(S)
    if need_inverse and not S.is_inverse:
        raise UsageError("this command needs an inverse semigroup (the input has no star)")
    inp = Inputs(S, dec)
    if getattr(args, "twist", None):
        inp.twist = io.read_twist(args.twist, S)
    if getattr(args, "rep", None):
        inp.rep = io.read_representation(args.rep, S)
    return inp


def make_weights(args) -> Optional[WeightFunction]:
    if not getattr(args, "weights", None):
        return None
    if args.weights == "random":
        return None  # filled per certificate by random_weights
    return io.read_weights(args.weights)


def random_weights(certs, seed: int) -> WeightFunction:
    rnd = random.Random(seed)
    return WeightFunction({c.serialize(): Fraction(rnd.randint(1, 9), rnd.randint(1, 9)) for c in certs})


# -- pipeline report ---------------------------------------------------------

STAGES = (
    "validation",
    "characters",
    "universal_groupoid",
    "germ_groupoid",
    "twist_validation",
    "cocycle_induction",
    "bridge_check",
    "mirror_search",
    "index",
    "algebra_check",
)


@dataclass
class PipelineReport:
    stages: list = field(default_factory=list)

    def record(self, name: str, ok: Optional[bool], detail=None, witness=None) -> None:
        assert name in STAGES and all(STAGES.index(s["stage"]) < STAGES.index(name) for s in self.stages)
        self.stages.append({"stage": name, "ok": ok, "detail": detail or {}, "witness": witness})

    def skip_rest(self, reason: str) -> None:
        done = {s["stage"] for s in self.stages}
        for name in STAGES:
            if name not in done:
                self.stages.append({"stage": name, "ok": None, "detail": {"skipped": reason}, "witness": None})

    @property
    def ok(self) -> bool:
        return all(s["ok"] is not False for s in self.stages) and any(s["ok"] for s in self.stages)

    def to_json(self) -> dict:
        return {"ok": self.ok, "stages": self.stages}


def run_pipeline(S, omega=None, rho=None, weights=None, force=False) -> PipelineReport:
    rep = PipelineReport()
    vr = validate_semigroup(S)
    rep.record("validation", vr.valid and S.is_inverse, vr.to_json(),
               None if vr.valid else vr.violations[0].to_json())
    if not (vr.valid and S.is_inverse):
        rep.skip_rest("input is not an inverse semigroup")
        return rep
    space = enumerate_characters(S)
    rep.record("characters", True, {"idempotents": len(space.idempotents), "characters": len(space)})
    gu = build_universal_groupoid(S, space)
    G = gu.groupoid
    rep.record("universal_groupoid", True, {"units": G.n_units, "arrows": G.n_arrows})

    rho = rho or wagner_preston(S)
    rr = validate_representation(rho)
    if rr.valid:
        gg = build_germ_groupoid(S, rho)
        gtu = germ_to_universal(S, rho, gg, gu)
        sq = germ_mirror_square(S, rho)
        ok = gtu.ok and sq.ok
        rep.record("germ_groupoid", ok, {
            "units": gg.groupoid.n_units, "arrows": gg.groupoid.n_arrows,
            "germ_to_universal": gtu.report.to_json(), "mirror_square": sq.report.to_json(),
            "rho_sharp_equals_rho": sq.rho_sharp_equals_rho,
        }, None if ok else (gtu.counterexample or sq.report.violations[0]).to_json())
    else:
        rep.record("germ_groupoid", False, rr.to_json(), rr.violations[0].to_json())

    omega = omega or trivial_twist(S)
    tr = validate_twist_data(S, omega, gu)
    rep.record("twist_validation", tr.valid, tr.to_json(), None if tr.valid else tr.violations[0].to_json())
    if not tr.valid:
        rep.skip_rest("twist data invalid")
        return rep
    try:
        sigma = induce_cocycle(gu, omega)
        if rr.valid:
            induce_cocycle(build_germ_groupoid(S, rho), omega)
    except VerificationFailed as exc:
        rep.record("cocycle_induction", False, exc.report.to_json(), exc.report.violations[0].to_json())
        rep.skip_rest("cocycle not induced")
        return rep
    rep.record("cocycle_induction", True, {"composable_pairs": len(sigma.values), "den_lcm": sigma.den_lcm})

    br = verify_universal_bridge(S, omega)
    bj = br.to_json()
    rep.record("bridge_check", br.ok, bj, bj["failure"] or (None if br.ok else br.identification.counterexample.to_json()))

    verdict = self_oppositeness_verdict(G, sigma, weights, force=force)
    mr = verdict.report
    rep.record("mirror_search", True, {"mir_count": mr.mir_count, "search_nodes": mr.search_nodes,
                                       "search_space": mr.search_space, "log_hash": mr.log_hash,
                                       "witness_source": verdict.witness_source})
    rep.record("index", (mr.index == 0) == mr.is_chiral,
               {"index": [mr.index.numerator, mr.index.denominator], "chiral": mr.is_chiral})
    if verdict.algebra_check is None:
        rep.record("algebra_check", None, {"skipped": "no mirror witness"})
    else:
        ac = verdict.algebra_check
        rep.record("algebra_check", ac.valid, ac.to_json(), None if ac.valid else ac.violations[0].to_json())
    return rep


# -- output ------------------------------------------------------------------


def to_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + "[" + ", ".join(_scalar(v) for v in obj) + "]"
        lines = []
        for v in obj:
            if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                lines.append(f"{pad}-\n{to_text(v, indent + 1)}")
            else:
                lines.append(f"{pad}- {to_text(v).strip()}")
        return "\n".join(lines)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def emit(obj, fmt: str, out) -> None:
    if fmt == "text":
        out.write(to_text(obj) + "\n")
    else:
        out.write(io.dumps(obj) + "\n")


# -- commands ----------------------------------------------------------------


def cmd_validate(args, out) -> int:
    S, dec = load_semigroup(args.input)
    sr = validate_semigroup(S)
    result = {"semigroup": sr.to_json()}
    ok = sr.valid
    if args.twist:
        if not sr.valid:
            result["twist"] = {"skipped": "semigroup invalid"}
        elif not S.is_inverse:
            raise UsageError("twist data needs an inverse semigroup")
        else:
            tr = validate_twist_data(S, io.read_twist(args.twist, S))
            result["twist"] = tr.to_json()
            ok = ok and tr.valid
    if args.rep and sr.valid:
        rr = validate_representation(io.read_representation(args.rep, S))
        result["representation"] = rr.to_json()
        ok = ok and rr.valid
    result["valid"] = ok
    emit(result, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def _model(inp: Inputs, which: str):
    S = inp.semigroup
    if which == "universal":
        return build_universal_groupoid(S)
    rho = inp.rep or wagner_preston(S)
    rr = validate_representation(rho)
    if not rr.valid:
        raise VerificationFailed("representation invalid", rr)
    return build_germ_groupoid(S, rho)


def _cocycle(inp: Inputs, gg):
    if inp.twist is None:
        return trivial_cocycle(gg.groupoid)
    tr = validate_twist_data(inp.semigroup, inp.twist)
    if not tr.valid:
        raise VerificationFailed("twist data invalid", tr)
    return induce_cocycle(gg, inp.twist)


def cmd_build(args, out) -> int:
    inp = load_inputs(args, need_inverse=True)
    gg = _model(inp, args.which)
    G = gg.groupoid
    sigma = _cocycle(inp, gg) if inp.twist is not None else None
    bis = len({tuple(gg.bisection(s)) for s in inp.semigroup.elements if gg.bisection(s)})
    stats = f"{G.n_units} unit{'s' if G.n_units != 1 else ''}, {G.n_arrows} arrow{'s' if G.n_arrows != 1 else ''}, {bis} bisections"
    if args.format == "dot":
        out.write(io.groupoid_to_dot(G, f"{args.which}"))
        print(stats, file=sys.stderr)
    else:
        data = io.groupoid_to_json(G, sigma)
        data["stats"] = {"units": G.n_units, "arrows": G.n_arrows, "bisections": bis, "summary": stats}
        emit(data, args.format, out)
    return EXIT_OK


def cmd_chirality(args, out) -> int:
    inp = load_inputs(args, need_inverse=args.level != "semigroup")
    weights = make_weights(args)
    S = inp.semigroup
    if args.level == "semigroup":
        A = DecoratedSemigroup(S, inp.decoration)
        rep = mirror_set_semigroup(A, None, force=args.force)
        result = rep
    elif args.level == "represented":
        A = RepresentedSemigroup(S, inp.rep or wagner_preston(S))
        rep = mirror_set_represented(A, None, force=args.force)
        result = rep
    else:
        gg = _model(inp, args.model)
        sigma = _cocycle(inp, gg)
        verdict = self_oppositeness_verdict(gg.groupoid, sigma, force=args.force)
        rep = verdict.report
        result = verdict
    if args.weights == "random":
        weights = random_weights(rep.mir_set, args.seed)
    if weights is not None:
        rep.index = chirality_index(rep.mir_set, weights)
    data = result.to_json()
    if args.level == "groupoid":
        data["index"] = [rep.index.numerator, rep.index.denominator]
    emit(data, args.format, out)
    if args.level == "groupoid" and result.algebra_check is not None and not result.algebra_check.valid:
        return EXIT_FAIL
    return EXIT_OK


def cmd_bridge(args, out) -> int:
    inp = load_inputs(args, need_inverse=True)
    rep = run_pipeline(inp.semigroup, inp.twist, inp.rep, make_weights(args), force=args.force)
    emit(rep.to_json(), args.format, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_algebra(args, out) -> int:
    inp = load_inputs(args, need_inverse=True)
    gg = _model(inp, args.model)
    sigma = _cocycle(inp, gg)
    A = build_algebra(gg.groupoid, sigma)
    data = {"algebra": A.to_json(), "checks": verify_algebra(A).to_json()}
    if args.compare:
        other = opposite_algebra(A) if args.compare == "opposite" else mirror_algebra(gg.groupoid, sigma)
        data["compare"] = {"against": args.compare, **algebras_isomorphic(A, other).to_json()}
    emit(data, args.format, out)
    return EXIT_OK if data["checks"]["valid"] else EXIT_FAIL


def cmd_export(args, out) -> int:
    what = args.what
    if what == "semigroup":
        S, dec = load_semigroup(args.input)
        emit(io.semigroup_to_json(S, dec), "json", out)
        return EXIT_OK
    inp = load_inputs(args, need_inverse=True)
    S = inp.semigroup
    if what == "representation":
        emit(io.representation_to_json(inp.rep or wagner_preston(S)), "json", out)
    elif what == "twist":
        emit(io.twist_to_json(inp.twist or trivial_twist(S)), "json", out)
    elif what == "characters":
        sp = enumerate_characters(S)
        emit({"format": io.FORMAT, "idempotents": list(sp.idempotents), "characters": [list(c) for c in sp.characters]}, "json", out)
    else:
        gg = _model(inp, args.model)
        sigma = _cocycle(inp, gg)
        G = gg.groupoid
        if what == "groupoid":
            if args.format == "dot":
                out.write(io.groupoid_to_dot(G))
            else:
                emit(io.groupoid_to_json(G, sigma), "json", out)
        elif what == "mirror":
            emit(io.groupoid_to_json(opposite_groupoid(G), mirror_cocycle(sigma)), "json", out)
        elif what == "cocycle":
            emit({"format": io.FORMAT, "cocycle": io.cocycle_to_json(sigma)}, "json", out)
        elif what == "algebra":
            emit({"format": io.FORMAT, **build_algebra(G, sigma).to_json()}, "json", out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chiralgroupoid", description="Mirror constructions and chirality search for finite inverse semigroups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="semigroup JSON file or builtin:NAME")
    common.add_argument("--twist", help="twist data JSON")
    common.add_argument("--rep", help="representation JSON (default: Wagner-Preston)")
    common.add_argument("--weights", help="weight table JSON, or 'random' (uses --seed)")
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--force", action="store_true", help="allow searches beyond the size guardrail")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; searches run single-threaded")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--model", choices=("universal", "germ"), default="universal")

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check semigroup, twist and representation files")
    b = sub.add_parser("build", parents=[common], help="build and export a groupoid")
    b.add_argument("which", choices=("universal", "germ"), nargs="?", default="universal")
    c = sub.add_parser("chirality", parents=[common], help="mirror search and chirality index")
    c.add_argument("--level", choices=("semigroup", "represented", "groupoid"), default="groupoid")
    sub.add_parser("bridge", parents=[common], help="run every stage of the mirror pipeline")
    a = sub.add_parser("algebra", parents=[common], help="twisted convolution algebra tables")
    a.add_argument("--compare", choices=("opposite", "mirror"), help="search for an isomorphism onto this algebra")
    e = sub.add_parser("export", parents=[common], help="write an object in its file format")
    e.add_argument("what", choices=("semigroup", "representation", "twist", "characters", "groupoid", "mirror", "cocycle", "algebra"))
    return p


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "chirality": cmd_chirality,
    "bridge": cmd_bridge,
    "algebra": cmd_algebra,
    "export": cmd_export,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, FormatError, DomainError, GuardrailError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.report is not None and hasattr(exc.report, "to_json"):
            emit({"valid": False, "report": exc.report.to_json()}, args.format if args.format != "dot" else "json", out)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
