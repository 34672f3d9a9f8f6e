"""Command-line front end.  Every command prints one sorted-key JSON report.

Exit codes: 0 when every check passes, 1 on a verified mathematical failure,
2 on unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import codec, scalars
from .atiyah import bianchi_check, ce_class_p1, curvature_table, lecomte_class_p1
from .cohomology import (cocycle_check, coboundary_solve, crossed_hom_from_gauge, defect_cochain,
                         frame_beta, gauge_from_crossed_hom)
from .errors import FactorSysError, InputError, MathFailure
from .facsys import (extract_factor_system, identity_witness, verify_axioms, verify_conjugacy,
                     witness_from_frames)
from .l12 import alpha1_commute_check, bracket_gr, delta_A_build, extract_A, free_module_report
from .leavitt import LeavittPathAlgebra, lpa_frames, rose
from .lift import EtaFamily, build_lift, check_lift_conditions, z_lift_from_generator
from .matrix import decode_matrix, encode_matrix
from .reconstruct import associativity_report, reconstruct_ring, round_trip
from .report import Report


class Outcome:
    def __init__(self, payload: dict, ok: bool = True):
        self.payload = payload
        self.ok = ok


def _load(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _write(path, obj):
    if path:
        Path(path).write_text(json.dumps(obj, sort_keys=True, indent=1))


def _reports(*reports: Report) -> Outcome:
    return Outcome({"reports": [r.to_json() for r in reports]}, all(r.ok for r in reports))


def _load_matrix(ring, path):
    try:
        return decode_matrix(ring, _load(path))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"{path} is not a matrix file: {exc}") from None


def _window(args) -> int:
    if args.window is None:
        raise InputError("this command builds a Z-graded object and needs --window N")
    return args.window


def _graph_lpa(args) -> LeavittPathAlgebra:
    if args.graph in (None, "l12"):
        return LeavittPathAlgebra(rose(2), args.field)
    return LeavittPathAlgebra(codec.decode_graph(_load(args.graph)), args.field)


def _fs(args):
    return codec.decode_factor_system(_load(args.fs))


def _frames_for(fs):
    if fs.frames is not None:
        return fs.frames
    return reconstruct_ring(fs, verified=True)[1]


def _derivation(args, fs):
    return codec.decode_derivation(fs.R, _load(args.derivation))


def _eta(args, fs):
    return codec.decode_eta(fs, None if args.eta in (None, "zero") else _load(args.eta))


def _samples(fs, frames):
    S = frames.S
    extra = S.principal_generators(2) if hasattr(S, "principal_generators") else []
    return [s for s in extra if s not in fs.generators]


# commands ------------------------------------------------------------------------------------------

def cmd_frames(args) -> Outcome:
    lpa = _graph_lpa(args)
    frames = lpa_frames(lpa, _window(args), positive=args.positive)
    rep = Report("frames")
    S = frames.S
    sizes = {}
    for g in frames.degrees():
        total = S.sum(b * a for a, b in zip(frames.x(g).column_entries(), frames.y(g).column_entries()))
        rep.add("yt_x_is_one", total == S.one(), g=g)
        sizes[str(g)] = frames.size(g)
    _write(args.out, codec.encode_frames(frames))
    return Outcome({"sizes": sizes, "reports": [rep.to_json()]}, rep.ok)


def cmd_extract(args) -> Outcome:
    frames = codec.decode_frames(_load(args.frames))
    fs = extract_factor_system(frames, generators=frames.S.principal_generators(args.level))
    _write(args.out, codec.encode_factor_system(fs))
    return Outcome({"sizes": {str(g): fs.n(g) for g in fs.degrees()}, "pairs": len(fs.pairs())})


def cmd_verify_fs(args) -> Outcome:
    return _reports(verify_axioms(_fs(args)))


def cmd_reconstruct(args) -> Outcome:
    fs = _fs(args)
    result = round_trip(fs)
    assoc = associativity_report(result["ring"], result["frames"])
    rt = Report("round trip")
    rt.add("alpha_recovered", result["alpha"])
    rt.add("omega_recovered", result["omega"])
    return _reports(rt, assoc)


def cmd_conjugacy(args) -> Outcome:
    fs_a = _fs(args)
    fs_b = codec.decode_factor_system(_load(args.other))
    if fs_a.frames is not None and fs_b.frames is not None:
        v, w = witness_from_frames(fs_a.frames, fs_b.frames)
    else:
        v, w = identity_witness(fs_a)
    return _reports(verify_conjugacy(fs_a, fs_b, v, w))


def cmd_lift_check(args) -> Outcome:
    fs = _fs(args)
    return _reports(check_lift_conditions(fs, _derivation(args, fs), _eta(args, fs)))


def _lift_payload(frames, fs, lift):
    """Images of the ambient ring's generators, when the ring has a serializable basis."""
    S = frames.S
    if not hasattr(S, "encode"):
        return {}
    return {name: S.encode(lift(s)) for name, s in S.generators().items()}


def cmd_lift_build(args) -> Outcome:
    fs = _fs(args)
    frames = _frames_for(fs)
    delta, eta = _derivation(args, fs), _eta(args, fs)
    rep = check_lift_conditions(fs, delta, eta)
    if not rep.ok:
        return Outcome({"reports": [rep.to_json()]}, False)
    lift = build_lift(frames, fs, delta, eta, verify=False)
    return Outcome({"reports": [rep.to_json()], "eta": codec.encode_eta(eta),
                    "generator_images": _lift_payload(frames, fs, lift)})


def cmd_z_lift(args) -> Outcome:
    fs = _fs(args)
    frames = _frames_for(fs)
    delta = _derivation(args, fs)
    if args.eta1 in (None, "zero"):
        eta1 = EtaFamily.zero(fs)(1)
    else:
        eta1 = _load_matrix(fs.R, args.eta1)
    lift, eta, xi = z_lift_from_generator(frames, fs, delta, eta1, _samples(fs, frames))
    return Outcome({"eta": codec.encode_eta(eta), "xi": codec.encode_cochain(xi),
                    "generator_images": _lift_payload(frames, fs, lift)})


def cmd_defect(args) -> Outcome:
    fs = _fs(args)
    frames = _frames_for(fs)
    delta = defect_cochain(frames, fs, _derivation(args, fs), _eta(args, fs))
    _write(args.out, codec.encode_cochain(delta))
    rep = cocycle_check(delta, frame_beta(frames), fs.group)
    return Outcome({"cochain": codec.encode_cochain(delta), "reports": [rep.to_json()]}, rep.ok)


def cmd_cohomology_solve(args) -> Outcome:
    from .cohomology import center_basis
    fs = _fs(args)
    frames = _frames_for(fs)
    delta = codec.decode_cochain(fs.group, fs.R, _load(args.cochain))
    center = None
    if hasattr(fs.R, "window"):
        center = center_basis(fs.R, fs.R.window(args.window or 1))
    xi = coboundary_solve(delta, frame_beta(frames), center=center, group=fs.group)
    return Outcome({"xi": codec.encode_cochain(xi), "solved": True})


def cmd_gauge(args) -> Outcome:
    fs = _fs(args)
    frames = _frames_for(fs)
    eta = codec.decode_crossed_hom(fs.group, fs.R, _load(args.crossed_hom))
    D = gauge_from_crossed_hom(frames, fs, eta)
    back = crossed_hom_from_gauge(frames, fs, D)
    rep = Report("gauge correspondence")
    for g in eta:
        rep.add("round_trip", back.get(g) == eta[g], g=g)
    return _reports(rep)


def _section(args):
    from .models import l12_sl2_section, skew_laurent_section
    if args.model == "skew":
        return skew_laurent_section(_window(args), args.field)
    return l12_sl2_section(_window(args))


def cmd_atiyah(args) -> Outcome:
    sec = _section(args)
    table = curvature_table(sec)
    R = sec.fs.R
    curv = {f"{i},{j}": {str(g): R.encode(v) for g, v in vals.items()} for (i, j), vals in table.items() if i < j}
    rep = bianchi_check(sec)
    return Outcome({"curvature": curv, "reports": [rep.to_json()]}, rep.ok)


def cmd_lecomte(args) -> Outcome:
    if args.values:
        obj = _load(args.values)
        structure = {tuple(int(x) for x in k.split(",")): {int(a): scalars.decode(c) for a, c in v.items()}
                     for k, v in obj.get("structure", {}).items()}
        values = {tuple(int(x) for x in k.split(",")): scalars.decode(v) for k, v in obj["curvature"].items()}
        verdict = ce_class_p1(int(obj["dimension"]), structure, values)
    else:
        verdict = lecomte_class_p1(_section(args))
    return Outcome(verdict.to_json(), verdict.split)


def cmd_l12(args) -> Outcome:
    lpa = LeavittPathAlgebra(rose(2), args.field)
    A = _load_matrix(lpa, args.matrix)
    D = delta_A_build(lpa, A)
    images = {name: lpa.encode(D(s)) for name, s in lpa.generators().items()}
    samples = [m for n in range(args.level + 1) for m in lpa.level_span(n)]
    commute = alpha1_commute_check(lpa, A, samples)
    extract = Report("extraction")
    extract.add("recovers_A", extract_A(lpa, D) == A)
    payload = {"generator_images": images}
    reports = [commute, extract]
    if args.matrix2:
        B = _load_matrix(lpa, args.matrix2)
        payload["bracket"] = encode_matrix(bracket_gr(lpa, A, B, max_level=args.max_level))
    degree_one = [lpa.edge("e1"), lpa.edge("e2"), lpa.parse("e1 e2 e1*")]
    reports.append(free_module_report(lpa, degree_one))
    payload["reports"] = [r.to_json() for r in reports]
    # the commutation test is informative, so only extraction and the module check gate the exit code
    return Outcome(payload, extract.ok and reports[-1].ok)


# parser ----------------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="factorsys", description="Factor systems of strongly graded rings")
    p.add_argument("--window", type=int, help="degree window bound |n| <= N; required when a Z-graded "
                   "object is built from scratch")
    p.add_argument("--json", action="store_true", help="JSON output (the only mode; accepted for scripts)")
    p.add_argument("--field", choices=("q", "qi"), default="qi", help="rationals or Gaussian rationals")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("frames", help="frame system of a graph's Leavitt path algebra")
    s.add_argument("--graph", help="graph JSON file (default: the two-loop rose)")
    s.add_argument("--positive", choices=("power", "parseval"), default="power")
    s.add_argument("--out")
    s.set_defaults(func=cmd_frames)

    s = sub.add_parser("extract", help="factor system of a frame file")
    s.add_argument("--frames", required=True)
    s.add_argument("--level", type=int, default=1, help="level of principal sample monomials")
    s.add_argument("--out")
    s.set_defaults(func=cmd_extract)

    for name, func, help_text in (("verify-fs", cmd_verify_fs, "check factor-system axioms"),
                                  ("reconstruct", cmd_reconstruct, "rebuild the ring and round-trip")):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--fs", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("conjugacy", help="verify a conjugacy witness between two systems")
    s.add_argument("--fs", required=True)
    s.add_argument("--other", required=True)
    s.set_defaults(func=cmd_conjugacy)

    for name, func in (("lift-check", cmd_lift_check), ("lift-build", cmd_lift_build), ("defect", cmd_defect)):
        s = sub.add_parser(name)
        s.add_argument("--fs", required=True)
        s.add_argument("--derivation", required=True)
        s.add_argument("--eta", default="zero", help="'zero' or a JSON file of matrices")
        if name == "defect":
            s.add_argument("--out")
        s.set_defaults(func=func)

    s = sub.add_parser("z-lift", help="lift over a Z-window from degree-one data")
    s.add_argument("--fs", required=True)
    s.add_argument("--derivation", required=True)
    s.add_argument("--eta1", default="zero")
    s.set_defaults(func=cmd_z_lift)

    s = sub.add_parser("cohomology-solve", help="solve d(xi) = cochain")
    s.add_argument("--fs", required=True)
    s.add_argument("--cochain", required=True)
    s.set_defaults(func=cmd_cohomology_solve)

    s = sub.add_parser("gauge", help="crossed homomorphism to gauge derivation and back")
    s.add_argument("--fs", required=True)
    s.add_argument("--crossed-hom", dest="crossed_hom", required=True)
    s.set_defaults(func=cmd_gauge)

    for name, func in (("atiyah", cmd_atiyah), ("lecomte", cmd_lecomte)):
        s = sub.add_parser(name)
        s.add_argument("--model", choices=("skew", "l12-sl2"), default="skew")
        if name == "lecomte":
            s.add_argument("--values", help="JSON with dimension, structure and scalar curvature")
        s.set_defaults(func=func)

    s = sub.add_parser("l12", help="delta_A toolkit on L(1,2)")
    s.add_argument("--matrix", required=True, help="2x2 matrix JSON")
    s.add_argument("--matrix2", help="second matrix for the graded bracket")
    s.add_argument("--level", type=int, default=1)
    s.add_argument("--max-level", dest="max_level", type=int, default=2)
    s.set_defaults(func=cmd_l12)
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.window is not None and args.window < 1:
        print(json.dumps({"error": "window bound must be at least 1"}, sort_keys=True))
        return 2
    try:
        outcome = args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}, sort_keys=True))
        return 2
    except MathFailure as exc:
        print(json.dumps({"failure": str(exc), "kind": type(exc).__name__,
                          "witness": {k: str(v) for k, v in exc.witness.items()}}, sort_keys=True))
        return 1
    except FactorSysError as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}, sort_keys=True))
        return 2
    print(json.dumps(outcome.payload, sort_keys=True, indent=1, default=str))
    return 0 if outcome.ok else 1


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
