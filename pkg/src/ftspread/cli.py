"""Command-line entry point: ``ftspread {analyze,classify,spread,gadget,mc}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import CapacityError, FTSpreadError
from .montecarlo import default_threads

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILY_ALIASES = {
    "surface3d": "surface3d", "surface2d": "surface2d", "toric": "toric",
    "steane-concat": "steane_concat", "rm-concat": "rm_concat", "reed-muller-concat": "rm_concat",
    "alternating": "alternating_concat", "alternating-concat": "alternating_concat",
}
GADGETS = ("teleport", "magic-inject", "coherent-inject", "switch-steane-rm", "surface-split")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    argv: List[str]
    code: Optional[str] = None
    code_file: Optional[str] = None
    family: Optional[str] = None
    sizes: Optional[List[int]] = None
    p_grid: Optional[List[float]] = None
    shots: Optional[int] = None
    seed: int = 0
    out: Optional[str] = None
    format: str = "json"
    options: Dict[str, object] = field(default_factory=dict)


# parsing helpers ------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _shots(text: str) -> int:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad shot count {text!r}")
    if v < 0 or v != int(v):
        raise argparse.ArgumentTypeError("shots must be a non-negative integer")
    return int(v)


def parse_p_grid(text: str) -> List[float]:
    """``a,b,c`` or ``lo:hi:log[:points]`` / ``lo:hi:lin[:points]`` (5 points by default)."""
    try:
        if ":" in text:
            parts = text.split(":")
            lo, hi = float(parts[0]), float(parts[1])
            mode = parts[2] if len(parts) > 2 else "log"
            pts = int(parts[3]) if len(parts) > 3 else 5
            if mode == "log":
                grid = np.geomspace(lo, hi, pts)
            elif mode == "lin":
                grid = np.linspace(lo, hi, pts)
            else:
                raise ValueError(mode)
            return [float(v) for v in grid]
        return [float(t) for t in text.split(",") if t.strip()]
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"bad p grid {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: $FTSPREAD_THREADS or 1)")

    p = argparse.ArgumentParser(prog="ftspread", description="Stabiliser-code spread, distance and gadget analysis.")
    p.add_argument("--version", action="version", version=f"ftspread {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    a = sub.add_parser("analyze", parents=[common], help="per-logical distances and disjointness of one code")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--code", help="selector such as steane, reed-muller, toric:3, surface3d:2,2,2")
    src.add_argument("--code-file", help="JSON code description")
    a.add_argument("--c-values", type=_int_list, default=[1, 2, 4, 8])
    a.add_argument("--budget", type=int, default=200000)
    a.add_argument("--no-disjointness", action="store_true")

    c = sub.add_parser("classify", parents=[common], help="classify a code family by logical-distance ratios")
    c.add_argument("--family", required=True, choices=sorted(FAMILY_ALIASES))
    c.add_argument("--sizes", type=_int_list, required=True)

    s = sub.add_parser("spread", parents=[common], help="exact spread of a Clifford channel or a lightcone bound")
    s.add_argument("--channel", help="transversal:GATE, cnot-ladder")
    s.add_argument("--n", type=int, help="qubit count for --channel")
    s.add_argument("--sizes", type=_int_list, help="trend over these qubit counts")
    s.add_argument("--circuit", help="circuit text file")

    g = sub.add_parser("gadget", parents=[common], help="verify a teleportation, injection or switching gadget")
    g.add_argument("name", choices=GADGETS)
    g.add_argument("--code", default="steane")
    g.add_argument("--u", default="I", choices=("I", "H", "S", "T"))
    g.add_argument("--sweep-errors", action="store_true", help="also insert every single-qubit Pauli on the data block")
    g.add_argument("--controls", type=_int_list, default=None,
                   help="1-based Steane qubits whose partners feed qubit 15 in the switch (default 5,6,7)")
    g.add_argument("--emit-circuit", help="write the gadget circuit text here")

    m = sub.add_parser("mc", parents=[common], help="Monte Carlo logical error rates and related checks")
    m.add_argument("--code", default="steane")
    m.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    m.add_argument("--levels", type=int, help="family size (concatenation depth)")
    m.add_argument("--decoder", choices=("auto", "lookup", "level"), default="auto")
    m.add_argument("--p-grid", type=parse_p_grid, default=parse_p_grid("0.001:0.01:log"))
    m.add_argument("--shots", type=_shots, default=100000)
    m.add_argument("--pseudothreshold", action="store_true")
    m.add_argument("--conditional-ft", action="store_true")
    m.add_argument("--demo", choices=("cnot_ladder", "transversal_x"), help="spread-then-decode demonstration")
    m.add_argument("--sizes", type=_int_list, help="family sizes for --demo")
    return p


# commands ----------------------------------------------------------------------------

def _load_code(args):
    from .codes import StabiliserCode, code_from_selector

    if getattr(args, "code_file", None):
        try:
            text = Path(args.code_file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.code_file}: {exc}")
        try:
            return StabiliserCode.from_json(text).validate()
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{args.code_file}: invalid code ({exc})")
    return code_from_selector(args.code)


def cmd_analyze(args, warnings: List[str]) -> dict:
    from .analysis import code_distance
    from .disjointness import constructive_report, disjointness_report

    code = _load_code(args)
    dist = code_distance(code, threads=args.threads)
    warnings.extend(dist.flags)
    out = {"code": code.label, "n": code.n, "k": code.k, "distance": dist.to_dict()}
    if not args.no_disjointness:
        try:
            rep = disjointness_report(code, args.c_values, args.budget, dist.code_distance)
        except CapacityError as exc:
            warnings.append(f"exact disjointness unavailable ({exc}); constructive families used")
            rep = constructive_report(code, dist.code_distance)
        out["disjointness"] = rep.to_dict()
    return out


def cmd_classify(args, warnings: List[str]) -> dict:
    from .analysis import b_group_report, classify_family
    from .codes import make_family
    from .errors import NoReportError

    fam = make_family(FAMILY_ALIASES[args.family])
    res = classify_family(fam, args.sizes, threads=args.threads)
    out = res.to_dict()
    try:
        out["report"] = b_group_report(res)
    except NoReportError as exc:
        warnings.append(str(exc))
    return out


def _channel_map(spec: str, n: int):
    from .circuits.circuit import cnot_ladder, transversal

    if spec == "cnot-ladder":
        return cnot_ladder(n).to_clifford_map()
    if spec.startswith("transversal:"):
        return transversal(n, spec.split(":", 1)[1].upper()).to_clifford_map()
    raise UsageError(f"unknown channel {spec!r}; use transversal:GATE or cnot-ladder")


def cmd_spread(args, warnings: List[str]) -> dict:
    from .circuits.circuit import Circuit
    from .spread import family_spread_trend, lightcone_spread_bound, spread_of_clifford

    if args.circuit:
        try:
            circ = Circuit.from_text(Path(args.circuit).read_text())
        except OSError as exc:
            raise UsageError(str(exc))
        return lightcone_spread_bound(circ, args.circuit).to_dict()
    if not args.channel:
        raise UsageError("give --circuit or --channel")
    if args.sizes:
        trend = family_spread_trend(None, lambda n: _channel_map(args.channel, n), args.sizes, args.channel)
        return trend.to_dict()
    if not args.n:
        raise UsageError("--channel needs --n or --sizes")
    return spread_of_clifford(_channel_map(args.channel, args.n), f"{args.channel}({args.n})").to_dict()


def cmd_gadget(args, warnings: List[str]) -> dict:
    from .circuits import gadgets as G
    from .circuits.verify import check_clifford_action, logical_map, verify_gadget
    from .codes import build_reed_muller, build_surface3d
    from .pauli import PauliOperator

    verdicts = []
    circuits = []
    if args.name == "switch-steane-rm":
        controls = tuple(args.controls) if args.controls else G.SWITCH_CONTROLS
        if len(controls) != 3 or not all(1 <= q <= 7 for q in controls):
            raise UsageError("--controls takes three Steane qubits in 1..7")
        rm = build_reed_muller()
        si = G.steane_with_ancilla(controls)
        to_rm = G.steane_rm_switch_circuit("to_rm", controls)
        to_st = G.steane_rm_switch_circuit("to_steane", controls)
        verdicts.append(check_clifford_action(to_rm.to_clifford_map(), si, rm, logical_map("I"), "to_rm"))
        verdicts.append(check_clifford_action(to_st.to_clifford_map(), rm, si, logical_map("I"), "to_steane"))
        from .pauli import compose

        round_trip = compose(to_st.to_clifford_map(), to_rm.to_clifford_map())
        from .circuits.verify import Verdict

        ident = round_trip == type(round_trip).identity(15)
        verdicts.append(Verdict("round_trip", bool(ident), 1, 1, [] if ident else ["round trip is not the identity"]))
        circuits.append(to_rm)
    elif args.name == "surface-split":
        circ = G.surface_layer_split(2)
        verdicts.append(check_clifford_action(circ.to_clifford_map(), build_surface3d(2, 2, 2),
                                              G.layer_split_code_out(circ), logical_map("I"), "surface-split"))
        circuits.append(circ)
    else:
        code = _load_code(args)
        if args.name == "teleport":
            gadget = G.build_teleportation_gadget(code, args.u)
        elif args.name == "magic-inject":
            gadget = G.build_magic_injection(code)
        else:
            gadget = G.build_coherent_injection(code)
        errors = None
        if args.sweep_errors:
            if gadget.expected == "T":
                raise UsageError("error sweeps run on the tableau backend; not available for T")
            errors = [None] + [PauliOperator.single(gadget.n, q, L) for q in range(code.n) for L in "XYZ"]
        v = verify_gadget(gadget, errors)
        if errors is not None:
            v.details["errors_corrected"] = f"{len(errors) - 1 if v.passed else 'not all'}/{len(errors) - 1}"
        verdicts.append(v)
        circuits.append(gadget.circuit)
    if args.emit_circuit:
        Path(args.emit_circuit).write_text(circuits[0].to_text())
    return {"gadget": args.name, "passed": all(v.passed for v in verdicts), "verdicts": [v.to_dict() for v in verdicts]}


def cmd_mc(args, warnings: List[str]) -> dict:
    from .codes import make_family
    from .montecarlo import (
        BlockwiseDecoder, alternating_t_circuit, build_level_decoder, conditional_ft_check, decoder_for,
        loglog_slope, pseudothreshold_scan, scan, unbounded_spread_failure_demo,
    )

    if args.conditional_ft:
        fam = make_family(FAMILY_ALIASES[args.family or "alternating"])
        levels = fam.level_codes(args.levels or 2)
        code = fam.instantiate(args.levels or 2)
        circ = alternating_t_circuit(levels)
        results = [conditional_ft_check(circ, code, dec).to_dict()
                   for dec in (build_level_decoder(levels), BlockwiseDecoder(levels))]
        expected = results[0]["passed"] and not results[1]["passed"]
        return {"conditional_ft": results, "passed": expected}
    if args.demo:
        fam = make_family(FAMILY_ALIASES[args.family or "steane-concat"])
        demo = unbounded_spread_failure_demo(args.demo, fam, args.sizes or fam.index_domain, args.p_grid[0],
                                             args.shots, args.seed, args.threads)
        return demo.to_dict()
    if args.family:
        fam = make_family(FAMILY_ALIASES[args.family])
        l = args.levels or fam.index_domain[0]
        code = fam.instantiate(l)
        dec = decoder_for(code, fam, l, args.decoder)
    else:
        from .codes import code_from_selector

        code = code_from_selector(args.code)
        if args.decoder == "level":
            raise UsageError("--decoder level needs --family and --levels")
        dec = decoder_for(code, kind="lookup")
    if args.pseudothreshold:
        est = pseudothreshold_scan(code, dec, args.p_grid, args.shots, args.seed, args.threads)
    else:
        est = scan(code, dec, args.p_grid, args.shots, args.seed, args.threads)
    out = est.to_dict()
    try:
        out["loglog_slope"] = loglog_slope(est)
    except FTSpreadError as exc:
        warnings.append(str(exc))
    out["_csv"] = est.to_csv()
    return out


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "spread": cmd_spread, "gadget": cmd_gadget, "mc": cmd_mc}


# output ------------------------------------------------------------------------------

def _config(args, argv: Sequence[str]) -> RunConfig:
    skip = {"subcommand", "code", "code_file", "family", "sizes", "p_grid", "shots", "seed", "out", "format"}
    opts = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        args.subcommand, list(argv), getattr(args, "code", None), getattr(args, "code_file", None),
        getattr(args, "family", None), getattr(args, "sizes", None), getattr(args, "p_grid", None),
        getattr(args, "shots", None), args.seed, args.out, args.format, opts,
    )


def _flatten(prefix: str, value, rows: List[List[str]]):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append([prefix, json.dumps(value) if isinstance(value, list) else str(value)])


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        public = {k: v for k, v in doc.items() if k != "raw"}
        return json.dumps(public, indent=2, default=str) + "\n"
    result = doc["result"]
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# ftspread {doc['version']}; config: {json.dumps(doc['config'], default=str)}\n")
        if "_csv" in doc.get("raw", {}):
            buf.write(doc["raw"]["_csv"])
            return buf.getvalue()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        rows: List[List[str]] = []
        _flatten("", result, rows)
        w.writerows(rows)
        return buf.getvalue()
    rows = []
    _flatten("", result, rows)
    width = max((len(k) for k, _ in rows), default=0)
    lines = [f"ftspread {doc['version']}  {doc['config']['subcommand']}"]
    lines += [f"{k.ljust(width)}  {v}" for k, v in rows]
    lines += [f"warning: {w}" for w in doc["warnings"]]
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if args.threads is None:
        try:
            args.threads = default_threads()
        except FTSpreadError as exc:
            print(f"ftspread: {exc}", file=sys.stderr)
            return EXIT_USAGE
    warnings: List[str] = []
    try:
        result = COMMANDS[args.subcommand](args, warnings)
    except UsageError as exc:
        print(f"ftspread: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"ftspread: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FTSpreadError, ValueError) as exc:
        print(f"ftspread: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raw = {"_csv": result.pop("_csv")} if isinstance(result, dict) and "_csv" in result else {}
    doc = {"version": __version__, "config": asdict(_config(args, argv)), "result": result, "warnings": warnings}
    text = render({**doc, "raw": raw}, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    passed = result.get("passed", True) if isinstance(result, dict) else True
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
