"""Command-line interface.

Commands:

    bracket universal <e1> <e2>
    bracket qc <e1> <e2> [--hbar SYM|RAT]
    rep qq <e> [--h1 RAT] [--h2 RAT]
    rep qc <e>
    mechanise <classical-expr> [--rule NAME]
    heff <h1> <h2>
    oracle check [--seed N]
    calibrate [--out PATH]
    verify paper [--seed N]

Global flags (before or after the command): --json for machine-readable
output, --signature n=<dof> to size the group, --config <path> for a stored
configuration (the PBRACKET_CONFIG environment variable is the fallback).

Exit codes: 0 on success, 1 when a verification or computation fails, 2 on
usage or expression-parse errors.

Expression arguments accept both classical phase-space polynomials (q1, p2,
...) and delta kernels (delta[x1,y1]); classical inputs to bracket and rep
commands are mechanised with the default rule first.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .errors import ExprError, PBracketError, UnknownRule
from .config import EngineConfig, resolve_config
from .expressions import evaluate
from .group_algebra import Element, element_to_json
from .pmech import mechanise_plugin, universal_bracket
from .representations import rep_qc, rep_qq
from .qc_bracket import h_eff, qc_bracket
from .oracle import oracle_check
from .calibration import calibration_report
from .verify import run_verify
from .config import save_config

__all__ = ["main", "build_parser"]

_DEFAULT_SEED = 2024


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit machine-readable JSON")
    common.add_argument("--signature", metavar="n=DOF", default=argparse.SUPPRESS,
                        help="degrees of freedom per sector, e.g. n=2")
    common.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS,
                        help="configuration file (overrides PBRACKET_CONFIG)")

    parser = argparse.ArgumentParser(
        prog="pbracket", parents=[common],
        description="Convolution-algebra bracket engine for coupled "
                    "quantum-quantum and quantum-classical systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    bracket = sub.add_parser("bracket", parents=[common],
                             help="universal or quantum-classical bracket")
    bsub = bracket.add_subparsers(dest="variant", required=True)
    b_uni = bsub.add_parser("universal", parents=[common])
    b_uni.add_argument("e1")
    b_uni.add_argument("e2")
    b_qc = bsub.add_parser("qc", parents=[common])
    b_qc.add_argument("e1")
    b_qc.add_argument("e2")
    b_qc.add_argument("--hbar", default=None, metavar="SYM|RAT",
                      help="substitute a rational value, or 'sym' to keep symbolic")

    rep = sub.add_parser("rep", parents=[common],
                         help="represent an observable on the operator side")
    rsub = rep.add_subparsers(dest="variant", required=True)
    r_qq = rsub.add_parser("qq", parents=[common])
    r_qq.add_argument("expr")
    r_qq.add_argument("--h1", default=None, metavar="RAT")
    r_qq.add_argument("--h2", default=None, metavar="RAT")
    r_qc = rsub.add_parser("qc", parents=[common])
    r_qc.add_argument("expr")

    mech = sub.add_parser("mechanise", parents=[common],
                          help="classical polynomial to convolution kernel")
    mech.add_argument("expr")
    mech.add_argument("--rule", default="weyl")

    heff_p = sub.add_parser("heff", parents=[common],
                            help="effective Planck constant of the composite")
    heff_p.add_argument("h1")
    heff_p.add_argument("h2")

    oracle = sub.add_parser("oracle", parents=[common],
                            help="independent numerical cross-checks")
    osub = oracle.add_subparsers(dest="variant", required=True)
    o_check = osub.add_parser("check", parents=[common])
    o_check.add_argument("--seed", type=int, default=_DEFAULT_SEED)

    cal = sub.add_parser("calibrate", parents=[common],
                         help="search the convention-tuple space")
    cal.add_argument("--out", default=None, metavar="PATH",
                     help="write the chosen tuple as a configuration file")

    ver = sub.add_parser("verify", parents=[common],
                         help="run the full verification suite")
    vsub = ver.add_subparsers(dest="variant", required=True)
    v_paper = vsub.add_parser("paper", parents=[common])
    v_paper.add_argument("--seed", type=int, default=_DEFAULT_SEED)

    return parser


# ---------------------------------------------------------------------------
# argument coercion helpers


def _fraction_arg(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"{what} must be a rational number, got {text!r}") from exc


def _optional_fraction(text: Optional[str], what: str) -> Optional[Fraction]:
    return None if text is None else _fraction_arg(text, what)


def _hbar_arg(text: Optional[str]) -> Optional[Fraction]:
    if text is None or text in ("sym", "h"):
        return None
    return _fraction_arg(text, "--hbar")


def _signature_dof(text: str) -> int:
    head, sep, tail = text.partition("=")
    if head.strip() != "n" or not sep:
        raise _UsageError(f"--signature expects n=<dof>, got {text!r}")
    try:
        dof = int(tail)
    except ValueError:
        raise _UsageError(f"--signature expects an integer dof, got {tail!r}") from None
    if dof < 1:
        raise _UsageError("--signature dof must be positive")
    return dof


def _element_arg(text: str, sig) -> Element:
    result = evaluate(text, sig)
    if result.kind == "classical":
        return mechanise_plugin(sig, result.value)
    return result.value


def _emit(ns: argparse.Namespace, payload, text: str) -> None:
    if ns.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# command handlers


def _cmd_bracket(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    sig = cfg.signature()
    k1 = _element_arg(ns.e1, sig)
    k2 = _element_arg(ns.e2, sig)
    if ns.variant == "universal":
        result = universal_bracket(k1, k2)
        _emit(ns, result.to_json(), str(result))
        return 0
    hbar = _hbar_arg(ns.hbar)
    result = qc_bracket(rep_qc(k1), rep_qc(k2), hbar=hbar)
    _emit(ns, result.to_json(), str(result))
    return 0


def _cmd_rep(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    sig = cfg.signature()
    k = _element_arg(ns.expr, sig)
    if ns.variant == "qq":
        result = rep_qq(k,
                        h1=_optional_fraction(ns.h1, "--h1"),
                        h2=_optional_fraction(ns.h2, "--h2"))
    else:
        result = rep_qc(k)
    _emit(ns, result.to_json(), str(result))
    return 0


def _cmd_mechanise(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    sig = cfg.signature()
    result = evaluate(ns.expr, sig)
    if result.kind != "classical":
        raise _UsageError("mechanise expects a classical phase-space expression")
    try:
        element = mechanise_plugin(sig, result.value, rule=ns.rule)
    except UnknownRule as exc:
        raise _UsageError(str(exc)) from exc
    _emit(ns, element_to_json(element), str(element))
    return 0


def _cmd_heff(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    value = h_eff(_fraction_arg(ns.h1, "h1"), _fraction_arg(ns.h2, "h2"))
    _emit(ns, {"h_eff": [value.numerator, value.denominator]}, str(value))
    return 0


def _cmd_oracle(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    reports = oracle_check(ns.seed, sig=cfg.signature())
    if ns.json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(f"{r.status:4s} {r.check} (max error {r.max_abs_error:.3e}, "
                  f"inputs-hash {r.inputs_hash})")
    return 0 if all(r.ok for r in reports) else 1


def _cmd_calibrate(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    report = calibration_report(cfg.dof)
    if ns.out:
        save_config(EngineConfig(report.chosen, cfg.dof), ns.out)
    _emit(ns, report.to_json(), report.render())
    return 0


def _cmd_verify(ns: argparse.Namespace, cfg: EngineConfig) -> int:
    report = run_verify(seed=ns.seed, config=cfg)
    _emit(ns, report.to_json(), report.render())
    return 0 if report.ok else 1


_HANDLERS = {
    "bracket": _cmd_bracket,
    "rep": _cmd_rep,
    "mechanise": _cmd_mechanise,
    "heff": _cmd_heff,
    "oracle": _cmd_oracle,
    "calibrate": _cmd_calibrate,
    "verify": _cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    defaults = argparse.Namespace(json=False, signature=None, config=None)
    try:
        ns = parser.parse_args(argv, namespace=defaults)
    except SystemExit as exc:
        # argparse exits on usage errors (and on --help); keep main returning
        return int(exc.code or 0)

    try:
        cfg = resolve_config(ns.config)
        if ns.signature is not None:
            cfg = EngineConfig(cfg.convention, _signature_dof(ns.signature))
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot load configuration: {exc}", file=sys.stderr)
        return 2

    try:
        return _HANDLERS[ns.command](ns, cfg)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PBracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
