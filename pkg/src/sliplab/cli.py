"""Command-line interface: ``sliplab <verb> ...``.

Exit codes: 0 the property holds (or the command succeeded), 1 it fails,
2 usage or validation error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .algebra import DEFAULT_CAP, Algebra, idempotents
from .constructions import block_upper, direct_product, matn, scalar_field, tn, triangular, u_dual_numbers, verify_triangulating
from .errors import (
    BlockStructureViolated,
    EnumerationCapExceeded,
    NotLIP,
    NotTriangulating,
    SlipLabError,
)
from .io import parse_algebra, parse_map, parse_module, parse_vectors, serialize_algebra, serialize_map
from .modules import Bimodule
from .slip import decompose_lip_triangular, is_slip, lip_space
from .suite import paper_suite
from .zpd import is_zpd, zpd_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CAP_ENV = "SLIPLAB_CAP"

Report = dict[str, Any]


@dataclass(frozen=True)
class RunConfig:
    enumeration_cap: int = DEFAULT_CAP
    early_stop: bool = True
    output_mode: str = "text"
    timing: bool = False

    def __post_init__(self) -> None:
        if self.enumeration_cap < 1:
            raise ValueError("cap must be at least 1")
        if self.output_mode not in ("text", "json"):
            raise ValueError(f"unknown output mode {self.output_mode!r}")


class UsageError(SlipLabError):
    pass


def _matrix(m) -> list[list[int]]:
    return np.asarray(m, dtype=np.int64).tolist()


def _header(command: str, a: Algebra) -> Report:
    return {"command": command, "algebra": a.name, "p": a.p, "dim": a.dim}


# --- commands ----------------------------------------------------------------
# Each returns (exit code, report); reports are plain dicts in a fixed key order.


def cmd_check_slip(file: str | Path, cfg: RunConfig) -> tuple[int, Report]:
    a = parse_algebra(file)
    r = is_slip(a, cfg.enumeration_cap, cfg.early_stop)
    report = _header("check-slip", a) | {
        "multiplier_dim": r.multiplier_dim,
        "lip_dim": r.lip_dim,
        "is_slip": r.is_slip,
        "witness": _matrix(r.witness.matrix) if r.witness else None,
        "points_processed": r.points_processed,
        "early_stop": r.early_stop,
    }
    return (EXIT_OK if r.is_slip else EXIT_FAIL), report


def cmd_check_zpd(file: str | Path, cfg: RunConfig) -> tuple[int, Report]:
    a = parse_algebra(file)
    r = is_zpd(a, cfg.enumeration_cap, cfg.early_stop)
    witness = None if r.is_zpd else zpd_witness(a, cfg.enumeration_cap)
    report = _header("check-zpd", a) | {
        "span_dim": r.span_dim,
        "kernel_dim": r.kernel_dim,
        "is_zpd": r.is_zpd,
        "witness": None if witness is None else _matrix(witness),
        "points_processed": r.points_processed,
    }
    return (EXIT_OK if r.is_zpd else EXIT_FAIL), report


def cmd_lip_basis(file: str | Path, cfg: RunConfig) -> tuple[int, Report]:
    a = parse_algebra(file)
    space = lip_space(a, cfg.enumeration_cap, cfg.early_stop)
    report = _header("lip-basis", a) | {
        "lip_dim": space.dim,
        "basis": [_matrix(m.matrix) for m in space.maps()],
        "points_processed": space.points_processed,
    }
    return EXIT_OK, report


def cmd_witness(file: str | Path, cfg: RunConfig, map_out: str | None = None) -> tuple[int, Report]:
    a = parse_algebra(file)
    r = is_slip(a, cfg.enumeration_cap, cfg.early_stop)
    if r.witness is not None and map_out:
        Path(map_out).write_text(serialize_map(r.witness), encoding="utf-8")
    report = _header("witness", a) | {
        "is_slip": r.is_slip,
        "witness": _matrix(r.witness.matrix) if r.witness else None,
        "image_of_one": _matrix(r.witness.matrix[:, int(np.flatnonzero(a.unit)[0])]) if r.witness and _is_basis_unit(a) else None,
    }
    return (EXIT_OK if r.is_slip else EXIT_FAIL), report


def _is_basis_unit(a: Algebra) -> bool:
    return int(np.count_nonzero(a.unit)) == 1 and int(a.unit[np.flatnonzero(a.unit)[0]]) == 1


def _idempotent_report(a: Algebra, cfg: RunConfig):
    rep = idempotents(a, cfg.enumeration_cap)
    if rep.truncated:
        raise EnumerationCapExceeded(a.p, a.dim, cfg.enumeration_cap, "idempotents")
    return rep


def cmd_idempotents(file: str | Path, cfg: RunConfig, semicentral: bool = False) -> tuple[int, Report]:
    a = parse_algebra(file)
    rep = _idempotent_report(a, cfg)
    chosen = rep.left_semicentral if semicentral else rep.idempotents
    report = _header("idempotents", a) | {
        "semicentral_only": semicentral,
        "count": len(chosen),
        "idempotents": [_matrix(e.coords) for e in chosen],
    }
    return EXIT_OK, report


def cmd_decompose(file: str | Path, mapfile: str | Path, idem_index: int, cfg: RunConfig) -> tuple[int, Report]:
    a = parse_algebra(file)
    psi = parse_map(mapfile)
    if psi.matrix.shape != (a.dim, a.dim):
        raise UsageError(f"map is {psi.matrix.shape[0]}x{psi.matrix.shape[1]}, algebra has dimension {a.dim}")
    rep = _idempotent_report(a, cfg)
    unit, zero = a.unit.tobytes(), np.zeros(a.dim, dtype=np.int64).tobytes()
    nontrivial = [e for e in rep.left_semicentral if e.coords.tobytes() not in (unit, zero)]
    if not 0 <= idem_index < len(nontrivial):
        raise UsageError(f"idempotent index {idem_index} out of range: {len(nontrivial)} nontrivial left semicentral idempotents")
    e = nontrivial[idem_index]
    report = _header("decompose", a) | {"idempotent": _matrix(e.coords)}
    try:
        dec = decompose_lip_triangular(a, e, psi, cfg.enumeration_cap)
    except NotLIP as exc:
        return EXIT_FAIL, report | {"is_lip": False, "error": str(exc)}
    except BlockStructureViolated as exc:
        return EXIT_FAIL, report | {"is_lip": True, "error": str(exc)}
    report |= {
        "is_lip": True,
        "alpha": _matrix(dec.alpha.matrix),
        "tau": _matrix(dec.tau.matrix),
        "beta1": _matrix(dec.beta1.matrix),
        "beta2": _matrix(dec.beta2.matrix),
        "checks": dict(dec.checks),
        "all_passed": dec.all_passed,
    }
    return (EXIT_OK if dec.all_passed else EXIT_FAIL), report


def _construct(kind: str, params: list[str]) -> Algebra:
    def need(n: int, usage: str) -> None:
        if len(params) != n:
            raise UsageError(f"usage: construct {kind} {usage}")

    def integer(word: str) -> int:
        try:
            return int(word)
        except ValueError:
            raise UsageError(f"expected an integer, got {word!r}") from None

    if kind == "field":
        need(1, "P")
        return scalar_field(integer(params[0]))
    if kind == "u":
        need(1, "P")
        return u_dual_numbers(integer(params[0]))
    if kind in ("matn", "tn"):
        need(2, "BASE N")
        n = integer(params[1])
        if n < 1:
            raise UsageError("N must be positive")
        return (matn if kind == "matn" else tn)(parse_algebra(params[0]), n)
    if kind == "block":
        if len(params) < 2:
            raise UsageError("usage: construct block BASE K1 [K2 ...]")
        sizes = [integer(w) for p in params[1:] for w in p.split(",") if w]
        try:
            return block_upper(parse_algebra(params[0]), sizes)[0]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if kind == "tri":
        need(1, "BIMODULE")
        m = parse_module(params[0])
        if not isinstance(m, Bimodule):
            raise UsageError("tri needs a bimodule file (with a 'left' algebra)")
        return triangular(m.left, m, m.right)[0]
    if kind == "product":
        need(2, "A B")
        return direct_product(parse_algebra(params[0]), parse_algebra(params[1]))
    raise UsageError(f"unknown construction {kind!r}")


def cmd_construct(kind: str, params: list[str], out: str | None) -> tuple[int, Report, str]:
    """Returns the exit code, a report and the serialized algebra."""
    a = _construct(kind, params)
    text = serialize_algebra(a)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    report = _header("construct", a) | {"kind": kind, "output": out}
    return EXIT_OK, report, text


def cmd_verify_triangulating(file: str | Path, idems_file: str | Path, cfg: RunConfig) -> tuple[int, Report]:
    a = parse_algebra(file)
    idems = parse_vectors(idems_file, a.dim, a.p)
    report = _header("verify-triangulating", a) | {"count": len(idems)}
    try:
        verify_triangulating(a, idems)
    except NotTriangulating as exc:
        return EXIT_FAIL, report | {"triangulating": False, "clause": exc.clause, "reason": str(exc)}
    return EXIT_OK, report | {"triangulating": True, "clause": None, "reason": None}


def cmd_paper_suite(cfg: RunConfig) -> tuple[int, Report]:
    result = paper_suite(cfg.enumeration_cap, cfg.early_stop)
    report = {"command": "paper-suite", **result}
    return (EXIT_OK if result["passed"] else EXIT_FAIL), report


# --- rendering ---------------------------------------------------------------


def _is_matrix(v: Any) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in v)


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render_text(report: Report, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if _is_matrix(value):
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  " + " ".join(str(x) for x in row) for row in value]
        elif isinstance(value, list) and value and all(_is_matrix(m) for m in value):
            lines.append(f"{indent}{key}:")
            for t, m in enumerate(value):
                lines.append(f"{indent}  [{t}]")
                lines += [f"{indent}    " + " ".join(str(x) for x in row) for row in m]
        elif isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"{indent}{key}:")
            for row in value:
                if any(isinstance(v, list) and v and isinstance(v[0], dict) for v in row.values()):
                    lines.append(f"{indent}  -")
                    lines.append(render_text(row, indent + "    ").rstrip("\n"))
                else:
                    lines.append(f"{indent}  - " + ", ".join(f"{k}={_scalar(v)}" for k, v in row.items()))
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  {k}: {_scalar(v)}" for k, v in value.items()]
        else:
            lines.append(f"{indent}{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def render(report: Report, mode: str) -> str:
    if mode == "json":
        return json.dumps(report, indent=2) + "\n"
    return render_text(report)


# --- argument handling -------------------------------------------------------


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError(f"{CAP_ENV} must be at least 1")
    return cap


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help=f"enumeration cap in raw elements (default 2^20, or ${CAP_ENV})")
    common.add_argument("--no-early-stop", action="store_true", help="enumerate every point even after the answer is fixed")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("-o", "--output", metavar="FILE", help="write the output to FILE")
    common.add_argument("--timing", action="store_true", help="append wall time to the report (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="sliplab", description="Exact SLIP and zpd decisions for algebras over GF(p).")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    for verb, help_text in (
        ("check-slip", "decide whether every LIP map is a left multiplier"),
        ("check-zpd", "decide whether the algebra is zero product determined"),
        ("lip-basis", "print a basis of the LIP maps"),
    ):
        sp = sub.add_parser(verb, parents=[common], help=help_text)
        sp.add_argument("file")
    sp = sub.add_parser("witness", parents=[common], help="a LIP map that is not a left multiplier")
    sp.add_argument("file")
    sp.add_argument("--map-out", metavar="FILE", help="also write the witness as a map file")
    sp = sub.add_parser("idempotents", parents=[common], help="list idempotents")
    sp.add_argument("file")
    sp.add_argument("--semicentral", action="store_true", help="only left semicentral idempotents")
    sp = sub.add_parser("decompose", parents=[common], help="split a LIP map along a left semicentral idempotent")
    sp.add_argument("file")
    sp.add_argument("mapfile")
    sp.add_argument("--idem", type=int, default=0, help="index among nontrivial left semicentral idempotents")
    sp = sub.add_parser("construct", parents=[common], help="build an algebra file")
    sp.add_argument("kind", choices=["field", "u", "matn", "tn", "block", "tri", "product"])
    sp.add_argument("params", nargs="*")
    sp = sub.add_parser("verify-triangulating", parents=[common], help="check a list of left triangulating idempotents")
    sp.add_argument("file")
    sp.add_argument("idems")
    sub.add_parser("paper-suite", parents=[common], help="rerun the theorem checks on the built-in corpus")
    return parser


def _dispatch(args: argparse.Namespace, cfg: RunConfig) -> tuple[int, Report, str | None]:
    """Returns (code, report, algebra text); the text is only set by ``construct``."""
    verb = args.verb
    handlers: dict[str, Callable[[], tuple[int, Report]]] = {
        "check-slip": lambda: cmd_check_slip(args.file, cfg),
        "check-zpd": lambda: cmd_check_zpd(args.file, cfg),
        "lip-basis": lambda: cmd_lip_basis(args.file, cfg),
        "witness": lambda: cmd_witness(args.file, cfg, args.map_out),
        "idempotents": lambda: cmd_idempotents(args.file, cfg, args.semicentral),
        "decompose": lambda: cmd_decompose(args.file, args.mapfile, args.idem, cfg),
        "verify-triangulating": lambda: cmd_verify_triangulating(args.file, args.idems, cfg),
        "paper-suite": lambda: cmd_paper_suite(cfg),
    }
    if verb == "construct":
        return cmd_construct(args.kind, args.params, args.output)
    code, report = handlers[verb]()
    return code, report, None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    started = time.perf_counter()
    try:
        cap = args.cap if args.cap is not None else _default_cap()
        if cap < 1:
            raise UsageError("--cap must be at least 1")
        cfg = RunConfig(cap, not args.no_early_stop, "json" if args.json else "text", args.timing)
        code, report, raw = _dispatch(args, cfg)
    except EnumerationCapExceeded as exc:
        print(f"sliplab: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SlipLabError, OSError, ValueError) as exc:
        print(f"sliplab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.timing:
        report["wall_time_s"] = round(time.perf_counter() - started, 6)
    if args.verb == "construct":
        # the algebra file went to -o already; otherwise it is the output
        text = raw if not (args.output or cfg.output_mode == "json") else render(report, cfg.output_mode)
        target = None
    else:
        text = render(report, cfg.output_mode)
        target = args.output
    try:
        if target:
            Path(target).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"sliplab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
