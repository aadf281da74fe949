"""Command-line frontend.

Every subcommand reads JSON files and prints one canonical JSON report
(sorted keys, scalars as strings).  Exit status: 0 on success, 1 on a
domain error (an ``{"error": ...}`` object is printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures, oracle
from .algebra import EvolutionAlgebra, idempotent_natural_elements
from .autgroup import ELEMENT_LIST_CAP, automorphism_group, check_automorphism, rho_tilde
from .errors import CapExceededError, EvokitError, ParseError
from .field import FieldSpec
from .permgroup import PermGroup, transitivity_degree
from .realize import LabeledGraph, builtin_graph, verify_realization

SUBCOMMANDS = ("aut", "idem", "rho", "rho-tilde", "transitivity", "realize", "verify", "gen", "oracle")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    field: FieldSpec | None = None
    oracle_check: bool = False
    output: str | None = None
    max_dim: int = 12
    oracle_max_p: int = oracle.MAX_PRIME
    oracle_max_dim: int = oracle.MAX_DIM
    element_cap: int = ELEMENT_LIST_CAP

    def __post_init__(self):
        for name in ("max_dim", "oracle_max_p", "oracle_max_dim", "element_cap"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")


def dumps(obj) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _load_algebra(cfg: RunConfig) -> EvolutionAlgebra:
    X = EvolutionAlgebra.from_json(_load_json(cfg.inputs[0]), cfg.field)
    if X.dim > cfg.max_dim:
        raise CapExceededError(f"dimension {X.dim} exceeds --max-dim {cfg.max_dim}")
    return X


def _parse_list(text: str) -> list[str]:
    return [t for t in text.replace(" ", "").split(",") if t]


def cmd_aut(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    A = automorphism_group(X)
    report = A.report(cfg.element_cap)
    if cfg.oracle_check:
        report["oracle_check"] = oracle.cross_check(X, cfg.oracle_max_dim, cfg.oracle_max_p)
    return report


def cmd_idem(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    norm = idempotent_natural_elements(X)
    return {
        "idempotent": True,
        "determinant": X.field.format_scalar(X.determinant),
        "m": norm.m,
        "idempotent_indices": [i + 1 for i in norm.idempotent_indices],
        "scale": [X.field.format_scalar(x) for x in norm.scale],
        "algebra": norm.algebra.to_json(),
    }


def cmd_rho(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    A = automorphism_group(X)
    try:
        k = transitivity_degree(A.image)
    except CapExceededError:
        k = None
    return {
        "n": X.dim,
        "image_order": A.image.order(),
        "image_generators": A.image.to_json()["generators"],
        "faithful": A.faithful,
        "full": A.full,
        "transitivity_degree": k,
    }


def cmd_rho_tilde(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    G = rho_tilde(X)
    return {"m": G.degree, "order": G.order(), "generators": G.to_json()["generators"]}


def cmd_transitivity(cfg: RunConfig, args) -> dict:
    G = PermGroup.from_json(_load_json(cfg.inputs[0]))
    return {"degree": transitivity_degree(G)}


def cmd_realize(cfg: RunConfig, args) -> dict:
    g = LabeledGraph.from_json(_load_json(cfg.inputs[0]))
    return verify_realization(g, cfg.field or FieldSpec.rationals()).to_json()


def cmd_verify(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    try:
        sigma = [int(t) - 1 for t in _parse_list(args.sigma)]
        lam = [X.field.parse_scalar(t) for t in _parse_list(args.lam)]
    except ValueError as exc:
        raise UsageError(f"bad --sigma/--lambda: {exc}") from None
    try:
        ok = check_automorphism(X, sigma, lam)
    except ValueError as exc:
        raise EvokitError(str(exc)) from None
    return {"automorphism": ok}


def cmd_gen(cfg: RunConfig, args) -> dict:
    f = cfg.field or FieldSpec.rationals()
    fam, params = args.family, args.params
    try:
        if fam == "identity":
            (n,) = params
            return fixtures.identity(int(n), f).to_json()
        if fam == "const":
            n, a, b = params
            return fixtures.const(int(n), f.parse_scalar(a), f.parse_scalar(b), f).to_json()
        if fam == "swap2" and not params:
            return fixtures.swap2(f).to_json()
        if fam in ("cycle", "complete"):
            (n,) = params
            return (fixtures.cycle_algebra if fam == "cycle" else fixtures.complete_algebra)(int(n), f).to_json()
        if fam in ("cycle-graph", "complete-graph"):
            (n,) = params
            return builtin_graph(fam.split("-")[0], int(n)).to_json()
    except ValueError as exc:
        if isinstance(exc, EvokitError):
            raise
        raise UsageError(f"bad parameters for {fam}: {exc}") from None
    raise UsageError(f"unknown family or wrong parameter count: {fam} {' '.join(params)}")


def cmd_oracle(cfg: RunConfig, args) -> dict:
    X = _load_algebra(cfg)
    brute = oracle.brute_force_automorphisms(X, cfg.oracle_max_dim, cfg.oracle_max_p)
    out = {
        "order": len(brute),
        "cross_check": oracle.cross_check(X, cfg.oracle_max_dim, cfg.oracle_max_p),
    }
    if len(brute) <= cfg.element_cap:
        out["elements"] = [a.to_json(X.field) for a in brute]
    return out


COMMANDS = {
    "aut": cmd_aut,
    "idem": cmd_idem,
    "rho": cmd_rho,
    "rho-tilde": cmd_rho_tilde,
    "transitivity": cmd_transitivity,
    "realize": cmd_realize,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='override the ground field: "Q" or "GF(p)"')
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--oracle-check", action="store_true", help="cross-check against brute force (GF(p) only)")
    common.add_argument("--max-dim", type=int, default=12)
    common.add_argument("--oracle-max-p", type=int, default=oracle.MAX_PRIME)
    common.add_argument("--oracle-max-dim", type=int, default=oracle.MAX_DIM)
    common.add_argument("--element-cap", type=int, default=ELEMENT_LIST_CAP)

    parser = argparse.ArgumentParser(prog="evokit", description="Automorphisms of evolution algebras.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_ in [
        ("aut", "automorphism group report"),
        ("idem", "idempotent natural elements and normalized algebra"),
        ("rho", "permutation action on basis indices"),
        ("rho-tilde", "permutation action on idempotent natural elements"),
        ("oracle", "brute-force automorphisms over GF(p)"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("algebra")
    sp = sub.add_parser("transitivity", parents=[common], help="transitivity degree of a group file")
    sp.add_argument("group")
    sp = sub.add_parser("realize", parents=[common], help="build and verify the algebra of a graph file")
    sp.add_argument("graph")
    sp = sub.add_parser("verify", parents=[common], help="check one weighted permutation")
    sp.add_argument("algebra")
    sp.add_argument("--sigma", required=True, help="1-based images, e.g. 2,1")
    sp.add_argument("--lambda", dest="lam", required=True, help="scalars, e.g. 2,4")
    sp = sub.add_parser("gen", parents=[common], help="emit a fixture algebra or graph")
    sp.add_argument(
        "family", help="identity N | const N A B | swap2 | cycle N | complete N | cycle-graph N | complete-graph N"
    )
    sp.add_argument("params", nargs="*")
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = [getattr(args, k) for k in ("algebra", "group", "graph") if getattr(args, k, None)]
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            inputs=inputs,
            field=FieldSpec.parse(args.field) if args.field else None,
            oracle_check=args.oracle_check,
            output=args.output,
            max_dim=args.max_dim,
            oracle_max_p=args.oracle_max_p,
            oracle_max_dim=args.oracle_max_dim,
            element_cap=args.element_cap,
        )
        report = COMMANDS[cfg.subcommand](cfg, args)
    except (UsageError, ParseError) as exc:
        print(f"evokit {args.subcommand}: {exc}", file=sys.stderr)
        return 2
    except EvokitError as exc:
        stdout.write(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1
    text = dumps(report)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
