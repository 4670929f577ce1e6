"""Batch front-end: validate weights, compute lambda0, check operators,
run probe searches and evolutions, emit JSON/CSV reports.

Exit codes: 0 verdict computed (whatever the verdict), 2 configuration or
parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import configio
from .configio import ConfigError
from .criterion import MatrixField, check_operator, form_min_eig, lambda0
from .errors import FdchkError, ParseError
from .grids import GridDomain, GridField
from .orlicz import AuxBundle, PhiSpec, validate_phi
from .pde import ProbeFamily, dissipativity_integral, evolve, probe_search, sine_product

TOLERANCES = {
    "margin_slack": 1e-9,
    "quadrature_abs": 1e-12,
    "quadrature_rel": 1e-10,
    "inversion_rel": 1e-12,
    "luxemburg_bracket_rel": 1e-10,
    "solver_rtol": 1e-12,
}


def _timestamp(args) -> str:
    return None if args.no_timestamp else \
        datetime.now(timezone.utc).isoformat(timespec="seconds")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _phi_spec(args) -> tuple:
    """(PhiSpec, config dict or None, config hash or None) from the flags."""
    if args.phi:
        return configio.phi_from_cli_spec(args.phi), None, None
    if args.config:
        config, digest = configio.load_config(args.config)
        return configio.phi_from_config(config), config, digest
    raise ConfigError("provide --phi builtin:NAME or --config FILE")


def _report(args, command, payload, *, config_hash=None, provenance=None):
    return configio.json_report(command, payload, config_hash=config_hash,
                                seed=getattr(args, "seed", None),
                                timestamp=_timestamp(args),
                                extra_provenance=provenance)


def cmd_phi_validate(args) -> int:
    spec, _, digest = _phi_spec(args)
    report = validate_phi(spec)
    if args.format == "text":
        lines = [f"{name}: {'PASS' if c.passed else 'FAIL'}  ({c.detail})"
                 for name, c in report.conditions.items()]
        lines.append(f"overall: {'PASS' if report.all_passed else 'FAIL'}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _report(args, "phi-validate",
                            {"phi": spec.to_dict(), **report.to_dict()},
                            config_hash=digest,
                            provenance={"tolerances": TOLERANCES}))
    return 0


def cmd_phi_lambda0(args) -> int:
    spec, _, digest = _phi_spec(args)
    res = lambda0(AuxBundle(spec))
    if args.format == "text":
        _emit(args, ("inf" if not res.is_finite else f"{res.value:.10g}") + "\n")
    else:
        payload = {"phi": spec.to_dict(), "lambda0": res.value,
                   "attained_s": res.attained_s, "reason": res.reason,
                   "tail_limits": list(res.tail_limits),
                   "search_window": list(res.search_window)}
        _emit(args, _report(args, "phi-lambda0", payload, config_hash=digest,
                            provenance={"tolerances": TOLERANCES}))
    return 0


def cmd_op_check(args) -> int:
    config, digest = configio.load_config(args.config)
    spec = configio.phi_from_config(config)
    field = configio.matrix_from_config(config)
    sampling = configio.sampling_from_config(config, seed=args.seed)
    report = check_operator(field, AuxBundle(spec), sampling)
    if args.format == "text":
        lines = [f"verdict: {report.verdict}",
                 f"lambda0: {report.lambda0}",
                 f"worst_margin: {report.worst_margin}",
                 f"kappa: {report.kappa}",
                 f"im_symmetric: {report.im_symmetric}"]
        _emit(args, "\n".join(lines) + "\n")
    else:
        provenance = {"tolerances": TOLERANCES,
                      "sampling": {"nx": sampling.nx,
                                   "n_directions": sampling.n_directions,
                                   "t_num": sampling.t_num,
                                   "s_num": sampling.s_num}}
        _emit(args, _report(args, "op-check",
                            {"phi": spec.to_dict(), **report.to_dict()},
                            config_hash=digest, provenance=provenance))
    return 0


def _probe_families(config: dict) -> list:
    table = config.get("probe", {})
    names = table.get("families")
    if names is None:
        names = [table.get("family", "log_phase")]
    params = table.get("params", {})
    return [ProbeFamily(str(name), dict(params)) for name in names], table


def cmd_op_probe(args) -> int:
    config, digest = configio.load_config(args.config)
    spec = configio.phi_from_config(config)
    field = configio.matrix_from_config(config)
    domain = configio.domain_from_config(config, args.grid)
    families, table = _probe_families(config)
    budget = args.budget if args.budget is not None else int(table.get("budget", 2000))
    seed = args.seed if args.seed is not None else int(table.get("seed", 0))
    result = probe_search(field, AuxBundle(spec), families, domain,
                          budget=budget, seed=seed)
    if args.tol is not None:
        result = dataclasses.replace(
            result, certified_violation=bool(result.best_value >= args.tol))
    if args.format == "text":
        _emit(args, f"best_value: {result.best_value}\n"
                    f"certified_violation: {result.certified_violation}\n"
                    f"family: {result.family}\nparams: {result.params}\n")
    else:
        payload = result.to_dict()
        payload["phi"] = spec.to_dict()
        payload["grid"] = {"lengths": list(domain.lengths),
                           "nodes": list(domain.nodes)}
        _emit(args, _report(args, "op-probe", payload, config_hash=digest,
                            provenance={"budget": budget,
                                        "tolerances": TOLERANCES}))
    return 0


def cmd_evolve(args) -> int:
    config, digest = configio.load_config(args.config)
    spec = configio.phi_from_config(config)
    field = configio.matrix_from_config(config)
    domain = configio.domain_from_config(config, args.grid)
    u0 = configio.initial_field(config, domain)
    time_table = config.get("time", {})
    dt = float(time_table.get("dt", 1e-3))
    steps = int(time_table.get("steps", 100))
    rtol = args.tol if args.tol is not None else TOLERANCES["solver_rtol"]
    traj = evolve(field, AuxBundle(spec), u0, dt, steps, rtol=rtol)
    if args.format == "csv":
        buf = io.StringIO()
        traj.write_csv(buf)
        _emit(args, buf.getvalue())
    elif args.format == "text":
        mono = bool(np.all(np.diff(traj.orlicz) <= 1e-12))
        _emit(args, f"steps: {steps}\nfinal_l2: {traj.l2[-1]}\n"
                    f"final_orlicz: {traj.orlicz[-1]}\n"
                    f"orlicz_nonincreasing: {mono}\n")
    else:
        payload = {"phi": spec.to_dict(), "dt": dt, "steps": steps,
                   "grid": {"lengths": list(domain.lengths),
                            "nodes": list(domain.nodes)},
                   "times": traj.times, "orlicz_integral": traj.orlicz,
                   "luxemburg_norm": traj.luxemburg, "l2_norm": traj.l2}
        _emit(args, _report(args, "evolve", payload, config_hash=digest,
                            provenance={"solver_rtol": rtol,
                                        "tolerances": TOLERANCES}))
    return 0


def cmd_examples(args) -> int:
    """Regenerate the worked-example reproductions into a directory."""
    outdir = args.out or "fdchk-examples"
    os.makedirs(outdir, exist_ok=True)

    # lambda0 table for the builtin weight catalog
    table = []
    targets = {
        ("power", 1.5): 0.5 / (2.0 * 0.5 ** 0.5),
        ("power", 2.0): 0.0,
        ("power", 3.0): 1.0 / (2.0 * 2.0 ** 0.5),
        ("power", 4.0): 1.0 / 3.0 ** 0.5,
        ("power", 10.0): 8.0 / (2.0 * 3.0),
        ("ratio4", None): 1.0 / 3.0 ** 0.5,
        ("ratio_log", None): 2.0 / 5.0 ** 0.5,
        ("zygmund", 3.0): None,
        ("exp_power", 1.0): np.inf,
        ("exp_power", 2.0): np.inf,
        ("arctan_def", None): np.inf,
    }
    for (name, p), target in targets.items():
        spec = PhiSpec.builtin(name, **({"p": p} if p is not None else {}))
        res = lambda0(AuxBundle(spec))
        table.append({"phi": name, "p": p, "lambda0": res.value,
                      "expected": target, "reason": res.reason})
    with open(os.path.join(outdir, "lambda0_table.json"), "w") as fh:
        fh.write(_report(args, "examples/lambda0-table", {"table": table}))

    # constant skew-Im coupling: block form fails while the operator is the
    # Laplacean (insensitive to the skew part on real fields)
    rows = []
    for gam in (0.5, 1.0, 2.0):
        a = np.array([[1.0, 1j * gam], [-1j * gam, 1.0]])
        rows.append({"gamma": gam, "form_min_eig": form_min_eig(a, 0.0),
                     "expected": 1.0 - abs(gam)})
    dom = GridDomain((1.0, 1.0), (48, 48))
    aux = AuxBundle(PhiSpec.builtin("ratio4"))
    u = GridField(dom, sine_product(dom, (2, 1)) + 0.3 * sine_product(dom, (1, 2)))
    ref = dissipativity_integral(np.eye(2), u, aux)
    skew = dissipativity_integral(np.array([[1.0, 2j], [-2j, 1.0]]), u, aux)
    payload51 = {"form_rows": rows,
                 "laplacean_check": {"identity": ref, "skew_gamma2": skew,
                                     "relative_gap": abs(ref - skew) / abs(ref)}}
    with open(os.path.join(outdir, "example_5_1.json"), "w") as fh:
        fh.write(_report(args, "examples/example-5-1", payload51))

    # variable antisymmetric Im coupling: pointwise test passes yet a plane
    # phase probe certifies the violation
    field = MatrixField.from_strings(
        [[("1", "0"), ("0", "9*x1")], [("0", "-9*x1"), ("1", "0")]])
    aux1 = AuxBundle(PhiSpec.custom("1", "0", r=0.0))
    op_report = check_operator(field, aux1)
    dom = GridDomain((1.0, 1.0), (128, 128))
    _, x2 = dom.node_mesh()
    probe = GridField(dom, sine_product(dom) * np.exp(-1j * 4.5 * x2))
    flux = dissipativity_integral(field, probe, aux1)
    payload61 = {"criterion": op_report.to_dict(),
                 "probe": {"phase_speed": -4.5, "grid": list(dom.nodes),
                           "flux_integral": flux, "violation": -flux,
                           "expected_violation": float(-np.pi ** 2 / 2 + 81.0 / 16.0)}}
    with open(os.path.join(outdir, "example_6_1.json"), "w") as fh:
        fh.write(_report(args, "examples/example-6-1", payload61))

    sys.stdout.write(f"wrote 3 reports to {outdir}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdchk",
        description="functional-dissipativity checker for divergence-form "
                    "operators with complex coefficients")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, config_required=False, phi_flag=False, formats=("json", "text")):
        if phi_flag:
            p.add_argument("--phi", help="builtin:NAME[:k=v,...] weight shorthand")
            p.add_argument("--config", help="TOML config with a [phi] table")
        else:
            p.add_argument("--config", required=config_required,
                           help="TOML config path")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the timestamp for byte-identical reports")

    p = sub.add_parser("phi-validate", help="check the weight admissibility conditions")
    common(p, phi_flag=True)
    p.set_defaults(func=cmd_phi_validate)

    p = sub.add_parser("phi-lambda0", help="compute the criterion constant lambda0")
    common(p, phi_flag=True, formats=("text", "json"))
    p.set_defaults(func=cmd_phi_lambda0)

    p = sub.add_parser("op-check", help="algebraic dissipativity verdict")
    common(p, config_required=True)
    p.set_defaults(func=cmd_op_check)

    p = sub.add_parser("op-probe", help="search probe families for violations")
    common(p, config_required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--grid", help="override grid size, e.g. 96x96")
    p.add_argument("--tol", type=float, default=None,
                   help="override the violation certification threshold")
    p.set_defaults(func=cmd_op_probe)

    p = sub.add_parser("evolve", help="backward-Euler semigroup trajectory")
    common(p, config_required=True, formats=("csv", "json", "text"))
    p.add_argument("--grid", help="override grid size, e.g. 64x64")
    p.add_argument("--tol", type=float, default=None,
                   help="override the linear-solver relative residual")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("examples",
                       help="regenerate the worked-example reproductions")
    p.add_argument("--out", help="output directory (default fdchk-examples)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timestamp", action="store_true")
    p.set_defaults(func=cmd_examples, format="json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParseError) as exc:
        print(f"fdchk: config error: {exc}", file=sys.stderr)
        return 2
    except FdchkError as exc:
        print(f"fdchk: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"fdchk: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
