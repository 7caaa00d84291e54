"""Command-line surface: one subcommand per workflow.

Exit codes are a stable contract: 0 success/verified, 1 verification
failure, 2 usage or validation error, 3 hypothesis unmet, 4 numerical
failure.  Flags mirror the config-file keys one-to-one and override them.
All subcommands are deterministic for fixed flags and seeds.
"""

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .geometry import DiskFamilyRegion, RelBound, SpectrumModel, \
    boundary_polyline, polyline_to_csv, prior_hull_height, region_to_json
from .operators import KreinPerturbationProblem
from .reporting import ConfigError, RunConfig, RunRecord, artifact_version, \
    finalize_record, load_config, matrix_from_json, normalize_config, \
    write_csv, write_json, write_report
from .sturm_liouville import Potential, QuadratureError, TAU0_UPPER_BOUND, \
    bst_region, containment_report, discretize, extremizer_probe, \
    indicator_probe, sl_constants, tau0_hilbert_form
from .verification import HypothesisUnmetError, random_block_operator, \
    random_krein_problem, trial_seeds, verify_block_theorem, verify_tmain

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3
EXIT_NUMERICAL = 4


def _add_schema_flags(sub, command):
    from .reporting import COMMAND_SCHEMAS
    for key, (tname, default, desc, _check) in COMMAND_SCHEMAS[command].items():
        flag = "--" + key.replace("_", "-")
        kwargs = {"default": None, "dest": key}
        if tname == "int":
            kwargs["type"] = int
        elif tname == "float":
            kwargs["type"] = float
        elif tname == "bool":
            kwargs["action"] = "store_true"
            kwargs["default"] = None
        if desc:
            kwargs["help"] = f"({tname}; {desc}; default {default})"
        else:
            kwargs["help"] = f"({tname}; default {default})"
        sub.add_argument(flag, **kwargs)


def _resolve_config(args, command) -> RunConfig:
    from .reporting import COMMAND_SCHEMAS
    file_params = {}
    if args.config is not None:
        file_params = dict(load_config(args.config, command).params)
    for key in COMMAND_SCHEMAS[command]:
        value = getattr(args, key, None)
        if value is not None:
            file_params[key] = value
    return normalize_config(command, file_params)


def _record_for(config: RunConfig) -> RunRecord:
    return RunRecord(config={"command": config.command, **config.params})


def cmd_region(args) -> int:
    config = _resolve_config(args, "region")
    p = config.params
    record = _record_for(config)
    out = Path(p["out"])
    window = None
    if p["re_min"] is not None or p["re_max"] is not None:
        window = (p["re_min"] if p["re_min"] is not None else -math.inf,
                  p["re_max"] if p["re_max"] is not None else math.inf)

    if p["kind"] == "hull":
        bound = RelBound(p["a"], p["b"])
        pts = boundary_polyline(bound, p["resolution"], re_window=window)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(polyline_to_csv(pts), encoding="utf-8")
        record.register(out)
        if p["overlay_prior"]:
            xs = np.array([z.real for z in pts])
            prior = [complex(x, y) for x, y in zip(xs, prior_hull_height(bound, xs))]
            prior_path = out.with_name(out.stem + "_prior.csv")
            prior_path.write_text(polyline_to_csv(prior), encoding="utf-8")
            record.register(prior_path)
        finalize_record(record, out.parent)
        return EXIT_OK

    gamma = p["gamma"]
    if p["centers"] == "half-line-below":
        centers = SpectrumModel.half_line_below(gamma)
    elif p["centers"] == "half-line-above":
        centers = SpectrumModel.half_line_above(gamma)
    elif gamma == 0.0:
        centers = SpectrumModel.from_points([0.0])
    else:
        centers = SpectrumModel.interval(-gamma, gamma)
    region = DiskFamilyRegion(RelBound(p["a"], p["b"]), centers,
                              radius_scale=p["radius_scale"])
    pts = boundary_polyline(region, p["resolution"], re_window=window)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(polyline_to_csv(pts), encoding="utf-8")
    record.register(out)
    region_path = out.with_name(out.stem + "_region.json")
    write_json(region_path, region_to_json(region))
    record.register(region_path)
    finalize_record(record, out.parent)
    return EXIT_OK


def _matrix_lab_trial(payload):
    index, seed, max_dim, lambda_samples = payload
    block = random_block_operator(seed, max_dim=max_dim)
    report = verify_block_theorem(block, lambda_samples=lambda_samples, seed=seed)
    summary = report.to_json()
    summary["trial"] = index
    summary["seed"] = seed
    return summary


def cmd_matrix_lab(args) -> int:
    config = _resolve_config(args, "matrix-lab")
    p = config.params
    record = _record_for(config)
    seeds = trial_seeds(p["seed"], p["trials"])
    payloads = [(i, s, p["max_dim"], p["lambda_samples"])
                for i, s in enumerate(seeds)]
    if p["jobs"] > 1:
        with ProcessPoolExecutor(max_workers=p["jobs"]) as pool:
            summaries = list(pool.map(_matrix_lab_trial, payloads))
    else:
        summaries = [_matrix_lab_trial(pl) for pl in payloads]

    failing = [s for s in summaries if not s["verified"]]
    aggregate = {
        "trials": p["trials"],
        "rootSeed": p["seed"],
        "nonrealTotal": sum(s["checks"]["nonrealCount"] for s in summaries),
        "failures": len(failing),
        "failingSeeds": [s["seed"] for s in failing],
        "verified": not failing,
    }
    report_path = Path(p["report"])
    write_report(record, {"aggregate": aggregate, "trials": summaries},
                 report_path)
    finalize_record(record, report_path.parent)
    for s in failing:
        print(f"FAIL trial {s['trial']} seed {s['seed']}", file=sys.stderr)
    print(f"matrix-lab: {p['trials']} trials, "
          f"{aggregate['nonrealTotal']} non-real eigenvalues, "
          f"{len(failing)} failures")
    return EXIT_OK if not failing else EXIT_VERIFICATION


def _perturb_trial(payload):
    index, seed, max_dim, tau = payload
    problem = random_krein_problem(seed, max_dim=max_dim)
    summary = verify_tmain(problem, tau=tau).to_json()
    summary["trial"] = index
    summary["seed"] = seed
    return summary


def cmd_perturb(args) -> int:
    config = _resolve_config(args, "perturb")
    p = config.params
    record = _record_for(config)
    tau = p["tau"]
    reports = []
    if p["problem"] is not None:
        payload = json.loads(Path(p["problem"]).read_text(encoding="utf-8"))
        problem = KreinPerturbationProblem(
            signature=np.asarray(payload["signature"], dtype=float),
            a0=matrix_from_json(payload["A0"]),
            v=matrix_from_json(payload["V"]))
        rep = verify_tmain(problem, tau=tau)
        summary = rep.to_json()
        summary["trial"] = 0
        reports.append(summary)
    else:
        payloads = [(i, seed, p["max_dim"], tau)
                    for i, seed in enumerate(trial_seeds(p["seed"], p["trials"]))]
        if p["jobs"] > 1:
            with ProcessPoolExecutor(max_workers=p["jobs"]) as pool:
                reports = list(pool.map(_perturb_trial, payloads))
        else:
            reports = [_perturb_trial(pl) for pl in payloads]
    failing = [s for s in reports if not s["verified"]]
    aggregate = {"trials": len(reports), "failures": len(failing),
                 "failingSeeds": [s.get("seed") for s in failing],
                 "verified": not failing}
    report_path = Path(p["report"])
    write_report(record, {"aggregate": aggregate, "trials": reports},
                 report_path)
    finalize_record(record, report_path.parent)
    for s in failing:
        print(f"FAIL trial {s['trial']} seed {s.get('seed')}", file=sys.stderr)
    print(f"perturb: {len(reports)} instances, {len(failing)} failures")
    return EXIT_OK if not failing else EXIT_VERIFICATION


def _build_potential(p) -> Potential:
    if p["kind"] == "tabulated":
        if p["file"] is None:
            raise ConfigError("tabulated potential requires --file")
        rows = [line.split(",") for line in
                Path(p["file"]).read_text(encoding="utf-8").strip().splitlines()]
        if rows and rows[0][0].strip().lower() == "x":
            rows = rows[1:]
        xs = [float(r[0]) for r in rows]
        qs = [float(r[1]) for r in rows]
        return Potential(kind="tabulated", table=(xs, qs))
    return Potential(kind=p["kind"], depth=p["depth"], width=p["width"])


def cmd_sl(args) -> int:
    config = _resolve_config(args, "sl")
    p = config.params
    record = _record_for(config)
    potential = _build_potential(p)
    disc = discretize(potential, L=p["L"], n=p["n"])
    report = containment_report(disc, p["p"], slack_c=p["slack_c"],
                                slack_kappa=p["slack_kappa"], tol=p["tol"])

    out = Path(p["out"])
    rows = [(r["re"], r["im"], r["in_paper_box"], r["in_bst"],
             r["margin_paper"], r["margin_bst"])
            for r in report.checks["table"]]
    write_csv(out, ["re", "im", "in_paper_box", "in_bst", "margin_paper",
                    "margin_bst"], rows)
    record.register(out)

    c = sl_constants(p["p"])
    bst = bst_region(p["p"], 1.0)
    const_path = out.with_name(out.stem + "_constants.csv")
    write_csv(const_path,
              ["p", "s_p", "f_sp", "C_p", "im_coef", "re_coef", "bst_im",
               "bst_abs"],
              [(c.p, c.s_p, c.f_sp, c.c_p, c.im_coef, c.re_coef,
                bst.im_coef, bst.abs_coef)])
    record.register(const_path)

    report_path = Path(p["report"])
    write_report(record, report.to_json(), report_path)
    finalize_record(record, report_path.parent)
    print(f"sl: {report.nonreal_count} non-real eigenvalues, "
          f"{len(report.containment_failures)} containment failures, "
          f"{len(report.sign_type_failures)} sign failures")
    return EXIT_OK if report.verified else EXIT_VERIFICATION


def cmd_tau0(args) -> int:
    config = _resolve_config(args, "tau0")
    p = config.params
    record = _record_for(config)
    if p["profile"] == "indicator":
        f1, f2, support = indicator_probe()
        reference = 1.0 + (2.0 / math.pi) * (10.0 * math.log(2.0)
                                             - 6.0 * math.log(3.0))
    else:
        f1, f2, support = extremizer_probe(p["X"])
        reference = None
    value = tau0_hilbert_form(f1, f2, support, rel_tol=p["rel_tol"])
    upper_ok = value <= TAU0_UPPER_BOUND + 1e-4
    payload = {"profile": p["profile"], "X": support[1], "quotient": value,
               "upperBound": TAU0_UPPER_BOUND, "upperBoundSatisfied": upper_ok,
               "reference": reference}
    report_path = Path(p["out"])
    write_report(record, payload, report_path)
    finalize_record(record, report_path.parent)
    print(f"tau0[{p['profile']}]: quotient {value:.6f} "
          f"(upper bound {TAU0_UPPER_BOUND:.6f})")
    return EXIT_OK if upper_ok else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kreinspec",
        description="Spectral-enclosure toolkit: region data, block-matrix "
                    "and perturbation verification, indefinite "
                    "Sturm-Liouville pipeline.")
    parser.add_argument("--version", action="version",
                        version=f"kreinspec {artifact_version()}")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    specs = [
        ("region", cmd_region, "write a region boundary polyline as CSV"),
        ("matrix-lab", cmd_matrix_lab,
         "verify the block-matrix enclosure on random instances"),
        ("perturb", cmd_perturb,
         "verify the perturbation enclosure on random or file instances"),
        ("sl", cmd_sl,
         "discretize an indefinite Sturm-Liouville problem and check "
         "eigenvalue containment"),
        ("tau0", cmd_tau0,
         "evaluate the involution-form Rayleigh quotient for a probe"),
    ]
    for name, func, help_text in specs:
        sub = subs.add_parser(name, help=help_text)
        sub.add_argument("--config", default=None,
                         help="JSON config file; flags override its values")
        _add_schema_flags(sub, name)
        sub.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisUnmetError as exc:
        print(f"hypothesis unmet: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
