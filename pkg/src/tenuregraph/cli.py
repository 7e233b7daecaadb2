"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 parameter rejection,
4 numerical failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from . import case_study as cs
from .io import (
    DEPARTMENT_SCHEMA,
    SCENARIO_SCHEMA,
    SchemaError,
    department_to_json,
    load_department,
    load_scenario,
    read_matrix_csv,
    scenario_to_json,
    write_json,
    write_matrix_csv,
    write_rows_csv,
    write_vector_csv,
)
from .model import DEFAULT_WEIGHTS, DepartmentData, ModelParams, ParameterError, build_graph
from .spectral import DEFAULT_SIGMA, ConvergenceError, default_bounds, eigendecompose, embed, positive_area_fraction, sample_field
from .voting import gamma_sweep, monte_carlo_votes

EXIT_INPUT, EXIT_PARAM, EXIT_NUMERIC = 2, 3, 4
OUT_ENV = "TENUREGRAPH_OUT"

# case-study values
DEFAULTS = {
    "eta": 0.25, "pmax": 7.0, "gamma": 0.25, "alpha": 0.15, "eps": 0.0, "mu": 1.0,
    "sigma": DEFAULT_SIGMA, "merit": "half-pmax", "trials": 1000, "seed": 42,
    "grid_resolution": 200, "grid_margin": 0.1,
    "productivity_scale": "per-agent-mean", "inbreeding_indicator": "inbred",
}


def _tool_version():
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def parse_range(text):
    """``start:end:step`` (inclusive of ``end``) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"bad range {text!r}; use start:end:step")
        start, end, step = map(float, parts)
        if step <= 0 or end < start:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        count = int(np.floor((end - start) / step + 1e-12)) + 1
        vals = [round(start + i * step, 12) for i in range(count)]
        if abs(vals[-1] - end) > 1e-12 and vals[-1] < end:
            vals.append(end)
        return vals
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None


def _merit(text):
    if text in ("half-pmax", "half-mean"):
        return text
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("merit must be half-pmax, half-mean or a number in [-1, 1]") from None
    if abs(value) > 1:
        raise argparse.ArgumentTypeError("fixed merit must lie in [-1, 1]")
    return value


def _assignment(text):
    agent, _, value = text.partition("=")
    if not _:
        raise argparse.ArgumentTypeError(f"expected AGENT=VALUE, got {text!r}")
    return agent, float(value)


def _help(text, key):
    return f"{text} (default: {DEFAULTS[key]})"


def _add_input(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path, help="department JSON")
    src.add_argument("--case-study", action="store_true", help="use the embedded 11-agent department")
    p.add_argument("--collaboration-csv", type=Path, help="labelled CSV matrix overriding the collaboration table")


def _add_model(p):
    p.add_argument("--eta", type=float, help=_help("socialization constant, in (0, 1)", "eta"))
    p.add_argument("--pmax", type=float, help=_help("maximum-time constant", "pmax"))
    p.add_argument("--gamma", type=float, help=_help("inbreeding constant", "gamma"))
    p.add_argument("--productivity-scale", choices=["per-agent-mean", "fraction"],
                   help=_help("productivity normalization", "productivity_scale"))
    p.add_argument("--inbreeding-indicator", choices=["inbred", "complement"],
                   help=_help("which agents the inbreeding term links", "inbreeding_indicator"))


def _add_voting(p, with_mu=True):
    p.add_argument("--scenario", type=Path, help="scenario JSON (required unless --case-study)")
    p.add_argument("--alpha", type=float, help=_help("noise amplitude of undecided agents", "alpha"))
    p.add_argument("--eps", type=float, help=_help("regularization constant", "eps"))
    if with_mu:
        p.add_argument("--mu", type=float, help=_help("mutual influence constant", "mu"))
    p.add_argument("--merit", type=_merit, help=_help("candidate merit: half-pmax, half-mean or a number", "merit"))
    p.add_argument("--solve-mode", choices=["joint", "clamped"], help="joint solve or decided agents held fixed (default: joint)")
    p.add_argument("--candidate-x0", type=float, help="initial decision of the candidate (default: 1.0)")
    p.add_argument("--trials", type=int, help=_help("Monte Carlo trials", "trials"))
    p.add_argument("--seed", type=int, help=_help("random seed", "seed"))


def _add_field(p):
    p.add_argument("--sigma", type=float, help=_help("kernel width for every agent", "sigma"))
    p.add_argument("--grid-resolution", type=int, help=_help("grid cells per axis", "grid_resolution"))
    p.add_argument("--grid-margin", type=float,
                   help=_help("expansion of the bounding square per side, as a fraction of its side", "grid_margin"))


def _add_out(p):
    p.add_argument("--out", type=Path, default=None,
                   help=f"output directory (default: ${OUT_ENV} or ./out)")


def build_parser():
    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(prog="tenuregraph", description=__doc__, formatter_class=fmt)
    parser.add_argument("--version", action="version", version=_tool_version())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="productivity, R, S, W and L matrices")
    _add_input(p); _add_model(p); _add_out(p)
    p.add_argument("--format", default="csv,json", help="comma list of csv, json (default: csv,json)")

    p = sub.add_parser("embed", help="2-D influence diagram")
    _add_input(p); _add_model(p); _add_out(p)
    p.add_argument("--scenario", type=Path, help="scenario JSON used to colour the points")
    p.add_argument("--format", default="csv,json,svg", help="comma list of csv, json, svg (default: csv,json,svg)")

    p = sub.add_parser("field", help="Gaussian influence field and positive-area fraction")
    _add_input(p); _add_model(p); _add_field(p); _add_out(p)
    p.add_argument("--scenario", type=Path, help="scenario JSON (required unless --case-study)")
    p.add_argument("--candidate-value", type=float, default=0.0, help="candidate's field weight (default: 0.0)")
    p.add_argument("--assign", type=_assignment, action="append", default=[], metavar="AGENT=VALUE",
                   help="override one agent's field weight; repeatable")
    p.add_argument("--agent-sigma", type=_assignment, action="append", default=[], metavar="AGENT=SIGMA",
                   help="override one agent's kernel width; repeatable")
    p.add_argument("--format", default="csv,json,svg", help="comma list of csv, json, svg (default: csv,json,svg)")

    p = sub.add_parser("vote", help="Monte Carlo vote dynamics")
    _add_input(p); _add_model(p); _add_voting(p); _add_out(p)
    p.add_argument("--format", default="csv,json", help="comma list of csv, json (default: csv,json)")

    p = sub.add_parser("sweep", help="gamma x mu sweep of undecided decisions")
    _add_input(p); _add_model(p); _add_voting(p, with_mu=False); _add_out(p)
    p.add_argument("--gammas", type=parse_range, default=parse_range("0:1:0.2"),
                   help="start:end:step or comma list (default: 0:1:0.2)")
    p.add_argument("--mus", type=parse_range, default=[0.5, 1.0, 2.0], help="comma list (default: 0.5,1,2)")
    p.add_argument("--format", default="csv,json,svg", help="comma list of csv, json, svg (default: csv,json,svg)")

    p = sub.add_parser("case-study", help="reproduce the case-study figures or export its data")
    p.add_argument("action", nargs="?", choices=["figures", "export"], default="figures")
    p.add_argument("--figure", choices=["1", "2", "3", "4", "all"], default="all")
    p.add_argument("--trials", type=int, help=_help("Monte Carlo trials for figure 4", "trials"))
    p.add_argument("--seed", type=int, help=_help("random seed for figure 4", "seed"))
    p.add_argument("--grid-resolution", type=int, help=_help("figure 3 grid cells per axis", "grid_resolution"))
    p.add_argument("--grid-margin", type=float, help=_help("figure 3 bounding-square expansion", "grid_margin"))
    p.add_argument("--candidate-value", type=float, default=0.0, help="candidate's field weight in figure 3 (default: 0.0)")
    _add_out(p)

    p = sub.add_parser("export-schema", help="write the JSON schemas of the input files")
    _add_out(p)
    return parser


def _opt(args, name):
    value = getattr(args, name, None)
    return DEFAULTS[name] if value is None else value


def _out_dir(args) -> Path:
    out = args.out or Path(os.environ.get(OUT_ENV, "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _formats(args):
    fmts = {f.strip() for f in getattr(args, "format", "csv").split(",") if f.strip()}
    bad = fmts - {"csv", "json", "svg"}
    if bad:
        raise SchemaError(f"unknown format(s) {sorted(bad)}")
    return fmts


def _load(args):
    """Department, model parameters and (optional) scenario from the flags."""
    weights = None
    if args.case_study:
        data = cs.case_study_department()
    else:
        data, weights = load_department(args.input)
    if getattr(args, "collaboration_csv", None):
        ids, R = read_matrix_csv(args.collaboration_csv)
        if tuple(ids) != data.agent_ids:
            raise SchemaError("collaboration CSV agents do not match the department")
        data = DepartmentData(data.agent_ids, data.criteria, data.pair_criteria, data.roles,
                              data.inbred_set, data.productivity, R)
    weights = weights or {}
    params = ModelParams(
        individual_weights=weights.get("individual", dict(DEFAULT_WEIGHTS)),
        pair_weights=weights.get("pair", dict(DEFAULT_WEIGHTS)),
        eta=_opt(args, "eta"),
        p_max=_opt(args, "pmax"),
        gamma=_opt(args, "gamma"),
        productivity_scale=_opt(args, "productivity_scale"),
        inbreeding_indicator=_opt(args, "inbreeding_indicator"),
    )
    scenario, seed, trials = None, None, None
    if getattr(args, "scenario", None):
        scenario, seed, trials = load_scenario(args.scenario, data.agent_ids)
    elif args.case_study:
        scenario = cs.case_study_scenario()
    return data, params, scenario, seed, trials


def _voting_overrides(args, scenario):
    changes = {}
    for name in ("alpha", "eps", "mu", "merit", "solve_mode", "candidate_x0"):
        value = getattr(args, name, None)
        if value is not None:
            changes[name] = value
    return scenario.with_(**changes) if changes else scenario


def _params_manifest(params: ModelParams):
    return {
        "eta": params.eta, "p_max": params.p_max, "gamma": params.gamma,
        "productivity_scale": params.productivity_scale,
        "inbreeding_indicator": params.inbreeding_indicator,
        "individual_weights": dict(params.individual_weights),
        "pair_weights": dict(params.pair_weights),
    }


def _manifest(out, command, args, **extra):
    doc = {
        "tool": "tenuregraph",
        "version": _tool_version(),
        "command": command,
        "arguments": {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
                      if k not in ("command", "func")},
    }
    doc.update(extra)
    write_json(out / "manifest.json", doc)


def cmd_build(args):
    out = _out_dir(args)
    fmts = _formats(args)
    data, params, *_ = _load(args)
    graph = build_graph(data, params)
    raw = build_graph(data, params, adjust_roles=False).p.values
    ids = graph.agent_ids
    mats = {"R": graph.R, "S": graph.S, "W": graph.W, "L": graph.L}
    if "csv" in fmts:
        write_vector_csv(out / "productivity.csv", ids, {"raw": raw, "adjusted": graph.p.values})
        for name, M in mats.items():
            write_matrix_csv(out / f"{name}.csv", M, ids)
    if "json" in fmts:
        write_json(out / "productivity.json", {"agents": list(ids), "raw": raw.tolist(), "adjusted": graph.p.values.tolist()})
        for name, M in mats.items():
            write_json(out / f"{name}.json", {"agents": list(ids), "matrix": M.tolist()})
    off = graph.W[~np.eye(graph.n, dtype=bool)]
    print(f"W positivity: OK (min off-diagonal weight {off.min():.6f})")
    if graph.asymmetry > 1e-12:
        print(f"note: collaboration table asymmetric by up to {graph.asymmetry:.6f}; averaged")
    _manifest(out, "build", args, parameters=_params_manifest(params), collaboration_asymmetry=graph.asymmetry)
    return 0


def _diagram(data, params):
    graph = build_graph(data, params)
    decomp = eigendecompose(graph.L)
    prov = {"eta": params.eta, "p_max": params.p_max, "gamma": params.gamma}
    return embed(decomp, graph.agent_ids, prov), decomp


def _write_diagram(out, stem, diagram, fmts, classes=None, title=None, limits=None, metadata=None):
    if "csv" in fmts:
        write_vector_csv(out / f"{stem}.csv", diagram.agent_ids,
                         {"x": diagram.points[:, 0], "y": diagram.points[:, 1]}, fmt="%.6e")
    if "json" in fmts:
        write_json(out / f"{stem}.json", {
            "agents": list(diagram.agent_ids), "points": diagram.points.tolist(),
            "eigenvalues": list(diagram.eigenvalues), "rotation_ambiguous": diagram.rotation_ambiguous,
            "provenance": diagram.provenance,
        })
    if "svg" in fmts:
        from .plotting import diagram_svg
        diagram_svg(out / f"{stem}.svg", diagram, classes, title, limits, metadata)


def cmd_embed(args):
    out = _out_dir(args)
    fmts = _formats(args)
    data, params, scenario, *_ = _load(args)
    diagram, decomp = _diagram(data, params)
    classes = None
    if scenario is not None:
        from .plotting import classify_agents
        chair = next((a for a, r in data.roles.items() if r == "chair"), None)
        classes = classify_agents(scenario, chair)
    _write_diagram(out, "diagram", diagram, fmts, classes)
    write_rows_csv(out / "eigenvalues.csv", ["index", "eigenvalue"],
                   [(i + 1, "%.9e" % w) for i, w in enumerate(decomp.eigenvalues)])
    if diagram.rotation_ambiguous:
        print("warning: second and third eigenvalues coincide; axes are rotation-ambiguous")
    _manifest(out, "embed", args, parameters=_params_manifest(params))
    return 0


def _resolve_agent(data, key):
    for a in data.agent_ids:
        if str(a) == str(key):
            return a
    raise SchemaError(f"unknown agent {key!r}")


def _write_grid(path, grid):
    rows = []
    for iy, y in enumerate(grid.ys):
        for ix, x in enumerate(grid.xs):
            rows.append((ix, iy, "%.6e" % x, "%.6e" % y, "%.6e" % grid.values[iy, ix]))
    write_rows_csv(path, ["ix", "iy", "x", "y", "value"], rows)


def cmd_field(args):
    out = _out_dir(args)
    fmts = _formats(args)
    data, params, scenario, *_ = _load(args)
    if scenario is None:
        raise SchemaError("field needs --scenario (or --case-study)")
    diagram, _ = _diagram(data, params)
    ids = data.agent_ids
    x = np.zeros(len(ids))
    for a in scenario.v_plus:
        x[ids.index(a)] = 1.0
    for a in scenario.v_minus:
        x[ids.index(a)] = -1.0
    for a, v in scenario.non_voters.items():
        x[ids.index(a)] = v
    x[ids.index(scenario.candidate)] = args.candidate_value
    for key, v in args.assign:
        x[ids.index(_resolve_agent(data, key))] = v
    sigma = np.full(len(ids), _opt(args, "sigma"))
    for key, s in args.agent_sigma:
        sigma[ids.index(_resolve_agent(data, key))] = s
    if np.any(sigma <= 0):
        raise ParameterError("sigma must be positive")
    margin = _opt(args, "grid_margin")
    res = _opt(args, "grid_resolution")
    grid = sample_field(diagram, x, sigma, default_bounds(diagram, margin), res)
    frac = positive_area_fraction(grid)
    if "csv" in fmts:
        _write_grid(out / "field.csv", grid)
    summary = {"positive_area_fraction": frac, "bounds": list(grid.bounds), "resolution": res,
               "margin": margin, "assignments": dict(zip(map(str, ids), x.tolist())),
               "sigma": dict(zip(map(str, ids), sigma.tolist()))}
    if "json" in fmts:
        write_json(out / "field.json", summary)
    if "svg" in fmts:
        from .plotting import field_svg
        field_svg(out / "field.svg", grid, diagram, f"positive area {frac:.1%}")
    print(f"positive area fraction: {frac:.4f}")
    _manifest(out, "field", args, parameters=_params_manifest(params))
    return 0


def _need_scenario(scenario):
    if scenario is None:
        raise SchemaError("a scenario is required: pass --scenario or --case-study")
    return scenario


def cmd_vote(args):
    out = _out_dir(args)
    fmts = _formats(args)
    data, params, scenario, seed, trials = _load(args)
    scenario = _voting_overrides(args, _need_scenario(scenario))
    seed = args.seed if args.seed is not None else (seed if seed is not None else DEFAULTS["seed"])
    trials = args.trials if args.trials is not None else (trials or DEFAULTS["trials"])
    graph = build_graph(data, params)
    stats = monte_carlo_votes(graph, scenario, trials, seed)
    if "csv" in fmts:
        write_rows_csv(out / "votes.csv", ["agent_id", "mean", "std", "trials"],
                       [(a, "%.9e" % m, "%.9e" % s, trials) for a, m, s in zip(stats.agent_ids, stats.mean, stats.std)])
    if "json" in fmts:
        write_json(out / "votes.json", {
            "merit": stats.merit, "trials": trials, "seed": seed,
            "agents": {str(a): {"mean": float(m), "std": float(s), "vote": "for" if m > 0 else "against"}
                       for a, m, s in zip(stats.agent_ids, stats.mean, stats.std)},
        })
    for a, m, s in zip(stats.agent_ids, stats.mean, stats.std):
        print(f"agent {a}: mean {m:+.6e} std {s:.3e}")
    _manifest(out, "vote", args, parameters=_params_manifest(params),
              scenario=scenario_to_json(scenario, seed, trials))
    return 0


def _write_sweep(out, stem, sweep, fmts):
    if "csv" in fmts:
        write_rows_csv(out / f"{stem}.csv", ["gamma", "mu", "agent_id", "mean", "std", "trials"],
                       [("%g" % g, "%g" % mu, a, "%.9e" % m, "%.9e" % s, t) for g, mu, a, m, s, t in sweep.rows()])
    if "json" in fmts:
        write_json(out / f"{stem}.json", {
            "gammas": list(sweep.gammas), "mus": list(sweep.mus), "agents": list(sweep.agent_ids),
            "productivity": list(sweep.productivity), "mean": sweep.mean.tolist(), "std": sweep.std.tolist(),
            "trials": sweep.trials, "seed": sweep.seed,
        })
    if "svg" in fmts:
        from .plotting import sweep_svg
        sweep_svg(out / f"{stem}.svg", sweep)


def cmd_sweep(args):
    out = _out_dir(args)
    fmts = _formats(args)
    data, params, scenario, seed, trials = _load(args)
    scenario = _voting_overrides(args, _need_scenario(scenario))
    seed = args.seed if args.seed is not None else (seed if seed is not None else DEFAULTS["seed"])
    trials = args.trials if args.trials is not None else (trials or DEFAULTS["trials"])
    sweep = gamma_sweep(data, params, scenario, args.gammas, args.mus, trials, seed)
    _write_sweep(out, "sweep", sweep, fmts)
    print(f"{len(sweep.gammas) * len(sweep.mus)} cells x {len(sweep.agent_ids)} agents written")
    _manifest(out, "sweep", args, parameters=_params_manifest(params),
              scenario=scenario_to_json(scenario, seed, trials))
    return 0


def _case_figures(args, out):
    which = {"1", "2", "3", "4"} if args.figure == "all" else {args.figure}
    fmts = {"csv", "json", "svg"}
    from .plotting import classify_agents, field_svg
    scenario = cs.case_study_scenario()
    fig2_classes = classify_agents(scenario, chair=cs.CHAIR, overrides={2: "opponent", 3: "opponent",
                                                                         5: "supporter", 9: "split"})
    extra = {}
    if "1" in which:
        fig1 = cs.reproduce_figure1()
        pts = np.vstack([d.points for d in fig1.diagrams.values()])
        pad = 0.05 * (pts.max(axis=0) - pts.min(axis=0))
        limits = (pts[:, 0].min() - pad[0], pts[:, 0].max() + pad[0], pts[:, 1].min() - pad[1], pts[:, 1].max() + pad[1])
        summary = []
        for (eta, pm), d in fig1.diagrams.items():
            _write_diagram(out, f"fig1_eta{eta:.2f}_pmax{pm:g}", d, {"csv", "svg"},
                           classify_agents(scenario, chair=cs.CHAIR), f"eta={eta:g}, P_max={pm:g}, gamma=0", limits)
            summary.append(("%.2f" % eta, "%g" % pm, "%.9e" % d.eigenvalues[0], "%.9e" % d.eigenvalues[1],
                            "%.9e" % d.bbox_diagonal()))
        write_rows_csv(out / "fig1_summary.csv", ["eta", "p_max", "lambda2", "lambda3", "bbox_diagonal"], summary)
        write_rows_csv(out / "fig1_rank_correlation.csv", ["eta_a", "p_max_a", "eta_b", "p_max_b", "kendall_tau"],
                       [("%.2f" % a[0], "%g" % a[1], "%.2f" % b[0], "%g" % b[1], "%.6f" % t)
                        for (a, b), t in fig1.rank_correlation.items()])
        extra["fig1_min_kendall_tau"] = fig1.min_rank_correlation
    if "2" in which:
        d = cs.reproduce_figure2()
        _write_diagram(out, "fig2", d, fmts, fig2_classes, "eta=0.25, P_max=7, gamma=0.25",
                       metadata={"note": "agent 9 is described both as blue and magenta; drawn magenta"})
    if "3" in which:
        fig3 = cs.reproduce_figure3(_opt(args, "grid_margin"), _opt(args, "grid_resolution"), args.candidate_value)
        rows = []
        for k, (grid, frac) in enumerate(zip(fig3.grids, fig3.fractions)):
            chair_value = cs.FIG3_CHAIR_MODES[k][0]
            stem = f"fig3_chair{chair_value:g}"
            _write_grid(out / f"{stem}.csv", grid)
            field_svg(out / f"{stem}.svg", grid, fig3.diagram, f"x4={chair_value:g}: positive area {frac:.1%}")
            rows.append(("%g" % chair_value, "%.1e" % cs.FIG3_CHAIR_MODES[k][1], "%.6f" % frac))
        write_rows_csv(out / "fig3_areas.csv", ["chair_value", "chair_sigma", "positive_area_fraction"], rows)
        extra["fig3_fractions"] = list(fig3.fractions)
    if "4" in which:
        trials = _opt(args, "trials")
        seed = _opt(args, "seed")
        sweep = cs.reproduce_figure4(trials, seed)
        _write_sweep(out, "fig4", sweep, fmts)
    return extra


def cmd_case_study(args):
    out = _out_dir(args)
    if args.action == "export":
        write_json(out / "department.json", department_to_json(cs.case_study_department(), cs.case_study_params()))
        write_json(out / "scenario.json", scenario_to_json(cs.case_study_scenario(), DEFAULTS["seed"], DEFAULTS["trials"]))
        _manifest(out, "case-study export", args)
        return 0
    extra = _case_figures(args, out)
    for k, v in extra.items():
        print(f"{k}: {v}")
    _manifest(out, "case-study", args, parameters=_params_manifest(cs.case_study_params()),
              scenario=scenario_to_json(cs.case_study_scenario(), _opt(args, "seed"), _opt(args, "trials")),
              results=extra)
    return 0


def cmd_export_schema(args):
    out = _out_dir(args)
    write_json(out / "department.schema.json", DEPARTMENT_SCHEMA)
    write_json(out / "scenario.schema.json", SCENARIO_SCHEMA)
    return 0


COMMANDS = {
    "build": cmd_build,
    "embed": cmd_embed,
    "field": cmd_field,
    "vote": cmd_vote,
    "sweep": cmd_sweep,
    "case-study": cmd_case_study,
    "export-schema": cmd_export_schema,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ParameterError as exc:
        print(f"parameter rejected: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (ConvergenceError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"parameter rejected: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
