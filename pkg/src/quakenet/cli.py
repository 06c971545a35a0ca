"""Command-line front end: ``quakenet {validate,relocate,establish,simulate,compare,run}``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .geo_grid import OutOfGridError
from .io import (
    ParseError,
    dumps_json,
    events_csv,
    fixture_path,
    load_catalog,
    load_topology,
    load_zone_grid,
    topology_to_dict,
    write_atomic,
)
from .lightpath import Protection, Regime, Unprotectable, establish, generate_demands
from .metrics import EventMetrics, ScenarioReport, compare
from .pipeline import ScenarioSpec, replay, scenario_label, validate
from .quake import OutOfModelError
from .relocation import RelocationConfig, relocate

EXIT_OK, EXIT_INVALID, EXIT_ERROR = 0, 1, 2


def _meta(spec: ScenarioSpec, **extra) -> dict:
    return {"spec_hash": spec.digest(), "seed": spec.seed, "tool": f"quakenet {__version__}", **extra}


def _spec(args) -> ScenarioSpec:
    regimes = tuple(Regime(r) for r in (args.regime or ["wdm", "eon"]))
    protections = tuple(Protection(p) for p in (args.protection or ["none", "dpp"]))
    return ScenarioSpec(
        topology=Path(args.topology),
        zones=Path(args.zones),
        catalog=Path(args.catalog) if getattr(args, "catalog", None) else None,
        regimes=regimes,
        protections=protections,
        capacity=getattr(args, "capacity", None),
        seed=getattr(args, "seed", 1),
        relocate=getattr(args, "relocate", False),
        relocation=RelocationConfig(search_half_width=args.search_half_width),
        k=getattr(args, "k", 3),
        unprotectable=Unprotectable(getattr(args, "unprotectable", "keep")),
        out=Path(args.out),
    )


def _variants(spec: ScenarioSpec, grid, topo):
    """Topologies to evaluate, plus the relocation plan when one was computed."""
    variants = [("szu", topo)]
    plan = None
    if spec.relocate:
        relocated, plan = relocate(topo, grid, spec.relocation)
        variants.append(("szanr", relocated))
    return variants, plan


def _write_plan(spec, plan, relocated):
    out = spec.out
    write_atomic(out / "relocation_plan.json", dumps_json({"meta": _meta(spec), **plan.to_dict()}))
    write_atomic(out / "topology_szanr.json", dumps_json({"meta": _meta(spec), **topology_to_dict(relocated)}))


def run_pipeline(spec: ScenarioSpec, *, simulate: bool = True) -> list[ScenarioReport]:
    """Relocate (optionally), establish every scenario, replay the catalog, write artifacts."""
    grid = load_zone_grid(spec.zones)
    topo = load_topology(spec.topology, grid.spec)
    events = load_catalog(spec.catalog) if simulate else []
    variants, plan = _variants(spec, grid, topo)
    if plan is not None:
        _write_plan(spec, plan, variants[-1][1])

    reports = []
    for variant, t in variants:
        demands = generate_demands(t, spec.seed)
        for regime in spec.regimes:
            for protection in spec.protections:
                label = scenario_label(variant, regime, protection)
                lp = establish(t, demands, regime, protection, spec.capacity, spec.k, spec.unprotectable)
                write_atomic(
                    spec.out / "lightpaths" / f"{label}.json",
                    dumps_json({"meta": _meta(spec, scenario=label), **lp.to_dict()}),
                )
                if not simulate:
                    continue
                rep = replay(t, grid, lp, events, label)
                reports.append(rep)
                write_atomic(
                    spec.out / "reports" / f"{label}.json",
                    dumps_json({"meta": _meta(spec), "established": len(lp.established), **rep.to_dict()}),
                )
    if simulate:
        write_atomic(spec.out / "events.csv", events_csv(reports, _meta(spec)))
        if len(reports) >= 2:
            write_atomic(spec.out / "comparison.json", dumps_json(_comparison(spec, reports)))
    return reports


def _comparison(spec: ScenarioSpec, reports: list[ScenarioReport]) -> dict:
    by_label = {r.label: r for r in reports}
    pairs = []
    for regime in spec.regimes:
        for protection in spec.protections:
            szu = by_label.get(scenario_label("szu", regime, protection))
            szanr = by_label.get(scenario_label("szanr", regime, protection))
            if szu is None or szanr is None:
                continue
            row = compare([szu, szanr]).row(szanr.label)
            pairs.append(
                {
                    "regime": regime.value,
                    "protection": protection.value,
                    "szu_mean_esr": szu.mean_esr,
                    "szanr_mean_esr": szanr.mean_esr,
                    "szu_bandwidth_lost_thz": szu.total_bandwidth_lost_thz,
                    "szanr_bandwidth_lost_thz": szanr.total_bandwidth_lost_thz,
                    **row.to_dict(),
                }
            )
    return {
        "meta": _meta(spec),
        "aggregate": [
            {
                "scenario": r.label,
                "events": len(r.events),
                **({"mean_esr": r.mean_esr} if r.events else {}),
                "total_bandwidth_lost_thz": r.total_bandwidth_lost_thz,
            }
            for r in reports
        ],
        "szanr_vs_szu": pairs,
        "table": compare(reports).to_dict(),
    }


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    problems = validate(_spec(args))
    for p in problems:
        print(p)
    if not problems:
        print("ok")
    return EXIT_INVALID if problems else EXIT_OK


def cmd_relocate(args) -> int:
    spec = _spec(args)
    grid = load_zone_grid(spec.zones)
    topo = load_topology(spec.topology, grid.spec)
    relocated, plan = relocate(topo, grid, spec.relocation)
    _write_plan(spec, plan, relocated)
    for m in plan.moves:
        print(f"{m.node_id}: {m.old_cell} zone {m.old_zone.name} -> {m.new_cell} zone {m.new_zone.name}")
    print(f"total link length {plan.llc_before:.1f} km -> {plan.llc_after:.1f} km; audit passed: {plan.audit.passed}")
    return EXIT_OK


def cmd_establish(args) -> int:
    run_pipeline(_spec(args), simulate=False)
    return EXIT_OK


def cmd_simulate(args) -> int:
    _print_summary(run_pipeline(_spec(args)))
    return EXIT_OK


def cmd_run(args) -> int:
    args.relocate = True
    return cmd_simulate(args)


def _load_report(path: Path) -> ScenarioReport:
    doc = json.loads(path.read_text())
    try:
        events = tuple(
            EventMetrics(e["event_id"], e["established"], e["survived"], e["esr"], e["bandwidth_lost_thz"])
            for e in doc["events"]
        )
        return ScenarioReport(doc["scenario"], events)
    except (KeyError, TypeError) as exc:
        raise ParseError(path, None, f"not a scenario report ({exc})") from None


def cmd_compare(args) -> int:
    reports = [_load_report(Path(p)) for p in args.reports]
    table = compare(reports, baseline=args.baseline)
    doc = {"meta": {"inputs": [Path(p).name for p in args.reports], "tool": f"quakenet {__version__}"}, **table.to_dict()}
    if args.out:
        write_atomic(Path(args.out) / "comparison.json", dumps_json(doc))
    for row in table.rows:
        red = "n/a" if row.bandwidth_reduction is None else f"{row.bandwidth_reduction:.3f}"
        mean = "n/a" if row.mean_esr_delta is None else f"{row.mean_esr_delta:+.4f}"
        print(f"{row.label:24s} mean ESR delta {mean}  bandwidth reduction {red}")
    return EXIT_OK


def _print_summary(reports):
    for r in reports:
        mean = "n/a" if r.mean_esr is None else f"{r.mean_esr:.4f}"
        print(f"{r.label:24s} events {len(r.events):3d}  mean ESR {mean}  bandwidth lost {r.total_bandwidth_lost_thz:.4f} THz")


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quakenet", description="Seismic-zone-aware node relocation and earthquake survivability for optical backbones."
    )
    p.add_argument("--version", action="version", version=f"quakenet {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def inputs(sp, catalog=True):
        sp.add_argument("--topology", default=str(fixture_path("railtel_approx.json")))
        sp.add_argument("--zones", default=str(fixture_path("zones_india_60.csv")))
        if catalog:
            sp.add_argument("--catalog", default=str(fixture_path("catalog_two_year.csv")))
        sp.add_argument("--search-half-width", type=int, default=2)
        sp.add_argument("--out", default="out")

    def scenario(sp):
        sp.add_argument("--regime", action="append", choices=["wdm", "eon"], help="repeatable; default both")
        sp.add_argument("--protection", action="append", choices=["none", "dpp"], help="repeatable; default both")
        sp.add_argument("--capacity", type=int, default=None, help="wavelengths (WDM) or slots (EON) per link")
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--k", type=int, default=3, help="candidate paths per demand")
        sp.add_argument("--unprotectable", choices=["keep", "block"], default="keep")
        sp.add_argument("--relocate", action="store_true", help="also evaluate the relocated topology")

    sp = sub.add_parser("validate", help="parse inputs and cross-check them without simulating")
    inputs(sp)
    sp.set_defaults(func=cmd_validate, regime=None, protection=None)

    sp = sub.add_parser("relocate", help="compute a relocation plan")
    inputs(sp, catalog=False)
    sp.set_defaults(func=cmd_relocate, regime=None, protection=None)

    sp = sub.add_parser("establish", help="establish lightpaths and write them as JSON")
    inputs(sp, catalog=False)
    scenario(sp)
    sp.set_defaults(func=cmd_establish)

    sp = sub.add_parser("simulate", help="establish and replay a catalog")
    inputs(sp)
    scenario(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("run", help="full pipeline: relocate, establish, replay, compare")
    inputs(sp)
    scenario(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("compare", help="compare scenario report JSON files")
    sp.add_argument("reports", nargs="+")
    sp.add_argument("--baseline", default=None, help="scenario label to compare against (default: first)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OutOfModelError, OutOfGridError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
