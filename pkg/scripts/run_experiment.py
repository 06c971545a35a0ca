"""SZU vs SZANR on the bundled fixture for both catalogs and every scenario.

Prints mean ESR and total bandwidth loss per scenario, plus the SZANR
bandwidth-loss reduction against the unrelocated network.

    python scripts/run_experiment.py [--seed 1] [--json results.json]
"""
import argparse
import json

from quakenet.io import fixture_path, load_catalog, load_topology, load_zone_grid
from quakenet.lightpath import Protection, Regime
from quakenet.metrics import reduction_ratio
from quakenet.pipeline import run_scenario
from quakenet.relocation import RelocationConfig, relocate

CATALOGS = {"two-year": "catalog_two_year.csv", "major-historical": "catalog_major_historical.csv"}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", default=None, help="also write the table as JSON")
    args = ap.parse_args()

    grid = load_zone_grid(fixture_path("zones_india_60.csv"))
    szu = load_topology(fixture_path("railtel_approx.json"), grid.spec)
    szanr, plan = relocate(szu, grid, RelocationConfig())
    print(f"relocated {len(plan.moves)} nodes; total length {plan.llc_before:.1f} -> {plan.llc_after:.1f} km")
    for m in plan.moves:
        print(f"  {m.node_id}: zone {m.old_zone.name} -> {m.new_zone.name}")

    rows = []
    for cat_name, cat_file in CATALOGS.items():
        events = load_catalog(fixture_path(cat_file))
        print(f"\n{cat_name} catalog, {len(events)} events, seed {args.seed}")
        print(f"{'scenario':10s} {'SZU ESR':>9s} {'SZANR ESR':>10s} {'SZU THz':>9s} {'SZANR THz':>10s} {'reduction':>10s}")
        for regime in Regime:
            for protection in Protection:
                _, base = run_scenario(szu, grid, events, regime, protection, args.seed)
                _, new = run_scenario(szanr, grid, events, regime, protection, args.seed)
                red = reduction_ratio(base.total_bandwidth_lost_thz, new.total_bandwidth_lost_thz)
                label = f"{regime.value}-{protection.value}"
                print(
                    f"{label:10s} {base.mean_esr:9.5f} {new.mean_esr:10.5f} "
                    f"{base.total_bandwidth_lost_thz:9.4f} {new.total_bandwidth_lost_thz:10.4f} "
                    f"{'n/a' if red is None else f'{red:.3f}':>10s}"
                )
                rows.append(
                    {
                        "catalog": cat_name,
                        "scenario": label,
                        "szu_mean_esr": base.mean_esr,
                        "szanr_mean_esr": new.mean_esr,
                        "szu_bandwidth_lost_thz": base.total_bandwidth_lost_thz,
                        "szanr_bandwidth_lost_thz": new.total_bandwidth_lost_thz,
                        "bandwidth_reduction": red,
                    }
                )
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"seed": args.seed, "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
