"""Debug script to run the theorem sweep twice and compare the reports."""

import json
import logging
from pathlib import Path

import config
from evaluation.report import Report, algebra_digest
from pipeline.theorem_sweep import TheoremSweepPipeline
from utils.catalog import catalog

CATALOG = "gf2,gf3,dim<=4"
RANDOM_COUNT = 5


def run_once(entries) -> Report:
    pipeline = TheoremSweepPipeline(suite="all", seed=config.DEFAULT_SEED)
    report = Report(
        command={"catalog": CATALOG, "count": RANDOM_COUNT, "seed": config.DEFAULT_SEED, "suite": "all"},
        algebras=[algebra_digest(e.algebra, e.label) for e in entries],
    )
    report.extend(pipeline.run(entries))
    return report


def main():
    logging.basicConfig(level=logging.INFO)
    print("=" * 80)
    print("THEOREM SWEEP DEBUG SCRIPT")
    print("=" * 80)

    print("\n[1] Building catalog...")
    entries = catalog(CATALOG, seed=config.DEFAULT_SEED, count=RANDOM_COUNT)
    for e in entries:
        print(f"  {e.label}: dim {e.algebra.dim}")

    print("\n[2] Running sweep twice...")
    first = run_once(entries).to_json()
    second_report = run_once(entries)
    second = second_report.to_json()

    summary = second_report.summary()
    print(f"  pass={summary['pass']} fail={summary['fail']} skipped={summary['skipped']}")
    print(f"  byte-identical: {first == second}")

    failures = [r for r in second_report.records if r.status == "fail"]
    if failures:
        print("\n[3] Failures:")
        for r in failures:
            print(f"  {r.algebra} {r.check} [{r.instance}]")
            print(f"      {json.dumps(r.witness)[:200]}")

    output_dir = Path(config.DEBUG_OUTPUT_DIR)
    output_dir.mkdir(parents=True, exist_ok=True)
    output_file = output_dir / "theorem_sweep.json"
    output_file.write_text(second, encoding="utf-8")
    print(f"\nReport saved to: {output_file}")


if __name__ == "__main__":
    main()
