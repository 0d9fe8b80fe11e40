"""Compare every closed-form intersection-number oracle with brute force over a parameter sweep."""
import argparse
import json
import sys
import time

from schemekit.constructors import parse_family
from schemekit.constructors.oracles import oracle_compare

DEFAULT_SWEEP = [
    "extension(k2,2)", "extension(k2,3)", "extension(k3,2)", "extension(k3,3)",
    "extension(c5,2)", "extension(c5,3)", "extension(z3,2)", "extension(c6,2)",
    "attenuated:2,2,1,1", "attenuated:2,3,1,1", "attenuated:2,3,2,1", "attenuated:3,2,1,1",
    "attenuated:2,2,1,2", "attenuated:2,3,1,2",
    "genjohnson(k3,3,2)", "genjohnson(k3,4,2)", "genjohnson(k2,4,3)", "genjohnson(c5,3,2)",
    "genjohnson(z3,3,2)",
    "composition(k3,c5)", "composition(c5,k3)", "composition(k2,c6)",
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("families", nargs="*", help="family specs; defaults to the built-in sweep")
    parser.add_argument("--json", help="write the diff reports here")
    args = parser.parse_args()

    reports, failures = [], 0
    for text in args.families or DEFAULT_SWEEP:
        t0 = time.perf_counter()
        diff = oracle_compare(parse_family(text))
        dt = time.perf_counter() - t0
        status = "ok" if diff.ok else f"{len(diff.mismatches)} mismatch(es)"
        print(f"{text:<24} {diff.checked:>5} checks  {status:<16} {dt:6.2f}s")
        failures += not diff.ok
        reports.append(diff.to_json())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=1)
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
