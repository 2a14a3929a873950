#!/usr/bin/env python3
"""Validate ineqcert envelopes against the shipped schema.

With --cli, runs a fixed set of commands and checks exit codes as well.
With --files, validates the given JSON files only.
"""
import argparse
import json
import subprocess
import sys
from fractions import Fraction

import jsonschema

COMMANDS = [
    (["bound", "--ineq", "cheby", "--f", "x", "--g", "x", "--a", "0", "--b", "1"], 0),
    (["bound", "--ineq", "ostrowski_pert", "--f", "x^2", "--a", "0", "--b", "1", "--x", "1/2"], 0),
    (["bound", "--ineq", "stieltjes", "--f", "x", "--u",
      "bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1),(1,1,0,0)]", "--a", "0", "--b", "1"], 0),
    (["bound", "--ineq", "ostrowski", "--f", "exp(x)", "--a", "0", "--b", "1"], 0),
    (["bound", "--ineq", "interior_n", "--perturbed", "--f", "sin(x)", "--a", "0", "--b", "1", "--n", "3"], 0),
    (["bound", "--ineq", "gruss", "--f", "x", "--g", "x", "--a", "0", "--b", "1", "--range", "0,1/2"], 1),
    (["integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--cells", "4"], 0),
    (["integrate", "--f", "2*x", "--a", "0", "--b", "1", "--cells", "1"], 0),
    (["integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--tol", "1e-4"], 0),
    (["integrate", "--f", "x^3 - x", "--a", "0", "--b", "2", "--cells", "3", "--rule", "boundary_n", "--n", "2"], 0),
    (["integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--tol", "1e-12", "--max-cells", "4"], 3),
    (["verify", "--ineq", "cheby", "--trials", "20", "--seed", "3"], 0),
    (["verify", "--ineq", "bogus"], 1),
    (["sharpness"], 0),
    (["sharpness", "--ineq", "cheby"], 0),
]


def exact_numbers(node):
    if isinstance(node, dict):
        if "decimal" in node and "exact" in node:
            yield node
        for v in node.values():
            yield from exact_numbers(v)
    elif isinstance(node, list):
        for v in node:
            yield from exact_numbers(v)


def check_envelope(schema, doc, label):
    jsonschema.validate(doc, schema)
    for num in exact_numbers(doc):
        q = Fraction(num["exact"])
        back = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if back != num["exact"]:
            raise AssertionError(f"{label}: {num['exact']} does not round-trip")
        if num["decimal"] not in ("inf", "-inf", "nan") and abs(float(num["decimal"]) - float(q)) > 1e-12 * max(1.0, abs(float(q))):
            raise AssertionError(f"{label}: decimal {num['decimal']} disagrees with {num['exact']}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schema", required=True)
    ap.add_argument("--cli")
    ap.add_argument("--files", nargs="*", default=[])
    args = ap.parse_args()
    with open(args.schema) as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)

    failures = 0
    for path in args.files:
        try:
            with open(path) as fh:
                check_envelope(schema, json.load(fh), path)
        except Exception as exc:  # noqa: BLE001
            print(f"FAIL {path}: {exc}")
            failures += 1

    if args.cli:
        for argv, expected in COMMANDS:
            label = " ".join(argv)
            proc = subprocess.run([args.cli, *argv], capture_output=True, text=True)
            if proc.returncode != expected:
                print(f"FAIL {label}: exit {proc.returncode}, expected {expected}\n{proc.stderr}")
                failures += 1
                continue
            if expected == 1:
                if proc.stdout.strip():
                    print(f"FAIL {label}: printed output on a usage error")
                    failures += 1
                else:
                    print(f"ok   {label} (usage error)")
                continue
            try:
                check_envelope(schema, json.loads(proc.stdout), label)
            except Exception as exc:  # noqa: BLE001
                print(f"FAIL {label}: {exc}")
                failures += 1
                continue
            print(f"ok   {label}")

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
