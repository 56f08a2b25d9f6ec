"""Runs the njc tool on a spread of commands and validates each JSON report
against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["matrix", "--n", "3"],
    ["compute", "--space", "lp:p=1,dim=2", "--n", "2", "--kind", "upper-modified", "--method", "enumerate"],
    ["compute", "--space", "lp:p=inf,dim=4", "--n", "3", "--method", "closed-form"],
    ["compute", "--space", "lp:p=4,dim=4", "--n", "3", "--kind", "upper", "--method", "closed-form"],
    ["compute", "--space", "lp:p=3,dim=2", "--n", "3", "--kind", "lower", "--restarts", "5"],
    ["compute", "--space", "lp:p=1.5,dim=3", "--n", "2", "--kind", "lower-modified", "--method", "seeds"],
    ["verify", "--grid", "2,4,2;3,4,3;3,inf,4", "--restarts", "5", "--seed", "3"],
    ["verify", "--grid", "default", "--seed", "42"],
    ["check", "--space", "lp:p=3,dim=4", "--n", "3", "--samples", "200", "--restarts", "5"],
    ["check", "--space", "lp:p=2,dim=2", "--n", "2", "--samples", "200", "--restarts", "5"],
    ["check", "--space", "lp:p=1,dim=3", "--suite", "b-convexity", "--n-max", "3", "--restarts", "5"],
]


def main():
    tool, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode} {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        if errors:
            print(f"FAIL {label}: {errors[0].message} at {list(errors[0].absolute_path)}")
            failures += 1
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
