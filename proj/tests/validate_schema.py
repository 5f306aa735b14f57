"""Run each CLI subcommand and validate its JSON output against the schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

COMMANDS = [
    ["curve", "--format", "json", "--steps", "7"],
    ["region"],
    ["region", "--beta", "0.664"],
    ["region", "--beta", "0.2"],
    ["mc", "--events", "100000", "--cone", "20"],
    ["mc", "--events", "200000", "--cone", "20", "--spacelike-only", "--efficiency", "0.5"],
    ["lhv", "--model", "constant", "--samples", "10000"],
    ["lhv", "--model", "linear_spin", "--param", "correlation=-1", "--samples", "10000"],
    ["lhv", "--model", "clipped", "--samples", "10000", "--theta", "30"],
    ["optimize", "--grid", "10", "--tol", "1e-6"],
    ["spacelike", "--samples", "10000"],
    ["spacelike", "--m-parent", "2983.9", "--m-daughter", "1115.683", "--samples", "10000"],
    ["yield"],
]


def run(tool, args):
    proc = subprocess.run([tool, *args], capture_output=True, text=True, check=False)
    if proc.returncode != 0:
        raise SystemExit(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
    return json.loads(proc.stdout)


def main():
    tool, schema_path = sys.argv[1], Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    for args in COMMANDS:
        doc = run(tool, args)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            for err in errors:
                print(f"{' '.join(args)}: {'/'.join(map(str, err.path))}: {err.message}")
            return 1
        print(f"ok  {' '.join(args)}")

    # Events written with --events-out re-analyze to the same counts.
    with tempfile.TemporaryDirectory() as tmp:
        path = str(Path(tmp) / "events.csv")
        base = ["mc", "--events", "50000", "--cone", "25", "--seed", "5"]
        fresh = run(tool, [*base, "--events-out", path])
        replay = run(tool, [*base, "--events-in", path])
        validator.validate(replay)
        if fresh["result"]["counts"] != replay["result"]["counts"]:
            print("event file replay changed the cone counts")
            return 1
        print("ok  mc --events-out / --events-in replay")

    # A document missing a required field must be rejected.
    broken = run(tool, ["yield"])
    del broken["result"]["expected_pairs"]
    if validator.is_valid(broken):
        print("schema accepted a yield summary without expected_pairs")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
