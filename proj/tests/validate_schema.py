"""Runs every corpus invocation with --json and validates the report against the published schema."""
import json
import subprocess
import sys

import jsonschema


def main(binary, schema_path, corpus_path):
    schema = json.load(open(schema_path))
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in json.load(open(corpus_path)):
        for extra in (["--json"], ["--json", "--no-timing"]):
            proc = subprocess.run([binary, *args, *extra], capture_output=True, text=True)
            label = " ".join(args + extra)
            if proc.returncode != 0:
                print(f"FAIL exit {proc.returncode}: {label}\n{proc.stderr}")
                failures += 1
                continue
            errors = list(validator.iter_errors(json.loads(proc.stdout)))
            for e in errors:
                print(f"FAIL schema: {label}: {e.message} at {list(e.absolute_path)}")
            failures += bool(errors)
    print(f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
