"""Runs projdyn with --json over a set of invocations and validates every
document against the shipped schema. Also checks that the output does not
depend on the run or on the thread count."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["iterate", "--map", "[x0^2-x1^2, 2*x0*x1+x1^2]", "--s", "2"],
    ["orbit", "--map", "[x0^2-2*x1^2, x0^2]", "--point", "(0:1)"],
    ["orbit", "--map", "[x0^2+x1^2, x1^2]", "--point", "(1:1)", "--max-steps", "3"],
    ["jacobian", "--map", "[x0^2+x1^2, x1^2, x2^2]"],
    ["resultant", "--map", "[x0^2+x3*x1^2, x1^2, x2^2+x4*x0*x1]"],
    ["resultant", "--map", "[x0^2, x1^2, x2^2+x0*x1]", "--strategy", "modular"],
    ["pushforward", "--map", "[x0^2+7*x1^2, x1^2, x2^2]", "--form", "x0-3*x1"],
    ["pushforward", "--map", "[x0^2, x1^2, x2^2]", "--form", "x0+x1+x2", "--s", "2"],
    ["improper-cert", "--map", "[x0, x1/2, -x2/3]", "--form", "x0+x1+x2", "--indices", "0,1,3"],
    ["improper-search", "--map", "[x0, x1/2, -x2/3]", "--form", "x0+x1+x2", "--bound", "3"],
    ["improper-search", "--map", "[x0, x1/4, x2/9]", "--form", "x0+x1+x2", "--bound", "4"],
    ["ys-test", "--map", "[x0^2-2*x1^2, x0^2]", "--s", "3"],
    ["ys-test", "--field", "Fp:7", "--map", "[x0^2, x1^2, x2^2]", "--s", "1"],
    ["sympow", "--map", "[x^2, y^2]", "--n", "2"],
    ["period-poly", "--d", "3", "--s", "5"],
    ["find-pcf", "--d", "2", "--s", "3"],
    ["find-pcf", "--d", "2", "--s", "5"],
    ["dims", "--n", "2", "--m", "1", "--d", "2", "--indices", "0,1,2"],
    ["pushforward", "--map", "[x0^2, x0*x1, x0*x2]", "--form", "x1"],
    ["ys-test", "--map", "[x0^2, x1^2, x2^2]", "--s", "1"],
    ["period-poly", "--d", "2", "--s", "1"],
]


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft7Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError:
            print("not JSON:", args, proc.stdout, proc.stderr)
            failures += 1
            continue
        errors = list(validator.iter_errors(doc))
        if doc.get("exit_code") != proc.returncode:
            errors.append("exit_code field %s != process exit %d" % (doc.get("exit_code"), proc.returncode))
        for e in errors:
            print("invalid:", " ".join(args), "->", getattr(e, "message", e))
        for threads in ("1", "3"):
            again = subprocess.run([binary, *args, "--json", "--threads", threads], capture_output=True, text=True)
            if again.stdout != proc.stdout or again.returncode != proc.returncode:
                errors.append("output differs with --threads " + threads)
                print("nondeterministic:", " ".join(args), "--threads", threads)
        failures += bool(errors)
        print("ok" if not errors else "FAIL", doc.get("status"), " ".join(args))
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
