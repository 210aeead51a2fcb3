#!/usr/bin/env python3
"""End-to-end checks for the eskel command-line tool.

Drives the built binary through every subcommand, validates all JSON
artifacts against the shipped schemas, and pins down the exit-code
contract. Invoked by ctest as:

    cli_checks.py <path-to-eskel-binary> <repo-source-dir>
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

TRIANGLE = "0,0,1,0,0.5,0.866025403784439"
SQUARE = "0,0,1,0,1,1,0,1"
LOW_RES = ["--panels", "16", "--grid", "128", "--arc-samples", "32"]

failures = []


def check(name, ok, detail=""):
    line = f"{name:<52} {'ok' if ok else 'FAIL'}"
    if detail and not ok:
        line += f"  ({detail})"
    print(line, flush=True)
    if not ok:
        failures.append(name)


def run(binary, *args, timeout=600):
    return subprocess.run(
        [str(binary), *args], capture_output=True, text=True, timeout=timeout
    )


def validate(instance, schema_path):
    import jsonschema

    schema = json.loads(Path(schema_path).read_text())
    jsonschema.validate(instance=instance, schema=schema)


def main():
    if len(sys.argv) != 3:
        print("usage: cli_checks.py <eskel-binary> <repo-source-dir>")
        return 2
    binary = Path(sys.argv[1]).resolve()
    src = Path(sys.argv[2]).resolve()
    schemas = src / "schema"
    tmp = Path(tempfile.mkdtemp(prefix="eskel-cli-"))

    # --- compute: file output, schema, determinism -------------------------
    out_a = tmp / "a.json"
    out_b = tmp / "b.json"
    r = run(binary, "compute", "--vertices", TRIANGLE, *LOW_RES, "--out", out_a)
    check("compute exits 0", r.returncode == 0, r.stderr.strip())
    bundle = json.loads(out_a.read_text())
    try:
        validate(bundle, schemas / "bundle.schema.json")
        check("bundle matches schema", True)
    except Exception as exc:  # noqa: BLE001 - report any validation error
        check("bundle matches schema", False, str(exc).splitlines()[0])
    run(binary, "compute", "--vertices", TRIANGLE, *LOW_RES, "--out", out_b)
    check("compute is byte-deterministic", out_a.read_bytes() == out_b.read_bytes())

    # --- compute: stdout mode and CSV exports ------------------------------
    r = run(binary, "compute", "--vertices", TRIANGLE, *LOW_RES)
    ok = r.returncode == 0
    try:
        stdout_bundle = json.loads(r.stdout)
        ok = ok and stdout_bundle["summary"]["n_arcs"] == bundle["summary"]["n_arcs"]
    except Exception:  # noqa: BLE001
        ok = False
    check("compute without --out prints the bundle", ok)

    prefix = tmp / "tri"
    run(binary, "compute", "--vertices", TRIANGLE, *LOW_RES, "--csv", prefix)
    csvs = {}
    for kind in ("measure", "arcs", "junctions", "boundary"):
        p = Path(f"{prefix}_{kind}.csv")
        csvs[kind] = p.read_text().splitlines() if p.exists() else []
    check(
        "csv exports written with headers",
        all(len(lines) >= 2 and "," in lines[0] for lines in csvs.values()),
        {k: len(v) for k, v in csvs.items()},
    )

    # --- compute: config file input -----------------------------------------
    cfg_path = tmp / "cfg.json"
    cfg_path.write_text(
        json.dumps(
            {
                "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]],
                "panels_per_side": 16,
                "grid_resolution": 128,
                "samples_per_arc": 32,
            }
        )
    )
    r = run(binary, "compute", "--input", cfg_path, "--out", tmp / "sq.json")
    sq = json.loads((tmp / "sq.json").read_text())
    check(
        "config-file input works",
        r.returncode == 0 and len(sq["polygon"]["vertices"]) == 4,
        r.stderr.strip(),
    )

    # --- verify: passing run, report schema ---------------------------------
    report_path = tmp / "report.json"
    r = run(
        binary,
        "verify",
        "--vertices",
        TRIANGLE,
        *LOW_RES,
        "--match-tol",
        "0.1",
        "--moment-tol",
        "0.1",
        "--mass-tol",
        "0.1",
        "--convexity-tol",
        "-1e-2",
        "--monotonicity-tol",
        "-1e-3",
        "--out",
        report_path,
    )
    check("verify exits 0 with relaxed tolerances", r.returncode == 0, r.stderr.strip())
    report = json.loads(report_path.read_text())
    try:
        validate(report, schemas / "verify_report.schema.json")
        check("verify report matches schema", True)
    except Exception as exc:  # noqa: BLE001
        check("verify report matches schema", False, str(exc).splitlines()[0])
    check(
        "verify prints one line per check",
        len(report["checks"]) >= 9
        and all(c["passed"] for c in report["checks"])
        and r.stdout.count("pass") >= len(report["checks"]),
    )

    # --- verify: failing run exits 16 ---------------------------------------
    r = run(
        binary, "verify", "--vertices", TRIANGLE, *LOW_RES, "--match-tol", "1e-9"
    )
    check("verify exits 16 when a check fails", r.returncode == 16)
    check("failing check prints FAIL", "FAIL" in r.stdout)

    # --- conjecture: report schema and always-0 exit ------------------------
    conj_path = tmp / "conj.json"
    r = run(
        binary,
        "conjecture",
        "--sides",
        "4",
        "--trials",
        "2",
        "--seed",
        "7",
        *LOW_RES,
        "--out",
        conj_path,
    )
    conj = json.loads(conj_path.read_text())
    try:
        validate(conj, schemas / "conjecture_report.schema.json")
        check("conjecture report matches schema", True)
    except Exception as exc:  # noqa: BLE001
        check("conjecture report matches schema", False, str(exc).splitlines()[0])
    check(
        "conjecture exits 0 and records trials",
        r.returncode == 0 and conj["trials"] == 2 and len(conj["runs"]) == 2,
    )

    # --- exit-code contract --------------------------------------------------
    cases = [
        ("no subcommand usage error", [], 2),
        ("unknown subcommand usage error", ["frobnicate"], 2),
        ("unknown flag usage error", ["compute", "--nope"], 2),
        ("nonconvex polygon", ["compute", "--vertices", "0,0,1,0,0.2,0.2,0,1"], 3),
        ("collinear polygon", ["compute", "--vertices", "0,0,1,0,2,0"], 4),
        ("too few coordinates", ["compute", "--vertices", "0,0,1,0"], 17),
        (
            "zero panel count",
            ["compute", "--vertices", TRIANGLE, "--panels", "0"],
            17,
        ),
        (
            "undersized grid",
            ["compute", "--vertices", TRIANGLE, "--grid", "3"],
            17,
        ),
        ("conjecture needs four sides", ["conjecture", "--sides", "3"], 17),
    ]
    for name, args, expected in cases:
        r = run(binary, *args)
        check(f"exit code: {name}", r.returncode == expected, f"got {r.returncode}")

    print(f"\n{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
