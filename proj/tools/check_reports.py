#!/usr/bin/env python3
"""Run the srn binary on a fixed set of inputs and validate every report against the JSON schema."""
import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def cases(net, tmp):
    empty = os.path.join(tmp, "empty.srn")
    bad = os.path.join(tmp, "bad.srn")
    nothing = os.path.join(tmp, "nothing.srn")
    with open(empty, "w") as f:
        f.write("species: S\n")
    with open(bad, "w") as f:
        f.write("S -> -> 2 S\n")
    with open(nothing, "w") as f:
        f.write("")
    pmf_csv = os.path.join(tmp, "pmf.csv")
    traj_csv = os.path.join(tmp, "traj.csv")
    n = lambda name: os.path.join(net, name + ".srn")
    return [
        (["parse", n("ecoli")], 0),
        (["parse", n("three_cycle")], 0),
        (["parse", bad], 2),
        (["parse", nothing], 2),
        (["parse", os.path.join(tmp, "missing.srn")], 2),
        (["classify", n("ecoli")], 0),
        (["classify", n("three_cycle"), "--kappa", "k1=1", "--kappa", "k2=1", "--kappa", "k3=1", "--window", "5"], 1),
        (["classify", n("three_cycle")], 2),
        (["classify", n("inflow")], 0),
        (["classify", empty], 2),
        (["core", n("two_cores")], 0),
        (["core", n("ecoli")], 0),
        (["core", n("two_cores"), "--check", "0,1"], 0),
        (["core", n("two_cores"), "--check", "0,9"], 2),
        (["analyze1d", n("explosive_a")], 0),
        (["analyze1d", n("explosive_b")], 0),
        (["analyze1d", n("cubic_modified"), "--kappa", "k=2"], 0),
        (["analyze1d", n("null_candidate")], 1),
        (["analyze1d", n("two_species"), "--kappa", "k1=1", "--kappa", "k2=1", "--c", "0,7"], 0),
        (["analyze1d", n("ecoli")], 2),
        (["simulate", "traj", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--time", "5",
          "--csv", traj_csv], 0),
        (["simulate", "traj", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--runs", "3",
          "--time", "5"], 0),
        (["simulate", "traj", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--runs", "3",
          "--csv", traj_csv + ".x"], 2),
        (["simulate", "stationary", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--horizon", "200",
          "--csv", pmf_csv], 0),
        (["simulate", "qsd", n("subcritical"), "--kappa", "p=0.5", "--x0", "3", "--particles", "100",
          "--horizon", "10"], 0),
        (["simulate", "tail", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--horizon", "2000"], 0),
        (["simulate", "traj", n("immigration_death"), "--kappa", "l=5", "--kappa", "m=1", "--x0", "1,2"], 2),
        (["oracle", n("conservative"), "--window", "7", "--c", "6,0"], 0),
        (["oracle", n("conservative"), "--window", "7", "--c", "0,7"], 0),
        (["oracle", n("three_cycle"), "--kappa", "k1=1", "--kappa", "k2=1", "--kappa", "k3=1"], None),
        (["oracle", empty, "--window", "3"], 0),
    ], {"traj": traj_csv, "pmf": pmf_csv}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--srn", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--networks", required=True)
    args = ap.parse_args()
    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        todo, csvs = cases(args.networks, tmp)
        for argv, want in todo:
            proc = subprocess.run([args.srn] + argv, capture_output=True, text=True)
            label = " ".join(os.path.basename(a) for a in argv)
            problems = []
            try:
                report = json.loads(proc.stdout)
            except json.JSONDecodeError as e:
                problems.append(f"stdout is not JSON: {e}")
                report = None
            if report is not None:
                for err in validator.iter_errors(report):
                    path = "/".join(str(p) for p in err.absolute_path)
                    problems.append(f"schema: {path}: {err.message[:200]}")
                if report.get("exit_code") != proc.returncode:
                    problems.append(f"exit_code field {report.get('exit_code')} != process status {proc.returncode}")
                if report.get("command", {}).get("argv") != argv:
                    problems.append("command.argv does not echo the arguments")
            if want is not None and proc.returncode != want:
                problems.append(f"exit status {proc.returncode}, expected {want}")
            print(("ok   " if not problems else "FAIL ") + label)
            for p in problems:
                print("     " + p)
            failures += bool(problems)
        with open(csvs["traj"]) as f:
            header = f.readline().strip()
        if header != "time,S":
            print(f"FAIL trajectory csv header {header!r}")
            failures += 1
        with open(csvs["pmf"]) as f:
            header = f.readline().strip()
            rows = [line.split(",") for line in f if line.strip()]
        total = sum(float(r[1]) for r in rows)
        if header != "value,probability" or abs(total - 1) > 1e-9:
            print(f"FAIL pmf csv header {header!r} total {total}")
            failures += 1
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
