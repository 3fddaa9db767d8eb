#!/usr/bin/env python3
"""End-to-end checks of the psqm command line.

usage: test_cli.py PATH_TO_PSQM SCHEMA_DIR
"""

import json
import math
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

PSQM = str(pathlib.Path(sys.argv[1]).resolve())
SCHEMAS = pathlib.Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


SCHEMA = {name: schema(name) for name in ("polynomial", "verify", "transform", "error")}


def run(*args, cwd=None):
    proc = subprocess.run([PSQM, *args], capture_output=True, text=True, cwd=cwd, timeout=600)
    return proc.returncode, proc.stdout, proc.stderr


def check(label, ok, detail=""):
    print(("ok   " if ok else "FAIL ") + label + (f"  ({detail})" if detail and not ok else ""))
    if not ok:
        failures.append(label)


def expect_text(label, args, want, code=0):
    rc, out, err = run(*args)
    check(label, rc == code and out.strip() == want, f"exit {rc}, stdout {out.strip()!r}, stderr {err.strip()!r}")


def expect_json(label, args, schema_name, code=0):
    rc, out, err = run(*args)
    try:
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA[schema_name])
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        check(label, False, f"exit {rc}: {e}")
        return None
    check(label, rc == code, f"exit {rc}, stderr {err.strip()!r}")
    return doc


def read_field(path):
    lines = pathlib.Path(path).read_text().splitlines()
    assert lines[0] == "qmin,qmax,pmin,pmax,nq,np"
    qmin, qmax, pmin, pmax, nq, np_ = (float(x) for x in lines[1].split(","))
    nq, np_ = int(nq), int(np_)
    values = [complex(*map(float, line.split(","))) for line in lines[2:]]
    assert len(values) == nq * np_
    return qmin, qmax, pmin, pmax, nq, np_, values


# conversions and commutators
expect_text("convert Q*P", ["convert", "Q*P", "--to", "pq"], "P*Q + i")
expect_text("convert weyl{Q^2*P^2}", ["convert", "weyl{Q^2*P^2}", "--to", "pq"], "P^2*Q^2 + 2*i*P*Q + -1/2")
expect_text("convert P+Q to weyl", ["convert", "P+Q", "--to", "weyl"], "weyl{Q + P}")
expect_text("convert to qp", ["convert", "P*P*Q*Q", "--to", "qp"], "Q^2*P^2 + -4*i*Q*P + -2")
expect_text("convert ladder input", ["convert", "a*adag - adag*a"], "1")
expect_text("expand (P+Q)^2", ["expand", "P+Q", "--power", "2"], "weyl{Q^2 + 2*Q*P + P^2}")
expect_text("expand to pq", ["expand", "P+Q", "--power", "2", "--to", "pq"], "Q^2 + 2*P*Q + P^2 + i")
expect_text("expand normal", ["expand", "a*adag", "--to", "normal"], "adag*a + 1")
expect_text("commutator Q P", ["commutator", "Q", "P"], "i")
expect_text("commutator Q^2 P^2", ["commutator", "Q^2", "P^2"], "4*i*P*Q + -2")
expect_text("commutator Q Q", ["commutator", "Q", "Q"], "0")

# text output can be piped back in
rc, out, _ = run("convert", "weyl{Q^3*P^2}", "--to", "qp")
expect_text("output re-parses", ["convert", out.strip(), "--to", "weyl"], "weyl{Q^3*P^2}")

doc = expect_json("convert json", ["convert", "Q*P", "--json"], "polynomial")
check("convert json text", doc is not None and doc["result"]["text"] == "P*Q + i")
expect_json("commutator json", ["commutator", "Q^2", "P^2", "--format", "json"], "polynomial")
expect_json("expand normal json", ["expand", "Q", "--power", "3", "--to", "normal", "--json"], "polynomial")

# errors
rc, out, err = run("convert", "Q2")
check("parse error exit 2", rc == 2 and "unknown identifier" in err and "^^" in err, f"exit {rc}, {err!r}")
doc = expect_json("parse error json", ["convert", "Q*(P+", "--json"], "error", code=2)
check("parse error span", doc is not None and doc["error"]["span"]["begin"] == 5)
doc = expect_json("commutator error names operand", ["commutator", "Q", "P^", "--json"], "error", code=2)
check("commutator error rendered", doc is not None and "P^" in doc["error"]["rendered"])
expect_json("ladder inside block", ["convert", "pq{a*Q}", "--json"], "error", code=2)
rc, _, _ = run("frobnicate")
check("unknown subcommand exit 2", rc == 2)
rc, _, _ = run("expand", "Q", "--power", "65")
check("power out of range exit 2", rc == 2)

# verification suites
for suite, extra in (("orderings", ["--max-degree", "6"]), ("commutators", []), ("hermite", ["--max-degree", "8"])):
    doc = expect_json(f"verify {suite}", ["verify", suite, *extra, "--json"], "verify")
    check(f"verify {suite} ok", doc is not None and doc["status"] == "ok" and doc["mismatches"] == 0)
rc, out, _ = run("verify", "commutators")
check("verify text", rc == 0 and "commutators: ok" in out, out)
expect_json("verify resource guard degree", ["verify", "orderings", "--max-degree", "9", "--json"], "error", code=2)
expect_json("verify resource guard dim", ["verify", "wigner", "--dim", "129", "--json"], "error", code=2)
doc = expect_json("verify wigner", ["verify", "wigner", "--dim", "64", "--json"], "verify")
check("verify wigner ok", doc is not None and doc["status"] == "ok")
doc = expect_json("verify transform", ["verify", "transform", "--json"], "verify")
check("verify transform ok", doc is not None and doc["status"] == "ok")

# transform
rc, out, _ = run("transform", "--gaussian", "--parseval")
norms = {line.split()[0]: float(line.split()[1]) for line in out.splitlines()}
check("gaussian parseval", rc == 0 and abs(norms["lhs"] - 0.5) < 1e-5 and abs(norms["rhs"] - 0.5) < 1e-5, out)

with tempfile.TemporaryDirectory() as tmp:
    doc = expect_json("transform out", ["transform", "--gaussian", "--out", str(pathlib.Path(tmp) / "g.csv"), "--json"],
                      "transform")
    check("transform out names file", doc is not None and doc["output"].endswith("g.csv"))
    rc, _, _ = run("transform", "--gaussian", "--out", "g.csv", cwd=tmp)
    rc2, _, err = run("transform", "--input", "g.csv", "--inverse", "--out", "h.csv", cwd=tmp)
    qmin, qmax, pmin, pmax, nq, np_, h = read_field(pathlib.Path(tmp) / "h.csv")
    dq, dp = (qmax - qmin) / (nq - 1), (pmax - pmin) / (np_ - 1)
    worst = 0.0
    for a in range(nq // 4, nq - nq // 4):
        for b in range(np_ // 4, np_ - np_ // 4):
            q, p = qmin + a * dq, pmin + b * dp
            worst = max(worst, abs(h[a * np_ + b] - math.exp(-q * q - p * p)))
    check("gaussian round trip through files", rc == 0 and rc2 == 0 and worst < 1e-5, f"max error {worst}")

    empty = pathlib.Path(tmp) / "empty.csv"
    empty.write_text("")
    doc = expect_json("empty grid", ["transform", "--input", str(empty), "--json"], "error", code=2)
    bad = pathlib.Path(tmp) / "bad.csv"
    bad.write_text("qmin,qmax,pmin,pmax,nq,np\n-1,1,-1,1,2,2\n0,0\n0,0\n0,zz\n0,0\n")
    rc, _, err = run("transform", "--input", str(bad))
    check("malformed csv diagnostics", rc == 2 and "line 5" in err and "column 2" in err, err)
    flat = pathlib.Path(tmp) / "flat.csv"
    flat.write_text("-1,1,-1,1,2,2\n1,0\n1,0\n1,0\n1,0\n")
    doc = expect_json("undecayed input warns", ["transform", "--input", str(flat), "--json"], "transform")
    check("undecayed flagged", doc is not None and doc["reliable"] is False and "warning" in doc)
    rc, _, _ = run("transform", "--input", str(pathlib.Path(tmp) / "missing.csv"))
    check("missing file exit 2", rc == 2)

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
