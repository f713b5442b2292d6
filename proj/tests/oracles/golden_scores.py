#!/usr/bin/env python3
# Copyright 2026 The SEA Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes the golden score JSONL for the shipped fixture bundle.

Values come from the 50-digit mpmath evaluation in metric_oracle.py, rounded
to 12 significant digits, in the row layout of `sea score`.

Usage: golden_scores.py <fixtures_dir> <out.jsonl>
"""
import json
import pathlib
import sys

import mpmath as mp

sys.path.insert(0, str(pathlib.Path(__file__).parent))
import metric_oracle as o  # noqa: E402


def r12(x):
    return float(mp.nstr(x, 12, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)) \
        if x != 0 else 0.0


def main():
    fx = pathlib.Path(sys.argv[1])
    db = {c["class"]: c for c in json.loads((fx / "commonsense_db.json").read_text())}
    probs = json.loads((fx / "probabilities.json").read_text())
    lines = []
    for raw in (fx / "annotations.jsonl").read_text().splitlines():
        if not raw.strip():
            continue
        rec = json.loads(raw)
        E = len(db[rec["class"]]["elements"])
        V = sum(1 for x in rec["presence"].values() if x)
        P = o.clipP(mp.mpf(repr(probs[rec["sketch_id"]])))
        v = mp.mpf(V) / E
        row = {
            "sketch_id": rec["sketch_id"], "class": rec["class"], "E": E,
            "V": float(V), "P": r12(P), "v": r12(v), "u": r12(o.u(v)), "g": r12(o.g(P, v)),
            "reward": r12(o.reward(P, v)), "penalty": r12(o.penalty(P, v)),
            "Z": r12(o.Z(P, v)), "sea": r12(o.S(P, v)),
            "provenance": {"E": "fixture", "V": "fixture", "P": "fixture"},
        }
        lines.append(json.dumps(row, separators=(",", ":"), ensure_ascii=False))
    pathlib.Path(sys.argv[2]).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
