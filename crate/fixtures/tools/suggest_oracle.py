"""Offline scoring of the suggestion fixture, written independently of the
engine. Reads the CSVs back (so rounding matches what the engine loads) and
writes fixtures/suggest/expected.json.

    python3 fixtures/tools/suggest_oracle.py
"""
import csv
import json
import math
from functools import lru_cache
from pathlib import Path

DIR = Path(__file__).resolve().parent.parent / "suggest"
ANCHOR = ("signal", "anchor", 2000, 2019)


def load():
    manifest = json.loads((DIR / "manifest.json").read_text())
    data = {}
    for name, file in manifest["datasets"].items():
        with open(DIR / file) as f:
            rows = list(csv.reader(f))
        years = [int(y) for y in rows[0][1:]]
        data[name] = {r[0]: dict(zip(years, map(float, r[1:]))) for r in rows[1:]}
    return data


def pearson(a, b):
    n = len(a)
    if n != len(b) or n < 2:
        return 0.0
    ma, mb = sum(a) / n, sum(b) / n
    cov = sum((x - ma) * (y - mb) for x, y in zip(a, b)) / n
    va = sum((x - ma) ** 2 for x in a) / n
    vb = sum((y - mb) ** 2 for y in b) / n
    if va == 0 or vb == 0:
        return 0.0
    return max(-1.0, min(1.0, cov / math.sqrt(va * vb)))


def dtw(a, b):
    @lru_cache(maxsize=None)
    def best(i, j):
        cost = abs(a[i] - b[j])
        if i == 0 and j == 0:
            return cost
        options = []
        if i > 0:
            options.append(best(i - 1, j))
        if j > 0:
            options.append(best(i, j - 1))
        if i > 0 and j > 0:
            options.append(best(i - 1, j - 1))
        return cost + min(options)

    return best(len(a) - 1, len(b) - 1)


def ranking(scores):
    return [[k, v] for k, v in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))]


def main():
    data = load()
    name, key, lo, hi = ANCHOR
    cut = lambda s: [v for y, v in sorted(s.items()) if lo <= y <= hi]
    anchor = cut(data[name][key])
    out = {}
    for method in ("pearson", "dtw"):
        score = (lambda o: pearson(anchor, o)) if method == "pearson" else (lambda o: 1 / (1 + dtw(tuple(anchor), tuple(o))))
        keys = {k: score(cut(s)) for k, s in data[name].items() if k != key}
        datasets = {d: score(cut(rows[key])) for d, rows in data.items() if d != name and key in rows}
        out[method] = {"keys": ranking(keys), "datasets": ranking(datasets)}
    (DIR / "expected.json").write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
