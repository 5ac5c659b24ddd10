#!/usr/bin/env python3
"""Download the four hospital subsets of the UCI heart-disease data and
concatenate them into data/heart.csv (13 features + target per row, "?" for
missing cells). Needs outbound network access; run once per checkout.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases/heart-disease"
# site order: cleveland 303 rows, hungarian 294, switzerland 123, va 200
SUBSETS = ("cleveland", "hungarian", "switzerland", "va")
EXPECTED_TOTAL = 920
N_FIELDS = 14


def fetch(name: str, timeout: float) -> list[str]:
    url = f"{BASE}/processed.{name}.data"
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        text = resp.read().decode("utf-8", errors="replace")
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != N_FIELDS:
            raise ValueError(f"{url} line {lineno}: expected {N_FIELDS} fields, got {len(fields)}")
        rows.append(",".join(fields))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "heart.csv"))
    ap.add_argument("--timeout", type=float, default=30.0)
    args = ap.parse_args(argv)

    all_rows: list[str] = []
    for name in SUBSETS:
        try:
            rows = fetch(name, args.timeout)
        except Exception as exc:
            print(f"error: could not fetch {name}: {exc}", file=sys.stderr)
            return 1
        print(f"{name}: {len(rows)} rows")
        all_rows.extend(rows)

    if len(all_rows) != EXPECTED_TOTAL:
        print(f"error: got {len(all_rows)} rows total, expected {EXPECTED_TOTAL}", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(all_rows) + "\n")
    print(f"wrote {out} ({len(all_rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
