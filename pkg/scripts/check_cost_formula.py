#!/usr/bin/env python3
"""Numerical check of the cost-sensitive accuracy formula.

csa = (tp + tn) / (tp + tn + w_fp * fp + w_fn * fn), w_fp = 0.2, w_fn = 0.8.

Three reference confusion matrices with known scores pin the formula down;
each is recomputed here and compared at 4 decimals (tolerance 1e-3).
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cardioprompt.metrics import ConfusionMatrix, cost_metrics

REFERENCE = [
    ("random forest", ConfusionMatrix(tp=91, tn=65, fp=15, fn=13), 0.9208),
    ("boosted trees", ConfusionMatrix(tp=91, tn=66, fp=14, fn=13), 0.9224),
    ("prompt, dk source LR", ConfusionMatrix(tp=103, tn=18, fp=62, fn=1), 0.9016),
]


def main() -> int:
    ok = True
    print(f"{'case':<22} {'tp':>4} {'tn':>4} {'fp':>4} {'fn':>4} {'fp cost':>8} {'fn cost':>8} {'csa':>8} {'expected':>9}")
    for name, cm, expected in REFERENCE:
        fp_cost, fn_cost, csa = cost_metrics(cm)
        match = abs(csa - expected) <= 1e-3
        ok = ok and match
        flag = "" if match else "  <- MISMATCH"
        print(
            f"{name:<22} {cm.tp:>4} {cm.tn:>4} {cm.fp:>4} {cm.fn:>4}"
            f" {fp_cost:>8.4f} {fn_cost:>8.4f} {csa:>8.4f} {expected:>9.4f}{flag}"
        )
    print("formula verified" if ok else "formula check FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
