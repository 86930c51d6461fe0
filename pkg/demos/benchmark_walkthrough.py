"""End-to-end benchmark on a synthetic imbalanced dataset.

Writes a small CSV, runs the seed-paired comparison across every method with
a reduced grid and trial count, and prints the comparison table plus the
signed-rank verdicts. The same flow is available from the command line:

    opfsample compare --data toy.csv --trials 5 --grid 3:9:2 --out-dir reports
"""

import tempfile
from pathlib import Path

import numpy as np

from opfsample import ExperimentConfig, compare_methods
from opfsample.harness import METHODS, render_comparison_text, write_comparison_files

rng = np.random.default_rng(17)
n_maj, n_min = 140, 40
majority = rng.normal(size=(n_maj, 4))
minority = rng.normal(size=(n_min, 4)) * 0.9 + [1.8, 1.2, 0.0, 0.0]
rows = []
for vec, label in [(majority, 0), (minority, 1)]:
    rows += [",".join(f"{v:.6f}" for v in r) + f",{label}" for r in vec]
rng.shuffle(rows)

with tempfile.TemporaryDirectory() as tmp:
    csv_path = Path(tmp) / "toy.csv"
    csv_path.write_text("\n".join(rows) + "\n")

    configs = [
        ExperimentConfig(
            data_path=str(csv_path),
            method=m,
            grid=None if m == "none" else (3, 5, 7, 9),
            trials=5,
            base_seed=1,
        )
        for m in METHODS
    ]
    cmp = compare_methods(configs)
    print(render_comparison_text(cmp))

    out_dir = Path(tmp) / "reports"
    paths = write_comparison_files(cmp, out_dir)
    print("report files written:")
    for p in paths:
        print(f"  {p.name}")
