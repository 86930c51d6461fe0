"""Convert raw UCI download files into the canonical benchmark CSVs.

The benchmark harness expects plain numeric CSVs with the label in the last
column and '?' marking missing cells. The raw UCI files carry ID columns and
assorted layouts, so this script rewrites them:

    wpbc.data                          -> wbcd_prognostic.csv
        drop the ID and Time columns, move the N/R outcome to the end
        (32 features, 198 rows)
    breast-cancer-wisconsin.data       -> wbcd_diagnostic2.csv
        drop the ID column; the 2/4 class is already last
        (9 features, 699 rows)
    wdbc.data                          -> wbcd_diagnostic1.csv
        drop the ID column, move the B/M diagnosis to the end
        (30 features, 569 rows)
    risk_factors_cervical_cancer.csv   -> cervical_cancer.csv
        keep the 32 feature columns and the Biopsy target, dropping the
        Hinselmann/Schiller/Citology targets (858 rows)
    mammographic_masses.data           -> mammographic_mass.csv
        passthrough; severity is already the last column (961 rows)

Usage:
    python demos/prepare_uci.py RAW_DIR [--out data]

Only the files present in RAW_DIR are converted.
"""

import argparse
import csv
import sys
from pathlib import Path


def _read_rows(path: Path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [[c.strip() for c in row] for row in csv.reader(fh) if any(c.strip() for c in row)]


def _write_rows(path: Path, rows: list[list[str]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        csv.writer(fh).writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def convert_prognostic(raw: Path, out: Path) -> None:
    rows = _read_rows(raw)
    # columns: ID, outcome (N/R), time, then 32 features
    out_rows = [row[3:] + [row[1]] for row in rows]
    _write_rows(out, out_rows)


def convert_diagnostic2(raw: Path, out: Path) -> None:
    rows = _read_rows(raw)
    # columns: ID, 9 features, class (2 benign / 4 malignant)
    _write_rows(out, [row[1:] for row in rows])


def convert_diagnostic1(raw: Path, out: Path) -> None:
    rows = _read_rows(raw)
    # columns: ID, diagnosis (B/M), 30 features
    _write_rows(out, [row[2:] + [row[1]] for row in rows])


def convert_cervical(raw: Path, out: Path) -> None:
    rows = _read_rows(raw)
    header = rows[0]
    drop = {"Hinselmann", "Schiller", "Citology"}
    label = header.index("Biopsy")
    keep = [i for i, name in enumerate(header) if name not in drop and i != label]
    out_rows = [[row[i] for i in keep] + [row[label]] for row in rows]
    _write_rows(out, out_rows)


def convert_mammographic(raw: Path, out: Path) -> None:
    _write_rows(out, _read_rows(raw))


CONVERTERS = {
    "wpbc.data": ("wbcd_prognostic.csv", convert_prognostic),
    "breast-cancer-wisconsin.data": ("wbcd_diagnostic2.csv", convert_diagnostic2),
    "wdbc.data": ("wbcd_diagnostic1.csv", convert_diagnostic1),
    "risk_factors_cervical_cancer.csv": ("cervical_cancer.csv", convert_cervical),
    "mammographic_masses.data": ("mammographic_mass.csv", convert_mammographic),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("raw_dir", help="directory holding the raw UCI files")
    parser.add_argument("--out", default="data", help="output directory (default: data/)")
    args = parser.parse_args(argv)
    raw_dir = Path(args.raw_dir)
    out_dir = Path(args.out)
    converted = 0
    for raw_name, (out_name, fn) in CONVERTERS.items():
        raw = raw_dir / raw_name
        if raw.exists():
            fn(raw, out_dir / out_name)
            converted += 1
    if converted == 0:
        print(f"no known raw files found in {raw_dir}", file=sys.stderr)
        print("expected any of: " + ", ".join(CONVERTERS), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
