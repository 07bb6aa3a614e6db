"""Write the fixed instance corpus as JSON files."""

import argparse
from pathlib import Path

from diskshrink import fileformat, generators


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    items = generators.corpus()
    for name, inst in items:
        fileformat.save(inst, out / f"{name}.json")
    print(f"wrote {len(items)} instances to {out}")


if __name__ == "__main__":
    main()
