#!/usr/bin/env python3
"""Regenerate the checked-in golden reports for the named semirings.

    python scripts/export_goldens.py            # writes tests/golden/<name>.json
    python scripts/export_goldens.py --check    # exit 1 if any file would change

Only run without --check after reviewing a deliberate output change.
"""

import argparse
import sys
from pathlib import Path

from finsemiring.corpus import NAMED, named
from finsemiring.report import golden_report

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args()
    GOLDEN.mkdir(parents=True, exist_ok=True)
    stale = []
    for name in NAMED:
        path = GOLDEN / f"{name}.json"
        text = golden_report(named(name))
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8", newline="\n")
            print(f"wrote {path}")
    if stale:
        print("stale goldens: " + ", ".join(stale))
        sys.exit(1)


if __name__ == "__main__":
    main()
