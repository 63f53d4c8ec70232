#!/usr/bin/env python3
"""Run the full verification suite from a source checkout.

Equivalent to `surfacemaps reproduce-all`; exists so the suite can be run
without installing the package.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from surfacemaps.cli import main

if __name__ == "__main__":
    sys.exit(main(["reproduce-all", *sys.argv[1:]]))
