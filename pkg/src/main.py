"""
Main entry point for bmgeodesics.

    python -m src.main dist a.json b.json
    python -m src.main geodesic a.json b.json --kind hull --grid 0:1:0.1 --out path/
    python -m src.main verify path/manifest.json --partitions 64
    python -m src.main invariant polygon.json --map matrix.json
    python -m src.main family disk.json square.json --lambda 0.5 --count 10 --out family/
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
