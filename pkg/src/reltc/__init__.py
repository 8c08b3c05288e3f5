"""Relative topological complexity: explicit motion planners, cup-length bounds and audits."""
from pathlib import Path

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"
