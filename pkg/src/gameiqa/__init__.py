"""gameiqa: no-reference quality assessment for game-style renders."""

__version__ = "0.1.0"
