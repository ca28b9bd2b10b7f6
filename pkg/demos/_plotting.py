"""Optional matplotlib helper shared by the demos."""
import sys


def pyplot_or_none(wanted):
    if not wanted:
        return None
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is not installed; skipping the figure", file=sys.stderr)
        return None
    return plt
