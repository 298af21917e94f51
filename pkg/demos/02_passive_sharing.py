"""Passive sharing: sweep the measurement precision G for different pointers.

The first observers maximize their own violation; whether the second
observers still see one depends on how gently the first ones measured.
Produces the sweep data behind the violation-window plots and saves it as
CSV next to this script.
"""

from pathlib import Path

import numpy as np

from bilocalnet import (
    equal_g_search,
    mixed_pointer_search,
    passive_sweep,
    quadruple_violation_window,
)
from bilocalnet.analysis import sweep_points_to_csv

OUT = Path(__file__).resolve().parent

g_grid = np.linspace(0.50, 1.0, 101)

for model1, model2 in [("optimal", "optimal"), ("square", "square"), ("square", "optimal")]:
    label = f"{model1}/{model2}"
    points = passive_sweep(model1, model2, g_grid)
    path = OUT / f"passive_{model1}_{model2}.csv"
    path.write_text(sweep_points_to_csv(points))

    window = quadruple_violation_window(model1, model2)
    best = max(points, key=lambda p: p.min_b)
    print(f"{label}:")
    print(f"  wrote {path.name} ({len(points)} points)")
    if window:
        print(f"  all four quantities exceed 1 for G in ({window[0]:.5f}, {window[1]:.5f})")
    else:
        print("  no simultaneous violation of all four at any G")
    print(f"  best simultaneous value {best.min_b:.5f} at G = {best.g1:.3f}")

# the mixed case admits a double violation; find its optimum over (G1, G2)
mixed = mixed_pointer_search("square", "optimal")
print("\nmixed pointers, independent precisions:")
print(f"  max min(B11, B22) = {mixed.value:.5f} at (G1, G2) = "
      f"({mixed.g1:.4f}, {mixed.g2:.4f})")
eq_value, eq_g = equal_g_search("square", "optimal")
print(f"  constrained to G1 = G2: {eq_value:.5f} at G = {eq_g:.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    points = passive_sweep("optimal", "optimal", g_grid)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(g_grid, [p.b11 for p in points], label="B11")
    ax.plot(g_grid, [p.b22 for p in points], label="B22")
    ax.plot(g_grid, [p.b12 for p in points], "--", label="B12 = B21")
    ax.axhline(1.0, color="k", lw=0.8)
    ax.set_xlabel("precision factor G")
    ax.set_ylabel("inequality value B")
    ax.set_title("passive sharing, optimal pointers")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "passive_optimal.png", dpi=150)
    print(f"\nsaved plot to {OUT / 'passive_optimal.png'}")
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
