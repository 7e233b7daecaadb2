"""
What if the chair had voted?
============================

Gaussian influence fields over the diagram: decided agents at +/-1,
undecided at 0, and the chair at 0, +1 or +2 (with a wider kernel).
"""

from pathlib import Path

from tenuregraph import case_study as cs
from tenuregraph.plotting import field_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

for margin in (0.1, 1.0):
    fig3 = cs.reproduce_figure3(margin=margin, resolution=200)
    print(f"margin {margin:.1f}: positive area", [f"{f:.1%}" for f in fig3.fractions])

fig3 = cs.reproduce_figure3(margin=1.0)
for (value, _), grid, frac in zip(cs.FIG3_CHAIR_MODES, fig3.grids, fig3.fractions):
    field_svg(out / f"chair_{value:g}.svg", grid, fig3.diagram, f"x4={value:g}: {frac:.0%} positive")
