"""
Inbreeding and the undecided votes
==================================

Monte Carlo over noisy initial leanings, swept over the inbreeding
constant gamma and the influence constant mu.
"""

from pathlib import Path

import numpy as np

from tenuregraph import build_graph, monte_carlo_votes
from tenuregraph import case_study as cs
from tenuregraph.plotting import sweep_svg

out = Path("demo_output")
out.mkdir(exist_ok=True)

graph = build_graph(cs.case_study_department(), cs.case_study_params())
stats = monte_carlo_votes(graph, cs.case_study_scenario(), trials=1000, seed=42)
for agent, (mean, std) in stats.as_dict().items():
    print(f"agent {agent}: mean {mean:+.3e}  std {std:.3e}")

sweep = cs.reproduce_figure4(trials=300, seed=42)
for mu in sweep.mus:
    x2 = sweep.series(2, mu)
    print(f"mu={mu:g}: x2 over gamma", np.array2string(x2, precision=6), "decreasing:", bool(np.all(np.diff(x2) < 0)))
sweep_svg(out / "inbreeding_sweep.svg", sweep)

# Decided agents can also be held fixed while only the undecided move.
clamped = monte_carlo_votes(graph, cs.case_study_scenario(solve_mode="clamped"), 1000, 42)
print("clamped means:", dict(zip(clamped.agent_ids, np.round(clamped.mean, 4))))
