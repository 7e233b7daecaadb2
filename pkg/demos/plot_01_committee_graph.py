"""
Building the committee graph
============================

From scholarship counts to the weighted interaction graph and its
Laplacian, first on a toy four-person department and then on the
embedded 11-agent case study.
"""

import numpy as np

from tenuregraph import DepartmentData, ModelParams, build_graph
from tenuregraph import case_study as cs

np.set_printoptions(precision=3, suppress=True)

# A toy department: journal papers, all publications and funding per agent,
# and the journal papers each pair wrote together.
toy = DepartmentData(
    agent_ids=("ana", "bo", "cy", "di"),
    criteria={"JOUR": [6, 1, 2, 0], "PUBL": [15, 4, 6, 1], "FUND": [2.5, 0, 0.5, 0]},
    pair_criteria={"JOUR": [[0, 1, 2, 0], [1, 0, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0]]},
    roles={"di": "chair"},
    inbred_set={"bo", "di"},
)
graph = build_graph(toy, ModelParams(eta=0.25, p_max=7.0, gamma=0.25))
print("productivity (chair +2):", graph.p.values)
print("collaboration R:\n", graph.R)
print("weights W:\n", graph.W)

# Rows of a Laplacian sum to zero.
print("L @ 1 =", graph.L @ np.ones(graph.n))

# The case study ships the published productivity vector and collaboration table.
case = cs.load_case_study()
print("published productivity sums to", case.department.productivity.sum())
print("collaboration asymmetry", case.asymmetry, "at", case.asymmetric_pairs)

g = build_graph(case.department, case.params)
print("smallest off-diagonal weight:", g.W[~np.eye(11, dtype=bool)].min())
