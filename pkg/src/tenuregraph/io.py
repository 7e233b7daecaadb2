"""JSON and CSV readers/writers for departments, scenarios and results."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import jsonschema
import numpy as np

from .model import DepartmentData, ModelParams
from .voting import VotingScenario

__all__ = [
    "SchemaError",
    "DEPARTMENT_SCHEMA",
    "SCENARIO_SCHEMA",
    "department_to_json",
    "department_from_json",
    "load_department",
    "scenario_to_json",
    "scenario_from_json",
    "load_scenario",
    "write_matrix_csv",
    "read_matrix_csv",
    "write_vector_csv",
    "write_rows_csv",
    "write_json",
]


class SchemaError(ValueError):
    pass


_agent_id = {"type": ["integer", "string"]}
_number_array = {"type": "array", "items": {"type": "number", "minimum": 0}}
_square = {"type": "array", "items": _number_array}

DEPARTMENT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "department",
    "type": "object",
    "required": ["agents"],
    "additionalProperties": False,
    "properties": {
        "agents": {"type": "array", "items": _agent_id, "minItems": 1, "uniqueItems": True},
        "criteria": {"type": "object", "additionalProperties": _number_array},
        "pair_criteria": {"type": "object", "additionalProperties": _square},
        "roles": {"type": "object", "additionalProperties": {"enum": ["chair", "coordinator"]}},
        "inbred_set": {"type": "array", "items": _agent_id, "uniqueItems": True},
        "productivity": _number_array,
        "collaboration": _square,
        "weights": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "individual": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
                "pair": {"type": "object", "additionalProperties": {"type": "number", "minimum": 0}},
            },
        },
    },
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "scenario",
    "type": "object",
    "required": ["candidate", "v_plus", "v_minus", "v_undecided"],
    "additionalProperties": False,
    "properties": {
        "candidate": _agent_id,
        "v_plus": {"type": "array", "items": _agent_id},
        "v_minus": {"type": "array", "items": _agent_id},
        "v_undecided": {"type": "array", "items": _agent_id},
        "non_voters": {"type": "object", "additionalProperties": {"type": "number"}},
        "candidate_x0": {"type": "number"},
        "merit": {"oneOf": [{"enum": ["half-pmax", "half-mean"]},
                            {"type": "number", "minimum": -1, "maximum": 1}]},
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "eps": {"type": "number", "minimum": 0},
        "mu": {"type": "number", "minimum": 0},
        "solve_mode": {"enum": ["joint", "clamped"]},
        "blend_scale": {"enum": ["p_max", "max_p"]},
        "seed": {"type": "integer", "minimum": 0},
        "trials": {"type": "integer", "minimum": 1},
    },
}


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{schema['title']} input invalid at {path}: {exc.message}") from None


def _key_lookup(agents):
    """Map JSON object keys (always strings) back to agent ids."""
    return {str(a): a for a in agents}


def _resolve(agents, keys, what):
    lookup = _key_lookup(agents)
    out = []
    for k in keys:
        if str(k) not in lookup:
            raise SchemaError(f"{what} references unknown agent {k!r}")
        out.append(lookup[str(k)])
    return out


def department_to_json(data: DepartmentData, params: ModelParams | None = None) -> dict:
    doc = {"agents": list(data.agent_ids)}
    if data.criteria:
        doc["criteria"] = {k: v.tolist() for k, v in data.criteria.items()}
    if data.pair_criteria:
        doc["pair_criteria"] = {k: v.tolist() for k, v in data.pair_criteria.items()}
    if data.roles:
        doc["roles"] = {str(a): r for a, r in data.roles.items()}
    doc["inbred_set"] = sorted(data.inbred_set, key=data.agent_ids.index)
    if data.productivity is not None:
        doc["productivity"] = data.productivity.tolist()
    if data.collaboration is not None:
        doc["collaboration"] = data.collaboration.tolist()
    if params is not None:
        doc["weights"] = {"individual": dict(params.individual_weights), "pair": dict(params.pair_weights)}
    return doc


def department_from_json(doc: dict):
    """Return ``(DepartmentData, weights)``; ``weights`` may be ``None``."""
    _validate(doc, DEPARTMENT_SCHEMA)
    agents = list(doc["agents"])
    roles_raw = doc.get("roles", {})
    role_agents = _resolve(agents, roles_raw, "roles")
    roles = {a: roles_raw[k] for a, k in zip(role_agents, roles_raw)}
    if len(set(roles.values())) != len(roles):
        raise SchemaError("each role may be held by one agent only")
    try:
        data = DepartmentData(
            agent_ids=tuple(agents),
            criteria=doc.get("criteria", {}),
            pair_criteria=doc.get("pair_criteria", {}),
            roles=roles,
            inbred_set=frozenset(_resolve(agents, doc.get("inbred_set", []), "inbred_set")),
            productivity=doc.get("productivity"),
            collaboration=doc.get("collaboration"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return data, doc.get("weights")


def load_department(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return department_from_json(doc)


_SCENARIO_FIELDS = ("candidate_x0", "merit", "alpha", "eps", "mu", "solve_mode", "blend_scale")


def scenario_to_json(scenario: VotingScenario, seed=None, trials=None) -> dict:
    order = scenario.agent_ids.index
    doc = {
        "candidate": scenario.candidate,
        "v_plus": sorted(scenario.v_plus, key=order),
        "v_minus": sorted(scenario.v_minus, key=order),
        "v_undecided": sorted(scenario.v_undecided, key=order),
        "non_voters": {str(a): float(v) for a, v in scenario.non_voters.items()},
    }
    for name in _SCENARIO_FIELDS:
        doc[name] = getattr(scenario, name)
    if seed is not None:
        doc["seed"] = seed
    if trials is not None:
        doc["trials"] = trials
    return doc


def scenario_from_json(doc: dict, agent_ids):
    """Return ``(VotingScenario, seed, trials)``; seed/trials may be ``None``."""
    _validate(doc, SCENARIO_SCHEMA)
    agents = list(agent_ids)
    nv_raw = doc.get("non_voters", {})
    nv = {a: float(nv_raw[k]) for a, k in zip(_resolve(agents, nv_raw, "non_voters"), nv_raw)}
    kwargs = {k: doc[k] for k in _SCENARIO_FIELDS if k in doc}
    try:
        scenario = VotingScenario(
            agent_ids=tuple(agents),
            candidate=_resolve(agents, [doc["candidate"]], "candidate")[0],
            v_plus=_resolve(agents, doc["v_plus"], "v_plus"),
            v_minus=_resolve(agents, doc["v_minus"], "v_minus"),
            v_undecided=_resolve(agents, doc["v_undecided"], "v_undecided"),
            non_voters=nv,
            **kwargs,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return scenario, doc.get("seed"), doc.get("trials")


def load_scenario(path, agent_ids):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return scenario_from_json(doc, agent_ids)


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def write_matrix_csv(path, M, agent_ids, fmt="%.6f"):
    M = np.asarray(M, dtype=float)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["agent_id", *agent_ids])
        for a, row in zip(agent_ids, M):
            w.writerow([a, *(fmt % v for v in row)])


def _parse_id(s):
    try:
        return int(s)
    except ValueError:
        return s


def read_matrix_csv(path):
    """Read a labelled square matrix written by :func:`write_matrix_csv`.

    Returns ``(agent_ids, matrix)``.
    """
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty CSV")
    header = rows[0]
    ids = [_parse_id(h) for h in header[1:]]
    body = rows[1:]
    if len(body) != len(ids):
        raise SchemaError(f"{path}: expected {len(ids)} rows, found {len(body)}")
    M = np.zeros((len(ids), len(ids)))
    for i, row in enumerate(body):
        if _parse_id(row[0]) != ids[i] or len(row) != len(ids) + 1:
            raise SchemaError(f"{path}: row {i + 1} is malformed")
        M[i] = [float(v) for v in row[1:]]
    return tuple(ids), M


def write_vector_csv(path, agent_ids, columns: dict, fmt="%.6f"):
    names = list(columns)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["agent_id", *names])
        for i, a in enumerate(agent_ids):
            w.writerow([a, *(fmt % columns[n][i] for n in names)])


def write_rows_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
