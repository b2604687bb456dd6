"""JSON state files and the schemas of every machine-readable output.

Complex numbers are always ``[re, im]`` pairs.  A state file holds
``m``, ``n`` and exactly one of

* ``"ensemble"``: ``[{"weight": w, "coefficients": m x n array of pairs}, ...]``
* ``"rho"``: an (m n) x (m n) array of pairs.
"""

from __future__ import annotations

import json

import jsonschema
import numpy as np

from .errors import InvalidInputError
from .states import EnsembleState, PureState, coefficient_matrix, from_density

WEIGHT_SUM_SLACK = 1e-3
COEFF_NORM_SLACK = 1e-6

_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_cmatrix = {"type": "array", "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": _complex}}

STATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "StateFile",
    "type": "object",
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "ensemble": {
            "type": "array", "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"weight": {"type": "number", "exclusiveMinimum": 0},
                               "coefficients": _cmatrix},
                "required": ["weight", "coefficients"],
                "additionalProperties": False,
            },
        },
        "rho": _cmatrix,
    },
    "required": ["m", "n"],
    "oneOf": [{"required": ["ensemble"]}, {"required": ["rho"]}],
    "additionalProperties": False,
}

_chain_entry = {
    "type": "object",
    "properties": {
        "t": {"type": "integer"}, "k": {"type": "integer"}, "side": {"enum": ["A", "B"]},
        "verdict": {"enum": ["EmptyExact", "EmptyProbabilistic", "Nonempty", "Inconclusive"]},
        "evidence": {"type": "number"}, "min_rank_found": {"type": "integer"},
        "bound": {"type": ["integer", "null"]},
    },
    "required": ["t", "k", "side", "verdict", "evidence", "min_rank_found", "bound"],
}

ANALYZE_SCHEMA = {
    "type": "object",
    "properties": {
        "m": {"type": "integer"}, "n": {"type": "integer"}, "r": {"type": "integer"},
        "certified_bound": {"type": "integer", "minimum": 1},
        "exact_bound": {"type": "integer", "minimum": 1},
        "provenance": {"enum": ["none", "exact", "probabilistic"]},
        "chain": {"type": "array", "items": _chain_entry},
        "generic_t": {"type": ["integer", "null"]},
        "generic_bound": {"type": "integer"},
        "policy": {"type": "object"}, "config": {"type": "object"},
    },
    "required": ["m", "n", "r", "certified_bound", "exact_bound", "provenance", "chain",
                 "generic_t", "generic_bound", "policy", "config"],
}

GENERIC_SCHEMA = {
    "type": "object",
    "properties": {
        "m": {"type": "integer"}, "r": {"type": "integer"},
        "t_star": {"type": ["integer", "null"]}, "bound": {"type": "integer"},
        "cases": {"type": "array", "items": {
            "type": "object",
            "properties": {"case": {"type": "integer"}, "applicable": {"type": "boolean"},
                           "bound": {"type": ["integer", "null"]}},
            "required": ["case", "applicable", "bound"]}},
    },
    "required": ["m", "r", "t_star", "bound", "cases"],
}

SCHMIDT_SCHEMA = {
    "type": "object",
    "properties": {"m": {"type": "integer"}, "n": {"type": "integer"},
                   "schmidt_rank": {"type": "integer"},
                   "singular_values": {"type": "array", "items": {"type": "number"}}},
    "required": ["m", "n", "schmidt_rank", "singular_values"],
}

EXPERIMENT_SCHEMA = {
    "type": "object",
    "properties": {
        "m": {"type": "integer"}, "r": {"type": "integer"}, "trials": {"type": "integer"},
        "target_bound": {"type": "integer"}, "seed": {"type": "integer"},
        "success_fraction": {"type": "number", "minimum": 0, "maximum": 1},
        "config": {"type": "object"},
        "records": {"type": "array"},
    },
    "required": ["m", "r", "trials", "target_bound", "seed", "success_fraction", "records"],
}

EXAMPLE3_SCHEMA = {
    "type": "object",
    "properties": {
        "vectors": {"type": "array", "minItems": 3, "maxItems": 3, "items": _cmatrix},
        "schmidt_ranks": {"type": "array", "items": {"type": "integer"}},
        "span_rank": {"type": "integer"},
        "orthogonality_residuals": {"type": "array", "items": {"type": "number"}},
        "passed": {"type": "boolean"},
    },
    "required": ["vectors", "schmidt_ranks", "span_rank", "orthogonality_residuals", "passed"],
}

SCHEMAS = {"state": STATE_SCHEMA, "analyze": ANALYZE_SCHEMA, "generic": GENERIC_SCHEMA,
           "schmidt": SCHMIDT_SCHEMA, "experiment": EXPERIMENT_SCHEMA, "example3": EXAMPLE3_SCHEMA}


class StateFileError(InvalidInputError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def encode_matrix(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(data) -> np.ndarray:
    a = np.asarray(data, dtype=float)
    return a[..., 0] + 1j * a[..., 1]


def parse_state_file(data: bytes | str) -> EnsembleState:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise StateFileError("$", f"not valid JSON ({exc})") from None
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(STATE_SCHEMA).iter_errors(doc))
    if err is not None:
        raise StateFileError(err.json_path, err.message)
    m, n = doc["m"], doc["n"]

    if "rho" in doc:
        rho = doc["rho"]
        if len(rho) != m * n or any(len(row) != m * n for row in rho):
            raise StateFileError("$.rho", f"expected a {m * n}x{m * n} matrix")
        try:
            return from_density(decode_matrix(rho), m, n)
        except InvalidInputError as exc:
            raise StateFileError("$.rho", str(exc)) from None

    members = doc["ensemble"]
    weights = np.array([mem["weight"] for mem in members], dtype=float)
    total = weights.sum()
    if abs(total - 1) > WEIGHT_SUM_SLACK:
        raise StateFileError("$.ensemble", f"weights sum to {total:.6g}, expected 1 (+/- {WEIGHT_SUM_SLACK})")
    states = []
    for i, mem in enumerate(members):
        path = f"$.ensemble[{i}].coefficients"
        coeffs = mem["coefficients"]
        if len(coeffs) != m or any(len(row) != n for row in coeffs):
            raise StateFileError(path, f"expected an {m}x{n} matrix")
        A = decode_matrix(coeffs)
        nrm = np.linalg.norm(A)
        if abs(nrm - 1) > COEFF_NORM_SLACK:
            raise StateFileError(path, f"coefficients have norm {nrm:.9g}, expected 1")
        states.append(PureState.from_matrix(A, normalize=True))
    return EnsembleState(m, n, weights / total, tuple(states))


def state_to_dict(e: EnsembleState) -> dict:
    return {
        "m": e.m, "n": e.n,
        "ensemble": [{"weight": float(w), "coefficients": encode_matrix(coefficient_matrix(v))}
                     for w, v in e.members],
    }


def write_state_file(e: EnsembleState) -> bytes:
    return json.dumps(state_to_dict(e), indent=1).encode()
