"""Divided differences, weighted-sum identities and positivity certificates."""

import json

from ._core import (
    CapabilityError,
    ContractViolation,
    DomainError,
    EvaluationError,
    NumericalError,
    certify_double_sum,
    classify_sampled,
    commands,
    divided_difference,
    divided_difference_2d,
    double_sum_identity,
    func_identity,
    psd_check,
    rodrigues_weight,
    run_json,
    seq_identity,
)

__all__ = [
    "CapabilityError",
    "ContractViolation",
    "DomainError",
    "EvaluationError",
    "NumericalError",
    "certify_double_sum",
    "classify_sampled",
    "commands",
    "divided_difference",
    "divided_difference_2d",
    "double_sum_identity",
    "func_identity",
    "psd_check",
    "rodrigues_weight",
    "run",
    "run_json",
    "seq_identity",
]


def run(command, **inputs):
    """Run a command-line operation with keyword inputs, e.g.
    run("mean", kind="power", kernel={"constant": 1}, rect=[1, 2, 1, 2], p=1, q=2).
    Returns the report dict; `exit_status` follows the command-line tool.
    """
    return run_json(command, json.dumps(inputs))
