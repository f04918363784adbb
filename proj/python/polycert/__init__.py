"""Directional certificates of unboundedness for polynomial optimization."""

import json

from ._core import (
    ContractError,
    InputError,
    Polynomial,
    Problem,
    ResourceError,
    __version__,
    estimate_alpha,
    grid_alpha,
    parse_expression,
    parse_problem,
    required_samples,
    residual_probability,
    sample_direction,
    verify_ray,
)
from ._core import certify_json as _certify_json


def certify(problem, **options):
    """Run the certificate and return the machine report as a dict.

    `problem` is a Problem or problem-file text. Keyword options mirror the
    CLI flags: samples, seed, directions, probe, exhaustive, tol_abs, tol_rel,
    delta, alpha_floor, threads.
    """
    if isinstance(problem, str):
        problem = parse_problem(problem)
    return json.loads(_certify_json(problem, **options))


__all__ = [
    "ContractError",
    "InputError",
    "Polynomial",
    "Problem",
    "ResourceError",
    "__version__",
    "certify",
    "estimate_alpha",
    "grid_alpha",
    "parse_expression",
    "parse_problem",
    "required_samples",
    "residual_probability",
    "sample_direction",
    "verify_ray",
]
