import json
import math
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

import polycert

ROOT = Path(os.environ.get("POLYCERT_ROOT", Path(__file__).resolve().parents[2]))
CERTIFY = os.environ.get("POLYCERT_CERTIFY_BIN")
SCHEMA = json.loads((ROOT / "schemas" / "report.schema.json").read_text())
PROBLEMS = sorted((ROOT / "problems").glob("*.pop"))


def load(name):
    return polycert.parse_problem((ROOT / "problems" / name).read_text())


def test_parse_and_evaluate():
    p = polycert.parse_expression("(x1^2 - x2^2)^2 - x2^3", 2)
    assert len(p) == 4
    assert p.evaluate([2.0, 1.0]) == pytest.approx(9.0 - 1.0)
    problem = load("degenerate_cones.pop")
    assert problem.dimension == 2
    assert problem.constraint_count == 2


def test_parse_error_is_raised():
    with pytest.raises(polycert.InputError):
        polycert.parse_expression("x1 + x3", 2)


def test_sampling_helpers():
    assert polycert.required_samples(0.1, 0.01) == 44
    d = polycert.sample_direction(42, 0, 2)
    assert d[0] == pytest.approx(0.8959954087309475, abs=1e-15)
    assert d[1] == pytest.approx(0.444063314779618, abs=1e-15)
    assert math.hypot(*d) == pytest.approx(1.0, abs=1e-12)


def test_grid_and_ray():
    assert polycert.grid_alpha(load("quadrant.pop"), 400) == pytest.approx(0.25, abs=0.01)
    problem = load("degenerate_cones.pop")
    s = 1 / math.sqrt(2)
    assert polycert.verify_ray(problem, [s, s], 2.0)


def test_certify_dict():
    problem = load("degenerate_cones.pop")
    report = polycert.certify(problem, samples=1000, directions=[[1.0, 1.0]])
    jsonschema.validate(report, SCHEMA)
    assert report["verdict"] == "unbounded"
    assert report["certified_by"] == "user:0"
    assert report["witness_T"] == pytest.approx(2.0)
    quiet = polycert.certify(problem, samples=1000, delta=0.01)
    jsonschema.validate(quiet, SCHEMA)
    assert quiet["verdict"] == "inconclusive"


@pytest.mark.skipif(not CERTIFY, reason="certify binary not configured")
@pytest.mark.parametrize("path", PROBLEMS, ids=lambda p: p.name)
def test_cli_machine_output_matches_schema(path):
    out = subprocess.run(
        [CERTIFY, str(path), "--format", "machine", "--samples", "2000", "--seed", "5",
         "--probe", "--estimate-alpha", "--delta", "0.01", "--alpha-floor", "0.05"],
        check=True, capture_output=True, text=True,
    ).stdout
    jsonschema.validate(json.loads(out), SCHEMA)
