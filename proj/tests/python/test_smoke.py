import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import troplin

DATA = Path(os.environ.get("TROPLIN_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def data(name):
    return str(DATA / name)


KLEIN = {"kind": "klein", "x0": "2", "y0": "3"}


def test_validate_fig1a():
    report = troplin.validate(data("fig1a.json"))
    assert report["status"] == "pass"
    names = [c["name"] for c in report["checks"]]
    assert "balancing at 'A'" in names and "balancing at 'B'" in names


def test_validate_rejects_weight_change():
    doc = json.loads(Path(data("fig1a.json")).read_text())
    doc["edges"][3]["weight"] = 1
    assert troplin.validate(doc)["status"] == "fail"


def test_deformation_dimensions():
    assert troplin.deformation_dimension(data("line.json")) == 2
    assert troplin.deformation_dimension(data("fig1a.json")) == 3
    assert troplin.deformation_dimension(data("t2-base-cycle.json")) == 2
    assert troplin.deformation_dimension(data("t2-cycle.json")) == 3
    basis = troplin.deformation_basis(data("line.json"))
    assert set(basis[0]) == {"O"}


def test_homology():
    assert troplin.relative_h1_dimension(data("theta.json")) == 2


def test_klein_forms():
    assert len(troplin.invariant_forms(KLEIN, 1)) == 1
    assert troplin.invariant_forms(KLEIN, 2) == []


def test_isotropy_and_roitman():
    r = troplin.isotropy(data("t2-cycle.json"), data("dxdy.json"))
    assert r["report"]["status"] == "pass"
    assert r["deformation_dim"] == 3
    assert all(e["direct"] == "0" and e["via_contraction"] == "0" for e in r["evaluations"])
    b = troplin.roitman(data("roitman-four-planes.json"))
    assert b["isotropic"] and b["satisfied"] and b["dim_w"] == 2 and b["bound"] == 4
    assert troplin.roitman(data("t2-cycle.json"), data("dxdy.json"))["satisfied"]


def test_evaluation_at_infinity():
    ev = troplin.evaluate_at_infinity(data("t2-cycle.json"))
    assert ev["minus"] == [{"point": ["0", "0"], "mult": 2}]
    assert ev["plus"] == [{"point": ["2", "0"], "mult": 2}]


def test_chow_decisions():
    p = [{"point": ["1/2", "1"], "mult": 1}]
    ip = [{"point": ["1/2", "-1"], "mult": 1}]
    shifted = [{"point": ["1", "1"], "mult": 1}]
    assert troplin.chow_equivalent(KLEIN, p, ip)
    assert not troplin.chow_equivalent(KLEIN, p, shifted)
    assert troplin.albanese_class(KLEIN, p) == {"degree": 1, "value": "1/2", "modulus": "2"}


@pytest.mark.parametrize("relation", ["two-torsion", "fiber"])
def test_witnesses_validate(relation):
    curve = troplin.witness(relation, KLEIN, [Fraction(1, 2), 1])
    assert troplin.validate(curve)["status"] == "pass"
    boundary = troplin.evaluate_at_infinity(curve)["boundary"]
    assert sum(t["mult"] for t in boundary) == 0
    assert troplin.albanese_class(KLEIN, boundary)["value"] == "0"


def test_errors_carry_codes():
    with pytest.raises(troplin.TroplinError) as e:
        troplin.witness("two-torsion", KLEIN, ["1/2", "0"])
    assert troplin.error_code(e.value) == "SpecialFiber"
    with pytest.raises(troplin.TroplinError) as e:
        troplin.principal_function(4, [{"position": "1", "mult": 1}, {"position": "0", "mult": -1}])
    assert troplin.error_code(e.value) == "NotPrincipal"


def test_circle_abel_jacobi():
    d = [{"position": "0", "mult": 2}, {"position": "2", "mult": -2}]
    assert troplin.circle_jacobian_class(4, d) == 0
    f = troplin.principal_function("4", d)
    assert f["slopes"] == [1, -1]
    assert f["values"] == ["0", "2"]
