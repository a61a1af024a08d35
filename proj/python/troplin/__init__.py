"""Exact tropical curve verification.

Every document argument may be a dict or list, a JSON string, or a path to a
JSON file. Rationals are "p/q" strings throughout.
"""

import json
import os
from fractions import Fraction

from . import _troplin
from ._troplin import TroplinError

__all__ = [
    "TroplinError",
    "albanese_class",
    "chow_equivalent",
    "circle_jacobian_class",
    "deformation_basis",
    "deformation_dimension",
    "error_code",
    "evaluate_at_infinity",
    "invariant_forms",
    "isotropy",
    "principal_function",
    "relative_h1_dimension",
    "roitman",
    "validate",
    "witness",
]


def _text(doc):
    if isinstance(doc, (dict, list)):
        return json.dumps(doc)
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and os.path.isfile(doc)):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    return doc


def _rational(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def error_code(exc):
    """The library error code carried by a TroplinError, e.g. "NotPrincipal"."""
    return exc.args[0]


def validate(curve):
    return json.loads(_troplin.validate(_text(curve)))


def deformation_basis(curve, gauge="smoothed"):
    return json.loads(_troplin.deformation_basis(_text(curve), gauge))


def deformation_dimension(curve, gauge="smoothed"):
    return len(deformation_basis(curve, gauge))


def relative_h1_dimension(curve):
    return _troplin.relative_h1_dimension(_text(curve))


def invariant_forms(manifold, degree):
    return json.loads(_troplin.invariant_forms(_text(manifold), degree))


def isotropy(curve, form=None, degree=None):
    if form is not None:
        return json.loads(_troplin.isotropy(_text(curve), _text(form)))
    return json.loads(_troplin.isotropy_degree(_text(curve), 2 if degree is None else degree))


def roitman(instance, form=None):
    if form is not None:
        return json.loads(_troplin.roitman_curve(_text(instance), _text(form)))
    return json.loads(_troplin.roitman(_text(instance)))


def evaluate_at_infinity(curve):
    return json.loads(_troplin.evaluate_at_infinity(_text(curve)))


def albanese_class(klein, cycle):
    return json.loads(_troplin.albanese_class(_text(klein), _text(cycle)))


def chow_equivalent(klein, z1, z2):
    return _troplin.chow_equivalent(_text(klein), _text(z1), _text(z2))


def witness(relation, klein, point):
    return json.loads(_troplin.witness(relation, _text(klein), [_rational(x) for x in point]))


def circle_jacobian_class(circumference, divisor):
    return Fraction(_troplin.circle_jacobian_class(_rational(circumference), _text(divisor)))


def principal_function(circumference, divisor):
    return json.loads(_troplin.principal_function(_rational(circumference), _text(divisor)))
