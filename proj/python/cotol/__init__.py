"""Exact upper and lower tolerances of combinatorial minimization problems.

Values are returned as ``fractions.Fraction`` or ``math.inf``.
"""

import json
import math
from fractions import Fraction

from ._core import (
    DomainError,
    Instance,
    ParseError,
    ResourceError,
    StructuralError,
    UnsupportedObjective,
    example,
    load_instance,
    worked_examples,
    parse_instance,
    random_suite,
    summary,
)
from . import _core

KINDS = ("upper", "lower", "upper-regular", "upper-reverse", "lower-regular", "lower-reverse")


def _value(text):
    return math.inf if text == "inf" else Fraction(text)


def _ids(target):
    return [target] if isinstance(target, str) else list(target)


def tolerance(instance, kind, target, precision="1/1000000"):
    """Tolerance of an element id or a collection of ids."""
    value, _method = _core.tolerance(instance, kind, _ids(target), str(precision))
    return _value(value)


def tolerance_with_method(instance, kind, target, precision="1/1000000"):
    value, method = _core.tolerance(instance, kind, _ids(target), str(precision))
    return _value(value), method


def oracle(instance, kind, target, precision="1/1000000"):
    """Same quantity evaluated straight from its definition."""
    return _value(_core.oracle(instance, kind, _ids(target), str(precision)))


def report(instance, use_oracle=False):
    return json.loads(_core.report_json(instance, use_oracle))


def verify(instances, subsets=4, seed=1, oracle_checks=True):
    """Property verdicts as a dict; ``result["passed"]`` is the overall status."""
    return json.loads(_core.verify_json(list(instances), subsets, seed, oracle_checks))


__all__ = [
    "KINDS",
    "DomainError",
    "Instance",
    "ParseError",
    "ResourceError",
    "StructuralError",
    "UnsupportedObjective",
    "example",
    "load_instance",
    "oracle",
    "worked_examples",
    "parse_instance",
    "random_suite",
    "report",
    "summary",
    "tolerance",
    "tolerance_with_method",
    "verify",
]
