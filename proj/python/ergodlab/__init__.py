"""Exact orbit kernels and ergodic diagnostics on tori and nilmanifolds.

Flow, start and observable specs are passed as JSON text in the same schema
the command-line runner reads; ``spec()`` serializes a dict for you.
"""

import json

try:
    from . import _ergodlab as _core
except ImportError:  # in-tree build: the extension sits next to the package, not inside it
    import _ergodlab as _core

Frac = _core.Frac
DomainError = _core.DomainError
ResourceLimit = _core.ResourceLimit
int_mul = _core.int_mul
dist = _core.dist
weyl_closed_form = _core.weyl_closed_form
anzai_closed_form = _core.anzai_closed_form
furstenberg_sequence = _core.furstenberg_sequence
small_divisor_bound_holds = _core.small_divisor_bound_holds
h_eval = _core.h_eval
H_eval = _core.H_eval
theta_eval = _core.theta_eval
nil_function = _core.nil_function
star_discrepancy = _core.star_discrepancy
m_joining_report = _core.m_joining_report


def spec(obj):
    """JSON text for a spec given as a dict or list; strings pass through."""
    return obj if isinstance(obj, str) else json.dumps(obj)


def orbit(flow, count, start=None, exact=False):
    fn = _core.orbit_exact if exact else _core.orbit
    return fn(spec(flow), count, None if start is None else spec(start))


def birkhoff_average(flow, observable, count, start=None):
    return _core.birkhoff_average(spec(flow), spec(observable), count, None if start is None else spec(start))


def uniform_deviation(flow, observable, count, threads=1):
    return _core.uniform_deviation(spec(flow), spec(observable), count, threads)


def eigen_correlation(flow, observable, theta, count):
    return _core.eigen_correlation(spec(flow), spec(observable), theta, count)


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
