"""Python front end for the purity engine.

Reports come back as dictionaries with the same layout as ``purity --format json``.
"""

import json

from . import _purity
from ._purity import LoadError, ResourceError, betti_numbers, fixture_names, gaussian_binomial

__all__ = [
    "LoadError",
    "ResourceError",
    "betti_numbers",
    "fixture",
    "fixture_names",
    "gaussian_binomial",
    "hodge",
    "ring",
    "run",
    "wss",
]


def ring(n, q, k=None):
    return json.loads(_purity.ring_report(n, q, k))


def hodge(n, q, divisor="omega", skip_positivity=False):
    return json.loads(_purity.hodge_report(n, q, divisor, skip_positivity))


def wss(source, lemmas=False, zeta=False):
    """source: fixture name ("tate-cycle:3,2"), JSON text, or a dict."""
    if isinstance(source, dict):
        source = json.dumps(source)
    return json.loads(_purity.wss_report(source, lemmas, zeta))


def fixture(name):
    return json.loads(_purity.fixture(name))


def run(*args):
    """Command line front end in-process: returns (exit_code, stdout, stderr)."""
    return _purity.run([str(a) for a in args])
