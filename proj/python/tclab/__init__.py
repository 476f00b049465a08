"""Exact class groups, ray class groups, Selmer groups and Sha bounds.

Prime sets are lists of rational primes, optionally with a selector:
``[5, "107:all", (197, 2)]``. Results are plain dicts in the report layout.
"""

import json

from . import _core
from ._core import REPORT_SCHEMA, ConfigError

__all__ = ["Field", "reproduce", "run_config", "REPORT_SCHEMA", "ConfigError"]


def _primes(spec):
    if spec is None:
        return ""
    if isinstance(spec, str):
        return spec
    out = []
    for e in spec:
        if isinstance(e, tuple):
            q, sel = e
            out.append(f"{q}:{sel}")
        else:
            out.append(str(e))
    return ",".join(out)


class Field(_core.Field):
    """Number field Q[x]/(f) with f monic, coefficients constant term first.

    ``integral_basis`` rows give the basis in powers of x, entries as strings
    ("1/2"); omit it when Z[x] is maximal.
    """

    def __init__(self, coefficients, integral_basis=None, label=""):
        basis = None
        if integral_basis is not None:
            basis = [[str(c) for c in row] for row in integral_basis]
        super().__init__([int(c) for c in coefficients], basis, label)

    def info(self):
        return json.loads(self._info())

    def class_group(self):
        return self.info()["class_group"]

    def units(self):
        return self.info()["units"]

    def primes_above(self, q):
        return json.loads(self._primes_above(int(q)))

    def ray_class(self, p, modulus=()):
        return json.loads(self._ray_class(p, _primes(modulus)))

    def selmer(self, p, S=()):
        return json.loads(self._selmer(p, _primes(S)))

    def rusb(self, p, S=()):
        return json.loads(self._rusb(p, _primes(S)))

    def exceptional(self, S=()):
        return json.loads(self._exceptional(_primes(S)))

    def sandwich(self, p, T=(), V=()):
        return json.loads(self._sandwich(p, _primes(T), _primes(V)))

    def preserving_primes(self, p, S=(), count=3, norm_bound=10000):
        return json.loads(self._preserving_primes(p, _primes(S), count, norm_bound))

    def __repr__(self):
        return f"Field({self.label!r}, degree={self.degree}, disc={self.discriminant})"


def reproduce(name):
    """Runs a built-in configuration ("example1", "example2"); the report
    carries ``golden_diff``, empty when every expected row matches."""
    return json.loads(_core._reproduce(name))


def run_config(path):
    return json.loads(_core._run_config(str(path)))
