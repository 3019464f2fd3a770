"""Signatures of flat symplectic and unitary bundles over surfaces."""

import json

from . import _core
from ._core import FlatsigError, catalog, value_set


def construct(mode, genus, boundary, m, p=1, q=0, oracle=False, seed=0):
    return json.loads(_core.construct(mode, genus, boundary, m, p, q, oracle, seed))


def verify(certificate, oracle=False, seed=0):
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate)
    return json.loads(_core.verify(certificate, oracle, seed))


__all__ = ["FlatsigError", "catalog", "construct", "value_set", "verify"]
