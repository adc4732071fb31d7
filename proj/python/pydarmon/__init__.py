"""Stark-Heegner (Darmon) and Heegner points on elliptic curves over Q.

Every computation returns its JSON certificate as a dict; integers are decimal strings.
"""

import json

from . import _core
from ._core import PrecisionError, PreconditionError, RunConfig, ap, curve, genus_x0

__all__ = [
    "PrecisionError",
    "PreconditionError",
    "RunConfig",
    "ap",
    "curve",
    "genus_x0",
    "eigensymbol",
    "lift",
    "l_invariant",
    "darmon_point",
    "heegner_point",
    "recognize",
    "selftest",
    "verify",
]


def _run(operation, **fields):
    cfg = RunConfig()
    for key, value in fields.items():
        if value is not None:
            setattr(cfg, key, value)
    text, _message, status = _core.run(operation, cfg)
    cert = json.loads(text)
    if operation == "selftest":
        return cert, status == 0
    return cert


def eigensymbol(curve="11a", sign=1, cache_dir=None):
    return _run("eigensymbol", curve=curve, sign=sign, cache_dir=cache_dir)


def lift(curve, p, moments=10, sign=1, depth=0, cache_dir=None, no_cache=False):
    return _run("lift", curve=curve, p=p, moments=moments, sign=sign, depth=depth, cache_dir=cache_dir,
                no_cache=no_cache)


def l_invariant(curve, p, moments=10, cache_dir=None, no_cache=False):
    return _run("l-invariant", curve=curve, p=p, moments=moments, cache_dir=cache_dir, no_cache=no_cache)


def darmon_point(curve, p, disc, moments=12, character="trivial", cache_dir=None, no_cache=False):
    return _run("darmon-point", curve=curve, p=p, disc=disc, moments=moments, character=character,
                cache_dir=cache_dir, no_cache=no_cache)


def heegner_point(curve, disc):
    return _run("heegner-point", curve=curve, disc=disc)


def recognize(certificate_path, disc=None, bound=8, precision=None):
    return _run("recognize", certificate=str(certificate_path), disc=disc, bound=bound, precision=precision)


def selftest(only=None, golden_dir=None):
    """Run the acceptance criteria at reduced sizes; returns (certificate, all_passed)."""
    return _run("selftest", only=list(only) if only else None, golden_dir=golden_dir, no_cache=True)


def verify(certificate):
    """Re-check a certificate (dict or JSON text); returns (ok, kind, [(check, passed)])."""
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return _core.verify(text)
