"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy/pure-Python ``_pykernels`` are used.  ``HALLFORGE_PURE_PYTHON=1``
forces the fallback.
"""
import importlib
import os

BACKENDS = ("cython", "python")


def load(name):
    if name == "cython":
        return importlib.import_module("hallforge._ckernels")
    if name == "python":
        return importlib.import_module("hallforge._pykernels")
    raise ValueError(f"unknown backend {name!r}")


def _select():
    if os.environ.get("HALLFORGE_PURE_PYTHON", "") not in ("", "0"):
        return "python", load("python")
    try:
        return "cython", load("cython")
    except ImportError:
        return "python", load("python")


BACKEND, kernels = _select()
