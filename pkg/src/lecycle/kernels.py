"""Kernel selection: compiled Cython core when available, else pure Python.

Set ``LECYCLE_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by the test that checks both backends agree).
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("LECYCLE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

monomial_divides = _impl.monomial_divides
monomial_mul = _impl.monomial_mul
monomial_div = _impl.monomial_div
monomial_lcm = _impl.monomial_lcm
terms_mul = _impl.terms_mul
terms_add_scaled = _impl.terms_add_scaled
sparse_rank = _impl.sparse_rank

__all__ = [
    "BACKEND",
    "monomial_divides",
    "monomial_mul",
    "monomial_div",
    "monomial_lcm",
    "terms_mul",
    "terms_add_scaled",
    "sparse_rank",
]
