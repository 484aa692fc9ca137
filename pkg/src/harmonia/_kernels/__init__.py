"""Hot loops, compiled when possible.

The Cython extension ``_ckernels`` is used if it was built; otherwise, or when
``HARMONIA_PURE_PYTHON=1`` is set, the numpy versions in ``_pykernels`` are
used.  Both expose the same functions.
"""
import os

from . import _pykernels as python

BACKEND = "python"
compiled = None

if not os.environ.get("HARMONIA_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else python
if compiled is not None:
    BACKEND = "cython"

cyclic_convolve = _impl.cyclic_convolve
char_sum = _impl.char_sum
poisson_quadrature = _impl.poisson_quadrature

__all__ = ["BACKEND", "compiled", "python", "cyclic_convolve", "char_sum", "poisson_quadrature"]
