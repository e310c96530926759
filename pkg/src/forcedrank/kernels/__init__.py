"""Hot kernels, compiled when available.

``BACKEND`` names the implementation picked at import: ``"cython"`` if the
extension was built, otherwise ``"python"``. Both modules stay importable
so tests and benchmarks can compare them directly.
"""
from . import _pykernels as python_kernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

_impl = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

team_extremes = _impl.team_extremes
partition_correct_sums = _impl.partition_correct_sums

__all__ = [
    "BACKEND",
    "compiled_kernels",
    "partition_correct_sums",
    "python_kernels",
    "team_extremes",
]
