"""Hot kernels, compiled when the extension is built, numpy otherwise.

``BACKEND`` is ``"compiled"`` or ``"python"``. Both implementations are
importable directly (``_kernels`` and ``_kernels_py``) for comparison.
"""
try:
    from ._kernels import nudft_analysis, nudft_synthesis, rk4_run, szego_rhs

    BACKEND = "compiled"
except ImportError:  # extension not built
    from ._kernels_py import nudft_analysis, nudft_synthesis, rk4_run, szego_rhs

    BACKEND = "python"

__all__ = ["BACKEND", "nudft_analysis", "nudft_synthesis", "rk4_run", "szego_rhs"]
