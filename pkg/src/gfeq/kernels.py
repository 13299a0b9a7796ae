"""Selects the compiled counting kernels when available.

The Cython extension gfeq._speedups implements the same API as the
numpy fallback gfeq._kernels_py; set GFEQ_PURE=1 to force the fallback
(used by the benchmark for comparisons).
"""

import os

if os.environ.get("GFEQ_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _speedups as _impl         # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
get_tables = _impl.get_tables
count_affine_axlb = _impl.count_affine_axlb
ec_count_prime = _impl.ec_count_prime
ap_table_55 = _impl.ap_table_55
ap_table_55_untwisted = _impl.ap_table_55_untwisted
ap_table_77 = _impl.ap_table_77
