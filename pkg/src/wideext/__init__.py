"""Exact computations around wide extensions of sheaves on surfaces.

Modules: chern_calculus, hn_polygon, deform_oracle, dlp_existence,
git_stability, generic_ext_linalg, and the ``wideext`` CLI.
"""
from .errors import WideExtError

__all__ = ["WideExtError"]
__version__ = "0.1.0"
