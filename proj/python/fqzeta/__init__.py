"""Exact arithmetic for function-field multizeta values, Carlitz multiple
polylogarithms, Frobenius difference systems, and linear-relation
certificates over F_q[theta]."""

from ._core import Context, DifferenceSystem, FqzetaError, Graded, Laurent, selftest

__version__ = "0.1.0"
__all__ = ["Context", "DifferenceSystem", "FqzetaError", "Graded", "Laurent", "selftest"]
