"""Exact polynomial arithmetic and the graded exterior algebra of a free module."""

from .poly import PolyFn, as_fraction, poly_partial, poly_sum
from .exterior import (
    FORM,
    MV,
    EndoTensor,
    KVector,
    basis_indices,
    contract,
    dual_variance,
    eval_at,
    evaluate,
    insert,
    insert_endo,
    kv_sum,
    pair,
    sort_sign,
    wedge,
    wedge_all,
)
from .matrix import adjugate, constant_inverse, det, matmul

__all__ = [
    "PolyFn", "as_fraction", "poly_partial", "poly_sum",
    "FORM", "MV", "EndoTensor", "KVector", "basis_indices", "contract",
    "dual_variance", "eval_at", "evaluate", "insert", "insert_endo", "kv_sum",
    "pair", "sort_sign", "wedge", "wedge_all",
    "adjugate", "constant_inverse", "det", "matmul",
]
