"""
Linear algebra helpers.

Exact ranks and kernels go through sympy's DomainMatrix over QQ, or QQ(i)
once a Gaussian entry appears; floating ranks use a numpy SVD with a
relative singular-value threshold.
"""

from fractions import Fraction
from functools import reduce
from typing import List, Sequence

import numpy as np
import sympy as sp
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from pcontact.symcore import Scalar

DEFAULT_RTOL = 1e-9


def scalar_to_sympy(value: Scalar) -> sp.Expr:
    re = sp.Rational(value.re.numerator, value.re.denominator)
    if value.im == 0:
        return re
    return re + sp.I * sp.Rational(value.im.numerator, value.im.denominator)


def scalar_from_sympy(expr) -> Scalar:
    re, im = sp.Rational(sp.re(expr)), sp.Rational(sp.im(expr))
    return Scalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _domain_matrix(rows: Sequence[Sequence[Scalar]], ncols: int):
    gaussian = any(not entry.is_real for row in rows for entry in row)
    domain = QQ_I if gaussian else QQ
    elements = [[domain.from_sympy(scalar_to_sympy(entry)) for entry in row] for row in rows]
    return DomainMatrix(elements, (len(rows), ncols), domain)


def _rref(rows: Sequence[Sequence[Scalar]], ncols: int):
    matrix, pivots = _domain_matrix(rows, ncols).rref()
    return matrix.to_Matrix(), tuple(pivots)


def exact_rank(rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    _, pivots = _rref(rows, ncols)
    return len(pivots)


def exact_nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> List[List[Scalar]]:
    """Kernel basis read off the reduced row echelon form, one vector per free column"""
    if not rows:
        return [[Scalar(1) if i == j else Scalar(0) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = _rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [Scalar(0)] * ncols
        vector[free] = Scalar(1)
        for row, pivot in enumerate(pivots):
            vector[pivot] = -scalar_from_sympy(reduced[row, free])
        basis.append(vector)
    return basis


def integral_vector(vector: Sequence[Scalar]) -> List[Scalar]:
    """Scale a real rational vector to a primitive integer vector"""
    if any(not v.is_real for v in vector):
        return list(vector)
    denominators = [v.re.denominator for v in vector]
    scale = int(reduce(sp.ilcm, denominators, 1))
    integers = [int(v.re * scale) for v in vector]
    divisor = int(reduce(sp.igcd, integers, 0)) or 1
    return [Scalar(n // divisor) for n in integers]


def numeric_rank(matrix: np.ndarray, rtol: float = DEFAULT_RTOL) -> int:
    """Count singular values above rtol times the largest one"""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    if matrix.size == 0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    if singular.size == 0 or singular[0] == 0:
        return 0
    return int(np.sum(singular > rtol * singular[0]))
