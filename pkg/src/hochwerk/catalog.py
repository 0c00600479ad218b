"""Small algebras and modules used as fixtures and by the CLI's builtin names."""

from .algebra import Algebra, from_matrix_basis, ground_field
from .bimodule import Bimodule, left_module
from .linalg import RatMatrix


def zero_product(dim=1):
    """``dim``-dimensional algebra with all products zero (no unit)."""
    return Algebra(dim, {}, None, name=f"Z{dim}")


def diagonal(n):
    """Q^n with componentwise product."""
    return Algebra(n, {(i, i): {i: 1} for i in range(n)}, [1] * n, name=f"Q^{n}")


def truncated_polynomial(n):
    """Q[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    table = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                table[i, j] = {i + j: 1}
    return Algebra(n, table, [1] + [0] * (n - 1), name=f"Q[x]/x^{n}")


def dual_numbers():
    return truncated_polynomial(2)


def matrix_unit(n, i, j):
    return RatMatrix._raw(n, n, {(i, j): 1})


def matrix_algebra(n):
    """Full n x n matrices; basis E_ij in row-major order."""
    alg = from_matrix_basis([matrix_unit(n, i, j) for i in range(n) for j in range(n)])
    alg.name = f"M{n}"
    return alg


def upper_triangular(n):
    """Upper-triangular n x n matrices; basis E_ij (i <= j) in row-major order.

    ``upper_triangular(2)`` is the 3-dimensional algebra with basis
    E11, E12, E22.
    """
    alg = from_matrix_basis([matrix_unit(n, i, j) for i in range(n) for j in range(i, n)])
    alg.name = f"UT{n}"
    return alg


def lower_triangular(n):
    alg = from_matrix_basis([matrix_unit(n, i, j) for i in range(n) for j in range(i + 1)])
    alg.name = f"LT{n}"
    return alg


def column_module(n, upper=False):
    """Natural module Q^n of M_n (or of the upper-triangular algebra)."""
    if upper:
        alg = upper_triangular(n)
        mats = [matrix_unit(n, i, j) for i in range(n) for j in range(i, n)]
    else:
        alg = matrix_algebra(n)
        mats = [matrix_unit(n, i, j) for i in range(n) for j in range(n)]
    return left_module(alg, mats)


def simple_module(alg, idempotent_index):
    """One-dimensional module on which basis element ``idempotent_index`` acts as 1
    and every other basis element acts as 0.

    Only meaningful for algebras such as ``diagonal`` or ``upper_triangular``
    whose radical is spanned by the remaining basis elements.
    """
    mats = [RatMatrix.identity(1) if i == idempotent_index else RatMatrix.zeros(1, 1)
            for i in range(alg.dim)]
    return left_module(alg, mats)


def regular(alg):
    """``alg`` acting on itself on both sides."""
    return Bimodule.regular(alg)
