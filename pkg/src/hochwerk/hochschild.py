"""Hochschild cochain and chain complexes as explicit sparse matrices.

Degree-n cochains are n-linear maps A^n -> X, encoded by their values on
basis tuples; degree-n chains are tensors A^{⊗n} ⊗ X.  Both spaces use the
basis (i1, ..., in, x) enumerated lexicographically, i.e. index
``((i1 * d + i2) * d + ... + in) * dim X + x``.

Coboundary, for f in C^n:

    δf(a1, ..., a{n+1}) = a1 f(a2, ..., a{n+1})
                          + Σ_k (-1)^k f(..., a_k a_{k+1}, ...)
                          + (-1)^{n+1} f(a1, ..., an) a{n+1}

Boundary d_n : C_{n+1} -> C_n:

    d_n(a1 ⊗ ... ⊗ a{n+1} ⊗ x) = a2 ⊗ ... ⊗ a{n+1} ⊗ x a1
                                 + Σ_k (-1)^k a1 ⊗ ... ⊗ a_k a_{k+1} ⊗ ... ⊗ x
                                 + (-1)^{n+1} a1 ⊗ ... ⊗ an ⊗ a{n+1} x

so d_0(a ⊗ x) = x a - a x and H_0(A, X) = X / [A, X].  With this ordering
the coboundary of C^n(A, X*) is exactly the transpose of d_n for (A, X).
"""

import logging
from dataclasses import dataclass, field

from .errors import ContainmentViolation, DimensionMismatch
from .linalg import RatMatrix, _canon, compose, image, kernel, quotient_dim, rank

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20000


def _check_pair(a, x):
    if x.left_alg != a or x.right_alg != a:
        raise DimensionMismatch("coefficients must be a bimodule over the algebra on both sides")


def _preimages(a):
    """For each basis index l, the pairs (p, q, c) with e_p e_q = ... + c e_l + ..."""
    pre = [[] for _ in range(a.dim)]
    for p in range(a.dim):
        for q in range(a.dim):
            for l, c in a.basis_product(p, q).items():
                pre[l].append((p, q, c))
    return pre


def _add(col, key, val):
    w = col.get(key, 0) + val
    if w:
        col[key] = w
    else:
        del col[key]


def coboundary_columns(a, x, n):
    """Sparse columns of δ^n : C^n -> C^{n+1}, one dict per basis cochain."""
    _check_pair(a, x)
    d, dx = a.dim, x.dim
    L, R = x.left_columns(), x.right_columns()
    pre = _preimages(a)
    dn = d ** n
    sign_last = -1 if (n + 1) % 2 else 1
    cols = []
    for jidx in range(dn):
        digits = []
        t = jidx
        for _ in range(n):
            digits.append(t % d)
            t //= d
        digits.reverse()
        for xi in range(dx):
            col = {}
            # a1 f(a2, ..., a{n+1})
            for i in range(d):
                base = (i * dn + jidx) * dx
                for y, c in L[i][xi]:
                    _add(col, base + y, c)
            # f(..., a_k a_{k+1}, ...)
            for k in range(1, n + 1):
                sign = -1 if k % 2 else 1
                left = 0
                for t in digits[:k - 1]:
                    left = left * d + t
                right_len = n - k
                right = 0
                for t in digits[k:]:
                    right = right * d + t
                scale_r = d ** right_len
                for p, q, c in pre[digits[k - 1]]:
                    idx = ((left * d + p) * d + q) * scale_r + right
                    _add(col, idx * dx + xi, sign * c)
            # f(a1, ..., an) a{n+1}
            for j in range(d):
                base = (jidx * d + j) * dx
                for y, c in R[j][xi]:
                    _add(col, base + y, sign_last * c)
            cols.append({k: _canon(v) for k, v in col.items()})
    return cols


def boundary_columns(a, x, n):
    """Sparse columns of d_n : C_{n+1} -> C_n, one dict per basis chain."""
    _check_pair(a, x)
    d, dx = a.dim, x.dim
    L, R = x.left_columns(), x.right_columns()
    m = n + 1
    dm = d ** m
    dn = d ** n
    sign_last = -1 if m % 2 else 1
    cols = []
    for iidx in range(dm):
        digits = []
        t = iidx
        for _ in range(m):
            digits.append(t % d)
            t //= d
        digits.reverse()
        tail = iidx % dn if n else 0          # a2 ... a{n+1}
        head = iidx // d                       # a1 ... an
        for xi in range(dx):
            col = {}
            # a2 ⊗ ... ⊗ x a1
            for y, c in R[digits[0]][xi]:
                _add(col, tail * dx + y, c)
            # a_k a_{k+1} merged
            for k in range(1, n + 1):
                sign = -1 if k % 2 else 1
                left = 0
                for t in digits[:k - 1]:
                    left = left * d + t
                right = 0
                for t in digits[k + 1:]:
                    right = right * d + t
                scale_r = d ** (m - k - 1)
                for l, c in a.basis_product(digits[k - 1], digits[k]).items():
                    idx = (left * d + l) * scale_r + right
                    _add(col, idx * dx + xi, sign * c)
            # a1 ⊗ ... ⊗ an ⊗ a{n+1} x
            for y, c in L[digits[-1]][xi]:
                _add(col, head * dx + y, sign_last * c)
            cols.append({k: _canon(v) for k, v in col.items()})
    return cols


def cochain_dim(a, x, n):
    return a.dim ** n * x.dim


def coboundary_matrix(a, x, n):
    """Matrix of δ^n : C^n(A, X) -> C^{n+1}(A, X)."""
    return RatMatrix.from_columns(coboundary_columns(a, x, n), cochain_dim(a, x, n + 1))


def boundary_matrix(a, x, n):
    """Matrix of d_n : C_{n+1}(A, X) -> C_n(A, X)."""
    return RatMatrix.from_columns(boundary_columns(a, x, n), cochain_dim(a, x, n))


def _certify(outer, inner, what):
    if not compose(outer, inner).is_zero():
        raise ContainmentViolation(f"{what}: composite of consecutive maps is not zero")


def cohomology_dim(a, x, n, method="rank"):
    """dim H^n(A, X) = dim Z^n / B^n.

    ``method="rank"`` certifies δ^n δ^{n-1} = 0 exactly and counts ranks;
    ``method="subspace"`` builds Z^n and B^n explicitly and calls
    :func:`quotient_dim`.  Both are exact.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    dn = coboundary_matrix(a, x, n)
    prev = coboundary_matrix(a, x, n - 1) if n > 0 else None
    if method == "subspace":
        z = kernel(dn)
        b = image(prev) if prev is not None else image(RatMatrix.zeros(dn.cols, 0))
        return quotient_dim(z, b)
    if prev is None:
        return dn.cols - rank(dn)
    _certify(dn, prev, f"δ^{n} δ^{n - 1}")
    return dn.cols - rank(dn) - rank(prev)


def homology_dim(a, x, n, method="rank"):
    """dim H_n(A, X) = dim ker d_{n-1} / im d_n (with d_{-1} = 0)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    din = boundary_matrix(a, x, n)
    dout = boundary_matrix(a, x, n - 1) if n > 0 else RatMatrix.zeros(0, din.rows)
    if method == "subspace":
        return quotient_dim(kernel(dout), image(din))
    if n > 0:
        _certify(dout, din, f"d_{n - 1} d_{n}")
    return din.rows - rank(dout) - rank(din)


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    space_dim: int
    rank_in: int      # rank of the map into this degree
    rank_out: int     # rank of the map out of this degree
    kernel_dim: int
    homology_dim: int


@dataclass(frozen=True)
class ComplexReport:
    side: str
    max_degree: int
    degrees: tuple = field(default_factory=tuple)
    certified: bool = False

    @property
    def homology(self):
        return tuple(d.homology_dim for d in self.degrees)


def projected_size(a, x, max_degree):
    """Largest space touched when computing degrees 0..max_degree."""
    return a.dim ** (max_degree + 1) * x.dim


def complex_report(a, x, side="cochain", max_degree=3):
    """Per-degree dimensions of the cochain or chain complex, with d∘d = 0 certified."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    size = projected_size(a, x, max_degree)
    if size > DEFAULT_BUDGET:
        log.warning("complex of (dim A=%d, dim X=%d) up to degree %d touches a %d-dim space",
                    a.dim, x.dim, max_degree, size)
    if side == "cochain":
        maps = [coboundary_matrix(a, x, n) for n in range(max_degree + 1)]
        for n in range(1, max_degree + 1):
            _certify(maps[n], maps[n - 1], f"δ^{n} δ^{n - 1}")
        ranks = [rank(m) for m in maps]
        degrees = []
        for n in range(max_degree + 1):
            space = cochain_dim(a, x, n)
            r_in = ranks[n - 1] if n else 0
            ker = space - ranks[n]
            degrees.append(DegreeReport(n, space, r_in, ranks[n], ker, ker - r_in))
    elif side == "chain":
        # maps[n] = d_n : C_{n+1} -> C_n
        maps = [boundary_matrix(a, x, n) for n in range(max_degree + 1)]
        for n in range(1, max_degree + 1):
            _certify(maps[n - 1], maps[n], f"d_{n - 1} d_{n}")
        ranks = [rank(m) for m in maps]
        degrees = []
        for n in range(max_degree + 1):
            space = cochain_dim(a, x, n)
            r_out = ranks[n - 1] if n else 0
            ker = space - r_out
            degrees.append(DegreeReport(n, space, ranks[n], r_out, ker, ker - ranks[n]))
    else:
        raise ValueError(f"side must be 'cochain' or 'chain', not {side!r}")
    for dr in degrees:
        if dr.homology_dim < 0:
            raise ContainmentViolation(f"negative homology at degree {dr.degree}")
    return ComplexReport(side, max_degree, tuple(degrees), certified=True)


def cohomology_dims(a, x, max_degree):
    return complex_report(a, x, "cochain", max_degree).homology


def homology_dims(a, x, max_degree):
    return complex_report(a, x, "chain", max_degree).homology


def commutant(x):
    """{v : e v = v e for every basis element e}, solved directly (degree-0 oracle)."""
    rows = []
    for lm, rm in zip(x.left_act, x.right_act):
        rows.extend((lm - rm).row_dicts())
    entries = {(r, c): v for r, row in enumerate(rows) for c, v in row.items()}
    return kernel(RatMatrix._raw(len(rows), x.dim, entries))
