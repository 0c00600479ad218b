"""Finite-dimensional associative algebras given by structure constants.

Basis elements are ``e0 .. e{dim-1}`` and ``e_i e_j = sum_k c[i][j][k] e_k``.
Elements are dense coordinate lists.  The unit is optional: a few
constructions (zero-product algebras, towers of triangular algebras) are
not unital.
"""

from itertools import product

from .errors import DimensionMismatch, NotAssociative, UnitLawFails
from .linalg import RatMatrix, _canon, _rref, kernel, rat


class Algebra:
    """Immutable structure-constant algebra."""

    __slots__ = ("dim", "_table", "unit", "name")

    def __init__(self, dim, table, unit=None, name=None):
        # table: {(i, j): {k: c}} with zero entries already dropped
        self.dim = dim
        self._table = {}
        for (i, j), row in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"product index ({i}, {j}) outside dimension {dim}")
            clean = {}
            for k, c in row.items():
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"output index {k} outside dimension {dim}")
                c = rat(c)
                if c:
                    clean[k] = c
            if clean:
                self._table[i, j] = clean
        if unit is not None:
            unit = tuple(rat(x) for x in unit)
            if len(unit) != dim:
                raise DimensionMismatch("unit vector has the wrong length")
        self.unit = unit
        self.name = name

    @classmethod
    def from_structure_constants(cls, mult, unit=None, name=None):
        """Build from the dense nested array ``mult[i][j][k]``."""
        dim = len(mult)
        table = {}
        for i in range(dim):
            if len(mult[i]) != dim:
                raise DimensionMismatch("structure constants are not dim x dim x dim")
            for j in range(dim):
                if len(mult[i][j]) != dim:
                    raise DimensionMismatch("structure constants are not dim x dim x dim")
                row = {k: rat(c) for k, c in enumerate(mult[i][j]) if rat(c)}
                if row:
                    table[i, j] = row
        return cls(dim, table, unit, name)

    @property
    def mult(self):
        """Dense structure constants ``c[i][j][k]``."""
        c = [[[0] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), row in self._table.items():
            for k, v in row.items():
                c[i][j][k] = v
        return c

    def basis_product(self, i, j):
        """Sparse product ``e_i e_j`` as a dict ``k -> coefficient``."""
        return self._table.get((i, j), {})

    def multiply(self, x, y):
        out = [0] * self.dim
        for (i, j), row in self._table.items():
            a = x[i]
            if not a:
                continue
            b = y[j]
            if not b:
                continue
            ab = a * b
            for k, c in row.items():
                out[k] += ab * c
        return [_canon(v) for v in out]

    def basis_vector(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def left_matrix(self, i):
        """Matrix of x -> e_i x."""
        return RatMatrix._raw(self.dim, self.dim,
                              {(k, j): c for j in range(self.dim)
                               for k, c in self._table.get((i, j), {}).items()})

    def right_matrix(self, i):
        """Matrix of x -> x e_i."""
        return RatMatrix._raw(self.dim, self.dim,
                              {(k, j): c for j in range(self.dim)
                               for k, c in self._table.get((j, i), {}).items()})

    def element_left_matrix(self, x):
        m = RatMatrix.zeros(self.dim, self.dim)
        for i, a in enumerate(x):
            if a:
                m = m + self.left_matrix(i).scale(a)
        return m

    def element_right_matrix(self, x):
        m = RatMatrix.zeros(self.dim, self.dim)
        for i, a in enumerate(x):
            if a:
                m = m + self.right_matrix(i).scale(a)
        return m

    @property
    def is_unital(self):
        return self.unit is not None

    def is_commutative(self):
        return all(self._table.get((i, j), {}) == self._table.get((j, i), {})
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def center(self):
        """Subspace of elements commuting with every basis element."""
        rows = []
        for i in range(self.dim):
            rows.extend((self.left_matrix(i) - self.right_matrix(i)).row_dicts())
        entries = {}
        for r, row in enumerate(rows):
            for c, v in row.items():
                entries[r, c] = v
        m = RatMatrix._raw(len(rows), self.dim, entries)
        return kernel(m)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.dim == other.dim and self._table == other._table
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.dim, frozenset((k, frozenset(v.items())) for k, v in self._table.items()),
                     self.unit))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        unital = "unital" if self.unit is not None else "non-unital"
        return f"<Algebra{label} dim={self.dim} {unital}>"


def ground_field():
    """The one-dimensional algebra Q."""
    return Algebra(1, {(0, 0): {0: 1}}, [1], name="Q")


def _add_into(acc, d, scale=1):
    for k, v in d.items():
        w = acc.get(k, 0) + scale * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def _times_basis_left(alg, vec, j):
    """(sum_i vec[i] e_i) e_j as a sparse dict."""
    out = {}
    for i, a in vec.items():
        _add_into(out, alg.basis_product(i, j), a)
    return out


def _basis_times_right(alg, i, vec):
    out = {}
    for j, a in vec.items():
        _add_into(out, alg.basis_product(i, j), a)
    return out


def validate(alg):
    """Check associativity on all basis triples and the two-sided unit law.

    Raises :class:`NotAssociative` naming the first failing triple or
    :class:`UnitLawFails`; returns ``True`` otherwise.
    """
    n = alg.dim
    for i, j, k in product(range(n), repeat=3):
        lhs = _times_basis_left(alg, alg.basis_product(i, j), k)
        rhs = _basis_times_right(alg, i, alg.basis_product(j, k))
        if lhs != rhs:
            raise NotAssociative(i, j, k)
    if alg.unit is not None:
        u = {i: a for i, a in enumerate(alg.unit) if a}
        for i in range(n):
            if _basis_times_right(alg, i, u) != {i: 1}:
                raise UnitLawFails(i, "right")
            if _times_basis_left(alg, u, i) != {i: 1}:
                raise UnitLawFails(i, "left")
    return True


def opposite(alg):
    """Same space with reversed multiplication a∘b = ba."""
    table = {(j, i): dict(row) for (i, j), row in alg._table.items()}
    name = f"{alg.name}^op" if alg.name else None
    return Algebra(alg.dim, table, alg.unit, name)


def unitization(alg):
    """Adjoin a new two-sided unit as the last basis element (always, even if unital)."""
    n = alg.dim
    table = {k: dict(v) for k, v in alg._table.items()}
    for i in range(n + 1):
        table[n, i] = {i: 1}
        table[i, n] = {i: 1}
    unit = [0] * n + [1]
    name = f"{alg.name}+" if alg.name else None
    return Algebra(n + 1, table, unit, name)


def tensor_op(a, b):
    """The algebra a ⊗ b^op, basis index ``i * b.dim + j`` for e_i ⊗ f_j.

    Product: (a1 ⊗ b1)(a2 ⊗ b2) = a1 a2 ⊗ b2 b1.
    """
    nb = b.dim
    table = {}
    for (i1, i2), arow in a._table.items():
        for (j2, j1), brow in b._table.items():
            # b-product taken in reversed order: f_{j2} f_{j1} feeds slot (j1, j2)
            out = {}
            for k, x in arow.items():
                for l, y in brow.items():
                    out[k * nb + l] = x * y
            table[i1 * nb + j1, i2 * nb + j2] = out
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = [x * y for x in a.unit for y in b.unit]
    name = f"{a.name}⊗{b.name}^op" if a.name and b.name else None
    return Algebra(a.dim * nb, table, unit, name)


def direct_sum(a, b):
    """Componentwise product on a ⊕ b; basis of ``a`` first."""
    na = a.dim
    table = {k: dict(v) for k, v in a._table.items()}
    for (i, j), row in b._table.items():
        table[na + i, na + j] = {na + k: c for k, c in row.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = list(a.unit) + list(b.unit)
    name = f"{a.name}⊕{b.name}" if a.name and b.name else None
    return Algebra(na + b.dim, table, unit, name)


def change_basis(alg, p):
    """Express ``alg`` in the basis given by the columns of the invertible matrix ``p``.

    New basis vector ``f_i = sum_r p[r][i] e_r``.
    """
    n = alg.dim
    if p.shape != (n, n):
        raise DimensionMismatch("change of basis must be square of size dim")
    cols = [p.apply([1 if k == i else 0 for k in range(n)]) for i in range(n)]
    inv = _inverse(p)
    table = {}
    for i in range(n):
        for j in range(n):
            prod = alg.multiply(cols[i], cols[j])
            new = inv.apply(prod)
            row = {k: c for k, c in enumerate(new) if c}
            if row:
                table[i, j] = row
    unit = inv.apply(list(alg.unit)) if alg.unit is not None else None
    return Algebra(n, table, unit, alg.name)


def _inverse(p):
    n = p.rows
    rows = p.row_dicts()
    aug = [dict(r) for r in rows]
    for i, r in enumerate(aug):
        r[n + i] = 1
    red = _rref(aug, 2 * n)
    if len(red) != n or any(min(r) >= n for r in red):
        raise DimensionMismatch("matrix is singular")
    entries = {}
    for i, r in enumerate(red):
        for c, v in r.items():
            if c >= n:
                entries[i, c - n] = v
    return RatMatrix._raw(n, n, entries)


def inverse(p):
    """Inverse of a square invertible RatMatrix."""
    if p.rows != p.cols:
        raise DimensionMismatch("only square matrices are invertible")
    return _inverse(p)


def from_matrix_basis(matrices, name=None):
    """Algebra spanned by linearly independent square matrices closed under product.

    The unit is the identity matrix's coordinates when it lies in the span.
    """
    n = len(matrices)
    flat = [[x for row in m.to_rows() for x in row] for m in matrices]
    size = len(flat[0]) if flat else 0
    # solve for coordinates through a column-stacked system
    span = RatMatrix.from_columns([{i: v for i, v in enumerate(f) if v} for f in flat], size)

    def coords(flat_vec):
        return _solve(span, flat_vec)

    table = {}
    for i in range(n):
        for j in range(n):
            prod = matrices[i] @ matrices[j]
            c = coords([x for row in prod.to_rows() for x in row])
            if c is None:
                raise DimensionMismatch("matrix span is not closed under multiplication")
            row = {k: v for k, v in enumerate(c) if v}
            if row:
                table[i, j] = row
    unit = None
    if matrices:
        k = matrices[0].rows
        ident = RatMatrix.identity(k)
        unit = coords([x for row in ident.to_rows() for x in row])
    return Algebra(n, table, unit, name)


def _solve(a, b):
    """A solution x of a x = b (unique when a has full column rank), or None."""
    n = a.cols
    aug = a.row_dicts()
    for i, v in enumerate(b):
        if v:
            aug[i][n] = rat(v)
    red = _rref(aug, n + 1)
    x = [0] * n
    for r in red:
        p = min(r)
        if p == n:
            return None
        x[p] = r.get(n, 0)
    return x
