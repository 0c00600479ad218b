"""Exact rational linear algebra.

Scalars are ``fractions.Fraction`` values, stored as plain ``int`` whenever
they are integral (the two compare and hash equal, and ints are much
cheaper).  Matrices are sparse: only nonzero entries are kept.  Ranks and
echelon forms are computed by fraction-free elimination on rows scaled to
integers, using the kernel chosen in :mod:`hochwerk._backend`.
"""

from fractions import Fraction
from math import lcm

from . import _backend
from .errors import ContainmentViolation, DimensionMismatch

Rat = Fraction


def rat(x):
    """Parse/coerce ``x`` (int, Fraction, or ``"p/q"`` string) to a canonical rational."""
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif isinstance(x, Fraction):
        pass
    elif isinstance(x, bool):
        return int(x)
    else:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _canon(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def format_rat(x):
    x = rat(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable sparse matrix over the rationals.

    >>> m = RatMatrix.from_rows([[1, 2], [2, 4]])
    >>> rank(m)
    1
    """

    __slots__ = ("rows", "cols", "_entries", "_hash")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        store = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionMismatch(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = rat(v)
                if v:
                    store[r, c] = v
        self._entries = store
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, entries):
        # trusted constructor: entries already canonical and nonzero
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._entries = entries
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, data, cols=None):
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            for j, v in enumerate(row):
                v = rat(v)
                if v:
                    entries[i, j] = v
        return cls._raw(len(data), cols, entries)

    @classmethod
    def from_columns(cls, columns, rows):
        """Build from a list of sparse columns (dicts row -> value)."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[i, j] = _canon(v)
        return cls._raw(rows, len(columns), entries)

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols):
        return cls._raw(rows, cols, {})

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self):
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key):
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._entries.get((r, c), 0)

    def to_rows(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def row_dicts(self):
        out = [{} for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def col_dicts(self):
        out = [{} for _ in range(self.cols)]
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return out

    def transpose(self):
        return RatMatrix._raw(self.cols, self.rows,
                              {(c, r): v for (r, c), v in self._entries.items()})

    def is_zero(self):
        return not self._entries

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        e = dict(self._entries)
        for k, v in other._entries.items():
            w = _canon(e.get(k, 0) + v)
            if w:
                e[k] = w
            else:
                e.pop(k, None)
        return RatMatrix._raw(self.rows, self.cols, e)

    def __neg__(self):
        return RatMatrix._raw(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = rat(s)
        if not s:
            return RatMatrix.zeros(self.rows, self.cols)
        return RatMatrix._raw(self.rows, self.cols,
                              {k: _canon(v * s) for k, v in self._entries.items()})

    def apply(self, vec):
        """Multiply by a dense vector."""
        if len(vec) != self.cols:
            raise DimensionMismatch(f"{self.shape} applied to length {len(vec)}")
        out = [0] * self.rows
        for (r, c), v in self._entries.items():
            x = vec[c]
            if x:
                out[r] += v * x
        return [_canon(x) for x in out]

    def submatrix(self, row_idx, col_idx):
        rpos = {r: i for i, r in enumerate(row_idx)}
        cpos = {c: j for j, c in enumerate(col_idx)}
        e = {}
        for (r, c), v in self._entries.items():
            if r in rpos and c in cpos:
                e[rpos[r], cpos[c]] = v
        return RatMatrix._raw(len(row_idx), len(col_idx), e)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self):
        if self.rows * self.cols <= 36:
            body = "; ".join(" ".join(format_rat(x) for x in r) for r in self.to_rows())
            return f"RatMatrix({self.rows}x{self.cols}: [{body}])"
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def block_diag(*blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    e = {}
    r0 = c0 = 0
    for b in blocks:
        for (r, c), v in b.items():
            e[r0 + r, c0 + c] = v
        r0 += b.rows
        c0 += b.cols
    return RatMatrix._raw(rows, cols, e)


def kron(a, b):
    e = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            e[i * b.rows + k, j * b.cols + l] = _canon(x * y)
    return RatMatrix._raw(a.rows * b.rows, a.cols * b.cols, e)


# ---------------------------------------------------------------------------
# integer row conversion and elimination


def _int_row(row):
    """Scale a sparse rational row (dict) to a primitive-free integer row."""
    cols = sorted(row)
    vals = [row[c] for c in cols]
    den = 1
    for v in vals:
        if type(v) is Fraction:
            den = lcm(den, v.denominator)
    if den != 1:
        vals = [int(v * den) for v in vals]
    return cols, vals


def _int_rows(dict_rows):
    return [_int_row(r) for r in dict_rows if r]


def _rank_of_dict_rows(dict_rows, ncols):
    return _backend.echelon(_int_rows(dict_rows), ncols, keep=False)[0]


def rank(m):
    """Exact rank of ``m``; eliminates along whichever side is shorter."""
    if not m.nnz:
        return 0
    if m.rows <= m.cols:
        return _rank_of_dict_rows(m.row_dicts(), m.cols)
    return _rank_of_dict_rows(m.col_dicts(), m.rows)


def rank_of_rows(dict_rows, ncols):
    """Rank of the span of sparse rows given as dicts ``col -> value``."""
    return _rank_of_dict_rows(dict_rows, ncols)


def _rref(dict_rows, ncols):
    """Reduced row echelon form: list of dict rows with leading 1, sorted."""
    _, ech = _backend.echelon(_int_rows(dict_rows), ncols, keep=True)
    reduced = {}
    order = []
    # back-substitute from the last pivot upward
    for cols, vals in reversed(ech):
        lead_c = cols[0]
        lead = vals[0]
        row = {c: Fraction(v, lead) for c, v in zip(cols, vals)}
        for c in cols[1:]:
            q = reduced.get(c)
            if q is None:
                continue
            f = row.get(c)
            if not f:
                continue
            for k, v in q.items():
                w = row.get(k, 0) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
        reduced[lead_c] = {k: _canon(v) for k, v in row.items()}
        order.append(lead_c)
    return [reduced[c] for c in sorted(order)]


class Subspace:
    """Subspace of Q^n held by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim, vectors=(), _reduced=None):
        self.ambient_dim = ambient_dim
        if _reduced is None:
            dict_rows = []
            for v in vectors:
                if isinstance(v, dict):
                    d = {c: rat(x) for c, x in v.items() if x}
                else:
                    if len(v) != ambient_dim:
                        raise DimensionMismatch("vector length differs from ambient dimension")
                    d = {c: rat(x) for c, x in enumerate(v) if x}
                if any(not 0 <= c < ambient_dim for c in d):
                    raise DimensionMismatch("vector index outside ambient space")
                dict_rows.append(d)
            _reduced = _rref(dict_rows, ambient_dim)
        self._rows = tuple(tuple(sorted(r.items())) for r in _reduced)
        self._pivots = tuple(r[0][0] for r in self._rows)

    @classmethod
    def zero(cls, n):
        return cls(n, _reduced=[])

    @classmethod
    def full(cls, n):
        return cls(n, _reduced=[{i: 1} for i in range(n)])

    @property
    def dim(self):
        return len(self._rows)

    @property
    def pivots(self):
        return self._pivots

    @property
    def basis(self):
        """Dense basis vectors in reduced echelon form."""
        out = []
        for r in self._rows:
            v = [0] * self.ambient_dim
            for c, x in r:
                v[c] = x
            out.append(v)
        return out

    def basis_dicts(self):
        return [dict(r) for r in self._rows]

    def basis_matrix(self):
        """Ambient x dim matrix whose columns are the basis vectors."""
        return RatMatrix.from_columns(self.basis_dicts(), self.ambient_dim)

    def _residue(self, v):
        if isinstance(v, dict):
            r = {c: rat(x) for c, x in v.items() if x}
        else:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("vector length differs from ambient dimension")
            r = {c: rat(x) for c, x in enumerate(v) if x}
        coords = []
        for p, row in zip(self._pivots, self._rows):
            f = r.get(p, 0)
            coords.append(f)
            if f:
                for c, x in row:
                    w = r.get(c, 0) - f * x
                    if w:
                        r[c] = w
                    else:
                        r.pop(c, None)
        return r, coords

    def __contains__(self, v):
        return not self._residue(v)[0]

    def coordinates(self, v):
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` is outside."""
        r, coords = self._residue(v)
        if r:
            raise ContainmentViolation("vector is not in the subspace")
        return [_canon(x) for x in coords]

    def contains_subspace(self, other):
        return all(not self._residue(dict(r))[0] for r in other._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient_dim, self._rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(m):
    """Null space of ``m`` (vectors v with m v = 0)."""
    red = _rref(m.row_dicts(), m.cols)
    pivots = [min(r) for r in red]
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    # column f of each reduced row, gathered per free column
    by_col = {}
    for p, r in zip(pivots, red):
        for c, v in r.items():
            if c != p:
                by_col.setdefault(c, []).append((p, v))
    vecs = []
    for f in free:
        v = {f: 1}
        for p, x in by_col.get(f, ()):
            v[p] = -x
        vecs.append(v)
    return Subspace(m.cols, vecs)


def image(m):
    """Column space of ``m``."""
    return Subspace(m.rows, _reduced=_rref(m.col_dicts(), m.rows))


def quotient_dim(big, small):
    """dim(big / small), after checking that ``small`` lies inside ``big``."""
    if big.ambient_dim != small.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {big.ambient_dim} vs {small.ambient_dim}")
    if not big.contains_subspace(small):
        raise ContainmentViolation("subspace is not contained in the ambient cycle space")
    return big.dim - small.dim


def compose(f, g):
    """Matrix product f·g (apply g first)."""
    if f.cols != g.rows:
        raise DimensionMismatch(f"cannot compose {f.shape} with {g.shape}")
    grows = {}
    for (r, c), v in g.items():
        grows.setdefault(r, []).append((c, v))
    acc = {}
    for (i, k), a in f.items():
        for j, b in grows.get(k, ()):
            key = (i, j)
            acc[key] = acc.get(key, 0) + a * b
    return RatMatrix._raw(f.rows, g.cols, {k: _canon(v) for k, v in acc.items() if v})
