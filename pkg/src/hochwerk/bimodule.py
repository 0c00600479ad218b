"""Bimodules over pairs of algebras, stored as action matrices.

``left_act[i]`` is the matrix of ``x -> e_i x`` and ``right_act[j]`` the
matrix of ``x -> x f_j``, both acting on coordinate columns.  One-sided
modules are bimodules whose other side is the ground field acting by
scalars.
"""

from dataclasses import dataclass, field

from .algebra import ground_field, inverse, tensor_op
from .errors import (ActionsDontCommute, AlgebraMismatch, CornersDontSpan,
                     DimensionMismatch, LeftActionNotHom, NotIdempotent,
                     NotUnital, RightActionNotAntiHom)
from .linalg import RatMatrix, Subspace, block_diag, compose, image, kron, rank_of_rows


def _combo(mats, coeffs, dim):
    out = RatMatrix.zeros(dim, dim)
    for m, c in zip(mats, coeffs):
        if c:
            out = out + m.scale(c)
    return out


class Bimodule:
    """A (left_alg, right_alg)-bimodule of finite dimension."""

    __slots__ = ("left_alg", "right_alg", "dim", "left_act", "right_act", "name",
                 "_lcols", "_rcols")

    def __init__(self, left_alg, right_alg, dim, left_act, right_act, name=None):
        left_act = tuple(left_act)
        right_act = tuple(right_act)
        if len(left_act) != left_alg.dim or len(right_act) != right_alg.dim:
            raise DimensionMismatch("need one action matrix per basis element")
        for m in left_act + right_act:
            if m.shape != (dim, dim):
                raise DimensionMismatch(f"action matrix {m.shape} on a {dim}-dim module")
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.dim = dim
        self.left_act = left_act
        self.right_act = right_act
        self.name = name
        self._lcols = None
        self._rcols = None

    @classmethod
    def regular(cls, alg):
        """``alg`` acting on itself by multiplication on both sides."""
        return cls(alg, alg, alg.dim,
                   [alg.left_matrix(i) for i in range(alg.dim)],
                   [alg.right_matrix(i) for i in range(alg.dim)],
                   name=alg.name)

    @classmethod
    def zero(cls, left_alg, right_alg):
        z = RatMatrix.zeros(0, 0)
        return cls(left_alg, right_alg, 0, [z] * left_alg.dim, [z] * right_alg.dim)

    # sparse column views used by the complex builders: cols[i][x] = [(y, c), ...]
    def left_columns(self):
        if self._lcols is None:
            self._lcols = tuple(_columns(m, self.dim) for m in self.left_act)
        return self._lcols

    def right_columns(self):
        if self._rcols is None:
            self._rcols = tuple(_columns(m, self.dim) for m in self.right_act)
        return self._rcols

    def left_element(self, x):
        """Matrix of the left action of the element with coordinates ``x``."""
        return _combo(self.left_act, x, self.dim)

    def right_element(self, x):
        return _combo(self.right_act, x, self.dim)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<Bimodule{label} dim={self.dim} over "
                f"({self.left_alg.dim}-dim, {self.right_alg.dim}-dim)>")


def _columns(m, dim):
    cols = [[] for _ in range(dim)]
    for (r, c), v in m.items():
        cols[c].append((r, v))
    for col in cols:
        col.sort()
    return tuple(tuple(col) for col in cols)


def left_module(alg, matrices, name=None):
    """Left ``alg``-module; the right side is the ground field acting by scalars."""
    dim = matrices[0].rows if matrices else 0
    return Bimodule(alg, ground_field(), dim, matrices, [RatMatrix.identity(dim)], name)


def right_module(alg, matrices, name=None):
    dim = matrices[0].rows if matrices else 0
    return Bimodule(ground_field(), alg, dim, [RatMatrix.identity(dim)], matrices, name)


def validate_bimodule(x, require_unital=True):
    """Check the bimodule axioms exactly; returns ``True`` or raises a diagnostic."""
    A, B = x.left_alg, x.right_alg
    L, R = x.left_act, x.right_act
    for i in range(A.dim):
        for j in range(A.dim):
            rhs = _combo(L, _dense(A.basis_product(i, j), A.dim), x.dim)
            if compose(L[i], L[j]) != rhs:
                raise LeftActionNotHom(f"L(e{i})L(e{j}) != L(e{i}e{j})")
    for i in range(B.dim):
        for j in range(B.dim):
            rhs = _combo(R, _dense(B.basis_product(i, j), B.dim), x.dim)
            if compose(R[j], R[i]) != rhs:
                raise RightActionNotAntiHom(f"R(f{j})R(f{i}) != R(f{i}f{j})")
    for i in range(A.dim):
        for j in range(B.dim):
            if compose(L[i], R[j]) != compose(R[j], L[i]):
                raise ActionsDontCommute(f"L(e{i}) and R(f{j}) do not commute")
    if require_unital:
        ident = RatMatrix.identity(x.dim)
        if A.unit is not None and x.left_element(A.unit) != ident:
            raise NotUnital("left unit does not act as the identity")
        if B.unit is not None and x.right_element(B.unit) != ident:
            raise NotUnital("right unit does not act as the identity")
    return True


def _dense(d, n):
    v = [0] * n
    for k, c in d.items():
        v[k] = c
    return v


def dual(x):
    """Dual bimodule: (a f)(v) = f(v a) and (f a)(v) = f(a v).

    Left and right algebras swap roles, so the dual of an (A, B)-bimodule is a
    (B, A)-bimodule.
    """
    return Bimodule(x.right_alg, x.left_alg, x.dim,
                    [m.transpose() for m in x.right_act],
                    [m.transpose() for m in x.left_act],
                    name=f"{x.name}*" if x.name else None)


def direct_sum(*mods):
    first = mods[0]
    for m in mods[1:]:
        if m.left_alg != first.left_alg or m.right_alg != first.right_alg:
            raise AlgebraMismatch("direct sum of modules over different algebras")
    return Bimodule(first.left_alg, first.right_alg, sum(m.dim for m in mods),
                    [block_diag(*(m.left_act[i] for m in mods)) for i in range(first.left_alg.dim)],
                    [block_diag(*(m.right_act[i] for m in mods)) for i in range(first.right_alg.dim)])


def change_basis(x, p):
    """Same bimodule in the basis given by the columns of invertible ``p``."""
    q = inverse(p)
    return Bimodule(x.left_alg, x.right_alg, x.dim,
                    [q @ m @ p for m in x.left_act],
                    [q @ m @ p for m in x.right_act], x.name)


def pullback(x, left_alg=None, left_map=None, right_alg=None, right_map=None, name=None):
    """Restrict scalars along algebra maps given as matrices.

    ``left_map`` has shape (x.left_alg.dim, left_alg.dim); its column i is the
    image of the new basis element e_i.  Same for the right side.
    """
    if left_alg is None:
        left_alg, left_act = x.left_alg, x.left_act
    else:
        cols = left_map.col_dicts()
        left_act = [_combo(x.left_act, _dense(c, x.left_alg.dim), x.dim) for c in cols]
    if right_alg is None:
        right_alg, right_act = x.right_alg, x.right_act
    else:
        cols = right_map.col_dicts()
        right_act = [_combo(x.right_act, _dense(c, x.right_alg.dim), x.dim) for c in cols]
    return Bimodule(left_alg, right_alg, x.dim, left_act, right_act, name)


def hom_bimodule(m, n):
    """Bimodule of all linear maps M -> N over the common acting algebra E.

    A map F is stored row-major (index ``y * dim M + x``); (e·F) = L_N(e) F and
    (F·e) = F L_M(e).
    """
    if m.left_alg != n.left_alg:
        raise AlgebraMismatch("hom_bimodule needs modules over the same algebra")
    E = m.left_alg
    im, in_ = RatMatrix.identity(m.dim), RatMatrix.identity(n.dim)
    left = [kron(n.left_act[i], im) for i in range(E.dim)]
    right = [kron(in_, m.left_act[i].transpose()) for i in range(E.dim)]
    return Bimodule(E, E, m.dim * n.dim, left, right, name="Hom")


def as_left_e_module(m):
    """An (A, B)-bimodule M as a left module over A ⊗ B^op: (a ⊗ b) m = a m b."""
    E = tensor_op(m.left_alg, m.right_alg)
    mats = [compose(m.left_act[i], m.right_act[j])
            for i in range(m.left_alg.dim) for j in range(m.right_alg.dim)]
    return left_module(E, mats, name=m.name)


def as_right_e_module(x, a, b):
    """A (B, A)-bimodule X as a right module over A ⊗ B^op: x (a ⊗ b) = b x a."""
    if x.left_alg != b or x.right_alg != a:
        raise AlgebraMismatch("expected a (B, A)-bimodule")
    E = tensor_op(a, b)
    mats = [compose(x.left_act[j], x.right_act[i])
            for i in range(a.dim) for j in range(b.dim)]
    return right_module(E, mats, name=x.name)


# ---------------------------------------------------------------------------
# corners


@dataclass(frozen=True)
class CornerSplit:
    """Decomposition X = X_AA ⊕ X_AB ⊕ X_BA ⊕ X_BB by two idempotents."""

    x_aa: Subspace
    x_ab: Subspace
    x_ba: Subspace
    x_bb: Subspace
    projections: dict = field(compare=False)
    module: Bimodule = field(compare=False, repr=False)

    @property
    def dims(self):
        return (self.x_aa.dim, self.x_ab.dim, self.x_ba.dim, self.x_bb.dim)

    def corner(self, which):
        return {"AA": self.x_aa, "AB": self.x_ab, "BA": self.x_ba, "BB": self.x_bb}[which]


def corner_split(x, e_a, e_b):
    """Split a bimodule over T (on both sides) by orthogonal idempotents e_a + e_b = 1.

    The corner X_uv is the image of P_uv = L(e_u) R(e_v).
    """
    T = x.left_alg
    if x.right_alg != T:
        raise AlgebraMismatch("corner_split needs a bimodule over the same algebra on both sides")
    e_a, e_b = list(e_a), list(e_b)
    if T.multiply(e_a, e_a) != e_a or T.multiply(e_b, e_b) != e_b:
        raise NotIdempotent("corner vectors are not idempotent")
    zero = [0] * T.dim
    if T.multiply(e_a, e_b) != zero or T.multiply(e_b, e_a) != zero:
        raise NotIdempotent("corner idempotents are not orthogonal")
    if T.unit is not None and [a + b for a, b in zip(e_a, e_b)] != list(T.unit):
        raise NotIdempotent("corner idempotents do not sum to the unit")
    la, lb = x.left_element(e_a), x.left_element(e_b)
    ra, rb = x.right_element(e_a), x.right_element(e_b)
    proj = {"AA": compose(la, ra), "AB": compose(la, rb),
            "BA": compose(lb, ra), "BB": compose(lb, rb)}
    spaces = {k: image(p) for k, p in proj.items()}
    total = sum(s.dim for s in spaces.values())
    joint = rank_of_rows([v for s in spaces.values() for v in s.basis_dicts()], x.dim)
    if total != x.dim or joint != x.dim:
        raise CornersDontSpan(
            f"corners have dims {[s.dim for s in spaces.values()]} (independent rank {joint}) "
            f"in a {x.dim}-dim module")
    return CornerSplit(spaces["AA"], spaces["AB"], spaces["BA"], spaces["BB"], proj, x)


def restrict_to_subspace(mat, sub):
    """Matrix of ``mat`` restricted to an invariant subspace, in its echelon basis."""
    cols = []
    for v in sub.basis_dicts():
        dense = [0] * sub.ambient_dim
        for c, a in v.items():
            dense[c] = a
        w = mat.apply(dense)
        cols.append({i: c for i, c in enumerate(sub.coordinates(w)) if c})
    return RatMatrix.from_columns(cols, sub.dim)


def corner_as_bimodule(split, which, a, b, incl_a, incl_b):
    """Corner ``which`` of ``split`` as a bimodule over the corner algebras.

    ``incl_a`` / ``incl_b`` are the (dim T x dim A / dim B) embedding
    matrices; corner uv becomes a bimodule over (u-algebra, v-algebra).
    """
    x = split.module
    sub = split.corner(which)
    algs = {"A": (a, incl_a), "B": (b, incl_b)}
    left_alg, left_map = algs[which[0]]
    right_alg, right_map = algs[which[1]]
    left = [restrict_to_subspace(x.left_element(_dense(c, x.left_alg.dim)), sub)
            for c in left_map.col_dicts()]
    right = [restrict_to_subspace(x.right_element(_dense(c, x.right_alg.dim)), sub)
             for c in right_map.col_dicts()]
    name = f"{x.name}_{which}" if x.name else f"X_{which}"
    return Bimodule(left_alg, right_alg, sub.dim, left, right, name)


# ---------------------------------------------------------------------------
# tensor product over an algebra


@dataclass(frozen=True)
class TensorQuotient:
    """X ⊗_E Y as a quotient of X ⊗ Y (basis index ``i * dim Y + j``)."""

    dim: int
    projection: RatMatrix
    relations: Subspace
    free: tuple  # coordinates of X ⊗ Y kept by the projection (a section)


def quotient_projection(relations):
    """Projection Q^n -> Q^n / relations in coordinates of the non-pivot columns."""
    n = relations.ambient_dim
    pivots = set(relations.pivots)
    free = [c for c in range(n) if c not in pivots]
    pos = {c: i for i, c in enumerate(free)}
    entries = {}
    for c in free:
        entries[pos[c], c] = 1
    for row in relations.basis_dicts():
        p = min(row)
        for c, v in row.items():
            if c != p:
                entries[pos[c], p] = -v
    return RatMatrix._raw(len(free), n, entries), free


def tensor_over(x, y):
    """X ⊗_E Y for a right E-module X and a left E-module Y."""
    if x.right_alg != y.left_alg:
        raise AlgebraMismatch("tensor_over needs modules over the same algebra")
    E = x.right_alg
    ix, iy = RatMatrix.identity(x.dim), RatMatrix.identity(y.dim)
    rows = []
    for k in range(E.dim):
        rel = kron(x.right_act[k], iy) - kron(ix, y.left_act[k])
        rows.extend(c for c in rel.col_dicts() if c)
    rel_space = Subspace(x.dim * y.dim, rows)
    proj, free = quotient_projection(rel_space)
    return TensorQuotient(proj.rows, proj, rel_space, tuple(free))
