"""Triangular algebras T = [[A, M], [0, B]] and their canonical bimodules.

T has basis [A-basis | M-basis | B-basis] and product
(a, m, b)(a', m', b') = (aa', am' + mb', bb').
"""

from dataclasses import dataclass, replace

from .algebra import Algebra, validate
from .bimodule import Bimodule, dual, pullback, validate_bimodule
from .errors import AlgebraMismatch
from .linalg import RatMatrix


@dataclass(frozen=True)
class TriangularData:
    a: Algebra
    b: Algebra
    m: Bimodule
    t: Algebra
    e_a: tuple
    e_b: tuple
    incl_a: RatMatrix  # dim T x dim A
    incl_b: RatMatrix  # dim T x dim B
    proj_a: RatMatrix  # dim A x dim T
    proj_m: RatMatrix  # dim M x dim T
    proj_b: RatMatrix  # dim B x dim T
    depth: int = 0

    @property
    def blocks(self):
        """Index ranges of the A, M and B blocks in T's basis."""
        na, nm = self.a.dim, self.m.dim
        return (range(0, na), range(na, na + nm), range(na + nm, na + nm + self.b.dim))


def _block_embedding(total, offset, size):
    return RatMatrix._raw(total, size, {(offset + i, i): 1 for i in range(size)})


def build_triangular(a, m, b, require_unital=True, name=None):
    """Assemble T from A, an (A, B)-bimodule M, and B; T is validated.

    With ``require_unital=False`` M may be a non-unital bimodule, in which
    case T is associative but has no unit.
    """
    if m.left_alg != a or m.right_alg != b:
        raise AlgebraMismatch("M must be a bimodule over (A, B)")
    validate_bimodule(m, require_unital=require_unital)
    na, nm, nb = a.dim, m.dim, b.dim
    oM, oB = na, na + nm
    table = {}
    for i in range(na):
        for j in range(na):
            row = a.basis_product(i, j)
            if row:
                table[i, j] = dict(row)
    for i in range(nb):
        for j in range(nb):
            row = b.basis_product(i, j)
            if row:
                table[oB + i, oB + j] = {oB + k: c for k, c in row.items()}
    for i, cols in enumerate(m.left_columns()):
        for x, col in enumerate(cols):
            if col:
                table[i, oM + x] = {oM + y: c for y, c in col}
    for j, cols in enumerate(m.right_columns()):
        for x, col in enumerate(cols):
            if col:
                table[oM + x, oB + j] = {oM + y: c for y, c in col}
    n = na + nm + nb
    e_a = [0] * n
    e_b = [0] * n
    if a.unit is not None:
        e_a[:na] = a.unit
    if b.unit is not None:
        e_b[oB:] = b.unit
    unital = a.unit is not None and b.unit is not None
    if unital and not require_unital:
        ident = RatMatrix.identity(nm)
        unital = m.left_element(a.unit) == ident and m.right_element(b.unit) == ident
    unit = [x + y for x, y in zip(e_a, e_b)] if unital else None
    t = Algebra(n, table, unit, name or "T")
    validate(t)
    return TriangularData(
        a=a, b=b, m=m, t=t, e_a=tuple(e_a), e_b=tuple(e_b),
        incl_a=_block_embedding(n, 0, na), incl_b=_block_embedding(n, oB, nb),
        proj_a=_block_embedding(n, 0, na).transpose(),
        proj_m=_block_embedding(n, oM, nm).transpose(),
        proj_b=_block_embedding(n, oB, nb).transpose())


def t_as_bimodule(td):
    return Bimodule.regular(td.t)


def t_dual_bimodule(td):
    return dual(Bimodule.regular(td.t))


def via_corners(td, y, require_unital=True):
    """Make an (A, B)-bimodule Y into a T-bimodule: (a, m, b)·y = a y, y·(a, m, b) = y b."""
    x = pullback(y, td.t, td.proj_a, td.t, td.proj_b, name=y.name)
    validate_bimodule(x, require_unital=require_unital)
    return x


def m_as_t_bimodule(td):
    return via_corners(td, td.m)


def t_as_ab_bimodule(td):
    """T as an (A, B)-bimodule through the corner embeddings.

    Not unital once M is nonzero or A, B are: 1_A only fixes the top row of T.
    """
    return pullback(Bimodule.regular(td.t), td.a, td.incl_a, td.b, td.incl_b,
                    name=f"{td.t.name}_AB")


def nested_triangular(td, depth):
    """T_depth with T_0 = T and T_k = [[A, T_{k-1}], [0, B]].

    T_{k-1} carries its (A, B)-actions through the corner embeddings, which
    are not unital, so the levels above 0 are associative algebras without a
    unit.
    """
    level = td
    for k in range(depth):
        y = t_as_ab_bimodule(level)
        nxt = build_triangular(td.a, y, td.b, require_unital=False, name=f"T{k + 1}")
        level = replace(nxt, depth=k + 1)
    return level
