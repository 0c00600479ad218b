"""Machine checks of the (co)homology splitting results for triangular algebras.

Each ``verify_*`` function computes both sides of a dimension identity by
separate pipelines (the triangular algebra's complexes on one side, the
corner algebras' complexes on the other) and returns a
:class:`VerificationRecord`.
"""

from dataclasses import dataclass, field

from .algebra import ground_field
from .bimodule import Bimodule, corner_as_bimodule, corner_split, dual, hom_bimodule
from .errors import HypothesisViolated, NotInverse
from .hochschild import cohomology_dims, cohomology_dim, homology_dims
from .linalg import RatMatrix, Subspace, compose, kernel
from .triangular import (build_triangular, m_as_t_bimodule, nested_triangular,
                         t_as_ab_bimodule, t_as_bimodule, t_dual_bimodule, via_corners)


@dataclass(frozen=True)
class VerificationRecord:
    theorem: str
    instance: str
    lhs: tuple
    rhs: tuple
    verdict: str
    degrees: tuple
    details: dict = field(default_factory=dict, compare=True)

    @property
    def ok(self):
        return self.verdict == "match"


def make_record(theorem, instance, lhs, rhs, degrees, details=None, ok=None):
    lhs, rhs = tuple(lhs), tuple(rhs)
    if ok is None:
        ok = lhs == rhs
    return VerificationRecord(theorem, instance, lhs, rhs, "match" if ok else "mismatch",
                              tuple(degrees), details or {})


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceSpace:
    algebra: object
    space: Subspace  # functionals as coordinate vectors on the basis

    @property
    def dim(self):
        return self.space.dim


def trace_space(d):
    """Functionals f with f(xy) = f(yx), i.e. the annihilator of [D, D]."""
    rows = []
    for i in range(d.dim):
        for j in range(i + 1, d.dim):
            c = dict(d.basis_product(i, j))
            for k, v in d.basis_product(j, i).items():
                w = c.get(k, 0) - v
                if w:
                    c[k] = w
                else:
                    c.pop(k, None)
            if c:
                rows.append(c)
    entries = {(r, k): v for r, row in enumerate(rows) for k, v in row.items()}
    return TraceSpace(d, kernel(RatMatrix._raw(len(rows), d.dim, entries)))


@dataclass(frozen=True)
class TraceSplit:
    forward: RatMatrix   # τ(T) -> τ(A) ⊕ τ(B)
    backward: RatMatrix  # τ(A) ⊕ τ(B) -> τ(T)
    traces_kill_m: bool
    commutator_identity: bool


def trace_split_maps(td):
    """Restriction τ(T) -> τ(A) ⊕ τ(B) and extension-by-zero back, as matrices.

    Raises :class:`NotInverse` unless the two compose to the identity both ways.
    """
    tT, tA, tB = trace_space(td.t), trace_space(td.a), trace_space(td.b)
    a_blk, m_blk, b_blk = td.blocks
    n = td.t.dim

    fwd_cols = []
    kills_m = True
    for f in tT.space.basis_dicts():
        if any(f.get(i, 0) for i in m_blk):
            kills_m = False
        fa = {i: f[a_blk[i]] for i in range(len(a_blk)) if f.get(a_blk[i], 0)}
        fb = {i: f[b_blk[i]] for i in range(len(b_blk)) if f.get(b_blk[i], 0)}
        ca = tA.space.coordinates(fa)
        cb = tB.space.coordinates(fb)
        fwd_cols.append({i: v for i, v in enumerate(ca + cb) if v})
    forward = RatMatrix.from_columns(fwd_cols, tA.dim + tB.dim)

    back_cols = []
    for g in tA.space.basis_dicts():
        back_cols.append(dict(enumerate(tT.space.coordinates({a_blk[i]: v for i, v in g.items()}))))
    for g in tB.space.basis_dicts():
        back_cols.append(dict(enumerate(tT.space.coordinates({b_blk[i]: v for i, v in g.items()}))))
    backward = RatMatrix.from_columns([{k: v for k, v in c.items() if v} for c in back_cols],
                                      tT.dim)

    if (compose(forward, backward) != RatMatrix.identity(tA.dim + tB.dim)
            or compose(backward, forward) != RatMatrix.identity(tT.dim)):
        raise NotInverse("trace restriction and extension are not mutually inverse")

    # m = e_A m - m e_A for every m in the M block
    comm = td.t.element_left_matrix(td.e_a) - td.t.element_right_matrix(td.e_a)
    m_idx = list(m_blk)
    identity_holds = comm.submatrix(list(range(n)), m_idx) == RatMatrix._raw(
        n, len(m_idx), {(r, j): 1 for j, r in enumerate(m_idx)})
    return TraceSplit(forward, backward, kills_m, identity_holds)


# ---------------------------------------------------------------------------
# corner helpers


def corners_of(td, x):
    return corner_split(x, td.e_a, td.e_b)


def _corner_module(td, split, which):
    return corner_as_bimodule(split, which, td.a, td.b, td.incl_a, td.incl_b)


def _label(td, extra=""):
    m = td.m.name or f"M({td.m.dim})"
    base = f"T=[[{td.a.name}, {m}], [0, {td.b.name}]]"
    return f"{base} {extra}".strip()


# ---------------------------------------------------------------------------
# theorem checks


def verify_thm_3_1(td, x, max_degree=3, label=None):
    """Cohomology splits when X_AB = 0: H^n(T, X) = H^n(A, X_AA) ⊕ H^n(B, X_BB)."""
    split = corners_of(td, x)
    if split.x_ab.dim:
        raise HypothesisViolated(f"X_AB has dimension {split.x_ab.dim}, expected 0")
    x_aa = _corner_module(td, split, "AA")
    x_bb = _corner_module(td, split, "BB")
    lhs = cohomology_dims(td.t, x, max_degree)
    ha = cohomology_dims(td.a, x_aa, max_degree)
    hb = cohomology_dims(td.b, x_bb, max_degree)
    return make_record("thm3.1", label or _label(td, f"X={x.name}"), lhs, _add(ha, hb),
                   range(max_degree + 1),
                   {"corners": list(split.dims), "H(A,X_AA)": list(ha), "H(B,X_BB)": list(hb)})


def verify_cor_3_2(td, label=None):
    """H^1(T, T*) = H^1(A, A*) ⊕ H^1(B, B*), and weak amenability of T iff of A and B."""
    h_t = cohomology_dim(td.t, t_dual_bimodule(td), 1)
    h_a = cohomology_dim(td.a, dual(Bimodule.regular(td.a)), 1)
    h_b = cohomology_dim(td.b, dual(Bimodule.regular(td.b)), 1)
    wa = {"T": h_t == 0, "A": h_a == 0, "B": h_b == 0}
    iff = wa["T"] == (wa["A"] and wa["B"])
    return make_record("cor3.2", label or _label(td, "X=T*"), (h_t,), (h_a + h_b,), (1,),
                   {"H1(A,A*)": h_a, "H1(B,B*)": h_b, "weakly_amenable": wa, "iff_holds": iff},
                   ok=(h_t == h_a + h_b) and iff)


def verify_thm_3_3(td, x, max_degree=3, label=None):
    """Homology splits when X_BA = 0: H_n(T, X) = H_n(A, X_AA) ⊕ H_n(B, X_BB)."""
    split = corners_of(td, x)
    if split.x_ba.dim:
        raise HypothesisViolated(f"X_BA has dimension {split.x_ba.dim}, expected 0")
    x_aa = _corner_module(td, split, "AA")
    x_bb = _corner_module(td, split, "BB")
    lhs = homology_dims(td.t, x, max_degree)
    ha = homology_dims(td.a, x_aa, max_degree)
    hb = homology_dims(td.b, x_bb, max_degree)
    return make_record("thm3.3", label or _label(td, f"X={x.name}"), lhs, _add(ha, hb),
                   range(max_degree + 1),
                   {"corners": list(split.dims), "H(A,X_AA)": list(ha), "H(B,X_BB)": list(hb)})


def verify_cor_3_4(td, max_degree=3, label=None):
    """H_n(T, T) = H_n(A, A) ⊕ H_n(B, B), with A and B acting on themselves."""
    x = t_as_bimodule(td)
    split = corners_of(td, x)
    lhs = homology_dims(td.t, x, max_degree)
    ha = homology_dims(td.a, Bimodule.regular(td.a), max_degree)
    hb = homology_dims(td.b, Bimodule.regular(td.b), max_degree)
    return make_record("cor3.4", label or _label(td, "X=T"), lhs, _add(ha, hb),
                   range(max_degree + 1),
                   {"corners": list(split.dims), "H(A,A)": list(ha), "H(B,B)": list(hb)})


def nested_coefficients(td, m):
    """T_m as a T-bimodule: T acts through its A and B corners on the top row / right column.

    Not unital for m >= 0 unless T = M; see :func:`triangular.t_as_ab_bimodule`.
    """
    level = nested_triangular(td, m)
    return via_corners(td, t_as_ab_bimodule(level), require_unital=False)


def verify_cor_3_5(td, nesting=1, max_degree=2, label=None):
    """H_n(T, M) = 0 and H_n(T, T_m) = 0 for m = 0..nesting."""
    mx = m_as_t_bimodule(td)
    split = corners_of(td, mx)
    lhs = list(homology_dims(td.t, mx, max_degree))
    per_level = {}
    for m in range(nesting + 1):
        h = homology_dims(td.t, nested_coefficients(td, m), max_degree)
        per_level[f"T_{m}"] = list(h)
        lhs.extend(h)
    rhs = [0] * len(lhs)
    return make_record("cor3.5", label or _label(td, f"X=M, T_0..T_{nesting}"), lhs, rhs,
                   range(max_degree + 1),
                   {"H(T,M)": lhs[:max_degree + 1], "M_corners": list(split.dims), **per_level})


def verify_thm_3_6(td, label=None):
    """dim τ(T) = dim τ(A) + dim τ(B), with explicit inverse maps and τ(D) = H^0(D, D*)."""
    tT, tA, tB = trace_space(td.t), trace_space(td.a), trace_space(td.b)
    split = trace_split_maps(td)
    h0 = {name: cohomology_dim(alg, dual(Bimodule.regular(alg)), 0)
          for name, alg in (("T", td.t), ("A", td.a), ("B", td.b))}
    cross = h0 == {"T": tT.dim, "A": tA.dim, "B": tB.dim}
    ok = (tT.dim == tA.dim + tB.dim and cross and split.traces_kill_m
          and split.commutator_identity)
    return make_record("thm3.6", label or _label(td), (tT.dim,), (tA.dim + tB.dim,), (0,),
                   {"tau": {"T": tT.dim, "A": tA.dim, "B": tB.dim}, "H0(D,D*)": h0,
                    "maps_inverse": True, "traces_kill_m": split.traces_kill_m,
                    "commutator_identity": split.commutator_identity}, ok=ok)


def verify_thm_3_8(a, m, n=2, label=None):
    """Compare H^n(T, T) for T = [[A, M], [0, Q]] with H^n and H^{n-1} of A in B(M).

    Reports which candidate identity holds.  The degree-n-1 identity is
    guaranteed when H^n(A, A) = H^{n-1}(A, A) = 0 and n >= 2; the record is a
    mismatch only if that vanishing holds and neither identity does.
    """
    q = ground_field()
    if m.right_alg != q:
        raise HypothesisViolated("M must be a left module (ground field acting on the right)")
    td = build_triangular(a, m, q)
    h_tt = cohomology_dim(td.t, t_as_bimodule(td), n)
    bm = hom_bimodule(m, m)
    h_bm_n = cohomology_dim(a, bm, n)
    h_bm_prev = cohomology_dim(a, bm, n - 1)
    reg = Bimodule.regular(a)
    h_aa_n = cohomology_dim(a, reg, n)
    h_aa_prev = cohomology_dim(a, reg, n - 1)
    h_cc = cohomology_dim(q, Bimodule.regular(q), n)
    same = h_tt == h_bm_n
    shifted = h_tt == h_bm_prev
    stated = n > 1 and h_aa_n == 0
    full = stated and h_aa_prev == 0
    details = {
        "H^n(T,T)": h_tt, "H^n(A,B(M))": h_bm_n, "H^{n-1}(A,B(M))": h_bm_prev,
        "H^n(A,A)": h_aa_n, "H^{n-1}(A,A)": h_aa_prev, "H^n(C,C)": h_cc,
        "same_degree_holds": same, "shifted_degree_holds": shifted,
        "stated_hypothesis": stated, "full_vanishing": full,
        "needs_extra_vanishing": stated and not full,
    }
    inst = label or f"A={a.name}, M={m.name or m.dim}, n={n}"
    return make_record("thm3.8", inst, (h_tt,), (h_bm_n, h_bm_prev), (n - 1, n), details,
                   ok=(same or shifted) or not full)


def phi0_bound(td, x, label=None):
    """dim H^0(T, X) <= dim H^0(A, X_AA) + dim H^0(B, X_BB) for any unital T-bimodule."""
    split = corners_of(td, x)
    lhs = cohomology_dim(td.t, x, 0)
    ha = cohomology_dim(td.a, _corner_module(td, split, "AA"), 0)
    hb = cohomology_dim(td.b, _corner_module(td, split, "BB"), 0)
    return make_record("phi0", label or _label(td, f"X={x.name}"), (lhs,), (ha + hb,), (0,),
                   {"corners": list(split.dims)}, ok=lhs <= ha + hb)
