"""Bar resolutions and the derived functors Ext and Tor.

For a left E-module X the bar resolution has terms

    B_n(X) = E₊ ⊗ E^{⊗n} ⊗ X,    basis (a, a1, ..., an, x), a ∈ E₊,

where E₊ is the unitization (its adjoined unit is the last basis element),
augmentation π(a ⊗ x) = a x, and

    d_n(a ⊗ a1 ⊗ ... ⊗ a{n+1} ⊗ x) = a a1 ⊗ a2 ⊗ ... ⊗ x
        + Σ_{k=1..n} (-1)^k a ⊗ ... ⊗ a_k a_{k+1} ⊗ ... ⊗ x
        + (-1)^{n+1} a ⊗ a1 ⊗ ... ⊗ an ⊗ a{n+1} x.

E acts on B_n through the first factor.  Ext is the cohomology of
Hom_E(B(M), Y), each Hom space being solved as the kernel of the
intertwining equations; Tor is the homology of X ⊗_E B(M).
"""

from dataclasses import dataclass

from .algebra import unitization
from .bimodule import hom_bimodule, left_module, tensor_over
from .errors import AlgebraMismatch, ContainmentViolation, ExactnessFailure
from .hochschild import _add, cohomology_dim
from .linalg import RatMatrix, _canon, compose, kernel, kron, rank


@dataclass(frozen=True)
class BarComplex:
    base: object          # E
    base_plus: object     # E₊
    module: object        # X
    dims: tuple           # dim B_0 .. dim B_{max+1}
    augmentation: RatMatrix
    differentials: tuple  # differentials[n] = d_n : B_{n+1} -> B_n
    exact: bool

    def term_as_module(self, n):
        """B_n as a left E-module (E acting on the first tensor factor)."""
        e, ep = self.base, self.base_plus
        rest = RatMatrix.identity(self.dims[n] // ep.dim)
        mats = [kron(ep.left_matrix(k), rest) for k in range(e.dim)]
        return left_module(e, mats, name=f"B{n}")


def _bar_differential(e, ep, x, n):
    """Sparse columns of d_n : B_{n+1} -> B_n."""
    ne, dx = e.dim, x.dim
    L = x.left_columns()
    m = n + 1
    nm = ne ** m
    nn = ne ** n
    sign_last = -1 if m % 2 else 1
    cols = []
    for a in range(ep.dim):
        for jidx in range(nm):
            digits = []
            t = jidx
            for _ in range(m):
                digits.append(t % ne)
                t //= ne
            digits.reverse()
            tail = jidx % nn if n else 0
            head = jidx // ne
            for xi in range(dx):
                col = {}
                # (a a1) ⊗ a2 ⊗ ... ⊗ x
                for l, c in ep.basis_product(a, digits[0]).items():
                    _add(col, ((l * nn) + tail) * dx + xi, c)
                for k in range(1, n + 1):
                    sign = -1 if k % 2 else 1
                    left = 0
                    for t in digits[:k - 1]:
                        left = left * ne + t
                    right = 0
                    for t in digits[k + 1:]:
                        right = right * ne + t
                    scale_r = ne ** (m - k - 1)
                    for l, c in e.basis_product(digits[k - 1], digits[k]).items():
                        idx = (left * ne + l) * scale_r + right
                        _add(col, (a * nn + idx) * dx + xi, sign * c)
                for y, c in L[digits[-1]][xi]:
                    _add(col, (a * nn + head) * dx + y, sign_last * c)
                cols.append({k: _canon(v) for k, v in col.items()})
    return RatMatrix.from_columns(cols, ep.dim * nn * dx)


def _augmentation(e, ep, x):
    """π : E₊ ⊗ X -> X, π(a ⊗ x) = a x."""
    dx = x.dim
    cols = []
    for a in range(ep.dim):
        for xi in range(dx):
            if a == e.dim:
                cols.append({xi: 1})
            else:
                cols.append({y: c for y, c in x.left_columns()[a][xi]})
    return RatMatrix.from_columns(cols, dx)


def bar_resolution(e, x, max_degree, check=True):
    """Bar resolution of the left E-module ``x`` with d_0 .. d_{max_degree}.

    With ``check`` the augmented complex is certified to be a complex and
    to be exact at X, B_0, ..., B_{max_degree}; failure raises
    :class:`ExactnessFailure`.
    """
    if x.left_alg != e:
        raise AlgebraMismatch("module is not over the given algebra")
    ep = unitization(e)
    pi = _augmentation(e, ep, x)
    ds = tuple(_bar_differential(e, ep, x, n) for n in range(max_degree + 1))
    dims = tuple(ep.dim * e.dim ** n * x.dim for n in range(max_degree + 2))
    exact = False
    if check:
        if not compose(pi, ds[0]).is_zero():
            raise ExactnessFailure("π d_0 != 0")
        for n in range(1, max_degree + 1):
            if not compose(ds[n - 1], ds[n]).is_zero():
                raise ExactnessFailure(f"d_{n - 1} d_{n} != 0")
        ranks = [rank(pi)] + [rank(d) for d in ds]
        if ranks[0] != x.dim:
            raise ExactnessFailure("augmentation is not surjective")
        for n in range(max_degree + 1):
            if ranks[n] + ranks[n + 1] != dims[n]:
                raise ExactnessFailure(f"bar complex is not exact at B_{n}")
        exact = True
    return BarComplex(e, ep, x, dims, pi, ds, exact)


def bar_homology(bar):
    """Homology dims of the augmented complex at X, B_0, ..., B_max (all zero if exact)."""
    ranks = [rank(bar.augmentation)] + [rank(d) for d in bar.differentials]
    out = [bar.module.dim - ranks[0]]
    for n in range(len(bar.differentials)):
        out.append(bar.dims[n] - ranks[n] - ranks[n + 1])
    return tuple(out)


def module_hom_space(e, m, y):
    """Hom_E(M, Y) inside Lin(M, Y) (row-major F, index ``y * dim M + x``)."""
    if m.left_alg != e or y.left_alg != e:
        raise AlgebraMismatch("modules must be over the given algebra")
    iy, im = RatMatrix.identity(y.dim), RatMatrix.identity(m.dim)
    entries = {}
    r0 = 0
    for k in range(e.dim):
        c = kron(y.left_act[k], im) - kron(iy, m.left_act[k].transpose())
        for (r, col), v in c.items():
            entries[r0 + r, col] = v
        r0 += c.rows
    return kernel(RatMatrix._raw(r0, y.dim * m.dim, entries))


def hom_dim(e, m, y):
    """dim Hom_E(M, Y) by a direct intertwiner solve."""
    return module_hom_space(e, m, y).dim


def _precompose(d, ydim):
    """Matrix of F -> F d on row-major Lin(B_n, Y) -> Lin(B_{n+1}, Y)."""
    return kron(RatMatrix.identity(ydim), d.transpose())


def ext_dim(e, m, y, n):
    """dim Ext^n_E(M, Y) from Hom_E(bar resolution of M, Y)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    bar = bar_resolution(e, m, n, check=False)
    homs = {}
    for k in (n - 1, n):
        if k >= 0:
            homs[k] = module_hom_space(e, bar.term_as_module(k), y)

    def rank_from(k):
        basis = homs[k].basis_matrix()
        image = compose(_precompose(bar.differentials[k], y.dim), basis)
        return rank(image)

    r_out = rank_from(n)
    r_in = rank_from(n - 1) if n > 0 else 0
    h = homs[n].dim - r_out - r_in
    if h < 0:
        raise ContainmentViolation("negative Ext dimension")
    return h


def ext_via_hochschild(e, m, y, n):
    """dim H^n(E, Hom(M, Y)), which equals dim Ext^n_E(M, Y)."""
    return cohomology_dim(e, hom_bimodule(m, y), n)


def _induced(tq_src, tq_dst, xdim, d):
    """Map X ⊗_E B_{k+1} -> X ⊗_E B_k induced by id ⊗ d_k, in quotient coordinates."""
    full = kron(RatMatrix.identity(xdim), d)
    section = RatMatrix._raw(full.cols, len(tq_src.free),
                             {(c, i): 1 for i, c in enumerate(tq_src.free)})
    return compose(compose(tq_dst.projection, full), section)


def tor_dim(e, xr, m, n):
    """dim Tor_n^E(X, M) for a right E-module X and a left E-module M."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if xr.right_alg != e or m.left_alg != e:
        raise AlgebraMismatch("modules must be over the given algebra")
    bar = bar_resolution(e, m, n, check=False)
    quots = {}
    for k in range(max(n - 1, 0), n + 2):
        quots[k] = tensor_over(xr, bar.term_as_module(k))
    r_in = rank(_induced(quots[n + 1], quots[n], xr.dim, bar.differentials[n]))
    r_out = rank(_induced(quots[n], quots[n - 1], xr.dim, bar.differentials[n - 1])) if n else 0
    h = quots[n].dim - r_in - r_out
    if h < 0:
        raise ContainmentViolation("negative Tor dimension")
    return h


def tensor_dim(xr, m):
    return tensor_over(xr, m).dim
