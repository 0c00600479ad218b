"""Time the compiled and pure-Python elimination kernels on the same inputs.

    python benchmarks/bench_rank.py [--repeat N]

Inputs are Hochschild coboundary matrices: once in the catalog basis (very
sparse) and once after a random change of basis of the algebra and the
bimodule (denser, larger integers).
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import random_invertible  # noqa: E402

from hochwerk import _elim_py, catalog  # noqa: E402
from hochwerk.algebra import change_basis as alg_change_basis  # noqa: E402
from hochwerk.algebra import ground_field  # noqa: E402
from hochwerk.bimodule import Bimodule, change_basis, dual, pullback  # noqa: E402
from hochwerk.hochschild import coboundary_matrix  # noqa: E402
from hochwerk.linalg import _int_rows  # noqa: E402
from hochwerk.triangular import build_triangular, t_dual_bimodule  # noqa: E402

try:
    from hochwerk import _elim_c
except ImportError:
    _elim_c = None


def disguise(alg, x, seed):
    rng = random.Random(seed)
    p = random_invertible(alg.dim, rng, spread=1)
    new = alg_change_basis(alg, p)
    y = pullback(x, new, p, new, p)
    return new, change_basis(y, random_invertible(y.dim, rng, spread=1))


def cases():
    t3 = catalog.upper_triangular(2)
    m2 = catalog.matrix_algebra(2)
    td = build_triangular(m2, catalog.column_module(2), ground_field())
    yield "T3, X=T3, deg 3", t3, Bimodule.regular(t3), 3
    yield "M2, X=M2*, deg 3", m2, dual(Bimodule.regular(m2)), 3
    yield "[[M2,Q^2],[0,Q]], X=T*, deg 3", td.t, t_dual_bimodule(td), 3
    a, x = disguise(t3, Bimodule.regular(t3), 1)
    yield "T3 random basis, deg 2", a, x, 2
    a, x = disguise(m2, Bimodule.regular(m2), 2)
    yield "M2 random basis, deg 2", a, x, 2
    ut3 = catalog.upper_triangular(3)
    a, x = disguise(ut3, Bimodule.regular(ut3), 3)
    yield "UT3 random basis, deg 2", a, x, 2


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _elim_c is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'case':<34} {'shape':>13} {'nnz':>7} {'rank':>6} {'python s':>9} {'cython s':>9} {'speedup':>8}")
    for label, a, x, n in cases():
        m = coboundary_matrix(a, x, n)
        rows = _int_rows(m.col_dicts() if m.rows > m.cols else m.row_dicts())
        width = m.rows if m.rows > m.cols else m.cols
        tp, (rk, _) = best_of(lambda: _elim_py.echelon(rows, width, False), args.repeat)
        tc = cython_note = None
        if _elim_c is not None:
            try:
                tc, (rk_c, _) = best_of(lambda: _elim_c.echelon(rows, width, False), args.repeat)
                assert rk_c == rk
            except OverflowError:
                cython_note = "overflow"
        shape = f"{m.rows}x{m.cols}"
        ctext = cython_note or (f"{tc:.4f}" if tc is not None else "-")
        speed = f"{tp / tc:.1f}x" if tc else "-"
        print(f"{label:<34} {shape:>13} {m.nnz:>7} {rk:>6} {tp:>9.4f} {ctext:>9} {speed:>8}")


if __name__ == "__main__":
    main()
