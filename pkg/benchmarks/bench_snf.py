"""Time the Smith diagonalization backends on real boundary matrices.

    python benchmarks/bench_snf.py [--repeat N]

The numba kernel and the numpy fallback run the same code; "exact" is the
pure Python integer version used after an int64 overflow.
"""
import argparse
import time

from proofspace import _kernels
from proofspace.complex import standard_space
from proofspace.homology import boundary_matrix
from proofspace.monad import subset_complex
from proofspace.proofs import proofs_space
from proofspace.semantics import bool_with


def cases():
    yield "sphere:5 d3", boundary_matrix(standard_space("sphere", 5), 3)
    yield "S(sphere:2) d3", boundary_matrix(subset_complex(standard_space("sphere", 2)), 3)
    yield "S[Bool^&3] d2", boundary_matrix(subset_complex(proofs_space(bool_with(3)).complex), 2)
    yield "delta:8 d4", boundary_matrix(standard_space("delta", 8), 4)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy", "exact"]
    if _kernels.diagonalize_int64_nb is not None:
        _kernels.diagonal_of([[2, 4], [6, 8]], "numba")  # compile outside the timing
        backends.insert(0, "numba")
    print(f"{'matrix':<18}{'shape':>12}" + "".join(f"{b:>12}" for b in backends))
    for name, M in cases():
        row, ref = [], None
        for b in backends:
            def run(b=b):
                dense = M.to_dense() if b == "exact" else M.to_numpy()
                return _kernels.invariant_factors(_kernels.diagonal_of(dense, b))
            t, diag = best_of(run, args.repeat)
            ref = diag if ref is None else ref
            assert diag == ref, f"{b} disagrees on {name}"
            row.append(f"{t * 1e3:>10.2f}ms")
        print(f"{name:<18}{str(M.shape):>12}" + "".join(row))


if __name__ == "__main__":
    main()
