"""Time the compiled and pure-Python Weyl kernels on the same workloads.

    python benchmarks/bench_kernels.py --type E8 --length 7 --repeat 3
"""
import argparse
import time

from affpieces import build_affine_cartan, kernels


def ball(mod, spec, L):
    n, A = spec.size, spec.flat
    ident = tuple(int(r == c) for r in range(n) for c in range(n))
    layer, total = [ident], 1
    for _ in range(L):
        layer, _parents = mod.expand_layer(layer, A, n)
        total += len(layer)
    return layer, total


def strip_all(mod, spec, flats):
    n, A = spec.size, spec.flat
    return sum(len(mod.strip(f, A, n)) for f in flats)


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--type", default="E8")
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    spec = build_affine_cartan(args.type[0], int(args.type[1:]))

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    rows = []
    results = {}
    for name, mod in backends.items():
        t_ball, (last, total) = timed(lambda: ball(mod, spec, args.length), args.repeat)
        t_strip, lengths = timed(lambda: strip_all(mod, spec, last), args.repeat)
        results[name] = (total, lengths)
        rows.append((name, total, t_ball, t_strip))
    if len(set(results.values())) != 1:
        raise SystemExit(f"backends disagree: {results}")

    print(f"{spec.label}, ball radius {args.length}, {rows[0][1]} elements, best of {args.repeat}")
    print(f"{'backend':<8} {'ball (s)':>10} {'strip (s)':>10}")
    for name, _, tb, ts in rows:
        print(f"{name:<8} {tb:>10.4f} {ts:>10.4f}")
    if len(rows) == 2:
        (_, _, pb, ps), (_, _, cb, cs) = rows
        print(f"speedup  {pb / cb:>9.1f}x {ps / cs:>9.1f}x")


if __name__ == "__main__":
    main()
