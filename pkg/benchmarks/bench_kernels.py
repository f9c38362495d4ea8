"""Timing comparison of the compiled kernel backend against the pure mirror.

Run as: python3 benchmarks/bench_kernels.py
"""

import time

from localpow.kernels import pure

try:
    from localpow.kernels import _native as native
except ImportError:
    native = None


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    primes_1m = pure.sieve(10**6)
    split_3 = [p for p in primes_1m if p % 3 == 1]
    primes_200k = [p for p in primes_1m if p <= 2 * 10**5]
    dlog_ps = primes_1m[-200:]

    tasks = [
        ("sieve(10^6)", lambda m: m.sieve(10**6), 3),
        ("count_primes(10^7)", lambda m: m.count_primes(10**7), 1),
        (
            "factorize 2000 ints near 10^12",
            lambda m: [m.factorize(n) for n in range(10**12, 10**12 + 2000)],
            1,
        ),
        (
            "discrete_log at 200 primes near 10^6",
            lambda m: [m.discrete_log(m.primitive_root(p), 1234567 % p, p) for p in dlog_ps],
            1,
        ),
        (
            "z_b_rows, tuple (2,3,5,7), p = 1 mod 3 up to 10^6",
            lambda m: m.z_b_rows(split_3, 3, [2, 3, 5, 7], [1, 1, 1, 1]),
            1,
        ),
        (
            "omega_members, witnesses (2,3,5), primes to 2*10^5",
            lambda m: m.omega_members(primes_200k, [2, 3, 5], [5, 7, 11], [1, 1, 1]),
            1,
        ),
    ]

    header = f"{'task':<50} {'pure':>10} {'native':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, fn, repeat in tasks:
        t_pure = best_of(lambda: fn(pure), repeat)
        if native is None:
            print(f"{label:<50} {t_pure:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        t_native = best_of(lambda: fn(native), repeat)
        print(
            f"{label:<50} {t_pure:>9.3f}s {t_native:>9.3f}s {t_pure / t_native:>7.1f}x"
        )


if __name__ == "__main__":
    main()
