"""Prime cache, primitive roots, discrete logs, and power-residue classes."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from math import gcd

from . import kernels
from .errors import (
    CacheFormatError,
    CacheLimitError,
    CongruenceClassError,
    DomainError,
    EqualPrimeError,
    NonUnitError,
    NotPrimeError,
    OddPrimeRequiredError,
    WrongLengthError,
)
from .ratfact import as_factored, is_prime


class PrimeCache:
    """Ascending list of all primes up to a limit, optionally file-backed."""

    def __init__(self, limit: int, primes: list[int] | None = None):
        self.limit = int(limit)
        self.primes = kernels.sieve(self.limit) if primes is None else primes

    @classmethod
    def build(cls, limit: int) -> "PrimeCache":
        return cls(limit)

    @classmethod
    def load(cls, path) -> "PrimeCache":
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().split()
            if len(header) != 3 or header[0] != "PRIMECACHE" or header[1] != "v1":
                raise CacheFormatError(f"bad prime cache header in {path}", path=str(path))
            try:
                limit = int(header[2])
                primes = [int(line) for line in fh if line.strip()]
            except ValueError as exc:
                raise CacheFormatError(f"bad prime cache body in {path}", path=str(path)) from exc
        last = 0
        for p in primes:
            if p <= last or p > limit:
                raise CacheFormatError(
                    f"prime cache {path} is not an ascending list below its limit",
                    path=str(path),
                )
            last = p
        return cls(limit, primes)

    def save(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(f"PRIMECACHE v1 {self.limit}\n")
            fh.write("\n".join(map(str, self.primes)))
            if self.primes:
                fh.write("\n")

    def up_to(self, x: int) -> list[int]:
        """All cached primes <= x."""
        if x > self.limit:
            raise CacheLimitError(
                f"prime cache covers {self.limit}, need {x}", limit=self.limit, needed=x
            )
        return self.primes[: bisect_right(self.primes, x)]

    def between(self, lo: int, hi: int) -> list[int]:
        """All cached primes in [lo, hi]."""
        if hi > self.limit:
            raise CacheLimitError(
                f"prime cache covers {self.limit}, need {hi}", limit=self.limit, needed=hi
            )
        return self.primes[bisect_left(self.primes, lo) : bisect_right(self.primes, hi)]

    def pi(self, x: int) -> int:
        """Prime counting function from the cache."""
        if x > self.limit:
            raise CacheLimitError(
                f"prime cache covers {self.limit}, need {x}", limit=self.limit, needed=x
            )
        return bisect_right(self.primes, x)

    def __len__(self) -> int:
        return len(self.primes)


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    return kernels.primitive_root(p)


def discrete_log(g: int, h: int, p: int) -> int:
    """Exponent x in [0, p-2] with g^x ≡ h (mod p)."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if h % p == 0:
        raise NonUnitError(f"{h} is 0 mod {p}", p=p)
    if g % p == 0:
        raise NonUnitError(f"base {g} is 0 mod {p}", p=p)
    try:
        return kernels.discrete_log(g, h, p)
    except ValueError as exc:
        raise DomainError(f"{h} is not a power of {g} mod {p}", p=p) from exc


def ell_power_class(c, ell: int, p: int) -> tuple[int, bool]:
    """z_c = c^((p-1)/ell) mod p and whether c is an ell-th power residue."""
    c = as_factored(c)
    if not is_prime(ell):
        raise NotPrimeError(f"{ell} is not prime")
    if ell == 2:
        raise OddPrimeRequiredError("ell must be an odd prime")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == ell:
        raise EqualPrimeError(f"p = ell = {p} is excluded", p=p)
    if p % ell != 1:
        raise CongruenceClassError(f"{p} is not 1 mod {ell}", p=p, ell=ell)
    r = c.reduce_mod(p)  # raises NonUnitError when ord_p(c) != 0
    z = pow(r, (p - 1) // ell, p)
    return z, z == 1


def solve_power_congruences(a, b, m: int):
    """Smallest k in [0, m-1] with k*a_i ≡ b_i (mod m) for all i, else None."""
    if len(a) != len(b):
        raise WrongLengthError(f"got {len(a)} coefficients and {len(b)} targets")
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    r, mod = 0, 1
    for ai, bi in zip(a, b):
        ai %= m
        bi %= m
        g = gcd(ai, m)
        if bi % g:
            return None
        mi = m // g
        ri = (bi // g) * pow(ai // g, -1, mi) % mi if mi > 1 else 0
        gg = gcd(mod, mi)
        if (ri - r) % gg:
            return None
        step = mi // gg
        t = (ri - r) // gg * pow(mod // gg, -1, step) % step if step > 1 else 0
        lcm = mod // gg * mi
        r = (r + mod * t) % lcm
        mod = lcm
    return r
