"""Exact arithmetic on nonzero rationals kept in fully factored form.

A value is a sign together with a finite prime -> nonzero-exponent table, so
prime valuations, numerators/denominators, and unit residues mod p are all
read off directly.  0 is unrepresentable on purpose.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import (
    CompositeCofactorError,
    NonUnitError,
    NotPrimeError,
    ZeroValueError,
)

# Deterministic Miller-Rabin witness set, exact for all n < 3.3e24 (covers the
# 64-bit inputs this library accepts).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_TRIAL_BOUND = 10**6


def is_prime(n: int) -> bool:
    """Deterministic primality test for the library's input range."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_abs(n: int, bound: int) -> dict[int, int]:
    # Trial division up to `bound`; a surviving cofactor must itself be prime
    # or the input is rejected (no silent heavy factoring).
    exps: dict[int, int] = {}
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
    i = 5
    top = min(bound, isqrt(n))
    while i <= top:
        for q in (i, i + 2):
            if n % q == 0:
                e = 0
                while n % q == 0:
                    n //= q
                    e += 1
                exps[q] = e
        i += 6
        top = min(bound, isqrt(n))
    if n > 1:
        # Cofactor exceeds every trial divisor; it is prime unless n > bound^2.
        if not is_prime(n):
            raise CompositeCofactorError(
                f"cofactor {n} is composite and exceeds the trial bound {bound}",
                cofactor=n,
                bound=bound,
            )
        exps[n] = exps.get(n, 0) + 1
    return exps


class FactoredRational:
    """sign * prod p^e with prime keys and nonzero integer exponents."""

    __slots__ = ("sign", "_exp")

    def __init__(self, sign: int = 1, exponents: dict[int, int] | None = None):
        if sign not in (1, -1):
            raise ZeroValueError(f"sign must be +1 or -1, got {sign}")
        exp = dict(exponents or {})
        for q, e in exp.items():
            if e == 0:
                raise ZeroValueError(f"exponent of {q} must be nonzero")
            if not is_prime(q):
                raise NotPrimeError(f"{q} is not prime")
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "_exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("FactoredRational is immutable")

    @classmethod
    def _raw(cls, sign: int, exp: dict[int, int]) -> "FactoredRational":
        # Internal constructor for already-validated prime keys.
        self = object.__new__(cls)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "_exp", exp)
        return self

    @classmethod
    def factor(
        cls, numerator: int, denominator: int = 1, *, bound: int = DEFAULT_TRIAL_BOUND
    ) -> "FactoredRational":
        if numerator == 0 or denominator == 0:
            raise ZeroValueError("0 has no factored form")
        sign = -1 if (numerator < 0) != (denominator < 0) else 1
        a, b = abs(numerator), abs(denominator)
        g = gcd(a, b)
        a //= g
        b //= g
        exp = _factor_abs(a, bound)
        for q, e in _factor_abs(b, bound).items():
            exp[q] = -e  # a and b are coprime, so no key collides
        return cls._raw(sign, exp)

    # -- queries ----------------------------------------------------------

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exp)

    def support(self) -> list[int]:
        return sorted(self._exp)

    def ord(self, p: int) -> int:
        """Exponent of p in the factorization (0 if absent)."""
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        return self._exp.get(p, 0)

    @property
    def num(self) -> int:
        n = 1
        for q, e in self._exp.items():
            if e > 0:
                n *= q**e
        return n

    @property
    def den(self) -> int:
        d = 1
        for q, e in self._exp.items():
            if e < 0:
                d *= q**-e
        return d

    def value(self) -> Fraction:
        return Fraction(self.sign * self.num, self.den)

    def is_unit(self) -> bool:
        """True when the value is +1 or -1."""
        return not self._exp

    def reduce_mod(self, p: int) -> int:
        """Unit residue of the value mod p (denominator inverted mod p)."""
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        if self._exp.get(p, 0) != 0:
            raise NonUnitError(
                f"not a p-adic unit: ord_{p} = {self._exp[p]}", p=p, ord=self._exp[p]
            )
        r = self.sign % p
        for q, e in self._exp.items():
            r = r * pow(q, e, p) % p
        return r

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if not isinstance(other, FactoredRational):
            return NotImplemented
        exp = dict(self._exp)
        for q, e in other._exp.items():
            s = exp.get(q, 0) + e
            if s:
                exp[q] = s
            else:
                exp.pop(q, None)
        return FactoredRational._raw(self.sign * other.sign, exp)

    def __pow__(self, k: int) -> "FactoredRational":
        if k == 0:
            return FactoredRational._raw(1, {})
        sign = self.sign if k % 2 else 1
        return FactoredRational._raw(sign, {q: e * k for q, e in self._exp.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FactoredRational)
            and self.sign == other.sign
            and self._exp == other._exp
        )

    def __hash__(self):
        return hash((self.sign, frozenset(self._exp.items())))

    # -- presentation ------------------------------------------------------

    def __str__(self) -> str:
        if not self._exp:
            return "1" if self.sign > 0 else "-1"
        parts = [f"{q}^{e}" if e != 1 else str(q) for q, e in sorted(self._exp.items())]
        body = "*".join(parts)
        return body if self.sign > 0 else "-" + body

    def __repr__(self) -> str:
        return f"FactoredRational({self.sign}, {dict(sorted(self._exp.items()))})"

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "exponents": {str(q): e for q, e in sorted(self._exp.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FactoredRational":
        return cls(obj["sign"], {int(q): e for q, e in obj["exponents"].items()})


ONE = FactoredRational._raw(1, {})


def as_factored(x, *, bound: int = DEFAULT_TRIAL_BOUND) -> FactoredRational:
    """Coerce an int, Fraction, 'a/b' string, or FactoredRational."""
    if isinstance(x, FactoredRational):
        return x
    if isinstance(x, int):
        return FactoredRational.factor(x, bound=bound)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return FactoredRational.factor(x.numerator, x.denominator, bound=bound)
    raise TypeError(f"cannot interpret {x!r} as a factored rational")
