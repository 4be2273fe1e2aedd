"""Exact arithmetic in the ring of cyclotomic integers Z[zeta_p].

An element is stored by its coordinates in the basis
``1, zeta, ..., zeta^(p-2)``; the single relation
``zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))`` makes that representation
canonical, so equality is a plain tuple comparison.

Every character sum evaluated by this package lands in this ring, which is
what lets brute-force and closed-form values be compared exactly.
"""

from __future__ import annotations

import cmath
from typing import Iterable, Optional, Sequence, Union

from .errors import CycOverflow, InvalidPrime, MixedPrime

#: Largest prime accepted by default.  Raise it if you really need to.
MAX_PRIME = 13

#: Coefficient magnitudes must stay strictly below this bound.
OVERFLOW_BOUND = 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p: int, cap: Optional[int] = None) -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise InvalidPrime(f"p must be an odd prime, got {p!r}")
    cap = MAX_PRIME if cap is None else cap
    if p > cap:
        raise InvalidPrime(f"p={p} exceeds the configured cap {cap}")


def _checked(coeffs: Iterable[int]) -> tuple:
    out = tuple(int(c) for c in coeffs)
    for c in out:
        if abs(c) >= OVERFLOW_BOUND:
            raise CycOverflow(f"coefficient {c} exceeds overflow bound")
    return out


def _canonical(p: int, redundant: Sequence[int]) -> tuple:
    """Reduce a length-p vector over zeta^0..zeta^(p-1) to canonical form."""
    top = redundant[p - 1]
    return _checked(redundant[k] - top for k in range(p - 1))


class CycInt:
    """An element of Z[zeta_p] with zeta_p = exp(2 pi i / p).

    Supports ``+ - *`` with other ``CycInt`` of the same ``p`` and with
    Python ints.  Instances are immutable and hashable.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        check_odd_prime(p)
        if len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _checked(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def root(cls, p: int, k: int) -> "CycInt":
        """zeta_p^k."""
        check_odd_prime(p)
        vec = [0] * p
        vec[k % p] = 1
        return cls(p, _canonical(p, vec))

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> "CycInt":
        """Sum of ``counts[k] * zeta^k`` for k = 0..p-1."""
        if len(counts) != p:
            raise ValueError(f"expected {p} counts, got {len(counts)}")
        return cls(p, _canonical(p, [int(c) for c in counts]))

    # -- helpers ------------------------------------------------------------

    def _redundant(self) -> list:
        return list(self.coeffs) + [0]

    def _coerce(self, other) -> Optional["CycInt"]:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise MixedPrime(f"cannot combine p={self.p} with p={other.p}")
            return other
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [other * a for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        # multiply modulo x^p - 1, then apply the cyclotomic relation
        vec = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        vec[(i + j) % p] += a * b
        return CycInt(p, _canonical(p, vec))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.integer(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CycInt":
        """Complex conjugation, i.e. the automorphism zeta -> zeta^-1."""
        p = self.p
        src = self._redundant()
        vec = [src[(-k) % p] for k in range(p)]
        return CycInt(p, _canonical(p, vec))

    # -- inspection ---------------------------------------------------------

    def as_integer(self) -> Optional[int]:
        """The rational integer n with self == n, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self) -> complex:
        # double precision; display and sanity checks only
        return sum(
            (c * cmath.exp(2j * cmath.pi * k / self.p) for k, c in enumerate(self.coeffs)),
            0j,
        )

    def __eq__(self, other):
        if isinstance(other, int):
            return self.as_integer() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        n = self.as_integer()
        return hash(n) if n is not None else hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self):
        n = self.as_integer()
        if n is not None:
            return str(n)
        out = ""
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = str(abs(c)) if not mono else ("" if abs(c) == 1 else f"{abs(c)}*")
            term = mag + mono
            if not out:
                out = ("-" if c < 0 else "") + term
            else:
                out += (" - " if c < 0 else " + ") + term
        return out


Scalar = Union[int, CycInt]


def legendre(x: int, p: int) -> int:
    """Legendre symbol (x | p) via Euler's criterion."""
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def gauss_period(p: int) -> CycInt:
    """The quadratic Gauss period sum_{x in F_p^*} (x|p) zeta^x.

    It equals sqrt(p) for p = 1 (mod 4) and i*sqrt(p) for p = 3 (mod 4), and
    is the exact stand-in for every odd power of sqrt(p) used elsewhere.
    """
    check_odd_prime(p)
    counts = [0] * p
    for x in range(1, p):
        counts[x] = legendre(x, p)
    return CycInt.from_exponent_counts(p, counts)


def i_power_times_sqrt(p: int, ipow: int, k: int) -> CycInt:
    """Exact value of ``sqrt(-1)**ipow * sqrt(p**k)`` inside Z[zeta_p].

    Raises ValueError when the product does not lie in Z[zeta_p] (for instance
    an odd power of i times a rational integer).
    """
    check_odd_prime(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    ipow %= 4
    if k % 2 == 0:
        if ipow % 2:
            raise ValueError("i^odd * p^(k/2) is not in Z[zeta_p]")
        return CycInt.integer(p, (-1) ** (ipow // 2) * p ** (k // 2))
    # odd k: sqrt(p^k) = p^((k-1)/2) * sqrt(p); gauss_period = i^s sqrt(p)
    s = 0 if p % 4 == 1 else 1
    rest = (ipow - s) % 4
    if rest % 2:
        raise ValueError("requested surd is not in Z[zeta_p]")
    sign = (-1) ** (rest // 2)
    return gauss_period(p) * (sign * p ** ((k - 1) // 2))
