"""Concrete realization of GF(p^e) together with its subfield tower.

Elements are plain Python ints.  The element with power-basis coordinates
``(c_0, ..., c_{e-1})`` (``c_j`` the coefficient of X^j modulo the defining
polynomial) is encoded as ``sum(c_j * p**j)``, so the prime subfield is
exactly ``range(p)`` and addition is digit-wise.

For fields up to :data:`TABLE_LIMIT` elements the context also carries
numpy exp/log/trace tables; the ``v_*`` methods operate on whole arrays of
elements and are what the enumeration code uses.  Scalar methods fall back to
polynomial arithmetic when the tables are absent.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .cyclotomic import CycInt, check_odd_prime
from .errors import (
    BudgetExceeded,
    DivisionByZero,
    InvalidSubfield,
    NotInSubfield,
    NotPermutation,
    ZeroArgument,
)

#: Largest field order :func:`build_field` accepts.
MAX_FIELD_ORDER = 2**24

#: exp/log tables are only built up to this order.
TABLE_LIMIT = 2**20


# ---------------------------------------------------------------------------
# polynomials over GF(p): coefficient lists, lowest degree first


def _ptrim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> List[int]:
    a = _ptrim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _ptrim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], n: int, f: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = _pmod(base, f, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        n >>= 1
    return result


def _prime_factors(n: int) -> List[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(p)."""
    f = _ptrim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frob_power(k: int) -> List[int]:
        r = x
        for _ in range(k):
            r = _ppowmod(r, p, f, p)
        return r

    if _pmod(frob_power(n), f, p) != _pmod(x, f, p):
        return False
    for r in _prime_factors(n):
        h = frob_power(n // r)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


def irreducible_polynomials(p: int, e: int) -> Iterator[Tuple[int, ...]]:
    """Monic irreducible polynomials of degree e, lexicographic order.

    Each is yielded as the tuple of its ``e`` low coefficients
    ``(c_0, ..., c_{e-1})`` (the leading 1 is implicit), and tuples are
    compared starting with the constant term.
    """
    for low in itertools.product(range(p), repeat=e):
        if is_irreducible(list(low) + [1], p):
            yield low


# ---------------------------------------------------------------------------
# linear algebra over GF(p)


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Solve ``A x = b`` over GF(p) by Gauss-Jordan elimination.

    Raises :class:`NotPermutation` if ``A`` is singular.
    """
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    b = np.asarray(b, dtype=np.int64).reshape(n, -1) % p
    M = np.concatenate([A, b], axis=1)
    for col in range(n):
        pivots = np.nonzero(M[col:, col])[0]
        if pivots.size == 0:
            raise NotPermutation("linear system is singular")
        piv = col + pivots[0]
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        M[col] = (M[col] * pow(int(M[col, col]), -1, p)) % p
        others = M[:, col].copy()
        others[col] = 0
        M = (M - np.outer(others, M[col])) % p
    x = M[:, n:]
    return x[:, 0] if x.shape[1] == 1 else x


def inverse_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    n = np.asarray(A).shape[0]
    return solve_mod_p(A, np.eye(n, dtype=np.int64), p).reshape(n, n)


# ---------------------------------------------------------------------------


class FieldCtx:
    """GF(p^e) with a fixed defining polynomial and primitive element.

    Use :func:`build_field` rather than constructing this directly; it
    caches contexts and picks the deterministic default modulus.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        check_odd_prime(p)
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**e
        if q > MAX_FIELD_ORDER:
            raise BudgetExceeded(f"p^e = {q} exceeds field budget {MAX_FIELD_ORDER}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e:
            raise ValueError(f"modulus needs {e} low coefficients")
        if not is_irreducible(list(modulus) + [1], p):
            raise ValueError(f"x^{e} + {modulus} is reducible over GF({p})")
        self.p, self.e, self.q = p, e, q
        self.modulus = modulus
        self._poly = list(modulus) + [1]
        self._pw = np.array([p**j for j in range(e)], dtype=np.int64)
        self._sub_cache: dict = {}
        self.exp = self.log = self.trace_table = self.digits = None
        self.generator = self._find_generator()
        if q <= TABLE_LIMIT:
            self._build_tables()

    # -- encoding -----------------------------------------------------------

    def coords(self, x: int) -> Tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.e):
            x, r = divmod(x, p)
            out.append(r)
        return tuple(out)

    def from_coords(self, cs: Sequence[int]) -> int:
        return sum((int(c) % self.p) * self.p**j for j, c in enumerate(cs))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={self.modulus})"

    # -- scalar arithmetic --------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self.from_coords(a + b for a, b in zip(self.coords(x), self.coords(y)))

    def neg(self, x: int) -> int:
        return self.from_coords(-a for a in self.coords(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def _poly_mul(self, x: int, y: int) -> int:
        prod = _pmul(list(self.coords(x)), list(self.coords(y)), self.p)
        return self.from_coords(_pmod(prod, self._poly, self.p))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.log is None:
            return self._poly_mul(x, y)
        return int(self.exp[(self.log[x] + self.log[y]) % (self.q - 1)])

    def _poly_pow(self, x: int, n: int) -> int:
        result, base = 1, x
        while n:
            if n & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            n >>= 1
        return result

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if n == 0 else 0
        n %= self.q - 1
        if self.log is None:
            return self._poly_pow(x, n)
        return int(self.exp[(int(self.log[x]) * n) % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("0 has no inverse")
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def scalar(self, c: int) -> int:
        """The prime-field element c mod p."""
        return c % self.p

    # -- construction helpers -----------------------------------------------

    def _find_generator(self) -> int:
        q, factors = self.q, _prime_factors(self.q - 1)
        for cs in itertools.product(range(self.p), repeat=self.e):
            x = self.from_coords(cs)
            if x == 0:
                continue
            if all(self._poly_pow(x, (q - 1) // r) != 1 for r in factors):
                return x
        raise AssertionError("no primitive element found")  # unreachable

    def mul_matrix(self, c: int) -> np.ndarray:
        """Row-vector matrix of x -> c*x: coords(c*x) = coords(x) @ M mod p."""
        return np.array(
            [self.coords(self._poly_mul(self.p**j, c)) for j in range(self.e)],
            dtype=np.int64,
        )

    def linear_map_matrix(self, func) -> np.ndarray:
        """Row-vector matrix of a GF(p)-linear map given as a scalar function."""
        return np.array([self.coords(func(self.p**j)) for j in range(self.e)], dtype=np.int64)

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        # doubling: coords of g^0..g^(B-1) times the matrix of g^B
        block = np.array([self.coords(1)], dtype=np.int64)
        while block.shape[0] < q - 1:
            step = self.mul_matrix(self._poly_pow(self.generator, block.shape[0]))
            block = np.concatenate([block, (block @ step) % p])
        block = block[: q - 1]
        self.exp = block @ self._pw
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        self.log = log
        idx = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(idx // p**j) % p for j in range(self.e)], axis=1)
        basis_tr = np.array([self._scalar_trace(p**j) for j in range(self.e)], dtype=np.int64)
        self.trace_table = (self.digits @ basis_tr) % p

    def _scalar_trace(self, x: int) -> int:
        acc, y = 0, x
        for _ in range(self.e):
            acc = self.add(acc, y)
            y = self._poly_pow(y, self.p)
        return acc

    # -- Frobenius, traces, subfields ---------------------------------------

    def frobenius(self, x: int, i: int) -> int:
        """x^(p^i), with i reduced mod e."""
        return self.pow(x, self.p ** (i % self.e))

    def _check_divisor(self, k: int) -> None:
        if k < 1 or self.e % k:
            raise InvalidSubfield(f"{k} does not divide e={self.e}")

    def in_subfield(self, x: int, k: int) -> bool:
        self._check_divisor(k)
        return self.frobenius(x, k) == x

    def _require_in(self, x: int, k: int) -> None:
        if not self.in_subfield(x, k):
            raise NotInSubfield(f"{x} is not in GF({self.p}^{k})")

    def relative_trace(self, x: int, from_deg: int, to_deg: int) -> int:
        """Tr from GF(p^from_deg) down to GF(p^to_deg)."""
        self._check_divisor(from_deg)
        if from_deg % to_deg:
            raise InvalidSubfield(f"{to_deg} does not divide {from_deg}")
        self._require_in(x, from_deg)
        acc, y = 0, x
        for _ in range(from_deg // to_deg):
            acc = self.add(acc, y)
            y = self.frobenius(y, to_deg)
        return acc

    def trace(self, x: int) -> int:
        """Absolute trace Tr^e_1 as an int in range(p)."""
        if self.trace_table is not None:
            return int(self.trace_table[x])
        return self._scalar_trace(x)

    def subfield_generator(self, k: int) -> int:
        self._check_divisor(k)
        return self.pow(self.generator, (self.q - 1) // (self.p**k - 1))

    def subfield_elements(self, k: int) -> List[int]:
        """0 followed by g_k^0, g_k^1, ... with g_k generating GF(p^k)*."""
        key = ("elements", k)
        if key not in self._sub_cache:
            g = self.subfield_generator(k)
            out, y = [0], 1
            for _ in range(self.p**k - 1):
                out.append(y)
                y = self.mul(y, g)
            self._sub_cache[key] = out
        return list(self._sub_cache[key])

    def subfield_element(self, k: int, index: int) -> int:
        elems = self._sub_cache.get(("elements", k)) or self.subfield_elements(k)
        if not 0 <= index < len(elems):
            raise IndexError(f"index {index} out of range for GF({self.p}^{k})")
        return elems[index]

    def subfield_index(self, k: int, x: int) -> int:
        return self.subfield_elements(k).index(x)

    def quadratic_character(self, x: int, k: int) -> int:
        """eta^(k)(x) = x^((p^k - 1)/2) as +1 or -1."""
        if x == 0:
            raise ZeroArgument("the quadratic character is not applied to 0")
        self._require_in(x, k)
        return 1 if self.pow(x, (self.p**k - 1) // 2) == 1 else -1

    def sqrt_in_subfield(self, x: int, k: int) -> Optional[int]:
        """First y in subfield order with y^2 == x, or None."""
        self._require_in(x, k)
        for y in self.subfield_elements(k):
            if self.mul(y, y) == x:
                return y
        return None

    def canonical_additive_char(self, x: int, k: int) -> CycInt:
        """chi^(k)(x) = zeta_p^(Tr^k_1(x)) for x in GF(p^k)."""
        return CycInt.root(self.p, self.relative_trace(x, k, 1))

    def solve_gamma(self, a: int, alpha: int, b: int) -> int:
        """Unique X with a^(p^alpha) X^(p^(2 alpha)) + a X = -b^(p^alpha).

        The left side is GF(p)-linear in X, so this is a linear system over
        GF(p) in the e coordinates of X.
        """
        if a == 0:
            raise ZeroArgument("a must be nonzero")
        ap = self.frobenius(a, alpha)
        M = self.linear_map_matrix(
            lambda X: self.add(self.mul(ap, self.frobenius(X, 2 * alpha)), self.mul(a, X))
        )
        rhs = self.coords(self.neg(self.frobenius(b, alpha)))
        gamma = self.from_coords(solve_mod_p(M.T, np.array(rhs), self.p))
        return gamma

    # -- vectorized operations (tables required) ----------------------------

    def require_tables(self) -> None:
        if self.log is None:
            raise BudgetExceeded(f"GF({self.p}^{self.e}) is too large for table-driven enumeration")

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def v_add(self, xs, ys) -> np.ndarray:
        return ((self.digits[xs] + self.digits[ys]) % self.p) @ self._pw

    def v_neg(self, xs) -> np.ndarray:
        return ((-self.digits[xs]) % self.p) @ self._pw

    def v_mul(self, xs, ys) -> np.ndarray:
        xs, ys = np.asarray(xs), np.asarray(ys)
        lx, ly = self.log[xs], self.log[ys]
        out = self.exp[(lx + ly) % (self.q - 1)]
        return np.where((lx < 0) | (ly < 0), 0, out)

    def v_pow(self, xs, n: int) -> np.ndarray:
        xs = np.asarray(xs)
        lx = self.log[xs]
        out = self.exp[(lx * (n % (self.q - 1))) % (self.q - 1)]
        if n == 0:
            return np.ones_like(xs)
        return np.where(lx < 0, 0, out)

    def v_frobenius(self, xs, i: int) -> np.ndarray:
        return self.v_pow(xs, self.p ** (i % self.e))

    def v_trace(self, xs) -> np.ndarray:
        return self.trace_table[xs]

    def v_relative_trace(self, xs, from_deg: int, to_deg: int) -> np.ndarray:
        """Vectorized Tr^from_deg_to_deg; membership is the caller's duty."""
        acc = np.zeros_like(np.asarray(xs))
        y = np.asarray(xs)
        for _ in range(from_deg // to_deg):
            acc = self.v_add(acc, y)
            y = self.v_frobenius(y, to_deg)
        return acc

    def v_apply_linear(self, M: np.ndarray, xs) -> np.ndarray:
        """Apply a row-vector GF(p) matrix to every element of xs."""
        return ((self.digits[xs] @ M) % self.p) @ self._pw

    def subfield_tables(self, k: int) -> dict:
        """Per-subfield lookup arrays of length q (entries -1 off the subfield).

        Keys: ``trace`` (Tr^k_1), ``eta`` (quadratic character, 0 at 0),
        ``sqrt`` (first root in subfield order, -1 for non-squares).
        """
        key = ("tables", k)
        if key in self._sub_cache:
            return self._sub_cache[key]
        self.require_tables()
        elems = np.array(self.subfield_elements(k), dtype=np.int64)
        q = self.q
        trace = np.full(q, -1, dtype=np.int64)
        trace[elems] = self.v_relative_trace(elems, k, 1)
        eta = np.full(q, -2, dtype=np.int64)
        eta[elems[0]] = 0
        # element at position j+1 is g_k^j: a square iff j is even
        eta[elems[1:]] = np.where(np.arange(len(elems) - 1) % 2 == 0, 1, -1)
        sqrt = np.full(q, -1, dtype=np.int64)
        squares = self.v_mul(elems, elems)
        for y, s in zip(elems[::-1], squares[::-1]):
            sqrt[s] = y  # reversed so the first root in order wins
        tables = {"elements": elems, "trace": trace, "eta": eta, "sqrt": sqrt}
        self._sub_cache[key] = tables
        return tables


@lru_cache(maxsize=None)
def _build_field_cached(p: int, e: int, modulus: Optional[Tuple[int, ...]]) -> FieldCtx:
    check_odd_prime(p)
    if p**e > MAX_FIELD_ORDER:
        raise BudgetExceeded(f"p^e = {p**e} exceeds field budget {MAX_FIELD_ORDER}")
    if modulus is None:
        modulus = next(irreducible_polynomials(p, e))
    return FieldCtx(p, e, modulus)


def build_field(p: int, e: int, modulus: Optional[Sequence[int]] = None) -> FieldCtx:
    """Deterministic GF(p^e).

    Without ``modulus`` the lexicographically smallest monic irreducible
    polynomial is used (compared from the constant term up); the primitive
    element is likewise the smallest in that coordinate order.
    """
    return _build_field_cached(p, e, None if modulus is None else tuple(modulus))


def alternative_modulus(p: int, e: int, skip: int = 1) -> Tuple[int, ...]:
    """The irreducible polynomial ``skip`` positions after the default one."""
    return next(itertools.islice(irreducible_polynomials(p, e), skip, None))
