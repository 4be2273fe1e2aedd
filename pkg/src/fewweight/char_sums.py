"""Character sums over the tower GF(p) <= GF(p^t) <= GF(p^e).

Every sum comes as a brute-force evaluator (a literal summation, values
tallied by exponent of zeta_p) and, where a closed form exists, a closed-form
evaluator.  Both return :class:`~fewweight.cyclotomic.CycInt`, so agreement
is checked by exact equality.

Naming follows the usual conventions: ``chi^(k)`` is the canonical additive
character of GF(p^k), ``eta^(k)`` its quadratic character and ``G(eta^(k))``
the quadratic Gauss sum.  With ``P = p^alpha + 1``::

    S(a)      = sum_x chi^(e)(a x^P)
    S(a, b)   = sum_x chi^(e)(a x^P + b x)
    T(a, b)   = sum_{x != 0} eta^(t)(x) chi^(t)(b x + a/x)      (Salie)
    K(a, b)   = sum_{x != 0} chi^(t)(b x + a/x)                 (Kloosterman)
    M(a)      = sum_{y != 0} chi^(t)(-a y) S(y)
    L_b(a, u) = sum_{z != 0} chi^(1)(-u z) sum_{y != 0} chi^(t)(-a y) S(y, z b)

where y runs over GF(p^t)^* and z over GF(p)^*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .cyclotomic import CycInt, i_power_times_sqrt
from .errors import (
    InvalidParameters,
    InvalidSubfield,
    UnsupportedRegime,
    ZeroArgument,
    ZeroLeadingCoefficient,
)
from .field_tower import FieldCtx, inverse_mod_p

Rational = Union[int, Fraction]


def _shrink(x: Fraction) -> Rational:
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class SumParams:
    """The exponents (p, e, alpha, t).

    With ``strict=True`` (the default) the construction's hypotheses are
    enforced: e/d odd, t | d and 1 < t < d where d = gcd(e, alpha).
    ``strict=False`` only requires t | e; closed forms then remain available
    as long as e/d is odd and t | d (see :attr:`closed_form_ok`).
    """

    p: int
    e: int
    alpha: int
    t: int
    strict: bool = True
    d: int = field(init=False)

    def __post_init__(self):
        if self.e < 1 or self.alpha < 1 or self.t < 1:
            raise InvalidParameters("e, alpha and t must be positive", "positivity")
        object.__setattr__(self, "d", math.gcd(self.e, self.alpha))
        if self.e % self.t:
            raise InvalidParameters(f"t={self.t} does not divide e={self.e}", "t|e")
        if self.strict:
            violated = self.violations()
            if violated:
                name, msg = violated[0]
                raise InvalidParameters(msg, name)

    def violations(self):
        """Hypotheses that fail, as (constraint, message) pairs."""
        out = []
        e, d, t = self.e, self.d, self.t
        if (e // d) % 2 == 0:
            out.append(("e/d odd", f"e/d = {e}/{d} = {e // d} is even"))
        if d % t:
            out.append(("t|d", f"t={t} does not divide d={d}"))
        if not 1 < t < d:
            out.append(("1<t<d", f"need 1 < t < d, got t={t}, d={d}"))
        return out

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def regime(self) -> str:
        """``"odd"`` or ``"even"``: the parity of e/t."""
        return "odd" if (self.e // self.t) % 2 else "even"

    @property
    def hypotheses_hold(self) -> bool:
        return not self.violations()

    @property
    def closed_form_ok(self) -> bool:
        return (self.e // self.d) % 2 == 1 and self.d % self.t == 0

    @property
    def P(self) -> int:
        return self.p**self.alpha + 1


def _require_closed(params: SumParams) -> None:
    if not params.closed_form_ok:
        raise InvalidParameters(
            "closed forms need e/d odd and t | d", "e/d odd" if (params.e // params.d) % 2 == 0 else "t|d"
        )


def _histogram(p: int, exps: np.ndarray, weights: Optional[np.ndarray] = None) -> CycInt:
    counts = np.zeros(p, dtype=np.int64)
    exps = np.asarray(exps, dtype=np.int64).ravel() % p
    if weights is None:
        counts += np.bincount(exps, minlength=p)
    else:
        np.add.at(counts, exps, np.asarray(weights, dtype=np.int64).ravel())
    return CycInt.from_exponent_counts(p, counts.tolist())


def _check_sub(ctx: FieldCtx, k: int, *xs: int) -> None:
    for x in xs:
        ctx._require_in(x, k)


# ---------------------------------------------------------------------------
# Gauss sums and the constants


def gauss_sum_bruteforce(ctx: FieldCtx, k: int) -> CycInt:
    tab = ctx.subfield_tables(k)
    nz = tab["elements"][1:]
    return _histogram(ctx.p, tab["trace"][nz], tab["eta"][nz])


def gauss_sum_closed(ctx: FieldCtx, k: int) -> CycInt:
    """(-1)^(k-1) * sqrt(-1)^((p-1)^2 k / 4) * sqrt(p^k), exactly."""
    if k < 1 or ctx.e % k:
        raise InvalidSubfield(f"{k} does not divide e={ctx.e}")
    p = ctx.p
    return i_power_times_sqrt(p, (p - 1) ** 2 * k // 4, k) * (-1) ** (k - 1)


def quad_char_sum_bruteforce(ctx: FieldCtx, k: int, a2: int, a1: int, a0: int) -> CycInt:
    _check_sub(ctx, k, a2, a1, a0)
    tab = ctx.subfield_tables(k)
    xs = tab["elements"]
    vals = ctx.v_add(ctx.v_add(ctx.v_mul(a2, ctx.v_mul(xs, xs)), ctx.v_mul(a1, xs)), np.full_like(xs, a0))
    return _histogram(ctx.p, tab["trace"][vals])


def quad_char_sum_closed(ctx: FieldCtx, k: int, a2: int, a1: int, a0: int) -> CycInt:
    """chi(a0 - a1^2 / (4 a2)) * eta(a2) * G(eta^(k))."""
    if a2 == 0:
        raise ZeroLeadingCoefficient("a2 must be nonzero")
    _check_sub(ctx, k, a2, a1, a0)
    four_a2 = ctx.mul(ctx.scalar(4), a2)
    c = ctx.sub(a0, ctx.div(ctx.mul(a1, a1), four_a2))
    return ctx.canonical_additive_char(c, k) * gauss_sum_closed(ctx, k) * ctx.quadratic_character(a2, k)


@dataclass(frozen=True)
class Constants:
    """kappa, epsilon, kappa1, kappa2 for given (p, e, t).

    ``kappa`` is kappa2 * G(eta^(t)) / p^(t+1) when e/t is odd and
    kappa2 / p^(t+1) when e/t is even (the Gauss factor is absent there).
    It is an ``int`` when integral and a ``Fraction`` otherwise.
    """

    kappa: Rational
    epsilon: int
    kappa1: CycInt
    kappa2: CycInt
    gauss_t: CycInt


def _kappa_closed_odd(p: int, e: int, t: int) -> Rational:
    expo = Fraction(e - t - 2, 2)
    mag = Fraction(p) ** int(expo) if expo.denominator == 1 else None
    if mag is None:
        raise ValueError("e - t must be even in the odd regime")
    if p % 4 == 1:
        return _shrink((-1) ** (e + t) * mag)
    return _shrink((-1) ** t * (-1) ** ((e + t) // 2) * mag)


def constants(ctx: FieldCtx, params: SumParams) -> Constants:
    p, e, t = params.p, params.e, params.t
    sign = (-1) ** (e - 1)
    if p % 4 == 1:
        kappa1 = i_power_times_sqrt(p, 0, e) * sign
        kappa2 = kappa1
        epsilon = 1
    else:
        kappa1 = i_power_times_sqrt(p, e, e) * sign
        kappa2 = i_power_times_sqrt(p, 3 * e, e) * sign
        epsilon = (-1) ** e
    assert kappa2 == kappa1 * epsilon and kappa1 == kappa2 * epsilon
    g_t = gauss_sum_closed(ctx, t)
    denom = p ** (t + 1)
    if params.regime == "odd":
        prod = (kappa2 * g_t).as_integer()
        assert prod is not None, "kappa2 * G(eta^(t)) must be rational"
        kappa = _shrink(Fraction(prod, denom))
        assert kappa == _kappa_closed_odd(p, e, t)
    else:
        k2 = kappa2.as_integer()
        assert k2 is not None, "kappa2 is rational for even e"
        kappa = _shrink(Fraction(k2, denom))
    return Constants(kappa=kappa, epsilon=epsilon, kappa1=kappa1, kappa2=kappa2, gauss_t=g_t)


# ---------------------------------------------------------------------------
# Weil sums of a x^P (+ b x)


@lru_cache(maxsize=32)
def _powers_P(ctx: FieldCtx, P: int) -> np.ndarray:
    return ctx.v_pow(ctx.elements(), P)


def weil_sum_S_bruteforce(ctx: FieldCtx, params: SumParams, a: int) -> CycInt:
    xP = _powers_P(ctx, params.P)
    return _histogram(ctx.p, ctx.v_trace(ctx.v_mul(a, xP)))


def weil_sum_S_closed(ctx: FieldCtx, params: SumParams, a: int) -> CycInt:
    """kappa1 * eta^(e)(a).  For a = 0 the sum is simply q (brute force)."""
    if a == 0:
        raise ZeroArgument("S(0) = q is handled by the brute-force evaluator")
    _require_closed(params)
    return constants(ctx, params).kappa1 * ctx.quadratic_character(a, ctx.e)


def weil_sum_S2_bruteforce(ctx: FieldCtx, params: SumParams, a: int, b: int) -> CycInt:
    xs = ctx.elements()
    xP = _powers_P(ctx, params.P)
    vals = ctx.v_add(ctx.v_mul(a, xP), ctx.v_mul(b, xs))
    return _histogram(ctx.p, ctx.v_trace(vals))


def weil_sum_S2_closed(ctx: FieldCtx, params: SumParams, a: int, b: int) -> CycInt:
    """kappa2 * eta^(e)(-a) * conj(chi^(e)(a gamma^P)), gamma from the linearized equation."""
    if a == 0 or b == 0:
        raise ZeroArgument("a and b must be nonzero")
    _require_closed(params)
    gamma = ctx.solve_gamma(a, params.alpha, b)
    chi = CycInt.root(ctx.p, ctx.trace(ctx.mul(a, ctx.pow(gamma, params.P))))
    return constants(ctx, params).kappa2 * chi.conj() * ctx.quadratic_character(ctx.neg(a), ctx.e)


# ---------------------------------------------------------------------------
# Salie and Kloosterman sums over GF(p^t)


def _kloosterman_exps(ctx: FieldCtx, t: int, a: int, b: int):
    tab = ctx.subfield_tables(t)
    xs = tab["elements"][1:]
    vals = ctx.v_add(ctx.v_mul(b, xs), ctx.v_mul(a, ctx.v_pow(xs, -1)))
    return tab, xs, tab["trace"][vals]


def salie_sum_bruteforce(ctx: FieldCtx, t: int, a: int, b: int) -> CycInt:
    if a == 0 or b == 0:
        raise ZeroArgument("Salie sums take nonzero arguments")
    _check_sub(ctx, t, a, b)
    tab, xs, exps = _kloosterman_exps(ctx, t, a, b)
    return _histogram(ctx.p, exps, tab["eta"][xs])


def salie_sum_closed(ctx: FieldCtx, t: int, a: int, b: int, root_sign: int = 1) -> CycInt:
    """0 unless eta(a) == eta(b); else eta(a) G (chi(c) + chi(-c)), c = 2 sqrt(ab).

    ``root_sign`` picks which square root of ab is used; the value does not
    depend on it.
    """
    if a == 0 or b == 0:
        raise ZeroArgument("Salie sums take nonzero arguments")
    _check_sub(ctx, t, a, b)
    eta_a = ctx.quadratic_character(a, t)
    if eta_a != ctx.quadratic_character(b, t):
        return CycInt.zero(ctx.p)
    root = ctx.sqrt_in_subfield(ctx.mul(a, b), t)
    if root_sign < 0:
        root = ctx.neg(root)
    c = ctx.mul(ctx.scalar(2), root)
    two_re = ctx.canonical_additive_char(c, t) + ctx.canonical_additive_char(ctx.neg(c), t)
    return two_re * gauss_sum_closed(ctx, t) * eta_a


def kloosterman_bruteforce(ctx: FieldCtx, t: int, a: int, b: int) -> CycInt:
    """Ordinary Kloosterman sum; no closed form is offered."""
    _check_sub(ctx, t, a, b)
    _, _, exps = _kloosterman_exps(ctx, t, a, b)
    return _histogram(ctx.p, exps)


# ---------------------------------------------------------------------------
# gamma and Delta


@dataclass(frozen=True)
class GammaData:
    gamma: int
    delta: int


def gamma_data(ctx: FieldCtx, params: SumParams, b: int) -> GammaData:
    """gamma solving X^(p^(2 alpha)) + X = -b^(p^alpha) and Delta = Tr^e_t(gamma^P)."""
    if b == 0:
        raise ZeroArgument("b must be nonzero")
    gamma = ctx.solve_gamma(1, params.alpha, b)
    delta = ctx.relative_trace(ctx.pow(gamma, params.P), ctx.e, params.t)
    return GammaData(gamma, delta)


@lru_cache(maxsize=32)
def gamma_all(ctx: FieldCtx, params: SumParams) -> Tuple[np.ndarray, np.ndarray]:
    """(gamma, Delta) for every b in range(q), via one inverted linear map."""
    alpha = params.alpha
    lhs = ctx.linear_map_matrix(lambda X: ctx.add(ctx.frobenius(X, 2 * alpha), X))
    rhs = ctx.linear_map_matrix(lambda b: ctx.neg(ctx.frobenius(b, alpha)))
    sol = (rhs @ inverse_mod_p(lhs, ctx.p)) % ctx.p
    gammas = ctx.v_apply_linear(sol, ctx.elements())
    deltas = ctx.v_relative_trace(ctx.v_pow(gammas, params.P), ctx.e, params.t)
    return gammas, deltas


# ---------------------------------------------------------------------------
# L, M, N and the code length


@lru_cache(maxsize=64)
def _l_histogram(ctx: FieldCtx, params: SumParams, b: int) -> np.ndarray:
    """H[z-1, j, k] = #{x : Tr(y_j x^P) + z Tr(b x) = k}, y_j the nonzero subfield elements."""
    p = ctx.p
    ys = ctx.subfield_tables(params.t)["elements"][1:]
    xs = ctx.elements()
    xP = _powers_P(ctx, params.P)
    trb = ctx.v_trace(ctx.v_mul(b, xs))
    A = ctx.trace_table[ctx.v_mul(ys[:, None], xP[None, :])]
    nz, ny = p - 1, len(ys)
    H = np.zeros((nz, ny, p), dtype=np.int64)
    for z in range(1, p):
        E = (A + z * trb[None, :]) % p
        flat = (np.arange(ny)[:, None] * p + E).ravel()
        H[z - 1] = np.bincount(flat, minlength=ny * p).reshape(ny, p)
    return H


def L_sum_bruteforce(ctx: FieldCtx, params: SumParams, b: int, a: int, u: int) -> CycInt:
    if b == 0:
        raise ZeroArgument("b must be nonzero")
    _check_sub(ctx, params.t, a)
    p = ctx.p
    H = _l_histogram(ctx, params, b)
    tab = ctx.subfield_tables(params.t)
    ys = tab["elements"][1:]
    ty = tab["trace"][ctx.v_neg(ctx.v_mul(a, ys))]
    zs = np.arange(1, p)
    shift = (ty[None, :] - (u % p) * zs[:, None]) % p
    exps = (np.arange(p)[None, None, :] + shift[:, :, None]) % p
    value = _histogram(p, exps, H)
    assert value.as_integer() is not None, "L must be a rational integer"
    return value


def _eta_t(ctx: FieldCtx, params: SumParams, x: int) -> int:
    return ctx.quadratic_character(x, params.t)


def _tr_root_options(ctx: FieldCtx, params: SumParams, a: int, delta: int) -> Tuple[int, int]:
    """Tr^t_1 of both square roots of a*Delta (they are negatives of each other)."""
    root = ctx.sqrt_in_subfield(ctx.mul(a, delta), params.t)
    s = ctx.relative_trace(root, params.t, 1)
    return s, (-s) % ctx.p


def L_sum_closed(ctx: FieldCtx, params: SumParams, b: int, a: int, u: int) -> CycInt:
    if b == 0:
        raise ZeroArgument("b must be nonzero")
    _require_closed(params)
    _check_sub(ctx, params.t, a)
    p, t = ctx.p, params.t
    u %= p
    c = constants(ctx, params)
    delta = gamma_data(ctx, params, b).delta
    zero = CycInt.zero(p)
    if params.regime == "even":
        if a != 0:
            raise UnsupportedRegime(
                "e/t even with a != 0 needs the Kloosterman sum K(z^2 Delta, a), which has no closed form"
            )
        k2 = c.kappa2
        if u == 0:
            return k2 * ((p - 1) * (p**t - 1)) if delta == 0 else k2 * (-(p - 1))
        return k2 * (-(p**t - 1)) if delta == 0 else k2
    base = c.kappa2 * c.gauss_t
    if a == 0:
        if delta == 0:
            return zero
        sgn = _eta_t(ctx, params, delta)
        return base * (sgn * (p - 1)) if u == 0 else base * (-sgn)
    eta_a = _eta_t(ctx, params, a)
    if delta == 0:
        return base * (eta_a * (p - 1)) if u == 0 else base * (-eta_a)
    if _eta_t(ctx, params, delta) != eta_a:
        return zero
    s_plus, s_minus = _tr_root_options(ctx, params, a, delta)
    if u == 0:
        return base * (2 * (p - 1) * eta_a) if s_plus == 0 else base * (-2 * eta_a)
    if s_plus == 0:
        return base * (-2 * eta_a)
    half_u = (u * pow(2, -1, p)) % p
    if half_u in (s_plus, s_minus):
        return base * ((p - 2) * eta_a)
    return base * (-2 * eta_a)


@lru_cache(maxsize=32)
def _m_histogram(ctx: FieldCtx, params: SumParams) -> np.ndarray:
    p = ctx.p
    ys = ctx.subfield_tables(params.t)["elements"][1:]
    xP = _powers_P(ctx, params.P)
    A = ctx.trace_table[ctx.v_mul(ys[:, None], xP[None, :])]
    flat = (np.arange(len(ys))[:, None] * p + A).ravel()
    return np.bincount(flat, minlength=len(ys) * p).reshape(len(ys), p)


def M_sum_bruteforce(ctx: FieldCtx, params: SumParams, a: int) -> CycInt:
    _check_sub(ctx, params.t, a)
    p = ctx.p
    H = _m_histogram(ctx, params)
    tab = ctx.subfield_tables(params.t)
    ty = tab["trace"][ctx.v_neg(ctx.v_mul(a, tab["elements"][1:]))]
    exps = (np.arange(p)[None, :] + ty[:, None]) % p
    return _histogram(p, exps, H)


def M_sum_closed(ctx: FieldCtx, params: SumParams, a: int) -> CycInt:
    _require_closed(params)
    _check_sub(ctx, params.t, a)
    c = constants(ctx, params)
    if params.regime == "odd":
        if a == 0:
            return CycInt.zero(ctx.p)
        return c.kappa2 * c.gauss_t * (_eta_t(ctx, params, ctx.neg(a)) * c.epsilon)
    if a == 0:
        return c.kappa2 * (c.epsilon * (ctx.p**params.t - 1))
    return c.kappa2 * (-c.epsilon)


@lru_cache(maxsize=32)
def _reltrace_P(ctx: FieldCtx, params: SumParams) -> np.ndarray:
    """Tr^e_t(x^P) for every x."""
    return ctx.v_relative_trace(_powers_P(ctx, params.P), ctx.e, params.t)


def N_count_bruteforce(ctx: FieldCtx, params: SumParams, b: int, a: int, u: int) -> int:
    """#{x in GF(q) : Tr^e_t(x^P) = a and Tr(b x) = u} (x = 0 included)."""
    if b == 0:
        raise ZeroArgument("b must be nonzero")
    rel = _reltrace_P(ctx, params)
    trb = ctx.v_trace(ctx.v_mul(b, ctx.elements()))
    return int(np.count_nonzero((rel == a) & (trb == u % ctx.p)))


def N_count_closed(ctx: FieldCtx, params: SumParams, b: int, a: int, u: int) -> int:
    """p^(e-t-1) + (M(a) + L_b(a, u)) / p^(t+1), the division being exact."""
    m = M_sum_closed(ctx, params, a).as_integer()
    l = L_sum_closed(ctx, params, b, a, u).as_integer()
    assert m is not None and l is not None
    p, e, t = ctx.p, ctx.e, params.t
    raw = Fraction(p) ** (e - t - 1) + Fraction(m + l, p ** (t + 1))
    assert raw.denominator == 1, "N count must be an integer"
    return int(raw)


def code_length_bruteforce(ctx: FieldCtx, params: SumParams, a: int) -> int:
    """#D_a; zero is never part of the defining set."""
    rel = _reltrace_P(ctx, params)
    return int(np.count_nonzero(rel[1:] == a))


def code_length_closed(ctx: FieldCtx, params: SumParams, a: int) -> int:
    _require_closed(params)
    _check_sub(ctx, params.t, a)
    p, e, t = ctx.p, ctx.e, params.t
    c = constants(ctx, params)
    if params.regime == "odd":
        if a == 0:
            n = Fraction(p) ** (e - t) - 1
        else:
            n = Fraction(p) ** (e - t) + Fraction(c.epsilon * c.kappa) * _eta_t(ctx, params, ctx.neg(a)) * p
    else:
        k2 = c.kappa2.as_integer()
        if a == 0:
            n = Fraction(p) ** (e - t) + c.epsilon * k2 * (1 - Fraction(1, p**t)) - 1
        else:
            n = Fraction(p) ** (e - t) - Fraction(c.epsilon * k2, p**t)
    assert n.denominator == 1
    return int(n)


# ---------------------------------------------------------------------------
# families of b


@dataclass
class FamilyPartition:
    """Assignment of each b in GF(q)^* to one of the families F^(s)_i.

    ``labels[b]`` is the family name for b >= 1 (``labels[0]`` is empty);
    ``computed`` and ``predicted`` map names to counts.
    """

    scheme: int
    names: Tuple[str, ...]
    labels: np.ndarray
    computed: Dict[str, int]
    predicted: Dict[str, int]
    tr_root: np.ndarray = None  # Tr^t_1(sqrt(a Delta)) per b, -1 where undefined

    @property
    def ok(self) -> bool:
        return self.computed == self.predicted


def family_scheme(params: SumParams, a: int) -> int:
    if params.regime == "odd":
        return 1 if a == 0 else 2
    if a != 0:
        raise UnsupportedRegime("no family scheme for e/t even with a != 0")
    return 3


def family_predicted(ctx: FieldCtx, params: SumParams, a: int) -> Dict[str, int]:
    """Closed-form family sizes."""
    p, e, t = ctx.p, ctx.e, params.t
    c = constants(ctx, params)
    eps, kap = c.epsilon, Fraction(c.kappa)
    scheme = family_scheme(params, a)
    pe_t = Fraction(p) ** (e - t)
    if scheme == 1:
        x = eps * kap * _eta_t(ctx, params, ctx.neg(1)) * p
        out = {
            "F1_1": pe_t - 1,
            "F1_2": Fraction(p**t - 1, 2) * (pe_t + x),
            "F1_3": Fraction(p**t - 1, 2) * (pe_t - x),
        }
    elif scheme == 2:
        x = eps * kap * _eta_t(ctx, params, ctx.neg(a)) * p
        out = {
            "F2_1": pe_t - 1,
            "F2_2": Fraction(p**t - 1, 2) * (pe_t - x),
            "F2_3": Fraction(p ** (t - 1) - 1, 2) * (pe_t + x),
            "F2_4": Fraction((p - 1) * p ** (t - 1), 2) * (pe_t + x),
        }
    else:
        out = {
            "F3_1": pe_t + eps * kap * p * (p**t - 1) - 1,
            "F3_2": (p**t - 1) * (pe_t - eps * kap * p),
        }
    for name, v in out.items():
        assert v.denominator == 1, f"{name} is not integral"
    return {k: int(v) for k, v in out.items()}


def family_classify(ctx: FieldCtx, params: SumParams, a: int) -> FamilyPartition:
    """Partition GF(q)^* by Delta, eta(Delta) and Tr^t_1(sqrt(a Delta))."""
    _check_sub(ctx, params.t, a)
    scheme = family_scheme(params, a)
    q = ctx.q
    _, deltas = gamma_all(ctx, params)
    tab = ctx.subfield_tables(params.t)
    eta = tab["eta"][deltas]
    labels = np.full(q, "", dtype=object)
    tr_root = np.full(q, -1, dtype=np.int64)
    bs = np.arange(1, q)
    d = deltas[bs]
    e_d = eta[bs]
    if scheme == 1:
        names = ("F1_1", "F1_2", "F1_3")
        lab = np.where(d == 0, names[0], np.where(e_d == 1, names[1], names[2]))
    elif scheme == 3:
        names = ("F3_1", "F3_2")
        lab = np.where(d == 0, names[0], names[1])
    else:
        names = ("F2_1", "F2_2", "F2_3", "F2_4")
        eta_a = ctx.quadratic_character(a, params.t)
        roots = tab["sqrt"][ctx.v_mul(a, d)]
        same = (d != 0) & (e_d == eta_a)
        tr = np.where(same, tab["trace"][np.where(roots < 0, 0, roots)], -1)
        tr_root[bs] = tr
        lab = np.where(
            d == 0,
            names[0],
            np.where(~same, names[1], np.where(tr == 0, names[2], names[3])),
        )
    labels[bs] = lab
    computed = {n: int(np.count_nonzero(lab == n)) for n in names}
    predicted = family_predicted(ctx, params, a)
    return FamilyPartition(scheme, names, labels, computed, predicted, tr_root)
