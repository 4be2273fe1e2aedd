"""The codes C_{D_a}: construction, exhaustive enumeration, closed-form
predictions and their exact comparison.

For ``a`` in GF(p^t) the defining set is
``D_a = {x != 0 : Tr^e_t(x^(p^alpha + 1)) = a}`` and the codeword of ``x`` is
``(Tr(x d) for d in D_a)``.  Since ``Tr(x d)`` is linear in the coordinates of
``x``, each coordinate is precomputed as a length-e functional over GF(p) and
the whole code is one integer matrix product.
"""

from __future__ import annotations

import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import char_sums as cs
from .errors import BudgetExceeded, InvalidParameters, UnsupportedRegime
from .field_tower import FieldCtx

#: Default cap on q * n symbol evaluations for one enumeration.
DEFAULT_BUDGET = 10**8

Composition = Tuple[int, ...]


@dataclass(frozen=True)
class CodeParams:
    """(p, e, alpha, t) plus the index of ``a`` in the subfield order.

    ``a_index`` addresses ``ctx.subfield_elements(t)``: 0 is the zero
    element, 1 is the identity, 2 is the subfield generator (a non-square).
    ``allow_nonpaper`` admits parameters outside the theorems' hypotheses;
    predictors are then disabled.
    """

    p: int
    e: int
    alpha: int
    t: int
    a_index: int = 0
    allow_nonpaper: bool = False

    def __post_init__(self):
        sp = self.sums  # validates
        if not 0 <= self.a_index < self.p**self.t:
            raise InvalidParameters(f"a_index must be < p^t = {self.p**self.t}", "a_index")
        del sp

    @property
    def sums(self) -> cs.SumParams:
        return cs.SumParams(self.p, self.e, self.alpha, self.t, strict=not self.allow_nonpaper)

    @property
    def d(self) -> int:
        return self.sums.d

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def regime(self) -> str:
        return self.sums.regime

    @property
    def hypotheses_hold(self) -> bool:
        return self.sums.hypotheses_hold

    def a(self, ctx: FieldCtx) -> int:
        return ctx.subfield_element(self.t, self.a_index)

    @property
    def predictor(self) -> Optional[str]:
        """Tag of the applicable predictor (thm1, thm2, thm3), or None."""
        if not self.hypotheses_hold:
            return None
        if self.regime == "odd":
            return "thm1" if self.a_index == 0 else "thm2"
        return "thm3" if self.a_index == 0 else None


# ---------------------------------------------------------------------------
# enumerators


@dataclass
class WeightDistribution:
    counts: Dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero_weights(self) -> List[int]:
        return sorted(w for w, c in self.counts.items() if w and c)

    @property
    def min_distance(self) -> Optional[int]:
        ws = self.nonzero_weights()
        return ws[0] if ws else None

    @property
    def max_weight(self) -> Optional[int]:
        ws = self.nonzero_weights()
        return ws[-1] if ws else None

    def __str__(self):
        parts = []
        for w in sorted(self.counts):
            c = self.counts[w]
            parts.append(str(c) if w == 0 and c == 1 else (f"{c}" if w == 0 else f"{c}z^{w}"))
        return " + ".join(parts)


_TERM = re.compile(r"(\d*)\s*((?:w_?\{?\d+\}?(?:\^\{?\d+\}?)?\s*)+)")
_VAR = re.compile(r"w_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?")


@dataclass
class CompleteWeightEnumerator:
    """Multiset of symbol compositions (t_0, ..., t_{p-1}) with multiplicities."""

    n: int
    terms: Dict[Composition, int]

    @property
    def p(self) -> int:
        return len(next(iter(self.terms)))

    @property
    def total(self) -> int:
        return sum(self.terms.values())

    def hamming(self) -> WeightDistribution:
        out: Dict[int, int] = {}
        for comp, mult in self.terms.items():
            w = self.n - comp[0]
            out[w] = out.get(w, 0) + mult
        return WeightDistribution(dict(sorted(out.items())))

    def sorted_terms(self) -> List[Tuple[Composition, int]]:
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0]))

    def __str__(self):
        parts = []
        for comp, mult in self.sorted_terms():
            mono = " ".join(f"w{i}^{c}" for i, c in enumerate(comp) if c)
            if not mono:
                parts.append(str(mult))
            else:
                parts.append(mono if mult == 1 else f"{mult} {mono}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, p: int) -> "CompleteWeightEnumerator":
        """Read ``w0^80 + 360 w0^32 w1^24 w2^24``-style text (TeX braces ok)."""
        terms: Dict[Composition, int] = {}
        n = None
        for chunk in text.replace(" ", "").split("+"):
            m = _TERM.fullmatch(chunk)
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            mult = int(m.group(1)) if m.group(1) else 1
            comp = [0] * p
            for sym, exp in _VAR.findall(m.group(2)):
                comp[int(sym)] += int(exp) if exp else 1
            comp_t = tuple(comp)
            terms[comp_t] = terms.get(comp_t, 0) + mult
            n = sum(comp) if n is None else n
        return cls(n, terms)


@dataclass
class PredictedEnumerator:
    n: int
    dimension: int
    terms: List[Tuple[Composition, int]]
    kappa: cs.Rational
    epsilon: int
    theorem: str
    family_terms: Dict[str, Composition] = field(default_factory=dict)

    def as_cwe(self) -> CompleteWeightEnumerator:
        merged: Dict[Composition, int] = {}
        for comp, mult in self.terms:
            if mult:
                merged[comp] = merged.get(comp, 0) + mult
        return CompleteWeightEnumerator(self.n, merged)


# ---------------------------------------------------------------------------
# construction


def defining_set(ctx: FieldCtx, params: CodeParams) -> np.ndarray:
    """D_a ordered by discrete logarithm base the primitive element."""
    a = params.a(ctx)
    rel = cs._reltrace_P(ctx, params.sums)
    xs = np.nonzero(rel == a)[0]
    xs = xs[xs != 0]
    return xs[np.argsort(ctx.log[xs], kind="stable")]


def trace_functionals(ctx: FieldCtx, D: np.ndarray) -> np.ndarray:
    """T[j, i] = Tr(X^j d_i), so codeword(x) = coords(x) @ T mod p."""
    rows = [ctx.v_trace(ctx.v_mul(ctx.p**j, D)) for j in range(ctx.e)]
    return np.array(rows, dtype=np.int64).reshape(ctx.e, len(D))


def codeword(ctx: FieldCtx, params: CodeParams, x: int, D: Optional[np.ndarray] = None) -> np.ndarray:
    if D is None:
        D = defining_set(ctx, params)
    return ctx.v_trace(ctx.v_mul(x, D))


@dataclass
class Enumeration:
    """Raw result of running every x in GF(q) through the code."""

    n: int
    compositions: np.ndarray  # shape (q, p): symbol counts of c_x
    distinct_codewords: int

    def cwe(self) -> CompleteWeightEnumerator:
        if len(self.compositions) == 0:
            return CompleteWeightEnumerator(self.n, {})
        uniq, counts = np.unique(self.compositions, axis=0, return_counts=True)
        terms = {tuple(int(v) for v in row): int(c) for row, c in zip(uniq, counts)}
        return CompleteWeightEnumerator(self.n, terms)


def enumerate_code(
    ctx: FieldCtx,
    params: CodeParams,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> Enumeration:
    D = defining_set(ctx, params)
    n, p, q = len(D), ctx.p, ctx.q
    if q * max(n, 1) > budget:
        raise BudgetExceeded(f"q*n = {q * n} symbol evaluations exceed budget {budget}")
    T = trace_functionals(ctx, D)
    bounds = np.linspace(0, q, max(1, workers) * 4 + 1, dtype=np.int64)
    chunks = [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    def run(chunk):
        lo, hi = chunk
        words = ((ctx.digits[lo:hi] @ T) % p).astype(np.int8)
        comp = np.stack([(words == s).sum(axis=1) for s in range(p)], axis=1)
        return comp, {row.tobytes() for row in words}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]
    compositions = np.concatenate([r[0] for r in results]).astype(np.int64)
    distinct = set().union(*(r[1] for r in results))
    return Enumeration(n, compositions, len(distinct))


def compute_cwe(
    ctx: FieldCtx, params: CodeParams, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> CompleteWeightEnumerator:
    return enumerate_code(ctx, params, workers, budget).cwe()


def hamming_from_cwe(cwe: CompleteWeightEnumerator) -> WeightDistribution:
    return cwe.hamming()


# ---------------------------------------------------------------------------
# closed-form predictions


def _int(x, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return int(x)


def _flat(p: int, first, rest) -> Composition:
    return (first,) + (rest,) * (p - 1)


def _setup(ctx: FieldCtx, params: CodeParams, want: str, kappa):
    if params.predictor is None:
        if not params.hypotheses_hold:
            raise InvalidParameters("predictors need parameters satisfying the hypotheses", "hypotheses")
        raise UnsupportedRegime("e/t even with a != 0: the Kloosterman case has no closed form")
    if params.predictor != want:
        raise UnsupportedRegime(f"{want} does not apply; use {params.predictor}")
    c = cs.constants(ctx, params.sums)
    k = Fraction(c.kappa if kappa is None else kappa)
    return c, k


def predict_thm1(ctx: FieldCtx, params: CodeParams, kappa=None) -> PredictedEnumerator:
    """CWE of C_{D_0} for e/t odd."""
    c, k = _setup(ctx, params, "thm1", kappa)
    p, e, t = ctx.p, ctx.e, params.t
    eps = c.epsilon
    h = ctx.quadratic_character(ctx.neg(1), t)
    m = Fraction(p) ** (e - t - 1)
    A0 = _int(Fraction(p) ** (e - t) - 1, "A0")
    B = _flat(p, _int(m - 1, "B0"), _int(m, "B1"))
    C = _flat(p, _int(m + (p - 1) * k - 1, "C0"), _int(m - k, "C1"))
    D = _flat(p, _int(m - (p - 1) * k - 1, "D0"), _int(m + k, "D1"))
    F1 = _int(Fraction(p) ** (e - t) - 1, "F1")
    F2 = _int(Fraction(p**t - 1, 2) * (p ** (e - t) + eps * k * h * p), "F2")
    F3 = _int(Fraction(p**t - 1, 2) * (p ** (e - t) - eps * k * h * p), "F3")
    terms = [(_flat(p, A0, 0), 1), (B, F1), (C, F2), (D, F3)]
    return PredictedEnumerator(
        A0, e, terms, cs._shrink(k), eps, "thm1", {"F1_1": B, "F1_2": C, "F1_3": D}
    )


def _pm2i(p: int, i: int) -> set:
    return {(2 * i) % p, (-2 * i) % p}


def predict_thm2(ctx: FieldCtx, params: CodeParams, kappa=None) -> PredictedEnumerator:
    """CWE of C_{D_a}, a != 0, for e/t odd.

    The last family contributes, for each i = 1..p-1, one composition in which
    the two symbols +-2i mod p carry exponent E0 and every other symbol
    (0 included) carries E1, each with multiplicity F4.
    """
    c, k = _setup(ctx, params, "thm2", kappa)
    p, e, t = ctx.p, ctx.e, params.t
    a = params.a(ctx)
    eps = c.epsilon
    ea = ctx.quadratic_character(a, t)
    hn = ctx.quadratic_character(ctx.neg(a), t)
    m = Fraction(p) ** (e - t - 1)
    n = Fraction(p) ** (e - t) + eps * k * hn * p
    A0 = _int(n, "A0")
    B = _flat(p, _int(m + k * (eps * hn + ea * (p - 1)), "B0"), _int(m + k * (eps * hn - ea), "B1"))
    cc = _int(m + eps * k * hn, "C0")
    C = _flat(p, cc, cc)
    D = _flat(p, _int(m + k * (eps * hn + 2 * ea * (p - 1)), "D0"), _int(m + k * (eps * hn - 2 * ea), "D1"))
    E0 = _int(m + k * (eps * hn + ea * (p - 2)), "E0")
    E1 = _int(m + k * (eps * hn - 2 * ea), "E1")
    F1 = _int(Fraction(p) ** (e - t) - 1, "F1")
    F2 = _int(Fraction(p**t - 1, 2) * (p ** (e - t) - eps * k * hn * p), "F2")
    F3 = _int(Fraction(p ** (t - 1) - 1, 2) * n, "F3")
    F4 = _int(Fraction(p ** (t - 1), 2) * n, "F4")
    terms = [(_flat(p, A0, 0), 1), (B, F1), (C, F2), (D, F3)]
    fam = {"F2_1": B, "F2_2": C, "F2_3": D}
    for i in range(1, p):
        pair = _pm2i(p, i)
        comp = tuple(E0 if s in pair else E1 for s in range(p))
        terms.append((comp, F4))
        fam[f"F2_4[s={i}]"] = comp
    return PredictedEnumerator(A0, e, terms, cs._shrink(k), eps, "thm2", fam)


def predict_thm3(ctx: FieldCtx, params: CodeParams, kappa=None) -> PredictedEnumerator:
    """CWE of C_{D_0} for e/t even; kappa here is kappa2 / p^(t+1)."""
    c, k = _setup(ctx, params, "thm3", kappa)
    p, e, t = ctx.p, ctx.e, params.t
    eps = c.epsilon
    m = Fraction(p) ** (e - t - 1)
    A0 = _int(Fraction(p) ** (e - t) + eps * k * p * (p**t - 1) - 1, "A0")
    F1 = A0
    F2 = _int((p**t - 1) * (Fraction(p) ** (e - t) - eps * k * p), "F2")
    # families of size zero may carry meaningless exponents (e = 2t)
    B = _flat(
        p,
        _int(m + k * (p + eps - 1) * (p**t - 1) - 1, "B0") if F1 else 0,
        _int(m + k * (eps - 1) * (p**t - 1), "B1") if F1 else 0,
    )
    C = _flat(
        p,
        _int(m + k * (eps * (p**t - 1) - p + 1) - 1, "C0") if F2 else 0,
        _int(m + k * (eps * (p**t - 1) + 1), "C1") if F2 else 0,
    )
    terms = [(_flat(p, A0, 0), 1), (B, F1), (C, F2)]
    return PredictedEnumerator(A0, e, terms, cs._shrink(k), eps, "thm3", {"F3_1": B, "F3_2": C})


def predict(ctx: FieldCtx, params: CodeParams, kappa=None) -> PredictedEnumerator:
    tag = params.predictor
    fn = {"thm1": predict_thm1, "thm2": predict_thm2, "thm3": predict_thm3}.get(tag)
    if fn is None:
        _setup(ctx, params, "thm?", kappa)  # raises the appropriate error
    return fn(ctx, params, kappa)


# ---------------------------------------------------------------------------
# verification


def secret_sharing_check(dist: WeightDistribution, p: int) -> Tuple[bool, Fraction]:
    """(w_min / w_max > (p-1)/p, w_min / w_max)."""
    if dist.min_distance is None:
        raise ValueError("the code has no nonzero codewords")
    ratio = Fraction(dist.min_distance, dist.max_weight)
    return ratio > Fraction(p - 1, p), ratio


def _rat(x) -> str:
    return str(Fraction(x))


def _comp_list(cwe: CompleteWeightEnumerator) -> list:
    return [{"composition": list(c), "multiplicity": m} for c, m in cwe.sorted_terms()]


@dataclass
class VerificationReport:
    """Outcome of :func:`verify`; ``to_dict`` is the stable JSON form."""

    params: dict
    constants: Optional[dict]
    length: dict
    dimension: dict
    cwe: list
    predicted_cwe: Optional[list]
    hamming: list
    families: Optional[list]
    secret_sharing: Optional[dict]
    match: Optional[bool]
    mismatches: list
    diff: list
    flags: list
    timing_ms: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(**d)

    def without_timing(self) -> dict:
        d = self.to_dict()
        d.pop("timing_ms")
        return d


def cwe_diff(computed: CompleteWeightEnumerator, predicted: CompleteWeightEnumerator) -> list:
    out = []
    for comp in sorted(set(computed.terms) | set(predicted.terms), key=lambda c: (-c[0], c)):
        mc, mp = computed.terms.get(comp, 0), predicted.terms.get(comp, 0)
        if mc != mp:
            out.append({"composition": list(comp), "computed": mc, "predicted": mp})
    return out


def _pointwise_ok(ctx, params, enum: Enumeration, fams: cs.FamilyPartition, pred: PredictedEnumerator) -> bool:
    """Each c_b has exactly the composition of its family's CWE term."""
    expected = np.zeros((ctx.q, ctx.p), dtype=np.int64)
    for b in range(1, ctx.q):
        name = fams.labels[b]
        if name == "F2_4":
            name = f"F2_4[s={int(fams.tr_root[b])}]"
            if name not in pred.family_terms:  # s and -s name the same pair
                name = f"F2_4[s={(-int(fams.tr_root[b])) % ctx.p}]"
        expected[b] = pred.family_terms[name]
    return bool((expected[1:] == enum.compositions[1:]).all())


def verify(
    ctx: FieldCtx,
    params: CodeParams,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    kappa=None,
) -> VerificationReport:
    """Enumerate the code, predict it in closed form and compare exactly.

    ``kappa`` overrides the constant fed to the predictor (negative
    controls).  Parameters without a predictor raise; with
    ``allow_nonpaper`` the report is brute-force only and ``match`` is None.
    """
    start = time.perf_counter()
    sp = params.sums
    a = params.a(ctx)
    flags = []
    pred = None
    if params.predictor is None and params.hypotheses_hold and not params.allow_nonpaper:
        raise UnsupportedRegime(
            "e/t even with a != 0 involves the Kloosterman sum K(z^2 Delta, a); no closed form"
        )
    if params.predictor is not None:
        pred = predict(ctx, params, kappa)
    else:
        flags.append("brute-force only: no closed form applies to these parameters")
    enum = enumerate_code(ctx, params, workers, budget)
    cwe = enum.cwe()
    dist = cwe.hamming()
    report_params = {
        "p": params.p, "e": params.e, "alpha": params.alpha, "t": params.t,
        "d": params.d, "regime": params.regime, "a_index": params.a_index,
        "a_coords": list(ctx.coords(a)),
    }
    mismatches: list = []
    consts = None
    predicted_cwe = None
    families = None
    length = {"computed": enum.n, "predicted": None}
    diff: list = []
    match: Optional[bool] = None
    if pred is not None:
        c = cs.constants(ctx, sp)
        consts = {"kappa": _rat(pred.kappa), "epsilon": c.epsilon, "kappa2": list(c.kappa2.coeffs)}
        length["predicted"] = cs.code_length_closed(ctx, sp, a)
        pcwe = pred.as_cwe()
        predicted_cwe = _comp_list(pcwe)
        diff = cwe_diff(cwe, pcwe)
        if length["computed"] != length["predicted"] or pred.n != enum.n:
            mismatches.append("length")
        if diff:
            mismatches.append("cwe")
        fams = cs.family_classify(ctx, sp, a)
        families = [
            {"name": n, "computed": fams.computed[n], "predicted": fams.predicted[n]} for n in fams.names
        ]
        if not fams.ok:
            mismatches.append("families")
        if not _pointwise_ok(ctx, params, enum, fams, pred):
            mismatches.append("pointwise")
        match = not mismatches
    dim_ok = enum.distinct_codewords == ctx.q
    if not dim_ok:
        flags.append(f"dimension below e: {enum.distinct_codewords} distinct codewords")
    ss = None
    if dist.min_distance is not None:
        ok, ratio = secret_sharing_check(dist, ctx.p)
        ss = {"ratio": _rat(ratio), "threshold": _rat(Fraction(ctx.p - 1, ctx.p)), "ok": ok}
    return VerificationReport(
        params=report_params,
        constants=consts,
        length=length,
        dimension={"distinct_codewords": enum.distinct_codewords, "claimed": ctx.e, "ok": dim_ok},
        cwe=_comp_list(cwe),
        predicted_cwe=predicted_cwe,
        hamming=[{"weight": w, "count": n} for w, n in dist.counts.items()],
        families=families,
        secret_sharing=ss,
        match=match,
        mismatches=mismatches,
        diff=diff,
        flags=flags,
        timing_ms=round((time.perf_counter() - start) * 1000.0, 3),
    )
