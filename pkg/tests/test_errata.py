"""Places where the commonly quoted closed forms need care.

Each test states what exhaustive computation actually gives, next to the
formula variant it rules out.  Brute force is the arbiter throughout.
"""

import numpy as np
import pytest

from fewweight import char_sums as cs
from fewweight import code_lab as cl
from fewweight.field_tower import build_field


def b_with(F, P, want):
    _, delta = cs.gamma_all(F, P)
    return next(b for b in range(1, F.q) if want(int(delta[b])))


def test_zero_delta_count_for_nonzero_u_has_no_minus_one():
    """a = 0, u != 0, Delta = 0: #{x in D_0 : Tr(bx) = u} is p^(e-t-1), not p^(e-t-1) - 1.

    x = 0 has Tr(bx) = 0 != u, so discarding it changes nothing.  The
    corrected value is the exponent 27 of w1, w2 in the 80-term family.
    """
    F = build_field(3, 6)
    P = cs.SumParams(3, 6, 6, 2)
    b = b_with(F, P, lambda d: d == 0)
    for u in (1, 2):
        raw = cs.N_count_bruteforce(F, P, b, 0, u)
        assert raw == 3 ** (6 - 2 - 1) == 27
        assert raw != 3 ** (6 - 2 - 1) - 1
        assert cs.N_count_closed(F, P, b, 0, u) == 27


def test_even_regime_counts_are_raw_while_odd_a0_counts_exclude_zero():
    """The a = 0, u = 0 values differ in convention between the regimes.

    Odd regime: p^(e-t-1) - 1 for Delta = 0 counts x != 0 only.
    Even regime: p^(e-t-1) + kappa (p + eps - 1)(p^t - 1) includes x = 0;
    the code exponent (170 at (3, 8, 8, 2)) is one less.
    """
    F = build_field(3, 8)
    P = cs.SumParams(3, 8, 8, 2)
    c = cs.constants(F, P)
    b = b_with(F, P, lambda d: d == 0)
    formula = 3**5 + c.kappa * (3 + c.epsilon - 1) * (3**2 - 1)
    assert cs.N_count_bruteforce(F, P, b, 0, 0) == formula == 171
    rep = cl.verify(F, cl.CodeParams(3, 8, 8, 2, 0))
    assert any(t["composition"][0] == 170 for t in rep.cwe)

    G = build_field(3, 6)
    Q = cs.SumParams(3, 6, 6, 2)
    b = b_with(G, Q, lambda d: d == 0)
    assert cs.N_count_bruteforce(G, Q, b, 0, 0) == 3**3  # raw
    assert cs.N_count_bruteforce(G, Q, b, 0, 0) - 1 == 3**3 - 1  # the quoted x != 0 value


def test_defining_set_excludes_zero():
    """Length 80 at (3, 6, 6, 2, 0): zero is not a coordinate (81 would include it)."""
    F = build_field(3, 6)
    P = cs.SumParams(3, 6, 6, 2)
    rel = cs._reltrace_P(F, P)
    assert int(np.count_nonzero(rel == 0)) == 81
    assert len(cl.defining_set(F, cl.CodeParams(3, 6, 6, 2, 0))) == 80


def test_even_regime_kappa_has_no_gauss_factor():
    """Feeding kappa2 G / p^(t+1) = -9 into the e/t-even enumerator predicts length 512, not 656."""
    F = build_field(3, 8)
    P = cl.CodeParams(3, 8, 8, 2, 0)
    c = cs.constants(F, P.sums)
    with_gauss = (c.kappa2 * c.gauss_t).as_integer() / 3**3
    assert with_gauss == -9
    assert cl.predict_thm3(F, P, kappa=-9).n == 512
    assert cl.predict_thm3(F, P).n == 656 == len(cl.defining_set(F, P))
    assert cl.verify(F, P, kappa=-9).match is False


def test_nonzero_a_enumerator_describes_D_a_not_D_0():
    """The five-term enumerator with the 270 w0^24 w1^33 w2^33 term belongs to D_1."""
    F = build_field(3, 6)
    d0 = cl.compute_cwe(F, cl.CodeParams(3, 6, 6, 2, 0))
    d1 = cl.compute_cwe(F, cl.CodeParams(3, 6, 6, 2, 1))
    pred = cl.predict_thm2(F, cl.CodeParams(3, 6, 6, 2, 1)).as_cwe()
    assert pred.terms == d1.terms != d0.terms


@pytest.mark.parametrize("cfg", [(3, 4, 4, 2), (5, 4, 4, 2), (3, 8, 8, 4), (5, 6, 6, 3)])
def test_hypotheses_admit_empty_codes(cfg):
    """Some valid e/t-even sets (all with e = 2t, though (3, 6, 6, 3) is not one)
    have D_0 empty.  The enumerator is the single term of multiplicity p^e and
    the predictor reproduces it, but the code has dimension 0 rather than e."""
    p, e, alpha, t = cfg
    F = build_field(p, e)
    P = cl.CodeParams(p, e, alpha, t, 0)
    assert P.hypotheses_hold
    rep = cl.verify(F, P)
    assert rep.match is True
    assert rep.length == {"computed": 0, "predicted": 0}
    assert rep.dimension["distinct_codewords"] == 1 and not rep.dimension["ok"]
    assert rep.cwe == [{"composition": [0] * p, "multiplicity": p**e}]
    assert rep.secret_sharing is None
