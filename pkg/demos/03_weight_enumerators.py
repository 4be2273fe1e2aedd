"""Enumerate three small codes and compare with their closed-form enumerators."""

from fewweight import code_lab as cl
from fewweight.field_tower import build_field

for cfg in [(3, 6, 6, 2, 0), (3, 6, 6, 2, 1), (3, 8, 8, 2, 0)]:
    F = build_field(cfg[0], cfg[1])
    P = cl.CodeParams(*cfg)
    cwe = cl.compute_cwe(F, P)
    print(cfg, "length", cwe.n)
    print("  CWE     :", cwe)
    print("  weights :", cwe.hamming())
    rep = cl.verify(F, P)
    print("  match   :", rep.match, " w_min/w_max =", rep.secret_sharing["ratio"])

# a deliberately wrong constant shows up as differing terms
F = build_field(3, 6)
bad = cl.verify(F, cl.CodeParams(3, 6, 6, 2, 0), kappa=4)
print("perturbed kappa ->", bad.mismatches)
for d in bad.diff:
    print("  ", d)
