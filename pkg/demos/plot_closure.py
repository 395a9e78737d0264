"""
Closure constructions checked by enumeration
============================================

Every construction is compared with the set-level result computed from
exhaustive language samples.
"""

from gridfa import build_fixture, complement_tdfa, reverse_tfa, row_concat_tfa, to_bottom_accepting, union_tfa
from gridfa.oracle import equivalence, expected_sample, language_sample

t1s, tL = build_fixture("t1s"), build_fixture("tL")

# normal form: every accepting run now ends on the bottom border
banf = to_bottom_accepting(t1s)
print("normal form states:", banf.machine.state_count, equivalence(banf.machine, t1s, (3, 3)))

cap = (4, 3)
s1, sL = language_sample(t1s, cap), language_sample(tL, cap)

print("union", equivalence(union_tfa(t1s, tL), expected_sample("union", s1, sL), cap))
print("complement", equivalence(complement_tdfa(t1s), expected_sample("complement", s1), cap))
print("reversal", equivalence(reverse_tfa(tL), expected_sample("reversal", sL), cap))

# operands of a row concatenation are sampled one row lower
inner = (3, 3)
want = expected_sample("row_concat", language_sample(t1s, inner), language_sample(tL, inner), bounds=cap)
rc = row_concat_tfa(banf, tL)
print("row concatenation", rc.state_count, "states", equivalence(rc, want, cap))
