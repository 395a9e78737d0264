"""
Typewriter and returning automata
=================================

Convert a nondeterministic typewriter machine into a returning automaton
that reads every row in full, then convert back.
"""

from gridfa import build_fixture, rfa_to_tfa, tfa_to_rfa
from gridfa.oracle import equivalence
from gridfa.simulate import run
from gridfa.grid import Word2D

tL = build_fixture("tL")
rfa = tfa_to_rfa(tL)
print(rfa.kind.value, rfa.state_count, "states")
print("same language up to 4x4:", bool(equivalence(rfa, tL, (4, 4))))

# a scan that accepts has read every data cell
out = run(rfa, Word2D.from_str("10/10/11"))
print(out, "cells read:", out.cells_read)

back = rfa_to_tfa(rfa)
print("round trip:", bool(equivalence(back, tL, (4, 4))))
