"""
Running the fixture machines
============================

Build the typewriter machine for the 1s language, run it, and print an
accepting trace.
"""

from gridfa import Word2D, build_fixture, run, trace
from gridfa.machines import format_machine

t1s = build_fixture("t1s")
print(format_machine(t1s))

# a word is rows separated by "/" in the short notation
for text in ("11/10", "10/11", "01/11"):
    w = Word2D.from_str(text)
    print(text, run(t1s, w))

# the trace ends on the cell where accept was entered
print(trace(t1s, Word2D.from_str("11/10")).render())

# the three-way staircase machine checks square words only
stairs = build_fixture("stairs3w")
print(run(stairs, Word2D.from_str("1100/0110/0011/0001")))
