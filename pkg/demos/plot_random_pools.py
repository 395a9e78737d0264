"""
Seeded machine pools and bottom chains
======================================

Draw small random machines and look at how they finish on the bottom border.
"""

from collections import Counter

from gridfa import bottom_chain_analysis, random_pool
from gridfa.fixtures import PoolConstraints

pool = random_pool(7, 200, PoolConstraints(max_states=4))

# short-bottom machines only need chains of length 1 or 2 after a reset
kmax = Counter(bottom_chain_analysis(m).k_max for m in pool)
print("longest bottom chain over reset targets:", dict(sorted(kmax.items())))
print("short-bottom:", sum(bottom_chain_analysis(m).short_bottom for m in pool), "of", len(pool))

# the same seed always gives the same pool
assert random_pool(7, 200, PoolConstraints(max_states=4)) == pool
