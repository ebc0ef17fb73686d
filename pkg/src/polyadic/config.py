"""Search caps and exhaustive-check budgets.

All enumeration entry points take explicit keyword overrides; the values
here are only the defaults.  Mutate ``LIMITS`` to raise them globally.
"""

from dataclasses import dataclass


@dataclass
class Limits:
    brute_cap: int = 8              # max order for bijection enumeration (8! = 40320)
    dense_cap: int = 10**7          # max order**n entries of a dense n-ary table
    assoc_budget: int = 10**8       # max order**(2n-1) tuples for exhaustive associativity
    exhaustive_budget: int = 10**6  # medial / skew-distribution exhaustive cutoff
    samples: int = 10**5            # sample count above the exhaustive cutoff
    seed: int = 0
    rep_budget: int = 10**6         # max (p-1)**order scalar assignments


LIMITS = Limits()
