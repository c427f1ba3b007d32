"""Weyl modules of type A_l: monomial bases, branching and weight multiplicities.

Submodules keep their own names (`weylmod.branch`, `weylmod.mult`, ...); only functions whose
names differ from a submodule are re-exported here.
"""

from .branch import check_dim_sum
from .mult import character, dim, mult_count, mult_recursive
from .oracle import freudenthal_mult, gt_count

__all__ = ["check_dim_sum", "character", "dim", "mult_count", "mult_recursive", "freudenthal_mult", "gt_count"]
