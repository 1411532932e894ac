"""
Support function of a box
=========================

Over a box the maximum of ``l.x`` takes the lower end where ``l_i < 0``
and the upper end elsewhere, so no simplex is needed.
"""

import numpy as np

from batchlp import Hyperbox, solve, support
from batchlp.hyperbox import box_to_lp

box = Hyperbox([-2.0, 1.0], [3.0, 4.0])
for l in ([1, 1], [-1, 0.5], [0, 2]):
    value, corner = support(box, l)
    print(l, "->", value, corner)

# The same number from the simplex, through a shifted encoding
# 0 <= x - lo <= hi - lo (the box has a negative lower bound).
lp, offset = box_to_lp(box, [-1, 0.5], shift=True)
print("simplex:", solve(lp).objective + offset)
