"""End to end: the three-site Yang-Baxter relation, verified exactly on
every basis monomial of total degree <= 1 (pass --degree 2 for the long
extended run).
"""

import sys
from fractions import Fraction as Q

from ybsl21 import Weight, check_ybe
from ybsl21.cli import format_text

degree = 2 if "--degree" in sys.argv and "2" in sys.argv else 1
report = check_ybe(Weight(Q(1), Q(1, 3)), Weight(Q(1, 2), Q(-2, 5)),
                   Weight(Q(3, 2), Q(2, 7)), Q(2), Q(1, 2),
                   max_degree=degree)
print(format_text(report))
