"""List levels where the beta_1 / beta_p old-space rows fail to be saturated.

    python scripts/saturation_survey.py 200
"""

import sys

from oldcong.linalg import saturation_index
from oldcong.oldspace import oldspace_matrix

limit = int(sys.argv[1]) if len(sys.argv) > 1 else 120
for N in range(2, limit + 1):
    M = oldspace_matrix(N)
    if M.matrix.nrows:
        idx = saturation_index(M.matrix)
        if idx != 1:
            print(f"N={N:<5} rows={M.matrix.nrows:<3} index={idx}")
