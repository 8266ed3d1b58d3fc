"""Recompute fixture modular degrees as full congruence numbers (valid at squarefree N).

    python scripts/fixture_degrees.py
"""

import sys
from pathlib import Path

root = Path(__file__).parent.parent
sys.path.insert(0, str(root / "tests"))

from oracles import full_congruence_number  # noqa: E402

from oldcong.documents import load_curve  # noqa: E402

for path in sorted((root / "tests" / "data").glob("curve*.json"), key=lambda p: int(p.stem[5:])):
    E = load_curve(path)
    r = full_congruence_number(E)
    flag = "" if r == E.modular_degree else "  <-- differs from stored value"
    print(f"{E.label:<10} N={E.level:<5} stored={E.modular_degree:<4} congruence number={r}{flag}")
