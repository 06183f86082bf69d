"""Turn 2-crossed modules into 3-crossed modules and check the result.

The output groups are A, B x A, C x B, D where the input is C -> B -> A
sitting over D = A.  Both the full axiom list and the unit equations are
checked.
"""

import time

from xmod import catalog
from xmod.axioms import verify_three_crossed, verify_unit_lemma
from xmod.from2cm import three_crossed_from_two

for name in catalog.names("xmod2"):
    W = catalog.get(name)
    t = time.perf_counter()
    T = three_crossed_from_two(W)
    ok = verify_three_crossed(T).ok and verify_unit_lemma(T).ok
    print(f"{name:10s} {str(W.orders()):12s} -> {str(T.orders()):18s} "
          f"{'ok' if ok else 'FAIL'}  {time.perf_counter() - t:.2f}s")
