"""Verify a few built-in 2- and 3-crossed modules, then break one table entry
and watch which axiom ids go red."""

from xmod import catalog
from xmod.axioms import verify_three_crossed, verify_two_crossed

for name in ["1->Z2->Z4", "Z3->Z3->1", "S3->S3->1"]:
    W = catalog.get(name)
    print(f"{name:12s} orders={W.orders()}  2cm axioms ok={verify_two_crossed(W).ok}")

T = catalog.get("from2cm(S3->S3->1)")
print(f"\n{T.name}: orders={T.orders()}  3cm axioms ok={verify_three_crossed(T).ok}")

# the inner S3 module has a nontrivial commutator lifting; flip one value
W = catalog.get("S3->S3->1")
bad = W.mutate("peiffer", (1, 2), 0)
rep = verify_two_crossed(bad)
print("\nafter peiffer[1,2] := e")
for i in rep.failed_ids():
    r = rep.result(i)
    print(f"  axiom {i:2d} ({r.name}) fails on {r.count}/{r.checked}, e.g. {r.witness}")
