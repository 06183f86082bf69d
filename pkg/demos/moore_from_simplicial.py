"""Moore complexes of small simplicial groups and the 3-crossed modules on them."""

from xmod import catalog
from xmod.axioms import verify_three_crossed
from xmod.moore import check_property18, moore_complex, three_crossed_from_moore

for name in catalog.names("sgroup"):
    X = catalog.get(name)
    D = moore_complex(X)
    T = three_crossed_from_moore(X)
    print(f"{name:14s} X orders {str(X.orders()):28s} Moore {str(D.orders()):16s} "
          f"axioms={'ok' if verify_three_crossed(T).ok else 'FAIL'} "
          f"dh-action={'ok' if check_property18(X).ok else 'FAIL'}")
