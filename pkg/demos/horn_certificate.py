"""Fill every inner horn of small colored nerves and print the certificate.

The 3-crossed case samples 5-dimensional horns; pass a larger count as the
first argument for a tighter check.
"""

import sys

from xmod import catalog
from xmod.horns import certify_quasi_category

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 100

for name in ["1->1->Z2", "1->Z2->Z2", "Z2->Z2->1"]:
    print(certify_quasi_category(catalog.get(name), n_max=4).summary(), "\n")

T = catalog.get("from2cm(1->Z2->Z2)")
print(certify_quasi_category(T, n_max=5, exhaustive_max=3, sample=samples, seed=1).summary())
