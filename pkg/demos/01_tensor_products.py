"""
Tensor products of evaluation modules
=====================================

Build two-dimensional evaluation modules, tensor them, and watch the
product split exactly when the q-strings touch.
"""

from qaffine import StandardDescriptor, decompose_descriptor, generic_position, qstring
from qaffine.repdecomp import minimal_submodules
from qaffine.uqsl2 import module_of

# V(1@0) has q-string {0}; V(1@2) has {2}; V(1@4) has {4}.
for left, right in [(0, 2), (2, 0), (0, 4)]:
    d = StandardDescriptor(((1, left), (1, right)))
    generic = generic_position(qstring(1, left), qstring(1, right))
    series = decompose_descriptor(d)
    print(f"{d}:  generic={generic}  factors={[str(f) for f in series.factors]}"
          f"  ranks={series.ranks}")

# The reducible product has a unique minimal submodule.
M = module_of(StandardDescriptor.parse("V(1@0) * V(1@2)"))
print("minimal submodule dimensions:", [s.dim for s in minimal_submodules(M)])

# Three touching strings give three factors.
series = decompose_descriptor(StandardDescriptor.parse("V(1@0) * V(1@2) * V(1@4)"))
print("string of three:", [str(f) for f in series.factors], series.ranks)
