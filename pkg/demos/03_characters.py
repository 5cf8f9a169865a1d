"""
q-characters and Grothendieck classes
=====================================

Compare q-characters of products with the sum over composition factors and
express classes as polynomials in the t_k.
"""

from qaffine import StandardDescriptor, decompose_descriptor
from qaffine.qchar import (
    character_of_descriptor,
    dominant_term,
    k0_class,
    qchar_evaluation,
    specialize,
)

for n in range(4):
    chi = qchar_evaluation(n, 0)
    print(f"chi(V({n}@0)) = {chi}    dominant: {dominant_term(chi)}")

print("specialized chi(V(2@0)):", specialize(qchar_evaluation(2, 0)))

d = StandardDescriptor.parse("V(1@0) * V(1@2)")
factors = decompose_descriptor(d).factors
total = character_of_descriptor(factors[0])
for f in factors[1:]:
    total = total + character_of_descriptor(f)
print("chi(product) == sum over factors:", total == character_of_descriptor(d))

for text in ["V(1@6)", "V(2@0)", "V(3@0)", "V(1@0) * V(1@4)"]:
    print(f"[{text}] = {k0_class(StandardDescriptor.parse(text))}")
