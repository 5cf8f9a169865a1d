"""
Meromorphic braiding
====================

Solve for the normalized intertwiner V(z) (x) W -> W (x) V(z) over Q(q, z),
read off where it blows up or degenerates, and check the braid relations.
"""

from qaffine import StandardDescriptor, braid_pair, braid_standard
from qaffine.braiding import determinant, elliptic_descent_report, mu_word

c = braid_pair(1, 0, 1, 0)
print("matrix:")
for row in c.matrix.rows:
    print("   ", [str(x) for x in row])
print("poles:", sorted(c.poles), " zeros:", sorted(c.zeros))

# Away from the singular set the specialization is an isomorphism.
print("det at z = q^4:", determinant(c.at(4)))
# At z = q^2 the matrix is finite but singular: the product is reducible there.
print("det at z = q^2:", determinant(c.at(2)))

# Composite braiding of a two-factor object past a third factor.
cs = braid_standard(StandardDescriptor.parse("V(1@0) * V(1@2)"), StandardDescriptor.parse("V(1@0)"))
print("composite poles:", sorted(cs.poles))

# Yang-Baxter and unitarity as exact matrix identities.
objs = [StandardDescriptor.parse(t) for t in ("V(1@0)", "V(2@2)", "V(1@0)")]
print("Yang-Baxter:", mu_word([0, 1, 0], objs) == mu_word([1, 0, 1], objs))
print("unitarity:", mu_word([0, 0], objs[:2]).is_identity())

report = elliptic_descent_report(1, 0, 1, 0, 4)
print("descent verdict at exponents", report["exponents"], "->", report["verdict"])
