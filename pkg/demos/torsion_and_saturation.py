"""Kernels over Z versus over Q, and where torsion breaks the comparison.

For a map into a torsion-free group, the integral kernel is exactly the
lattice points of the rational kernel.  Into Z/2 this fails: the rational
kernel of Z -> Z/2 is everything, the integral one is 2Z.
"""

from noricat.category import CMorphism, cokernel, forgetful, hom_at_stage, kernel, tilde_T
from noricat.criterion import kernel_saturation_identity
from noricat.diagram import Representation, diagram_from_arrows
from noricat.linalg import IntMat, smith_normal_form

s = kernel_saturation_identity(IntMat([[1, 2]], 1, 2))
print("x + 2y:       ker_Z =", s.kernel_Z.col(0), " identity holds:", s.holds)
s = kernel_saturation_identity(IntMat([[1]], 1, 1), IntMat([[2]], 1, 1))
print("Z -> Z/2:     ker_Z =", s.kernel_Z.col(0), " lattice cap ker_Q =", s.kernel_Q_cap.col(0),
      " identity holds:", s.holds)

# the same torsion shows up as objects: Z --4--> Z --6--> Z
D = diagram_from_arrows(["p"], [])
T = Representation(D, "Z", {"p": 1}, {})
Z1 = tilde_T(T, D, "p")
Z4 = cokernel(CMorphism(Z1, Z1, IntMat([[4]], 1, 1)))
Z6 = cokernel(CMorphism(Z1, Z1, IntMat([[6]], 1, 1)))
print("objects:", forgetful(Z4), "and", forgetful(Z6))
print("Hom(Z/4, Z/6) =", hom_at_stage(Z4, Z6).group)

f = CMorphism(Z4, Z6, IntMat([[3]], 1, 1))
print("x -> 3x from Z/4 to Z/6: kernel", forgetful(kernel(f)), ", cokernel", forgetful(cokernel(f)))

print("Smith form of [[2, 4], [6, 8]]:", smith_normal_form(IntMat([[2, 4], [6, 8]], 2, 2)).diagonal)
