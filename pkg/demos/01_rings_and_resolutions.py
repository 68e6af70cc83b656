"""Build quotient rings, resolve modules, and read Betti tables.

Run as a script; every step prints what it just computed.  The rings are
small enough that each answer can be checked against the closed formulas
quoted in the comments.
"""

from extlab.groebner import RingCtx
from extlab.modules import PresentedModule
from extlab.poly import FieldSpec, PolyRing
from extlab.resolution import minimal_free_resolution, resolution_of, syzygy

# A polynomial ring first.  With no relations the residue field is
# resolved by the Koszul complex: Betti numbers are binomials.
ring = PolyRing(FieldSpec(101), ("x", "y", "z"))
poly = RingCtx(ring, [])
k = PresentedModule.residue_field(poly)
print("Betti table of k over GF(101)[x,y,z]:")
print(minimal_free_resolution(k, 4)[1].render_text())

# Now an artinian Gorenstein quotient of length 5.  The residue field
# resolves forever; ranks follow b_{i+1} = 3 b_i - b_{i-1}.
gor = RingCtx(ring, [ring.parse(r) for r in
                     ("x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2")])
print(f"\nquotient ring: dimension {gor.dim}, length {gor.length}, "
      f"Hilbert function {[gor.hilbert_function(d) for d in range(4)]}")
kg = PresentedModule.residue_field(gor)
print("Betti table of k over the length-5 Gorenstein quotient:")
print(minimal_free_resolution(kg, 5)[1].render_text())

# Syzygies are modules in their own right and can be resolved further.
s2 = syzygy(kg, 2)
print(f"\nsecond syzygy of k: {s2.rank0} generators "
      f"in degrees {list(s2.row_twists)}")

# A resolution object is incremental: extending it reuses earlier steps.
res = resolution_of(kg)
res.extend_to(6)
print(f"ranks through step 6: {[res.rank(i) for i in range(7)]}")
