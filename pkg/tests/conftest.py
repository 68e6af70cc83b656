"""Shared ring fixtures for the whole suite.

All contexts are over GF(101).  The three quotient rings are the canned
geometry most tests revolve around:

* quadric: GF(101)[w,x,y,z]/(w*x - y*z), a three-dimensional hypersurface
  whose residue field has Betti numbers 1, 4, 7, 8, 8, 8, ...
* nilsquares: GF(101)[x,y]/(x^2, y^2), artinian complete intersection with
  Hilbert function 1, 2, 1 and socle x*y.
* gor5: GF(101)[x,y,z]/(x*y, x*z, y*z, x^2 - y^2, x^2 - z^2), artinian
  Gorenstein of length 5 with Hilbert function 1, 3, 1 and socle in
  degree 2; the residue field's Betti numbers satisfy
  b_{i+1} = 3 b_i - b_{i-1}: 1, 3, 8, 21, 55, ...
"""

import pytest

from extlab.groebner import RingCtx
from extlab.poly import FieldSpec, PolyRing


def make_ctx(names, rels=()):
    ring = PolyRing(FieldSpec(101), tuple(names))
    return RingCtx(ring, [ring.parse(r) for r in rels])


@pytest.fixture(scope="session")
def quadric():
    return make_ctx(("w", "x", "y", "z"), ("w*x - y*z",))


@pytest.fixture(scope="session")
def nilsquares():
    return make_ctx(("x", "y"), ("x^2", "y^2"))


@pytest.fixture(scope="session")
def gor5():
    return make_ctx(("x", "y", "z"), ("x*y", "x*z", "y*z", "x^2 - y^2", "x^2 - z^2"))


@pytest.fixture(scope="session")
def affine_plane():
    return make_ctx(("x", "y"))
