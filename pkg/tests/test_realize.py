"""Linear-algebra realizations of finite-length modules.

The running examples live over GF(101)[x,y]/(x^2,y^2): length 4, socle
spanned by x*y in degree 2, so duals and Hom values can be written down by
hand.  Cross-checks against the Groebner-based module layer keep the two
backends honest against each other.
"""

import numpy as np
import pytest

from extlab.groebner import RingCtx
from extlab.modules import PresentedModule, hom_module, tensor_module
from extlab.poly import FieldSpec, PolyRing
from extlab.realize import (
    FiniteLengthRealization,
    FreeRealization,
    dual_realization,
    hom_realization,
    stable_hom_profile,
    tensor_realization,
)


@pytest.fixture(scope="module")
def nilpl():
    ring = PolyRing(FieldSpec(101), ("x", "y"))
    return RingCtx(ring, [ring.parse("x^2"), ring.parse("y^2")])


@pytest.fixture(scope="module")
def kmod(nilpl):
    return PresentedModule.residue_field(nilpl)


@pytest.fixture(scope="module")
def xcyc(nilpl):
    """R/(x): basis 1, y."""
    return PresentedModule.from_matrix(nilpl, [["x"]])


def test_ring_realization(nilpl):
    r = FiniteLengthRealization.of_ring(nilpl)
    assert r.dims == {0: 1, 1: 2, 2: 1}
    assert r.total_length() == 4
    assert r.socle_profile() == {2: 1}
    assert r.generator_profile() == {0: 1}


def test_from_module_dims(nilpl, kmod, xcyc):
    assert FiniteLengthRealization.from_module(kmod).dims == {0: 1}
    assert FiniteLengthRealization.from_module(xcyc).dims == {0: 1, 1: 1}
    big = xcyc.direct_sum(kmod.shifted(3))
    assert FiniteLengthRealization.from_module(big).dims == {0: 1, 1: 1, 3: 1}


def test_actions_square_to_zero(nilpl, xcyc):
    real = FiniteLengthRealization.from_module(xcyc)
    # y^2 = 0 in the ring, so acting twice by y must vanish.
    twice = real.action(1, 1) @ real.action(1, 0)
    assert not (twice % 101).any()


def test_matlis_dual_of_ring(nilpl):
    # Hom_k(R, k) = R(2) for this Gorenstein ring (socle in degree 2).
    r = FiniteLengthRealization.of_ring(nilpl)
    d = r.matlis_dual()
    assert d.dims == {-2: 1, -1: 2, 0: 1}
    assert d.socle_profile() == {0: 1}
    assert d.generator_profile() == {-2: 1}


def test_matlis_dual_to_presentation(nilpl, xcyc):
    # Hom_k(R/(x), k) = (R/(x))(1).
    real = FiniteLengthRealization.from_module(xcyc)
    back = real.matlis_dual().to_presentation()
    assert back == xcyc.minimal_presentation().shifted(-1)


def test_hom_realization_socle(nilpl, kmod):
    h = dual_realization(FiniteLengthRealization.from_module(kmod))
    assert h.dims == {2: 1}


def test_hom_realization_matches_module_layer(nilpl, kmod, xcyc):
    for a, b in [(kmod, kmod), (xcyc, xcyc), (kmod, xcyc), (xcyc, kmod)]:
        viareal = hom_realization(
            FiniteLengthRealization.from_module(a),
            FiniteLengthRealization.from_module(b),
        )
        viagb = FiniteLengthRealization.from_module(hom_module(a, b))
        assert viareal.dims == viagb.dims


def test_hom_from_ring_is_identity_on_dims(nilpl, xcyc):
    r = FiniteLengthRealization.of_ring(nilpl)
    m = FiniteLengthRealization.from_module(xcyc)
    assert hom_realization(r, m).dims == m.dims


def test_tensor_realization(nilpl, kmod, xcyc):
    r = FiniteLengthRealization.of_ring(nilpl)
    k = FiniteLengthRealization.from_module(kmod)
    m = FiniteLengthRealization.from_module(xcyc)
    assert tensor_realization(r, m).dims == m.dims
    assert tensor_realization(m, r).dims == m.dims
    assert tensor_realization(k, k).dims == {0: 1}
    # R/(x) (x) R/(x) = R/(x).
    assert tensor_realization(m, m).dims == m.dims


def test_tensor_matches_module_layer(nilpl, kmod, xcyc):
    viareal = tensor_realization(
        FiniteLengthRealization.from_module(xcyc),
        FiniteLengthRealization.from_module(kmod),
    )
    viagb = FiniteLengthRealization.from_module(tensor_module(xcyc, kmod))
    assert viareal.dims == viagb.dims


def test_to_presentation_roundtrip(nilpl, kmod, xcyc):
    for mod in (kmod, xcyc, PresentedModule.ring_module(nilpl)):
        back = FiniteLengthRealization.from_module(mod).to_presentation()
        assert back == mod.minimal_presentation()


def test_free_realization_coords(nilpl):
    fr = FreeRealization(nilpl, (0, 1))
    assert fr.dim(0) == 1 and fr.dim(1) == 3 and fr.dim(2) == 3 and fr.dim(3) == 1
    for d in range(0, 4):
        n = fr.dim(d)
        eye = np.eye(n, dtype=np.int64)
        for i in range(n):
            vec = fr.vec_of_coords(eye[:, i], d)
            assert (fr.coords_of_vec(vec, d) == eye[:, i]).all()


def test_free_matrix_from_counts_syzygies(nilpl, kmod):
    # Map R(-1)^2 -> R by (x, y): at degree 2 the kernel of the piece map
    # is 3-dimensional (a*x + b*y with b = -c plus two free parameters).
    from extlab.linalg import nullspace_mod

    f0 = FreeRealization(nilpl, (0,))
    f1 = FreeRealization(nilpl, (1, 1))
    mat = f0.matrix_from(f1, list(kmod.columns), 2)
    assert mat.shape == (1, 4)
    assert nullspace_mod(mat, 101).shape[1] == 3


def test_shift_realization(nilpl, kmod):
    real = FiniteLengthRealization.from_module(kmod)
    assert real.shifted(5).dims == {5: 1}


def test_zero_module(nilpl):
    z = FiniteLengthRealization.from_module(PresentedModule.zero(nilpl))
    assert z.is_zero()
    assert z.to_presentation().is_zero()
    assert hom_realization(z, z).is_zero()


def test_stable_hom_profile_hand_values(nilpl, kmod):
    # Hom(k, k) = k and the identity does not factor through a free module,
    # so one stable dimension survives in degree 0.
    assert stable_hom_profile(kmod, kmod) == {0: 1}
    # Everything out of a free module factors through it.
    free = PresentedModule.free(nilpl, (0,))
    assert stable_hom_profile(free, kmod) == {}
    # Maps k -> R land in the socle and extend to R -> R, so none survive.
    assert stable_hom_profile(kmod, free) == {}


def test_stable_hom_profile_matches_module_layer(nilpl, kmod, xcyc):
    from extlab.modules import dual_module, stable_hom
    from extlab.resolution import syzygy

    s1 = syzygy(kmod, 1)
    pairs = [(kmod, xcyc), (xcyc, kmod), (xcyc, xcyc),
             (s1, kmod), (s1, s1), (dual_module(s1), s1)]
    for a, b in pairs:
        prof = stable_hom_profile(a, b)
        ref = FiniteLengthRealization.from_module(stable_hom(a, b))
        assert prof == {d: ref.dim(d) for d in ref.degrees()}, (a, b)
