"""Finite-length graded modules as explicit linear data.

A realization stores, for a module of finite length, the dimension of every
graded piece and the matrix of each variable's multiplication map between
consecutive pieces.  Everything downstream (Hom, tensor, duals, socles,
minimal generators) is then plain linear algebra over GF(p), with no
Groebner steps.  The two viewpoints convert both ways:
`FiniteLengthRealization.from_module` reads the piece bases off a module's
Groebner basis, and `to_presentation` rebuilds a minimal presentation by
choosing generators with Nakayama and cutting out the kernel of the induced
cover.  Relations of that cover live in degrees at most top(M) + max weight,
because above the generators every piece of a free module is spanned by
variable multiples from one weight below.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvariantViolation
from .groebner import RingCtx, reduce_vec_by_ideal
from .linalg import (
    matmul_mod,
    nullspace_mod,
    rank_mod,
    rref_mod,
    solve_mod,
    standard_complement,
)
from .modules import PresentedModule
from .poly import Polynomial


class FiniteLengthRealization:
    """Graded pieces (dimensions) plus variable action matrices.

    `dims[d]` is the dimension of the degree-d piece (zero entries are
    dropped); `action(v, d)` is the matrix of multiplication by the v-th
    variable from degree d to degree d + weight(v), columns indexed by a
    fixed but unspecified basis of the source piece.
    """

    def __init__(self, ctx: RingCtx, dims: dict[int, int], actions: dict | None = None):
        self.ctx = ctx
        self.dims = {d: int(n) for d, n in dims.items() if n}
        self._act: dict[tuple[int, int], np.ndarray] = dict(actions or {})
        self._mono_act: dict[tuple[int, int], np.ndarray] = {}

    # -- piece access ---------------------------------------------------------

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def is_zero(self) -> bool:
        return not self.dims

    def total_length(self) -> int:
        return sum(self.dims.values())

    @property
    def bottom(self) -> int | None:
        return min(self.dims) if self.dims else None

    @property
    def top(self) -> int | None:
        return max(self.dims) if self.dims else None

    def action(self, var: int, d: int) -> np.ndarray:
        key = (var, d)
        hit = self._act.get(key)
        if hit is None:
            hit = self._build_action(var, d)
            self._act[key] = hit
        return hit

    def _build_action(self, var: int, d: int) -> np.ndarray:
        w = self.ctx.ring.weights[var]
        return np.zeros((self.dim(d + w), self.dim(d)), dtype=np.int64)

    def monomial_action(self, mono: int, d: int) -> np.ndarray:
        """Matrix of multiplication by a packed ring monomial from degree d."""
        ring = self.ctx.ring
        if mono == ring.unit_key:
            return np.eye(self.dim(d), dtype=np.int64)
        key = (mono, d)
        hit = self._mono_act.get(key)
        if hit is not None:
            return hit
        exps = ring.decode_monomial(mono)
        v = next(i for i, e in enumerate(exps) if e)
        rest = list(exps)
        rest[v] -= 1
        sub = ring.encode_monomial(tuple(rest))
        inner = self.monomial_action(sub, d)
        out = matmul_mod(
            self.action(v, d + ring.mono_degree(sub)), inner, self.ctx.ring.field.p
        )
        self._mono_act[key] = out
        return out

    def poly_action(self, f_raw: dict[int, int], d: int, shift: int) -> np.ndarray:
        """Matrix of multiplication by a homogeneous f of degree `shift`."""
        p = self.ctx.ring.field.p
        out = np.zeros((self.dim(d + shift), self.dim(d)), dtype=np.int64)
        for mono, c in f_raw.items():
            out = (out + c * self.monomial_action(mono, d)) % p
        return out

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: RingCtx) -> "FiniteLengthRealization":
        return cls(ctx, {})

    @classmethod
    def from_module(cls, mod: PresentedModule) -> "FiniteLengthRealization":
        """Read the pieces off the module's Groebner basis.

        The degree-d basis consists of pairs (generator j, standard monomial
        m) whose key is reduced with respect to the basis leads; the action
        of a variable is computed by one normal form per basis element.
        """
        hit = mod._cache.get("real")
        if hit is not None:
            return hit
        ctx = mod.ctx
        hf = mod._finite_hf()
        if hf is None:
            raise ValueError("module has infinite length")
        ring = ctx.ring
        codec = ctx.codec
        p = ring.field.p
        gbv = mod.gb()
        leads: list[list[int]] = [[] for _ in range(mod.rank0)]
        for vec in gbv:
            k = max(vec)
            leads[codec.comp_of(k)].append(codec.mono_of(k))
        divides = ring.mono_divides
        basis: dict[int, list[int]] = {}
        index: dict[int, dict[int, int]] = {}
        if hf:
            lo, hi = min(hf), max(hf)
            for d in range(lo, hi + 1):
                keys = []
                for j, tw in enumerate(mod.row_twists):
                    for m in ctx.std_monomials(d - tw):
                        if not any(divides(L, m) for L in leads[j]):
                            keys.append(codec.mkey(m, j))
                if len(keys) != hf.get(d, 0):
                    raise InvariantViolation(
                        f"piece basis size {len(keys)} != series value {hf.get(d, 0)}"
                    )
                if keys:
                    basis[d] = keys
                    index[d] = {k: i for i, k in enumerate(keys)}
        dims = {d: len(ks) for d, ks in basis.items()}
        actions: dict[tuple[int, int], np.ndarray] = {}
        for v in range(ring.nvars):
            w = ring.weights[v]
            vkey = ring._var_keys[v]
            for d, keys in basis.items():
                tgt = index.get(d + w)
                if tgt is None:
                    continue
                mat = np.zeros((len(tgt), len(keys)), dtype=np.int64)
                for col, k in enumerate(keys):
                    shifted = k + codec.delta(vkey)
                    red = gbv.reduce(reduce_vec_by_ideal({shifted: 1}, ctx))
                    for kk, c in red.items():
                        mat[tgt[kk], col] = c
                actions[(v, d)] = mat % p
        real = cls(ctx, dims, actions)
        mod._cache["real"] = real
        return real

    @classmethod
    def of_ring(cls, ctx: RingCtx) -> "FiniteLengthRealization":
        hit = ctx.scratch.get("ring_real")
        if hit is None:
            if not ctx.is_artinian:
                raise ValueError("ring realization needs an artinian context")
            dims = dict(ctx._hf)
            actions = {}
            for v in range(ctx.ring.nvars):
                for d in range(ctx.top_degree + 1):
                    actions[(v, d)] = ctx.action_matrix(v, d)
            hit = cls(ctx, dims, actions)
            ctx.scratch["ring_real"] = hit
        return hit

    # -- derived data --------------------------------------------------------------

    def generator_profile(self) -> dict[int, int]:
        """dim of (M / mM)_d for each d: minimal generator counts."""
        p = self.ctx.ring.field.p
        weights = self.ctx.ring.weights
        out = {}
        for d, n in self.dims.items():
            blocks = [
                self.action(v, d - w)
                for v, w in enumerate(weights)
                if self.dim(d - w)
            ]
            r = rank_mod(np.hstack(blocks), p) if blocks else 0
            if n - r:
                out[d] = n - r
        return out

    def socle_profile(self) -> dict[int, int]:
        """dim of the socle (elements killed by every variable) per degree."""
        p = self.ctx.ring.field.p
        out = {}
        for d, n in self.dims.items():
            stacked = np.vstack([self.action(v, d) for v in range(self.ctx.ring.nvars)])
            r = rank_mod(stacked, p) if stacked.size else 0
            if n - r:
                out[d] = n - r
        return out

    def _materialize(self):
        for v in range(self.ctx.ring.nvars):
            for d in self.dims:
                self.action(v, d)

    def shifted(self, s: int) -> "FiniteLengthRealization":
        self._materialize()
        dims = {d + s: n for d, n in self.dims.items()}
        acts = {(v, d + s): m for (v, d), m in self._act.items()}
        return FiniteLengthRealization(self.ctx, dims, acts)

    def matlis_dual(self) -> "FiniteLengthRealization":
        """Graded vector-space dual: piece d becomes piece -d, actions
        become transposes one weight over."""
        weights = self.ctx.ring.weights
        dims = {-d: n for d, n in self.dims.items()}
        acts = {}
        for v, w in enumerate(weights):
            for d in self.dims:
                src = self.action(v, d)  # M_d -> M_{d+w}
                if src.size:
                    acts[(v, -d - w)] = src.T.copy()
        return FiniteLengthRealization(self.ctx, dims, acts)

    # -- back to a presentation ---------------------------------------------------

    def to_presentation(self) -> PresentedModule:
        """Minimal presentation built from generators chosen by Nakayama."""
        ctx = self.ctx
        ring = ctx.ring
        p = ring.field.p
        if self.is_zero():
            return PresentedModule.zero(ctx)
        weights = ring.weights
        gens: list[tuple[int, np.ndarray]] = []  # (degree, coordinate vector)
        for d in self.degrees():
            blocks = [
                self.action(v, d - w) for v, w in enumerate(weights) if self.dim(d - w)
            ]
            span = (
                np.hstack(blocks)
                if blocks
                else np.zeros((self.dim(d), 0), dtype=np.int64)
            )
            for i in standard_complement(span, p):
                e = np.zeros(self.dim(d), dtype=np.int64)
                e[i] = 1
                gens.append((d, e))
        twists = tuple(d for d, _ in gens)
        fr = FreeRealization(ctx, twists)
        # Images of the free basis elements (s, m): act the monomial on gen s.
        def images(d: int) -> np.ndarray:
            cols = []
            for s, m in fr.basis(d):
                a, g = gens[s][0], gens[s][1]
                col = matmul_mod(self.monomial_action(m, a), g.reshape(-1, 1), p)
                cols.append(col[:, 0] if self.dim(d) else np.zeros(0, dtype=np.int64))
            if not cols:
                return np.zeros((self.dim(d), 0), dtype=np.int64)
            return np.column_stack(cols)

        lo = min(twists)
        hi = (self.top or 0) + max(weights)
        kernels: dict[int, np.ndarray] = {}
        for d in range(lo, hi + 1):
            if fr.dim(d) == 0:
                continue
            kernels[d] = nullspace_mod(images(d), p)
        cols = []
        for d, K in kernels.items():
            if K.shape[1] == 0:
                continue
            mk_blocks = []
            for v, w in enumerate(weights):
                prev = kernels.get(d - w)
                if prev is not None and prev.shape[1]:
                    mk_blocks.append(matmul_mod(fr.action(v, d - w), prev, p))
            if mk_blocks:
                inside = solve_mod(K, np.hstack(mk_blocks), p)
                if inside is None:
                    raise InvariantViolation("m * kernel escaped the kernel")
            else:
                inside = np.zeros((K.shape[1], 0), dtype=np.int64)
            for i in standard_complement(inside, p):
                cols.append(fr.vec_of_coords(K[:, i], d))
        return PresentedModule(ctx, twists, cols)


class FreeRealization(FiniteLengthRealization):
    """Free module over an artinian context, with its basis kept explicit.

    The degree-d basis lists pairs (component s, standard monomial m) in
    component-major order, so packed vectors convert to coordinate vectors
    and back.
    """

    def __init__(self, ctx: RingCtx, twists: Sequence[int]):
        if not ctx.is_artinian:
            raise ValueError("free realization needs an artinian context")
        self.twists = tuple(int(t) for t in twists)
        self._basis: dict[int, list[tuple[int, int]]] = {}
        self._index: dict[int, dict[int, int]] = {}
        dims = {}
        if self.twists:
            lo = min(self.twists)
            hi = max(self.twists) + ctx.top_degree
            for d in range(lo, hi + 1):
                pairs = []
                for s, tw in enumerate(self.twists):
                    for m in ctx.std_monomials(d - tw):
                        pairs.append((s, m))
                if pairs:
                    self._basis[d] = pairs
                    dims[d] = len(pairs)
        super().__init__(ctx, dims)
        codec = ctx.codec
        for d, pairs in self._basis.items():
            self._index[d] = {codec.mkey(m, s): i for i, (s, m) in enumerate(pairs)}

    def basis(self, d: int) -> list[tuple[int, int]]:
        return self._basis.get(d, [])

    def _build_action(self, var: int, d: int) -> np.ndarray:
        ctx = self.ctx
        w = ctx.ring.weights[var]
        mat = np.zeros((self.dim(d + w), self.dim(d)), dtype=np.int64)
        tgt = self._index.get(d + w)
        if tgt is None or not self.dim(d):
            return mat
        codec = ctx.codec
        col = 0
        for s, tw in enumerate(self.twists):
            block = ctx.action_matrix(var, d - tw)
            src_monos = ctx.std_monomials(d - tw)
            dst_monos = ctx.std_monomials(d - tw + w)
            for j, m in enumerate(src_monos):
                for i, mm in enumerate(dst_monos):
                    if block[i, j]:
                        mat[tgt[codec.mkey(mm, s)], col + j] = block[i, j]
            col += len(src_monos)
        return mat

    def coords_of_vec(self, vec: dict, d: int) -> np.ndarray:
        out = np.zeros(self.dim(d), dtype=np.int64)
        idx = self._index.get(d, {})
        for k, c in vec.items():
            out[idx[k]] = c
        return out

    def vec_of_coords(self, coords: np.ndarray, d: int) -> dict:
        codec = self.ctx.codec
        pairs = self.basis(d)
        return {
            codec.mkey(m, s): int(c) % self.ctx.ring.field.p
            for (s, m), c in zip(pairs, coords)
            if c % self.ctx.ring.field.p
        }

    def matrix_from(self, source: "FreeRealization", cols: Sequence[dict], d: int) -> np.ndarray:
        """Matrix (this piece d) x (source piece d) of the map whose column
        vectors over this free module are `cols`, one per source component."""
        ctx = self.ctx
        codec = ctx.codec
        out = np.zeros((self.dim(d), source.dim(d)), dtype=np.int64)
        for j, (s, m) in enumerate(source.basis(d)):
            if not cols[s]:
                continue
            moved = {k + codec.delta(m): c for k, c in cols[s].items()}
            red = reduce_vec_by_ideal(moved, ctx)
            for k, c in red.items():
                out[self._index[d][k], j] = c
        return out


# -- binary constructions ------------------------------------------------------


def hom_realization(
    a: FiniteLengthRealization, b: FiniteLengthRealization
) -> FiniteLengthRealization:
    """Hom_R(a, b) as a realization.

    A degree-d element is a family of matrices phi_e : a_e -> b_{e+d}
    commuting with every variable action; the pieces are nullspaces of the
    assembled commutation constraints, and the variable actions postcompose
    with b's action and re-express in the chosen nullspace bases.
    """
    return _hom_realization_data(a, b)[0]


def _hom_realization_data(a, b):
    """hom_realization plus its ambient layouts and nullspace bases.

    layouts[d][e] is the offset of the phi_e block (rows b.dim(e+d) by
    a.dim(e), flattened with the target index major) inside the ambient
    degree-d coordinate space; bases[d] holds the chosen basis of the hom
    piece as columns over that space.
    """
    ctx = a.ctx
    if b.ctx is not ctx:
        raise ValueError("hom across different contexts")
    p = ctx.ring.field.p
    weights = ctx.ring.weights
    if a.is_zero() or b.is_zero():
        return FiniteLengthRealization.zero(ctx), {}, {}
    adegs = a.degrees()
    dmin = b.bottom - a.top
    dmax = b.top - a.bottom

    layouts: dict[int, dict[int, int]] = {}
    totals: dict[int, int] = {}
    for d in range(dmin, dmax + 1):
        offs = {}
        u = 0
        for e in adegs:
            if b.dim(e + d):
                offs[e] = u
                u += b.dim(e + d) * a.dim(e)
        if u:
            layouts[d] = offs
            totals[d] = u

    bases: dict[int, np.ndarray] = {}
    for d, offs in layouts.items():
        u = totals[d]
        rows = []
        for v, w in enumerate(weights):
            for e in adegs:
                out_rows = b.dim(e + d + w) * a.dim(e)
                if not out_rows:
                    continue
                block = np.zeros((out_rows, u), dtype=np.int64)
                touched = False
                if e + w in offs and a.dim(e + w):
                    av = a.action(v, e)
                    seg = np.kron(np.eye(b.dim(e + d + w), dtype=np.int64), av.T)
                    o = offs[e + w]
                    block[:, o : o + b.dim(e + d + w) * a.dim(e + w)] = seg
                    touched = touched or av.any()
                if e in offs:
                    bv = b.action(v, e + d)
                    seg = np.kron(bv, np.eye(a.dim(e), dtype=np.int64))
                    o = offs[e]
                    block[:, o : o + b.dim(e + d) * a.dim(e)] = (
                        block[:, o : o + b.dim(e + d) * a.dim(e)] - seg
                    ) % p
                    touched = touched or bv.any()
                if touched:
                    rows.append(block % p)
        system = np.vstack(rows) if rows else np.zeros((0, u), dtype=np.int64)
        null = nullspace_mod(system, p)
        if null.shape[1]:
            bases[d] = null

    dims = {d: nb.shape[1] for d, nb in bases.items()}
    actions: dict[tuple[int, int], np.ndarray] = {}
    for v, w in enumerate(weights):
        for d, nb in bases.items():
            tb = bases.get(d + w)
            if tb is None:
                continue
            image = np.zeros((totals[d + w], nb.shape[1]), dtype=np.int64)
            offs_d = layouts[d]
            offs_t = layouts[d + w]
            for e, o_t in offs_t.items():
                rows_t = b.dim(e + d + w) * a.dim(e)
                if e not in offs_d:
                    continue
                bv = b.action(v, e + d)
                if not bv.size:
                    continue
                o_s = offs_d[e]
                rows_s = b.dim(e + d) * a.dim(e)
                seg = matmul_mod(
                    np.kron(bv, np.eye(a.dim(e), dtype=np.int64)),
                    nb[o_s : o_s + rows_s, :],
                    p,
                )
                image[o_t : o_t + rows_t, :] = seg
            coords = solve_mod(tb, image, p)
            if coords is None:
                raise InvariantViolation("variable action left the hom space")
            actions[(v, d)] = coords
    return FiniteLengthRealization(ctx, dims, actions), layouts, bases


def tensor_realization(
    a: FiniteLengthRealization, b: FiniteLengthRealization
) -> FiniteLengthRealization:
    """a (x)_R b as a realization.

    The ambient degree-d space is (+)_e a_e (x) b_{d-e}; dividing by the
    span of (x*u) (x) w - u (x) (x*w) leaves the tensor product over the
    ring.  Pieces are tracked as the non-pivot coordinates of that span's
    reduced echelon form.
    """
    ctx = a.ctx
    if b.ctx is not ctx:
        raise ValueError("tensor across different contexts")
    p = ctx.ring.field.p
    weights = ctx.ring.weights
    if a.is_zero() or b.is_zero():
        return FiniteLengthRealization.zero(ctx)
    adegs = a.degrees()

    layouts: dict[int, dict[int, int]] = {}
    totals: dict[int, int] = {}
    for d in range(a.bottom + b.bottom, a.top + b.top + 1):
        offs = {}
        u = 0
        for e in adegs:
            if b.dim(d - e):
                offs[e] = u
                u += a.dim(e) * b.dim(d - e)
        if u:
            layouts[d] = offs
            totals[d] = u

    # Relation span, echelon data, and the projection to free coordinates.
    proj: dict[int, tuple[np.ndarray, list[int], np.ndarray]] = {}
    for d, offs in layouts.items():
        u = totals[d]
        cols = []
        for v, w in enumerate(weights):
            for e in adegs:
                ad, bd = a.dim(e), b.dim(d - w - e)
                if not (ad and bd):
                    continue
                # Columns indexed by basis pairs (i < ad, j < bd), row-major.
                block = np.zeros((u, ad * bd), dtype=np.int64)
                if e + w in offs:
                    av = a.action(v, e)  # a_{e+w} x a_e
                    seg = np.kron(av, np.eye(bd, dtype=np.int64))
                    o = offs[e + w]
                    block[o : o + a.dim(e + w) * bd, :] = seg
                if e in offs:
                    bv = b.action(v, d - w - e)  # b_{d-e} x b_{d-w-e}
                    seg = np.kron(np.eye(ad, dtype=np.int64), bv)
                    o = offs[e]
                    block[o : o + ad * b.dim(d - e), :] = (
                        block[o : o + ad * b.dim(d - e), :] - seg
                    ) % p
                if block.any():
                    cols.append(block % p)
        span = np.hstack(cols) if cols else np.zeros((u, 0), dtype=np.int64)
        red, piv = rref_mod(span.T, p)
        in_piv = np.zeros(u, dtype=bool)
        if piv:
            in_piv[np.array(piv)] = True
        free = np.nonzero(~in_piv)[0]
        proj[d] = (red[: len(piv), :], piv, free)

    def project(d: int, umat: np.ndarray) -> np.ndarray:
        red, piv, free = proj[d]
        if len(piv):
            umat = (umat - red.T @ umat[np.array(piv), :]) % p
        return umat[free, :]

    dims = {d: len(proj[d][2]) for d in proj if len(proj[d][2])}
    actions: dict[tuple[int, int], np.ndarray] = {}
    for v, w in enumerate(weights):
        for d in dims:
            if (d + w) not in proj or not len(proj[d + w][2]):
                continue
            free = proj[d][2]
            offs_d = layouts[d]
            offs_t = layouts[d + w]
            amb = np.zeros((totals[d + w], len(free)), dtype=np.int64)
            for col, flat in enumerate(free):
                # Locate (e, i, j) for the flat ambient index.
                e = max(ee for ee, off in offs_d.items() if off <= flat)
                i, j = divmod(flat - offs_d[e], b.dim(d - e))
                if e + w in offs_t:
                    av = a.action(v, e)
                    o = offs_t[e + w]
                    rows = av[:, i]
                    for ii, cval in enumerate(rows):
                        if cval:
                            amb[o + ii * b.dim(d - e) + j, col] = cval
            actions[(v, d)] = project(d + w, amb)
    return FiniteLengthRealization(ctx, dims, actions)


def dual_realization(a: FiniteLengthRealization) -> FiniteLengthRealization:
    """Hom(a, R): functionals into the ring itself."""
    return hom_realization(a, FiniteLengthRealization.of_ring(a.ctx))


def stable_hom_profile(a_mod: PresentedModule, b_mod: PresentedModule) -> dict[int, int]:
    """Graded dimensions of Hom(a, b) modulo maps factoring through frees.

    A map factors through a free module exactly when it lies in the image
    of the evaluation pairing Hom(a, R) (x) b -> Hom(a, b) sending u (x) n
    to m -> u(m) n, so the stable dimension in each degree is the hom piece
    minus the rank of those evaluation columns.  Everything happens on the
    realizations; no Groebner work beyond building them once.
    """
    ctx = a_mod.ctx
    if b_mod.ctx is not ctx:
        raise ValueError("stable hom arguments live over different contexts")
    key = ("sthom_prof", b_mod.value_key())
    hit = a_mod._cache.get(key)
    if hit is not None:
        return dict(hit)
    p = ctx.ring.field.p
    A = FiniteLengthRealization.from_module(a_mod)
    B = FiniteLengthRealization.from_module(b_mod)
    H, hlay, hbases = _hom_realization_data(A, B)
    out: dict[int, int] = {}
    if not H.is_zero():
        R = FiniteLengthRealization.of_ring(ctx)
        U, ulay, ubases = _hom_realization_data(A, R)
        for d in H.degrees():
            offs = hlay[d]
            basis = hbases[d]
            cols = []
            for f, ub in ubases.items():
                bn = B.dim(d - f)
                if not bn:
                    continue
                uoffs = ulay[f]
                nu = ub.shape[1]
                block = np.zeros((basis.shape[0], nu * bn), dtype=np.int64)
                placed = False
                for e, o in offs.items():
                    if e not in uoffs:
                        continue  # every functional vanishes on a_e
                    ad, bd_out = A.dim(e), B.dim(e + d)
                    re = R.dim(e + f)
                    uo = uoffs[e]
                    ue = ub[uo : uo + re * ad, :].reshape(re, ad, nu)
                    acts = np.stack(
                        [B.monomial_action(m, d - f) for m in ctx.std_monomials(e + f)]
                    )
                    phi = np.einsum("rmu,rbn->bmun", ue, acts) % p
                    block[o : o + bd_out * ad, :] = phi.reshape(bd_out * ad, nu * bn)
                    placed = True
                if placed:
                    cols.append(block)
            if cols:
                coords = solve_mod(basis, np.hstack(cols) % p, p)
                if coords is None:
                    raise InvariantViolation("evaluation image left the hom space")
                stable = H.dim(d) - rank_mod(coords, p)
            else:
                stable = H.dim(d)
            if stable:
                out[d] = stable
    a_mod._cache[key] = dict(out)
    return out


def matlis_dual_module(mod: PresentedModule) -> PresentedModule:
    """Graded Matlis dual of a finite-length module, as a presentation.

    Pieces transpose and degrees negate, so the result of applying this
    twice is the original module again (up to canonical presentation).
    """
    hit = mod._cache.get("matlis")
    if hit is None:
        hit = FiniteLengthRealization.from_module(mod).matlis_dual().to_presentation()
        mod._cache["matlis"] = hit
    return hit


def socle_module(ctx: RingCtx) -> PresentedModule:
    """The socle of the ring as an abstract module: one residue-field copy
    per socle dimension, placed in the socle degrees."""
    twists: list[int] = []
    for d, s in enumerate(ctx.socle_dims()):
        twists.extend([d] * s)
    ring = ctx.ring
    cols = []
    for j in range(len(twists)):
        for v in range(ring.nvars):
            cols.append({ctx.codec.mkey(ring._var_keys[v], j): 1})
    return PresentedModule(ctx, tuple(twists), cols)


def socle_generators(ctx: RingCtx) -> list[Polynomial]:
    """Polynomials spanning the socle of the ring, lowest degree first."""
    real = FiniteLengthRealization.of_ring(ctx)
    out = []
    for d, cnt in sorted(real.socle_profile().items()):
        std = ctx.std_monomials(d)
        weights = ctx.ring.weights
        blocks = [real.action(v, d) for v in range(ctx.ring.nvars) if real.dim(d + weights[v])]
        if blocks:
            basis = nullspace_mod(np.vstack(blocks), ctx.ring.field.p)
        else:
            basis = np.eye(real.dim(d), dtype=np.int64)
        # std_monomials lists descending; realization bases follow that order.
        for c in range(basis.shape[1]):
            raw = {std[i]: int(basis[i, c]) for i in range(len(std)) if basis[i, c]}
            out.append(Polynomial(ctx.ring, raw))
    return out
