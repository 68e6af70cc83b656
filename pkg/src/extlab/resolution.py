"""Minimal free resolutions and the derived-functor calculator on top.

A `Resolution` is grown lazily one syzygy step at a time, with two
interchangeable engines: a Groebner one (works over any context) and a
degreewise linear-algebra one for artinian contexts, where every kernel is
a finite-dimensional nullspace and generators come from graded Nakayama.
Both produce minimal resolutions, so ranks are Betti numbers as computed.

Derived functors come in two flavours that share no code path:

* `ext` / `tor` resolve the first argument and take homology of the
  induced Hom or tensor complex, producing actual presented modules;
* `ext_via_complete` / `tor_via_complete` pass through a high syzygy and
  its dual, exchanging the two functors against each other.  This route is
  only valid over a Gorenstein context for maximal Cohen-Macaulay input,
  in a window of indices determined by how far the syzygy was taken.

Agreement of the two routes on their common range is a regression anchor,
not an implementation convenience: they must stay independent.

Negative indices are served by `CompleteResolution`, which splices the
resolution of the dual module (transposed) onto the positive half through
an explicit pairing differential in homological degree zero.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

import numpy as np

from .errors import HypothesisNotMet, InvariantViolation, ResourceCapError
from .groebner import RingCtx, express_in_family, syzygies_for, tagged_module_gb
from .linalg import matmul_mod, nullspace_mod, rank_mod, solve_mod, standard_complement
from .modules import (
    ModuleMap,
    PresentedModule,
    _entry_of,
    _split_entries,
    dual_module,
    dual_with_functionals,
    minimal_generator_indices,
    minimal_generators,
    tensor_module,
    vec_degree,
    vec_from_entries,
)
from .realize import FiniteLengthRealization, FreeRealization


# -- resolutions ---------------------------------------------------------------


def _free_real(ctx: RingCtx, twists: Sequence[int]) -> FreeRealization:
    cache = ctx.scratch.setdefault("free_real", {})
    key = tuple(twists)
    hit = cache.get(key)
    if hit is None:
        hit = FreeRealization(ctx, key)
        cache[key] = hit
    return hit


def _canonical_columns(ctx, cols, twists):
    """Monic columns sorted by (degree, lead), with their degrees."""
    p = ctx.ring.field.p
    out = []
    for c in cols:
        lead = max(c)
        inv = pow(c[lead], p - 2, p)
        out.append(c if inv == 1 else {k: (v * inv) % p for k, v in c.items()})
    degs = [vec_degree(ctx, c, twists) for c in out]
    order = sorted(range(len(out)), key=lambda i: (degs[i], max(out[i])))
    return [out[i] for i in order], tuple(degs[i] for i in order)


def _kernel_generators_linear(ctx, cols, cur, prev):
    """Minimal generators of ker((+)R(-cur) -> (+)R(-prev)), artinian ctx.

    Walks degrees upward; in each one the kernel is a nullspace and the new
    generators are a complement of the image of the kernels one weight
    below (graded Nakayama).
    """
    p = ctx.ring.field.p
    fsrc = _free_real(ctx, cur)
    ftgt = _free_real(ctx, prev)
    weights = ctx.ring.weights
    kernels: dict[int, np.ndarray] = {}
    out = []
    for d in sorted(fsrc.degrees()):
        if ftgt.dim(d):
            mat = ftgt.matrix_from(fsrc, cols, d)
        else:
            mat = np.zeros((0, fsrc.dim(d)), dtype=np.int64)
        K = nullspace_mod(mat, p)
        kernels[d] = K
        if not K.shape[1]:
            continue
        blocks = []
        for v, w in enumerate(weights):
            below = kernels.get(d - w)
            if below is not None and below.shape[1]:
                blocks.append(matmul_mod(fsrc.action(v, d - w), below, p))
        if blocks:
            coords = solve_mod(K, np.hstack(blocks), p)
            if coords is None:
                raise InvariantViolation("kernel not closed under the ring action")
        else:
            coords = np.zeros((K.shape[1], 0), dtype=np.int64)
        for i in standard_complement(coords, p):
            out.append(fsrc.vec_of_coords(K[:, i], d))
    return out


class Resolution:
    """Lazily extended minimal graded free resolution.

    `twists_of(i)` lists the generator degrees of the i-th term and
    `diff(i)` the columns of d_i : F_i -> F_{i-1}.  Once a step produces no
    generators the projective dimension is recorded and all later terms
    are zero.  Extension is serialized by a lock; readers of already
    computed data are safe.
    """

    def __init__(self, module: PresentedModule, backend: str = "auto"):
        self.module = module.minimal_presentation()
        self.ctx = module.ctx
        if backend == "auto":
            backend = "linear" if self.ctx.is_artinian else "groebner"
        if backend not in ("linear", "groebner"):
            raise ValueError(f"unknown backend {backend!r}")
        if backend == "linear" and not self.ctx.is_artinian:
            raise ValueError("the linear backend needs an artinian context")
        self.backend = backend
        self._twists: list[tuple[int, ...]] = [tuple(self.module.row_twists)]
        self._diffs: list[list[dict]] = []
        # -1 marks the zero module (empty resolution).
        self._pd: int | None = -1 if self.module.rank0 == 0 else None
        self._lock = threading.Lock()

    def known_pd(self) -> int | None:
        """Projective dimension if the resolution has terminated, else None."""
        return self._pd

    def extend_to(self, n: int, *, rank_budget: int | None = None) -> "Resolution":
        with self._lock:
            while self._pd is None and len(self._twists) - 1 < n:
                if rank_budget is not None and sum(len(t) for t in self._twists) > rank_budget:
                    raise ResourceCapError(
                        f"resolution of {self.module!r} passed {rank_budget} total generators"
                    )
                self._step()
        return self

    def _step(self):
        n = len(self._twists) - 1
        if n == 0:
            cols = [dict(c) for c in self.module.columns]
            if not cols:
                self._pd = 0
                return
            self._diffs.append(cols)
            self._twists.append(tuple(self.module.col_degrees))
            return
        cur, prev = self._twists[n], self._twists[n - 1]
        if self.backend == "linear":
            gens = _kernel_generators_linear(self.ctx, self._diffs[n - 1], cur, prev)
        else:
            syz, _ = syzygies_for(self.ctx, self._diffs[n - 1], len(prev), cur, prev)
            gens = minimal_generators(self.ctx, syz, len(cur), cur)
        if not gens:
            self._pd = n
            return
        cols, degs = _canonical_columns(self.ctx, gens, cur)
        self._diffs.append(cols)
        self._twists.append(degs)

    def rank(self, i: int) -> int:
        return len(self.twists_of(i))

    def twists_of(self, i: int) -> tuple[int, ...]:
        if i < 0:
            return ()
        self.extend_to(i)
        return self._twists[i] if i < len(self._twists) else ()

    def diff(self, i: int) -> list[dict]:
        """Columns of d_i : F_i -> F_{i-1}; empty when F_i = 0."""
        if i < 1:
            raise ValueError("differentials are indexed from 1")
        self.extend_to(i)
        return self._diffs[i - 1] if i - 1 < len(self._diffs) else []

    def betti_table(self, upto: int) -> "BettiTable":
        return BettiTable.of(self, upto)

    def syzygy_module(self, i: int) -> PresentedModule:
        """The i-th syzygy, presented on the generators of F_i."""
        if i < 0:
            raise ValueError("use negative_syzygy below index zero")
        if i == 0:
            return self.module
        self.extend_to(i + 1)
        twists = self.twists_of(i)
        if not twists:
            return PresentedModule.zero(self.ctx)
        return PresentedModule(self.ctx, twists, [dict(c) for c in self.diff(i + 1)])


def resolution_of(mod: PresentedModule, backend: str = "auto") -> Resolution:
    """Shared per-context resolution, cached by minimal presentation."""
    mm = mod.minimal_presentation()
    cache = mod.ctx.scratch.setdefault("res", {})
    key = (mm.value_key(), backend)
    hit = cache.get(key)
    if hit is None:
        hit = Resolution(mm, backend)
        cache[key] = hit
    return hit


def minimal_free_resolution(
    mod: PresentedModule, length: int, backend: str = "auto"
) -> tuple[Resolution, "BettiTable"]:
    res = resolution_of(mod, backend)
    res.extend_to(length)
    return res, res.betti_table(length)


def syzygy(mod: PresentedModule, i: int) -> PresentedModule:
    """i-th syzygy module (index 0 gives the minimal presentation back)."""
    if i == 0:
        return mod.minimal_presentation()
    return resolution_of(mod).syzygy_module(i)


class BettiTable:
    """Graded Betti numbers: entries[(i, j)] is the number of degree-j
    generators of the i-th resolution term."""

    def __init__(self, entries: dict[tuple[int, int], int], upto: int | None = None):
        self.entries = {k: int(v) for k, v in entries.items() if v}
        self.upto = upto if upto is not None else max((i for i, _ in self.entries), default=0)

    @classmethod
    def of(cls, res: Resolution, upto: int) -> "BettiTable":
        res.extend_to(upto)
        ent: dict[tuple[int, int], int] = {}
        for i in range(upto + 1):
            for j in res.twists_of(i):
                ent[(i, j)] = ent.get((i, j), 0) + 1
        return cls(ent, upto)

    def total(self, i: int) -> int:
        return sum(v for (h, _), v in self.entries.items() if h == i)

    def totals(self) -> list[int]:
        return [self.total(i) for i in range(self.upto + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, BettiTable) and self.entries == other.entries

    def render_text(self) -> str:
        """Triangular text layout, rows indexed by internal minus
        homological degree."""
        if not self.entries:
            return "(empty)"
        imax = max(i for i, _ in self.entries)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in self.entries.values())
        width = max(width, len(str(imax)), *(len(str(self.total(i))) for i in range(imax + 1)))
        head = [" " * 7] + [str(i).rjust(width) for i in range(imax + 1)]
        lines = [" ".join(head)]
        tot = ["total:".rjust(7)] + [str(self.total(i)).rjust(width) for i in range(imax + 1)]
        lines.append(" ".join(tot))
        for r in rows:
            cells = [(str(self.entries[(i, i + r)]) if (i, i + r) in self.entries else ".").rjust(width)
                     for i in range(imax + 1)]
            lines.append(" ".join([f"{r}:".rjust(7)] + cells))
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "entries": [
                {"homological": i, "internal": j, "rank": v}
                for (i, j), v in sorted(self.entries.items())
            ],
            "totals": self.totals(),
        }

    def __repr__(self) -> str:
        return f"BettiTable(totals={self.totals()})"


# -- Ext and Tor, direct route ---------------------------------------------------


class ExtTorResult:
    """Derived-functor values over a set of indices.

    `graded[i]` maps internal degree to dimension and `totals[i]` is its
    sum; both are None when the value has infinite length.  When the
    computation produced an actual subquotient, `modules[i]` holds its
    minimal presentation.  For the dual route the graded data is that of
    the exchanged computation, so only totals are comparable across routes.
    """

    def __init__(self, kind: str, route: str, indices: Iterable[int]):
        self.kind = kind
        self.route = route
        self.indices = sorted(set(indices))
        self.graded: dict[int, dict[int, int] | None] = {}
        self.totals: dict[int, int | None] = {}
        self.modules: dict[int, PresentedModule] = {}

    def record_module(self, i: int, module: PresentedModule):
        self.modules[i] = module
        hf = module._finite_hf()
        self.graded[i] = dict(hf) if hf is not None else None
        self.totals[i] = sum(hf.values()) if hf is not None else None

    def record_dims(self, i: int, graded: dict[int, int]):
        graded = {d: int(v) for d, v in graded.items() if v}
        self.graded[i] = graded
        self.totals[i] = sum(graded.values())

    def total(self, i: int) -> int | None:
        return self.totals[i]

    def graded_of(self, i: int) -> dict[int, int] | None:
        return self.graded[i]

    def is_zero(self, i: int) -> bool:
        return self.totals[i] == 0

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "route": self.route,
            "indices": self.indices,
            "dimensions": {
                str(i): (self.totals[i] if self.totals[i] is not None else "infinite")
                for i in self.indices
            },
            "graded": {
                str(i): (
                    {str(d): v for d, v in sorted(self.graded[i].items())}
                    if self.graded[i] is not None
                    else "infinite"
                )
                for i in self.indices
            },
        }


def _sum_of_shifts(ctx: RingCtx, base: PresentedModule, shifts: Sequence[int]) -> PresentedModule:
    out = PresentedModule.zero(ctx)
    for s in shifts:
        out = out.direct_sum(base.shifted(s))
    return out


def _hom_step_cols(ctx, diff_cols, src_rank, rb, p):
    """Free-cover columns of Hom(F_{j-1}, N) -> Hom(F_j, N) induced by d_j.

    Source generators run over (s', t) with s' a generator of F_{j-1} and t
    one of N's; the image collects the (s', s) entries of d_j into copy s.
    """
    codec = ctx.codec
    cols = []
    for sp in range(src_rank):
        for t in range(rb):
            vec: dict[int, int] = {}
            for s, col in enumerate(diff_cols):
                f = _entry_of(ctx, col, sp)
                for mk, c in f.items():
                    key = codec.mkey(mk, s * rb + t)
                    v = (vec.get(key, 0) + c) % p
                    if v:
                        vec[key] = v
                    else:
                        vec.pop(key, None)
            cols.append(vec)
    return cols


def _tensor_step_cols(ctx, diff_cols, rb):
    """Free-cover columns of F_j (x) N -> F_{j-1} (x) N induced by d_j."""
    codec = ctx.codec
    cols = []
    for col in diff_cols:
        parts = _split_entries(ctx, col)
        for t in range(rb):
            vec = {}
            for sp, f in enumerate(parts):
                for mk, c in f.items():
                    vec[codec.mkey(mk, sp * rb + t)] = c
            cols.append(vec)
    return cols


def _homology_between(ctx, X, out_map, in_cols):
    """ker(out_map) / im(in_cols) inside X, as a minimal presentation.

    `in_cols` are free-cover vectors of X known to land in the kernel.
    """
    K, incl = out_map.kernel(minimal=True)
    if not in_cols:
        return K.minimal_presentation()
    fam = [dict(c) for c in incl.columns] + [dict(c) for c in X.columns]
    degs = tuple(K.row_twists) + tuple(X.col_degrees)
    tagged = tagged_module_gb(ctx, fam, X.rank0, degs, X.row_twists)
    extra = []
    for col in in_cols:
        coords = express_in_family(ctx, tagged, col, K.rank0)
        if coords is None:
            raise InvariantViolation("incoming image escapes the kernel")
        v = vec_from_entries(ctx, coords)
        if v:
            extra.append(v)
    return PresentedModule(ctx, K.row_twists, list(K.columns) + extra).minimal_presentation()


def _check_pair(M: PresentedModule, N: PresentedModule):
    if M.ctx is not N.ctx:
        raise ValueError("arguments live over different contexts")


def ext(M: PresentedModule, N: PresentedModule, indices: Iterable[int]) -> ExtTorResult:
    """Right derived Hom, computed from a minimal resolution of M."""
    _check_pair(M, N)
    ctx = M.ctx
    idxs = sorted(set(indices))
    if not idxs:
        return ExtTorResult("ext", "direct", [])
    if idxs[0] < 0:
        raise ValueError("derived-functor indices start at 0")
    Mm = M.minimal_presentation()
    Nm = N.minimal_presentation()
    res = resolution_of(Mm)
    res.extend_to(idxs[-1] + 1)
    out = ExtTorResult("ext", "direct", idxs)
    p = ctx.ring.field.p
    rb = Nm.rank0
    for i in idxs:
        ti = res.twists_of(i)
        if not ti or rb == 0:
            out.record_module(i, PresentedModule.zero(ctx))
            continue
        X = _sum_of_shifts(ctx, Nm, [-a for a in ti])
        tnext = res.twists_of(i + 1)
        Xnext = _sum_of_shifts(ctx, Nm, [-a for a in tnext])
        psi_out = ModuleMap(
            X, Xnext, _hom_step_cols(ctx, res.diff(i + 1), len(ti), rb, p), check=False
        )
        in_cols = []
        if i >= 1 and res.rank(i - 1):
            in_cols = _hom_step_cols(ctx, res.diff(i), res.rank(i - 1), rb, p)
        out.record_module(i, _homology_between(ctx, X, psi_out, in_cols))
    return out


def tor(M: PresentedModule, N: PresentedModule, indices: Iterable[int]) -> ExtTorResult:
    """Left derived tensor, computed from a minimal resolution of M."""
    _check_pair(M, N)
    ctx = M.ctx
    idxs = sorted(set(indices))
    if not idxs:
        return ExtTorResult("tor", "direct", [])
    if idxs[0] < 0:
        raise ValueError("derived-functor indices start at 0")
    Mm = M.minimal_presentation()
    Nm = N.minimal_presentation()
    res = resolution_of(Mm)
    res.extend_to(idxs[-1] + 1)
    out = ExtTorResult("tor", "direct", idxs)
    rb = Nm.rank0
    for i in idxs:
        if i == 0:
            out.record_module(i, tensor_module(Mm, Nm))
            continue
        ti = res.twists_of(i)
        if not ti or rb == 0:
            out.record_module(i, PresentedModule.zero(ctx))
            continue
        T = _sum_of_shifts(ctx, Nm, list(ti))
        Tprev = _sum_of_shifts(ctx, Nm, list(res.twists_of(i - 1)))
        tau = ModuleMap(T, Tprev, _tensor_step_cols(ctx, res.diff(i), rb), check=False)
        in_cols = _tensor_step_cols(ctx, res.diff(i + 1), rb) if res.rank(i + 1) else []
        out.record_module(i, _homology_between(ctx, T, tau, in_cols))
    return out


# -- Ext and Tor, graded-dimension fast path (artinian) ---------------------------


def _hom_matrix_at(ctx, nreal, diff_cols, src_twists, dst_twists, d, p):
    """Degree-d matrix of the induced map Hom(F_j, N) -> Hom(F_{j+1}, N)."""
    rows = [nreal.dim(d + a) for a in dst_twists]
    cols = [nreal.dim(d + a) for a in src_twists]
    mat = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    roff = np.concatenate([[0], np.cumsum(rows)])
    coff = np.concatenate([[0], np.cumsum(cols)])
    for s, col in enumerate(diff_cols):
        if not rows[s]:
            continue
        parts = _split_entries(ctx, col)
        for sp, f in enumerate(parts):
            if f and cols[sp]:
                blk = nreal.poly_action(f, d + src_twists[sp], dst_twists[s] - src_twists[sp])
                mat[roff[s]:roff[s + 1], coff[sp]:coff[sp + 1]] = blk
    return mat


def _tor_matrix_at(ctx, nreal, diff_cols, src_twists, dst_twists, d, p):
    """Degree-d matrix of the induced map F_j (x) N -> F_{j-1} (x) N."""
    rows = [nreal.dim(d - a) for a in dst_twists]
    cols = [nreal.dim(d - a) for a in src_twists]
    mat = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    roff = np.concatenate([[0], np.cumsum(rows)])
    coff = np.concatenate([[0], np.cumsum(cols)])
    for s, col in enumerate(diff_cols):
        if not cols[s]:
            continue
        parts = _split_entries(ctx, col)
        for sp, f in enumerate(parts):
            if f and rows[sp]:
                blk = nreal.poly_action(f, d - src_twists[s], src_twists[s] - dst_twists[sp])
                mat[roff[sp]:roff[sp + 1], coff[s]:coff[s + 1]] = blk
    return mat


def ext_profile(M: PresentedModule, N: PresentedModule, i: int) -> dict[int, int]:
    """Graded dimensions of the i-th right derived Hom.

    Over an artinian context this is pure degreewise linear algebra and
    never builds the homology module; elsewhere it falls back to `ext` and
    requires the value to have finite length.
    """
    _check_pair(M, N)
    ctx = M.ctx
    if not ctx.is_artinian:
        E = ext(M, N, [i]).modules[i]
        hf = E._finite_hf()
        if hf is None:
            raise ValueError("graded profile of an infinite-length value")
        return dict(hf)
    Mm = M.minimal_presentation()
    Nm = N.minimal_presentation()
    res = resolution_of(Mm)
    res.extend_to(i + 1)
    ti = res.twists_of(i)
    nreal = FiniteLengthRealization.from_module(Nm)
    if not ti or nreal.is_zero():
        return {}
    p = ctx.ring.field.p
    nbot, ntop = min(nreal.degrees()), max(nreal.degrees())
    out: dict[int, int] = {}
    for d in range(nbot - max(ti), ntop - min(ti) + 1):
        total = sum(nreal.dim(d + a) for a in ti)
        if not total:
            continue
        h = total
        if res.rank(i + 1):
            h -= rank_mod(
                _hom_matrix_at(ctx, nreal, res.diff(i + 1), ti, res.twists_of(i + 1), d, p), p
            )
        if i >= 1 and res.rank(i - 1):
            h -= rank_mod(
                _hom_matrix_at(ctx, nreal, res.diff(i), res.twists_of(i - 1), ti, d, p), p
            )
        if h < 0:
            raise InvariantViolation("negative homology dimension")
        if h:
            out[d] = h
    return out


def tor_profile(M: PresentedModule, N: PresentedModule, i: int) -> dict[int, int]:
    """Graded dimensions of the i-th left derived tensor (see ext_profile)."""
    _check_pair(M, N)
    ctx = M.ctx
    if not ctx.is_artinian:
        T = tor(M, N, [i]).modules[i]
        hf = T._finite_hf()
        if hf is None:
            raise ValueError("graded profile of an infinite-length value")
        return dict(hf)
    Mm = M.minimal_presentation()
    Nm = N.minimal_presentation()
    res = resolution_of(Mm)
    res.extend_to(i + 1)
    ti = res.twists_of(i)
    nreal = FiniteLengthRealization.from_module(Nm)
    if not ti or nreal.is_zero():
        return {}
    p = ctx.ring.field.p
    nbot, ntop = min(nreal.degrees()), max(nreal.degrees())
    out: dict[int, int] = {}
    for d in range(nbot + min(ti), ntop + max(ti) + 1):
        total = sum(nreal.dim(d - a) for a in ti)
        if not total:
            continue
        h = total
        if i >= 1 and res.rank(i - 1):
            h -= rank_mod(
                _tor_matrix_at(ctx, nreal, res.diff(i), ti, res.twists_of(i - 1), d, p), p
            )
        if res.rank(i + 1):
            h -= rank_mod(
                _tor_matrix_at(ctx, nreal, res.diff(i + 1), res.twists_of(i + 1), ti, d, p), p
            )
        if h < 0:
            raise InvariantViolation("negative homology dimension")
        if h:
            out[d] = h
    return out


# -- depth, MCM and Gorenstein tests ----------------------------------------------


def depth(mod: PresentedModule) -> int:
    """Least i with a nonzero i-th derived Hom from the residue field."""
    mm = mod.minimal_presentation()
    if mm.rank0 == 0:
        raise ValueError("depth of the zero module")
    ctx = mod.ctx
    if ctx.is_artinian:
        return 0
    k = PresentedModule.residue_field(ctx)
    for i in range(ctx.dim + 1):
        if ext(k, mm, [i]).modules[i].rank0:
            return i
    raise InvariantViolation("no nonvanishing derived Hom up to the ring dimension")


def is_mcm(mod: PresentedModule) -> bool:
    """Depth equal to the ring dimension (vacuously true for zero)."""
    if mod.minimal_presentation().rank0 == 0:
        return True
    return depth(mod) == mod.ctx.dim


def gorenstein_check(ctx: RingCtx) -> bool:
    """Whether the context is Gorenstein (self-dual in the derived sense).

    Artinian contexts are tested by socle dimension; otherwise the derived
    Homs from the residue field into the ring must vanish below the
    dimension and be one-dimensional there.
    """
    hit = ctx.scratch.get("gorenstein")
    if hit is None:
        if ctx.is_artinian:
            hit = sum(ctx.socle_dims()) == 1
        else:
            R = PresentedModule.ring_module(ctx)
            k = PresentedModule.residue_field(ctx)
            d = ctx.dim
            hit = all(ext(k, R, [i]).modules[i].rank0 == 0 for i in range(d))
            if hit:
                E = ext(k, R, [d]).modules[d]
                hit = E.rank0 == 1 and E.length() == 1
        ctx.scratch["gorenstein"] = hit
    return hit


# -- complete resolutions and negative syzygies ------------------------------------


def _transpose_cols(ctx, cols, nrows):
    """Columns of the transposed matrix (entry (l, s) becomes (s, l))."""
    codec = ctx.codec
    out: list[dict] = [dict() for _ in range(nrows)]
    for s, col in enumerate(cols):
        for k, c in col.items():
            out[codec.comp_of(k)][codec.mkey(codec.mono_of(k), s)] = c
    return out


class CompleteResolution:
    """Doubly infinite exact complex of free modules around a maximal
    Cohen-Macaulay module over a Gorenstein context.

    Nonnegative terms come from the minimal resolution; terms below zero
    are duals of the terms of a minimal resolution of the dual module,
    with transposed differentials, glued through the evaluation pairing in
    degree zero.  `term(i)` and `diff(i)` accept any integer index.
    """

    def __init__(self, module: PresentedModule, lo: int = -2, hi: int = 2):
        ctx = module.ctx
        mm = module.minimal_presentation()
        if not gorenstein_check(ctx):
            raise HypothesisNotMet("complete resolutions need a Gorenstein context")
        if mm.rank0 and not is_mcm(mm):
            raise HypothesisNotMet("module is not maximal Cohen-Macaulay")
        self.ctx = ctx
        self.module = mm
        self.pos = resolution_of(mm)
        _, funs = dual_with_functionals(mm)
        neg_tw = tuple(-a for a in mm.row_twists)
        keep = minimal_generator_indices(ctx, funs, max(mm.rank0, 1), neg_tw)
        chosen = [funs[l] for l in keep]
        fun_degs = tuple(vec_degree(ctx, u, neg_tw) for u in chosen)
        rels, _ = syzygies_for(ctx, chosen, max(mm.rank0, 1), fun_degs, neg_tw)
        dual_pres = PresentedModule(ctx, fun_degs, rels)
        self.neg = resolution_of(dual_pres)
        codec = ctx.codec
        d0 = []
        for j in range(mm.rank0):
            col: dict[int, int] = {}
            for l, u in enumerate(chosen):
                for mk, c in _entry_of(ctx, u, j).items():
                    col[codec.mkey(mk, l)] = c
            d0.append(col)
        self._d0 = d0
        self.extend(lo, hi)

    def extend(self, lo: int, hi: int) -> "CompleteResolution":
        if hi >= 0:
            self.pos.extend_to(hi)
        if lo < 0:
            self.neg.extend_to(-lo - 1)
        return self

    def term(self, i: int) -> tuple[int, ...]:
        if i >= 0:
            return self.pos.twists_of(i)
        return tuple(-a for a in self.neg.twists_of(-i - 1))

    def diff(self, i: int) -> list[dict]:
        """Columns of the differential from term(i) to term(i-1)."""
        if i >= 1:
            return self.pos.diff(i)
        if i == 0:
            return self._d0
        return _transpose_cols(self.ctx, self.neg.diff(-i), self.neg.rank(-i - 1))


def complete_resolution(mod: PresentedModule, lo: int = -2, hi: int = 2) -> CompleteResolution:
    cache = mod.ctx.scratch.setdefault("cres", {})
    key = mod.minimal_presentation().value_key()
    hit = cache.get(key)
    if hit is None:
        hit = CompleteResolution(mod, lo, hi)
        cache[key] = hit
    else:
        hit.extend(lo, hi)
    return hit


def negative_syzygy(mod: PresentedModule, i: int) -> PresentedModule:
    """Syzygy in a complete resolution at index i <= -1 (cokernel of the
    incoming differential, presented on term(i))."""
    if i >= 0:
        raise ValueError("use syzygy for nonnegative indices")
    cres = complete_resolution(mod, lo=i, hi=0)
    twists = cres.term(i)
    if not twists:
        return PresentedModule.zero(mod.ctx)
    return PresentedModule(
        mod.ctx, twists, [dict(c) for c in cres.diff(i + 1)]
    ).minimal_presentation()


# -- Ext and Tor through the dual route --------------------------------------------


def _dual_route_setup(M: PresentedModule, idxs: list[int], t: int | None):
    if t is None:
        t = max(idxs) + 2
    if min(idxs) < 1 or max(idxs) > t - 2:
        raise ValueError(f"indices must sit in [1, {t - 2}] for a pass through syzygy {t}")
    ctx = M.ctx
    if not gorenstein_check(ctx):
        raise HypothesisNotMet("the dual route needs a Gorenstein context")
    mm = M.minimal_presentation()
    if mm.rank0 and not is_mcm(mm):
        raise HypothesisNotMet("the dual route needs a maximal Cohen-Macaulay module")
    return dual_module(syzygy(mm, t)), t


def ext_via_complete(
    M: PresentedModule, N: PresentedModule, indices: Iterable[int], t: int | None = None
) -> ExtTorResult:
    """Right derived Hom computed by exchange: pass to a high syzygy, dualize,
    and read the answer off the complementary left derived tensor."""
    _check_pair(M, N)
    idxs = sorted(set(indices))
    if not idxs:
        return ExtTorResult("ext", "complete", [])
    D, t = _dual_route_setup(M, idxs, t)
    out = ExtTorResult("ext", "complete", idxs)
    if M.ctx.is_artinian:
        for i in idxs:
            out.record_dims(i, tor_profile(D, N, t - i - 1))
    else:
        inner = tor(D, N, [t - i - 1 for i in idxs])
        for i in idxs:
            out.record_module(i, inner.modules[t - i - 1])
    return out


def tor_via_complete(
    M: PresentedModule, N: PresentedModule, indices: Iterable[int], t: int | None = None
) -> ExtTorResult:
    """Left derived tensor computed by exchange through a dualized syzygy."""
    _check_pair(M, N)
    idxs = sorted(set(indices))
    if not idxs:
        return ExtTorResult("tor", "complete", [])
    D, t = _dual_route_setup(M, idxs, t)
    out = ExtTorResult("tor", "complete", idxs)
    if M.ctx.is_artinian:
        for i in idxs:
            out.record_dims(i, ext_profile(D, N, t - i - 1))
    else:
        inner = ext(D, N, [t - i - 1 for i in idxs])
        for i in idxs:
            out.record_module(i, inner.modules[t - i - 1])
    return out
