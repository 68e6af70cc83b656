"""Finitely presented graded modules over a quotient ring context.

A module is the cokernel of a graded map between free modules, recorded as
the degrees of the target's generators (`row_twists`, where degree a means
the summand R(-a)) plus one packed vector per relation column.  Columns are
kept reduced modulo the defining ideal and sorted, so equal presentations
compare equal term for term.

Degree bookkeeping used throughout: an entry in row j of a column of
degree d is a homogeneous polynomial of degree d - row_twists[j]; dualizing
a free module negates generator degrees; Hom(M, N) shifts copy j of N down
by M's j-th generator degree, and tensors add generator degrees.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InvariantViolation
from .groebner import (
    RingCtx,
    VectorGB,
    express_in_family,
    module_gb,
    presented_numerator,
    reduce_vec_by_ideal,
    syzygies_for,
    tagged_module_gb,
    tp_exact_quotient,
    tp_one_minus_t_valuation,
    tp_series,
    tp_value_at_one,
)
from .poly import Polynomial


# -- packed vector helpers ---------------------------------------------------


def vec_from_entries(ctx: RingCtx, entries: Sequence[Polynomial]) -> dict:
    """Pack a column of polynomials (one per component) into a flat vector."""
    codec = ctx.codec
    out: dict[int, int] = {}
    for comp, f in enumerate(entries):
        for k, c in f.raw().items():
            out[codec.mkey(k, comp)] = c
    return out


def entries_from_vec(ctx: RingCtx, vec: dict, rank: int) -> list[Polynomial]:
    codec = ctx.codec
    raw: list[dict[int, int]] = [{} for _ in range(rank)]
    for k, c in vec.items():
        raw[codec.comp_of(k)][codec.mono_of(k)] = c
    return [Polynomial(ctx.ring, d) for d in raw]


def vec_poly_submul(dst: dict, f: dict[int, int], src: dict, ctx: RingCtx) -> dict:
    """dst -= f * src for a ring element f given as a monomial dict."""
    ring = ctx.ring
    p = ring.field.p
    codec = ctx.codec
    for mk, mc in f.items():
        delta = codec.delta(mk)
        for k, c in src.items():
            kk = k + delta
            v = (dst.get(kk, 0) - mc * c) % p
            if v:
                dst[kk] = v
            else:
                dst.pop(kk, None)
    return dst


def vec_degree(ctx: RingCtx, vec: dict, twists: Sequence[int]) -> int:
    """Degree of a homogeneous vector; raises if the terms disagree."""
    ring = ctx.ring
    codec = ctx.codec
    degs = {ring.mono_degree(codec.mono_of(k)) + twists[codec.comp_of(k)] for k in vec}
    if len(degs) != 1:
        raise ValueError(f"vector is not homogeneous: degrees {sorted(degs)}")
    return degs.pop()


def _freeze(vec: dict) -> tuple:
    return tuple(sorted(vec.items()))


class PresentedModule:
    """coker of a column family inside a graded free module over ctx."""

    def __init__(
        self,
        ctx: RingCtx,
        row_twists: Sequence[int],
        columns: Iterable[dict] = (),
        *,
        _reduced: bool = False,
    ):
        self.ctx = ctx
        self.row_twists = tuple(int(a) for a in row_twists)
        rank = len(self.row_twists)
        p = ctx.ring.field.p
        cols = []
        for vec in columns:
            if not _reduced:
                vec = reduce_vec_by_ideal(dict(vec), ctx)
            if not vec:
                continue
            for k in vec:
                if ctx.codec.comp_of(k) >= rank:
                    raise ValueError("column has a component beyond the row count")
            inv = pow(vec[max(vec)], p - 2, p)
            if inv != 1:
                vec = {k: c * inv % p for k, c in vec.items()}
            cols.append(vec)
        degs = [vec_degree(ctx, v, self.row_twists) for v in cols]
        order = sorted(range(len(cols)), key=lambda i: (degs[i], max(cols[i])))
        self.columns = tuple(cols[i] for i in order)
        self.col_degrees = tuple(degs[i] for i in order)
        self._cache: dict = {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_matrix(cls, ctx: RingCtx, rows, row_twists=None) -> "PresentedModule":
        """Build from a row-major matrix of polynomials (or parseable strings)."""
        ring = ctx.ring
        parsed: list[list[Polynomial]] = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, str):
                    e = ring.parse(e)
                elif isinstance(e, int):
                    e = ring.constant(e)
                out.append(e)
            parsed.append(out)
        if not parsed:
            raise ValueError("need at least one row")
        ncols = {len(r) for r in parsed}
        if len(ncols) != 1:
            raise ValueError("ragged matrix")
        if row_twists is None:
            row_twists = (0,) * len(parsed)
        cols = []
        for c in range(ncols.pop()):
            cols.append(vec_from_entries(ctx, [r[c] for r in parsed]))
        return cls(ctx, row_twists, cols)

    @classmethod
    def free(cls, ctx: RingCtx, twists: Sequence[int]) -> "PresentedModule":
        return cls(ctx, twists)

    @classmethod
    def ring_module(cls, ctx: RingCtx) -> "PresentedModule":
        return cls(ctx, (0,))

    @classmethod
    def zero(cls, ctx: RingCtx) -> "PresentedModule":
        return cls(ctx, ())

    @classmethod
    def residue_field(cls, ctx: RingCtx) -> "PresentedModule":
        gens = ctx.ring.gens()
        return cls(ctx, (0,), [vec_from_entries(ctx, [g]) for g in gens])

    # -- canonical identity ----------------------------------------------------

    def value_key(self) -> tuple:
        return (id(self.ctx), self.row_twists, tuple(_freeze(c) for c in self.columns))

    def __eq__(self, other) -> bool:
        return isinstance(other, PresentedModule) and other.value_key() == self.value_key()

    def __hash__(self) -> int:
        return hash(self.value_key())

    @property
    def rank0(self) -> int:
        return len(self.row_twists)

    def presentation_matrix(self) -> list[list[Polynomial]]:
        return [
            [entries_from_vec(self.ctx, col, self.rank0)[j] for col in self.columns]
            for j in range(self.rank0)
        ]

    def __repr__(self) -> str:
        return (
            f"PresentedModule({self.rank0} gens deg {list(self.row_twists)}, "
            f"{len(self.columns)} relations over {self.ctx!r})"
        )

    # -- Groebner-backed data ---------------------------------------------------

    def gb(self) -> VectorGB:
        hit = self._cache.get("gb")
        if hit is None:
            hit = module_gb(self.ctx, list(self.columns), self.rank0, self.row_twists)
            self._cache["gb"] = hit
        return hit

    def hilbert_numerator(self) -> dict[int, int]:
        hit = self._cache.get("numerator")
        if hit is None:
            hit = presented_numerator(self.ctx, self.gb(), self.rank0, self.row_twists)
            self._cache["numerator"] = hit
        return hit

    def hilbert_function(self, degree: int) -> int:
        if self.is_finite_length():
            return self._cache["hf"].get(degree, 0)
        lo = min(self.row_twists, default=0)
        if degree < lo:
            return 0
        return tp_series(self.hilbert_numerator(), self.ctx.ring.weights, degree).get(
            degree, 0
        )

    def is_zero(self) -> bool:
        return not self.hilbert_numerator()

    def krull_dim(self) -> int:
        """Dimension of the support; -1 for the zero module."""
        num = self.hilbert_numerator()
        if not num:
            return -1
        return self.ctx.ring.nvars - tp_one_minus_t_valuation(num)

    def is_finite_length(self) -> bool:
        return self._finite_hf() is not None

    def _finite_hf(self) -> dict[int, int] | None:
        if "hf" in self._cache:
            return self._cache["hf"]
        hf = self.hilbert_numerator()
        for w in self.ctx.ring.weights:
            hf = tp_exact_quotient(hf, w)
            if hf is None:
                break
        if hf is not None and any(c < 0 for c in hf.values()):
            raise InvariantViolation("negative graded dimension")
        self._cache["hf"] = hf
        return hf

    def length(self) -> int | None:
        hf = self._finite_hf()
        return tp_value_at_one(hf) if hf is not None else None

    def top_degree(self) -> int | None:
        hf = self._finite_hf()
        if hf is None:
            return None
        return max(hf) if hf else min(self.row_twists, default=0) - 1

    def bottom_degree(self) -> int | None:
        hf = self._finite_hf()
        if hf is None:
            return None
        return min(hf) if hf else 0

    # -- elementary constructions ------------------------------------------------

    def shifted(self, s: int) -> "PresentedModule":
        """Same module with every generator degree raised by s (i.e. M(-s))."""
        out = PresentedModule(self.ctx, tuple(a + s for a in self.row_twists), (), _reduced=True)
        # Packed columns do not mention twists, so they carry over unchanged.
        out.columns = self.columns
        out.col_degrees = tuple(d + s for d in self.col_degrees)
        return out

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        if other.ctx is not self.ctx:
            raise ValueError("direct sum across different contexts")
        codec = self.ctx.codec
        r = self.rank0
        cols = list(self.columns)
        for vec in other.columns:
            cols.append({codec.mkey(codec.mono_of(k), codec.comp_of(k) + r): c for k, c in vec.items()})
        return PresentedModule(
            self.ctx, self.row_twists + other.row_twists, cols, _reduced=True
        )

    # -- minimal presentations -----------------------------------------------------

    def minimal_presentation(self) -> "PresentedModule":
        hit = self._cache.get("min")
        if hit is None:
            hit = _minimalize(self)
            hit._cache["min"] = hit
            self._cache["min"] = hit
        return hit

    def is_free(self) -> bool:
        return not self.minimal_presentation().columns

    def free_rank(self) -> int | None:
        m = self.minimal_presentation()
        return m.rank0 if not m.columns else None


def _unit_entry(ctx: RingCtx, vec: dict) -> tuple[int, int] | None:
    """(component, coefficient) of a degree-zero entry, if any."""
    unit = ctx.ring.unit_key
    codec = ctx.codec
    for k, c in vec.items():
        if codec.mono_of(k) == unit:
            return codec.comp_of(k), c
    return None


def _drop_component(ctx: RingCtx, vec: dict, j0: int) -> dict:
    codec = ctx.codec
    out = {}
    for k, c in vec.items():
        comp = codec.comp_of(k)
        if comp == j0:
            raise InvariantViolation("pivot row failed to cancel")
        out[codec.mkey(codec.mono_of(k), comp - (comp > j0))] = c
    return out


def _entry_of(ctx: RingCtx, vec: dict, j: int) -> dict[int, int]:
    codec = ctx.codec
    return {codec.mono_of(k): c for k, c in vec.items() if codec.comp_of(k) == j}


def _minimalize(mod: PresentedModule) -> PresentedModule:
    """Unit-pivot elimination, then discard relation columns that the
    remaining ones already generate."""
    ctx = mod.ctx
    p = ctx.ring.field.p
    cols = [dict(c) for c in mod.columns]
    twists = list(mod.row_twists)
    while True:
        pivot = None
        for ci, vec in enumerate(cols):
            hit = _unit_entry(ctx, vec)
            if hit is not None:
                pivot = (ci, *hit)
                break
        if pivot is None:
            break
        ci, j0, u = pivot
        pivcol = cols.pop(ci)
        uinv = pow(u, p - 2, p)
        new_cols = []
        for vec in cols:
            f = _entry_of(ctx, vec, j0)
            if f:
                f = {mk: c * uinv % p for mk, c in f.items()}
                vec = vec_poly_submul(dict(vec), f, pivcol, ctx)
                vec = reduce_vec_by_ideal(vec, ctx)
            if vec:
                new_cols.append(_drop_component(ctx, vec, j0))
            # A column that cancelled entirely is simply dropped.
        cols = new_cols
        twists.pop(j0)
    # Generator count is now minimal (no unit entries remain); prune columns
    # that lie in the span of the others, largest degree first.
    def key(i):
        return (vec_degree(ctx, cols[i], twists), max(cols[i]))

    alive = sorted(range(len(cols)), key=key, reverse=True)
    kept = {i: cols[i] for i in range(len(cols))}
    for i in alive:
        others = [kept[j] for j in kept if j != i]
        gbv = module_gb(ctx, others, len(twists), tuple(twists))
        if gbv.contains(kept[i]):
            del kept[i]
    return PresentedModule(ctx, twists, [kept[i] for i in sorted(kept)])


class ModuleMap:
    """Graded degree-zero map between presented modules, one image column
    per source generator (written in the target's free cover)."""

    def __init__(
        self,
        source: PresentedModule,
        target: PresentedModule,
        columns: Sequence[dict],
        *,
        check: bool = True,
    ):
        if source.ctx is not target.ctx:
            raise ValueError("map across different contexts")
        self.ctx = source.ctx
        self.source = source
        self.target = target
        cols = [reduce_vec_by_ideal(dict(c), self.ctx) for c in columns]
        if len(cols) != source.rank0:
            raise ValueError(f"need {source.rank0} columns, got {len(cols)}")
        for c, vec in enumerate(cols):
            if vec and vec_degree(self.ctx, vec, target.row_twists) != source.row_twists[c]:
                raise ValueError(f"column {c} does not preserve degree")
        self.columns = tuple(cols)
        if check:
            gbv = target.gb()
            for rel in source.columns:
                if not gbv.contains(self.apply_vec(rel)):
                    raise ValueError("map does not kill the source relations")

    @classmethod
    def identity(cls, mod: PresentedModule) -> "ModuleMap":
        codec = mod.ctx.codec
        unit = mod.ctx.ring.unit_key
        cols = [{codec.mkey(unit, j): 1} for j in range(mod.rank0)]
        return cls(mod, mod, cols, check=False)

    @classmethod
    def from_matrix(cls, source, target, rows, *, check: bool = True) -> "ModuleMap":
        """Row-major matrix with rows indexed by target generators."""
        ring = source.ctx.ring
        parsed = [
            [ring.parse(e) if isinstance(e, str) else (ring.constant(e) if isinstance(e, int) else e) for e in row]
            for row in rows
        ]
        cols = []
        for c in range(source.rank0):
            cols.append(vec_from_entries(source.ctx, [row[c] for row in parsed]))
        return cls(source, target, cols, check=check)

    def apply_vec(self, vec: dict) -> dict:
        """Image of a packed vector over the source's free cover."""
        out: dict[int, int] = {}
        for j, f in enumerate(_split_entries(self.ctx, vec)):
            if f:
                vec_poly_submul(out, _neg(f, self.ctx.ring.field.p), self.columns[j], self.ctx)
        return out

    def matrix(self) -> list[list[Polynomial]]:
        return [
            [entries_from_vec(self.ctx, col, self.target.rank0)[i] for col in self.columns]
            for i in range(self.target.rank0)
        ]

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self o inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise ValueError("composition mismatch")
        cols = [self.apply_vec(c) for c in inner.columns]
        return ModuleMap(inner.source, self.target, cols, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if other.source != self.source or other.target != self.target:
            raise ValueError("sum of maps with different ends")
        p = self.ctx.ring.field.p
        cols = []
        for a, b in zip(self.columns, other.columns):
            out = dict(a)
            for k, c in b.items():
                v = (out.get(k, 0) + c) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            cols.append(out)
        return ModuleMap(self.source, self.target, cols, check=False)

    def __neg__(self) -> "ModuleMap":
        p = self.ctx.ring.field.p
        return ModuleMap(
            self.source, self.target, [_neg_vec(c, p) for c in self.columns], check=False
        )

    def is_zero_map(self) -> bool:
        gbv = self.target.gb()
        return all(gbv.contains(c) for c in self.columns)

    def kernel(self, minimal: bool = True) -> tuple[PresentedModule, "ModuleMap"]:
        """(K, inclusion K -> source)."""
        ctx = self.ctx
        fam = list(self.columns) + list(self.target.columns)
        degs = tuple(self.source.row_twists) + tuple(self.target.col_degrees)
        syz, _ = syzygies_for(ctx, fam, self.target.rank0, degs, self.target.row_twists)
        m = self.source.rank0
        gens = []
        for s in syz:
            v = {k: c for k, c in s.items() if ctx.codec.comp_of(k) < m}
            if v:
                gens.append(v)
        if minimal:
            gens = minimal_generators(ctx, gens, m, self.source.row_twists, modulo=list(self.source.columns))
        rel_fam = gens + list(self.source.columns)
        rel_degs = tuple(vec_degree(ctx, g, self.source.row_twists) for g in gens) + tuple(
            self.source.col_degrees
        )
        syz2, _ = syzygies_for(ctx, rel_fam, m, rel_degs, self.source.row_twists)
        rels = []
        for s in syz2:
            v = {k: c for k, c in s.items() if ctx.codec.comp_of(k) < len(gens)}
            if v:
                rels.append(v)
        K = PresentedModule(ctx, rel_degs[: len(gens)], rels)
        incl = ModuleMap(K, self.source, gens, check=False)
        return K, incl

    def cokernel(self) -> PresentedModule:
        return PresentedModule(
            self.ctx,
            self.target.row_twists,
            list(self.target.columns) + list(self.columns),
        )

    def image(self) -> PresentedModule:
        """source/kernel, presented on the source generators."""
        _, incl = self.kernel(minimal=True)
        return PresentedModule(
            self.ctx,
            self.source.row_twists,
            list(self.source.columns) + list(incl.columns),
        )


def _neg(f: dict[int, int], p: int) -> dict[int, int]:
    return {k: p - c for k, c in f.items()}


def _neg_vec(vec: dict, p: int) -> dict:
    return {k: p - c for k, c in vec.items()}


def _split_entries(ctx: RingCtx, vec: dict) -> list[dict[int, int]]:
    codec = ctx.codec
    top = max((codec.comp_of(k) for k in vec), default=-1)
    out: list[dict[int, int]] = [{} for _ in range(top + 1)]
    for k, c in vec.items():
        out[codec.comp_of(k)][codec.mono_of(k)] = c
    return out


def minimal_generator_indices(
    ctx: RingCtx,
    vecs: list[dict],
    rank: int,
    twists: Sequence[int],
    modulo: list[dict] | None = None,
) -> list[int]:
    """Indices of a minimal generating subfamily (no member in the span of
    the others plus `modulo`), pruned from the top degree down."""
    modulo = modulo or []
    kept = {i: v for i, v in enumerate(vecs)}
    order = sorted(
        kept,
        key=lambda i: (vec_degree(ctx, vecs[i], twists), max(vecs[i])),
        reverse=True,
    )
    for i in order:
        others = [kept[j] for j in kept if j != i] + modulo
        gbv = module_gb(ctx, others, rank, tuple(twists))
        if gbv.contains(kept[i]):
            del kept[i]
    return sorted(kept)


def minimal_generators(
    ctx: RingCtx,
    vecs: list[dict],
    rank: int,
    twists: Sequence[int],
    modulo: list[dict] | None = None,
) -> list[dict]:
    return [vecs[i] for i in minimal_generator_indices(ctx, vecs, rank, twists, modulo)]


# -- duals, hom, tensor -------------------------------------------------------


def dual_with_functionals(mod: PresentedModule) -> tuple[PresentedModule, list[dict]]:
    """Hom(M, R) presented on an explicit family of functionals.

    Each functional is a vector u over the free cover of M (with negated
    generator degrees) satisfying u . column = 0 mod I for every relation
    column; the returned presentation's generators are exactly these, in
    order, so callers may keep identifying them (no minimization here).
    """
    ctx = mod.ctx
    codec = ctx.codec
    m = mod.rank0
    ncols = len(mod.columns)
    # Columns of the transpose: one vector over the relation indices per row.
    tcols = []
    for j in range(m):
        vec = {}
        for c, col in enumerate(mod.columns):
            for mk, cf in _entry_of(ctx, col, j).items():
                vec[codec.mkey(mk, c)] = cf
        tcols.append(vec)
    neg_col = tuple(-d for d in mod.col_degrees)
    neg_row = tuple(-a for a in mod.row_twists)
    syz, _ = syzygies_for(ctx, tcols, max(ncols, 1), neg_row, neg_col)
    functionals = syz  # vectors over components 0..m-1 with twists -row_twists
    fun_degs = tuple(vec_degree(ctx, u, neg_row) for u in functionals)
    syz2, _ = syzygies_for(ctx, functionals, m, fun_degs, neg_row)
    dual = PresentedModule(ctx, fun_degs, syz2)
    return dual, functionals


def dual_module(mod: PresentedModule) -> PresentedModule:
    hit = mod._cache.get("dual")
    if hit is None:
        hit = dual_with_functionals(mod)[0].minimal_presentation()
        mod._cache["dual"] = hit
    return hit


def tensor_module(a: PresentedModule, b: PresentedModule, minimal=True) -> PresentedModule:
    """a (x) b presented on pairs of generators, relations from both sides."""
    ctx = a.ctx
    if b.ctx is not ctx:
        raise ValueError("tensor across different contexts")
    codec = ctx.codec
    rb = b.rank0
    twists = tuple(x + y for x in a.row_twists for y in b.row_twists)
    cols = []
    for c, col in enumerate(a.columns):  # A (x) id
        for t in range(rb):
            vec = {}
            for k, cf in col.items():
                vec[codec.mkey(codec.mono_of(k), codec.comp_of(k) * rb + t)] = cf
            cols.append(vec)
    for j in range(a.rank0):  # id (x) B
        for col in b.columns:
            vec = {}
            for k, cf in col.items():
                vec[codec.mkey(codec.mono_of(k), j * rb + codec.comp_of(k))] = cf
            cols.append(vec)
    raw = PresentedModule(ctx, twists, cols)
    return raw.minimal_presentation() if minimal else raw


def hom_with_lifts(
    a: PresentedModule, b: PresentedModule
) -> tuple[PresentedModule, list[list[dict]], PresentedModule]:
    """Hom(a, b) with explicit lift matrices.

    Returns (H, lifts, X) where X = (+)_j b shifted by -a.row_twists[j], H is
    presented on generators that are elements of X's free cover, and
    lifts[s] is the list of columns (one per a-generator, each a vector over
    b's free cover) of the free-level map realizing generator s.
    """
    ctx = a.ctx
    if b.ctx is not ctx:
        raise ValueError("hom across different contexts")
    codec = ctx.codec
    rb = b.rank0
    # X = Hom(F0(a), b), Y = Hom(F1(a), b), psi = precompose with a's relations.
    X = _iterated_sum(ctx, [b.shifted(-t) for t in a.row_twists])
    Y = _iterated_sum(ctx, [b.shifted(-d) for d in a.col_degrees])
    psi_cols = []
    for j in range(a.rank0):
        for t in range(rb):
            vec: dict[int, int] = {}
            for c, col in enumerate(a.columns):
                f = _entry_of(ctx, col, j)
                if f:
                    for mk, cf in f.items():
                        key = codec.mkey(mk, c * rb + t)
                        vec[key] = (vec.get(key, 0) + cf) % ctx.ring.field.p
            psi_cols.append({k: c for k, c in vec.items() if c})
    psi = ModuleMap(X, Y, psi_cols, check=False)
    H, incl = psi.kernel(minimal=True)
    lifts = []
    for gen in incl.columns:
        mats: list[dict] = [{} for _ in range(a.rank0)]
        for k, c in gen.items():
            comp = codec.comp_of(k)
            j, t = divmod(comp, rb)
            mats[j][codec.mkey(codec.mono_of(k), t)] = c
        lifts.append(mats)
    return H, lifts, X


def hom_module(a: PresentedModule, b: PresentedModule) -> PresentedModule:
    key = ("hom", b.value_key())
    hit = a._cache.get(key)
    if hit is None:
        hit = hom_with_lifts(a, b)[0].minimal_presentation()
        a._cache[key] = hit
    return hit


def _iterated_sum(ctx: RingCtx, mods: list[PresentedModule]) -> PresentedModule:
    out = PresentedModule.zero(ctx)
    for m in mods:
        out = out.direct_sum(m)
    return out


def evaluation_map(a: PresentedModule, b: PresentedModule):
    """The natural map dual(a) (x) b -> Hom(a, b), u (x) n |-> (m |-> u(m) n).

    Returns (T, H, phi) with T the unminimized tensor product of the
    functional presentation of dual(a) with b, H = Hom(a, b) on kernel
    generators, and phi the map between them.  Its cokernel is the family
    of maps factoring through a free module.
    """
    ctx = a.ctx
    codec = ctx.codec
    astar, functionals = dual_with_functionals(a)
    T = tensor_module(astar, b, minimal=False)
    H, lifts, X = hom_with_lifts(a, b)
    rb = b.rank0
    # Family for coordinate extraction: H's generators, then X's relations.
    fam = [dict(g) for g in _hom_incl_columns(H, lifts, codec, rb)] + list(X.columns)
    degs = tuple(H.row_twists) + tuple(X.col_degrees)
    tagged = tagged_module_gb(ctx, fam, X.rank0, degs, X.row_twists)
    cols = []
    for s, u in enumerate(functionals):
        for t in range(rb):
            # phi sends u (x) e_t to the X-vector with u's entries in copy slots.
            vec = {}
            for k, c in u.items():
                vec[codec.mkey(codec.mono_of(k), codec.comp_of(k) * rb + t)] = c
            coords = express_in_family(ctx, tagged, vec, len(H.row_twists))
            if coords is None:
                raise InvariantViolation("evaluation image escaped Hom")
            cols.append(vec_from_entries(ctx, coords))
    phi = ModuleMap(T, H, cols, check=False)
    return T, H, phi


def _hom_incl_columns(H, lifts, codec, rb):
    # Rebuild the X-cover vectors of H's generators from the lift matrices.
    out = []
    for mats in lifts:
        vec = {}
        for j, f in enumerate(mats):
            for k, c in f.items():
                vec[codec.mkey(codec.mono_of(k), j * rb + codec.comp_of(k))] = c
        out.append(vec)
    return out


def stable_hom(a: PresentedModule, b: PresentedModule) -> PresentedModule:
    """Hom(a, b) modulo maps factoring through free modules."""
    _, _, phi = evaluation_map(a, b)
    return phi.cokernel().minimal_presentation()


def dual_evaluation_map(a: PresentedModule, b: PresentedModule):
    """The natural map a (x) dual(b) -> dual(Hom(a, b)).

    m (x) u goes to the functional psi |-> u(psi(m)).  Returns (T, Hstar, chi)
    with T the unminimized tensor of a with the functional presentation of
    dual(b) and Hstar = dual(Hom(a, b)) presented on its own functionals.
    """
    ctx = a.ctx
    codec = ctx.codec
    p = ctx.ring.field.p
    bstar, bfun = dual_with_functionals(b)
    T = tensor_module(a, bstar, minimal=False)
    H, lifts, _ = hom_with_lifts(a, b)
    hstar, hfun = dual_with_functionals(H)
    fun_degs = tuple(vec_degree(ctx, u, tuple(-t for t in H.row_twists)) for u in hfun)
    tagged = tagged_module_gb(ctx, list(hfun), H.rank0, fun_degs, tuple(-t for t in H.row_twists))
    nb = len(bfun)
    cols = []
    for j in range(a.rank0):
        for u in bfun:
            # The value on H's generator l is u paired with column j of l's lift.
            lam: dict[int, int] = {}
            for l, mats in enumerate(lifts):
                val: dict[int, int] = {}
                for comp, f in enumerate(_split_entries(ctx, mats[j])):
                    g = _entry_of(ctx, u, comp)
                    if f and g:
                        prod = (Polynomial(ctx.ring, f) * Polynomial(ctx.ring, g)).raw()
                        for mk, c in prod.items():
                            v = (val.get(mk, 0) + c) % p
                            if v:
                                val[mk] = v
                            else:
                                val.pop(mk, None)
                val = ctx.nf_poly(Polynomial(ctx.ring, val)).raw()
                for mk, c in val.items():
                    lam[codec.mkey(mk, l)] = c
            coords = express_in_family(ctx, tagged, lam, len(hfun))
            if coords is None:
                raise InvariantViolation("pairing escaped the dual of Hom")
            cols.append(vec_from_entries(ctx, coords))
    assert len(cols) == a.rank0 * nb
    chi = ModuleMap(T, hstar, cols, check=False)
    return T, hstar, chi
