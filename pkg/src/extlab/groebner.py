"""Buchberger engine for submodules of free modules over graded quotient rings.

A vector in a free module is a flat dict from packed keys to nonzero
coefficients.  A key stacks three fields:

    [block bit] [packed ring monomial] [complemented component, 24 bits]

so plain integer comparison realizes the position-over-term... rather,
term-over-position order: monomials are compared first (in the ring's own
order) and ties go to the lower component index.  The block bit splits the
key space into a working block (bit set) and a tag block (bit clear) that
always sorts below it.  Syzygies are computed by augmenting each input with
a unit tag and running Buchberger to completion: elements whose working
part collapses to zero carry, in their tags, exactly the coordinates of a
syzygy of the inputs.

Coefficient bookkeeping note: a tag t of an element (f, t) always satisfies
f = sum_j t_j * a_j over the original inputs a_j, because inputs start that
way and both reduction and S-vector formation are linear.
"""

from __future__ import annotations

import threading
from heapq import heappop, heappush

import numpy as np

from .errors import DegreeCapError, InvariantViolation
from .poly import GREVLEX, Polynomial, PolyRing

COMP_BITS = 24
COMP_MASK = (1 << COMP_BITS) - 1


class ModuleCodec:
    """Packs (monomial, component, block) triples into single ints."""

    __slots__ = ("ring", "monomask", "tagbit", "identmask", "_unit")

    def __init__(self, ring: PolyRing):
        self.ring = ring
        monobits = 8 * (ring.nvars + 1)
        self.monomask = ((1 << monobits) - 1) << COMP_BITS
        self.tagbit = 1 << (COMP_BITS + monobits)
        self.identmask = COMP_MASK | self.tagbit
        self._unit = ring.unit_key

    def mkey(self, mono: int, comp: int, tag: bool = False) -> int:
        if comp > COMP_MASK:
            raise ValueError(f"component index {comp} out of range")
        base = (mono << COMP_BITS) | (COMP_MASK - comp)
        return base if tag else base | self.tagbit

    def mono_of(self, mkey: int) -> int:
        return (mkey & self.monomask) >> COMP_BITS

    def comp_of(self, mkey: int) -> int:
        return COMP_MASK - (mkey & COMP_MASK)

    def is_tag(self, mkey: int) -> bool:
        return not (mkey & self.tagbit)

    def delta(self, mono: int) -> int:
        """Additive shift realizing multiplication by the given monomial."""
        return (mono - self._unit) << COMP_BITS


def module_codec(ring: PolyRing) -> ModuleCodec:
    codec = getattr(ring, "_module_codec", None)
    if codec is None:
        codec = ModuleCodec(ring)
        ring._module_codec = codec
    return codec


def _submul(dst: dict, src: dict, coeff: int, delta: int, p: int):
    """dst -= coeff * (src shifted by delta), dropping zeros."""
    get = dst.get
    pop = dst.pop
    for k, c in src.items():
        kk = k + delta
        v = (get(kk, 0) - coeff * c) % p
        if v:
            dst[kk] = v
        else:
            pop(kk, None)


class _ReducerSet:
    """Mutable family of vectors indexed for division: find and apply reducers."""

    def __init__(self, ring: PolyRing, codec: ModuleCodec):
        self.ring = ring
        self.codec = codec
        self.p = ring.field.p
        self.vecs: list[dict] = []
        self.leads: list[int] = []
        self.monos: list[int] = []
        self.invs: list[int] = []
        self.idents: list[int] = []
        self.maxdegs: list[int] = []
        self.buckets: dict[int, list[int]] = {}

    def add(self, vec: dict) -> int:
        lead = max(vec)
        idx = len(self.vecs)
        self.vecs.append(vec)
        self.leads.append(lead)
        mono = self.codec.mono_of(lead)
        self.monos.append(mono)
        self.invs.append(pow(vec[lead], self.p - 2, self.p))
        ident = lead & self.codec.identmask
        self.idents.append(ident)
        degf = self.ring.mono_degree
        mono_of = self.codec.mono_of
        self.maxdegs.append(max(degf(mono_of(k)) for k in vec))
        self.buckets.setdefault(ident, []).append(idx)
        return idx

    def reduce(self, vec: dict, skip: int = -1) -> dict:
        """Full normal form of vec against the current family."""
        ring = self.ring
        codec = self.codec
        p = self.p
        divides = ring.mono_divides
        mono_of = codec.mono_of
        cap = ring.degree_cap
        work = dict(vec)
        out: dict[int, int] = {}
        while work:
            k = max(work)
            ident = k & codec.identmask
            mono = mono_of(k)
            hit = -1
            for i in self.buckets.get(ident, ()):
                if i != skip and divides(self.monos[i], mono):
                    hit = i
                    break
            if hit < 0:
                out[k] = work.pop(k)
                continue
            quot = ring.mono_div(mono, self.monos[hit])
            qdeg = ring.mono_degree(quot)
            if qdeg and qdeg + self.maxdegs[hit] > cap:
                raise DegreeCapError(
                    f"reduction would pass degree {qdeg + self.maxdegs[hit]} > cap {cap}"
                )
            factor = work[k] * self.invs[hit] % p
            _submul(work, self.vecs[hit], factor, codec.delta(quot), p)
        return out


class VectorGB:
    """A reduced Groebner basis of a submodule, usable as a reducer.

    Elements are monic, pairwise tail-reduced, and sorted by ascending lead
    key, so equal submodules yield identical objects term for term.
    """

    def __init__(self, ring: PolyRing, elements: list[dict]):
        self.ring = ring
        self.codec = module_codec(ring)
        self.elements = elements
        self._red = _ReducerSet(ring, self.codec)
        for vec in elements:
            self._red.add(vec)

    def reduce(self, vec: dict) -> dict:
        return self._red.reduce(vec) if vec else {}

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def lead_keys(self) -> list[int]:
        return list(self._red.leads)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(
    inputs: list[dict],
    ring: PolyRing,
    *,
    collect_syz: bool = False,
    strip_tags: bool = True,
    twists_f: tuple[int, ...] = (),
    twists_t: tuple[int, ...] = (),
) -> tuple[VectorGB, list[dict]]:
    """Reduced Groebner basis of the span of `inputs`, plus syzygy generators.

    With `collect_syz`, every input is augmented by a unit tag before the
    run and the returned second component holds generators of the syzygy
    module of the inputs, written as plain working-block vectors whose
    component j stands for input j.  Without it the second component is [].
    With `strip_tags=False` the basis elements keep their tag parts; since
    tags record how an element was combined from the inputs, reducing a
    plain vector against such a basis leaves, in the tag block, minus the
    coordinates of one expression of that vector in terms of the inputs.

    The product criterion is only applied to pairs of single-component
    elements and never when collecting syzygies (a pair with coprime leads
    reduces to zero, but its tag is an essential Koszul syzygy).  The chain
    criterion discards a pair only against strictly smaller lcms, which
    keeps the discard relation well founded and the collected tags
    generating.
    """
    codec = module_codec(ring)
    p = ring.field.p
    red = _ReducerSet(ring, codec)
    single: list[int | None] = []
    tagonly: list[bool] = []
    syz: list[dict] = []
    pairs: list[tuple[int, int, int, int]] = []

    def queue_degree(tau: int, ident: int) -> int:
        comp = COMP_MASK - (ident & COMP_MASK)
        if ident & codec.tagbit:
            tw = twists_f[comp] if comp < len(twists_f) else 0
        else:
            tw = twists_t[comp] if comp < len(twists_t) else 0
        return ring.mono_degree(tau) + tw

    def insert(vec: dict):
        r = red.reduce(vec)
        if not r:
            return
        lead = max(r)
        if codec.is_tag(lead):
            if collect_syz:
                syz.append(dict(r))
            red.add(r)
            tagonly.append(True)
            single.append(None)
            return
        idx = red.add(r)
        tagonly.append(False)
        idents = {k & codec.identmask for k in r}
        single.append(red.idents[idx] if len(idents) == 1 else None)
        mono = red.monos[idx]
        ident = red.idents[idx]
        for i in red.buckets[ident]:
            if i == idx:
                continue
            tau = ring.mono_lcm(red.monos[i], mono)
            heappush(pairs, (queue_degree(tau, ident), tau, i, idx))

    for j, vec in enumerate(inputs):
        if collect_syz:
            vec = dict(vec)
            vec[codec.mkey(ring.unit_key, j, tag=True)] = 1
        elif not vec:
            continue
        insert(vec)

    lcm = ring.mono_lcm
    divides = ring.mono_divides
    while pairs:
        _, tau, i, j = heappop(pairs)
        mi, mj = red.monos[i], red.monos[j]
        ident = red.idents[i]
        superfluous = False
        for l in red.buckets[ident]:
            if l == i or l == j:
                continue
            if divides(red.monos[l], tau) and lcm(mi, red.monos[l]) != tau and lcm(red.monos[l], mj) != tau:
                superfluous = True
                break
        if superfluous:
            continue
        if (
            not collect_syz
            and single[i] is not None
            and single[i] == single[j]
            and ring.mono_mul(mi, mj) == tau
        ):
            continue
        s: dict[int, int] = {}
        _submul(s, red.vecs[i], p - red.invs[i], codec.delta(ring.mono_div(tau, mi)), p)
        _submul(s, red.vecs[j], red.invs[j], codec.delta(ring.mono_div(tau, mj)), p)
        insert(s)

    # Canonical form: minimal, tail-reduced, monic, ascending leads.
    kept: list[int] = []
    for i in range(len(red.vecs)):
        if tagonly[i]:
            continue
        redundant = False
        for l in red.buckets[red.idents[i]]:
            if l != i and not tagonly[l] and divides(red.monos[l], red.monos[i]):
                redundant = True
                break
        if redundant:
            continue
        kept.append(i)
    final = _ReducerSet(ring, codec)
    slots = [final.add(red.vecs[i]) for i in kept]
    out: list[dict] = []
    for slot in slots:
        vec = final.reduce(final.vecs[slot], skip=slot)
        inv = pow(vec[max(vec)], p - 2, p)
        vec = {
            k: c * inv % p
            for k, c in vec.items()
            if not (strip_tags and codec.is_tag(k))
        }
        out.append(vec)
    out.sort(key=lambda v: max(v))
    syz_out = [{k | codec.tagbit: c for k, c in s.items()} for s in syz]
    return VectorGB(ring, out), syz_out


# -- t-polynomials: numerators of Hilbert series ---------------------------


def _tp_shift(a: dict[int, int], s: int) -> dict[int, int]:
    return {d + s: c for d, c in a.items()}


def _tp_sub(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for d, c in b.items():
        v = out.get(d, 0) - c
        if v:
            out[d] = v
        else:
            out.pop(d, None)
    return out


def _tp_add(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    return _tp_sub(a, {d: -c for d, c in b.items()})


def tp_value_at_one(a: dict[int, int]) -> int:
    return sum(a.values())


def _tp_dense(a: dict[int, int]) -> tuple[int, list[int]]:
    if not a:
        return 0, []
    lo, hi = min(a), max(a)
    arr = [0] * (hi - lo + 1)
    for d, c in a.items():
        arr[d - lo] = c
    return lo, arr


def tp_one_minus_t_valuation(a: dict[int, int]) -> int:
    """Multiplicity of the root t = 1."""
    v = 0
    while a and tp_value_at_one(a) == 0:
        lo, arr = _tp_dense(a)
        run = 0
        quot = {}
        for i, c in enumerate(arr[:-1]):
            run += c
            if run:
                quot[lo + i] = run
        a = quot
        v += 1
    return v


def tp_exact_quotient(a: dict[int, int], w: int) -> dict[int, int] | None:
    """a / (1 - t^w) if the division is exact, else None."""
    if not a:
        return {}
    lo, arr = _tp_dense(a)
    q = [0] * len(arr)
    for i in range(len(arr)):
        q[i] = arr[i] + (q[i - w] if i >= w else 0)
    if any(q[i] for i in range(max(len(arr) - w, 0), len(arr))):
        return None
    return {lo + i: c for i, c in enumerate(q[: max(len(arr) - w, 0)]) if c}


def tp_series(a: dict[int, int], weights: tuple[int, ...], upto: int) -> dict[int, int]:
    """Coefficients of a / prod(1 - t^w) through degree `upto`."""
    if not a:
        return {}
    lo, arr = _tp_dense(a)
    n = upto - lo + 1
    if n <= 0:
        return {}
    cur = (arr + [0] * n)[:n]
    for w in weights:
        for i in range(w, n):
            cur[i] += cur[i - w]
    return {lo + i: c for i, c in enumerate(cur) if c}


# -- numerators of monomial quotients ---------------------------------------


def _exp_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize_exps(gens) -> tuple[tuple[int, ...], ...]:
    degs = sorted(set(gens), key=lambda g: (sum(g), g))
    keep: list[tuple[int, ...]] = []
    for g in degs:
        if not any(_exp_divides(h, g) for h in keep):
            keep.append(g)
    return tuple(keep)


_numerator_memo: dict[tuple, dict[int, int]] = {}
_numerator_lock = threading.Lock()


def monomial_quotient_numerator(
    gens: tuple[tuple[int, ...], ...], weights: tuple[int, ...]
) -> dict[int, int]:
    """Numerator of the Hilbert series of S/(monomial ideal) over the
    denominator prod_v (1 - t^{w_v})."""
    gens = _minimalize_exps(gens)
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    key = (weights, gens)
    with _numerator_lock:
        hit = _numerator_memo.get(key)
    if hit is not None:
        return hit
    pivot = gens[-1]
    rest = gens[:-1]
    colon = tuple(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in rest)
    wdeg = sum(w * e for w, e in zip(weights, pivot))
    out = _tp_sub(
        monomial_quotient_numerator(rest, weights),
        _tp_shift(monomial_quotient_numerator(colon, weights), wdeg),
    )
    with _numerator_lock:
        _numerator_memo[key] = out
    return out


# -- quotient ring contexts --------------------------------------------------


class RingCtx:
    """A graded quotient R = GF(p)[x_1..x_n]/I with cached Groebner data.

    Relations must be homogeneous of positive degree, so R is a standard
    (or weighted) graded algebra and every module over it decomposes into
    finite-dimensional graded pieces.
    """

    def __init__(self, ring: PolyRing, relations=()):
        rels = list(relations)
        for f in rels:
            if not isinstance(f, Polynomial) or f.ring is not ring:
                raise ValueError("relations must be polynomials of the given ring")
            if f.is_zero():
                raise ValueError("zero relation")
            if not f.is_homogeneous():
                raise ValueError(f"relation {f} is not homogeneous")
            if f.degree() < 1:
                raise ValueError(f"relation {f} is a unit")
        self.ring = ring
        self.codec = module_codec(ring)
        self.relations = tuple(rels)
        vecs = [{self.codec.mkey(k, 0): c for k, c in f.raw().items()} for f in rels]
        gbv, _ = buchberger(vecs, ring)
        mono_of = self.codec.mono_of
        self.ideal_gb: tuple[dict[int, int], ...] = tuple(
            {mono_of(k): c for k, c in vec.items()} for vec in gbv
        )
        self.ideal_leads: tuple[int, ...] = tuple(max(g) for g in self.ideal_gb)
        self._ideal_maxdeg = tuple(
            max(ring.mono_degree(k) for k in g) for g in self.ideal_gb
        )
        lead_exps = tuple(ring.decode_monomial(m) for m in self.ideal_leads)
        self.numerator = monomial_quotient_numerator(lead_exps, ring.weights)
        self.dim = ring.nvars - tp_one_minus_t_valuation(self.numerator)
        hf = self.numerator
        for w in ring.weights:
            if hf is None:
                break
            hf = tp_exact_quotient(hf, w)
        if self.dim == 0:
            if hf is None:
                raise InvariantViolation("artinian ring with non-polynomial series")
            self._hf = hf
            self.top_degree = max(hf) if hf else 0
            self.length = tp_value_at_one(hf)
        else:
            self._hf = None
            self.top_degree = None
            self.length = None
        self._std: dict[int, list[int]] = {}
        self._act: dict[tuple[int, int], np.ndarray] = {}
        self._lock = threading.RLock()
        # Slot for caches living in higher layers (resolutions, modules).
        self.scratch: dict = {}

    @property
    def is_artinian(self) -> bool:
        return self.dim == 0

    def hilbert_function(self, degree: int) -> int:
        """dim_k R_degree."""
        if degree < 0:
            return 0
        if self._hf is not None:
            return self._hf.get(degree, 0)
        return tp_series(self.numerator, self.ring.weights, degree).get(degree, 0)

    def nf_poly(self, f: Polynomial) -> Polynomial:
        """Normal form of f modulo the defining ideal."""
        if f.ring is not self.ring:
            raise ValueError("polynomial from a different ring")
        vec = {self.codec.mkey(k, 0): c for k, c in f.raw().items()}
        red = reduce_vec_by_ideal(vec, self)
        return Polynomial(self.ring, {self.codec.mono_of(k): c for k, c in red.items()})

    def std_monomials(self, degree: int) -> list[int]:
        """Monomial basis of R_degree (packed keys, descending)."""
        with self._lock:
            hit = self._std.get(degree)
            if hit is not None:
                return hit
        ring = self.ring
        divides = ring.mono_divides
        keys = []
        for exps in ring.monomials_of_degree(degree):
            k = ring.encode_monomial(exps)
            if not any(divides(lead, k) for lead in self.ideal_leads):
                keys.append(k)
        keys.sort(reverse=True)
        with self._lock:
            self._std[degree] = keys
        return keys

    def action_matrix(self, var: int, degree: int) -> np.ndarray:
        """Matrix of multiplication by x_var from R_degree to R_{degree+w}."""
        with self._lock:
            hit = self._act.get((var, degree))
            if hit is not None:
                return hit
        ring = self.ring
        src = self.std_monomials(degree)
        dst = self.std_monomials(degree + ring.weights[var])
        index = {m: i for i, m in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        vkey = ring._var_keys[var]
        for j, m in enumerate(src):
            prod = ring.mono_mul(vkey, m)
            red = reduce_vec_by_ideal({self.codec.mkey(prod, 0): 1}, self)
            for k, c in red.items():
                mat[index[self.codec.mono_of(k)], j] = c
        with self._lock:
            self._act[(var, degree)] = mat
        return mat

    def socle_dims(self) -> list[int]:
        """dim_k of the socle in each degree (artinian rings only)."""
        if not self.is_artinian:
            raise ValueError("socle by degree needs an artinian ring")
        from .linalg import rank_mod

        out = []
        for d in range(self.top_degree + 1):
            src = self.std_monomials(d)
            if not src:
                out.append(0)
                continue
            stack = [self.action_matrix(v, d) for v in range(self.ring.nvars)]
            mat = np.vstack([m for m in stack if m.size] or [np.zeros((0, len(src)), np.int64)])
            out.append(len(src) - (rank_mod(mat, self.ring.field.p) if mat.size else 0))
        return out

    def __repr__(self) -> str:
        rels = ", ".join(str(f) for f in self.relations) or "0"
        return f"{self.ring!r} / ({rels})"


def reduce_vec_by_ideal(vec: dict, ctx: RingCtx) -> dict:
    """Full normal form of every component of vec modulo the defining ideal."""
    ring = ctx.ring
    p = ring.field.p
    divides = ring.mono_divides
    mono_of = ctx.codec.mono_of
    cap = ring.degree_cap
    work = dict(vec)
    out: dict[int, int] = {}
    while work:
        k = max(work)
        mono = mono_of(k)
        hit = -1
        for i, lead in enumerate(ctx.ideal_leads):
            if divides(lead, mono):
                hit = i
                break
        if hit < 0:
            out[k] = work.pop(k)
            continue
        g = ctx.ideal_gb[hit]
        lead = ctx.ideal_leads[hit]
        quot = ring.mono_div(mono, lead)
        qdeg = ring.mono_degree(quot)
        if qdeg and qdeg + ctx._ideal_maxdeg[hit] > cap:
            raise DegreeCapError(f"reduction passes the degree cap {cap}")
        factor = work[k] * pow(g[lead], p - 2, p) % p
        for mk, c in g.items():
            nk = k + ((ring.mono_mul(quot, mk) - mono) << COMP_BITS)
            v = (work.get(nk, 0) - factor * c) % p
            if v:
                work[nk] = v
            else:
                work.pop(nk, None)
    return out


def quotient_helpers(ctx: RingCtx, rank: int) -> list[dict]:
    """The vectors q*e_c for ideal basis elements q: lifting a module over
    R = S/I to S means adjoining these."""
    out = []
    for c in range(rank):
        for g in ctx.ideal_gb:
            out.append({ctx.codec.mkey(mk, c): coeff for mk, coeff in g.items()})
    return out


def module_gb(
    ctx: RingCtx, vectors: list[dict], rank: int, twists: tuple[int, ...] = ()
) -> VectorGB:
    """Groebner basis over R of the span of `vectors` inside R^rank.

    Computed by lifting: the basis of the span over S of the vectors plus
    the ideal helpers reduces vectors exactly as the quotient would.
    """
    return buchberger(
        list(vectors) + quotient_helpers(ctx, rank), ctx.ring, twists_f=twists
    )[0]


def syzygies_for(
    ctx: RingCtx,
    vectors: list[dict],
    rank: int,
    col_degrees: tuple[int, ...] = (),
    row_twists: tuple[int, ...] = (),
) -> tuple[list[dict], VectorGB]:
    """Generators of the syzygy module over R of `vectors` in R^rank.

    Returns (syzygies, gb) where the syzygies live in a free module with
    one component per input vector and the basis is the lifted one (handy
    for membership tests against the same span).
    """
    m = len(vectors)
    helpers = quotient_helpers(ctx, rank)
    helper_degs = []
    for c in range(rank):
        base = row_twists[c] if c < len(row_twists) else 0
        for g in ctx.ideal_gb:
            helper_degs.append(base + ctx.ring.mono_degree(max(g)))
    gbv, syz = buchberger(
        list(vectors) + helpers,
        ctx.ring,
        collect_syz=True,
        twists_f=row_twists,
        twists_t=tuple(col_degrees) + tuple(helper_degs),
    )
    codec = ctx.codec
    out = []
    for s in syz:
        v = {k: c for k, c in s.items() if codec.comp_of(k) < m}
        v = reduce_vec_by_ideal(v, ctx)
        if v:
            out.append(v)
    out.sort(key=lambda v: max(v))
    return out, gbv


def tagged_module_gb(
    ctx: RingCtx,
    vectors: list[dict],
    rank: int,
    col_degrees: tuple[int, ...] = (),
    row_twists: tuple[int, ...] = (),
) -> VectorGB:
    """Like module_gb, but basis elements remember their expression in
    terms of the inputs (tag block kept)."""
    helpers = quotient_helpers(ctx, rank)
    helper_degs = []
    for c in range(rank):
        base = row_twists[c] if c < len(row_twists) else 0
        for g in ctx.ideal_gb:
            helper_degs.append(base + ctx.ring.mono_degree(max(g)))
    gbv, _ = buchberger(
        list(vectors) + helpers,
        ctx.ring,
        collect_syz=True,
        strip_tags=False,
        twists_f=row_twists,
        twists_t=tuple(col_degrees) + tuple(helper_degs),
    )
    return gbv


def express_in_family(
    ctx: RingCtx, tagged: VectorGB, vec: dict, nfam: int
) -> list[Polynomial] | None:
    """Coordinates of `vec` over the first `nfam` inputs of a tagged basis,
    valid modulo the defining ideal; None if vec is not in the span."""
    codec = ctx.codec
    p = ctx.ring.field.p
    rho = tagged.reduce(vec)
    coords: list[dict[int, int]] = [{} for _ in range(nfam)]
    for k, c in rho.items():
        if not codec.is_tag(k):
            return None
        comp = codec.comp_of(k)
        if comp < nfam:
            coords[comp][codec.mono_of(k)] = p - c
    out = []
    for d in coords:
        f = Polynomial(ctx.ring, d)
        out.append(ctx.nf_poly(f) if d else f)
    return out


def lead_exponents_by_comp(gbv: VectorGB, rank: int) -> list[tuple[tuple[int, ...], ...]]:
    """Exponent vectors of the lead monomials, grouped by component."""
    ring = gbv.ring
    codec = gbv.codec
    groups: list[list[tuple[int, ...]]] = [[] for _ in range(rank)]
    for vec in gbv:
        k = max(vec)
        groups[codec.comp_of(k)].append(ring.decode_monomial(codec.mono_of(k)))
    return [tuple(g) for g in groups]


def presented_numerator(
    ctx: RingCtx, gbv: VectorGB, rank: int, twists: tuple[int, ...]
) -> dict[int, int]:
    """Hilbert series numerator of R^rank(twists)/span, over prod(1-t^w)."""
    out: dict[int, int] = {}
    for c, exps in enumerate(lead_exponents_by_comp(gbv, rank)):
        num = monomial_quotient_numerator(exps, ctx.ring.weights)
        out = _tp_add(out, _tp_shift(num, twists[c] if c < len(twists) else 0))
    return out
