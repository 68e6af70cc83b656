"""Windowed vanishing scans, consistency checkers, and the search harness.

A scan never claims anything beyond its window: `tail_vanishing` means
"zero on (ring dimension, H]", and the harness re-confirms anything
suspicious at a wider window before logging it as a candidate.  On the
shipped rings the candidate list stays empty.
"""

from extlab.groebner import RingCtx
from extlab.modules import PresentedModule
from extlab.poly import FieldSpec, PolyRing
from extlab.vanishing import (
    ExperimentConfig,
    change_of_rings_check,
    quotient_context,
    random_pair,
    scan_ext,
    search_harness,
    symmetry_check,
)

ring = PolyRing(FieldSpec(101), ("x", "y"))
nil = RingCtx(ring, [ring.parse("x^2"), ring.parse("y^2")])
k = PresentedModule.residue_field(nil)
free = PresentedModule.free(nil, (0,))

# k against the ring: everything vanishes, so the tail verdict is clean.
pat = scan_ext(k, free, 8)
print("Ext(k, R) pattern:", pat.to_json_dict()["dims"],
      "tail_vanishing:", pat.tail_vanishing)

# k against itself: nothing ever vanishes over an artinian non-regular ring.
pat = scan_ext(k, k, 8)
print("Ext(k, k) pattern:", pat.to_json_dict()["dims"],
      "last nonzero:", pat.last_nonzero)

# Checkers wrap pairs of scans and retry once at a wider window before
# calling anything a violation.
cfg = ExperimentConfig(seed=11, trials=5)
A, B = random_pair(cfg, nil, 0)
rep = symmetry_check(A, B, 8)
print("\nsymmetry check:", rep.verdict,
      "forward tail:", rep.details["forward"].tail_vanishing,
      "reverse tail:", rep.details["reverse"].tail_vanishing)

# The harness logs every trial with replay data; candidates would be
# patterns that vanish on a final segment after being alive past dim R.
report = search_harness(cfg, nil)
print(f"harness: {len(report['trials'])} trials, "
      f"{len(report['candidates'])} candidates, note: {report['note']}")

# Change of rings: compare homological data over GF(101)[x,y] with data
# over its quotient by x^2 on a window, including the periodicity and
# syzygy-transfer comparisons.
plane = RingCtx(ring, [])
f = ring.parse("x^2")
R = quotient_context(plane, f)
kR = PresentedModule.residue_field(R)
print("\nchange of rings verdict:",
      change_of_rings_check(plane, f, kR, kR, 8).verdict)
