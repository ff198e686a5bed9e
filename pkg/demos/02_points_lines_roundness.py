#!/usr/bin/env python3
"""Points, lines, local connectivity, and roundness with certificates.

Every predicate that can fail returns replayable evidence: a non-round
matroid comes with two rank-(r-1) flats covering the ground set.
"""

from matroidlab import (DirectSum, UniformMatroid, certificate_to_dict,
                        field_make, LinearMatroid, pg, verify_certificate)
from matroidlab.bitset import bits

m = LinearMatroid(field_make(2), [(1, 0), (1, 0), (0, 1), (0, 0)])
print("columns (10), (10), (01), (00) over GF(2):")
print("  points (parallel classes):", [sorted(bits(c)) for c in m.points()])
print("  loops:", sorted(bits(m.loops())), " epsilon:", m.epsilon())
print()

fano = pg(3, 2)
lines = fano.lines(3)
print(f"the Fano plane has {len(lines)} long lines:")
for line in lines:
    print("  ", sorted(bits(line)))
la, lb = lines[0], lines[1]
print("local connectivity of the first two:", fano.local_connectivity(la, lb),
      "(two plane lines always share a point)")
print()

print("roundness asks whether the ground set splits into two low-rank cells:")
print("  Fano plane round?", fano.is_round())
ds = DirectSum([UniformMatroid(2, 3), UniformMatroid(2, 3)])
ok, cover = ds.roundness()
print("  U(2,3) + U(2,3) round?", ok)
print("  witness (two covering hyperplanes):", certificate_to_dict(cover))
print("  witness replays:", verify_certificate(cover, ds))
