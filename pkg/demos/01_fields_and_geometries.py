#!/usr/bin/env python3
"""Finite fields and projective geometries.

Builds GF(q) arithmetic tables, constructs PG(n-1, q) as a column matroid,
and shows the point-count function theta and the matrix text format.
"""

from matroidlab import emit_matrix, field_make, pg, subfield_subgeometry, theta
from matroidlab.bitset import bits, popcount

gf4 = field_make(4)
print("GF(4) built with modulus coefficients (low degree first):", gf4.modulus)
print("multiplication table:")
for a in range(4):
    print("  ", [gf4.mul(a, b) for b in range(4)])
print("2 * 2 =", gf4.mul(2, 2), "(the generator squared is its successor)")
print()

print("theta(q, r) = (q^r - 1)/(q - 1), the point count of PG(r-1, q):")
for q in (2, 3, 4, 5):
    print(f"  q={q}:", [theta(q, r) for r in range(6)])
print()

fano = pg(3, 2)
print(f"pg(3, 2) is the Fano plane: {fano.epsilon()} points, rank {fano.rank_full}")
print("its matrix in the text format (header 'q r n', one column per point):")
print(emit_matrix(fano))

big = pg(3, 4)
sub = subfield_subgeometry(big, 1)
print(f"pg(3, 4) has {big.epsilon()} points; its GF(2)-subfield copy keeps "
      f"{popcount(sub)} of them:", sorted(bits(sub)))
print("the restriction to those columns is a Fano plane inside PG(2, 4)")
