"""Gray map, Z2Z4 code types and one single-block embedding, step by step."""

from __future__ import annotations

from z2z4steg import build_z2z4_check, symbol_to_graybits, z2z4_embed, z2z4_extract, z2z4_params
from z2z4steg.graymap import pack_block

# 239 in base 4 is 3233, Gray bits 10 11 10 10
print(symbol_to_graybits(239))

# code types for m = 4
for delta in range(3):
    p = z2z4_params(4, delta)
    print(delta, p.alpha, p.beta, p.gamma, p.n, p.N)

H = build_z2z4_check(z2z4_params(3, 1))
print(H.dumps())

cover = [120, 37, 200, 5]
print("packed", pack_block(cover, H.code_type))
res = z2z4_embed(cover, [1, 0, 1], H)
print("stego", [int(v) for v in res.stego], "changes", res.changes)
print("extracted", z2z4_extract(res.stego, H))

# x1 sits on the edge of the range: the move is realized through two others
res = z2z4_embed([255, 255, 255, 255], [0, 1, 1], H)
print("extreme", res.extreme, [int(v) for v in res.stego])
