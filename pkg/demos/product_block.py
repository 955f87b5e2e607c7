"""One 7 x 4 block through the Z2Z4 product scheme, and how often a block has
no solution using +/-1 changes."""

from __future__ import annotations

import numpy as np

from z2z4steg import EmbeddingError, product_check, z2z4_product_bounds, z2z4_product_embed, z2z4_product_extract

H = product_check(3, 1)
rng = np.random.default_rng(5)
block = rng.integers(0, 256, (7, 4))
msg = rng.integers(0, 2, 24).tolist()
res = z2z4_product_embed(block, msg, H)
print(res.stego - block)
print(z2z4_product_extract(res.stego, H) == msg)

D, E = z2z4_product_bounds(3)
print("bound", float(D), "rate", float(E))

# flat covers sit on the range edge and some messages cannot be reached
for value in (0, 128, 255):
    stuck = 0
    for _ in range(500):
        try:
            z2z4_product_embed(np.full((7, 4), value), rng.integers(0, 2, 24).tolist(), H)
        except EmbeddingError:
            stuck += 1
    print(value, stuck / 500)
