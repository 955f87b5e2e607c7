"""KP product embedding against its distortion bound, with and without the
two-flip shortcut on the column."""

from __future__ import annotations

import math

from z2z4steg import kp_distortion_bound, kp_rate, simulate

for level in (2, 3, math.inf):
    print(level, float(kp_distortion_bound(3, level)), float(kp_rate(3, level)))

fast = simulate("kp", 3, 20_000, seed=7, level=2)
slow = simulate("kp", 3, 20_000, seed=7, level=2, optimize=False)
print(fast.to_json())
print("shortcut saves", slow.D_hat - fast.D_hat, "changes per symbol")
