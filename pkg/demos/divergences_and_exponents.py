"""Distinguishing two population ratios through a private channel.

The same three-symbol pair maximises every f-divergence and every Renyi
divergence, so the hypothesis-testing exponents can be read off closed forms.
"""

import math

from rroptimal import PrivacyBudget
from rroptimal.exponents import (
    chernoff_exponent,
    max_chernoff,
    max_hoeffding,
    max_stein,
    min_han_kobayashi,
)
from rroptimal.information import KL, SQUARED_HELLINGER, TOTAL_VARIATION, max_f_divergence, max_renyi
from rroptimal.mechanisms import optimal_three_symbol, warner

budget = PrivacyBudget(0.25, 0.5)
t1, t2 = 0.3, 0.7

print(f"theta1={t1} theta2={t2}, delta={budget.delta}")
for name, f in (("KL", KL), ("total variation", TOTAL_VARIATION), ("squared Hellinger", SQUARED_HELLINGER)):
    print(f"  max {name:18s} {max_f_divergence(budget, t1, t2, f):.6f}")
print(f"  KL check 0.1*ln(7/3)  {0.1 * math.log(7 / 3):.6f}")

print("\nRenyi divergence of order 1+s")
for s in (-0.9, -0.5, 0.0, 0.5, 1.0, 4.0):
    print(f"  s={s:5.2f}  {max_renyi(budget, t1, t2, s):.6f}")

ch = max_chernoff(budget, t1, t2)
print(f"\nChernoff {ch.value:.9f} at s*={ch.s_star:.6f}  (Warner: {chernoff_exponent(warner(0.25), t1, t2).value:.9f})")
print(f"Stein    {max_stein(budget, t1, t2):.9f}")
for r in (0.0, 0.02, 0.05, 0.08):
    h = max_hoeffding(budget, t1, t2, r)
    k = min_han_kobayashi(budget, t1, t2, r)
    print(f"  r={r:.2f}  Hoeffding {h.value:.6f} (s*={h.s_star:+.4f})  Han-Kobayashi {k.value:+.6f}")

print("\nrelaxing the budget helps:")
for d in (0.1, 0.25, 0.5, 0.9):
    print(f"  delta={d:<4} Chernoff {max_chernoff(PrivacyBudget(d), t1, t2).value:.6f}")
pair = optimal_three_symbol(budget)
print(f"\noptimal pair {pair.to_json()}")
