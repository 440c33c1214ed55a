"""How much Fisher information survives the privacy budget.

Compares the best binary-output mechanism, the three-symbol optimum and the
classical baselines across theta, then shows the budget dependence at
theta = 1/2.
"""

import numpy as np

from rroptimal import PrivacyBudget
from rroptimal.information import fisher_information, max_fisher
from rroptimal.mechanisms import greenberg, holohan, optimal_three_symbol, warner

delta = 0.25
for w in (0.5, 0.4):
    budget = PrivacyBudget(delta, w)
    print(f"delta={delta} w={w} (binary shapes switch at theta0={budget.theta0:.3f})")
    print(" theta   |Y|=2    |Y|>=3   gain")
    for theta in (0.05, 0.1, 0.25, 0.5, 0.75, 0.9):
        two, three = max_fisher(budget, theta, 2), max_fisher(budget, theta, 3)
        print(f" {theta:5.2f} {two:8.4f} {three:8.4f} {three / two:6.3f}x")
    print()

print("baselines at delta=1/4, w=1/2")
opt = optimal_three_symbol(PrivacyBudget(delta, 0.5))
print(" theta  warner  greenberg  holohan  optimal")
for theta in np.linspace(0.1, 0.9, 9):
    vals = [
        fisher_information(warner(delta), theta),
        fisher_information(greenberg(delta, 0.5), theta),
        fisher_information(holohan(delta, theta), theta),
        fisher_information(opt, theta),
    ]
    print(f" {theta:5.2f} " + " ".join(f"{v:8.4f}" for v in vals))

print("\nbudget dependence at theta=1/2 (unrandomized limit is 4)")
for d in (0.05, 0.25, 0.5, 0.75, 0.95, 0.999):
    print(f" delta={d:<6} J_max={max_fisher(PrivacyBudget(d), 0.5):.4f}")
