"""Brute-force certification: no feasible pair beats the closed forms.

Searches the extreme points of the feasible set on a grid plus 10^5 random
feasible pairs, then shows that breaking the optimality certificate costs
information.
"""

from rroptimal import PrivacyBudget
from rroptimal.information import KL, fisher_information, max_f_divergence, max_fisher
from rroptimal.mechanisms import is_optimal, optimal_three_symbol
from rroptimal.verify import (
    break_optimality,
    brute_force_max,
    f_divergence_objective,
    fisher_objective,
    sublinear_check,
)

for delta, w in ((0.25, 0.5), (0.25, 0.4), (0.6, 0.7)):
    budget = PrivacyBudget(delta, w)
    for theta in (0.1, 0.5, 0.9):
        obj = fisher_objective(theta)
        rep = brute_force_max(budget, obj, 3, 400, 100_000, seed=0, closed_form=max_fisher(budget, theta))
        print(f"delta={delta} w={w} theta={theta}: best {rep.best_value:.6f} closed form "
              f"{rep.closed_form_value:.6f} gap {rep.gap:+.1e} (sublinear: {sublinear_check(obj)}, "
              f"acceptance {rep.acceptance_rate:.2f})")

budget = PrivacyBudget(0.25, 0.5)
obj = f_divergence_objective(0.3, 0.7, KL)
rep = brute_force_max(budget, obj, 3, 400, 100_000, seed=0, closed_form=max_f_divergence(budget, 0.3, 0.7, KL))
print(f"\nKL(0.3||0.7): best {rep.best_value:.8f} closed form {rep.closed_form_value:.8f}")

pair = optimal_three_symbol(budget)
broken = break_optimality(pair, 1e-3)
print(f"\noptimal {pair.to_json()} certified: {is_optimal(pair, budget)}")
print(f"perturbed {broken.to_json()} certified: {is_optimal(broken, budget)}")
for theta in (0.2, 0.5, 0.8):
    print(f"  theta={theta}: J {fisher_information(pair, theta):.6f} -> {fisher_information(broken, theta):.6f}")
