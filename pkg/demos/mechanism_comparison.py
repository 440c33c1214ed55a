"""Print the four mechanisms of the comparison table at delta = 1/4 and check
that each one spends exactly the same privacy budget."""

from rroptimal import PrivacyBudget
from rroptimal.mechanisms import greenberg, holohan, optimal_three_symbol, warner
from rroptimal.privacy import dp_delta, min_weighted_error, uc_security

delta = 0.25
budget = PrivacyBudget(delta, 0.5)

rows = [
    ("Warner", warner(delta)),
    ("Greenberg (eta=1/2)", greenberg(delta, 0.5)),
    ("Holohan, theta<=1/2", holohan(delta, 0.3)),
    ("Holohan, theta>1/2", holohan(delta, 0.7)),
    ("three-symbol optimum", optimal_three_symbol(budget)),
]

print(f"{'scheme':22s} {'p0':24s} {'p1':24s}  uc    min err  dp(0)")
for name, pair in rows:
    print(
        f"{name:22s} {str(pair.p0.tolist()):24s} {str(pair.p1.tolist()):24s}"
        f"  {uc_security(pair, 0.5):.3f} {min_weighted_error(pair, 0.5):.3f}    {dp_delta(pair, 0.0):.3f}"
    )

# every row sits on the budget boundary: uc == delta, min error == a
print(f"\nbudget: delta={delta}, a={budget.a}")
