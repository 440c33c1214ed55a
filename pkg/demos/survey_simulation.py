"""Monte Carlo survey: the MLE through the optimal mechanism attains the
Cramer-Rao bound and its asymptotic interval covers at the nominal rate."""

from rroptimal import PrivacyBudget
from rroptimal.estimation import mle, sample_survey, simulate
from rroptimal.mechanisms import optimal_three_symbol, warner

budget = PrivacyBudget(0.25, 0.5)
opt = optimal_three_symbol(budget)

data = sample_survey(opt, theta=0.3, n=5000, seed=1)
est = mle(opt, data)
print("one survey of 5000 respondents, true theta 0.3")
print(f"  counts {data.counts}")
print(f"  theta_hat={est.theta_hat:.4f}  95% CI [{est.ci_lo:.4f}, {est.ci_hi:.4f}]")

print("\n2000 surveys of n=10^4 at theta=0.5")
print("  mechanism   MSE        1/(nJ)     ratio  coverage")
for name, pair in (("optimal", opt), ("warner", warner(0.25))):
    s = simulate(pair, 0.5, 10**4, 2000, seed=12345)
    print(f"  {name:10s} {s.mse:.3e}  {s.crb:.3e}  {s.mse_over_crb:.3f}  {s.coverage:.4f}")
# same budget, four times fewer respondents needed with the optimal pair
