"""Active sharing: the first observers deliberately help the second pair.

Above G = 0.8 the pi/4 settings stop working for the second observers, but
rotating the first observers' angles keeps both violations alive arbitrarily
close to sharp measurements.  Compares the closed-form strategy with a
numerical angle search at a few precision values.
"""

import numpy as np

from bilocalnet import (
    PointerSpec,
    ScenarioConfig,
    active_violation_window,
    closed_form_active,
    evaluate_all,
    optimize_angles,
)

window = active_violation_window()
print(f"double violation possible for G in ({window[0]:.5f}, {window[1]:.5f})")
print("(the passive strategy stops at G = 0.91018)\n")

print("closed-form helping strategy:")
print(f"{'G':>5} {'theta1':>8} {'theta2':>8} {'B11':>9} {'B22':>9}  branch")
for g in np.linspace(0.70, 0.97, 10):
    sol = closed_form_active(float(g))
    print(f"{g:5.2f} {sol.theta_first:8.4f} {sol.theta_second:8.4f} "
          f"{sol.b11:9.5f} {sol.b22:9.5f}  {sol.branch}")

# the closed form is a suboptimal analytical solution: a direct search over
# angles does at least as well on the balanced objective min(B11, B22)
print("\nnumerical search (maximize min(B11, B22)) vs closed form:")
for g in (0.85, 0.9, 0.95):
    sol = closed_form_active(g)
    spec = PointerSpec.optimal(g)
    result = optimize_angles(ScenarioConfig.symmetric(spec, spec), "maxmin")
    print(f"  G={g:.2f}: closed-form min = {min(sol.b11, sol.b22):.5f}, "
          f"search reaches {result.value:.5f}")

# sanity: the pipeline at the closed form's angles reproduces its values
g = 0.9
sol = closed_form_active(g)
spec = PointerSpec.optimal(g)
config = ScenarioConfig.symmetric(spec, spec, sol.theta_first, sol.theta_second)
results = evaluate_all(config)
print(f"\npipeline check at G={g}: B11 dev {abs(results[(1,1)].B - sol.b11):.1e}, "
      f"B22 dev {abs(results[(2,2)].B - sol.b22):.1e}")
