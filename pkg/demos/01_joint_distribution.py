"""Walk through the measurement pipeline of the two-source network.

Builds the exact joint outcome distribution for a configuration with
unsharp first observers, inspects a few of its entries, reduces it to a
tripartite marginal, and evaluates the network inequality for every
observer triple.
"""

import numpy as np

from bilocalnet import (
    PointerSpec,
    ScenarioConfig,
    brgp_quantities,
    evaluate_all,
    joint_table,
    marginal_tripartite,
    validate_density,
    werner_state,
)

np.set_printoptions(precision=4, suppress=True)

# Two sources at full visibility, optimal-pointer unsharp measurements with
# precision 0.8 for the first observer on each wing, pi/4 angles all around.
config = ScenarioConfig.symmetric(PointerSpec.optimal(0.8), PointerSpec.optimal(0.8))
print("source state (one wing):")
print(np.real(werner_state(config.v1)))
print("valid density:", validate_density(werner_state(config.v1)).is_valid)

table = joint_table(config)
print("\njoint table shape (i1,i2,j1,j2,a1,a2,b0,b1,c1,c2):", table.probs.shape)

block = table.context(0, 0, 0, 0)
print("context (0,0,0,0) sums to", block.sum())
print("probability of all-zero outcomes:", block[0, 0, 0, 0, 0, 0])

# the central outcome is uniform over the four Bell results
marginal_b = table.probs[0, 0, 0, 0].sum(axis=(0, 1, 4, 5))
print("central outcome distribution:\n", marginal_b)

# tripartite statistics of the first observer pair
dist = marginal_tripartite(table, 1, 1)
print("\ntripartite marginal (first observers), context (0,0) sums to",
      dist.probs[0, 0].sum())
print("inequality quantities for that pair:", brgp_quantities(dist))

print("\nall four observer triples:")
for (n, m), result in sorted(evaluate_all(config, table).items()):
    flag = "violated" if result.violated else "local-compatible"
    print(f"  pair ({n},{m}): I={result.I:+.5f} J={result.J:+.5f} "
          f"B={result.B:.5f}  [{flag}]")

print("\nAt G=0.8 every triple reaches B = sqrt(1.28) ~ 1.13137: the same")
print("statistics certify network nonlocality for all four observer pairs.")
