# coding: utf-8

# # Weighted gradient descent on a box-constrained interval quadratic
#
# The objective is `[2,6](x1-2)^2 + [5,7](x2-3)^2 + [5,12]` on `[0,6]^2`. Its
# only efficient point is `(2, 3)`, whatever weight we scalarize with.

# In[1]:

import numpy as np

from ghopt import SolverConfig, WeightPair, solve_w_gradient
from ghopt.problems import SWEEPS, get_problem

f = get_problem("example-5.2")
weights, starts = SWEEPS["example-5.2"]


# Run every (weight, start) pair and tabulate the outcome.

# In[2]:

print(f"{'w':>4} {'x0':>12} {'steps':>6} {'terminal':>22}  status")
for w in weights:
    for x0 in starts:
        tr = solve_w_gradient(f, SolverConfig(x0, WeightPair(w)))
        print(f"{w:>4} {str(x0):>12} {tr.n_iter:>6} {np.array2string(tr.x, precision=5):>22}  "
              f"{tr.status.value}")


# With a reference point the trace also records how fast the distance to it
# shrinks. Ratios well under one mean linear convergence.

# In[3]:

tr = solve_w_gradient(f, SolverConfig((0, 6), WeightPair(0.5), reference=(2, 3)))
print(np.round(tr.contraction_ratios, 3))


# Each record carries the interval value, gradient and step length.

# In[4]:

for rec in tr.iterations[:4]:
    print(rec.k, rec.x, rec.value, rec.alpha)
