# coding: utf-8

# # Least squares with interval data
#
# Fit `H(X; beta) = C*beta1 + beta2*X + beta3*X*X` to interval observations,
# where `C` is an interval coefficient, then compare fitted and observed bands.

# In[1]:

from ghopt import WeightPair
from ghopt.dataio import build_fit_report, shipped_dataset
from ghopt.least_squares import ModelSpec, error_eval, fit

data = shipped_dataset("poly")
model = ModelSpec.polynomial((1.70, 12.00))
print(len(data), "rows; first:", data.rows[0])


# The error is itself an interval. Different weights trade its lower end
# against its upper end.

# In[2]:

for w in (0.3, 0.5):
    res = fit(model, data, (6, -8, 9), WeightPair(w))
    print(f"w={w}: beta = {res.beta_hat.round(4)}, E = {error_eval(model, data, res.beta_hat)}, "
          f"{res.trace.n_iter} steps, {res.trace.status.value}")


# Split each observed band against the fitted one: shared part, plus what
# only the data or only the model covers.

# In[3]:

report = build_fit_report(model, data, 0.5, res)
for row in report.rows[:5]:
    print(row.k, "overlap", row.overlap, "| data only", row.y_below, row.y_above,
          "| model only", row.h_below, row.h_above)


# The logistic model works the same way; its start sits on a flat region,
# which is why the fitting defaults use a tight gradient tolerance.

# In[4]:

logistic = ModelSpec.logistic((1.30, 3.40))
res = fit(logistic, shipped_dataset("logistic"), (7, -4), WeightPair(0.7))
print(res.beta_hat.round(4), res.trace.status.value, error_eval(logistic, shipped_dataset("logistic"), res.beta_hat))
