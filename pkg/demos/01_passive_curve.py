# %% [markdown]
# # A single passive learner
#
# Mastery of one knowledge component follows a logistic update. With the
# default difficulty and passive load, five practices take it past 0.8.

# %%
from abicap import get_scenario, run_experiment, sigmoid

result = run_experiment(get_scenario("passive_curve"))
trace = result["passive"].mastery_trace[:, 0, 0]
for step, m in enumerate(trace[:8], start=1):
    print(f"practice {step}: mastery {m:.4f}{'  <- known' if m > 0.8 else ''}")

# %% [markdown]
# The first value is the sigmoid of ``-(b + cl_passive) = -1.1``.

# %%
print(round(sigmoid(-1.1), 4), round(float(trace[0]), 4))

# %% [markdown]
# Once a node is known the learner moves on, so node 0 is frozen from
# practice 5. Practising it forever would approach the fixed point near
# 0.878 instead.

# %%
m = 0.0
for _ in range(200):
    m = sigmoid(3.5 * m - 1.1)
print(f"frozen at {trace[-1]:.4f}; fixed point {m:.4f}")
