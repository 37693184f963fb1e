# %% [markdown]
# # Without edges, only cognitive load matters
#
# On a graph with no edges every mode reduces to the passive update with a
# different load, so cheaper modes win and every learner in a mode is
# identical.

# %%
from abicap import get_scenario, run_experiment

result = run_experiment(get_scenario("edgeless"))
for name, cond in result.conditions.items():
    k = cond.knowledge
    print(f"{name:>13}: step-40 knowledge {k[-1, 0]}, identical learners: {bool((k == k[:, :1]).all())}")
