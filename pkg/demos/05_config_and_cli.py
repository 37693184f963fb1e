# %% [markdown]
# # Config files and the command line
#
# Any run can be described in a small INI file. Keys left out keep their
# defaults, so an empty file is the baseline experiment.

# %%
import subprocess
import sys
import tempfile
from pathlib import Path

from abicap.config import apply_overrides, loads_config

config = loads_config(
    """
    [graph]
    nodes = 12
    mean_degree = 4

    [conditions]
    moreFP = constructive
    lessFP = active

    [schedule.moreFP]
    switches = 20:active
    forced = 20-24:0
    """.replace("\n    ", "\n")
)
print(config.node_count, [name for name, _ in config.conditions])

# %% [markdown]
# The same keys work as ``--set`` overrides.

# %%
print(apply_overrides(config, ["cl_interactive=0.75", "agents=10"]).params.cl_interactive)

# %% [markdown]
# Finally, the CLI itself. Outputs are named after the scenario.

# %%
out = Path(tempfile.mkdtemp())
subprocess.run(
    [sys.executable, "-m", "abicap", "run", "icap_baseline", "--seed", "7", "--out", str(out), "--plot"],
    check=True,
)
print(sorted(p.name for p in out.iterdir()))
