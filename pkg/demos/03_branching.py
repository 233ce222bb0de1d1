"""Finite prefixes of the branch construction on F2.

Each bit adjoins a power of a scheduled element; siblings differ in the
order of a δ-quotient of N at the recorded level.

Run with ``python3 demos/03_branching.py``.
"""

# %%
import json

from fpgroups import EnumLimits, data_path, load_presentation, parse_schedule, parse_subgroup, run_omega
from fpgroups.omega import divergence_check

limits = EnumLimits(max_cosets=5000)
F2 = load_presentation("F2.pres")
N = parse_subgroup(data_path("F2_whole.sub").read_text(), F2.alphabet)
schedule = parse_schedule(data_path("F2_demo.schedule").read_text(), F2.alphabet)

# %%
runs = {bits: run_omega(F2, N, 2, bits, schedule, limits) for bits in ("00", "01", "10", "11")}
for bits, run in runs.items():
    steps = [(h["relator"], h["s"], h["v"]) for h in run.audit()["steps"]]
    print(bits, "relators/s/v:", steps, " |N/δ_v| = 2^%d" % run.report.exponents[-1])

# %% [markdown]
# The sibling pairs, compared at their shared level v.

# %%
for prefix in ("", "0", "1"):
    s0 = runs[(prefix + "0").ljust(2, "0")].states[len(prefix) + 1]
    s1 = runs[(prefix + "1").ljust(2, "0")].states[len(prefix) + 1]
    d = divergence_check(s0, s1, 2, limits)
    print(f"prefix {prefix or '-':2s} v={d.level}: 2^{d.e0} < 2^{d.e1}  strict={d.strict}")

# %%
print(json.dumps(runs["01"].audit()["steps"], indent=1))
