"""The (2,4,8) triangle group as matrices preserving diag(1, 1, -1).

Run with ``python3 demos/04_triangle_lab.py``.
"""

# %%
import numpy as np

from fpgroups.triangle import (
    TriangleGroupSpec,
    aperiodicity_scan,
    empirical_slimness,
    quasigeodesic_fit,
    relation_residuals,
    torsion_profile,
    triangle_ball,
)

spec = TriangleGroupSpec(2, 4, 8)
print("relation residuals:", {k: f"{v:.1e}" for k, v in relation_residuals(spec).items()})

# %% [markdown]
# The orientation-preserving subgroup is generated by x = ab and y = bc and
# is a faithful image of <x, y | x^2, y^4, (xy)^8>.

# %%
ball = triangle_ball(spec, 10)
print("sphere sizes:", np.bincount(ball.dist).tolist())
print("torsion:", torsion_profile(ball).to_dict())

# %% [markdown]
# Thin triangles: the estimate grows with the radius at first, as bigger
# triangles become available, and is a regression number rather than δ.

# %%
for R in (4, 6, 8):
    print(f"R={R}:", empirical_slimness(triangle_ball(spec, R), 200, seed=1).to_dict())

# %% [markdown]
# Powers of a loxodromic word stay close to geodesics.  xy has order 8, so
# its powers run around a finite cycle and the fit degrades.

# %%
for text in ("x*y^2", "x*y*x*y^-1", "x*y"):
    print(text, quasigeodesic_fit(ball, ball.parse(text), 16).to_dict())

# %%
for text, t in (("(x*y^2)^2", 1), ("x", 2)):
    print(text, aperiodicity_scan(ball, ball.parse(text), 0, t).verdict)
