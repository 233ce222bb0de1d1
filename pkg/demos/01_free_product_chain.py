"""Walk down the subgroup chain A > B > C inside Z2 * Z4 and push it into G.

Run with ``python3 demos/01_free_product_chain.py``.
"""

# %%
from fpgroups import (
    compose_tables,
    enumerate_cosets,
    fp_normal_form,
    format_word,
    load_presentation,
    rewrite_in_subgroup,
    schreier_transversal,
    subgroup_presentation,
    tietze_simplify,
)
from fpgroups.pseries import Ladder, membership_level
from fpgroups.wiegold import commutator_generators

A = load_presentation("A.pres")  # <x, y | x^2, y^4>
G = load_presentation("G.pres")  # the same plus (xy)^8
x, y = A.gens()
xy = x * y

# %% [markdown]
# B is generated by the three commutators [x, y^k].  It is the kernel of the
# map onto Z2 x Z4, so it should have index 8, and a free product of finite
# groups has free finite-index torsion-free subgroups.

# %%
b = commutator_generators(A)
tB = enumerate_cosets(A, b)
print("|A:B| =", tB.index())
print("transversal:", [format_word(w, A.alphabet) or "1" for w in schreier_transversal(tB)])

spB = tietze_simplify(subgroup_presentation(A, tB))
print("B:", spB.summary())

# %% [markdown]
# (xy)^4 is a product of the commutators.  The free-product normal form
# confirms it without any enumeration.

# %%
rhs = b[0] * b[1].inverse() * b[2]
print("normal form of (xy)^4 * rhs^-1:", fp_normal_form(xy**4 * rhs.inverse()) or "identity")

# %% [markdown]
# C is the first term of the mod-2 series of B: squares and commutators.  Its
# coset table in A comes from composing the two tables.

# %%
ladder = Ladder(spB.presentation, 2)
lev1 = ladder.level(1)
tC = compose_tables(tB, spB, lev1.table)
spC = tietze_simplify(subgroup_presentation(A, tC))
print("|B:C| =", lev1.table.index(), " |A:C| =", tC.index(), " rank C =", spC.ngens)

for k in (4, 8):
    m = membership_level(spB.presentation, 2, rewrite_in_subgroup(spB, tB, xy**k), ladder=ladder)
    print(f"(xy)^{k}: first level it avoids = {m.level}, known inside level {m.reached}")

# %% [markdown]
# Adding (xy)^8 only kills conjugates of an element of C, so the image of C
# still has index 64 in G.

# %%
print("|G : image of C| =", enumerate_cosets(G, spC.gen_words).index())
