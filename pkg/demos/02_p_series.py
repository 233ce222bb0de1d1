"""Orders |G/δ^p_i(G)| for a few small groups, next to closed forms.

Run with ``python3 demos/02_p_series.py``.
"""

# %%
from fpgroups import (
    EnumLimits,
    compare_invariants,
    delta_orders,
    free_group_oracle,
    load_presentation,
    membership_level,
    parse_presentation,
    parse_word,
)

limits = EnumLimits(max_cosets=20_000)
F2 = load_presentation("F2.pres")

# %% [markdown]
# For a free group each layer is elementary abelian of the current rank and
# the next term is free again, so the exponents follow a Schreier recursion.

# %%
for p in (2, 3):
    rep = delta_orders(F2, p, 2, limits)
    print(f"F2, p={p}: exponents {rep.exponents}  closed form {free_group_oracle(2, p, 2)}")

# %% [markdown]
# Finite cyclic groups stop growing once the series reaches the trivial group.

# %%
for n in (8, 9, 12):
    cyc = parse_presentation(f"gens: x\nrels: x^{n}")
    print(f"Z_{n}:", "p=2", delta_orders(cyc, 2, 4).orders(), " p=3", delta_orders(cyc, 3, 3).orders())

# %% [markdown]
# Membership: the first level a word escapes.  Commutators go one level deeper
# than generators; a word that is trivial never escapes.

# %%
for text in ("a", "a^2", "a*b*a^-1*b^-1", "a^4", "(a*b*a^-1*b^-1)^2"):
    w = parse_word(text, F2.alphabet)
    print(f"{text:22s} level {membership_level(F2, 2, w).level}")

# %% [markdown]
# Two groups are told apart by the first level where the orders differ.

# %%
Z4xZ4 = parse_presentation("gens: a, b\nrels: a^4, b^4, a*b*a^-1*b^-1")
Z2xZ8 = parse_presentation("gens: a, b\nrels: a^2, b^8, a*b*a^-1*b^-1")
r1, r2 = delta_orders(Z4xZ4, 2, 3), delta_orders(Z2xZ8, 2, 3)
print("Z4xZ4", r1.orders(), " Z2xZ8", r2.orders(), " first difference at", compare_invariants(r1, r2))
