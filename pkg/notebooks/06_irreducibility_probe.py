# %% [markdown]
# # Bracketing the irreducibility threshold
# For k[x,y]/(x^{a+1}, x y^a) the ideal (y^a) is irreducible, so no level up to
# a forces reducibility; at level 2a every sampled parameter ideal is reducible.

# %%
from socleprobe import family_ring, probe_ell
from socleprobe.gorprobe import family_xy, format_family_table

for a in (1, 2):
    R = family_ring(a)
    low = probe_ell(R, a, samples=20)
    high = probe_ell(R, 2 * a, samples=200)
    print(f"a={a}: at L={a} found {low.irreducible_found[:1]}, lower bound {low.ell_lower_bound};"
          f" at L={2 * a} {len(high.irreducible_found)} irreducible out of {high.tested}")

# %% [markdown]
# The family table collects everything in one place.

# %%
print(format_family_table(family_xy(range(1, 5), samples=50)))
