# %% [markdown]
# # Reduction number, torsion gap and the Gorenstein bound
# In dimension one, c is the least i with (x) m^i = m^{i+1} for a linear
# parameter x, g is the least i with m^i meeting the torsion only in 0, and
# n = max{c, g} + 1 is the level at which irreducibility of one parameter
# ideal decides whether the ring is Gorenstein.

# %%
from socleprobe import RingSpec, dim1_bound, gorenstein_dim1, load_ring

rows = []
for ideal in (["x*y"], ["x^2*y"], ["x^2", "x*y"], ["x^3", "x*y^2"], ["x^2*y", "x*y^2"]):
    R = load_ring(RingSpec.from_strings(("x", "y"), ideal))
    inv = dim1_bound(R)
    gor = gorenstein_dim1(R)
    rows.append((",".join(ideal), inv.c, inv.c_certainty, str(inv.c_witness), inv.g, inv.bound_n, gor.gorenstein))

for r in rows:
    print("{:>12}  c={} ({}) witness {:>18}  g={}  n={}  gorenstein={}".format(*r))

# %% [markdown]
# The node needs a mixed witness: neither x nor y alone has x m = m^2, while
# a generic linear form does.
