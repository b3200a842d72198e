# %% [markdown]
# # Monomial quotient rings
# A ring is k[x_1..x_n]/I with I monomial. Its Hilbert function counts standard
# monomials, and its Krull dimension comes from a minimum vertex cover of the
# generator supports.

# %%
from socleprobe import RingSpec, certify_sop, load_ring, truncate

Q = load_ring(RingSpec.from_strings(("x", "y"), ["x^2", "x*y"]))
print(Q, "dim", Q.dim)
print("Hilbert function:", truncate(Q, 8).hilbert())

# %% [markdown]
# Two more shapes: a node (two lines through the origin) and a plane with a line
# sticking out of it.

# %%
node = load_ring(RingSpec.from_strings(("x", "y"), ["x*y"]))
plane_line = load_ring(RingSpec.from_strings(("x", "y", "z"), ["x*z", "y*z"]))
print("node", node.dim, truncate(node, 6).hilbert())
print("plane+line", plane_line.dim, truncate(plane_line, 6).hilbert())

# %% [markdown]
# A system of parameters is certified by the first degree M in which its ideal
# fills the whole slice. A zerodivisor killed by m never gets there.

# %%
for gens in (["y"], ["x"], ["y^3"]):
    sop = certify_sop(Q, gens)
    print(gens, "certified" if sop.certified else "not a sop", "M =", sop.artinian_degree)
