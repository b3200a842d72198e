# %% [markdown]
# # Socles and m-torsion
# The socle of R/q is the joint kernel of multiplication by the variables. A
# parameter ideal is irreducible exactly when that socle is one-dimensional.

# %%
from socleprobe import RingSpec, certify_sop, gamma_torsion, load_ring, quotient_socle


def ring(ideal):
    return load_ring(RingSpec.from_strings(("x", "y"), ideal))


Q = ring(["x^2", "x*y"])
for gens in (["y"], ["y^2"], ["y^3"]):
    soc = quotient_socle(Q.algebra(), certify_sop(Q, gens))
    print(gens, "socle dim", soc.dim, [str(b) for b in soc.basis])

# %% [markdown]
# For k[x,y]/(x^{a+1}, x y^a) the torsion submodule is the a-by-a box of
# monomials x^i y^j with 1 <= i <= a and j < a.

# %%
for a in range(1, 5):
    dim, basis = gamma_torsion(ring([f"x^{a + 1}", f"x*y^{a}"]))
    print(f"a={a}: dim Gamma = {dim}, top monomial {max(basis, key=sum)}")
