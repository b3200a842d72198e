# %% [markdown]
# # The parameter-power direct system
# The quotients R/(x_1^i, .., x_d^i) with multiplication by x_1...x_d as
# transition maps have the top local cohomology as their limit. Pushing socles
# forward shows which stage already surjects onto the socle of the limit.

# %%
from socleprobe import RingSpec, limit_closure, load_ring, power_quotient_system, verify_ps_consequence

Q = load_ring(RingSpec.from_strings(("x", "y"), ["x^2", "x*y"]))
rep = power_quotient_system(Q, ["y"], i_max=6)
print("socle dims per stage ", rep.socle_dims)
print("image dims in the limit", rep.image_dims)
print("stable", rep.stable_socle_dim, "index", rep.surjectivity_index, rep.certification)

# %% [markdown]
# The part of the stage-1 socle that dies is the socle of the limit closure
# modulo (y). Both routes give the same number.

# %%
lc = limit_closure(Q, ["y"])
print("closure basis mod (y):", [str(b) for b in lc.basis()], "socle dim", lc.socle_dim)
print("stage-1 kernel dim:", rep.stage_socle_kernel_dim(1))
print("surjective from s=2:", verify_ps_consequence(Q, ["y"], s=2).surjective_from_s)

# %% [markdown]
# In dimension two the same computation is only empirical: stability is
# observed over a window of extra stages rather than proved.

# %%
PL = load_ring(RingSpec.from_strings(("x", "y", "z"), ["x*z", "y*z"]))
rep2 = power_quotient_system(PL, ["x+z", "y"], i_max=5)
print(rep2.socle_dims, rep2.image_dims, rep2.certification)
