# %% [markdown]
# # Exact linear algebra over F_p
# Everything downstream reduces to row reduction modulo a prime. Subspaces are
# stored in reduced row-echelon form, so equal subspaces compare bitwise.

# %%
import numpy as np

from socleprobe import Subspace, kernel, lattice, rank, rref

p = 7
M = np.array([[1, 2], [2, 4]])
S = rref(M, p)
print("row space of", M.tolist(), "over F_7:", S.basis.tolist())

# %% [markdown]
# Rank and kernel always add up to the number of columns.

# %%
rng = np.random.default_rng(0)
A = rng.integers(0, 5, size=(4, 6))
print("rank", rank(A, 5), "+ nullity", kernel(A, 5).dim, "= cols", A.shape[1])

# %% [markdown]
# Meets and joins obey the modular law. Here two planes in F_5^3 meet in a line.

# %%
U = Subspace.span([[1, 1, 0], [0, 1, 1]], 3, 5)
V = Subspace.span([[1, 0, 0], [0, 0, 1]], 3, 5)
meet, join = lattice(U, V, "meet"), lattice(U, V, "join")
print("meet", meet.basis.tolist(), "join dim", join.dim)
assert U.dim + V.dim == meet.dim + join.dim
