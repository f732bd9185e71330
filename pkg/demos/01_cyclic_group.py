# %% [markdown]
# # pi2 and pi3 for the cyclic group of order 3
#
# Start from the one-relator presentation and work up to the third homotopy
# module, then identify it with an overlattice of ZG.

# %%
import numpy as np

import pi3lattice as pl
from pi3lattice import intmat

G = pl.enumerate_group("gens: x ; rels: x^3")
print(G, [G.name(g) for g in range(G.order)])

# %% Fox calculus gives the boundary of the single 2-cell
cc = pl.boundary_matrices(G.presentation, G)
print("d2 entry:", cc.dd2[0, 0])
print("d1 entry:", cc.dd1[0, 0])
print(pl.verify_universal_cover_exactness(cc).status)

# %% pi2 is the kernel of d2, a rank-2 lattice
pi2, inclusion = pl.second_homotopy(cc)
print("rank", pi2.rank, "character", pi2.character().values)
print(inclusion.matrix)

# %% pi3 = S^2(pi2)
pi3 = pl.sym_square(pi2)
print("rank", pi3.rank, "character", pi3.lattice.character().values)
print("rationally free:", pl.is_rationally_free(pi3.lattice))

# %% the quadratic map and its pairing
a = np.array([1, -2], dtype=object)
b = np.array([0, 1], dtype=object)
print("q(a)   =", pl.q_map(pi3, a))
print("[a, b] =", pl.whitehead_pairing(pi3, a, b))

# %% pi2 is isomorphic to IG*; search for an explicit isomorphism
iso = pl.find_ig_star_iso(pi2)
print(iso.matrix)
print(pl.verify_hom(iso, require_iso=True).status)

# %% push it through S^2 and land in M[u_M/2]
res = pl.verify_prop53(pi2, G, iso)
print(res.certificate.status)
print("index of M in the overlattice:", res.adjoined.index)

# %% the overlattice is ZG with (1 + x)/2 adjoined
one_plus_x = np.array([1, 1, 0], dtype=object)
target = pl.adjoin_half(pl.free_lattice(G, 1), one_plus_x)
print("same lattice:", res.adjoined.same_as(target))
print("half-unit basis (doubled):")
print(target.half_basis)
