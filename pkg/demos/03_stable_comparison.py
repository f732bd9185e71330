# %% [markdown]
# # Two presentations of the same odd-order group
#
# An extra relator adds a free summand to pi2.  After adding the matching
# free and V_G summands to both pi3's, ranks and characters agree.

# %%
import pi3lattice as pl
from pi3lattice import fixtures

for m in (3, 5, 7):
    rep = pl.compare(fixtures.cyclic(m), fixtures.cyclic_doubled(m))
    s = rep.comparison
    e = s.exponents
    print(f"C{m}: pi2 ranks {e.k}, {e.k_prime}; a={e.a} b={e.b} q={e.exponent_q} r={e.exponent_r}; "
          f"ranks {s.rank_lhs}={s.rank_rhs}; {s.certificate.status}")

# %% both sides are rationally free
rep = pl.compare(fixtures.cyclic(5), fixtures.cyclic_with_dummy(5))
print(rep.left.rationally_free, rep.left.multiplicity)
print(rep.right.rationally_free, rep.right.multiplicity)

# %% exponents grow quadratically in a
G = pl.enumerate_group(fixtures.cyclic(5))
print([pl.stable_exponents(a, 0, 4, 4, G).exponent_q for a in range(6)])
