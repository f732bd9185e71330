# %% [markdown]
# # The quaternion group
#
# Here pi3 is not rationally free.  The extra piece comes from the unique
# involution through the ideal (1 + y^2) ZG.

# %%
import pi3lattice as pl

report = pl.analyze("gens: x, y ; rels: x^2=y^2, x*y*x=y", "Q8")
G = report.group
print("order", G.order, "elements", [G.name(g) for g in range(G.order)])
print("pi2 rank", report.pi2.rank, " pi3 rank", report.pi3.rank)

# %% involutions and inverse pairs
d = pl.involution_pairs(G)
print("p =", d.p, " T =", [G.name(t) for t in d.T], " S =", [G.name(s) for s in d.S])

# %% S^2(ZG) splits as ZG^(1+p) + V_G
target, iso, _ = pl.sym_square_zg_iso(G)
print(iso.source.rank, "->", target.rank, pl.verify_hom(iso, require_iso=True).status)

# %% rational check: chi(pi3) = (p + q) chi_reg + (a + 1) chi(V_G)
V = pl.v_g(G)
print("chi(V_G)", V.character().values)
print("chi(pi3)", report.pi3.lattice.character().values)
cert = pl.theorem52_check(report.pi3.lattice, 0, G)
print(cert.status, cert.details)
print("rationally free:", pl.is_rationally_free(report.pi3.lattice))

# %% all certificates from the pipeline
for name, c in report.certificates.items():
    print(f"{c.status:<15}{name}")

# %% timings in seconds
for stage, t in report.timings.items():
    print(f"{stage:<14}{t:.4f}")
