# %% [markdown]
# # Lambda lengths and the Ptolemy relation
#
# The lambda length between two spinors is their bracket
# xi1^* eta2 - eta1^* xi2.  Its squared norm is half the Minkowski inner
# product of the light cone points, so it measures the signed distance
# between horospheres: |lambda|^2 = exp(d).

# %%
import math

import numpy as np

from horoclif import clifford as cl
from horoclif import hyperbolic as hy
from horoclif import ptolemy as pt

rng = np.random.default_rng(5)
n = 2
k1, k2, k3, k4 = pt.well_conditioned_tuple(n, rng)

lam = pt.lambda_length(k1, k2)
print("lambda_12 =", lam)
print("|lambda|^2 =", cl.norm(lam), " exp(d) =", math.exp(hy.horosphere_distance(k1, k2)))

# %% [markdown]
# The matrix of lambda lengths is antisymmetric up to reversion.

# %%
L = pt.LambdaMatrix.from_spinors([k1, k2, k3, k4])
print("antisymmetry residual:", L.antisymmetry_residual())

# %% [markdown]
# Four spinors satisfy a noncommutative Ptolemy relation.  The two terms
# are Clifford numbers, not reals, yet they add up to exactly 1.

# %%
t1, t2, cond = pt.ptolemy_terms(k1, k2, k3, k4)
print("term 1:", t1)
print("term 2:", t2)
print("sum   :", t1 + t2)
print(pt.ptolemy_report(k1, k2, k3, k4))

# %% [markdown]
# Related identities: a triple product that equals its own reverse, and
# a holonomy-type sum rule.

# %%
print("skew residual:", pt.skew_symmetry_residual(k1, k2, k3))
print("holonomy residual:", pt.holonomy_residual(k1, k2, k3, k4))

# %% [markdown]
# Quasi-Pluecker coordinates come out the same whether they are computed
# from brackets or from quasideterminants of the 2 x 2 column minors.

# %%
q = pt.quasi_plucker([k1, k2, k3, k4], 2, 3, 1)
print(q.value, "residual", q.residual)
