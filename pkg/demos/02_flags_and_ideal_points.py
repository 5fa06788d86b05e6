# %% [markdown]
# # Multiflags on the light cone
#
# The differential of kappa -> kappa kappa^dagger sends the tangent
# directions of a spinor to flag vectors at its light cone point.  Together
# they form a multiflag, which can be repackaged as a decorated ideal point.

# %%
import numpy as np

from horoclif import lipschitz as lp
from horoclif import minkowski as mk

rng = np.random.default_rng(11)
n = 3

k = lp.random_spinor(n, rng)
mf = mk.multiflag(k)
print("base point:", mf.base)
for v in mf.vectors:
    print("  flag vector:", np.round(v.as_array(), 6))

# %% [markdown]
# Flag vectors are null-orthogonal to the base, orthogonal to each other
# and all of equal Minkowski norm.

# %%
gram = np.array([[mk.minkowski_inner(a, b) for b in mf.vectors] for a in mf.vectors])
print(np.round(gram, 10))
print("tangency:", [round(mk.minkowski_inner(v, mf.base), 12) for v in mf.vectors])

# %% [markdown]
# Acting by a random SL(2) matrix commutes with taking flags.

# %%
A = lp.random_sl2(n, rng)
moved = mk.act_multiflag(A, mf)
direct = mk.multiflag(A @ k)
print("equal flags:", mk.flags_equal(moved, direct))

# %% [markdown]
# Decorated ideal points record the ray, a frame and the common norm K.
# Going there and back returns the same flags.

# %%
d = mk.to_decorated_ideal(mf)
print("ray", d.ray, "K", d.K)
back = mk.from_decorated_ideal(d)
print("round trip ok:", mk.flags_equal(mf, back))
