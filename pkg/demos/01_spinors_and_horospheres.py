# %% [markdown]
# # From spinors to decorated horospheres
#
# A pair (xi, eta) of Clifford numbers with xi * conj(eta) a paravector
# describes a horosphere in upper half-space, decorated by n unit
# tangent directions.  This walk-through builds a few of them.

# %%
import numpy as np

from horoclif import hyperbolic as hy
from horoclif import lipschitz as lp
from horoclif import minkowski as mk
from horoclif.clifford import Multivector, sig0

n = 2
s = sig0(n)
rng = np.random.default_rng(3)

# %% [markdown]
# The simplest spinor is (1, 0).  It sits at the point (1, 1; 0) of the
# light cone and gives the horizontal plane at height 1.

# %%
k0 = lp.elementary_spinor(n, 1, 0)
print("light cone point:", mk.basepoint(k0))
print("horosphere:", hy.horosphere(k0))

# %% [markdown]
# A spinor with eta != 0 gives a sphere tangent to the boundary at
# xi eta^-1 with diameter 1 / |eta|^2.

# %%
i1, i2 = Multivector.generator(s, 1), Multivector.generator(s, 2)
k = lp.LipschitzSpinor(1.0 + i1, Multivector.scalar(s, 2.0))
h = hy.horosphere(k)
print("centre", h.center, "diameter", h.diameter)
for j, d in enumerate(h.decorations, 1):
    print(f"decoration {j}:", d)

# %% [markdown]
# The centre can be recovered independently.  Push the light cone point
# through the ball model into upper half-space and read off the boundary
# value.

# %%
print("centre via the models:", hy.boundary_point(mk.basepoint(k)))

# %% [markdown]
# Any point of the horosphere is reached by a parabolic translation of
# the basepoint.  Each one should land on the sphere.

# %%
for _ in range(3):
    q = hy.hyperbolic_point(hy.horosphere_orbit_point(k, lp.random_paravector(n, rng)))
    print(q, "on sphere:", h.contains(q))

# %% [markdown]
# Random spinors from the generator, with their horospheres.

# %%
for _ in range(3):
    r = lp.random_spinor(n, rng)
    print(hy.horosphere(r))
