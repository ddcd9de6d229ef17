# %% [markdown]
# # Fourier transforms on the periodic box
#
# Fields live on (-1/2, 1/2)^d with grid points x_j = -1/2 + j/n and
# f(x) = sum_k c_k exp(2 pi i k x).

# %%
import numpy as np

from shearflow.spectral import Grid1D, Grid2D, dealias, derivative, l2_norm, to_physical, to_spectral

np.set_printoptions(precision=4, suppress=True)

g = Grid1D(16)
f = np.sin(2 * np.pi * g.points) + 0.5 * np.cos(6 * np.pi * g.points)
c = to_spectral(f, g)

# sin(2 pi x) puts -i/2 on k = 1, cos(6 pi x) puts 1/4 on k = 3
print("c_1 =", c.coeff(1), " c_3 =", c.coeff(3))
print("round trip error:", np.max(np.abs(to_physical(c) - f)))

# %% [markdown]
# Parseval: the coefficient norm is the grid mean of |f|^2.

# %%
print(l2_norm(c) ** 2, np.mean(f**2))

# %% [markdown]
# Differentiation multiplies c_k by 2 pi i k.

# %%
df = to_physical(derivative(c))
exact = 2 * np.pi * np.cos(2 * np.pi * g.points) - 3 * np.pi * np.sin(6 * np.pi * g.points)
print("derivative error:", np.max(np.abs(df - exact)))

# %% [markdown]
# The 2/3 rule keeps |k| <= n/3 and zeroes the rest.

# %%
noise = to_spectral(np.random.default_rng(0).standard_normal(16), g)
kept = np.nonzero(dealias(noise).coeffs)[0]
print("kept indices:", kept)

# %%
g2 = Grid2D(8, 8)
x1, x2 = g2.points
u = to_spectral(np.sin(2 * np.pi * (x1 + x2)), g2)
print("2D mode (1, 1):", u.coeff(1, 1))
