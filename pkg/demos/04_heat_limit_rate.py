# %% [markdown]
# # Heat smoothing of a square wave
#
# u1 solves the heat equation from sign(x2). Its sine coefficients are
# 4/(pi k) for odd k, so ||u1(t) - v1||^2 = sum_k 8/(pi k)^2 (1 - e^{-a t})^2 / 2
# with a = nu (2 pi k)^2. Roughly sqrt(nu t) modes are damped, which gives
# the nu^(1/4) rate.

# %%
import numpy as np

from shearflow.diagnostics import fit_rate
from shearflow.exact import heat_limit_error
from shearflow.spectral import Grid1D

nus = np.logspace(-1, -5, 5)
for n in (1024, 8192, 65536):
    errs = [heat_limit_error(nu, 1.0, Grid1D(n)) for nu in nus]
    slope, _, _ = fit_rate(nus, errs)
    print(f"n = {n:6d}: errors {np.array(errs)}  slope {slope:.4f}")

# %% [markdown]
# The slope sits near 0.26 for this ladder: 1/4 plus a small pre-asymptotic
# correction from the largest viscosity.
