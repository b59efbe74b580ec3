# %% [markdown]
# # Determinacy and codimension of the double-cusp germ
#
# psi_d = (x^2 + y^2 + d y^3, y^2 + x^3). We certify finite determinacy with
# the du Plessis inclusions, then compute the extended codimension.

# %%
from fractions import Fraction

from cuspenv import ParamPoly, psi
from cuspenv.orbitspace import (check_inclusion_4, check_inclusion_5, determinacy_degree, du_plessis_determinacy,
                                extended_codimension, order_reduction_check)

d = ParamPoly.symbol("d")
f = psi(d)
print(f)

# %% The square certificate keeps d symbolic
inc5 = check_inclusion_5(f, 2, 2)
print(inc5.square.shape, inc5.square.determinant)  # (14, 14) 1280*d
print(check_inclusion_4(f, 2).square.rank)  # 6

# %% [markdown]
# With d = 1 the germ is 4-determined, and the order-4 terms can be removed,
# so it is 3-determined. With d = 0 the determinant vanishes.

# %%
print(du_plessis_determinacy(psi(1), 2, 2).certified, order_reduction_check(psi(1), 4))
print(determinacy_degree(psi(1), 4))
print(du_plessis_determinacy(psi(0), 2, 2).certified)

# %% Codimension: the complement of the extended tangent space
res = extended_codimension(psi(1))
print(res.as_dict())

# (y^3, 0) already lies in the tangent space for d != 0, so two directions suffice.
for delta in (Fraction(1, 2), 2, -3):
    print(delta, extended_codimension(psi(delta)).codim)
