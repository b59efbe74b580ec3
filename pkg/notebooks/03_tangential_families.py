# %% [markdown]
# # Cusped tangential families
#
# phi(xi, t) = (xi^2 + 2 alpha t + A t^2 + C t^3, xi^3 + 3 xi alpha t + B t^2 + D t^3) + O(t^4).
# For a flat family (alpha(0) = 0) the graph (phi, xi) is an A_n singularity.

# %%
import random
from fractions import Fraction

from cuspenv import CTFData, build_family, classify_graph, genericity, jacobian_determinant
from cuspenv.ctf import corrected_sign_rule, stated_sign_rule

data = CTFData.make([0, 0, 1], [1], [1], [0], [1])
print(genericity(data).as_dict())
cls = classify_graph(data)
print(cls.name, cls.witnesses["normalizedJet"])

# %% The even-n sign needs the factor sign(B0)
rng = random.Random(3)
for _ in range(6):
    B0 = Fraction(rng.choice([-2, -1, 1, 2]))
    data = CTFData.make([0, 0, Fraction(rng.randint(1, 3))], [Fraction(rng.randint(-2, 2))], [B0], [1], [1])
    if not genericity(data).star_generic:
        continue
    print(B0, classify_graph(data).name, stated_sign_rule(data, 2), corrected_sign_rule(data, 2))

# %% Jacobian 2-jet: 1-flat families carry an extra t^2 term
one_flat = CTFData.make([0, 2], [1], [3], [0], [1])
print(jacobian_determinant(build_family(one_flat)).truncate(2))  # 12*x*y + 24*y^2
