# %% [markdown]
# # Perestroikas of the envelope
#
# Sweeps of the miniversal deformation along lam, mu and nu; the
# self-intersection of the branch (lam s + s^2 + d s^3, s^2); the tangential
# deformation; and the (lam, mu) diagram.

# %%
from fractions import Fraction

from cuspenv.bifurcate import (LAM, MU, NU, diagram_data, h_branch_series, h_family, k_family, nu_family,
                               sample_values, sweep, tangential_deformation_check)
from cuspenv.envelope import curve, self_intersection
from cuspenv.jets import TruncatedSeries
from cuspenv.paramring import ParamPoly

print(h_branch_series().as_dict())

# %% Sweeps
vals = sample_values(Fraction(-1, 10), Fraction(1, 10), 21)
for fam, axis in ((h_family(1), LAM), (k_family(1), MU), (nu_family(1), NU)):
    res = sweep(fam, axis, vals)
    print(fam.name, res.conditions, [e.as_dict() for e in res.events])

# %% Closed form of the double point
s = TruncatedSeries.var(0, 8, 1)
b = curve(s.scale(ParamPoly.symbol("l")) + s * s + (s ** 3).scale(ParamPoly.symbol("d")), s * s)
print(self_intersection(b, "l").as_dict())

# %% Second-order self-tangency
for lam in (Fraction(1, 10), Fraction(-1, 10)):
    print(tangential_deformation_check(1, lam).as_dict())

# %% Diagram
from cuspenv.cli.main import diagram_svg

with open("diagram.svg", "w") as fh:
    fh.write(diagram_svg(diagram_data(1)))
