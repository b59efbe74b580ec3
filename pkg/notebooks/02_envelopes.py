# %% [markdown]
# # Envelope branches
#
# Critical sets by Newton polygons, images of the branches, cusp tags, and a
# numeric cross-check on a grid.

# %%
import numpy as np
from scipy.spatial.distance import directed_hausdorff

from cuspenv import ParamPoly, envelope_of, psi
from cuspenv.envelope import numeric_envelope, sample_branch

for delta in (1, 0, ParamPoly.symbol("d")):
    res = envelope_of(psi(delta))
    for b in res.branches:
        print(delta, b.label, b.tag, [c.format(("s",)) for c in b.image], b.condition)

# %% Numeric critical values against the symbolic branches
f = psi(1)
window = (-0.4, 0.4, -0.4, 0.4)
ref = np.vstack([sample_branch(b, None, (-0.7, 0.7), 20000) for b in envelope_of(f).branches])
near = lambda a, r=0.1: a[np.all(np.abs(a) < r, axis=1)]
# coverage (branches -> cloud) halves with the grid; soundness (cloud -> branches) is ~1e-5 throughout
for n in (64, 128, 256, 512):
    cloud = numeric_envelope(f, window=window, resolution=n)
    cover = directed_hausdorff(near(ref), near(cloud.image, 0.12))[0]
    sound = directed_hausdorff(near(cloud.image, 0.12), ref)[0]
    print(n, len(cloud.image), cover, sound)

# %% [markdown]
# On the full square [-1, 1]^2 the third Jacobian factor 4 - 6x - 9xy enters
# the window and its critical values are far from the local branches, so the
# window is kept small.

# %% Picture
from cuspenv.cli import render

curves = [sample_branch(b, None, (-0.5, 0.5), 400) for b in envelope_of(f).branches]
svg = render.render_envelope(curves, ["x = 0", "y = 0"], [near(cloud.image, 0.3)], "psi_1")
with open("envelope_psi1.svg", "w") as fh:
    fh.write(svg)
