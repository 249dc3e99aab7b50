## The reachable set of sums c_1 r_1 + ... + c_n r_n over |c_i| = 1.
##
## For fixed positive radii this set is a closed annulus: outer radius the
## full mass, inner radius max(0, 2 max(r) - sum(r)).  Any point inside
## can be realized constructively, which is what lets a greedy character
## choice cancel a running sum exactly as far as its free mass allows.

import cmath

import numpy as np

from zetalab import AnnulusSpec, radii, realize, sample_oracle

## Radii formula on three shapes
print("radii [1,2,5]  ->", radii([1, 2, 5]), " (annulus)")
print("radii [1]      ->", radii([1]), "       (a circle)")
print("radii [1,1,1]  ->", radii([1, 1, 1]), " (full disk)")

## Monte-Carlo confirmation: 10^5 random phase draws stay inside
lo, hi = sample_oracle([1, 2, 5], 100_000, seed=42)
print(f"sampled moduli in [{lo:.6f}, {hi:.6f}] vs annulus [2, 8]")

## Constructive realization of a target
spec = AnnulusSpec((1, 2, 5))
for z in (8 + 0j, 2j, -3 + 1j):
    c = realize(spec, z)
    got = sum(ci * ri for ci, ri in zip(c, spec.radii))
    print(f"target {z}: achieved {got:.6f}, error {abs(got - z):.2e}")

## Zero needs equal pull in three directions: the cube roots of unity
c = realize(AnnulusSpec((1, 1, 1)), 0j)
print("realizing 0 with radii (1,1,1):",
      [f"{cmath.phase(ci):+.4f}" for ci in c], "(angles)")

## Sweep a polar grid and keep the worst realization error
spec = AnnulusSpec((0.5, 1.0, 1.5, 2.5))
worst = 0.0
for rho in np.linspace(spec.inner, spec.outer, 25):
    for th in np.linspace(0, 2 * np.pi, 25, endpoint=False):
        z = rho * cmath.exp(1j * th)
        got = sum(ci * ri for ci, ri in zip(realize(spec, z), spec.radii))
        worst = max(worst, abs(got - z))
print("worst error over a 25x25 polar grid:", worst)
