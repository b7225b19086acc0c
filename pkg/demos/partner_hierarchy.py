"""Strip a harmonic well one level at a time and watch the spectra interlace.

Starts from the tabulated potential V(x) = x^2 - 1, whose ground energy is 0,
rebuilds the superpotential from the measured ground state, and checks that
the partner potential carries the same spectrum with the lowest level
removed.  The same construction is then iterated three levels deep; each
level's potential is again a shifted harmonic well, so the ladder of ground
energies climbs in steps of 2.

Run:  python3 demos/partner_hierarchy.py
"""

import numpy as np

from susyqm import (GridFunction, build_hierarchy, ground_state, make_grid,
                    partner_pair_from_w, solve_potential,
                    superpotential_from_ground_state)


def main() -> None:
    grid = make_grid(-10.0, 10.0, 4001)
    v = GridFunction(grid, grid.x**2 - 1.0)

    levels = solve_potential(v, 5)
    print("V(x) = x^2 - 1, lowest five levels:")
    for p in levels:
        print(f"  E_{p.index} = {p.energy:+.6f}")

    # Partner construction from the measured ground state alone: w = -psi0'/psi0.
    psi0 = ground_state(v).state
    pair = partner_pair_from_w(superpotential_from_ground_state(psi0))
    partner_levels = solve_potential(pair.v_plus, 4)
    print("\npartner spectrum vs. original levels 1..4:")
    for p in partner_levels:
        ref = levels[p.index + 1].energy
        print(f"  E+_{p.index} = {p.energy:+.6f}   "
              f"E-_{p.index + 1} = {ref:+.6f}   diff = {p.energy - ref:+.2e}")

    hier = build_hierarchy(v, 3)
    print("\nhierarchy, three levels deep:")
    for lv in hier:
        print(f"  level {lv.depth}: ground energy {lv.ground_energy:+.6f}")

    # Level 2 should again be harmonic: x^2 + 1, trustworthy only where the
    # previous ground state had not yet decayed into noise.
    lv2 = hier.levels[1]
    lo, hi = lv2.trust
    err = np.max(np.abs(lv2.potential.values[lo:hi + 1]
                        - (grid.x[lo:hi + 1] ** 2 + 1.0)))
    print(f"\nlevel-2 potential vs. x^2 + 1 on "
          f"[{grid.x[lo]:.2f}, {grid.x[hi]:.2f}]: max |diff| = {err:.2e}")


if __name__ == "__main__":
    main()
