"""Rediscover the Morse parameter step by search, then price the spectrum.

The catalog knows that the Morse superpotential repeats its own shape under
A -> A - 1.  This script hides that answer, hands the bare family to the
transform search, and lets it find the step from residual flatness alone.
The measured step residuals then feed the spectrum recursion, which is
compared against the closed form and a numeric oracle.

A deliberately hopeless case closes the show: w = x^3 finds nothing at the
same budget, and says so.

Run:  python3 demos/invariance_search.py
"""

import json

from susyqm import (SuperpotentialFamily, closed_form_spectrum, get_record,
                    instantiate, make_grid, merged_params, record_grid,
                    search_transform, solve_potential,
                    spectrum_from_measured_residuals)


def main() -> None:
    rec = get_record("morse")
    a0 = merged_params(rec, None)
    grid = record_grid(rec)

    found = search_transform(rec.family, a0, grid, budget=17)
    if found is None:
        print("search came up empty (unexpected for Morse)")
        return
    transform, report = found
    print(f"found transform: {json.dumps(transform.to_dict(), sort_keys=True)}")
    print(f"residual mean   {report.residual_mean:.9f}")
    print(f"residual stddev {report.residual_stddev:.2e}")

    measured = spectrum_from_measured_residuals(rec.family, transform, a0,
                                                grid, n_max=2)
    declared = closed_form_spectrum("morse", None, 2)
    pair, _ = instantiate("morse", None, grid)
    n_valid = sum(e.valid for e in declared.entries)
    oracle = solve_potential(pair.v_minus, n_valid)
    e0 = oracle[0].energy

    print("\n n   measured        closed form    oracle (E0 subtracted)")
    for e in declared.entries:
        line = f" {e.n}   {measured.entries[e.n].energy:<14.9f}  {e.energy:<13.9f}"
        if e.valid:
            line += f"  {oracle[e.n].energy - e0:.9f}"
        else:
            line += "  (not a bound level)"
        print(line)

    cubic = SuperpotentialFamily.from_expression("x^3")
    result = search_transform(cubic, {}, make_grid(-6.0, 6.0, 601), budget=17)
    verdict = ("nothing found" if result is None
               else f"found {json.dumps(result[0].to_dict(), sort_keys=True)}")
    print(f"\nw = x^3 at the same budget: {verdict}")


if __name__ == "__main__":
    main()
