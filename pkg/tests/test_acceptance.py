"""Acceptance suite: ten pinned criteria, one test and one verdict line each.

Tolerances are fixed here and nowhere else; loosening them is a contract
change, not a test fix.  Each test prints ``criterion NN <label>: PASS/FAIL``
with the measured numbers so a log scan shows the whole gate at a glance.
"""

import numpy as np

from susyqm import (CERTIFIED, NO_WITHIN_SEARCH, UNKNOWN, YES,
                    SuperpotentialFamily, Translation, VennTag,
                    algebraic_spectrum, apply_a, block_spectra, build_hierarchy,
                    charge_matrices, classify_family, classify_record,
                    closed_form_spectrum, count_nodes, get_record, instantiate,
                    make_grid, merged_params, normalize, record_grid,
                    si_residual, sign_aligned_distance, solve_potential,
                    verify_algebra, wavefunction_chain, GridFunction)

ALGEBRA_WS = ("x", "2 - exp(-x)", "2*tanh(x)")
TRANSLATIONAL = ("shifted-harmonic", "morse", "poschl-teller", "coulomb-radial")


def _verdict(num: int, label: str, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num:02d} {label}: {detail}"


def _default_grid(family: SuperpotentialFamily):
    return make_grid(family.domain[0], family.domain[1], 2001)


def test_criterion_01_charge_algebra():
    worst_rel = 0.0
    exact_zero = True
    for text in ALGEBRA_WS:
        fam = SuperpotentialFamily.from_expression(text)
        rep = verify_algebra(charge_matrices(fam, {}, _default_grid(fam)))
        exact_zero &= rep.q_squared == 0.0 and rep.q_dagger_squared == 0.0
        worst_rel = max(worst_rel,
                        rep.anticommutator_defect / rep.h_scale,
                        rep.q_commutator / rep.h_scale,
                        rep.q_dagger_commutator / rep.h_scale)
    ok = exact_zero and worst_rel < 1e-10
    _verdict(1, "charge algebra", ok,
             f"nilpotency exact={exact_zero}, worst defect {worst_rel:.2e} of h_scale")


def test_criterion_02_block_positivity():
    most_negative = 0.0
    for text in ALGEBRA_WS:
        fam = SuperpotentialFamily.from_expression(text)
        lo, hi = block_spectra(charge_matrices(fam, {}, _default_grid(fam)))
        most_negative = min(most_negative, float(lo[0]), float(hi[0]))
    ok = most_negative >= -1e-10
    _verdict(2, "block positivity", ok, f"lowest eigenvalue {most_negative:.2e}")


def _mutual_levels(name: str) -> int:
    """Highest n with both E⁻ₙ₊₁ and E⁺ₙ genuinely bound, capped at 3.

    The plus sector at a₀ is the minus sector at a₁, so its validity comes
    from the record's own predicate along the orbit.
    """
    rec = get_record(name)
    minus_valid = sum(e.valid for e in closed_form_spectrum(name, None, 4).entries)
    a1 = rec.transform.apply(merged_params(rec, None))
    plus_valid = sum(e.valid for e in closed_form_spectrum(name, a1, 3).entries)
    return min(minus_valid - 2, plus_valid - 1, 3)


def test_criterion_03_isospectral_degeneracy():
    worst = 0.0
    tested = []
    for name in TRANSLATIONAL:
        rec = get_record(name)
        grid = record_grid(rec)
        pair, _ = instantiate(name, None, grid)
        n_max = _mutual_levels(name)
        tested.append(f"{name}:n<={n_max}")
        minus = solve_potential(pair.v_minus, n_max + 2)
        plus = solve_potential(pair.v_plus, n_max + 1)
        e0 = minus[0].energy
        for n in range(n_max + 1):
            worst = max(worst, abs((minus[n + 1].energy - e0) - plus[n].energy))
    ok = worst < 5e-3
    _verdict(3, "isospectral degeneracy", ok,
             f"worst split {worst:.2e}; {', '.join(tested)}")


def test_criterion_04_intertwining():
    worst_l2 = 0.0
    nodes_ok = True
    # Defaults leave Pöschl-Teller too few bound levels to reach n=2, so
    # that record runs at A=5; the criterion pins records, not parameters.
    for name, params in (("shifted-harmonic", None), ("poschl-teller", {"A": 5.0})):
        rec = get_record(name)
        grid = record_grid(rec)
        a0 = merged_params(rec, params)
        pair, _ = instantiate(name, params, grid)
        minus = solve_potential(pair.v_minus, 4)
        plus = solve_potential(pair.v_plus, 3)
        for n in range(3):
            mapped = normalize(apply_a(rec.family, a0, minus[n + 1].state))
            worst_l2 = max(worst_l2, sign_aligned_distance(mapped, plus[n].state))
            nodes_ok &= count_nodes(minus[n + 1].state) == n + 1
            nodes_ok &= count_nodes(mapped) == n
            nodes_ok &= count_nodes(plus[n].state) == n
    ok = worst_l2 < 1e-3 and nodes_ok
    _verdict(4, "intertwining", ok,
             f"worst L2 {worst_l2:.2e}, node ladder exact={nodes_ok}")


def test_criterion_05_hierarchy():
    grid = make_grid(-10.0, 10.0, 8001)
    hier = build_hierarchy(GridFunction(grid, grid.x**2 - 1.0), 3)
    energies = [lv.ground_energy for lv in hier]
    energy_err = max(abs(e - 2.0 * k) for k, e in enumerate(energies))
    lv2 = hier.levels[1]
    lo, hi = lv2.trust
    v_err = float(np.max(np.abs(lv2.potential.values[lo:hi + 1]
                                - (grid.x[lo:hi + 1] ** 2 + 1.0))))
    ok = energy_err < 5e-3 and v_err < 1e-3
    _verdict(5, "hierarchy", ok,
             f"energy err {energy_err:.2e}, level-2 potential err {v_err:.2e} "
             f"on x in [{grid.x[lo]:.2f}, {grid.x[hi]:.2f}]")


def test_criterion_06_shape_invariance_residual():
    morse = get_record("morse")
    rep_m = si_residual(morse.family, {"A": 2.0}, Translation(-1.0),
                        record_grid(morse))
    pt = get_record("poschl-teller")
    rep_p = si_residual(pt.family, {"A": 3.0}, Translation(-1.0),
                        record_grid(pt))
    ok = (rep_m.passed and abs(rep_m.residual_mean - 3.0) < 1e-6
          and rep_m.residual_stddev < 1e-8
          and rep_p.passed and abs(rep_p.residual_mean - 5.0) < 1e-6
          and rep_p.residual_stddev < 1e-8)
    _verdict(6, "shape invariance residual", ok,
             f"morse mean {rep_m.residual_mean:.9f} stddev {rep_m.residual_stddev:.1e}, "
             f"poschl-teller mean {rep_p.residual_mean:.9f} stddev {rep_p.residual_stddev:.1e}")


def test_criterion_07_algebraic_spectra():
    expected = {
        "morse": [0.0, 3.0],
        "poschl-teller": [0.0, 3.0],
        "scaling-demo": [0.0, 0.5, 0.75, 0.875],
        "cyclic-demo": [0.0, 1.0, 3.0, 4.0, 6.0, 7.0],
    }
    recursion_exact = True
    oracle_worst = 0.0
    for name, want in expected.items():
        rec = get_record(name)
        spectrum = closed_form_spectrum(name, None, max(len(want), 5))
        got = [e.energy for e in spectrum.entries if e.valid][:len(want)]
        recursion_exact &= got == want
        base = algebraic_spectrum(rec.r_function, rec.transform,
                                  merged_params(rec, None), len(spectrum.entries) - 1)
        recursion_exact &= base.energies == [e.energy for e in spectrum.entries]
        if rec.family is not None:
            pair, _ = instantiate(name, None, record_grid(rec))
            valid = [e for e in spectrum.entries if e.valid]
            oracle = solve_potential(pair.v_minus, len(valid))
            e0 = oracle[0].energy
            for e in valid:
                oracle_worst = max(oracle_worst,
                                   abs(oracle[e.n].energy - e0 - e.energy))
    ok = recursion_exact and oracle_worst < 5e-3
    _verdict(7, "algebraic spectra", ok,
             f"recursion exact={recursion_exact}, oracle worst {oracle_worst:.2e}")


def test_criterion_08_wavefunction_chain():
    rec = get_record("poschl-teller")
    grid = record_grid(rec)
    pair, _ = instantiate("poschl-teller", {"A": 3.0}, grid)
    oracle = solve_potential(pair.v_minus, 3)
    worst = 0.0
    nodes = []
    for n in (1, 2):
        psi = wavefunction_chain(rec.family, {"A": 3.0}, rec.transform, n, grid)
        worst = max(worst, sign_aligned_distance(psi, oracle[n].state))
        nodes.append(count_nodes(psi))
    ok = worst < 1e-3 and nodes == [1, 2]
    _verdict(8, "wavefunction chain", ok, f"worst L2 {worst:.2e}, nodes {nodes}")


def _tag_invariants_hold(tag: VennTag) -> bool:
    if tag.shape_invariant == YES and tag.susy != YES:
        return False
    if tag.ih_factorizable == YES and tag.shape_invariant != YES:
        return False
    if tag.shape_invariant == YES and tag.exactly_solvable != CERTIFIED:
        return False
    return tag.exactly_solvable in (CERTIFIED, UNKNOWN)


def test_criterion_09_venn_semantics():
    records_ok = all(
        (t.susy, t.shape_invariant, t.ih_factorizable, t.exactly_solvable)
        == (YES, YES, YES, CERTIFIED)
        for t in (classify_record(name) for name in TRANSLATIONAL))
    scaling = classify_record("scaling-demo")
    strict_inclusion = (scaling.shape_invariant == YES
                        and scaling.ih_factorizable == NO_WITHIN_SEARCH)
    cubic = classify_family(SuperpotentialFamily.from_expression("x^3"), {},
                            make_grid(-6.0, 6.0, 601), search_budget=9)
    cubic_ok = (cubic.shape_invariant == NO_WITHIN_SEARCH
                and cubic.exactly_solvable == UNKNOWN)

    rng = np.random.default_rng(20250814)
    grid = make_grid(-10.0, 10.0, 501)
    sweep_ok = True
    for _ in range(100):
        shape = rng.integers(0, 4)
        if shape == 0:
            fam, a0 = SuperpotentialFamily.from_expression("c"), \
                {"c": float(rng.uniform(0.5, 3.0))}
        elif shape == 1:
            fam, a0 = SuperpotentialFamily.from_expression("a*x"), \
                {"a": float(rng.uniform(0.5, 2.0))}
        elif shape == 2:
            fam, a0 = SuperpotentialFamily.from_expression("a*x"), \
                {"a": float(-rng.uniform(0.5, 2.0))}
        else:
            fam = SuperpotentialFamily.from_expression("b*x + c*x^3")
            a0 = {"b": float(rng.uniform(-1.0, 1.0)),
                  "c": float(rng.uniform(0.25, 1.5)) * (1 if rng.random() < 0.5 else -1)}
        tag = classify_family(fam, a0, grid, search_budget=5)
        sweep_ok &= _tag_invariants_hold(tag)
    ok = records_ok and strict_inclusion and cubic_ok and sweep_ok
    _verdict(9, "venn semantics", ok,
             f"records={records_ok}, IH-strict-inside-SI={strict_inclusion}, "
             f"cubic={cubic_ok}, 100-family sweep={sweep_ok}")


def test_criterion_10_oracle_calibration():
    def worst_rel(n_points: int) -> float:
        grid = make_grid(0.0, 1.0, n_points)
        pairs = solve_potential(GridFunction(grid, np.zeros(n_points)), 4)
        return max(abs(p.energy - ((p.index + 1) * np.pi) ** 2)
                   / ((p.index + 1) * np.pi) ** 2 for p in pairs)

    coarse = worst_rel(2001)
    fine = worst_rel(4001)
    ratio = coarse / fine
    ok = coarse < 1e-4 and 3.5 < ratio < 4.5
    _verdict(10, "oracle calibration", ok,
             f"rel err {coarse:.2e} at 2001 points, halving ratio {ratio:.2f}")
