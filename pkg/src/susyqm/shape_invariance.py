"""Shape invariance: parameter transforms, the residual test, and spectra.

A family is shape invariant under a parameter map f when
V₊(x, a₀) = V₋(x, a₁) + R(a₁) with a₁ = f(a₀) and R independent of x.  When
that holds, the bound spectrum is the running sum of R over the parameter
orbit and the excited states follow from repeated A† applications, no
eigensolver involved.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ChainConstructionError, EvaluationError, TransformError
from .grids import (FLOAT_FMT, Grid1D, GridFunction, align_sign,
                    boundary_amplitude_ratio, count_nodes, normalize)
from .susy import (SuperpotentialFamily, apply_a_dagger, partner_potentials,
                   zero_mode)

#: Residual-stddev tolerance tiers: exact w′ vs tabulated finite differences.
ANALYTIC_TOL = 1e-6
FINITE_DIFF_TOL = 1e-4

#: Interior nodes dropped from each end before residual statistics, so edge
#: stencils of a finite-difference w′ never contaminate the verdict.
EDGE_TRIM = 2


def _params_close(a: dict, b: dict, rel: float = 1e-12) -> bool:
    if set(a) != set(b):
        return False
    return all(abs(a[k] - b[k]) <= rel * (1.0 + abs(a[k])) for k in a)


class ParameterTransform:
    """Base of the five parameter-map variants; maps a parameter dict forward.

    Scalar variants act on one named parameter (``param``), defaulting to
    the only parameter when the dict has exactly one.  Applied to a
    parameter-free family (empty dict) every scalar variant is vacuous and
    the orbit is constant.
    """

    kind = "base"

    def apply(self, params: dict) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def _target(params: dict, param: str | None) -> str | None:
        if not params:
            return None
        if param is not None:
            if param not in params:
                raise TransformError(f"transform targets {param!r}, not in parameters {sorted(params)}")
            return param
        if len(params) == 1:
            return next(iter(params))
        raise TransformError(
            f"transform target is ambiguous for parameters {sorted(params)}; set param=")

    def _mapped(self, params: dict, param: str | None,
                fn: Callable[[float], float]) -> dict:
        out = dict(params)
        target = self._target(params, param)
        if target is None:
            return out
        new = fn(float(params[target]))
        if not math.isfinite(new):
            raise TransformError(f"transform sends {target}={params[target]} to a non-finite value")
        out[target] = new
        return out


@dataclass(frozen=True)
class Translation(ParameterTransform):
    """a → a + alpha."""

    alpha: float
    param: str | None = None
    kind = "translation"

    def apply(self, params: dict) -> dict:
        return self._mapped(params, self.param, lambda a: a + self.alpha)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "param": self.param}


@dataclass(frozen=True)
class Scaling(ParameterTransform):
    """a → q·a with 0 < q < 1."""

    q: float
    param: str | None = None
    kind = "scaling"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise TransformError(f"scaling requires 0 < q < 1, got q={self.q}")

    def apply(self, params: dict) -> dict:
        return self._mapped(params, self.param, lambda a: self.q * a)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "q": self.q, "param": self.param}


@dataclass(frozen=True)
class PowerScaling(ParameterTransform):
    """a → q·aᵖ with 0 < q < 1 and integer p."""

    q: float
    p: int
    param: str | None = None
    kind = "power-scaling"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise TransformError(f"power scaling requires 0 < q < 1, got q={self.q}")
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TransformError(f"power scaling requires integer p, got {self.p!r}")

    def apply(self, params: dict) -> dict:
        return self._mapped(params, self.param, lambda a: self.q * a**self.p)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "q": self.q, "p": self.p, "param": self.param}


@dataclass(frozen=True)
class Projective(ParameterTransform):
    """a → q·a/(1 + p·a) with q > 0 and p < 1."""

    q: float
    p: float
    param: str | None = None
    kind = "projective"

    def __post_init__(self):
        if not self.q > 0.0:
            raise TransformError(f"projective requires q > 0, got q={self.q}")
        if not self.p < 1.0:
            raise TransformError(f"projective requires p < 1, got p={self.p}")

    def apply(self, params: dict) -> dict:
        def fn(a: float) -> float:
            denom = 1.0 + self.p * a
            if denom == 0.0:
                raise TransformError(f"projective map singular at a={a}")
            return self.q * a / denom
        return self._mapped(params, self.param, fn)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "q": self.q, "p": self.p, "param": self.param}


@dataclass(frozen=True)
class Cyclic(ParameterTransform):
    """Extensional cycle a₀ → a₁ → ... → a_{p-1} → a₀ of parameter dicts."""

    values: tuple[dict, ...]
    kind = "cyclic"

    def __post_init__(self):
        if len(self.values) < 1:
            raise TransformError("cyclic transform needs at least one parameter map")
        object.__setattr__(self, "values", tuple(dict(v) for v in self.values))

    @property
    def period(self) -> int:
        return len(self.values)

    def apply(self, params: dict) -> dict:
        for k, v in enumerate(self.values):
            if _params_close(params, v):
                return dict(self.values[(k + 1) % self.period])
        raise TransformError(f"parameters {params} are not on the declared cycle")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "period": self.period, "values": list(self.values)}


@dataclass(frozen=True)
class ParameterOrbit:
    """a₀ and the iterated sequence a₀..a_n under one transform."""

    a0: dict
    sequence: list[dict]


def iterate_params(t: ParameterTransform, a0: dict, n: int) -> ParameterOrbit:
    """Orbit of length n+1: repeated application of the transform to a0."""
    if n < 0:
        raise ValueError(f"orbit length must be nonnegative, got n={n}")
    seq = [dict(a0)]
    for _ in range(n):
        seq.append(t.apply(seq[-1]))
    return ParameterOrbit(dict(a0), seq)


# -- residual test ---------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """Interior statistics of V₊(x, a₀) − V₋(x, f(a₀)).

    ``residual_mean`` is the R(a₁) estimate; the test passes when the
    pointwise spread is negligible against the mean, i.e. the residual
    carries no x dependence at this tolerance.
    """

    residual_mean: float
    residual_stddev: float
    passed: bool
    tolerance_used: float

    def to_dict(self) -> dict:
        return {
            "residual_mean": self.residual_mean,
            "residual_stddev": self.residual_stddev,
            "passed": self.passed,
            "tolerance_used": self.tolerance_used,
        }


def si_residual(family: SuperpotentialFamily, a0: dict, t: ParameterTransform,
                grid: Grid1D, tolerance: float | None = None) -> ResidualReport:
    """Test V₊(x, a₀) = V₋(x, a₁) + R(a₁) pointwise on the trimmed interior."""
    if tolerance is None:
        tolerance = ANALYTIC_TOL if family.analytic_derivative else FINITE_DIFF_TOL
    a1 = t.apply(a0)
    v_plus = partner_potentials(family, a0, grid).v_plus
    v_minus = partner_potentials(family, a1, grid).v_minus
    res = (v_plus.values - v_minus.values)[EDGE_TRIM:-EDGE_TRIM]
    mean = float(res.mean())
    stddev = float(res.std())
    return ResidualReport(mean, stddev, stddev < tolerance * (1.0 + abs(mean)), tolerance)


# -- algebraic spectra -------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    energy: float
    valid: bool = True


@dataclass(frozen=True)
class Spectrum:
    """Bound-level energies E₀=0, Eₙ = Σₖ₌₁ⁿ R(aₖ).

    ``truncated`` marks an early stop because some R(aₖ) was nonpositive:
    past that point the recursion no longer describes new bound states.
    ``valid`` flags on entries come from family-specific validity predicates
    (catalog); the generic recursion leaves them True.
    """

    entries: list[SpectrumEntry]
    truncated: bool = False

    @property
    def energies(self) -> list[float]:
        return [e.energy for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "entries": [{"n": e.n, "energy": e.energy, "valid": e.valid}
                        for e in self.entries],
            "truncated": self.truncated,
        }

    def to_csv(self, source: str = "algebraic") -> str:
        lines = ["n,energy,source"]
        for e in self.entries:
            lines.append(f"{e.n},{FLOAT_FMT % e.energy},{source}")
        return "\n".join(lines) + "\n"


def algebraic_spectrum(r_values: Callable[[dict], float], t: ParameterTransform,
                       a0: dict, n_max: int) -> Spectrum:
    """Run the spectrum recursion: partial sums of R along the orbit.

    ``r_values`` evaluates R at an orbit point aₖ (k ≥ 1).  Level 0 is
    exactly zero.  Stops early with the truncated flag when R(aₖ) ≤ 0.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    orbit = iterate_params(t, a0, n_max)
    entries = [SpectrumEntry(0, 0.0)]
    energy = 0.0
    for k in range(1, n_max + 1):
        r = float(r_values(orbit.sequence[k]))
        if r <= 0.0:
            return Spectrum(entries, truncated=True)
        energy += r
        entries.append(SpectrumEntry(k, energy))
    return Spectrum(entries)


def spectrum_from_measured_residuals(family: SuperpotentialFamily, t: ParameterTransform,
                                     a0: dict, grid: Grid1D, n_max: int,
                                     tolerance: float | None = None) -> Spectrum:
    """Spectrum recursion with R(aₖ) measured as the step-k residual mean.

    This is the route for families discovered by search rather than drawn
    from the catalog: no closed form for R is known, so each orbit step is
    measured.  Truncates when a step fails the residual test or turns
    nonpositive.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    orbit = iterate_params(t, a0, n_max)
    entries = [SpectrumEntry(0, 0.0)]
    energy = 0.0
    for k in range(1, n_max + 1):
        report = si_residual(family, orbit.sequence[k - 1], t, grid, tolerance)
        if not report.passed or report.residual_mean <= 0.0:
            return Spectrum(entries, truncated=True)
        energy += report.residual_mean
        entries.append(SpectrumEntry(k, energy))
    return Spectrum(entries)


# -- chain-built wavefunctions ------------------------------------------------------


def wavefunction_chain(family: SuperpotentialFamily, a0: dict, t: ParameterTransform,
                       n: int, grid: Grid1D) -> GridFunction:
    """ψₙ⁻(x, a₀) = A†(a₀)···A†(a_{n-1}) ψ₀⁻(x, aₙ), normalized.

    Requires the residual test to pass first; the built state must carry
    exactly n nodes or the construction is reported as failed.
    """
    if n < 0:
        raise ValueError(f"level index must be nonnegative, got n={n}")
    report = si_residual(family, a0, t, grid)
    if not report.passed:
        raise TransformError(
            f"shape-invariance residual test failed (stddev {report.residual_stddev:.3e} "
            f"at tolerance {report.tolerance_used:.1e}); chain construction undefined")
    orbit = iterate_params(t, a0, n)
    psi = zero_mode(family, orbit.sequence[n], grid, sign=-1)
    for k in reversed(range(n)):
        psi = apply_a_dagger(family, orbit.sequence[k], psi)
    psi = align_sign(normalize(psi))
    nodes = count_nodes(psi)
    if nodes != n:
        raise ChainConstructionError(
            f"chain state for level {n} carries {nodes} node(s); construction unreliable "
            "at this grid or parameters")
    return psi


# -- transform search ---------------------------------------------------------------


@dataclass(frozen=True)
class TransformCandidate:
    """One bounded scalar search space: a transform kind, its knob interval,
    an optional fixed secondary knob p, and the parameter it acts on."""

    kind: str
    lo: float
    hi: float
    p: float | None = None
    param: str | None = None

    def build(self, theta: float) -> ParameterTransform:
        if self.kind == "translation":
            return Translation(theta, param=self.param)
        if self.kind == "scaling":
            return Scaling(theta, param=self.param)
        if self.kind == "power-scaling":
            return PowerScaling(theta, int(self.p), param=self.param)
        if self.kind == "projective":
            return Projective(theta, self.p, param=self.param)
        raise TransformError(f"unknown candidate kind {self.kind!r}")


#: Scan order is fixed: translation, scaling, power, projective — ties in
#: residual quality resolve toward the earliest kind.
_SCAN_KINDS = ("translation", "scaling", "power-scaling", "projective")

_OPEN_INSET = 1.0 / 32.0
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_REFINE_ITERS = 80

#: A found step energy must exceed the residual spread by this factor.
#: Near an R = 0 degeneracy the refiner can park a knob within machine
#: distance of the mirror point, where mean and stddev are both the same
#: noise scale; a genuine R sits orders of magnitude above the spread.
_MEAN_OVER_SPREAD = 10.0


def default_candidates(parameter_names: Sequence[str]) -> list[TransformCandidate]:
    """The stock bounded search spaces, expanded per family parameter.

    Open intervals like q ∈ (0,1) are searched on a closed inset; a
    parameter-free family gets the single vacuous translation candidate.
    """
    names: list[str | None] = list(parameter_names)
    if not names:
        return [TransformCandidate("translation", 0.0, 0.0)]
    out = []
    for kind in _SCAN_KINDS:
        for name in names:
            if kind == "translation":
                out.append(TransformCandidate(kind, -5.0, 5.0, param=name))
            elif kind == "scaling":
                out.append(TransformCandidate(kind, _OPEN_INSET, 1.0 - _OPEN_INSET, param=name))
            elif kind == "power-scaling":
                for p in (2, 3):
                    out.append(TransformCandidate(kind, _OPEN_INSET, 1.0 - _OPEN_INSET,
                                                  p=p, param=name))
            else:
                for p in (0.25, 0.5):
                    out.append(TransformCandidate(kind, _OPEN_INSET, 1.0 - _OPEN_INSET,
                                                  p=p, param=name))
    return out


def _trial_count(budget: int) -> int:
    # next 2^m + 1 at or above the budget, so larger budgets nest smaller ones
    m = 1
    while 2**m + 1 < max(3, budget):
        m += 1
    return 2**m + 1


def _minus_sector_decays(family: SuperpotentialFamily, params: dict,
                         grid: Grid1D) -> bool:
    """ψ₀⁻ must decay from its peak and out-decay ψ₀⁺ at these parameters.

    Relative comparison on purpose: a strict threshold would reject ladders
    whose transformed ground state decays slowly on a finite box, while the
    degenerate mirror solutions this rejects have ψ₀⁻ peaking at the edge.
    """
    sides = family.decay_sides
    r_minus = boundary_amplitude_ratio(zero_mode(family, params, grid, -1), sides)
    r_plus = boundary_amplitude_ratio(zero_mode(family, params, grid, +1), sides)
    return r_minus < 1.0 and r_minus < r_plus


def search_transform(family: SuperpotentialFamily, a0: dict, grid: Grid1D,
                     candidates: Sequence[TransformCandidate] | None = None,
                     budget: int = 33,
                     tolerance: float | None = None,
                     threads: int = 1
                     ) -> tuple[ParameterTransform, ResidualReport] | None:
    """Scan candidate transforms for one that passes the residual test.

    Each candidate's knob is sampled on a nested deterministic grid, the
    best sample golden-section refined, and the winner across candidates is
    the one with the smallest residual stddev (ties to earliest candidate).
    Candidates are independent, so ``threads`` > 1 scans them in a thread
    pool; the tie-break keys off the candidate's position, not completion
    order, so the result does not depend on thread count.

    Degenerate "transforms" that merely flip or kill the superpotential can
    flatten the residual without describing a bound-state ladder, so a
    passing transform must have a residual mean well clear of the residual
    spread (an R = 0 flip measured through refiner noise has the two at the
    same scale) and leave the transformed family with a decaying
    minus-sector zero mode (a mirrored w → −w solution decays in the plus
    sector instead).

    Returns None when nothing passes, which is evidence within this budget,
    not proof of absence.
    """
    if candidates is None:
        candidates = default_candidates(family.parameter_names)
    trials = _trial_count(budget)

    def objective(cand: TransformCandidate, theta: float) -> tuple[float, ResidualReport | None]:
        try:
            transform = cand.build(theta)
            report = si_residual(family, a0, transform, grid, tolerance)
        except (TransformError, EvaluationError):
            return math.inf, None
        return report.residual_stddev, report

    def accept(transform: ParameterTransform, report: ResidualReport) -> bool:
        # Gates run on the refined endpoint only: applied mid-scan they
        # turn near-optimal samples into cliffs and strand the refiner.
        if not report.passed:
            return False
        if report.residual_mean <= _MEAN_OVER_SPREAD * report.residual_stddev:
            return False
        try:
            return _minus_sector_decays(family, transform.apply(a0), grid)
        except (TransformError, EvaluationError):
            return False

    def scan(cand: TransformCandidate) -> tuple[float, ParameterTransform, ResidualReport] | None:
        if cand.lo == cand.hi:
            thetas = [cand.lo]
        else:
            thetas = list(np.linspace(cand.lo, cand.hi, trials))
        scores = [objective(cand, th)[0] for th in thetas]
        k = int(np.argmin(scores))
        if not math.isfinite(scores[k]):
            return None
        # Keep the coarse winner alongside the refined theta: at small
        # budgets the refine window can straddle a rejected degenerate
        # basin and converge into it even when the coarse sample already
        # sat on an acceptable minimum.
        finalists = [thetas[k]]
        if cand.lo < cand.hi:
            span = (cand.hi - cand.lo) / (len(thetas) - 1)
            finalists.append(_refine(lambda th: objective(cand, th)[0],
                                     max(cand.lo, thetas[k] - span),
                                     min(cand.hi, thetas[k] + span)))
        best_local: tuple[float, ParameterTransform, ResidualReport] | None = None
        for theta in finalists:
            score, report = objective(cand, theta)
            if report is None:
                continue
            transform = cand.build(theta)
            if not accept(transform, report):
                continue
            if best_local is None or score < best_local[0]:
                best_local = (score, transform, report)
        return best_local

    if threads > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, candidates))
    else:
        results = [scan(c) for c in candidates]

    best: tuple[float, int, ParameterTransform, ResidualReport] | None = None
    for order, res in enumerate(results):
        if res is None:
            continue
        score, transform, report = res
        if best is None or score < best[0]:
            best = (score, order, transform, report)
    if best is None:
        return None
    return best[2], best[3]


def _refine(fn: Callable[[float], float], lo: float, hi: float) -> float:
    """Golden-section minimum of fn on [lo, hi], fixed iteration count."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(_REFINE_ITERS):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fn(d)
    return c if fc <= fd else d
