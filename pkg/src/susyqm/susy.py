"""Partner potentials, charge algebra, zero modes, and the isospectral hierarchy.

A superpotential w(x) generates the partner pair V∓ = w² ∓ w′ and the ladder
maps A = d/dx + w, A† = -d/dx + w.  Everything here works on tabulated grids;
units are ħ=2m=1 throughout the package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.integrate import cumulative_trapezoid

from .eigensolver import DECAY_RATIO, ground_state
from .errors import (EvaluationError, GridMismatchError, NodePresentError,
                     NoBoundStateError)
from .expressions import (compile_on_grid, differentiate, parameter_names,
                          parse_expression)
from .grids import (DEFAULT_DOMAIN, Grid1D, GridFunction, align_sign,
                    boundary_amplitude_ratio, count_nodes, derivative)

WFunc = Callable[[np.ndarray, dict], np.ndarray]


@dataclass(frozen=True)
class SuperpotentialFamily:
    """A superpotential w(x; a) with named real parameters.

    ``w_fn`` and ``w_prime_fn`` map (x array, parameter dict) to value
    arrays.  When no analytic derivative is available ``w_prime_fn`` is None
    and tabulated finite differences stand in; residual tests then run at a
    relaxed tolerance tier (see shape_invariance).

    ``hard_wall_left`` marks half-line families whose grid starts just off a
    singularity: states are pinned to zero there by the wall, so decay is
    only diagnostic at the right end.
    """

    w_fn: WFunc
    w_prime_fn: WFunc | None
    parameter_names: tuple[str, ...]
    domain: tuple[float, float] = DEFAULT_DOMAIN
    source: str | None = None
    hard_wall_left: bool = False

    @classmethod
    def from_expression(cls, text: str, domain: tuple[float, float] = DEFAULT_DOMAIN,
                        hard_wall_left: bool = False) -> "SuperpotentialFamily":
        """Build a family from an expression string; w′ is derived analytically."""
        expr = parse_expression(text)
        params = parameter_names(expr)
        return cls(
            w_fn=compile_on_grid(expr, params),
            w_prime_fn=compile_on_grid(differentiate(expr), params),
            parameter_names=tuple(params),
            domain=domain,
            source=text,
            hard_wall_left=hard_wall_left,
        )

    @classmethod
    def from_callables(cls, w_fn: WFunc, w_prime_fn: WFunc | None = None,
                       parameter_names: Sequence[str] = (),
                       domain: tuple[float, float] = DEFAULT_DOMAIN,
                       source: str | None = None,
                       hard_wall_left: bool = False) -> "SuperpotentialFamily":
        return cls(w_fn, w_prime_fn, tuple(parameter_names), domain, source, hard_wall_left)

    @property
    def analytic_derivative(self) -> bool:
        return self.w_prime_fn is not None

    @property
    def decay_sides(self) -> str:
        return "right" if self.hard_wall_left else "both"

    def _eval(self, fn: WFunc, grid: Grid1D, params: dict) -> GridFunction:
        missing = [p for p in self.parameter_names if p not in params]
        if missing:
            raise EvaluationError(f"missing parameter values for {missing}")
        vals = np.asarray(fn(grid.x, params), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("superpotential evaluated non-finite on the grid")
        return GridFunction(grid, vals)

    def w_grid(self, grid: Grid1D, params: dict) -> GridFunction:
        return self._eval(self.w_fn, grid, params)

    def w_prime_grid(self, grid: Grid1D, params: dict) -> GridFunction:
        if self.w_prime_fn is None:
            return derivative(self.w_grid(grid, params))
        return self._eval(self.w_prime_fn, grid, params)


@dataclass(frozen=True)
class PartnerPair:
    """Tabulated partner potentials V∓ = w² ∓ w′ with the w, w′ that built them."""

    v_minus: GridFunction
    v_plus: GridFunction
    w_used: GridFunction
    w_prime_used: GridFunction


def partner_pair_from_w(w: GridFunction, w_prime: GridFunction | None = None) -> PartnerPair:
    if w_prime is None:
        w_prime = derivative(w)
    elif w_prime.grid != w.grid:
        raise GridMismatchError("w and w_prime live on different grids")
    w2 = w.values * w.values
    return PartnerPair(
        v_minus=GridFunction(w.grid, w2 - w_prime.values),
        v_plus=GridFunction(w.grid, w2 + w_prime.values),
        w_used=w,
        w_prime_used=w_prime,
    )


def partner_potentials(family: SuperpotentialFamily, params: dict,
                       grid: Grid1D) -> PartnerPair:
    """Tabulate the partner pair of a family at given parameter values."""
    return partner_pair_from_w(family.w_grid(grid, params),
                               family.w_prime_grid(grid, params))


def zero_mode(family: SuperpotentialFamily, params: dict, grid: Grid1D,
              sign: int = -1) -> GridFunction:
    """Unnormalized zero-energy solution exp(∓∫w): sign -1 for ψ₀⁻, +1 for ψ₀⁺.

    The exponent is referenced to its maximum before exponentiating, which
    fixes the arbitrary overall constant at peak value 1 and keeps the
    evaluation overflow-free for any w; tails may flush to zero.
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign}")
    w = family.w_grid(grid, params)
    phi = cumulative_trapezoid(w.values, dx=grid.h, initial=0.0)
    expo = -phi if sign == -1 else phi
    return GridFunction(grid, np.exp(expo - expo.max()))


class SusyPhase(enum.Enum):
    UNBROKEN_MINUS = "unbroken-minus"
    UNBROKEN_PLUS = "unbroken-plus"
    BROKEN = "broken"


def susy_phase(family: SuperpotentialFamily, params: dict, grid: Grid1D,
               decay_ratio: float = DECAY_RATIO) -> SusyPhase:
    """Classify the phase by which zero mode (if either) passes the decay test.

    Should both raw tests ever pass (possible only for pathological w at the
    test threshold), the mode with the smaller boundary ratio wins, keeping
    the verdict single-valued.
    """
    sides = family.decay_sides
    r_minus = boundary_amplitude_ratio(zero_mode(family, params, grid, -1), sides)
    r_plus = boundary_amplitude_ratio(zero_mode(family, params, grid, +1), sides)
    minus_ok = r_minus < decay_ratio
    plus_ok = r_plus < decay_ratio
    if minus_ok and plus_ok:
        return SusyPhase.UNBROKEN_MINUS if r_minus <= r_plus else SusyPhase.UNBROKEN_PLUS
    if minus_ok:
        return SusyPhase.UNBROKEN_MINUS
    if plus_ok:
        return SusyPhase.UNBROKEN_PLUS
    return SusyPhase.BROKEN


# -- ladder maps ---------------------------------------------------------------


def apply_a_from_w(w: GridFunction, psi: GridFunction) -> GridFunction:
    """(d/dx + w)ψ on the grid; destroys a node in the unbroken ladder."""
    if w.grid != psi.grid:
        raise GridMismatchError("w and state live on different grids")
    return GridFunction(psi.grid, derivative(psi).values + w.values * psi.values)


def apply_a_dagger_from_w(w: GridFunction, psi: GridFunction) -> GridFunction:
    """(-d/dx + w)ψ on the grid; creates a node in the unbroken ladder."""
    if w.grid != psi.grid:
        raise GridMismatchError("w and state live on different grids")
    return GridFunction(psi.grid, -derivative(psi).values + w.values * psi.values)


def apply_a(family: SuperpotentialFamily, params: dict, psi: GridFunction) -> GridFunction:
    return apply_a_from_w(family.w_grid(psi.grid, params), psi)


def apply_a_dagger(family: SuperpotentialFamily, params: dict,
                   psi: GridFunction) -> GridFunction:
    return apply_a_dagger_from_w(family.w_grid(psi.grid, params), psi)


# -- charge algebra --------------------------------------------------------------


@dataclass(frozen=True)
class ChargeMatrices:
    """Discretized A, A† and the block operators Q, Q†, ℋ on interior nodes.

    A uses the antisymmetric central-difference matrix plus diag(w), so
    a_dagger_matrix is the exact transpose of a_matrix and the block
    identities below hold as matrix identities rather than approximations.
    """

    grid: Grid1D
    a_matrix: sparse.csr_matrix
    a_dagger_matrix: sparse.csr_matrix
    q: sparse.csr_matrix
    q_dagger: sparse.csr_matrix
    h_susy: sparse.csr_matrix


def charge_matrices(family: SuperpotentialFamily, params: dict,
                    grid: Grid1D) -> ChargeMatrices:
    """Assemble A = D + diag(w) and the block charges on the interior nodes.

    D is the central-difference first derivative with Dirichlet ends, which
    is antisymmetric; A† is therefore literally A-transposed.
    """
    m = grid.n_points - 2
    w = family.w_grid(grid, params).values[1:-1]
    c = 1.0 / (2.0 * grid.h)
    d = sparse.diags([np.full(m - 1, -c), np.full(m - 1, c)], offsets=[-1, 1])
    a = (d + sparse.diags(w)).tocsr()
    a_dag = a.T.tocsr()
    z = sparse.csr_matrix((m, m))
    q = sparse.bmat([[z, z], [a, z]], format="csr")
    q_dag = sparse.bmat([[z, a_dag], [z, z]], format="csr")
    h = sparse.bmat([[a_dag @ a, z], [z, a @ a_dag]], format="csr")
    return ChargeMatrices(grid, a, a_dag, q, q_dag, h)


@dataclass(frozen=True)
class AlgebraReport:
    """Frobenius norms of the five defining identities of the charge algebra.

    Each norm should vanish; ``passed`` requires all five below
    tolerance × ‖ℋ‖.
    """

    q_squared: float
    q_dagger_squared: float
    anticommutator_defect: float
    q_commutator: float
    q_dagger_commutator: float
    h_scale: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "q_squared": self.q_squared,
            "q_dagger_squared": self.q_dagger_squared,
            "anticommutator_defect": self.anticommutator_defect,
            "q_commutator": self.q_commutator,
            "q_dagger_commutator": self.q_dagger_commutator,
            "h_scale": self.h_scale,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _fro(m: sparse.spmatrix) -> float:
    return float(np.sqrt(m.power(2).sum()))


def verify_algebra(cm: ChargeMatrices, tolerance: float = 1e-10) -> AlgebraReport:
    """Check Q² = Q†² = 0, {Q,Q†} = ℋ, and [Q,ℋ] = [Q†,ℋ] = 0 numerically."""
    q, qd, h = cm.q, cm.q_dagger, cm.h_susy
    h_scale = _fro(h)
    norms = (
        _fro(q @ q),
        _fro(qd @ qd),
        _fro(q @ qd + qd @ q - h),
        _fro(q @ h - h @ q),
        _fro(qd @ h - h @ qd),
    )
    passed = all(n < tolerance * h_scale for n in norms)
    return AlgebraReport(*norms, h_scale, tolerance, passed)


def block_spectra(cm: ChargeMatrices) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues of A†A and AA†, each sorted ascending.

    Both blocks are symmetric pentadiagonal by construction, so a banded
    solver sees them exactly; positive semi-definiteness means nothing below
    roundoff-negative.
    """
    def banded_eigvals(s: sparse.spmatrix) -> np.ndarray:
        m = s.shape[0]
        band = np.zeros((3, m))
        band[2, :] = s.diagonal(0)
        band[1, 1:] = s.diagonal(1)
        band[0, 2:] = s.diagonal(2)
        return np.sort(scipy.linalg.eigvals_banded(band, lower=False))

    return (banded_eigvals(cm.a_dagger_matrix @ cm.a_matrix),
            banded_eigvals(cm.a_matrix @ cm.a_dagger_matrix))


# -- ground-state inversion and the hierarchy ------------------------------------


def _derivative_5pt(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central first derivative, second-order one-sided at edges.

    Log-derivative tails amplify stencil error by |ψ⁽ᵏ⁾/ψ|, which grows fast
    for confining potentials; the extra two orders keep the rebuilt
    hierarchy potentials inside their tolerance where the state is resolved.
    """
    out = np.empty_like(values)
    out[2:-2] = (values[:-4] - 8.0 * values[1:-3]
                 + 8.0 * values[3:-1] - values[4:]) / (12.0 * h)
    edges = np.gradient(values, h, edge_order=2)
    out[:2] = edges[:2]
    out[-2:] = edges[-2:]
    return out


def superpotential_from_ground_state(psi0: GridFunction,
                                     rel_floor: float = 1e-12) -> GridFunction:
    """Recover w = -ψ₀′/ψ₀ from a nodeless state.

    The ratio is taken directly (no logs) wherever |ψ₀| exceeds
    ``rel_floor`` of its peak; outside that region w is filled by constant
    extension, and callers should treat it as untrusted there.  A state with
    an interior node is rejected.
    """
    psi = align_sign(psi0)
    if count_nodes(psi) != 0:
        raise NodePresentError("state has interior nodes; not a ground state")
    vals = psi.values
    mask = np.abs(vals) >= rel_floor * float(np.max(np.abs(vals)))
    idx = np.flatnonzero(mask)
    dpsi = _derivative_5pt(vals, psi.grid.h)
    w_masked = -dpsi[idx] / vals[idx]
    w = np.interp(np.arange(vals.size), idx, w_masked)
    return GridFunction(psi.grid, w)


def decay_trust_window(psi: GridFunction, decay_ratio: float = DECAY_RATIO) -> tuple[int, int]:
    """Index range where |ψ| is at least ``decay_ratio`` of its peak.

    Quantities derived from ψ by division (w, rebuilt potentials) are only
    meaningful inside this window.
    """
    big = np.flatnonzero(np.abs(psi.values) >= decay_ratio * float(np.max(np.abs(psi.values))))
    return int(big[0]), int(big[-1])


@dataclass(frozen=True)
class HierarchyLevel:
    """One member of the isospectral chain.

    ``ground_energy`` is the plain oracle ground energy of ``potential`` as
    built; because each new potential carries the previous level's energy as
    an additive shift, these values reproduce the original spectrum level by
    level.  A final level may carry only the potential (``ground_energy``
    None) when no bound state remains.  ``trust`` is the index window from
    decay_trust_window of the level's ground state.
    """

    depth: int
    potential: GridFunction
    ground_energy: float | None
    ground_state: GridFunction | None
    w: GridFunction | None
    trust: tuple[int, int] | None


@dataclass(frozen=True)
class Hierarchy:
    levels: list[HierarchyLevel]
    truncated: bool
    note: str | None = None

    def __iter__(self):
        return iter(self.levels)

    def __len__(self) -> int:
        return len(self.levels)


def build_hierarchy(v: GridFunction, depth: int,
                    decay_ratio: float = DECAY_RATIO,
                    sides: str = "both") -> Hierarchy:
    """Iteratively strip ground states: solve, extract w, form w² + w′ + E₀.

    Stops early (``truncated`` True, ``note`` set) as soon as a level's
    lowest state fails the decay test, i.e. the chain has run out of bound
    states.
    """
    if depth < 1:
        raise ValueError(f"depth={depth} must be at least 1")
    grid = v.grid
    levels: list[HierarchyLevel] = []
    current = v
    for k in range(1, depth + 1):
        try:
            pair = ground_state(current, decay_ratio, sides)
        except NoBoundStateError as exc:
            levels.append(HierarchyLevel(k, current, None, None, None, None))
            return Hierarchy(levels, truncated=True, note=f"level {k}: {exc}")
        w = superpotential_from_ground_state(pair.state)
        trust = decay_trust_window(pair.state, decay_ratio)
        levels.append(HierarchyLevel(k, current, pair.energy, pair.state, w, trust))
        if k < depth:
            w_prime = _derivative_5pt(w.values, grid.h)
            current = GridFunction(grid, w.values**2 + w_prime + pair.energy)
    return Hierarchy(levels, truncated=False)
