"""Built-in shape-invariant families: the regression corpus for everything else.

Four translational records carry full superpotential forms (full line,
exponential wall, and half line); the scaling and cyclic records declare
only the parameter map and R, which is all their spectrum needs.  Default
domains are pinned per record so results are reproducible without tuning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import CatalogError
from .expressions import compile_scalar, parse_expression
from .grids import Grid1D, GridFunction, make_grid
from .shape_invariance import (Cyclic, ParameterTransform, Scaling, Spectrum,
                               SpectrumEntry, Translation, algebraic_spectrum,
                               iterate_params)
from .susy import PartnerPair, SuperpotentialFamily, partner_potentials


@dataclass(frozen=True)
class SIPRecord:
    """One catalog entry.

    ``r_closed_form`` is an expression in the record's parameters giving
    R at an orbit point (the post-step parameter values).  ``validity``
    says whether the level whose orbit parameters are given is a genuine
    bound state.  ``family`` is None for records that declare only the
    (transform, R) pair; they have no x-space form here.  ``min_x`` is the
    closest the grid may start to a singular point.
    """

    name: str
    family: SuperpotentialFamily | None
    transform: ParameterTransform
    r_closed_form: str
    r_function: Callable[[dict], float]
    default_params: dict
    validity: Callable[[dict], bool]
    domain: tuple[float, float, int] | None
    notes: str
    min_x: float | None = None


def _r_compiled(text: str, param_names: list[str]) -> Callable[[dict], float]:
    return compile_scalar(parse_expression(text), sorted(param_names))


def _always_valid(params: dict) -> bool:
    return True


def _positive_a(params: dict) -> bool:
    return params["A"] > 0.0


def _build() -> dict[str, SIPRecord]:
    records = [
        SIPRecord(
            name="shifted-harmonic",
            family=SuperpotentialFamily.from_expression("omega*x"),
            transform=Translation(0.0, param="omega"),
            r_closed_form="2*omega",
            r_function=_r_compiled("2*omega", ["omega"]),
            default_params={"omega": 1.0},
            validity=_always_valid,
            domain=(-10.0, 10.0, 2001),
            notes="oscillator with its ground energy shifted to zero; "
                  "the parameter map is the identity and R is constant",
        ),
        SIPRecord(
            name="morse",
            family=SuperpotentialFamily.from_expression("A - exp(-x)",
                                                        domain=(-3.5, 10.0)),
            transform=Translation(-1.0, param="A"),
            r_closed_form="2*A + 1",
            r_function=_r_compiled("2*A + 1", ["A"]),
            default_params={"A": 2.0},
            validity=_positive_a,
            domain=(-3.5, 10.0, 2701),
            notes="exponential wall on the left, finitely many levels: "
                  "level n is bound only while A - n > 0 (strict)",
        ),
        SIPRecord(
            name="poschl-teller",
            family=SuperpotentialFamily.from_expression("A*tanh(x)"),
            transform=Translation(-1.0, param="A"),
            r_closed_form="2*A + 1",
            r_function=_r_compiled("2*A + 1", ["A"]),
            default_params={"A": 2.0},
            validity=_positive_a,
            domain=(-10.0, 10.0, 2001),
            notes="sech-squared well; same level rule as morse (A - n > 0)",
        ),
        SIPRecord(
            name="coulomb-radial",
            family=SuperpotentialFamily.from_expression(
                "q/(2*(l+1)) - (l+1)/x", domain=(1e-3, 160.0),
                hard_wall_left=True),
            transform=Translation(1.0, param="l"),
            r_closed_form="q^2/4 * (1/l^2 - 1/(l+1)^2)",
            r_function=_r_compiled("q^2/4 * (1/l^2 - 1/(l+1)^2)", ["q", "l"]),
            default_params={"q": 2.0, "l": 0.0},
            validity=_always_valid,
            domain=(1e-3, 160.0, 6401),
            notes="half-line radial problem; the grid starts at r = 1e-3 to "
                  "dodge the singularity, so near-wall values are an "
                  "interpretation, not the infinite-line limit",
            min_x=1e-3,
        ),
        SIPRecord(
            name="scaling-demo",
            family=None,
            transform=Scaling(0.5, param="a"),
            r_closed_form="a",
            r_function=_r_compiled("a", ["a"]),
            default_params={"a": 1.0},
            validity=_always_valid,
            domain=None,
            notes="declared (transform, R) pair only; the x-space potential "
                  "is a series form not carried here, the spectrum is",
        ),
        SIPRecord(
            name="cyclic-demo",
            family=None,
            transform=Cyclic(({"c": 2.0}, {"c": 1.0})),
            r_closed_form="c",
            r_function=_r_compiled("c", ["c"]),
            default_params={"c": 2.0},
            validity=_always_valid,
            domain=None,
            notes="period-2 parameter cycle; R alternates between the two "
                  "cycle values, interleaving two arithmetic ladders",
        ),
    ]
    return {rec.name: rec for rec in records}


_CATALOG = _build()


def list_catalog() -> list[str]:
    return list(_CATALOG)


def get_record(name: str) -> SIPRecord:
    try:
        return _CATALOG[name]
    except KeyError:
        raise CatalogError(
            f"unknown catalog record {name!r}; available: {', '.join(_CATALOG)}") from None


def record_grid(record: SIPRecord) -> Grid1D:
    """The record's pinned default grid."""
    if record.domain is None:
        raise CatalogError(f"record {record.name!r} has no x-space form, so no grid")
    return make_grid(*record.domain)


def merged_params(record: SIPRecord, params: dict | None) -> dict:
    out = dict(record.default_params)
    if params:
        unknown = sorted(set(params) - set(out))
        if unknown:
            raise CatalogError(
                f"record {record.name!r} has no parameters {unknown}; "
                f"expected among {sorted(out)}")
        out.update(params)
    return out


def closed_form_spectrum(name: str, params: dict | None, n_max: int) -> Spectrum:
    """Eq.-of-record spectrum: the generic recursion plus validity flags.

    Energies are exactly those of algebraic_spectrum run on the record's
    closed-form R; entries whose orbit parameters leave the validity region
    come back flagged invalid rather than dropped.
    """
    rec = get_record(name)
    a0 = merged_params(rec, params)
    if not rec.validity(a0):
        raise CatalogError(
            f"parameters {a0} violate validity of record {name!r} at level 0")
    base = algebraic_spectrum(rec.r_function, rec.transform, a0, n_max)
    orbit = iterate_params(rec.transform, a0, len(base.entries) - 1)
    flagged = [SpectrumEntry(e.n, e.energy, rec.validity(orbit.sequence[e.n]))
               for e in base.entries]
    return Spectrum(flagged, truncated=base.truncated)


def instantiate(name: str, params: dict | None, grid: Grid1D) -> tuple[PartnerPair, GridFunction]:
    """Tabulate a record's partner potentials and superpotential on a grid."""
    rec = get_record(name)
    if rec.family is None:
        raise CatalogError(
            f"record {name!r} declares only its transform and R; "
            "it has no superpotential to tabulate")
    if rec.min_x is not None and grid.x_min < rec.min_x:
        raise CatalogError(
            f"grid starts at {grid.x_min}, inside the singular region of "
            f"{name!r}; x_min must be at least {rec.min_x}")
    a0 = merged_params(rec, params)
    pair = partner_potentials(rec.family, a0, grid)
    return pair, pair.w_used


def catalog_dump() -> list[dict]:
    """JSON-ready summary of every record (for docs and the CLI)."""
    out = []
    for rec in _CATALOG.values():
        out.append({
            "name": rec.name,
            "expression": rec.family.source if rec.family else None,
            "transform": rec.transform.to_dict(),
            "r_closed_form": rec.r_closed_form,
            "default_params": rec.default_params,
            "domain": list(rec.domain) if rec.domain else None,
            "min_x": rec.min_x,
            "notes": rec.notes,
        })
    return out
