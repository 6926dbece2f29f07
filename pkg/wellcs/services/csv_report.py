"""CSV tables behind the CLI verbs, rendered byte-for-byte reproducibly."""
import logging
import math
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from wellcs.core.config import settings
from wellcs.domain.entities import ObservableSeries, VerificationCheck
from wellcs.domain.value_objects import GCS, GeCS, SpaceGrid, ValidityThresholds, WellParams
from wellcs.services import approx, specfun
from wellcs.services.dynamics import chunked_map, density, wavefunction
from wellcs.services.equivalence import equivalence_report, map_parameters
from wellcs.services.states import build_state

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
UNAVAILABLE = "unavailable"

DENSITY_COLUMNS = ["x", "exact", "approx_prop1", "fourier_P0", "Pl", "Pr", "abs_err"]
WAVEFUNCTION_COLUMNS = ["x", "re_exact", "im_exact", "re_approx", "im_approx", "abs_err"]
EQUIVALENCE_COLUMNS = ["z0", "fidelity", "coeff_L1", "poisson_gap", "NG_exact", "NG_asymptotic", "NG_relerr", "warn"]
VERIFY_COLUMNS = ["check", "value", "tolerance", "passed"]

Table = Tuple[pd.DataFrame, Optional[Mapping[str, Union[float, str]]]]


def _format_value(value: Union[float, int, str]) -> str:
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def render_csv(
    frame: pd.DataFrame,
    summary: Optional[Mapping[str, Union[float, str]]] = None,
    version: str = settings.VERSION,
) -> str:
    """# version line, header and rows with 17 significant digits, optional trailing # summary line."""
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    lines = [f"# version={version}\n", body]
    if summary:
        lines.append("# " + ",".join(f"{key}={_format_value(value)}" for key, value in summary.items()) + "\n")
    return "".join(lines)


def _approximation_spec(state: Union[GCS, GeCS]) -> Optional[GCS]:
    """The Gaussian parameters the closed-form approximations run on; None when a GeCS has no Gaussian partner."""
    if isinstance(state, GCS):
        return state
    if state.z0 <= 1.0:
        logger.warning(
            "No Gaussian partner for this state, approximation columns left empty",
            extra={"z0": state.z0},
        )
        return None
    return map_parameters(state.z0, state.phi0)


def observables_table(series: ObservableSeries) -> Table:
    return series.to_frame(), None


def _empty(grid: SpaceGrid, dtype=float) -> np.ndarray:
    return np.full(grid.count, np.nan, dtype=dtype)


def density_table(
    state: Union[GCS, GeCS],
    params: WellParams,
    grid: SpaceGrid,
    t: float,
    rel_tail_tol: float = settings.REL_TAIL_TOL,
    thresholds: Optional[ValidityThresholds] = None,
    threads: int = settings.DEFAULT_THREADS,
) -> Table:
    v = build_state(state, rel_tail_tol)
    exact = density(v, grid, t, threads)

    spec = _approximation_spec(state)
    if spec is None:
        prop1 = p0 = pl = pr = _empty(grid)
        validity = UNAVAILABLE
    else:
        pkt = approx.packet(params, spec, t)
        prop1 = approx.approx_density(pkt, grid)
        p0 = approx.fourier_P0(spec, params, t, grid, threads=threads)
        pl = approx.fourier_Pl(spec, params, t, grid, threads)
        pr = approx.border_correction_right(pkt, spec, grid)
        validity = approx.check_validity(spec, params, t, thresholds).summary()

    frame = pd.DataFrame(
        {
            "x": grid.points,
            "exact": exact,
            "approx_prop1": prop1,
            "fourier_P0": p0,
            "Pl": pl,
            "Pr": pr,
            "abs_err": np.abs(exact - prop1),
        },
        columns=DENSITY_COLUMNS,
    )
    summary = {
        "L1": math.nan if spec is None else approx.l1_distance(exact, prop1, grid),
        "Linf": math.nan if spec is None else approx.linf_distance(exact, prop1),
        "validity": validity,
    }
    logger.info("Density table built", extra={"t": t, "points": grid.count, **summary})
    return frame, summary


def wavefunction_table(
    state: Union[GCS, GeCS],
    params: WellParams,
    grid: SpaceGrid,
    t: float,
    rel_tail_tol: float = settings.REL_TAIL_TOL,
    thresholds: Optional[ValidityThresholds] = None,
    threads: int = settings.DEFAULT_THREADS,
) -> Table:
    v = build_state(state, rel_tail_tol)
    exact = wavefunction(v, grid, t, threads)
    spec = _approximation_spec(state)
    if spec is None:
        approximate = _empty(grid, np.complex128)
        validity = UNAVAILABLE
    else:
        approximate = approx.approx_wavefunction(approx.packet(params, spec, t), grid)
        exact = approx.align_phase(approximate, exact, grid)
        validity = approx.check_validity(spec, params, t, thresholds).summary()

    frame = pd.DataFrame(
        {
            "x": grid.points,
            "re_exact": exact.real,
            "im_exact": exact.imag,
            "re_approx": approximate.real,
            "im_approx": approximate.imag,
            "abs_err": np.abs(exact - approximate),
        },
        columns=WAVEFUNCTION_COLUMNS,
    )
    summary = {
        "L2": math.nan if spec is None else approx.aligned_l2_distance(approximate, exact, grid),
        "validity": validity,
    }
    logger.info("Wavefunction table built", extra={"t": t, "points": grid.count, **summary})
    return frame, summary


def _equivalence_row(z0: float, phi0: float, rel_tail_tol: float) -> List[Union[float, int]]:
    report = equivalence_report(z0, phi0, rel_tail_tol)
    normalization = specfun.euler_maclaurin_N(z0)
    return [
        z0,
        report.fidelity,
        report.coeff_l1,
        report.poisson_gap,
        normalization.exact,
        normalization.asymptotic,
        normalization.relative_error,
        int(report.near_edge),
    ]


def equivalence_table(
    z0_values: Sequence[float],
    phi0: float = 0.0,
    rel_tail_tol: float = settings.REL_TAIL_TOL,
    threads: int = settings.DEFAULT_THREADS,
) -> Table:
    z0_values = [float(z0) for z0 in z0_values]

    def evaluate(part: slice) -> List[List[Union[float, int]]]:
        return [_equivalence_row(z0, phi0, rel_tail_tol) for z0 in z0_values[part]]

    rows = [row for chunk in chunked_map(evaluate, len(z0_values), 1, threads) for row in chunk]
    frame = pd.DataFrame(rows, columns=EQUIVALENCE_COLUMNS)
    frame["warn"] = frame["warn"].astype(np.int64)
    return frame, None


def verification_frame(results: Sequence[VerificationCheck]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "check": [row.check for row in results],
            "value": [row.value for row in results],
            "tolerance": [row.tolerance for row in results],
            "passed": [int(row.passed) for row in results],
        },
        columns=VERIFY_COLUMNS,
    )
