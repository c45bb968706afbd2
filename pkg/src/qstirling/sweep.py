"""Alpha sweeps over a Stirling cycle and their CSV/JSON serialisation."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .cycle import StirlingCycleSpec, oscillator_cycle, run_stirling, well_cycle
from .errors import QStirlingError, ValidationError
from .params import PhysicalParams, UnitSystem, frequency_to_si, length_to_natural
from .spectra import Corrections
from .statmech import TruncationPolicy, partition_sum

log = logging.getLogger(__name__)

PAPER_HALF_WIDTH_SI = 5e-9


class SweepError(QStirlingError):
    """Every point of a sweep failed."""


@dataclass(frozen=True)
class SweepSpec:
    """An alpha scan of one cycle configuration.

    ``L`` is the half width (the full well is ``2L``); ``omega``/``omega_prime``
    are the A/D and B/C frequencies.  Geometry left as ``None`` takes the
    paper values (5 nm, 4, 3) expressed in the chosen unit system.
    ``anchor`` prepends an alpha = 0 row to log-scaled sweeps.
    """

    medium: str = "oscillator"
    preset: str = "ncgup-full"
    alpha_min: float = 1e30
    alpha_max: float = 1e41
    steps: int = 100
    scale: str = "log"
    T_hot: float = 2.0
    T_cold: float = 1.0
    L: float | None = None
    omega: float | None = None
    omega_prime: float | None = None
    units: UnitSystem = UnitSystem.NATURAL
    output: str = "csv"
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    mass: float | None = None
    zeta: float | None = None
    use_physical_length: bool = True
    anchor: bool = True
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "units", UnitSystem.parse(self.units))
        if self.medium not in ("well", "oscillator"):
            raise ValidationError(f"medium must be 'well' or 'oscillator', not {self.medium!r}")
        Corrections.preset(self.preset)
        if self.scale not in ("linear", "log"):
            raise ValidationError(f"scale must be 'linear' or 'log', not {self.scale!r}")
        if self.output not in ("csv", "json"):
            raise ValidationError(f"output must be 'csv' or 'json', not {self.output!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValidationError("steps must be an integer >= 2")
        if not self.alpha_min <= self.alpha_max:
            raise ValidationError("alpha_min must not exceed alpha_max")
        if self.alpha_min < 0:
            raise ValidationError("alpha must be non-negative")
        if self.scale == "log" and self.alpha_min <= 0:
            raise ValidationError("log scale requires alpha_min > 0")
        if self.jobs < 1:
            raise ValidationError("jobs must be >= 1")

    def alphas(self) -> np.ndarray:
        if self.scale == "log":
            a = np.logspace(math.log10(self.alpha_min), math.log10(self.alpha_max),
                            int(self.steps))
            # pin the end points exactly
            a[0], a[-1] = self.alpha_min, self.alpha_max
            if self.anchor:
                a = np.concatenate(([0.0], a))
            return a
        return np.linspace(self.alpha_min, self.alpha_max, int(self.steps))

    def params(self, alpha: float = 0.0) -> PhysicalParams:
        if self.units is UnitSystem.SI:
            kw = {} if self.mass is None else {"m": self.mass}
            return PhysicalParams.si(alpha=alpha, zeta=self.zeta, **kw)
        return PhysicalParams.natural(m=self.mass, alpha=alpha, zeta=self.zeta)

    def cycle(self, alpha: float = 0.0) -> StirlingCycleSpec:
        p = self.params(alpha)
        flags = Corrections.preset(self.preset)
        if self.medium == "well":
            L = self.L
            if L is None:
                L = (PAPER_HALF_WIDTH_SI if self.units is UnitSystem.SI
                     else length_to_natural(PAPER_HALF_WIDTH_SI))
            return well_cycle(p, L, self.T_hot, self.T_cold, flags,
                              use_physical_length=self.use_physical_length,
                              policy=self.policy)
        w, wp = self.omega, self.omega_prime
        if w is None:
            w = 4.0 if self.units is UnitSystem.NATURAL else frequency_to_si(4.0)
        if wp is None:
            wp = 3.0 if self.units is UnitSystem.NATURAL else frequency_to_si(3.0)
        return oscillator_cycle(p, w, wp, self.T_hot, self.T_cold, flags,
                                policy=self.policy)


@dataclass
class SweepRow:
    alpha: float
    eta: float | None = None
    W: float | None = None
    Q_AB: float | None = None
    Q_BC: float | None = None
    Q_CD: float | None = None
    Q_DA: float | None = None
    eta_carnot: float | None = None
    turnover_A: bool = False
    turnover_B: bool = False
    turnover_C: bool = False
    turnover_D: bool = False
    warnings: str = ""

    @property
    def failed(self) -> bool:
        return self.W is None


COLUMNS = tuple(f.name for f in fields(SweepRow))
_FLOAT_COLS = ("alpha", "eta", "W", "Q_AB", "Q_BC", "Q_CD", "Q_DA", "eta_carnot")
_BOOL_COLS = ("turnover_A", "turnover_B", "turnover_C", "turnover_D")


def evaluate_point(spec: SweepSpec, alpha: float) -> SweepRow:
    """One sweep row; errors are captured into ``warnings``."""
    alpha = float(alpha)
    notes = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            res = run_stirling(spec.cycle(alpha))
        notes.extend(str(w.message) for w in caught)
    except QStirlingError as exc:
        return SweepRow(alpha=alpha, warnings=f"error: {exc}")
    if res.note:
        notes.append(res.note)
    s = res.states
    for name, st in s.items():
        if st.momentum_ratio is not None and st.momentum_ratio > 0.1:
            notes.append(f"stroke {name}: p/(mc)={st.momentum_ratio:.3g} at cutoff")
    return SweepRow(alpha, res.eta, res.W, res.Q_AB, res.Q_BC, res.Q_CD, res.Q_DA,
                    res.eta_carnot, s["A"].turnover_hit, s["B"].turnover_hit,
                    s["C"].turnover_hit, s["D"].turnover_hit, "; ".join(notes))


def _point(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec):
    """Yield one :class:`SweepRow` per alpha, in ascending alpha.

    Raises :class:`SweepError` after the last row if every point failed.
    """
    alphas = spec.alphas()
    any_ok = False
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = pool.map(_point, [(spec, a) for a in alphas])
            for row in rows:
                any_ok |= not row.failed
                yield row
    else:
        for a in alphas:
            row = evaluate_point(spec, a)
            if row.failed:
                log.warning("alpha=%g: %s", a, row.warnings)
            any_ok |= not row.failed
            yield row
    if not any_ok:
        raise SweepError("every sweep point failed")


def format_number(x) -> str:
    """Round-trip float text: plain decimals inside [1e-3, 1e6), scientific outside."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0.0 or not math.isfinite(x):
        return repr(x)
    if 1e-3 <= abs(x) < 1e6:
        return repr(x)
    return f"{x:.16e}"


def emit_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        d = asdict(row)
        w.writerow([d[c] if c == "warnings" else format_number(d[c]) for c in COLUMNS])
    return buf.getvalue()


def emit_json(rows) -> str:
    out = []
    for row in rows:
        d = asdict(row)
        for c in _FLOAT_COLS:
            if d[c] is not None and not math.isfinite(d[c]):
                d[c] = None
        out.append(d)
    return json.dumps(out, indent=1) + "\n" if out else "[]\n"


def parse_csv(text: str) -> list[SweepRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        kw = {}
        for c in COLUMNS:
            v = rec[c]
            if c in _FLOAT_COLS:
                kw[c] = float(v) if v != "" else None
            elif c in _BOOL_COLS:
                kw[c] = v == "1"
            else:
                kw[c] = v
        rows.append(SweepRow(**kw))
    return rows


def parse_json(text: str) -> list[SweepRow]:
    return [SweepRow(**d) for d in json.loads(text)]


def levels_table(model, n_max: int, T: float | None = None,
                 policy: TruncationPolicy = TruncationPolicy()) -> list[dict]:
    """Level listing with the cumulative Boltzmann weight fraction at ``T``."""
    ns = np.arange(model.origin, n_max + 1)
    es = model.energies(ns)
    ds = model.degeneracies(ns)
    cum = [None] * len(ns)
    if T is not None:
        kT = model.params.k_B * T
        w = ds * np.exp(-(es - es[0]) / kT)
        try:
            r = partition_sum(model, T, policy)
            z = math.exp(r.lnZ_shifted) * math.exp(-(es[0] - r.ground_energy) / kT)
        except QStirlingError as exc:
            log.warning("normalising over the listed levels only: %s", exc)
            z = math.fsum(w)
        cum = list(np.cumsum(w) / z)
    return [{"n": int(n), "energy": float(e), "degeneracy": int(d),
             "cumulative_weight": None if c is None else float(c)}
            for n, e, d, c in zip(ns, es, ds, cum)]
