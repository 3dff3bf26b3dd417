"""Reference reproductions: published rates and figure curves with PASS/FAIL checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import discounting, prospect
from .scenario import csv_text, fmt6, s_curve_rows

TABLE_IDS = (
    "thaler-magnitude",
    "thaler-time",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "subadditivity-demo",
)


class UnknownTableError(KeyError):
    def __str__(self):
        return f"unknown table id {self.args[0]!r}; valid ids: {', '.join(TABLE_IDS)}"


@dataclass
class Check:
    quantity: str
    expected: float | str
    computed: float | str
    tolerance: float | None
    status: str  # PASS, FAIL or NOTE
    note: str = ""

    def row(self) -> list:
        tol = "" if self.tolerance is None else fmt6(self.tolerance)
        return [self.quantity, self.expected, self.computed, tol, self.status, self.note]


@dataclass
class Reproduction:
    table_id: str
    checks: list[Check]
    curve: str | None = None  # CSV text for figure ids

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    def checks_csv(self) -> str:
        header = ["quantity", "expected", "computed", "tolerance", "status", "note"]
        return csv_text(header, [c.row() for c in self.checks])


def _near(quantity, expected, computed, tol, note="") -> Check:
    ok = abs(computed - expected) <= tol
    return Check(quantity, expected, computed, tol, "PASS" if ok else "FAIL", note)


def _holds(quantity, condition: bool, note="") -> Check:
    return Check(quantity, "true", str(bool(condition)).lower(), None, "PASS" if condition else "FAIL", note)


def _thaler_magnitude(tol):
    tol = 1.0 if tol is None else tol  # percentage points
    rows = [("$15 -> $30, 3 months", 15, 30, 277.0),
            ("$250 -> $300, 3 months", 250, 300, 73.0),
            ("$3000 -> $3500, 3 months", 3000, 3500, 62.0)]
    checks, rates = [], []
    for label, m, M, pct in rows:
        r = 100 * discounting.annualized_rate(m, M, 0.25)
        rates.append(r)
        checks.append(_near(f"annual rate % ({label})", pct, r, tol))
    checks.append(_holds("rate decreases with magnitude", rates[0] > rates[1] > rates[2]))
    return checks, None


def _thaler_time(tol):
    tol = 1.0 if tol is None else tol
    month = 100 * discounting.annualized_rate(250, 300, 1 / 12)
    year = 100 * discounting.annualized_rate(250, 400, 1.0)
    decade = 100 * discounting.annualized_rate(250, 1000, 10.0)
    mismatch = "stated value is not ln(M/m)/t of the stated amounts; recomputed shown"
    checks = [
        _near("annual rate % ($250 -> $300, 1 month)", 219.0, month, tol),
        Check("annual rate % ($250 -> $400, 1 year)", 120.0, year, None, "NOTE", mismatch),
        Check("annual rate % ($250 -> $1000, 10 years)", 19.0, decade, None, "NOTE", mismatch),
        _holds("rate decreases with delay (recomputed)", month > year > decade),
    ]
    return checks, None


FIG3_CURVES = (
    ("exponential rho=0.005", 0.0, 0.005),
    ("quasi-hyperbolic h=-3 rho=0.7", -3.0, 0.7),
    ("hyperbolic h=-3 rho=0.0175", -3.0, 0.0175),
    ("hyperbolic h=-5 rho=0.05", -5.0, 0.05),
)


def _fig3(tol):
    ns = np.arange(0, 121)
    params = [discounting.DiscountParams(h, r) for _, h, r in FIG3_CURVES]
    cols = [discounting.discount(p, ns) for p in params]
    rows = [[float(n)] + [float(c[i]) for c in cols] for i, n in enumerate(ns)]
    curve = csv_text(["n"] + [name for name, _, _ in FIG3_CURVES], rows)
    t = 1e-4 if tol is None else tol
    checks = [
        _near("D(12) at h=-3 rho=0.0175", 0.8497, float(cols[2][12]), t),
        _near("D(100) exponential rho=0.005", 0.6065, float(cols[0][100]), t),
        _holds("D(0) = 1 on every curve", all(c[0] == 1.0 for c in cols)),
        _holds("every curve strictly decreasing", all(np.all(np.diff(c) < 0) for c in cols)),
    ]
    return checks, curve


def _fig4(tol):
    xs = np.round(np.arange(0, 201) * 0.01, 12)
    m_half = [prospect.meiotic_value(0.5, x) for x in xs]
    m_tenth = [prospect.meiotic_value(0.1, x) for x in xs]
    rows = [[float(x), a, float(x) / 2, b, float(x) / 10] for x, a, b in zip(xs, m_half, m_tenth)]
    curve = csv_text(["x", "meiotic_p0.5", "tangent_x/2", "meiotic_p0.1", "tangent_x/10"], rows)
    t = 1e-6 if tol is None else tol
    checks = [
        _near("M+_0.5(1) = sqrt(2) - 1", 0.414214, prospect.meiotic_value(0.5, 1.0), t),
        _holds("x/2 above M+_0.5 on [0, 2]", all(x / 2 >= m for x, m in zip(xs, m_half))),
        _holds("x/10 above M+_0.1 on [0, 2]", all(x / 10 >= m for x, m in zip(xs, m_tenth))),
    ]
    return checks, curve


def _fig5(tol):
    params = prospect.SCurveParams(0.5, 1.2)
    cross = prospect.risk_crossover(params)
    rows = s_curve_rows(params, 1.0, 0.01)
    curve = csv_text(["x", "s_curve", "region"], rows, ["p=0.5 rho=1.2", f"risk_crossover={fmt6(cross)}"])
    t = 0.01 if tol is None else tol
    closed = prospect.crossover_half(1.2)
    checks = [
        _near("risk crossover (figure reads -0.55)", -0.55, cross, t),
        _near("bisection vs -4(rho-1)/rho^2", closed, cross, 1e-9),
        _holds("below x on the risk-seeking side", all(r[1] < r[0] for r in rows if cross < r[0] < 0)),
        _holds("above x on the ruin-aversion side", all(r[1] > r[0] for r in rows if r[0] < cross)),
    ]
    return checks, curve


def _fig6(tol):
    # rho = 1: exaggerated sure losses hug the line x near zero and never cross it
    xs = np.round(np.arange(-99, 1) * 0.01, 12)
    fams = [prospect.SCurveParams(0.5, 1.0), prospect.SCurveParams(0.1, 1.0)]
    vals = [[prospect.hyperbolic_loss_value(f, float(x)) for x in xs] for f in fams]
    rows = [[float(x), a, b, float(x)] for x, a, b in zip(xs, *vals)]
    curve = csv_text(["x", "hyperbolic_p0.5", "hyperbolic_p0.1", "identity"], rows)
    near_zero = max(abs(v - x) for col in vals for v, x in zip(col, xs) if x >= -0.1)
    t = 0.005 if tol is None else tol
    checks = [
        _holds("curves never below x (rho = 1)", all(v >= x for col in vals for v, x in zip(col, xs))),
        _near("max gap to x on [-0.1, 0]", 0.0, near_zero, t, "low distinguishability of small losses"),
        _holds("no interior crossover at rho = 1", all(prospect.risk_crossover(f) is None for f in fams)),
    ]
    return checks, curve


def _subadditivity(tol):
    t = 1e-10 if tol is None else tol
    p = discounting.DiscountParams(-1.0, 1.0)
    divided, undivided = discounting.subadditive_combine(p, 1.0, 1.0)
    ident = discounting.product_identity(-1.0, 1.0, 1.0)
    q = discounting.DiscountParams(-3.0, 0.0175)
    avg = [discounting.average_rate(q, n) for n in (1, 12, 120)]
    checks = [
        _near("divided D(1)D(1), h=-1 rho=1", 0.25, divided, t),
        _near("undivided D(2), h=-1 rho=1", 1 / 3, undivided, t),
        _near("product identity gexp(h,-x-y+hxy)", divided, ident, t),
        _holds("divided < undivided", divided < undivided),
        _holds("average rate falls with delay (h=-3)", avg[0] > avg[1] > avg[2],
               "rates at n=1,12,120: " + " ".join(fmt6(a) for a in avg)),
    ]
    return checks, None


_TABLES = {
    "thaler-magnitude": _thaler_magnitude,
    "thaler-time": _thaler_time,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "subadditivity-demo": _subadditivity,
}


def reproduce(table_id: str, tolerance: float | None = None) -> Reproduction:
    """Run one reproduction; ``tolerance`` overrides every stated threshold."""
    try:
        fn = _TABLES[table_id]
    except KeyError:
        raise UnknownTableError(table_id) from None
    checks, curve = fn(tolerance)
    return Reproduction(table_id, checks, curve)

