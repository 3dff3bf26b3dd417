"""JSON scenario files: schema validation and execution.

A scenario is one JSON object::

    {"kind": "reversal", "parameters": {...}, "output": "out.json", "seed": 7}

``output`` and ``seed`` are optional.  Validation (types, required and
unknown fields) happens completely before anything runs, so a schema error
never leaves a partial artifact behind.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import discounting, prospect, temporal, time_preference
from .membership import DEFAULT_PARAMS, MembershipParams

KINDS = (
    "time_preference",
    "reversal",
    "discount_curve",
    "fit",
    "prospect_curve",
    "lottery",
    "compare",
)


class SchemaError(ValueError):
    pass


_MISSING = object()
_NUMBER = (int, float)


class _Obj:
    """Reads one JSON object, remembering which keys were consumed."""

    def __init__(self, data: Any, path: str):
        if not isinstance(data, dict):
            raise SchemaError(f"{path}: expected an object")
        self.data, self.path, self.seen = data, path, set()

    def _key(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def raw(self, key: str, default: Any = _MISSING) -> Any:
        self.seen.add(key)
        if key not in self.data:
            if default is _MISSING:
                raise SchemaError(f"{self._key(key)}: required field missing")
            return default
        return self.data[key]

    def number(self, key: str, default: Any = _MISSING) -> float:
        v = self.raw(key, default)
        if v is default and default is not _MISSING:
            return v
        if isinstance(v, bool) or not isinstance(v, _NUMBER) or not math.isfinite(v):
            raise SchemaError(f"{self._key(key)}: expected a finite number, got {v!r}")
        return float(v)

    def integer(self, key: str, default: Any = _MISSING) -> int:
        v = self.raw(key, default)
        if v is default and default is not _MISSING:
            return v
        if isinstance(v, bool) or not isinstance(v, int):
            raise SchemaError(f"{self._key(key)}: expected an integer, got {v!r}")
        return v

    def string(self, key: str, default: Any = _MISSING, choices=None) -> str:
        v = self.raw(key, default)
        if v is default and default is not _MISSING:
            return v
        if not isinstance(v, str):
            raise SchemaError(f"{self._key(key)}: expected a string, got {v!r}")
        if choices is not None and v not in choices:
            raise SchemaError(f"{self._key(key)}: {v!r} is not one of {', '.join(choices)}")
        return v

    def boolean(self, key: str, default: Any = _MISSING) -> bool:
        v = self.raw(key, default)
        if not isinstance(v, bool):
            raise SchemaError(f"{self._key(key)}: expected true or false, got {v!r}")
        return v

    def obj(self, key: str, default: Any = _MISSING) -> "_Obj | None":
        v = self.raw(key, default)
        if v is default and default is not _MISSING:
            return v
        return _Obj(v, self._key(key))

    def objects(self, key: str, default: Any = _MISSING) -> list["_Obj"]:
        v = self.raw(key, default)
        if v is default and default is not _MISSING:
            return v
        if not isinstance(v, list) or not v:
            raise SchemaError(f"{self._key(key)}: expected a non-empty list")
        return [_Obj(item, f"{self._key(key)}[{i}]") for i, item in enumerate(v)]

    def done(self) -> None:
        unknown = sorted(set(self.data) - self.seen)
        if unknown:
            raise SchemaError(f"{self._key(unknown[0])}: unknown field")


def _membership(o: _Obj) -> MembershipParams | dict:
    m = o.obj("membership", None)
    if m is None:
        return {}
    spec = {"alpha": m.number("alpha", DEFAULT_PARAMS.alpha), "beta": m.number("beta", DEFAULT_PARAMS.beta)}
    m.done()
    return spec


def _parse_time_preference(o: _Obj) -> dict:
    out: dict[str, Any] = {"membership": _membership(o), "choices": [], "rates": []}
    for i, c in enumerate(o.objects("choices", []) or []):
        out["choices"].append({
            "label": c.string("label", f"choice{i}"),
            "m": c.number("m"), "M": c.number("M"), "W0": c.number("W0"),
            "s_m": c.number("s_m", 1.0), "s_M": c.number("s_M", 1.0), "n": c.number("n", 1.0),
        })
        c.done()
    for i, r in enumerate(o.objects("indifference_points", []) or []):
        out["rates"].append({
            "label": r.string("label", f"point{i}"),
            "now": r.number("now"), "later": r.number("later"), "years": r.number("years"),
        })
        r.done()
    if not out["choices"] and not out["rates"]:
        raise SchemaError(f"{o.path}: needs 'choices' and/or 'indifference_points'")
    return out


def _parse_reversal(o: _Obj) -> dict:
    return {
        "M1": o.number("M1"), "M2": o.number("M2"), "W0": o.number("W0"),
        "s1": o.number("s1"), "s2": o.number("s2"), "n_max": o.integer("n_max"),
        "membership": _membership(o),
    }


def _parse_discount_curve(o: _Obj) -> dict:
    curves = []
    for i, c in enumerate(o.objects("curves")):
        curves.append({"label": c.string("label", f"h{c.number('h'):g}_rho{c.number('rho'):g}"),
                       "h": c.number("h"), "rho": c.number("rho")})
        c.done()
    return {"curves": curves, "n_max": o.number("n_max", 100.0), "step": o.number("step", 1.0)}


def _parse_fit(o: _Obj) -> dict:
    raw_points = o.raw("points", None)
    csv_path = o.string("csv", None)
    if (raw_points is None) == (csv_path is None):
        raise SchemaError(f"{o.path}: give exactly one of 'points' or 'csv'")
    points = None
    if raw_points is not None:
        ok = isinstance(raw_points, list) and all(
            isinstance(p, list) and len(p) == 2
            and all(isinstance(v, _NUMBER) and not isinstance(v, bool) for v in p)
            for p in raw_points
        )
        if not ok:
            raise SchemaError(f"{o.path}.points: expected a list of [delay, discount] pairs")
        points = [tuple(map(float, p)) for p in raw_points]
    return {"points": points, "csv": csv_path, "unconstrained": o.boolean("unconstrained", False)}


def _parse_prospect_curve(o: _Obj) -> dict:
    return {
        "p": o.number("p", 0.5), "rho": o.number("rho", prospect.DEFAULT_RHO),
        "x_max": o.number("x_max", 1.0), "step": o.number("step", 0.01),
    }


def _parse_lottery(o: _Obj) -> dict:
    outcomes = []
    for c in o.objects("outcomes"):
        outcomes.append((c.number("amount"), c.number("probability")))
        c.done()
    return {
        "W0": o.number("W0"), "outcomes": outcomes, "rho": o.number("rho", prospect.DEFAULT_RHO),
        "simulate_periods": o.integer("simulate_periods", None), "membership": _membership(o),
    }


def _parse_hypothesis(h: _Obj) -> dict:
    spec = {
        "label": h.string("label"), "x": h.number("x"),
        "quantifier": h.string("quantifier", "F", choices=[q.value for q in temporal.Quantifier]),
    }
    s = h.raw("s", None)
    adverb = h.string("adverb", None)
    if s is not None and adverb is not None:
        raise SchemaError(f"{h.path}: give 's' or 'adverb', not both")
    if s is not None:
        spec["s"] = h.number("s")
    elif adverb is not None:
        spec["adverb"] = adverb
    h.done()
    return spec


def _parse_compare(o: _Obj) -> dict:
    return {
        "a": _parse_hypothesis(o.obj("a")), "b": _parse_hypothesis(o.obj("b")),
        "mode": o.string("mode", "both", choices=["meiosis", "hyperbole", "both"]),
        "membership": _membership(o),
    }


_PARSERS: dict[str, Callable[[_Obj], dict]] = {
    "time_preference": _parse_time_preference,
    "reversal": _parse_reversal,
    "discount_curve": _parse_discount_curve,
    "fit": _parse_fit,
    "prospect_curve": _parse_prospect_curve,
    "lottery": _parse_lottery,
    "compare": _parse_compare,
}


@dataclass
class Scenario:
    kind: str
    parameters: dict
    output: str | None = None
    seed: int = 0
    base_dir: Path = field(default_factory=Path)


def parse_scenario(data: Any, base_dir: Path | None = None) -> Scenario:
    top = _Obj(data, "")
    kind = top.string("kind", choices=KINDS)
    params = top.obj("parameters")
    parsed = _PARSERS[kind](params)
    params.done()
    output = top.string("output", None)
    seed = top.integer("seed", 0)
    if seed < 0:
        raise SchemaError("seed: must be non-negative")
    top.done()
    return Scenario(kind, parsed, output, seed, base_dir or Path.cwd())


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_scenario(data, path.parent)


# --- execution -------------------------------------------------------------


@dataclass
class Artifact:
    """Result of a run: either a JSON document or CSV text."""

    fmt: str  # "json" or "csv"
    content: Any
    summary: str = ""

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.content, indent=2) + "\n"
        return self.content


def fmt6(v: float) -> str:
    return f"{v:.6g}"


def csv_text(header: list[str], rows: list[list], comments: list[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt6(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _params(spec: dict) -> MembershipParams:
    return MembershipParams(**spec) if spec else DEFAULT_PARAMS


def _run_time_preference(p: dict, seed: int) -> Artifact:
    params = _params(p["membership"])
    choices = []
    for c in p["choices"]:
        choice = time_preference.IntertemporalChoice(
            m=c["m"], M=c["M"], W0=c["W0"], s_m=c["s_m"], s_M=c["s_M"], n=c["n"]
        )
        pref = time_preference.prefer_delayed(choice, params)
        entry = {
            "label": c["label"],
            "decision": pref.decision.value,
            "later_factor": pref.later_factor,
            "sooner_factor": pref.sooner_factor,
        }
        if choice.s_m > 0 and choice.s_M > 0:
            implied = time_preference.implied_discount(choice)
            entry.update(kappa=time_preference.arbitrage_kappa(choice), h=implied.h, rho=implied.rho)
        choices.append(entry)
    rates = []
    for r in p["rates"]:
        rate = discounting.annualized_rate(r["now"], r["later"], r["years"])
        rates.append({**r, "rate": rate, "percent": round(100 * rate, 2)})
    doc: dict[str, Any] = {"kind": "time_preference"}
    if choices:
        doc["choices"] = choices
    if rates:
        values = [r["rate"] for r in rates]
        doc["rates"] = rates
        doc["monotone_decreasing"] = all(a > b for a, b in zip(values, values[1:]))
    summary = "; ".join(
        [f"{c['label']}: {c['decision']}" for c in choices]
        + [f"{r['label']}: {r['percent']:.2f}%" for r in rates]
    )
    return Artifact("json", doc, summary)


def _run_reversal(p: dict, seed: int) -> Artifact:
    sched = time_preference.reversal_schedule(
        p["M1"], p["M2"], p["W0"], p["s1"], p["s2"], p["n_max"], _params(p["membership"])
    )
    doc = {
        "kind": "reversal",
        "schedule": [
            {"n": n, "preferred": w, "factor_M1": f1, "factor_M2": f2}
            for n, (w, (f1, f2)) in enumerate(zip(sched.preferred, sched.factors), start=1)
        ],
        "reversal_n": sched.reversal_n,
    }
    summary = f"reversal at n={sched.reversal_n}" if sched.reversal_n else "no reversal"
    return Artifact("json", doc, summary)


def _grid(start_k: int, stop_k: int, step: float) -> list[float]:
    return [round(k * step, 12) for k in range(start_k, stop_k + 1)]


def _run_discount_curve(p: dict, seed: int) -> Artifact:
    if not (p["step"] > 0 and p["n_max"] >= 0):
        raise discounting.DomainError("need step > 0 and n_max >= 0")
    ns = _grid(0, int(math.floor(p["n_max"] / p["step"] + 1e-9)), p["step"])
    cols = [discounting.DiscountParams(c["h"], c["rho"]) for c in p["curves"]]
    rows = [[float(n)] + [discounting.discount(c, n) for c in cols] for n in ns]
    header = ["n"] + [c["label"] for c in p["curves"]]
    return Artifact("csv", csv_text(header, rows), f"{len(rows)} rows x {len(cols)} curves")


def _run_fit(p: dict, seed: int, base_dir: Path) -> Artifact:
    if p["points"] is not None:
        points = p["points"]
    else:
        points = discounting.load_points_csv(base_dir / p["csv"])
    res = discounting.fit_discount(points, unconstrained=p["unconstrained"])
    doc = {
        "kind": "fit",
        "h": res.h, "rho": res.rho, "residual": res.residual,
        "converged": res.converged, "evaluations": res.evaluations,
        "points": len(points),
    }
    flag = "" if res.converged else " (NOT converged, best so far)"
    return Artifact("json", doc, f"h={res.h:.6g} rho={res.rho:.6g} sse={res.residual:.3g}{flag}")


def s_curve_rows(params: prospect.SCurveParams, x_max: float, step: float) -> list[list]:
    if not (step > 0 and x_max >= 0):
        raise prospect.DomainError("need step > 0 and x_max >= 0")
    k_lo = math.floor(params.loss_floor / step + 1e-9) + 1
    k_hi = math.floor(x_max / step + 1e-9)
    crossover = prospect.risk_crossover(params)
    rows = []
    for x in _grid(k_lo, k_hi, step):
        if x > 0:
            region = "risk_aversion"
        elif x == 0:
            region = "origin"
        elif crossover is not None and x > crossover:
            region = "risk_seeking"
        else:
            region = "ruin_aversion"
        rows.append([x, prospect.s_curve(params, x), region])
    return rows


def _run_prospect_curve(p: dict, seed: int) -> Artifact:
    params = prospect.SCurveParams(p["p"], p["rho"])
    crossover = prospect.risk_crossover(params)
    note = f"risk_crossover={fmt6(crossover)}" if crossover is not None else "risk_crossover=none"
    rows = s_curve_rows(params, p["x_max"], p["step"])
    text = csv_text(["x", "s_curve", "region"], rows, [f"p={fmt6(params.p)} rho={fmt6(params.rho)}", note])
    return Artifact("csv", text, note)


def _run_lottery(p: dict, seed: int) -> Artifact:
    lot = prospect.Lottery(tuple(p["outcomes"]), p["W0"])
    params = _params(p["membership"])
    changes = lot.changes
    doc: dict[str, Any] = {
        "kind": "lottery",
        "outcomes": [
            {"amount": a, "probability": q, "change": x,
             "restore_change": prospect.restore_change(x) if x != 0 else 0.0}
            for (a, q), (x, _) in zip(lot.outcomes, changes)
        ],
        "next_form": lot.next_form,
        "average_change": lot.growth_factor() - 1.0,
    }
    summary = []
    if len(changes) == 1:
        (x, q), = changes
        choice = prospect.judge_lottery(lot, p["rho"], params)
        if x >= 0:
            certain, uncertain = q * x, prospect.meiotic_value(q, x) if q > 0 else 0.0
        else:
            sc = prospect.SCurveParams(q, p["rho"])
            certain, uncertain = prospect.hyperbolic_loss_value(sc, x), x
            cross = prospect.risk_crossover(sc)
            doc["risk_crossover"] = cross
        doc["judgment"] = {"choice": choice.value, "certain_change": certain, "uncertain_change": uncertain}
        summary.append(f"prefers {choice.value} option")
    elif len(changes) == 2 and changes[0][0] >= 0 >= changes[1][0]:
        (x1, q1), (x2, q2) = changes
        dis = prospect.disjunction_change(x1, q1, x2, q2)
        doc["disjunction"] = {"change": dis.change, "next_form": dis.next_form, "fair": dis.change > 0}
        summary.append("fair" if dis.change > 0 else "unfair")
    if p["simulate_periods"] is not None:
        sim = temporal.simulate_outcomes(changes, p["simulate_periods"], seed)
        doc["simulation"] = {"periods": p["simulate_periods"], "seed": seed, "time_average_factor": sim}
        summary.append(f"simulated factor {sim:.6g}")
    return Artifact("json", doc, "; ".join(summary))


def _hypothesis(spec: dict) -> temporal.Hypothesis:
    s = spec.get("s")
    if s is None:
        s = temporal.sense_from_adverb(spec["adverb"]) if "adverb" in spec else 1.0
    return temporal.Hypothesis(spec["label"], spec["x"], s, temporal.Quantifier(spec["quantifier"]))


def _run_compare(p: dict, seed: int) -> Artifact:
    a, b = _hypothesis(p["a"]), _hypothesis(p["b"])
    params = _params(p["membership"])
    modes = ["meiosis", "hyperbole"] if p["mode"] == "both" else [p["mode"]]
    doc: dict[str, Any] = {"kind": "compare", "results": []}
    for mode in modes:
        res = temporal.compare_hypotheses(a, b, params, temporal.Mode(mode))
        doc["results"].append({
            "mode": mode, "winner": res.winner, "sense": res.sense,
            "changes": {a.label: res.changes[0], b.label: res.changes[1]},
        })
    winners = {r["winner"] for r in doc["results"]}
    doc["modes_agree"] = len(winners) == 1
    return Artifact("json", doc, "winner: " + "/".join(sorted(winners)))


def run_scenario(sc: Scenario) -> Artifact:
    p, seed = sc.parameters, sc.seed
    if sc.kind == "fit":
        return _run_fit(p, seed, sc.base_dir)
    runner = {
        "time_preference": _run_time_preference,
        "reversal": _run_reversal,
        "discount_curve": _run_discount_curve,
        "prospect_curve": _run_prospect_curve,
        "lottery": _run_lottery,
        "compare": _run_compare,
    }[sc.kind]
    return runner(p, seed)
