"""Parameter sweeps: spec parsing, evaluation, output and figure presets."""

import ast
import csv
import io
import itertools
import json
import math
import operator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import channels, qstate, steering
from .errors import DegenerateFilter, DomainError, NotPositive, ParseError, UnknownPreset

FAMILIES = ("werner", "generic_pure", "explicit")
FORMATS = ("csv", "json")
FILTER_ORDER = "accelerate_then_filter"
DEFAULT_POINTS = 101

HEADER = (
    "family", "r_a", "r_b", "alpha_a", "alpha_b", "p", "q", "c11", "c22", "c33",
    "N", "I_ab", "I_ba", "S_ab", "S_ba", "delta",
)

_CLOSED = "closed"
_OPEN = "open"
_DOMAINS = {
    "r_a": (0.0, channels.R_MAX, _CLOSED),
    "r_b": (0.0, channels.R_MAX, _CLOSED),
    "alpha": (0.0, 1.0, _OPEN),
    "alpha_a": (0.0, 1.0, _OPEN),
    "alpha_b": (0.0, 1.0, _OPEN),
    "p": (0.0, 1.0, _CLOSED),
    "q": (0.0, 1.0, _CLOSED),
}
for _i in range(1, 4):
    _DOMAINS[f"s{_i}"] = (-1.0, 1.0, _CLOSED)
    _DOMAINS[f"t{_i}"] = (-1.0, 1.0, _CLOSED)
    for _j in range(1, 4):
        _DOMAINS[f"c{_i}{_j}"] = (-1.0, 1.0, _CLOSED)
PARAMETERS = tuple(_DOMAINS)


def check_domain(name, value):
    if name not in _DOMAINS:
        raise DomainError(f"unknown parameter {name!r}")
    lo, hi, kind = _DOMAINS[name]
    if not math.isfinite(value):
        raise DomainError(f"{name}={value} is not finite")
    if kind == _OPEN:
        ok = lo < value < hi
    else:
        ok = lo - 1e-12 <= value <= hi + 1e-12
    if not ok:
        bounds = f"({lo:g}, {hi:g})" if kind == _OPEN else f"[{lo:g}, {hi:.6g}]"
        raise DomainError(f"{name}={value:g} outside {bounds}")


@dataclass(frozen=True)
class GridAxis:
    name: str
    start: float
    stop: float
    count: int = DEFAULT_POINTS

    def values(self):
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    family: str
    fixed: dict = field(default_factory=dict)
    grid: tuple = ()
    filter_order: str = FILTER_ORDER
    output: str = "csv"
    output_path: str = None
    name: str = None

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(self.grid))
        validate_spec(self)

    @property
    def n_points(self):
        return math.prod(ax.count for ax in self.grid)


def validate_spec(spec):
    if spec.family not in FAMILIES:
        raise DomainError(f"family must be one of {FAMILIES}, got {spec.family!r}")
    if spec.filter_order != FILTER_ORDER:
        raise DomainError(f"filter_order must be {FILTER_ORDER!r}")
    if spec.output not in FORMATS:
        raise DomainError(f"output must be one of {FORMATS}, got {spec.output!r}")
    names = [ax.name for ax in spec.grid]
    if len(set(names)) != len(names):
        raise DomainError(f"duplicate grid parameter in {names}")
    overlap = set(names) & set(spec.fixed)
    if overlap:
        raise DomainError(f"parameters both fixed and gridded: {sorted(overlap)}")
    for name, value in spec.fixed.items():
        check_domain(name, value)
    for ax in spec.grid:
        if ax.count < 1:
            raise DomainError(f"{ax.name}: point count must be >= 1, got {ax.count}")
        check_domain(ax.name, ax.start)
        check_domain(ax.name, ax.stop)

    given = set(names) | set(spec.fixed)
    if {"alpha", "alpha_a"} <= given or {"alpha", "alpha_b"} <= given:
        raise DomainError("alpha conflicts with alpha_a/alpha_b")
    if spec.family == "generic_pure":
        if len({"p", "q"} & given) != 1:
            raise DomainError("generic_pure needs exactly one of p or q")
    if spec.family == "werner":
        missing = {"c11", "c22", "c33"} - given
        if missing:
            raise DomainError(f"werner family missing {sorted(missing)}")
    allowed = {"r_a", "r_b", "alpha", "alpha_a", "alpha_b"} | _family_keys(spec.family)
    extra = given - allowed
    if extra:
        raise DomainError(f"parameters {sorted(extra)} do not apply to family {spec.family}")


def _family_keys(family):
    if family == "werner":
        return {"c11", "c22", "c33"}
    if family == "generic_pure":
        return {"p", "q"}
    return {n for n in PARAMETERS if n[0] in "stc"}


# ---------------------------------------------------------------- parsing

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.Div: operator.truediv, ast.Pow: operator.pow,
}
_NAMES = {"pi": math.pi, "e": math.e}


def _eval_number(text):
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Call) and getattr(node.func, "id", None) == "sqrt" and len(node.args) == 1:
            return math.sqrt(ev(node.args[0]))
        raise ValueError(text)

    try:
        return float(ev(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"not a number: {text!r}") from exc


def parse_spec(text):
    """Parse a sweep configuration document (see docs/config-format.md)."""
    base = None
    meta = {}
    fixed = {}
    grid = {}
    section = None
    lines = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("fixed", "grid"):
                raise ParseError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ParseError("empty key or value", lineno)
        lines[key] = lineno

        if section == "grid":
            parts = [v.strip() for v in value.split(",")]
            if len(parts) not in (1, 3):
                raise ParseError(f"grid entry {key!r} needs 'start, stop, count'", lineno)
            try:
                start = _eval_number(parts[0])
                stop = _eval_number(parts[1]) if len(parts) == 3 else start
                count = int(parts[2]) if len(parts) == 3 else 1
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            grid[key] = GridAxis(key, start, stop, count)
            fixed.pop(key, None)
        elif section is None and key in ("family", "output", "output_path", "filter_order", "name"):
            meta[key] = value
        elif section is None and key == "preset":
            if base is not None or fixed or grid:
                raise ParseError("preset must come before any parameter", lineno)
            try:
                base = figure_preset(value)
            except UnknownPreset as exc:
                raise ParseError(str(exc), lineno) from None
            fixed = dict(base.fixed)
            grid = {ax.name: ax for ax in base.grid}
        else:
            try:
                fixed[key] = _eval_number(value)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            grid.pop(key, None)

    if base is None and "family" not in meta:
        raise ParseError("missing 'family' (or 'preset')", None)

    for key in list(fixed) + list(grid):
        if key not in _DOMAINS:
            raise ParseError(f"unknown parameter {key!r}", lines.get(key))

    kwargs = dict(
        family=meta.get("family", base.family if base else None),
        fixed=fixed,
        grid=tuple(grid.values()),
        filter_order=meta.get("filter_order", FILTER_ORDER),
        output=meta.get("output", base.output if base else "csv"),
        output_path=meta.get("output_path"),
        name=meta.get("name", base.name if base else None),
    )
    try:
        return SweepSpec(**kwargs)
    except DomainError as exc:
        bad = next((k for k in lines if k in str(exc)), None)
        raise DomainError(f"line {lines[bad]}: {exc}" if bad else str(exc)) from None


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# ---------------------------------------------------------------- evaluation


@dataclass(frozen=True)
class SweepRow:
    family: str
    r_a: float
    r_b: float
    alpha_a: float
    alpha_b: float
    p: float = None
    q: float = None
    c11: float = None
    c22: float = None
    c33: float = None
    N: float = None
    I_ab: float = None
    I_ba: float = None
    S_ab: float = None
    S_ba: float = None
    delta: float = None
    degenerate: bool = False

    def as_dict(self):
        return {k: getattr(self, k) for k in HEADER}


def iter_points(spec):
    """Parameter dicts in row order (last grid axis varies fastest)."""
    names = [ax.name for ax in spec.grid]
    for combo in itertools.product(*(ax.values() for ax in spec.grid)):
        point = dict(spec.fixed)
        point.update(zip(names, (float(v) for v in combo)))
        yield point


def _resolve(point):
    point = dict(point)
    alpha = point.pop("alpha", 0.5)
    point.setdefault("alpha_a", alpha)
    point.setdefault("alpha_b", alpha)
    point.setdefault("r_a", 0.0)
    point.setdefault("r_b", 0.0)
    return point


def build_state(family, point):
    """Initial two-qubit state for one parameter point."""
    if family == "werner":
        return qstate.werner(qstate.WernerParams(point["c11"], point["c22"], point["c33"]))
    if family == "generic_pure":
        return qstate.generic_pure(_pure_params(point))
    s = [point.get(f"s{i}", 0.0) for i in range(1, 4)]
    t = [point.get(f"t{i}", 0.0) for i in range(1, 4)]
    c = [[point.get(f"c{i}{j}", 0.0) for j in range(1, 4)] for i in range(1, 4)]
    return qstate.from_bloch(qstate.BlochDecomposition(s, t, c))


def _pure_params(point):
    if "q" in point:
        return qstate.PureFamilyParams(min(1.0, point["q"]))
    return qstate.PureFamilyParams.from_p(min(1.0, point["p"]))


def evaluate_point(family, point, state=None):
    """Accelerate, filter and score one point; returns a SweepRow."""
    point = _resolve(point)
    if state is None:
        state = build_state(family, point)
    acc = channels.AccelerationParams(min(point["r_a"], channels.R_MAX), min(point["r_b"], channels.R_MAX))
    fp = channels.FilterParams(point["alpha_a"], point["alpha_b"])

    labels = dict(family=family, r_a=point["r_a"], r_b=point["r_b"],
                  alpha_a=point["alpha_a"], alpha_b=point["alpha_b"])
    if family == "generic_pure":
        pp = _pure_params(point)
        labels.update(p=pp.p, q=pp.q)
    else:
        labels.update(c11=point.get("c11", 0.0), c22=point.get("c22", 0.0), c33=point.get("c33", 0.0))

    accelerated = channels.unruh_apply(state, acc)
    try:
        filtered, n = channels.filter_apply(accelerated, fp)
    except DegenerateFilter:
        k = np.kron(channels.FilterParams.operator(fp.alpha_a), channels.FilterParams.operator(fp.alpha_b))
        n = float(np.trace(k @ np.asarray(accelerated) @ k.T).real)
        return SweepRow(N=n, degenerate=True, **labels)
    rep = steering.steerability_report(filtered)
    return SweepRow(N=n, I_ab=rep.I_ab, I_ba=rep.I_ba, S_ab=rep.S_ab,
                    S_ba=rep.S_ba, delta=rep.delta, **labels)


def _family_is_fixed(spec):
    gridded = {ax.name for ax in spec.grid}
    return not (gridded & _family_keys(spec.family))


def _evaluate_chunk(args):
    family, points, state = args
    out = []
    for point in points:
        try:
            out.append(evaluate_point(family, point, state))
        except NotPositive:
            # gridded family parameter produced an unphysical state
            p = _resolve(point)
            out.append(SweepRow(family=family, r_a=p["r_a"], r_b=p["r_b"],
                                alpha_a=p["alpha_a"], alpha_b=p["alpha_b"],
                                c11=p.get("c11"), c22=p.get("c22"), c33=p.get("c33"),
                                degenerate=True))
    return out


def run_sweep(spec, workers=1, chunk_size=512):
    """Evaluate every grid point; row order never depends on ``workers``."""
    state = None
    if _family_is_fixed(spec):
        state = build_state(spec.family, _resolve(dict(spec.fixed)))  # NotPositive aborts here

    points = list(iter_points(spec))
    chunks = [(spec.family, points[i:i + chunk_size], state)
              for i in range(0, len(points), chunk_size)]
    if workers <= 1 or len(chunks) == 1:
        results = [_evaluate_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_chunk, chunks))
    return [row for chunk in results for row in chunk]


# ---------------------------------------------------------------- output


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    return float(format(float(value), ".12g"))


def render(rows, fmt="csv"):
    if not rows:
        raise ValueError("no rows to emit")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for row in rows:
            writer.writerow([_fmt(v) for v in row.as_dict().values()])
        return buf.getvalue()
    if fmt == "json":
        data = [{k: _json_value(v) for k, v in row.as_dict().items()} for row in rows]
        return json.dumps(data, indent=1) + "\n"
    raise DomainError(f"format must be one of {FORMATS}, got {fmt!r}")


def emit(rows, fmt, path):
    """Write rows to ``path``; raises OSError on write failure."""
    text = render(rows, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def read_rows(path, fmt=None):
    """Load rows written by :func:`emit` (csv or json)."""
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt == "json":
            records = json.load(fh)
        else:
            records = [{k: (v if v != "" else None) for k, v in r.items()}
                       for r in csv.DictReader(fh)]
    rows = []
    for rec in records:
        vals = {k: (rec[k] if k == "family" or rec[k] is None else float(rec[k])) for k in HEADER}
        rows.append(SweepRow(degenerate=vals["I_ab"] is None, **vals))
    return rows


# ---------------------------------------------------------------- presets

_R = channels.R_MAX
_RR = (GridAxis("r_a", 0.0, _R), GridAxis("r_b", 0.0, _R))
_P = GridAxis("p", 0.0, 1.0)


def _presets():
    out = {}
    singlet = dict(c11=-1.0, c22=-1.0, c33=-1.0)
    wer = dict(c11=-0.8, c22=-0.8, c33=-0.8)
    for fig in ("fig1", "fig2"):
        for letter, c, alpha in zip("abcdef", [singlet] * 3 + [wer] * 3, (0.1, 0.4, 0.7) * 2):
            out[f"{fig}{letter}"] = SweepSpec("werner", dict(c, alpha=alpha), _RR)
        out[f"{fig}a-identity"] = SweepSpec("werner", dict(singlet, alpha=0.5), _RR)
        out[f"{fig}d-identity"] = SweepSpec("werner", dict(wer, alpha=0.5), _RR)
    for letter, (ra, rb) in zip("abc", ((0.0, 0.0), (0.5, 0.0), (0.5, 0.5))):
        out[f"fig3{letter}"] = SweepSpec("generic_pure", dict(r_a=ra, r_b=rb, alpha=0.5), (_P,))
    corners = (GridAxis("r_a", 0.0, 0.3, 2), GridAxis("r_b", 0.0, 0.3, 2), _P)
    for letter, alpha in zip("abc", (0.1, 0.4, 0.8)):
        out[f"fig4{letter}"] = SweepSpec("generic_pure", dict(alpha=alpha), corners)
    for letter, alpha in zip("abc", (0.1, 0.4, 0.7)):
        out[f"fig5{letter}"] = SweepSpec("generic_pure", dict(p=0.5, alpha=alpha), _RR)
    for letter, p in zip("abc", (0.0, 0.6, 0.9)):
        out[f"fig6{letter}"] = SweepSpec("generic_pure", dict(p=p, r_b=0.0, alpha=0.5),
                                         (GridAxis("r_a", 0.0, _R),))
    for letter, alpha in zip("def", (0.1, 0.4, 0.8)):
        out[f"fig6{letter}"] = SweepSpec("generic_pure", dict(r_b=0.0, alpha=alpha),
                                         (_P, GridAxis("r_a", 0.0, _R)))
    return {name: replace(spec, name=name) for name, spec in out.items()}


PRESETS = _presets()


def figure_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def steerable_area(rows, column="S_ab"):
    """Fraction of rows with a strictly positive steerability value."""
    vals = [getattr(r, column) for r in rows]
    return sum(1 for v in vals if v is not None and v > 0) / len(vals)
