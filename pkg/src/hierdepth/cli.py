"""Command-line front end.

Every subcommand prints a JSON report to stdout (or a flat text rendering
with --format text) and reserves stderr for diagnostics. Exit status 0
covers every successfully computed answer, including NoFiltration and
Infeasible, which are answers rather than failures; malformed input exits
1 with a one-line message naming the offending field, and domain-level
refusals exit 2.

Identical inputs produce byte-identical reports: keys are sorted, the
rendering is fixed, and the seed only matters to randomized callers that
embed it in their own configs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import agcode, depth, hecke
from .bundle import SplitBundle, parse_bundle
from .errors import HierdepthError
from .picard import Lattice, parse_class
from .agcode import (
    DEFAULT_BUDGET,
    INFEASIBLE,
    VanishingCondition,
    all_rational_points,
    build_code,
    min_distance,
    mmp_compare,
    vanishing_basis,
    zero_block_contract,
)

DEFAULT_SEED = 0


class CliInputError(Exception):
    """Malformed input; the first argument names the offending field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


@dataclass
class RunConfig:
    """Parsed invocation: subcommand, its options, format and seed."""

    subcommand: str
    options: dict = dc_field(default_factory=dict)
    fmt: str = "json"
    seed: int = DEFAULT_SEED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError("arguments", message)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _int_list(text: str, field_name: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise CliInputError(field_name, f"expected comma-separated integers, got {text!r}")


def _point(text: str, field_name: str) -> tuple[int, ...]:
    try:
        coords = tuple(int(t) for t in text.strip().split(":"))
    except ValueError:
        raise CliInputError(field_name, f"expected colon-separated integers, got {text!r}")
    if len(coords) not in (2, 3):
        raise CliInputError(field_name, f"points need 2 or 3 coordinates, got {text!r}")
    return coords


def _depth_value(v):
    return None if v is depth.NO_FILTRATION else v


def _cmd_depth(opts, seed):
    if opts.get("curve"):
        if opts.get("bundle") or opts.get("surface"):
            raise CliInputError("curve", "choose either --curve or --surface")
        degrees = _int_list(opts["degrees"] or "", "degrees")
        if not degrees:
            raise CliInputError("degrees", "need at least one degree")
        try:
            lam = int(opts["lambda0"])
        except (TypeError, ValueError):
            raise CliInputError("lambda0", "expected an integer degree")
        value = depth.curve_split_depth(degrees, lam)
        curve = Lattice.curve()
        d = sum(degrees)
        v = _depth_value(value)
        return {
            "subcommand": "depth",
            "lattice": "curve",
            "det": curve.divisor(d).notation(),
            "lambda0": curve.divisor(lam).notation(),
            "bound": depth.rank_one_bound(d, lam),
            "lower": v,
            "upper": v,
            "value": v,
            "status": "ok" if v is not None else "no-filtration",
            "seed": seed,
        }
    surface = opts.get("surface")
    if surface not in ("p2", "p1xp1"):
        raise CliInputError("surface", "expected p2 or p1xp1 (or use --curve)")
    lattice = Lattice.p2() if surface == "p2" else Lattice.p1xp1()
    try:
        b = parse_bundle(opts["bundle"] or "", lattice)
    except ValueError as e:
        raise CliInputError("bundle", str(e))
    try:
        lam = parse_class(opts["lambda0"] or "", lattice)
    except ValueError as e:
        raise CliInputError("lambda0", str(e))
    lower, upper = depth.surface_split_depth(b, lam)
    lower, upper = _depth_value(lower), _depth_value(upper)
    det = b.det()
    if lattice.rank == 1:
        bound = depth.rank_one_bound(det.coeffs[0], lam.coeffs[0])
    else:
        bound = upper
    return {
        "subcommand": "depth",
        "lattice": surface,
        "det": det.notation(),
        "lambda0": lam.notation(),
        "bound": bound,
        "lower": lower,
        "upper": upper,
        "value": lower if lower == upper else None,
        "status": "ok" if upper is not None else "no-filtration",
        "seed": seed,
    }


def _cmd_mmp_depth(opts, seed):
    try:
        hmin = int(opts["hmin"])
    except (TypeError, ValueError):
        raise CliInputError("hmin", "expected an integer")
    alpha = _int_list(opts["alpha"] or "", "alpha")
    beta = _int_list(opts["beta"] or "", "beta")
    value = depth.mmp_exact_depth(hmin, alpha, beta)
    return {
        "subcommand": "mmp-depth",
        "hmin": hmin,
        "alpha": alpha,
        "beta": beta,
        "value": value,
        "status": "ok",
        "seed": seed,
    }


def _cmd_filtration(opts, seed):
    try:
        p = int(opts["field"])
    except (TypeError, ValueError):
        raise CliInputError("field", "expected a prime integer")
    degrees = _int_list(opts["degrees"] or "", "degrees")
    if not degrees:
        raise CliInputError("degrees", "need at least one degree")
    try:
        lam = int(opts["lambda0"])
    except (TypeError, ValueError):
        raise CliInputError("lambda0", "expected an integer degree")
    base = {
        "subcommand": "filtration",
        "field": p,
        "degrees": degrees,
        "lambda0": lam,
        "seed": seed,
    }
    if sum(degrees) - lam < 0:
        base.update({
            "status": "no-filtration",
            "length": None,
            "points": [],
            "dims": [],
            "det_degrees": [],
            "verified": None,
        })
        return base
    filt, chain = hecke.build_curve_filtration(degrees, lam, p)
    curve = Lattice.curve()
    target = SplitBundle(tuple(curve.divisor(d) for d in degrees))
    base.update({
        "status": "ok",
        "length": filt.length,
        "points": [pt.label() for pt in hecke.enumerate_points(p)[:filt.length]],
        "dims": [m.dim for m in chain],
        "det_degrees": [m.det_degree for m in chain],
        "verified": depth.verify_filtration(filt, target),
    })
    return base


def _hecke_point(text: str, field_name: str) -> hecke.RationalPoint:
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return hecke.INFINITY
    try:
        return hecke.RationalPoint.affine(int(t))
    except ValueError:
        raise CliInputError(field_name, f"expected an integer or 'inf', got {text!r}")


def _default_covector(model, point):
    for i in range(model.rank):
        cov = [0] * model.rank
        cov[i] = 1
        phi = hecke.PointFunctional(point, tuple(cov))
        values = (model.basis.array @ hecke._functional_row(model, phi)) % model.p
        if values.any():
            return phi
    raise HierdepthError(f"no usable covector at {point.label()}")


def _cmd_hecke_verify(opts, seed):
    try:
        p = int(opts["field"])
    except (TypeError, ValueError):
        raise CliInputError("field", "expected a prime integer")
    degrees = _int_list(opts["degrees"] or "", "degrees")
    if not degrees:
        raise CliInputError("degrees", "need at least one degree")
    raw_points = (opts["points"] or "").split(",")
    if len(raw_points) != 2:
        raise CliInputError("points", "expected exactly two points, e.g. 0,1")
    pts = [_hecke_point(t, "points") for t in raw_points]
    model = hecke.full_sections(degrees, max(0, max(degrees)), p)
    if opts.get("covectors"):
        parts = opts["covectors"].split(";")
        if len(parts) != 2:
            raise CliInputError("covectors", "expected two covectors, e.g. 1,0;0,1")
        covs = [_int_list(t, "covectors") for t in parts]
        for cov in covs:
            if len(cov) != len(degrees):
                raise CliInputError("covectors", "covector length must match rank")
        try:
            functionals = [
                hecke.PointFunctional(pt, tuple(cov))
                for pt, cov in zip(pts, covs)
            ]
        except ValueError as e:
            raise CliInputError("covectors", str(e))
    else:
        functionals = [_default_covector(model, pt) for pt in pts]
    report = hecke.commute_check(model, functionals[0], functionals[1])
    return {
        "subcommand": "hecke-verify",
        "field": p,
        "degrees": degrees,
        "points": [pt.label() for pt in pts],
        "covectors": [list(f.covector) for f in functionals],
        "routes": {
            "dim_v12": report.dim_v12,
            "dim_v21": report.dim_v21,
            "dim_joint": report.dim_joint,
        },
        "equal": report.equal,
        "status": "ok",
        "seed": seed,
    }


@dataclass
class CodeConfig:
    """Parsed flat key-value description of an evaluation code."""

    p: int
    space: str
    summands: list
    points: list
    exceptional: list
    budget: int


def parse_code_config(path: str) -> CodeConfig:
    """Read a flat key = value file describing a code.

    Recognized keys: p, space, summand (repeatable), points, exclude
    (repeatable), exceptional (repeatable), budget. A summand value is
    'degree' or 'degree; pt@order, pt@order, ...' with pt written as
    colon-separated coordinates. points is either 'all-rational' or an
    explicit comma-separated point list.
    """
    values = {"summand": [], "exclude": [], "exceptional": []}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise CliInputError("config", f"cannot read {path!r}: {e}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliInputError("config", f"line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        key, val = key.strip().lower(), val.strip()
        if key in ("summand", "exclude", "exceptional"):
            values[key].append(val)
        elif key in ("p", "space", "points", "budget"):
            if key in values:
                raise CliInputError(key, f"line {lineno}: repeated key")
            values[key] = val
        else:
            raise CliInputError("config", f"line {lineno}: unknown key {key!r}")
    if "p" not in values:
        raise CliInputError("p", "missing from config")
    try:
        p = int(values["p"])
    except ValueError:
        raise CliInputError("p", f"expected an integer, got {values['p']!r}")
    space = values.get("space", "P2").upper()
    if space not in ("P1", "P2"):
        raise CliInputError("space", f"expected P1 or P2, got {values.get('space')!r}")
    if not values["summand"]:
        raise CliInputError("summand", "need at least one summand line")
    summands = []
    for text in values["summand"]:
        head, _, tail = text.partition(";")
        try:
            degree = int(head.strip())
        except ValueError:
            raise CliInputError("summand", f"expected integer degree, got {head!r}")
        conditions = []
        tail = tail.strip()
        if tail:
            for item in tail.split(","):
                pt_text, _, order_text = item.strip().partition("@")
                pt = _point(pt_text, "summand")
                order = 1
                if order_text:
                    try:
                        order = int(order_text)
                    except ValueError:
                        raise CliInputError("summand", f"bad order {order_text!r}")
                conditions.append(VanishingCondition(pt, order))
        summands.append((degree, conditions))
    if "points" not in values:
        raise CliInputError("points", "missing from config")
    if values["points"].strip().lower() == "all-rational":
        pts = all_rational_points(space, p)
        excluded = {
            agcode.normalize_point(_point(t, "exclude"), p)
            for t in values["exclude"]
        }
        points = [pt for pt in pts if pt not in excluded]
    else:
        if values["exclude"]:
            raise CliInputError("exclude", "only valid with points = all-rational")
        points = [_point(t, "points") for t in values["points"].split(",")]
    exceptional = [_point(t, "exceptional") for t in values["exceptional"]]
    budget = DEFAULT_BUDGET
    if "budget" in values:
        try:
            budget = int(values["budget"])
        except ValueError:
            raise CliInputError("budget", f"expected an integer, got {values['budget']!r}")
    return CodeConfig(
        p=p,
        space=space,
        summands=summands,
        points=points,
        exceptional=exceptional,
        budget=budget,
    )


def _build_from_config(cfg: CodeConfig):
    bases = [
        vanishing_basis(degree, conditions, cfg.space, cfg.p)
        for degree, conditions in cfg.summands
    ]
    return build_code(bases, cfg.points, cfg.p, exceptional=cfg.exceptional)


def _code_summary(cfg: CodeConfig, code) -> dict:
    _, report = zero_block_contract(code)
    return {
        "p": cfg.p,
        "space": cfg.space,
        "r": code.r,
        "N": code.num_points,
        "n": code.n,
        "k": code.k,
        "message_dim": code.message_dim,
        "zero_blocks": list(report.zero_blocks),
    }


def _cmd_code_build(opts, seed):
    cfg = parse_code_config(opts["config"])
    code = _build_from_config(cfg)
    out = {"subcommand": "code-build", "status": "ok", "seed": seed}
    out.update(_code_summary(cfg, code))
    export = opts.get("export_generator")
    if export:
        with open(export, "w", encoding="utf-8") as fh:
            for row in code.generator.tolist():
                fh.write(" ".join(str(v) for v in row) + "\n")
        out["generator_file"] = export
    return out


def _cmd_code_analyze(opts, seed):
    cfg = parse_code_config(opts["config"])
    code = _build_from_config(cfg)
    out = {"subcommand": "code-analyze", "status": "ok", "seed": seed}
    out.update(_code_summary(cfg, code))
    comparison = mmp_compare(code, budget=cfg.budget)
    if comparison is INFEASIBLE:
        out.update({"d_min": "infeasible", "delta": None, "mmp": None})
        return out
    out.update({
        "d_min": comparison.d_min,
        "delta": _frac(comparison.delta_before),
        "mmp": {
            "N_after": comparison.n_points_after,
            "delta_after": _frac(comparison.delta_after),
            "ratio": _frac(comparison.ratio),
        },
    })
    return out


def _cmd_mmp_compare(opts, seed):
    cfg = parse_code_config(opts["config"])
    code = _build_from_config(cfg)
    out = {
        "subcommand": "mmp-compare",
        "p": cfg.p,
        "r": code.r,
        "seed": seed,
    }
    comparison = mmp_compare(code, budget=cfg.budget)
    if comparison is INFEASIBLE:
        out.update({
            "status": "infeasible",
            "N_before": code.num_points,
            "N_after": None,
            "zero_blocks": None,
            "d_min": None,
            "delta_before": None,
            "delta_after": None,
            "ratio": None,
            "improved": None,
        })
        return out
    out.update({
        "status": "ok",
        "N_before": comparison.n_points_before,
        "N_after": comparison.n_points_after,
        "zero_blocks": list(comparison.zero_blocks),
        "d_min": comparison.d_min,
        "delta_before": _frac(comparison.delta_before),
        "delta_after": _frac(comparison.delta_after),
        "ratio": _frac(comparison.ratio),
        "improved": comparison.improved,
    })
    return out


_COMMANDS = {
    "depth": _cmd_depth,
    "mmp-depth": _cmd_mmp_depth,
    "filtration": _cmd_filtration,
    "hecke-verify": _cmd_hecke_verify,
    "code-build": _cmd_code_build,
    "code-analyze": _cmd_code_analyze,
    "mmp-compare": _cmd_mmp_compare,
}


def run(config: RunConfig) -> dict:
    """Execute one subcommand and return its report dictionary."""
    if config.subcommand not in _COMMANDS:
        raise CliInputError("subcommand", f"unknown subcommand {config.subcommand!r}")
    return _COMMANDS[config.subcommand](config.options, config.seed)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hierdepth", description=__doc__)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="subcommand")

    d = sub.add_parser("depth", description="Depth bounds for a split bundle.")
    d.add_argument("--curve", action="store_true")
    d.add_argument("--surface", choices=("p2", "p1xp1"))
    d.add_argument("--degrees")
    d.add_argument("--bundle")
    d.add_argument("--lambda0", required=True)

    m = sub.add_parser("mmp-depth", description="Depth through a blowup chain.")
    m.add_argument("--hmin", required=True)
    m.add_argument("--alpha", required=True)
    m.add_argument("--beta", required=True)

    f = sub.add_parser("filtration", description="Build a maximal chain on the line.")
    f.add_argument("--field", required=True)
    f.add_argument("--degrees", required=True)
    f.add_argument("--lambda0", required=True)

    h = sub.add_parser("hecke-verify", description="Compare transform routes.")
    h.add_argument("--field", required=True)
    h.add_argument("--degrees", required=True)
    h.add_argument("--points", required=True)
    h.add_argument("--covectors")

    for name in ("code-build", "code-analyze", "mmp-compare"):
        c = sub.add_parser(name)
        c.add_argument("--config", required=True)
        if name == "code-build":
            c.add_argument("--export-generator", dest="export_generator")
    return parser


def _render_text(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            head = f"{prefix}{key}" if not prefix else f"{prefix}.{key}"
            lines.extend(_render_text(obj[key], head))
    else:
        lines.append(f"{prefix}: {json.dumps(obj)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_render_text(report))
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if not ns.subcommand:
            raise CliInputError("subcommand", "no subcommand given")
        options = {
            k: v for k, v in vars(ns).items()
            if k not in ("subcommand", "format", "seed")
        }
        config = RunConfig(
            subcommand=ns.subcommand,
            options=options,
            fmt=ns.format,
            seed=ns.seed,
        )
        report = run(config)
    except CliInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except HierdepthError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    print(render(report, config.fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
