"""Command-line front end.

Every subcommand writes one machine-readable report (JSON or CSV) and exits 0
exactly when all embedded checks pass. Options may come from a JSON config
file (``--config``); flags given on the command line win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field

from . import bedard, bitorsor, weyl
from .cartan import CartanError, CartanSpec, build_affine_cartan
from .sl2 import model as sl2model
from .sl2.lattice import SUPPORTED_Q

SCHEMA_VERSION = 1
COMMANDS = ("ball", "sequences", "bijection", "pointcount", "sl2", "bitorsor")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    type: str | None = None
    rank: int | None = None
    cartan_file: str | None = None
    cartan: list | None = None
    J: list[int] | None = None
    delta: list[int] | None = None
    length: int = 4
    q: list[int] = field(default_factory=lambda: [2, 3])
    nmax: int = 2
    format: str = "json"
    out: str | None = None
    orbits: bool = False
    max_precision: int = 6
    torsor: list[str] | None = None
    torsor_file: str | None = None

    def public(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if k not in ("out", "format", "cartan_file", "torsor_file")}
        return {k: v for k, v in d.items() if v is not None}


_TYPE_RE = re.compile(r"^([A-Ga-g])~?(\d+)?~?$")


def _int_list(text):
    if isinstance(text, list):
        return [int(x) for x in text]
    text = str(text).strip()
    if text in ("", "[]", "none"):
        return []
    return [int(x) for x in re.split(r"[,\s]+", text.strip("[]")) if x]


def load_spec(cfg: JobConfig) -> CartanSpec:
    try:
        if cfg.cartan is not None:
            return CartanSpec.from_json({"cartan": cfg.cartan, "label": "custom"})
        if cfg.cartan_file:
            with open(cfg.cartan_file) as fh:
                return CartanSpec.from_json(json.load(fh))
        if not cfg.type:
            raise ConfigError("give --type (e.g. A2, G2) or --cartan-file")
        m = _TYPE_RE.match(cfg.type.strip())
        if not m:
            raise ConfigError(f"cannot read type {cfg.type!r}; expected something like A2 or G2")
        rank = int(m.group(2)) if m.group(2) else cfg.rank
        if rank is None:
            raise ConfigError(f"type {cfg.type!r} needs a rank (--rank)")
        if cfg.rank is not None and m.group(2) and cfg.rank != rank:
            raise ConfigError(f"--rank {cfg.rank} contradicts type {cfg.type!r}")
        return build_affine_cartan(m.group(1), rank)
    except (CartanError, OSError, json.JSONDecodeError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def _J(cfg, spec):
    J = cfg.J if cfg.J is not None else [0]
    try:
        return weyl.nodeset(spec, J, proper=True)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _delta(cfg, spec):
    try:
        if cfg.delta is None:
            return bedard.identity_aut(spec)
        return bedard.validate_automorphism(spec, cfg.delta)
    except (ValueError, bedard.BedardError) as exc:
        raise ConfigError(str(exc)) from exc


def _check_length(cfg):
    if cfg.length < 0:
        raise ConfigError("--length must be non-negative")


# -- commands: each returns (report dict, csv rows) --

def cmd_ball(cfg: JobConfig):
    spec = load_spec(cfg)
    _check_length(cfg)
    layers = weyl.ball_layers(spec, cfg.length)
    counts = [len(x) for x in layers]
    report = {"type": spec.label, "L": cfg.length, "counts": counts, "total": sum(counts), "passed": True}
    rows = [("length", "count")] + [(l, c) for l, c in enumerate(counts)]
    return report, rows


def cmd_sequences(cfg: JobConfig):
    spec = load_spec(cfg)
    _check_length(cfg)
    J, delta = _J(cfg, spec), _delta(cfg, spec)
    seqs = bedard.enumerate_sequences(spec, J, delta, cfg.length)
    items, bad = [], 0
    rows = [("w_inf", "w_inf_length", "J_inf", "stages", "twist_order", "violations")]
    for tau in seqs:
        v = bedard.sequence_violations(tau)
        bad += bool(v)
        d = bedard.piece_descriptor(tau)
        item = tau.to_json()
        item["descriptor"] = d.to_json()
        item["violations"] = v
        items.append(item)
        rows.append((" ".join(map(str, tau.w_inf.reduced_word)), tau.w_inf.length,
                     " ".join(map(str, sorted(tau.J_inf))), len(tau.stages), d.twist_order, len(v)))
    report = {"type": spec.label, "J": sorted(J), "delta": list(delta.perm), "L": cfg.length,
              "count": len(seqs), "sequences": items, "passed": bad == 0}
    return report, rows


def cmd_bijection(cfg: JobConfig):
    spec = load_spec(cfg)
    _check_length(cfg)
    rep = bedard.bijection_check(spec, _J(cfg, spec), _delta(cfg, spec), cfg.length)
    rows = [("check", "passed")] + sorted(rep.checks.items())
    return rep.to_json(), rows


def _qs(cfg):
    for q in cfg.q:
        if q not in SUPPORTED_Q:
            raise ConfigError(f"q = {q} unsupported; choose from {list(SUPPORTED_Q)}")
    return list(cfg.q)


def cmd_pointcount(cfg: JobConfig):
    spec = load_spec(cfg)
    _check_length(cfg)
    qs = _qs(cfg)
    seqs = bedard.enumerate_sequences(spec, _J(cfg, spec), _delta(cfg, spec), cfg.length)
    pieces = []
    rows = [("w_inf", "w_inf_length", "polynomial") + tuple(f"q={q}" for q in qs)]
    for tau in seqs:
        poly = bedard.point_count(bedard.piece_descriptor(tau))
        vals = {str(q): poly(q) for q in qs}
        pieces.append({"w_inf": list(tau.w_inf.reduced_word), "w_inf_length": tau.w_inf.length,
                       "polynomial": str(poly), "coefficients": list(poly.coeffs), "values": vals})
        rows.append((" ".join(map(str, tau.w_inf.reduced_word)), tau.w_inf.length, str(poly))
                    + tuple(vals[str(q)] for q in qs))
    report = {"type": spec.label, "L": cfg.length, "q": qs, "pieces": pieces, "passed": True}
    return report, rows


def cmd_sl2(cfg: JobConfig):
    qs = _qs(cfg)
    if cfg.nmax < 0:
        raise ConfigError("--nmax must be non-negative")
    tables, matches, orbits = [], [], []
    for q in qs:
        table = sl2model.census(q, cfg.nmax)
        tables.append(table)
        matches.append(sl2model.match_pieces(q, 2 * cfg.nmax, table))
        if cfg.orbits:
            for lab in sl2model.labels_up_to(min(cfg.nmax, 2)):
                orbits.append(sl2model.orbit_census(q, lab, cfg.max_precision))
    passed = all(t.passed for t in tables) and all(m.passed for m in matches) and all(o.passed for o in orbits)
    report = {
        "census": [t.to_json() for t in tables],
        "match_pieces": [m.to_json() for m in matches],
        "orbit_census": [o.to_json() for o in orbits],
        "passed": passed,
    }
    rows = [sl2model.CENSUS_COLUMNS]
    for t in tables:
        for r in t.rows:
            d = r.to_json()
            rows.append(tuple(d[c] for c in sl2model.CENSUS_COLUMNS))
    return report, rows


def cmd_bitorsor(cfg: JobConfig):
    torsors = []
    names = cfg.torsor if cfg.torsor is not None else ([] if cfg.torsor_file else sorted(bitorsor.BUILTIN_TORSORS))
    for name in names:
        if name not in bitorsor.BUILTIN_TORSORS:
            raise ConfigError(f"unknown torsor {name!r}; built-ins are {sorted(bitorsor.BUILTIN_TORSORS)}")
        torsors.append(bitorsor.BUILTIN_TORSORS[name]())
    if cfg.torsor_file:
        try:
            with open(cfg.torsor_file) as fh:
                data = json.load(fh)
            for item in data if isinstance(data, list) else [data]:
                torsors.append(bitorsor.torsor_from_json(item))
        except (OSError, json.JSONDecodeError, bitorsor.GroupError, KeyError) as exc:
            raise ConfigError(f"bad torsor file: {exc}") from exc
    results = [bitorsor.run_suite(t) for t in torsors]
    rows = [("torsor", "e", "tau_order", "automorphism", "component", "equivariant")]
    for r in results:
        for lab, k, a, b, c in r.rows:
            rows.append((r.name, lab, k, a, b, c))
    report = {"torsors": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    return report, rows


HANDLERS = {
    "ball": cmd_ball,
    "sequences": cmd_sequences,
    "bijection": cmd_bijection,
    "pointcount": cmd_pointcount,
    "sl2": cmd_sl2,
    "bitorsor": cmd_bitorsor,
}


# -- plumbing --

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of options; explicit flags override it")
    common.add_argument("--type", help="affine type such as A1, A2, C2, G2")
    common.add_argument("--rank", type=int)
    common.add_argument("--cartan-file", dest="cartan_file", help="JSON Cartan matrix")
    common.add_argument("--J", dest="J", type=_int_list, help="nodes of J, e.g. 0,1")
    common.add_argument("--delta", type=_int_list, help="diagram automorphism as a permutation, e.g. 1,2,0")
    common.add_argument("--length", type=int, help="length bound L")
    common.add_argument("--q", type=_int_list, help="field sizes, e.g. 2,3")
    common.add_argument("--nmax", type=int)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--orbits", action="store_const", const=True, help="sl2: also run orbit censuses")
    common.add_argument("--max-precision", dest="max_precision", type=int)
    common.add_argument("--torsor", action="append", help="bitorsor: built-in torsor (repeatable)")
    common.add_argument("--torsor-file", dest="torsor_file", help="bitorsor: JSON torsor or list of torsors")

    p = argparse.ArgumentParser(prog="affpieces", description="Combinatorics of affine pieces and their checks.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "ball": "count Weyl group elements by length",
        "sequences": "enumerate sequences up to a length bound",
        "bijection": "check the sequence/element bijection",
        "pointcount": "point-count polynomials per piece",
        "sl2": "SL2 lattice census and piece matching",
        "bitorsor": "bitorsor and semidirect component checks",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return p


_LIST_KEYS = ("J", "delta", "q")


def resolve_config(ns: argparse.Namespace) -> JobConfig:
    merged = {}
    if ns.config:
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        known = set(JobConfig.__dataclass_fields__) - {"command"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
        merged.update(data)
    for key, value in vars(ns).items():
        if key in ("config", "command") or value is None:
            continue
        merged[key] = value
    for key in _LIST_KEYS:
        if key in merged and merged[key] is not None:
            merged[key] = _int_list(merged[key])
    if "torsor" in merged and isinstance(merged["torsor"], str):
        merged["torsor"] = [merged["torsor"]]
    cfg = JobConfig(command=ns.command, **merged)
    if cfg.format not in ("json", "csv"):
        raise ConfigError("format must be json or csv")
    return cfg


def render(cfg: JobConfig, report: dict, rows) -> str:
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerows(rows)
        return buf.getvalue()
    doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "config": cfg.public()}
    doc.update(report)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(argv=None) -> tuple[int, str, JobConfig]:
    ns = build_parser().parse_args(argv)
    cfg = resolve_config(ns)
    report, rows = HANDLERS[cfg.command](cfg)
    return (0 if report["passed"] else 1), render(cfg, report, rows), cfg


def main(argv=None) -> int:
    try:
        code, text, cfg = run(argv)
    except ConfigError as exc:
        print(f"affpieces: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
