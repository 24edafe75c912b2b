"""Command-line surface: input files, commands, canonical reports.

Commands: check, hh, hc, hp, identities, tower, orbifold.  Every report
embeds the tool version, the input digest and the truncation degree, so a
report is reproducible from the file it names.  JSON output is canonical
(sorted keys, two-space indent, rationals as "num/den" strings) and
round-trips byte-identically through json.loads/dumps.

Exit codes: 0 success; 1 parse or validation failure; 2 size-cap refusal;
3 a periodic computation refused for lack of a vanishing certificate (a
mathematical outcome, not an error).
"""

import argparse
import hashlib
import json
import re
import sys
import warnings
from dataclasses import dataclass

from . import __version__
from .algebra import Algebra, AlgebraHom, FiniteGroup, check_associativity
from .errors import (CychomError, NoCertificate, OrderCapExceeded,
                     ParseError, SizeCapExceeded, ValidationError)
from .homology import (cyclic_homology, hochschild_homology,
                       periodic_via_stabilization, stabilization_certificate)
from .linalg import QQ, SparseMatrix
from .mixed import build_mixed_complex, verify_mixed_identities
from .orbifold import TorusComponent, even_odd_totals
from .towers import DirectSystem, continuity_check, hecke_tower, \
    hp_continuity_check

DEFAULT_MAX_DEGREE = 4
DEFAULT_DIM_CAP = 16

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def format_rational(q):
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(value, where):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        if not _RATIONAL.match(value):
            raise ParseError(f"{where}: {value!r} is not num or num/den")
        return QQ(value)
    raise ParseError(f"{where}: rationals must be integers or strings, "
                     f"not {type(value).__name__}")


def _load_json(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror or e}")
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")


def _require_keys(doc, allowed, required, path):
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in doc:
        if key not in allowed:
            raise ParseError(f"{path}: unknown key {key!r}")
    for key in required:
        if key not in doc:
            raise ParseError(f"{path}: missing key {key!r}")


def _algebra_from_doc(doc, path, validate=True):
    _require_keys(doc, {"dim", "basis", "unit", "table"}, {"dim", "table"},
                  path)
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"{path}: dim must be a nonnegative integer")
    labels = doc.get("basis")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != dim or \
                any(not isinstance(s, str) for s in labels):
            raise ParseError(f"{path}: basis must list {dim} strings")
    raw_unit = doc.get("unit")
    unit = None
    if raw_unit is not None:
        if not isinstance(raw_unit, list) or len(raw_unit) != dim:
            raise ParseError(f"{path}: unit must be null or {dim} rationals")
        unit = {}
        for k, v in enumerate(raw_unit):
            q = _parse_rational(v, f"{path}: unit[{k}]")
            if q:
                unit[k] = q
    raw_table = doc["table"]
    if not isinstance(raw_table, list) or len(raw_table) != dim or \
            any(not isinstance(row, list) or len(row) != dim
                for row in raw_table):
        raise ParseError(f"{path}: table must be a {dim} x {dim} array")
    table = {}
    for i, row in enumerate(raw_table):
        for j, cell in enumerate(row):
            if not isinstance(cell, list):
                raise ParseError(f"{path}: table[{i}][{j}] must be a list")
            vec = {}
            for t, pair in enumerate(cell):
                where = f"{path}: table[{i}][{j}] entry {t}"
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ParseError(f"{where}: expected [index, rational]")
                k, v = pair
                if not isinstance(k, int) or isinstance(k, bool):
                    raise ParseError(f"{where}: index must be an integer")
                if not 0 <= k < dim:
                    raise ParseError(f"{where}: basis index {k} out of range")
                vec[k] = vec.get(k, QQ(0)) + _parse_rational(v, where)
            if vec:
                table[(i, j)] = vec
    algebra = Algebra(dim, table, unit=unit, basis_labels=labels)
    if validate:
        result = check_associativity(algebra)
        if not result.ok:
            raise ValidationError(
                f"associativity fails on basis triple {result.failing_triple}")
    return algebra


def parse_algebra_file(path, validate=True):
    """Load an algebra description; associativity checked unless disabled."""
    return _algebra_from_doc(_load_json(path), path, validate=validate)


def algebra_to_doc(a):
    """The algebra-file document for an Algebra; inverse of the parser."""
    table = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            row.append([[k, format_rational(c)]
                        for k, c in sorted(a.product(i, j).items())])
        table.append(row)
    unit = None
    if a.unit is not None:
        unit = [format_rational(a.unit.get(k, QQ(0))) for k in range(a.dim)]
    return {"dim": a.dim, "basis": list(a.basis_labels), "unit": unit,
            "table": table}


def _parse_matrix(rows, target_dim, source_dim, where):
    if not isinstance(rows, list) or len(rows) != target_dim or \
            any(not isinstance(r, list) or len(r) != source_dim
                for r in rows):
        raise ParseError(
            f"{where}: expected a {target_dim} x {source_dim} matrix")
    entries = []
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            q = _parse_rational(v, f"{where}[{r}][{c}]")
            if q:
                entries.append((r, c, q))
    return SparseMatrix(target_dim, source_dim, entries)


def parse_tower_file(path, validate=True):
    """Load a direct system, either as stages-and-maps or as a Hecke tower."""
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    if "group" in doc:
        _require_keys(doc, {"group", "chain"}, {"group", "chain"}, path)
        table = doc["group"]
        if not isinstance(table, list) or \
                any(not isinstance(row, list) for row in table):
            raise ParseError(f"{path}: group must be a multiplication table")
        group = FiniteGroup(table)
        chain = doc["chain"]
        if not isinstance(chain, list) or \
                any(not isinstance(k, list) or
                    any(not isinstance(x, int) or isinstance(x, bool)
                        for x in k)
                    for k in chain):
            raise ParseError(f"{path}: chain must list element-index lists")
        return hecke_tower(group, chain)
    _require_keys(doc, {"stages", "maps"}, {"stages", "maps"}, path)
    raw_stages = doc["stages"]
    if not isinstance(raw_stages, list) or not raw_stages:
        raise ParseError(f"{path}: stages must be a nonempty list")
    stages = []
    for i, entry in enumerate(raw_stages):
        if isinstance(entry, dict):
            stages.append(_algebra_from_doc(entry, f"{path}: stages[{i}]",
                                            validate=validate))
        else:
            raise ParseError(f"{path}: stages[{i}] must be an inline algebra")
    raw_maps = doc["maps"]
    if not isinstance(raw_maps, list) or len(raw_maps) != len(stages) - 1:
        raise ParseError(
            f"{path}: {len(stages)} stages need {len(stages) - 1} maps")
    maps = []
    for i, rows in enumerate(raw_maps):
        m = _parse_matrix(rows, stages[i + 1].dim, stages[i].dim,
                          f"{path}: maps[{i}]")
        maps.append(AlgebraHom(stages[i], stages[i + 1], m))
    return DirectSystem(stages, maps)


def parse_component_file(path):
    """Load a torus-component list; returns (components, gl_rank or None).

    A "notes" string is allowed at the top level and per component and is
    ignored: shipped example lists carry their provenance there.
    """
    doc = _load_json(path)
    _require_keys(doc, {"components", "gl_rank", "notes"}, {"components"},
                  path)
    gl_rank = doc.get("gl_rank")
    if gl_rank is not None and \
            (not isinstance(gl_rank, int) or isinstance(gl_rank, bool)):
        raise ParseError(f"{path}: gl_rank must be an integer")
    raw = doc["components"]
    if not isinstance(raw, list):
        raise ParseError(f"{path}: components must be a list")
    components = []
    for i, entry in enumerate(raw):
        where = f"{path}: components[{i}]"
        _require_keys(entry, {"rank", "generators", "label", "notes"},
                      {"rank", "generators"}, where)
        rank_k = entry["rank"]
        if not isinstance(rank_k, int) or isinstance(rank_k, bool):
            raise ParseError(f"{where}: rank must be an integer")
        gens = entry["generators"]
        if not isinstance(gens, list):
            raise ParseError(f"{where}: generators must be a list")
        for g in gens:
            if not isinstance(g, list) or \
                    any(not isinstance(row, list) or
                        any(not isinstance(x, int) or isinstance(x, bool)
                            for x in row)
                        for row in g):
                raise ParseError(
                    f"{where}: generators must be integer matrices")
        label = entry.get("label", "")
        if not isinstance(label, str):
            raise ParseError(f"{where}: label must be a string")
        try:
            components.append(TorusComponent(
                rank_k, tuple(tuple(tuple(row) for row in g) for g in gens),
                label=label))
        except ValidationError as e:
            raise ValidationError(f"{where}: {e}")
    return components, gl_rank


@dataclass(frozen=True)
class JobSpec:
    """One CLI invocation: a command, an input path and the shared flags."""

    command: str
    path: str
    max_degree: int = DEFAULT_MAX_DEGREE
    fmt: str = "text"
    validate: bool = True
    cap_dim: int = DEFAULT_DIM_CAP
    certificate: bool = False
    oracle: bool = False
    i_know: bool = False


def _check_dim_cap(job, dim):
    if job.i_know:
        return
    if job.max_degree >= 4 and dim > job.cap_dim:
        raise SizeCapExceeded(
            f"dimension {dim} exceeds the cap {job.cap_dim} for "
            f"max_degree >= 4 (raise with --cap-dim or pass --i-know)")


def _certificate_fields(cert):
    if cert is None:
        return None
    out = {"vanishing_bound": cert.vanishing_bound,
           "checked_through": cert.checked_through,
           "even_degree": cert.even_degree,
           "odd_degree": cert.odd_degree,
           "even_repeat_equal": cert.even_repeat_equal,
           "odd_repeat_equal": cert.odd_repeat_equal}
    out["verified_degrees"] = list(cert.verified_degrees)
    return out


def _homology_report(job, theory):
    a = parse_algebra_file(job.path, validate=job.validate)
    _check_dim_cap(job, a.dim)
    compute = hochschild_homology if theory == "HH" else cyclic_homology
    report = compute(a, job.max_degree)
    body = {"theory": theory,
            "dims": list(report.dims),
            "space_dims": list(report.space_dims),
            "boundary_ranks": list(report.boundary_ranks)}
    if job.certificate and theory == "HH":
        cert = stabilization_certificate(a, job.max_degree, hh_report=report)
        body["certificate"] = _certificate_fields(cert)
    return 0, body


def _hp_report(job):
    a = parse_algebra_file(job.path, validate=job.validate)
    _check_dim_cap(job, a.dim)
    mc = build_mixed_complex(a, job.max_degree + 1)
    hh = hochschild_homology(a, job.max_degree, mc=mc)
    try:
        report = periodic_via_stabilization(a, job.max_degree, mc=mc,
                                            hh_report=hh)
    except NoCertificate:
        body = {"status": "NOT_ESTABLISHED",
                "hh_dims": list(hh.dims),
                "certificate": None}
        return 3, body
    body = {"status": "ESTABLISHED",
            "hp_even": report.dims[0],
            "hp_odd": report.dims[1],
            "certificate": _certificate_fields(report.certificate)}
    if job.certificate:
        body["hh_dims"] = list(hh.dims)
    return 0, body


def _check_report(job):
    a = parse_algebra_file(job.path, validate=job.validate)
    body = {"dim": a.dim,
            "unital": a.is_unital(),
            "basis": list(a.basis_labels),
            "table_entries": len(a.table),
            "associative": True if job.validate else None}
    return 0, body


def _identities_report(job):
    a = parse_algebra_file(job.path, validate=job.validate)
    _check_dim_cap(job, a.dim)
    mc = build_mixed_complex(a, max(2, job.max_degree))
    result = verify_mixed_identities(mc)
    body = {"depth": mc.n_max,
            "boundary_squared": all(result.bb.values()),
            "anticommutator": all(result.anticommute.values()),
            "second_squared": all(result.BB.values()),
            "witness": None if result.witness is None else {
                "identity": result.witness[0],
                "degree": result.witness[1],
                "position": [result.witness[2][0], result.witness[2][1]],
                "value": format_rational(result.witness[2][2])}}
    return (0 if result.all_pass else 1), body


def _tower_report(job):
    ds = parse_tower_file(job.path, validate=job.validate)
    for a in ds.stages:
        _check_dim_cap(job, a.dim)
    cont = continuity_check(ds, "HH", job.max_degree)
    body = {"stage_dims": [a.dim for a in ds.stages],
            "hh": {"final_dims": list(cont.final_dims),
                   "filtration": [list(row) for row in cont.image_filtration],
                   "monotone": cont.monotone,
                   "pass": cont.all_pass}}
    try:
        hp = hp_continuity_check(ds, job.max_degree)
    except NoCertificate as e:
        body["hp"] = {"status": "NOT_ESTABLISHED", "reason": str(e)}
        return 3, body
    body["hp"] = {"status": "ESTABLISHED",
                  "common_bound": hp.common_bound,
                  "even_degree": hp.even_degree,
                  "odd_degree": hp.odd_degree,
                  "stage_even": list(hp.stage_even),
                  "stage_odd": list(hp.stage_odd),
                  "even_filtration": list(hp.even_filtration),
                  "odd_filtration": list(hp.odd_filtration),
                  "monotone": hp.monotone}
    return 0, body


def _orbifold_report(job):
    components, gl_rank = parse_component_file(job.path)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        table = even_odd_totals(components, gl_rank=gl_rank,
                                cross_check=job.oracle)
    body = {"components": [
        {"label": label, "rank": c.rank, "betti": list(row)}
        for label, row, c in zip(table.labels, table.rows, components)],
        "even": table.even,
        "odd": table.odd,
        "oracle_checked": job.oracle,
        "warnings": [str(w.message) for w in caught]}
    return 0, body


_DISPATCH = {
    "check": _check_report,
    "hh": lambda job: _homology_report(job, "HH"),
    "hc": lambda job: _homology_report(job, "HC"),
    "hp": _hp_report,
    "identities": _identities_report,
    "tower": _tower_report,
    "orbifold": _orbifold_report,
}


def _digest(path):
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return None


def _render_value(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return " ".join(_render_value(x) for x in v) if v else "(empty)"
    return str(v)


def _render_text(report):
    lines = [f"cychom {report['version']} | {report['command']} "
             f"{report['input']} | sha256 {report['input_sha256'] or '-'}"]
    skip = {"version", "command", "input", "input_sha256", "tool"}

    def emit(prefix, obj):
        if isinstance(obj, dict):
            for key in sorted(obj):
                emit(f"{prefix}{key}.", obj[key])
        elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
            for i, item in enumerate(obj):
                emit(f"{prefix}{i}.", item)
        else:
            lines.append(f"{prefix[:-1]}: {_render_value(obj)}")

    for key in sorted(report):
        if key not in skip:
            emit(f"{key}.", report[key])
    return "\n".join(lines) + "\n"


def render_report(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return _render_text(report)


def run(job, out=None):
    """Execute one job and write its report; returns the exit code."""
    out = sys.stdout if out is None else out
    header = {"tool": "cychom",
              "version": __version__,
              "command": job.command,
              "input": job.path,
              "input_sha256": _digest(job.path),
              "max_degree": job.max_degree if job.command not in
              ("check", "orbifold") else None}
    try:
        code, body = _DISPATCH[job.command](job)
    except ParseError as e:
        code, body = 1, {"error": "parse", "message": str(e)}
    except (SizeCapExceeded, OrderCapExceeded) as e:
        code, body = 2, {"error": "size_cap", "message": str(e)}
    except NoCertificate as e:
        code, body = 3, {"error": "no_certificate", "message": str(e),
                         "status": "NOT_ESTABLISHED"}
    except CychomError as e:
        code, body = 1, {"error": "validation", "message": str(e)}
    report = {**header, **body}
    out.write(render_report(report, job.fmt))
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser():
    parser = _Parser(prog="cychom",
                     description="Exact Hochschild/cyclic/periodic homology "
                                 "of finite-dimensional rational algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "check": "parse and validate an algebra file",
        "hh": "Hochschild homology dimensions",
        "hc": "cyclic homology dimensions",
        "hp": "periodic cyclic homology through a vanishing certificate",
        "identities": "verify the three mixed-complex operator identities",
        "tower": "continuity of homology along a tower of inclusions",
        "orbifold": "invariant Betti numbers of torus quotient components",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="input file")
        p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                       help="truncation degree (default 4)")
        p.add_argument("--format", choices=("text", "json"), default="text",
                       help="report format")
        p.add_argument("--no-validate", action="store_true",
                       help="skip associativity validation of inputs")
        p.add_argument("--cap-dim", type=int, default=DEFAULT_DIM_CAP,
                       help="algebra dimension cap for max_degree >= 4")
        p.add_argument("--certificate", action="store_true",
                       help="include full stabilization evidence")
        p.add_argument("--oracle", action="store_true",
                       help="run independent cross-checks where defined "
                            "(orbifold projector ranks)")
        p.add_argument("--i-know", action="store_true",
                       help="bypass the dimension cap")
    return parser


def main(argv=None):
    try:
        ns = build_parser().parse_args(argv)
    except ParseError as e:
        sys.stderr.write(f"cychom: {e}\n")
        return 1
    if ns.max_degree < 0:
        sys.stderr.write("cychom: --max-degree must be nonnegative\n")
        return 1
    if ns.cap_dim < 1:
        sys.stderr.write("cychom: --cap-dim must be positive\n")
        return 1
    job = JobSpec(command=ns.command, path=ns.path,
                  max_degree=ns.max_degree, fmt=ns.format,
                  validate=not ns.no_validate, cap_dim=ns.cap_dim,
                  certificate=ns.certificate, oracle=ns.oracle,
                  i_know=ns.i_know)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
