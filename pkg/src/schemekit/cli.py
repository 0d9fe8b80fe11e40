"""Command-line front end.

Schemes travel between subcommands as JSON (``build`` writes it to stdout,
every other verb reads a file or stdin). Exit codes: 0 success or verdict
true, 1 verdict false, 2 usage or validation error, 3 internal inconsistency.
"""
import argparse
from dataclasses import asdict, dataclass
import json
import sys

import numpy as np

from . import __version__
from .config import DEFAULT_TOL
from .constructors import build, parse_family
from .constructors.oracles import oracle_compare
from .errors import (
    AxiomViolation,
    BoundsExceeded,
    DegenerateCombination,
    InconsistentProduct,
    MalformedLabeling,
    NonzeroRemainderAtA,
    OracleDomainError,
    SingularBasis,
    SingularSystem,
    SpectrumInconsistent,
    StaircaseGap,
)
from .orders import AbOrder, MonomialOrder
from .polycheck import (
    Labeling,
    check_P,
    check_Q,
    essential_variate_P,
    essential_variate_Q,
    resolve_dual_labeling,
    search_P,
    search_Q,
)
from .polystruct import poly_structure, poly_structure_star, verify_structure, verify_structure_star
from .scheme import scheme_from_json, scheme_to_json
from .spectrum import compute_spectrum, snap, spectrum_report, univariate_p_check, univariate_q_check

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    input: str = "-"
    report: str = None
    order: str = None
    ab: str = None
    tol: float = DEFAULT_TOL
    ell: int = None
    seed: int = 0
    labeling: str = "paper"
    verbose: bool = False


# loading inputs

def _read_doc(path):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc.msg})") from None


def _load(cfg):
    doc = _read_doc(cfg.input)
    scheme = scheme_from_json(doc)
    return doc, scheme


def _order(cfg, doc, ell):
    spec = cfg.order or doc.get("order_hint") or "grlex"
    try:
        return MonomialOrder.parse(spec, ell).with_arity(ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _p_labeling(cfg, doc):
    if cfg.labeling in ("paper", "canonical"):
        if "labeling" not in doc:
            raise UsageError("input carries no canonical labeling; pass --labeling FILE")
        lab = Labeling.from_json(doc["labeling"])
    else:
        lab = Labeling.from_json(_read_doc(cfg.labeling))
    if lab.kind != "P":
        raise UsageError("expected a relation (P) labeling")
    return lab


def _q_labeling(cfg, doc, spectrum):
    if cfg.labeling in ("paper", "canonical"):
        sigs = doc.get("dual_signatures")
        if sigs is None:
            raise UsageError("input carries no dual labeling; pass --labeling FILE")
        sigs = {tuple(a): tuple(_num(x) for x in row) for a, row in sigs}
        return resolve_dual_labeling(spectrum, sigs)
    ldoc = _read_doc(cfg.labeling)
    lab = Labeling.from_json(ldoc)
    if lab.signatures is not None:
        return resolve_dual_labeling(spectrum, lab.signatures)
    if lab.kind != "Q":
        raise UsageError("expected an eigenspace (Q) labeling")
    return lab


def _num(x):
    return complex(x[0], x[1]) if isinstance(x, list) else float(x)


def _enc_num(x):
    x = complex(x)
    return x.real if x.imag == 0 else [x.real, x.imag]


def _spectrum(cfg, scheme):
    return compute_spectrum(scheme.tensor, tol=cfg.tol, seed=cfg.seed, scheme=scheme)


def _lab_text(lab):
    return ", ".join(f"{''.join(map(str, a))}->{i}" for a, i in sorted(lab.to_index.items(), key=lambda t: t[1]))


# subcommands; each returns (exit_code, result_dict, summary_lines)

def cmd_build(cfg, args):
    text = args.family
    if args.power:
        text = f"power({text},{args.power})"
    try:
        spec = parse_family(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    built = build(spec, verify="full" if args.full_verify else "witness")
    extra = {
        "family": built.name,
        "labeling": built.labeling.to_json(),
        "order_hint": built.order_hint,
    }
    if built.dual_signatures is not None:
        extra["dual_signatures"] = [[list(a), [_enc_num(x) for x in row]] for a, row in sorted(built.dual_signatures.items())]
    doc = scheme_to_json(built.scheme, **extra)
    return EXIT_OK, doc, None


def cmd_analyze(cfg, args):
    doc, scheme = _load(cfg)
    t = scheme.tensor
    spec = _spectrum(cfg, scheme)
    up, up_order = univariate_p_check(t)
    uq, uq_order = univariate_q_check(spec, symmetric=scheme.is_symmetric)
    result = {
        "size": scheme.size,
        "class": scheme.class_count,
        "symmetric": scheme.is_symmetric,
        "valencies": list(t.valencies),
        "multiplicities": list(spec.multiplicities),
        "univariate_P": {"verdict": up, "ordering": list(up_order) if up else None},
        "univariate_Q": {"verdict": uq, "ordering": list(uq_order) if uq else None},
    }
    lines = [
        f"{doc.get('family', 'scheme')}: |X|={scheme.size}, class {scheme.class_count}, "
        f"{'symmetric' if scheme.is_symmetric else 'non-symmetric'}",
        f"valencies {list(t.valencies)}, multiplicities {list(spec.multiplicities)}",
        f"univariate P-polynomial: {up}; univariate Q-polynomial: {uq}",
    ]
    if "labeling" in doc:
        lab = Labeling.from_json(doc["labeling"])
        cert = check_P(t, lab, _order(cfg, doc, lab.ell))
        result["canonical_check_P"] = cert.verdict
        lines.append(f"canonical labeling passes check_P: {cert.verdict}")
    if doc.get("dual_signatures") is not None:
        qlab = _q_labeling(RunConfig("analyze", labeling="paper"), doc, spec)
        cert = check_Q(spec, qlab, _order(cfg, doc, qlab.ell), cfg.tol)
        result["canonical_check_Q"] = cert.verdict
        lines.append(f"canonical dual labeling passes check_Q: {cert.verdict}")
    return EXIT_OK, result, lines


def cmd_spectrum(cfg, args):
    _, scheme = _load(cfg)
    spec = _spectrum(cfg, scheme)
    rep = spectrum_report(spec)
    lines = ["P (rows: eigenspaces, columns: relations):"]
    for row in np.asarray(spec.P):
        lines.append("  " + "  ".join(f"{_show(x):>8}" for x in row))
    lines.append(f"multiplicities {list(spec.multiplicities)}")
    lines.append("residuals " + ", ".join(f"{k}={v:.2e}" for k, v in spec.residuals.items()))
    return EXIT_OK, rep, lines


def _show(x):
    x = complex(x)
    if abs(x.imag) > 1e-9:
        return f"{x.real:.4f}{x.imag:+.4f}i"
    s = snap(x.real)
    return str(s) if abs(float(s) - x.real) < 1e-9 else f"{x.real:.6f}"


def _ab_summary(cfg, lab):
    if cfg.ab is None:
        return None
    from .orders import ab_compatible_domain

    try:
        ab = AbOrder.parse(cfg.ab)
        return ab_compatible_domain(ab, lab.domain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check_p(cfg, args):
    doc, scheme = _load(cfg)
    lab = _p_labeling(cfg, doc)
    order = _order(cfg, doc, lab.ell)
    cert = check_P(scheme.tensor, lab, order)
    result = {"certificate": cert.to_json(), "labeling": lab.to_json(), "order": order.spec}
    ab = _ab_summary(cfg, lab)
    if ab is not None:
        result["ab_compatible_domain"] = ab
    lines = [f"check_P ({order.spec}, ell={lab.ell}): {'PASS' if cert.verdict else 'FAIL'}"]
    lines += [f"  violation {c}: generator {i}, alpha {a}, beta {b}" for c, i, a, b in cert.violations[:10]]
    return (EXIT_OK if cert.verdict else EXIT_FALSE), result, lines


def cmd_check_q(cfg, args):
    doc, scheme = _load(cfg)
    spec = _spectrum(cfg, scheme)
    lab = _q_labeling(cfg, doc, spec)
    order = _order(cfg, doc, lab.ell)
    cert = check_Q(spec, lab, order, cfg.tol)
    result = {"certificate": cert.to_json(), "labeling": lab.to_json(), "order": order.spec,
              "residuals": spec.residuals}
    lines = [f"check_Q ({order.spec}, ell={lab.ell}, tol={cfg.tol:g}): {'PASS' if cert.verdict else 'FAIL'}"]
    lines += [f"  violation {c}: generator {i}, alpha {a}, beta {b}" for c, i, a, b in cert.violations[:10]]
    return (EXIT_OK if cert.verdict else EXIT_FALSE), result, lines


def _need_ell(cfg):
    if cfg.ell is None:
        raise UsageError("--ell is required")
    return cfg.ell


def _search_result(hits, order):
    return {
        "order": order.spec,
        "results": [{"generators": list(g), "labeling": lab.to_json()} for g, lab, _ in hits],
    }


def cmd_search_p(cfg, args):
    doc, scheme = _load(cfg)
    ell = _need_ell(cfg)
    order = _order(cfg, {} if cfg.order else doc, ell)
    try:
        hits = search_P(scheme.tensor, ell, order, first_hit=args.first)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"search_P ell={ell} ({order.spec}): {len(hits)} generator tuple(s)"]
    lines += [f"  {list(g)}: {_lab_text(lab)}" for g, lab, _ in hits[:20]]
    return (EXIT_OK if hits else EXIT_FALSE), _search_result(hits, order), lines


def cmd_search_q(cfg, args):
    doc, scheme = _load(cfg)
    ell = _need_ell(cfg)
    order = _order(cfg, {} if cfg.order else doc, ell)
    spec = _spectrum(cfg, scheme)
    try:
        hits = search_Q(spec, ell, order, cfg.tol, first_hit=args.first)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"search_Q ell={ell} ({order.spec}): {len(hits)} generator tuple(s)"]
    lines += [f"  {list(g)}: {_lab_text(lab)}" for g, lab, _ in hits[:20]]
    return (EXIT_OK if hits else EXIT_FALSE), _search_result(hits, order), lines


def cmd_essential(cfg, args):
    doc, scheme = _load(cfg)
    kind = args.kind.upper()
    order = cfg.order or "grlex"
    if kind == "P":
        ell = essential_variate_P(scheme.tensor, order, args.ell_max)
    else:
        ell = essential_variate_Q(_spectrum(cfg, scheme), order, args.ell_max, cfg.tol)
    result = {"kind": kind, "order": order, "essential_variate": ell}
    lines = [f"essential {kind}-variate ({order}): {ell if ell is not None else 'none found'}"]
    return (EXIT_OK if ell is not None else EXIT_FALSE), result, lines


def _structure(cfg, args):
    doc, scheme = _load(cfg)
    if args.side.upper() == "P":
        lab = _p_labeling(cfg, doc)
        order = _order(cfg, doc, lab.ell)
        cert = check_P(scheme.tensor, lab, order)
        if not cert.verdict:
            return None, lab, order, scheme, None
        return poly_structure(scheme.tensor, lab, order), lab, order, scheme, None
    spec = _spectrum(cfg, scheme)
    lab = _q_labeling(cfg, doc, spec)
    order = _order(cfg, doc, lab.ell)
    cert = check_Q(spec, lab, order, cfg.tol)
    if not cert.verdict:
        return None, lab, order, scheme, spec
    return poly_structure_star(spec, lab, order, cfg.tol), lab, order, scheme, spec


def cmd_polys(cfg, args):
    ps, lab, order, _, _ = _structure(cfg, args)
    if ps is None:
        return EXIT_FALSE, {"error": "labeling fails the criterion"}, ["labeling fails the criterion; no polynomials"]
    lines = [f"v_{''.join(map(str, a))} = {p.format(order=order)}" for a, p in sorted(ps.v.items(), key=lambda t: order.key(t[0]))]
    return EXIT_OK, ps.to_json(), lines


def cmd_ideal(cfg, args):
    ps, lab, order, _, _ = _structure(cfg, args)
    if ps is None:
        return EXIT_FALSE, {"error": "labeling fails the criterion"}, ["labeling fails the criterion; no ideal"]
    lines = [f"w_{''.join(map(str, g))} = {w.format(order=order)}" for g, w in ps.G]
    lines.append(f"staircase corners: {[list(c) for c in ps.staircase_corners]}")
    return EXIT_OK, {"G": ps.to_json()["G"], "staircase_corners": [list(c) for c in ps.staircase_corners]}, lines


def cmd_groebner(cfg, args):
    doc, scheme = _load(cfg)
    if args.side.upper() == "P":
        lab = _p_labeling(cfg, doc)
        order = _order(cfg, doc, lab.ell)
        if not check_P(scheme.tensor, lab, order).verdict:
            return EXIT_FALSE, {"error": "labeling fails check_P"}, ["labeling fails check_P"]
        rep = verify_structure(scheme.tensor, lab, order, buchberger=args.buchberger, strict=False)
    else:
        spec = _spectrum(cfg, scheme)
        lab = _q_labeling(cfg, doc, spec)
        order = _order(cfg, doc, lab.ell)
        if not check_Q(spec, lab, order, cfg.tol).verdict:
            return EXIT_FALSE, {"error": "labeling fails check_Q"}, ["labeling fails check_Q"]
        rep = verify_structure_star(spec, lab, order, cfg.tol, strict=False)
    lines = [
        f"Groebner verification ({order.spec}): {'OK' if rep.ok else 'FAILED'}",
        f"  corners {[list(c) for c in rep.corners]}, standard monomials {rep.standard_count} (expected {rep.expected_count})",
    ]
    if rep.buchberger is not None:
        lines.append(f"  Buchberger oracle agrees: {rep.buchberger['agrees']}")
    return (EXIT_OK if rep.ok else EXIT_FALSE), rep.to_json(), lines


def cmd_oracle(cfg, args):
    try:
        spec = parse_family(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    diff = oracle_compare(spec, first_only=args.first)
    lines = [f"oracle-compare {diff.family}: {diff.checked} product(s) checked, "
             f"{'no differences' if diff.ok else f'{len(diff.mismatches)} mismatch(es)'}"]
    if diff.mismatches:
        g, a, o, b = diff.mismatches[0]
        lines.append(f"  first mismatch at generator {g}, index {a}: oracle {o} vs brute force {b}")
    return (EXIT_OK if diff.ok else EXIT_FALSE), diff.to_json(), lines


COMMANDS = {
    "build": cmd_build,
    "analyze": cmd_analyze,
    "spectrum": cmd_spectrum,
    "check-p": cmd_check_p,
    "check-q": cmd_check_q,
    "search-p": cmd_search_p,
    "search-q": cmd_search_q,
    "essential-variate": cmd_essential,
    "polys": cmd_polys,
    "ideal": cmd_ideal,
    "groebner-verify": cmd_groebner,
    "oracle-compare": cmd_oracle,
}


def make_parser():
    parser = argparse.ArgumentParser(prog="schemekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"schemekit {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", nargs="?", default="-", help="scheme JSON file, '-' for stdin")
        p.add_argument("--report", help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
        p.add_argument("--order", help="lex, grlex or weights:[[...],...]")
        p.add_argument("--ab", help="a,b for the (a,b) comparison order")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--ell", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--labeling", default="paper", help="paper, canonical or a labeling JSON file")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("build", help="construct a family and print scheme JSON")
    p.add_argument("family", help="e.g. k3, c5, dodecahedron, hamming:3,2, extension(k3,2), attenuated:2,2,1,1")
    p.add_argument("--power", type=int, help="direct power of the family")
    p.add_argument("--full-verify", action="store_true", help="check every triple, not two witnesses")
    p.add_argument("-o", "--output", help="write scheme JSON here instead of stdout")
    common(p, needs_input=False)
    for name in ("analyze", "spectrum", "check-p", "check-q"):
        common(sub.add_parser(name))
    for name in ("search-p", "search-q"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--first", action="store_true", help="stop at the first hit")
    p = sub.add_parser("essential-variate")
    common(p)
    p.add_argument("--kind", default="P", choices=["P", "Q", "p", "q"])
    p.add_argument("--ell-max", type=int)
    for name in ("polys", "ideal", "groebner-verify"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--side", default="P", choices=["P", "Q", "p", "q"])
        if name == "groebner-verify":
            p.add_argument("--buchberger", action="store_true", help="also run the sympy Buchberger oracle")
    p = sub.add_parser("oracle-compare")
    p.add_argument("family")
    p.add_argument("--first", action="store_true", help="stop at the first mismatch")
    common(p, needs_input=False)
    return parser


def _config(args):
    fields = RunConfig.__dataclass_fields__
    vals = {k: getattr(args, k) for k in fields if hasattr(args, k)}
    return RunConfig(**vals)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def run(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(args)
    try:
        code, result, lines = COMMANDS[args.subcommand](cfg, args)
    except (UsageError, AxiomViolation, MalformedLabeling, BoundsExceeded, OracleDomainError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpectrumInconsistent, SingularSystem, SingularBasis, InconsistentProduct, DegenerateCombination,
            NonzeroRemainderAtA, StaircaseGap) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.subcommand == "build":
        text = json.dumps(result, default=_json_default)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            stdout.write(text + "\n")
        if cfg.report:
            _write_report(cfg, {"family": result["family"], "size": result["size"]})
        return code
    report = _write_report(cfg, result) if cfg.report else _report(cfg, result)
    if getattr(args, "json", False):
        stdout.write(json.dumps(report, default=_json_default, sort_keys=True) + "\n")
    else:
        for line in lines or ():
            stdout.write(line + "\n")
    return code


def _report(cfg, result):
    return {"schema": 1, "tool": "schemekit", "version": __version__, "config": asdict(cfg), "result": result}


def _write_report(cfg, result):
    rep = _report(cfg, result)
    with open(cfg.report, "w") as fh:
        json.dump(rep, fh, default=_json_default, sort_keys=True, indent=1)
    return rep


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
