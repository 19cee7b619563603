"""Command-line front end: classification reports, Wall-form reports,
class-table enumeration, and the verification suites.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 not symplectic,
4 unsupported field, 5 budget exceeded.  All machine output is JSON with
sorted keys so runs are byte-reproducible given (inputs, seed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .fields import field_from_json
from .linalg import Mat
from .symplectic import NotSymplecticError, SymplecticElement, SymplecticSpace

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_NOT_SYMPLECTIC = 3
EXIT_FIELD = 4
EXIT_BUDGET = 5


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _budget() -> int:
    raw = os.environ.get("SYMPINV_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise CliError(EXIT_PARSE, f"SYMPINV_BUDGET must be an integer, got {raw!r}")
    from .smallgroups import ELEMENT_BUDGET

    return ELEMENT_BUDGET


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"cannot parse {path}: {exc}")


def _load_element(matrix_path, form_spec) -> SymplecticElement:
    obj = _load_json(matrix_path)
    try:
        if isinstance(obj, dict) and "space" in obj:
            return SymplecticElement.from_json(obj)
        field = field_from_json(obj["field"])
        if field.kind not in ("prime", "rational"):
            raise CliError(EXIT_FIELD, f"unsupported field {obj['field']!r}")
        M = Mat.from_json(obj, field)
        if form_spec == "standard":
            space = SymplecticSpace(field, M.nrows)
        else:
            gram_obj = _load_json(form_spec)
            space = SymplecticSpace(field, gram=Mat.from_json(gram_obj, field))
        return SymplecticElement(M, space)
    except CliError:
        raise
    except NotSymplecticError as exc:
        raise CliError(EXIT_NOT_SYMPLECTIC, str(exc))
    except ValueError as exc:
        if "prime" in str(exc) or "characteristic" in str(exc) or "field" in str(exc):
            raise CliError(EXIT_FIELD, str(exc))
        raise CliError(EXIT_PARSE, str(exc))
    except KeyError as exc:
        raise CliError(EXIT_PARSE, f"missing key {exc} in input")


def _emit(payload, out_path, fmt="json"):
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = payload
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(report_json) -> str:
    lines = [f"dimension: {len(report_json['matrix']['rows'])}"]
    for key in ("reversible_sp", "bireflectional", "two_skew", "inv_skew",
                "psp_reversible_not_bireflectional"):
        rec = report_json[key]
        wit = " (witness attached)" if rec.get("witness") else ""
        lines.append(f"{key}: {rec['verdict']} [{rec['method']}]{wit}")
    lines.append(f"reversible_gl: {report_json['reversible_gl']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    from .classify import classify

    el = _load_element(args.matrix, args.form)
    group = None
    if el.field.kind == "prime" and el.field.p % 4 != 3 and el.dim <= 4:
        from .smallgroups import cached_group

        if el.space.is_standard():
            group = cached_group(el.dim // 2, el.field.p)
    report = classify(el, group=group, seed=args.seed).to_json()
    if args.recheck:
        from .classify import Witness

        for key in ("reversible_sp", "bireflectional", "two_skew", "inv_skew"):
            wit_json = report[key].get("witness")
            if not wit_json:
                continue
            factors = [Mat.from_json(m, el.field) for m in wit_json.get("factors", [])]
            conj = wit_json.get("conjugator")
            w = Witness(
                kind=wit_json["kind"],
                factors=factors or None,
                conjugator=Mat.from_json(conj, el.field) if conj else None,
            )
            if not w.verify(el):
                raise CliError(EXIT_VERIFY, f"witness for {key} failed to re-verify")
    if args.format == "text":
        _emit(_render_text(report), args.out, fmt="text")
    else:
        _emit(report, args.out)
    return EXIT_OK


def cmd_wall(args) -> int:
    from .symplectic import is_unipotent_cyclic, wall_antitriangular, wall_form

    el = _load_element(args.matrix, args.form)
    data = wall_form(el)
    payload = {
        "gram_omega": data.gram_omega.to_json(),
        "theta": el.field.scalar_to_json(data.theta),
        "theta_class": data.theta_class,
        "path_dimension": data.path_basis.dim,
        "antitriangular": None,
    }
    if el.dim and is_unipotent_cyclic(el) and el.dim % 2 == 0:
        payload["antitriangular"] = wall_antitriangular(el).to_json()
    _emit(payload, args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .classify import classify
    from .smallgroups import BudgetExceededError, generate_group, sp_order

    try:
        G = generate_group(args.n, args.q, limit=_budget())
    except BudgetExceededError as exc:
        raise CliError(EXIT_BUDGET, str(exc))
    except ValueError as exc:
        raise CliError(EXIT_FIELD, str(exc))
    space = G.space()
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow([
        "class_id", "rep", "size", "order_of_element", "elementary_divisors",
        "is_involution", "is_skew_involution", "reversible", "bireflectional",
        "two_skew", "inv_skew", "psp_rev_not_biref",
    ])
    from . import _kernels as K

    for rec in G.conjugacy_classes():
        M = G.to_mat(rec.rep)
        el = SymplecticElement(M, space)
        report = classify(el, group=G, seed=args.seed)
        eldivs = ";".join(
            f"{list(p.to_json())}^{t}x{m}"
            for (p, t), m in sorted(
                report.elementary_divisors.items(),
                key=lambda kv: (kv[0][0].sort_key(), kv[0][1]),
            )
        )
        writer.writerow([
            rec.class_id,
            json.dumps(report.element.matrix.to_json()["rows"]),
            rec.size,
            rec.order_of_element,
            eldivs,
            K.square_kind(rec.rep, G.dim, G.q) == 1,
            K.square_kind(rec.rep, G.dim, G.q) == -1,
            report.reversible_sp.verdict,
            report.bireflectional.verdict,
            report.two_skew.verdict,
            report.inv_skew.verdict,
            report.psp_reversible_not_bireflectional.verdict,
        ])
    _emit(buf.getvalue(), args.out, fmt="text")
    print(f"enumerated Sp({2*args.n},{args.q}): order {sp_order(args.n, args.q)}, "
          f"{len(G.conjugacy_classes())} classes", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import verify as suites

    runner = {
        "theorem2": suites.suite_theorem2,
        "theorem4": suites.suite_theorem4,
        "theorem5": suites.suite_theorem5,
        "corollary": suites.suite_corollary,
        "wall": suites.suite_wall,
        "dickson": suites.suite_dickson,
        "invariants": suites.suite_invariants,
    }.get(args.suite)
    if runner is None:
        raise CliError(EXIT_PARSE, f"unknown suite {args.suite!r}")
    result = runner(n=args.n, q=args.q, seed=args.seed, jobs=args.jobs)
    _emit(result, args.out)
    return EXIT_OK if result["status"] in ("pass", "skipped") else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sympinv")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full classification report for one element")
    p.add_argument("matrix", help="matrix JSON file (or a full element JSON)")
    p.add_argument("--form", default="standard", help="'standard' or a Gram matrix JSON file")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recheck", action="store_true", help="re-verify embedded witnesses")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("wall", help="Wall form report")
    p.add_argument("matrix")
    p.add_argument("--form", default="standard")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_wall)

    p = sub.add_parser("enumerate", help="class table CSV for Sp(2n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
