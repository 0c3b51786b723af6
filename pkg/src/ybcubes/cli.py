"""Command line front end: build, verify, invariants, export, census, iso."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import census as census_mod
from .complex import Report, build_complex, check_cube_condition, check_vh, link
from .field import FieldError, FieldSpec, build_field
from .fixtures import FIXTURES, fixture
from .homology import first_homology
from .presentation import Presentation, PresentationError, build_gamma, extend_with_commuting_factor, structure_presentation
from .ybmap import ConflictError, derive_R, iso_test, relabel, to_matrix, verify_qybe, verify_ybe

log = logging.getLogger("ybcubes")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _add_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("presentation source")
    g.add_argument("--fixture", choices=sorted(FIXTURES))
    g.add_argument("--input", help="presentation JSON file")
    g.add_argument("--q", type=int, help="prime power q; builds Gamma_{M,delta}")
    g.add_argument("--cosets", help="comma separated residues mod q-1 forming M")
    g.add_argument("--delta-exp", type=int, default=1, help="delta = g^d for the default primitive root g")
    g.add_argument("--modulus", help="comma separated coefficients (low degree first) of the degree-2e modulus")
    g.add_argument("--allow-even", action="store_true", help="permit q even (self-inverse generators)")
    g.add_argument("--extend", type=int, metavar="K", help="add a commuting color with 2K generators")
    g.add_argument("--drop-square", type=int, metavar="INDEX", help="delete one relator (mutation testing)")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _read_presentation(path: Path) -> Presentation:
    """Accept a bare presentation or the document written by ``build``."""
    data = json.loads(path.read_text())
    return Presentation.from_json(data.get("presentation", data))


def load_presentation(args) -> tuple[Presentation, dict]:
    extra: dict = {}
    sources = [args.fixture is not None, args.input is not None, args.q is not None]
    if sum(sources) != 1:
        raise PresentationError("give exactly one of --fixture, --input, --q")
    if args.fixture:
        pres = fixture(args.fixture)
    elif args.input:
        pres = _read_presentation(Path(args.input))
    else:
        if not args.cosets:
            raise PresentationError("--q needs --cosets")
        modulus = _ints(args.modulus) if args.modulus else None
        spec = FieldSpec.for_q(args.q, args.delta_exp, modulus)
        table = build_field(spec)
        pres = build_gamma(table, _ints(args.cosets), allow_even=args.allow_even)
        extra["field"] = spec.to_json()
    if args.extend:
        pres = extend_with_commuting_factor(pres, args.extend)
    if args.drop_square is not None:
        pres = pres.without_square(args.drop_square)
    return pres, extra


def _presentation_doc(pres: Presentation, cx=None) -> dict:
    doc = pres.to_json()
    doc["square_names"] = pres.square_names()
    doc["involution_pairs"] = [[pres.labels[x].name, pres.labels[y].name] for x, y in pres.involution_relations]
    if cx is not None:
        doc["valency_vector"] = list(cx.valency_vector)
    return doc


def cmd_build(args) -> int:
    pres, extra = load_presentation(args)
    cx = build_complex(pres)
    rep = check_vh(cx)
    doc = {"presentation": _presentation_doc(pres, cx), "checks": [rep.to_json()], **extra}
    _emit(_dump(doc), args.output)
    if not rep.passed:
        log.error("VH check failed: %s", rep.witnesses[:5])
        return 1
    return 0


def cmd_verify(args) -> int:
    pres, _ = load_presentation(args)
    cx = build_complex(pres)
    wanted = {k for k in ("vh", "cube", "ybe", "qybe") if getattr(args, k)}
    if args.all or not wanted:
        wanted = {"vh", "cube", "ybe", "qybe"}
    reports = []
    if "vh" in wanted:
        reports.append(check_vh(cx))
    if "cube" in wanted:
        reports.append(check_cube_condition(cx))
    if wanted & {"ybe", "qybe"}:
        try:
            R = derive_R(cx)
        except ConflictError as exc:
            reports.append(_failed("derive_R", str(exc)))
        else:
            if "ybe" in wanted:
                reports.append(verify_ybe(R))
            if "qybe" in wanted:
                reports.append(verify_qybe(R))
    ok = all(r.passed for r in reports)
    _emit(_dump({"presentation": pres.name, "pass": ok, "reports": [r.to_json() for r in reports]}), args.output)
    return 0 if ok else 1


def _failed(check, witness):
    return Report(check, False, [witness])


def cmd_invariants(args) -> int:
    pres, _ = load_presentation(args)
    h1 = first_homology(pres)
    doc = {"presentation": pres.name, "H1": str(h1), "H1_json": h1.to_json(),
           "valency_vector": list(pres.valency_vector)}
    try:
        R = derive_R(build_complex(pres))
    except (ConflictError, PresentationError) as exc:
        log.warning("no Yang-Baxter map: %s", exc)
    else:
        sg = first_homology(structure_presentation(R, "group"))
        doc.update({"fixed_pairs": R.fixed_points(), "H1_structure_group": str(sg)})
    _emit(_dump(doc) if args.json else f"H1 = {h1}\n", args.output)
    return 0


def cmd_export(args) -> int:
    pres, _ = load_presentation(args)
    cx = build_complex(pres)
    if args.link:
        i, j = _ints(args.link)
        _emit(link(cx, (i, j)).to_dot(pres.names), args.output)
        return 0
    R = derive_R(cx)
    if args.matrix == "mm":
        text = to_matrix(R).matrix_market()
    elif args.matrix == "csv":
        text = to_matrix(R).csv()
    else:
        text = _dump(R.to_json())
    _emit(text, args.output)
    return 0


def cmd_census(args) -> int:
    guard = census_mod.GUARD
    if args.guard is not None:
        if not args.allow_large:
            log.error("--guard needs --allow-large")
            return 2
        guard = args.guard
    m, l = args.m, args.l
    count = census_mod.enumerate_labeled(m, l, guard)
    formula = census_mod.mass_formula_eval(m, l, guard)
    doc = {
        "m": m, "l": l,
        "labeled_enumeration": count,
        "labeled_mass_formula": formula.count_labeled,
        "mass": str(formula.mass),
        "agree": count == formula.count_labeled,
    }
    if args.k is not None:
        doc["k"] = args.k
        doc["cube_lower_bound"] = census_mod.cube_census_lower_bound(m, l, args.k, guard)
    if args.stream:
        n_bad = 0
        with open(args.stream, "w") as fh:
            for squares in census_mod.iter_labeled(m, l, guard):
                pres = census_mod.census_presentation(m, l, squares)
                n_bad += not check_vh(build_complex(pres)).passed
                fh.write(pres.dumps() + "\n")
        doc["streamed_failing_vh"] = n_bad
    _emit(_dump(doc), args.output)
    return 0 if doc["agree"] and not doc.get("streamed_failing_vh") else 1


def _load_solution(spec: str, seed: int | None):
    path = Path(spec)
    pres = fixture(spec) if spec in FIXTURES else _read_presentation(path)
    R = derive_R(build_complex(pres))
    if seed is not None:
        nu = list(range(R.size))
        random.Random(seed).shuffle(nu)
        R = relabel(R, nu)
    return R


def cmd_iso(args) -> int:
    R1 = _load_solution(args.left, None)
    R2 = _load_solution(args.right, args.relabel_seed)
    res = iso_test(R1, R2, budget=args.budget)
    _emit(_dump(res.to_json()), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ybcubes", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a presentation and its complex data")
    _add_source(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run VH, cube, YBE and QYBE checks")
    _add_source(p)
    for flag in ("vh", "cube", "ybe", "qybe", "all"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="first homology and solution invariants")
    _add_source(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("export", help="matrix, solution table or link graph")
    _add_source(p)
    p.add_argument("--matrix", choices=("mm", "csv"))
    p.add_argument("--link", metavar="I,J", help="DOT graph of the link between colors I and J")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("census", help="count one-vertex VH square complexes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--stream", metavar="FILE.jsonl")
    p.add_argument("--guard", type=int)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("iso", help="isomorphism test of two solutions")
    p.add_argument("left", help="fixture name or presentation JSON")
    p.add_argument("right", help="fixture name or presentation JSON")
    p.add_argument("--relabel-seed", type=int, help="randomly relabel the right-hand solution")
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_iso)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (PresentationError, FieldError, census_mod.CensusGuardError, ConflictError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
