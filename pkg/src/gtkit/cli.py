"""The `gt` command: one subcommand per pipeline, plain-text reports ending in a RESULT line."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .abelian import AbelianType
from .automatic import BudgetExceeded, StructureInvalid, parse_automatic, verify_structure
from .cellcomplex import cohomology, format_complex, homology, parse_complex
from .center import center_presentation
from .extensions import enumerate_extensions, h2_type
from .fsa import NotPolynomial, decompose_basic, growth_degree, parse_fsa, torsion_candidates
from .isopipeline import (CenterData, Exhausted, Isomorphic, MissingInput, SearchBudget, default_wp,
                          find_isomorphism, theoremA_compare)
from .kbuilder import UnsupportedDimension, build_skeleton, check_face_closure, check_relators
from .presentation import ContractViolation, format_presentation, parse_presentation
from .translation import translation_estimate
from .words import MalformedInput, format_word, parse_word

DOMAIN_ERRORS = (BudgetExceeded, StructureInvalid, ContractViolation, MissingInput, NotPolynomial,
                 UnsupportedDimension)


class Failure(Exception):
    """A completed run whose answer is negative (exit code 1)."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from None


def _aut(path):
    return parse_automatic(_read(path))


def _pres(path):
    return parse_presentation(_read(path))


def _cw(path):
    return parse_complex(_read(path))


def _coeff(text: str) -> AbelianType:
    return AbelianType.parse(text)


def cmd_wp(a, out):
    s = _aut(a.aut)
    w = parse_word(a.word, s.alphabet)
    nf = s.normal_form(w)
    triv = nf == ""
    out.append(f"word: {format_word(w)}")
    out.append(f"normal form: {format_word(nf)}")
    out.append(f"trivial: {'yes' if triv else 'no'}")
    return "trivial" if triv else "nontrivial"


def cmd_center(a, out):
    rep = center_presentation(_aut(a.aut), a.K)
    out.extend(rep.lines())
    if a.out:
        Path(a.out).write_text("\n".join(rep.lines() + [f"RESULT: {rep.type}"]) + "\n")
    return str(rep.type)


def _homology_like(fn, a, out):
    c = _cw(a.cw)
    A = _coeff(a.coeff)
    out.append(f"cells per dimension: {' '.join(str(c.count(n)) for n in range(c.top + 1))}")
    out.append(f"coefficients: {A}")
    res = fn(c, a.dim, A)
    return str(res)


def cmd_homology(a, out):
    return _homology_like(homology, a, out)


def cmd_cohomology(a, out):
    return _homology_like(cohomology, a, out)


def cmd_build_k(a, out):
    s = _aut(a.aut)
    restrict = _read(a.restrict_labels).split() if a.restrict_labels else None
    if restrict is not None:
        restrict = [parse_word(w, s.alphabet) for w in restrict]
    b = build_skeleton(s, a.k, a.d, restrict)
    report = b.report()
    faces = check_face_closure(b)
    rels = check_relators(b, s)
    out.extend(report.rstrip("\n").split("\n"))
    out.append(f"face closure: {'ok' if not faces else 'missing ' + ' '.join(faces[:5])}")
    out.append(f"attach words trivial in G: {'ok' if not rels else 'failing ' + ' '.join(rels[:5])}")
    Path(a.out).write_text(format_complex(b.complex))
    Path(a.out + ".strata").write_text(report)
    counts = "/".join(str(b.complex.count(n)) for n in range(b.complex.top + 1))
    if faces or rels:
        raise Failure(f"inconsistent complex ({counts} cells)")
    return f"built {counts} cells"


def cmd_extensions(a, out):
    c = _cw(a.cw)
    A = _coeff(a.coeff)
    exts = enumerate_extensions(c, A, a.limit)
    out.append(f"H^2 with coefficients {A}: {h2_type(c, A)}")
    d = Path(a.out)
    d.mkdir(parents=True, exist_ok=True)
    index = []
    for e in exts:
        name = f"class_{e.class_index:03d}.pres"
        (d / name).write_text(format_presentation(e.presentation))
        coords = ",".join(map(str, e.coords)) or "-"
        index.append(f"{coords} {name} {e.fingerprint}")
        out.append(f"class {e.class_index} coords ({coords}) abelianization {e.fingerprint}")
    (d / "index.txt").write_text("\n".join(index) + "\n")
    return f"{len(exts)} classes"


def _budget(a) -> SearchBudget:
    return SearchBudget(steps=a.budget, word_length=a.word_length)


def cmd_iso(a, out):
    p1, p2 = _pres(a.p1), _pres(a.p2)
    res = find_isomorphism(p1, p2, default_wp(p1), default_wp(p2), _budget(a))
    if isinstance(res, Exhausted):
        out.append(f"search: {res.reason}")
        raise Failure("exhausted")
    out.append(f"forward: {res[0]}")
    out.append(f"backward: {res[1]}")
    return "isomorphic"


def _center_arg(text: str) -> CenterData:
    # TYPE:word,word  e.g. "Z:z"
    t, _, gens = text.partition(":")
    return CenterData(AbelianType.parse(t), tuple(w for w in gens.split(",") if w))


def cmd_thma(a, out):
    p1, p2 = _pres(a.p1), _pres(a.p2)
    g1 = _aut(a.aut1) if a.aut1 else (_center_arg(a.center1) if a.center1 else None)
    g2 = _aut(a.aut2) if a.aut2 else (_center_arg(a.center2) if a.center2 else None)
    qc = _cw(a.qcw) if a.qcw else None
    coeff = _coeff(a.coeff) if a.coeff else None
    log: list[str] = []
    try:
        res = theoremA_compare(p1, p2, g1, g2, q_complex=qc, coeff=coeff, b=_budget(a), limit=a.limit, log=log)
    finally:
        out.extend(log)
    if isinstance(res, Isomorphic):
        out.append(f"forward: {res.witness[0]}")
        out.append(f"backward: {res.witness[1]}")
    if isinstance(res, Exhausted):
        raise Failure(str(res))
    return str(res)


def cmd_tau(a, out):
    s = _aut(a.aut)
    est = translation_estimate(s, parse_word(a.word, s.alphabet), a.M)
    out.extend(est.lines())
    return f"tau <= {est.inf_bound}"


def cmd_growth(a, out):
    m = parse_fsa(_read(a.fsa))
    g = growth_degree(m)
    out.append(f"states: {m.nstates}")
    if g.degree is not None:
        dec = decompose_basic(m)
        out.append(f"basic languages ({len(dec)}):")
        out.extend(f"  {b}" for b in dec)
        if a.pres:
            p = _pres(a.pres)
            wp = default_wp(p)
            if wp is None:
                raise ContractViolation("torsion candidates need an abelian presentation")
            tc = torsion_candidates(dec, wp, a.p_max)
            out.append("torsion candidates: " + (" ".join(format_word(w) for w in tc) or "none"))
    return str(g)


def cmd_verify_aut(a, out):
    s = _aut(a.aut)
    rep = verify_structure(s, _pres(a.pres), a.radius)
    out.extend(rep.lines())
    if not rep.ok:
        raise Failure("invalid")
    return "valid"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gt", description="Automatic groups, centres, cell complexes and extensions.")
    ap.add_argument("--version", action="version", version=f"gt {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("wp", help="word problem via an automatic structure")
    p.add_argument("--aut", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(fn=cmd_wp)

    p = sub.add_parser("center", help="centre of an automatic group")
    p.add_argument("--aut", required=True)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_center)

    for name, fn in (("homology", cmd_homology), ("cohomology", cmd_cohomology)):
        p = sub.add_parser(name, help=f"{name} of a cell complex")
        p.add_argument("--cw", required=True)
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--coeff", default="Z")
        p.set_defaults(fn=fn)

    p = sub.add_parser("build-k", help="finite skeleton from an automatic structure")
    p.add_argument("--aut", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--restrict-labels")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_build_k)

    p = sub.add_parser("extensions", help="central extensions classified by H^2")
    p.add_argument("--cw", required=True)
    p.add_argument("--coeff", required=True)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_extensions)

    def budget_flags(p):
        p.add_argument("--budget", type=int, default=10_000)
        p.add_argument("--word-length", type=int, default=2)

    p = sub.add_parser("iso", help="search for an isomorphism between presentations")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    budget_flags(p)
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("thmA", help="compare groups through centres, quotients and extensions")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--aut1")
    p.add_argument("--aut2")
    p.add_argument("--center1", help="precomputed centre, e.g. 'Z:z'")
    p.add_argument("--center2")
    p.add_argument("--qcw")
    p.add_argument("--coeff")
    p.add_argument("--limit", type=int, default=9)
    budget_flags(p)
    p.set_defaults(fn=cmd_thma)

    p = sub.add_parser("tau", help="translation number upper bound")
    p.add_argument("--aut", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("-M", type=int, default=4)
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("growth", help="growth of a regular language")
    p.add_argument("--fsa", required=True)
    p.add_argument("--pres", help="abelian presentation for torsion candidates")
    p.add_argument("--p-max", type=int, default=12)
    p.set_defaults(fn=cmd_growth)

    p = sub.add_parser("verify-aut", help="check an automatic structure against a presentation")
    p.add_argument("--aut", required=True)
    p.add_argument("--pres", required=True)
    p.add_argument("--radius", type=int, default=4)
    p.set_defaults(fn=cmd_verify_aut)
    return ap


def run(argv: list[str] | None = None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    out: list[str] = [f"gt {args.cmd}"]
    code = 0
    try:
        result = args.fn(args, out)
    except Failure as e:
        result, code = str(e), 1
    except MalformedInput as e:
        result, code = f"malformed input: {e}", 2
    except DOMAIN_ERRORS as e:
        result, code = f"error: {e}", 1
    out.append(f"RESULT: {result}")
    return code, "\n".join(out) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
