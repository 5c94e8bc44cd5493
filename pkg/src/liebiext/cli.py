"""Command-line front end.

Exit codes: 0 valid / success, 1 domain-level failure (with a report), 2 parse,
shape or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .exactnum import ZERO, DimensionMismatch, Scalar, format_scalar, parse_scalar
from .extension import (
    InvalidDatum,
    NotASubBialgebra,
    check_alg_extending,
    check_bi_extending,
    check_coalg_extending,
    extract_datum,
    unified_biproduct,
    unified_coproduct,
    unified_product,
)
from .flag import (
    FLAG_MEANINGS,
    A_space,
    FlagSolutionReport,
    SampleNotInASpace,
    check_flag_datum,
    classify_codim1,
    flag_equivalent,
    flag_from_coords,
    flag_to_bidatum,
    solve_DB,
    wedge_pairs,
)
from .liecore import (
    LieAlgebra,
    LieBialgebra,
    LieCoalgebra,
    SpaceMismatch,
    VerdictReport,
    check_lie_algebra,
    check_lie_bialgebra,
    check_lie_coalgebra,
)
from .serialize import (
    FormatError,
    bialgebra_to_dict,
    corpus_names,
    datum_to_dict,
    detect_kind,
    dumps,
    load_corpus,
    load_path,
)
from .special import (
    BicrossedSumDatum,
    CrossedBiDatum,
    DoubleCrossSumDatum,
    bicrossed_sum,
    crossed_biproduct,
    double_cross_sum,
)

CHECK_KINDS = ("algebra", "coalgebra", "bialgebra", "alg-datum", "coalg-datum", "bi-datum", "flag")
BUILD_KINDS = ("product", "coproduct", "biproduct", "crossed", "bicrossed", "doublecross")


class DomainFailure(Exception):
    """Exit code 1: the input parsed but is invalid for the request."""

    def __init__(self, message: str, report: VerdictReport | None = None):
        super().__init__(message)
        self.report = report


# -- text rendering -----------------------------------------------------------


def fmt_vector(names: Sequence[str], coeffs: Sequence[Scalar]) -> str:
    terms = []
    for name, c in zip(names, coeffs):
        if not c:
            continue
        if c == 1:
            terms.append(name)
        elif c == -1:
            terms.append(f"-{name}")
        elif not c.im:
            terms.append(f"{format_scalar(c)}*{name}")
        else:
            terms.append(f"({format_scalar(c)})*{name}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def coordinate_names(names: Sequence[str]) -> list[str]:
    n = len(names)
    return ([f"D[{names[i]},{names[j]}]" for i in range(n) for j in range(n)]
            + [f"B[{names[i]}^{names[j]}]" for i, j in wedge_pairs(n)])


def fmt_point(base: LieBialgebra, z: Sequence[Scalar]) -> str:
    """``D: x -> .., y -> ..; B = ..`` for a (D, B) coordinate vector."""
    names = base.space.names
    n = base.dim
    images = [fmt_vector(names, [z[i * n + j] for i in range(n)]) for j in range(n)]
    D = "0" if all(not x for x in z[:n * n]) else ", ".join(f"{a} -> {im}" for a, im in zip(names, images))
    wedge = [f"{names[i]}^{names[j]}" for i, j in wedge_pairs(n)]
    return f"D: {D}; B = {fmt_vector(wedge, z[n * n:])}"


def fmt_report(rep: VerdictReport) -> str:
    """Like ``VerdictReport.format`` but with 1-based residual indices."""
    if rep.ok:
        return "valid"
    lines = []
    for v in rep:
        label = f"{v.label}: {FLAG_MEANINGS[v.label]}" if v.label in FLAG_MEANINGS else v.label
        res = "; ".join(f"[{','.join(str(i + 1) for i in ix)}]={format_scalar(c)}" if ix else format_scalar(c)
                        for ix, c in v.entries())
        lines.append(f"{label} @ ({','.join(v.where)}): residual {res}")
    return "\n".join(lines)


def _scalars(v) -> list[str]:
    return [format_scalar(x) for x in v]


def report_to_json(rep: VerdictReport) -> list[dict]:
    out = []
    for v in rep:
        out.append({
            "label": v.label,
            "where": list(v.where),
            "residual": [{"index": [i + 1 for i in ix], "c": format_scalar(c)} for ix, c in v.entries()],
        })
    return out


def _emit(args, text: str, machine: dict) -> None:
    if args.format == "machine":
        sys.stdout.write(dumps(machine))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# -- commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    expect = {"algebra": "bialgebra", "coalgebra": "bialgebra", "bialgebra": "bialgebra",
              "alg-datum": "datum", "coalg-datum": "datum", "bi-datum": "datum", "flag": "flag"}[args.kind]
    _, obj = load_path(args.path, expect)
    rep = {
        "algebra": lambda: check_lie_algebra(obj.algebra),
        "coalgebra": lambda: check_lie_coalgebra(obj.coalgebra),
        "bialgebra": lambda: check_lie_bialgebra(obj),
        "alg-datum": lambda: check_alg_extending(obj.alg),
        "coalg-datum": lambda: check_coalg_extending(obj.coalg),
        "bi-datum": lambda: check_bi_extending(obj),
        "flag": lambda: check_flag_datum(obj),
    }[args.kind]()
    _emit(args, fmt_report(rep), {"kind": args.kind, "ok": rep.ok, "violations": report_to_json(rep)})
    return 0 if rep.ok else 1


def _write_output(args, obj: dict) -> None:
    text = dumps(obj)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        if args.format == "machine":
            sys.stdout.write(dumps({"ok": True, "out": args.out}))
        else:
            sys.stdout.write(f"wrote {args.out}\n")
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    kind, d = load_path(args.datum)
    if kind == "flag":
        d = flag_to_bidatum(d)
    elif kind != "datum":
        raise FormatError(f"{args.datum}: expected a datum or flag file, found a {kind} file")
    name = Path(args.out).stem if args.out else ""
    try:
        if args.kind == "product":
            alg = unified_product(d.alg)
            E = LieBialgebra(alg, LieCoalgebra.trivial(alg.space), name)
        elif args.kind == "coproduct":
            coalg = unified_coproduct(d.coalg)
            E = LieBialgebra(LieAlgebra.abelian(coalg.space), coalg, name)
        elif args.kind == "biproduct":
            E = unified_biproduct(d, name=name)
        else:
            cls, build = {"crossed": (CrossedBiDatum, crossed_biproduct),
                          "bicrossed": (BicrossedSumDatum, bicrossed_sum),
                          "doublecross": (DoubleCrossSumDatum, double_cross_sum)}[args.kind]
            try:
                special = cls.from_bidatum(d)
            except ValueError as exc:
                raise DomainFailure(str(exc)) from None
            E = build(special, name=name)
    except InvalidDatum as exc:
        raise DomainFailure(f"invalid {exc.what}", exc.report) from None
    _write_output(args, bialgebra_to_dict(E))
    return 0


def _index_list(text: str, field: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise FormatError(f"{field}: expected comma-separated integers") from None


def cmd_extract(args) -> int:
    _, E = load_path(args.path, "bialgebra")
    sub = _index_list(args.sub, "--sub")
    if any(not 1 <= i <= E.dim for i in sub) or len(set(sub)) != len(sub):
        raise FormatError(f"--sub: indices must be distinct and in 1..{E.dim}")
    try:
        d = extract_datum(E, [i - 1 for i in sub])
    except NotASubBialgebra as exc:
        raise DomainFailure(f"not a sub-bialgebra: {exc}") from None
    except ValueError as exc:
        raise DomainFailure(str(exc)) from None
    order = [i - 1 for i in sub] + [i for i in range(E.dim) if i + 1 not in sub]
    rebuilt = unified_biproduct(d, check=False)
    if not rebuilt.same_constants(E.permuted(order)):
        raise RuntimeError("extracted datum does not rebuild the input")
    _write_output(args, datum_to_dict(d))
    return 0


def _vector_arg(text: str | None, n: int, field: str) -> list[Scalar]:
    if text is None or text.strip() == "0":
        return [ZERO] * n
    try:
        values = [parse_scalar(p) for p in text.split(",")]
    except ValueError as exc:
        raise FormatError(f"{field}: {exc}") from None
    if len(values) != n:
        raise FormatError(f"{field}: expected {n} comma-separated scalars or 0")
    return values


def cmd_flag_solve(args) -> int:
    _, base = load_path(args.base, "bialgebra")
    n = base.dim
    alpha = _vector_arg(args.alpha, n, "--alpha")
    A = _vector_arg(args.A, n, "--A")
    probe = flag_from_coords(base, alpha, A, [ZERO] * (n * n + len(wedge_pairs(n))))
    pre = check_flag_datum(probe, ("alpha_bracket", "delta_A", "coupling"))
    S = solve_DB(base, alpha, A)
    lines = [f"(D, B) solutions for alpha = ({', '.join(_scalars(alpha))}), "
             f"A = {fmt_vector(base.space.names, A)}: dimension {S.dim}"]
    for k, b in enumerate(S.basis, 1):
        lines.append(f"  basis {k}: {fmt_point(base, b)}")
    if not pre.ok:
        lines.append("alpha and A violate their own conditions:")
        lines.append(fmt_report(pre))
    machine = {"alpha": _scalars(alpha), "A": _scalars(A), "ok": pre.ok, "dim": S.dim,
               "coordinates": coordinate_names(base.space.names),
               "basis": [_scalars(b) for b in S.basis], "violations": report_to_json(pre)}
    _emit(args, "\n".join(lines), machine)
    return 0 if pre.ok else 1


def cmd_flag_equiv(args) -> int:
    _, fd1 = load_path(args.first, "flag")
    _, fd2 = load_path(args.second, "flag")
    if fd1.base != fd2.base:
        raise FormatError("the two flag datums have different bases")
    for label, fd in (("first", fd1), ("second", fd2)):
        rep = check_flag_datum(fd)
        if not rep.ok:
            raise DomainFailure(f"{label} flag datum is invalid", rep)
    w = flag_equivalent(fd1, fd2)
    if w is None:
        _emit(args, "not equivalent", {"equivalent": False})
        return 1
    names = fd1.base.space.names
    text = f"equivalent: U = {fmt_vector(names, w.U.coeffs)}, beta = {format_scalar(w.beta)}"
    _emit(args, text, {"equivalent": True, "U": _scalars(w.U.coeffs), "beta": format_scalar(w.beta)})
    return 0


def _samples(text: str | None, space, n: int) -> list[list[Scalar]]:
    """``0,1,2i``: coefficients on the A-space basis; ``:`` separates coordinates."""
    if not text:
        return []
    basis = space.basis
    out = []
    for item in text.split(","):
        try:
            coeffs = [parse_scalar(p) for p in item.split(":")]
        except ValueError as exc:
            raise FormatError(f"--samples: {exc}") from None
        if len(coeffs) != len(basis):
            raise FormatError(f"--samples: each sample needs {len(basis)} coordinate(s) on the kernel of the cobracket")
        v = [ZERO] * n
        for c, b in zip(coeffs, basis):
            v = [x + c * y for x, y in zip(v, b)]
        out.append(v)
    return out


def _family_lines(rep: FlagSolutionReport) -> list[str]:
    base = rep.base
    names = base.space.names
    lines = []
    merged: dict[tuple, list] = {}
    for s in rep.samples:
        if not s.admissible:
            continue
        for fam in s.families:
            if fam.kind == "B-only":
                merged.setdefault((s.alpha, fam.free), []).append(s.A)
    k = 0
    for (alpha, free), As in merged.items():
        k += 1
        span = ", ".join(fmt_point(base, b).split("; ")[1][4:] for b in free) or "0"
        samples = "; ".join(fmt_vector(names, A) for A in As)
        lines.append(f"family {k}: D = 0, B in span{{{span}}}, classes up to a common nonzero scale of B")
        lines.append(f"  alpha = ({', '.join(_scalars(alpha))}); A at samples: {samples}")
    for s in rep.samples:
        for fam in s.families:
            if fam.kind != "D-led":
                continue
            k += 1
            lead = coordinate_names(names)[fam.lead]
            lines.append(f"family {k}: {fmt_point(base, fam.base_point)}  ({lead} normalized to 1)")
            if fam.free:
                params = ", ".join(fmt_point(base, b) for b in fam.free)
                lines.append(f"  plus free parameters along: {params}; every value a distinct class")
            lines.append(f"  alpha = ({', '.join(_scalars(s.alpha))}); A = {fmt_vector(names, s.A)}")
    return lines


def classify_text(rep: FlagSolutionReport) -> str:
    base = rep.base
    names = base.space.names
    f = rep.facts
    lines = [f"codimension-one flag datums over {base.name or 'the base'} (dim {base.dim})",
             f"facts: rank [g,g] = {f.bracket_rank}, dim Z = {f.center_dim}, dim Der = {f.der_dim}, "
             f"dim Inn = {f.inn_dim}, dim (wedge^2 g)^g = {f.invariant_wedge_dim}",
             f"alpha vanishing on [g,g]: dim {rep.alpha_space.dim}",
             f"kernel of the cobracket: span{{{', '.join(fmt_vector(names, b) for b in rep.A_space.basis)}}}"]
    for s in rep.samples:
        head = f"sample A = {fmt_vector(names, s.A)}:"
        if not s.admissible:
            lines.append(f"{head} no admissible alpha")
            continue
        how = "sampled" if s.alpha_sampled else "forced"
        lines.append(f"{head} alpha = ({', '.join(_scalars(s.alpha))}) ({how}); "
                     f"(D,B) solutions dim {s.DB_space.dim}, U-action image dim {len(s.inner_image)}, "
                     f"canonical slice dim {s.canonical_dim}")
    lines.extend(_family_lines(rep))
    if rep.jump_samples:
        lines.append(f"dimension jumps observed at A = {'; '.join(fmt_vector(names, A) for A in rep.jump_samples)} "
                     f"(generic canonical dimension {rep.generic_dim})")
    lines.extend(f"note: {n}" for n in rep.notes)
    return "\n".join(lines)


def classify_json(rep: FlagSolutionReport) -> dict:
    f = rep.facts
    samples = []
    for s in rep.samples:
        entry = {"A": _scalars(s.A), "alpha": None if s.alpha is None else _scalars(s.alpha)}
        if s.admissible:
            entry.update({
                "alpha_sampled": s.alpha_sampled,
                "DB_dim": s.DB_space.dim,
                "image_dim": len(s.inner_image),
                "canonical_dim": s.canonical_dim,
                "canonical_basis": [_scalars(b) for b in s.canonical_basis],
                "families": [{"kind": fam.kind,
                              "lead": None if fam.lead is None else fam.lead + 1,
                              "base_point": _scalars(fam.base_point),
                              "free": [_scalars(b) for b in fam.free]} for fam in s.families],
            })
        samples.append(entry)
    return {
        "base": rep.base.name,
        "coordinates": coordinate_names(rep.base.space.names),
        "facts": {"bracket_rank": f.bracket_rank, "center_dim": f.center_dim, "der_dim": f.der_dim,
                  "inn_dim": f.inn_dim, "invariant_wedge_dim": f.invariant_wedge_dim},
        "alpha_space": [_scalars(b) for b in rep.alpha_space.basis],
        "A_space": [_scalars(b) for b in rep.A_space.basis],
        "samples": samples,
        "generic_dim": rep.generic_dim,
        "jumps": [_scalars(A) for A in rep.jump_samples],
        "notes": list(rep.notes),
    }


def cmd_flag_classify(args) -> int:
    _, base = load_path(args.base, "bialgebra")
    n = base.dim
    samples = _samples(args.samples, A_space(base), n)
    alpha_samples = [_vector_arg(a, n, "--alpha") for a in (args.alpha or [])]
    try:
        rep = classify_codim1(base, samples, alpha_samples)
    except SampleNotInASpace as exc:
        raise DomainFailure(str(exc)) from None
    _emit(args, classify_text(rep), classify_json(rep))
    return 0


def cmd_corpus(args) -> int:
    if args.action == "list":
        entries = [(name, detect_kind(load_corpus(name))) for name in corpus_names()]
        _emit(args, "\n".join(f"{name}\t{kind}" for name, kind in entries),
              {"entries": [{"name": n, "kind": k} for n, k in entries]})
        return 0
    if not args.name:
        raise FormatError("corpus show needs an entry name")
    sys.stdout.write(dumps(load_corpus(args.name)))
    return 0


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    p = argparse.ArgumentParser(prog="liebiext", description="Extensions of Lie bialgebras over Q(i).")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify a file against its axioms")
    c.add_argument("path")
    c.add_argument("--kind", choices=CHECK_KINDS, required=True)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", parents=[common], help="build a product from a datum file")
    b.add_argument("kind", choices=BUILD_KINDS)
    b.add_argument("datum")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("extract", parents=[common], help="split a bialgebra along a sub-bialgebra")
    e.add_argument("path")
    e.add_argument("--sub", required=True, help="1-based basis indices, e.g. 1,2,3")
    e.add_argument("--out")
    e.set_defaults(func=cmd_extract)

    f = sub.add_parser("flag", help="codimension-one extensions")
    fs = f.add_subparsers(dest="flag_command", required=True)
    s = fs.add_parser("solve", parents=[common], help="solve for (D, B) at fixed alpha and A")
    s.add_argument("base")
    s.add_argument("--alpha")
    s.add_argument("--A")
    s.set_defaults(func=cmd_flag_solve)
    q = fs.add_parser("equiv", parents=[common], help="decide equivalence of two flag datums")
    q.add_argument("first")
    q.add_argument("second")
    q.set_defaults(func=cmd_flag_equiv)
    k = fs.add_parser("classify", parents=[common], help="classify flag datums up to equivalence")
    k.add_argument("base")
    k.add_argument("--samples", help="A samples as coefficients on the kernel of the cobracket")
    k.add_argument("--alpha", action="append", help="alpha sample used when alpha is not forced")
    k.set_defaults(func=cmd_flag_classify)

    cp = sub.add_parser("corpus", parents=[common], help="bundled examples")
    cp.add_argument("action", choices=("list", "show"))
    cp.add_argument("name", nargs="?")
    cp.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainFailure as exc:
        sys.stdout.write(f"{exc}\n")
        if exc.report is not None:
            sys.stdout.write(fmt_report(exc.report) + "\n")
        return 1
    except (FormatError, DimensionMismatch, SpaceMismatch, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
