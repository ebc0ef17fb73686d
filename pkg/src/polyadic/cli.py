"""``polyadic`` command-line interface.

Every command reads one group document (a JSON file, or ``@name`` for a
built-in), runs its checks and prints a report.  Exit status is 0 when all
findings pass, 1 when any fails and 2 on usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import catalog, kernels
from .config import LIMITS
from .documents import GroupDocument, dense_payload, document_for, dump_document, parse_group_document
from .errors import Incompatible, ParseError, PolyadicError, UnknownCommand
from .group_core import FiniteGroup, enumerate_automorphisms, find_isomorphism
from .morphisms import (
    autotopy_decompose,
    aut_group_structure,
    conjugation_check,
    decompose_hom_abelian,
    decompose_hom_general,
    decompose_hom_to_dern,
    enumerate_automorphisms_brute,
    enumerate_automorphisms_structural,
    enumerate_autotopies,
    enumerate_autotopies_brute,
    enumerate_homomorphisms,
    is_homomorphism_nary,
    isotopy_to_dern,
)
from .polyadic_core import (
    PolyadicGroup,
    PolyadicQuasigroup,
    check_dornte,
    check_skew_distribution,
    commutative_base_points,
    der_n,
    derive,
    evaluate,
    flat_index,
    hg_decompose,
    idempotents,
    is_medial,
    is_semiabelian,
    retract,
    skews,
    z_star,
)
from .report import Finding, Report, emit_report
from .representations import (
    FieldSpec,
    as_polyadic_homomorphism,
    build_representation,
    decompose_representation,
    degree1_pairs,
    enumerate_degree1_reps,
)

COMMANDS = ("validate", "derive", "skew", "dornte", "retract", "hg", "idempotents", "semiabelian",
            "medial", "aut", "autotopies", "homs", "decompose", "reps", "check-all")


class UsageError(PolyadicError, ValueError):
    pass


def load_document(ref: str) -> GroupDocument:
    """A file path, or ``@name`` for a built-in group."""
    if ref.startswith("@"):
        name = ref[1:]
        if name in catalog.BASES:
            return document_for(catalog.named_binary(name))
        if name in catalog.NAMED_SPECS:
            return document_for(catalog.named(name))
        raise ParseError(f"unknown built-in {name!r}; choose from {', '.join(catalog.names())}")
    try:
        text = Path(ref).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {ref}: {exc.strerror}") from exc
    return parse_group_document(text)


@dataclass
class Context:
    doc: GroupDocument
    args: argparse.Namespace
    target: Optional[GroupDocument] = None

    @property
    def budget(self) -> int:
        return LIMITS.exhaustive_budget if self.args.budget is None else self.args.budget

    @property
    def seed(self) -> int:
        return self.args.seed

    def view(self, doc: Optional[GroupDocument] = None) -> PolyadicGroup:
        """The document as an n-ary group; binary groups become ``der^N`` at ``--arity``."""
        value = (doc or self.doc).value
        if isinstance(value, FiniteGroup):
            return der_n(value, self.args.arity)
        if isinstance(value, PolyadicQuasigroup):
            raise Incompatible("this command needs an n-ary group, not a quasigroup")
        return value

    def derived(self, doc: Optional[GroupDocument] = None) -> PolyadicGroup:
        """The n-ary group with a derived form attached (recovered at base point 0 if absent)."""
        pg = self.view(doc)
        return pg if pg.spec is not None else derive(hg_decompose(pg, 0))

    def base_points(self, pg) -> list[int]:
        bp = self.args.base_point
        if bp is None:
            return list(pg.elements())
        if not 0 <= bp < pg.order:
            raise UsageError(f"--base-point {bp} outside 0..{pg.order - 1}")
        return [bp]


# --- individual commands ------------------------------------------------------

def cmd_validate(ctx: Context, rep: Report):
    value = ctx.doc.value
    if isinstance(value, FiniteGroup):
        rep.add(Finding.of("group-axioms", True, {"order": value.order, "abelian": value.is_abelian}))
        return
    if isinstance(value, PolyadicQuasigroup):
        rep.add(Finding.of("quasigroup", True, {"order": value.order, "n": value.n,
                                                "associative": value.is_associative()}))
        return
    rep.add(Finding.of("n-ary-group", True, {"order": value.order, "n": value.n,
                                             "validation": value.validation}))
    if value.spec is not None and value.order ** (2 * value.n - 1) <= LIMITS.assoc_budget:
        bad = kernels.assoc_witness(value.table, value.order, value.n)
        rep.add(Finding.of("associativity", bad is None, {"cases": value.order ** (2 * value.n - 1)},
                           [] if bad is None else [bad]))


def cmd_derive(ctx: Context, rep: Report):
    pg = ctx.derived()
    spec = pg.spec
    bad = next((t for t in _some_tuples(pg) if spec.evaluate(t) != int(pg.table[flat_index(t, pg.order)])), None)
    rep.add(Finding.of("dense-table", bad is None, {"order": pg.order, "n": pg.n, "entries": pg.order ** pg.n},
                       [] if bad is None else [bad]))
    if ctx.args.output and ctx.args.command == "derive":
        Path(ctx.args.output).write_text(dump_document(dense_payload(pg)))


def _some_tuples(pg, limit: int = 20000):
    for i, t in enumerate(itertools.product(pg.elements(), repeat=pg.n)):
        if i >= limit:
            return
        yield t


def cmd_skew(ctx: Context, rep: Report):
    pg = ctx.view()
    sk = skews(pg)
    bad = [x for x in pg.elements() if evaluate(pg, [x] * (pg.n - 1) + [sk[x]]) != x]
    rep.add(Finding.of("skew", not bad, {"skew": sk}, bad))
    spec = pg.spec
    if spec is not None and spec.is_der_n and pg.n == 3:
        wrong = [x for x in pg.elements() if sk[x] != spec.base.inv(x)]
        rep.add(Finding.of("ternary-skew-is-inverse", not wrong, {"cases": pg.order}, wrong))


def cmd_dornte(ctx: Context, rep: Report):
    rep.add(Finding.from_check("dornte", check_dornte(ctx.view())))


def cmd_retract(ctx: Context, rep: Report):
    pg = ctx.view()
    points = ctx.base_points(pg)
    rets = {a: retract(pg, a) for a in points}
    rep.add(Finding.of("retract-is-group", True,
                       {"base_points": len(points), "identities": [rets[a].identity for a in points]}))
    first = rets[points[0]]
    bad = [a for a in points if find_isomorphism(first, rets[a], cap=max(first.order, LIMITS.brute_cap)) is None]
    rep.add(Finding.of("retracts-isomorphic", not bad, {"pairs": len(points)},
                       [[points[0], a] for a in bad]))


def cmd_hg(ctx: Context, rep: Report):
    pg = ctx.view()
    points = ctx.base_points(pg)
    specs = {a: hg_decompose(pg, a) for a in points}
    bad = [a for a, s in specs.items() if derive(s) != pg]
    rep.add(Finding.of("hg-round-trip", not bad, {"base_points": len(points)}, bad))
    a = points[0]
    s = specs[a]
    rep.add(Finding.of("hg-decomposition", True, {"base_point": a, "identity": s.base.identity,
                                                  "theta": list(s.theta.images), "b": s.b}))


def cmd_idempotents(ctx: Context, rep: Report):
    pg = ctx.view()
    idem = idempotents(pg)
    counts = {"idempotents": idem}
    if pg.spec is not None and pg.spec.b == pg.spec.base.identity:
        counts["z_star"] = z_star(pg)
    rep.add(Finding.of("idempotents", True, counts))


def _chain(ctx: Context, rep: Report, pg: PolyadicGroup):
    semi = is_semiabelian(pg)
    rep.add(Finding.of("semiabelian", True, {"semiabelian": semi,
                                             "commutative_base_points": commutative_base_points(pg)}))
    if semi:
        med = is_medial(pg, budget=ctx.budget, seed=ctx.seed)
        rep.add(Finding.from_check("semiabelian=>medial", med))
        if med:
            rep.add(Finding.from_check("medial=>skew-distribution",
                                       check_skew_distribution(pg, budget=ctx.budget, seed=ctx.seed)))


def cmd_semiabelian(ctx: Context, rep: Report):
    _chain(ctx, rep, ctx.view())


def cmd_medial(ctx: Context, rep: Report):
    pg = ctx.view()
    med = is_medial(pg, budget=ctx.budget, seed=ctx.seed)
    rep.add(Finding.from_check("medial", med))
    if med:
        rep.add(Finding.from_check("skew-distribution",
                                   check_skew_distribution(pg, budget=ctx.budget, seed=ctx.seed)))


def cmd_aut(ctx: Context, rep: Report):
    pg = ctx.derived()
    g = pg.spec.base
    method = ctx.args.method or "both"
    if method not in ("brute", "structural", "both"):
        raise UsageError(f"aut --method must be brute, structural or both, not {method!r}")
    brute = structural = None
    if method in ("brute", "both"):
        brute = set(enumerate_automorphisms_brute(pg, workers=ctx.args.workers))
        rep.add(Finding.of("aut-brute", True, {"count": len(brute)}))
    if method in ("structural", "both"):
        decs = enumerate_automorphisms_structural(pg)
        psis = [d.reconstruct(g) for d in decs]
        structural = set(psis)
        rep.add(Finding.of("aut-structural", True, {"count": len(structural), "pairs": len(decs)}))
        dup = sorted({p.images for p in psis if psis.count(p) > 1})
        rep.add(Finding.of("aut-decomposition-unique", not dup, {"pairs": len(decs)}, dup))
    if brute is not None and structural is not None:
        diff = sorted(brute ^ structural)
        rep.add(Finding.of("aut-sets-equal", not diff, {"brute": len(brute), "structural": len(structural)},
                           [m.images for m in diff[:1]]))
    if method != "brute" and pg.spec.b == g.identity:
        st = aut_group_structure(pg)
        for chk in st.checks:
            rep.add(Finding.from_check(f"aut-structure:{chk.name}", chk))


def cmd_autotopies(ctx: Context, rep: Report):
    pg = ctx.derived()
    g = pg.spec.base
    method = ctx.args.method or "search"
    if method not in ("search", "brute", "both"):
        raise UsageError(f"autotopies --method must be search, brute or both, not {method!r}")
    found = None
    if method in ("search", "both"):
        found = enumerate_autotopies(pg, workers=ctx.args.workers)
        rep.add(Finding.of("autotopies", True, {"count": len(found)}))
    if method in ("brute", "both"):
        brute = enumerate_autotopies_brute(pg)
        rep.add(Finding.of("autotopies-brute", True, {"count": len(brute)}))
        if found is not None:
            same = [m.key for m in found] == [m.key for m in brute]
            rep.add(Finding.of("autotopy-methods-agree", same, {"search": len(found), "brute": len(brute)}))
        found = found or brute
    expected = g.order ** pg.n * len(enumerate_automorphisms(g))
    rep.add(Finding.of("autotopy-count", len(found) == expected, {"count": len(found), "expected": expected}))
    if pg.spec.is_der_n:
        decs = [autotopy_decompose(pg, t) for t in found]
        keys = {(d.a_list, d.phi.images) for d in decs}
        rep.add(Finding.of("autotopy-decomposition-unique", len(keys) == len(decs), {"decomposed": len(decs)}))
    else:
        rep.add(Finding.from_check("conjugation-law", conjugation_check(isotopy_to_dern(pg))))
    if len(found) <= 512:
        rep.add(Finding.from_check("autotopy-group", found.check_group()))


def _need_target(ctx: Context) -> PolyadicGroup:
    if ctx.target is None:
        raise UsageError(f"{ctx.args.command} needs --target")
    return ctx.derived(ctx.target)


def _hom_method(ctx: Context) -> str:
    method = ctx.args.method or "auto"
    if method not in ("auto", "raw", "propagate", "both"):
        raise UsageError(f"homs --method must be auto, raw, propagate or both, not {method!r}")
    return method


def _hom_findings(rep: Report, homs, src, tgt, table: bool):
    h = tgt.spec.base
    tally: dict[str, int] = {}
    rows, bad = [], []
    for psi in homs:
        try:
            d = decompose_hom_general(psi, src, tgt)
        except PolyadicError:
            bad.append(list(psi.images))
            continue
        for name, ok in d.conditions:
            tally[name] = tally.get(name, 0) + bool(ok)
        rows.append({"psi": list(psi.images), "a": d.a, "phi": list(d.phi.images),
                     "conditions": {name: ok for name, ok in d.conditions}})
    counts = {"homomorphisms": len(homs), "conditions_holding": tally}
    if table:
        counts["decompositions"] = rows
    rep.add(Finding.of("hom-decomposition", not bad, counts, bad[:1]))
    if tgt.spec.is_der_n:
        bad = _all_decompose(decompose_hom_to_dern, homs, src, tgt)
        rep.add(Finding.of("hom-decomposition-der-n-target", not bad, {"homomorphisms": len(homs)}, bad[:1]))
    if h.is_abelian:
        bad = _all_decompose(decompose_hom_abelian, homs, src, tgt)
        rep.add(Finding.of("hom-decomposition-abelian-target", not bad, {"homomorphisms": len(homs)}, bad[:1]))


def _all_decompose(fn, homs, src, tgt):
    bad = []
    for psi in homs:
        try:
            d = fn(psi, src, tgt)
            if d.reconstruct(tgt.spec.base) != psi:
                bad.append(list(psi.images))
        except PolyadicError:
            bad.append(list(psi.images))
    return bad


def cmd_homs(ctx: Context, rep: Report):
    src, tgt = ctx.derived(), _need_target(ctx)
    method = _hom_method(ctx)
    if method == "both":
        raw = enumerate_homomorphisms(src, tgt, method="raw")
        prop = enumerate_homomorphisms(src, tgt, method="propagate")
        rep.add(Finding.of("hom-methods-agree", raw == prop, {"raw": len(raw), "propagate": len(prop)}))
        homs = raw
    else:
        homs = enumerate_homomorphisms(src, tgt, method=method)
    rep.add(Finding.of("homomorphisms", True, {"count": len(homs)}))
    _hom_findings(rep, homs, src, tgt, table=False)


def cmd_decompose(ctx: Context, rep: Report):
    src = ctx.derived()
    if ctx.target is not None:
        tgt = _need_target(ctx)
        homs = enumerate_homomorphisms(src, tgt, method=_hom_method(ctx) if ctx.args.method != "both" else "auto")
        _hom_findings(rep, homs, src, tgt, table=True)
        return
    g = src.spec.base
    decs = enumerate_automorphisms_structural(src)
    rows = [{"psi": list(d.reconstruct(g).images), "a": d.a, "phi": list(d.phi.images)} for d in decs]
    brute = set(enumerate_automorphisms_brute(src, workers=ctx.args.workers))
    missing = sorted(brute - {d.reconstruct(g) for d in decs})
    rep.add(Finding.of("automorphism-decompositions", not missing, {"count": len(decs), "decompositions": rows},
                       [m.images for m in missing[:1]]))
    if src.spec.is_der_n:
        tops = enumerate_autotopies(src, workers=ctx.args.workers)
        decs = [autotopy_decompose(src, t) for t in tops]
        rep.add(Finding.of("autotopy-decompositions", True, {"count": len(decs)}))


def _rep_findings(ctx: Context, rep: Report, pg: PolyadicGroup, field: FieldSpec):
    if ctx.args.degree != 1:
        raise UsageError("representations are enumerated at --degree 1 only")
    spec = pg.spec
    found = enumerate_degree1_reps(pg, field)
    enum_keys = {r.key for r in found}
    rep.add(Finding.of("reps-enumerated", True, {"count": len(found), "field": field.p,
                                                 "values": [[m.rows[0][0] for m in r.images] for r in found]}))
    pairs = degree1_pairs(spec, field, literal=ctx.args.literal)
    built, rejected = set(), []
    for gamma, a in pairs:
        try:
            built.add(build_representation(gamma, a, spec, field, literal=ctx.args.literal).key)
        except PolyadicError:
            rejected.append([[m.rows[0][0] for m in gamma], a.rows[0][0]])
    mode = "literal" if ctx.args.literal else "corrected"
    rep.add(Finding.of("reps-built", not rejected, {"pairs": len(pairs), "built": len(built), "mode": mode},
                       rejected[:1], "" if not rejected else "pair accepted by the condition but Gamma(x) A "
                                                             "is not a representation"))
    diff = sorted(enum_keys ^ built)
    rep.add(Finding.of("reps-sets-equal", not diff, {"enumerated": len(enum_keys), "built": len(built),
                                                     "mode": mode},
                       [[row[0][0] for row in k] for k in diff[:1]]))
    bad = []
    for r in found:
        gamma, a = decompose_representation(r)
        if build_representation(gamma, a, spec, field).key != r.key:
            bad.append([m.rows[0][0] for m in r.images])
    rep.add(Finding.of("reps-decompose-round-trip", not bad, {"count": len(found)}, bad[:1]))
    bad = []
    for r in found:
        m, tgt = as_polyadic_homomorphism(r)
        if not is_homomorphism_nary(m, pg, tgt):
            bad.append([v + 1 for v in m.images])
    rep.add(Finding.of("reps-are-nary-homomorphisms", not bad, {"count": len(found)}, bad[:1]))
    if not ctx.args.literal:
        lit = degree1_pairs(spec, field, literal=True)
        genuine = sum(tuple((m @ a).rows for m in gam) in enum_keys for gam, a in lit)
        differs = len(lit) != len(found) or genuine != len(lit)
        detail = (f"literal condition A^(n-1) = Lambda(b) accepts {len(lit)} pairs, {genuine} of them "
                  f"representations, against {len(found)} representations by enumeration"
                  + ("; discrepancy flagged" if differs else ""))
        rep.add(Finding.of("literal-condition-comparison", True,
                           {"corrected": len(pairs), "literal": len(lit), "literal_genuine": genuine,
                            "enumerated": len(found), "discrepancy": differs}, detail=detail))


def cmd_reps(ctx: Context, rep: Report):
    if ctx.args.field is None:
        raise UsageError("reps needs --field p")
    _rep_findings(ctx, rep, ctx.derived(), FieldSpec(ctx.args.field))


def cmd_check_all(ctx: Context, rep: Report):
    cmd_validate(ctx, rep)
    if isinstance(ctx.doc.value, PolyadicQuasigroup):
        return
    pg = ctx.view()
    rep.add(Finding.from_check("dornte", check_dornte(pg)))
    saved = ctx.args.base_point
    ctx.args.base_point = None
    try:
        cmd_retract(ctx, rep)
        cmd_hg(ctx, rep)
    finally:
        ctx.args.base_point = saved
    _chain(ctx, rep, pg)
    if pg.order <= LIMITS.brute_cap:
        ctx.args.method = "both"
        cmd_aut(ctx, rep)
    if ctx.args.field is not None:
        _rep_findings(ctx, rep, ctx.derived(), FieldSpec(ctx.args.field))


HANDLERS: dict[str, Callable[[Context, Report], None]] = {
    "validate": cmd_validate, "derive": cmd_derive, "skew": cmd_skew, "dornte": cmd_dornte,
    "retract": cmd_retract, "hg": cmd_hg, "idempotents": cmd_idempotents, "semiabelian": cmd_semiabelian,
    "medial": cmd_medial, "aut": cmd_aut, "autotopies": cmd_autotopies, "homs": cmd_homs,
    "decompose": cmd_decompose, "reps": cmd_reps, "check-all": cmd_check_all,
}


def run_command(name: str, args: argparse.Namespace) -> Report:
    """Dispatch ``name`` on the documents named in ``args``."""
    if name not in HANDLERS:
        raise UnknownCommand(f"unknown command {name!r}")
    args.command = name
    doc = load_document(args.document)
    target = load_document(args.target) if getattr(args, "target", None) else None
    h = hashlib.sha256(doc.digest.encode())
    if target is not None:
        h.update(target.digest.encode())
    ctx = Context(doc, args, target)
    rep = Report(name, h.hexdigest(), seed=ctx.seed, budget=ctx.budget)
    HANDLERS[name](ctx, rep)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyadic", description="Construct, validate and decompose finite n-ary groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("document", help="group document (JSON file) or @name for a built-in")
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--seed", type=int, default=LIMITS.seed, help="sampling seed (default %(default)s)")
    p.add_argument("--budget", type=int, default=None,
                   help=f"exhaustive-check budget before sampling (default {LIMITS.exhaustive_budget})")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--method", default=None,
                   help="aut: brute|structural|both; autotopies: search|brute|both; homs: auto|raw|propagate|both")
    p.add_argument("--field", type=int, default=None, help="prime p for representations over F_p")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--base-point", type=int, default=None)
    p.add_argument("--target", default=None, help="target document for homs/decompose")
    p.add_argument("--literal", action="store_true", help="use the uncorrected representation condition")
    p.add_argument("--arity", type=int, default=3, help="arity at which a binary group is viewed as der^N")
    p.add_argument("--output", default=None,
                   help="write the report here (for derive: the dense n-ary document)")
    p.add_argument("--list-builtins", action="version", version="\n".join(catalog.names()),
                   help="list @name built-ins and exit")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = run_command(args.command, args)
    except PolyadicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = emit_report(rep, args.format)
    if args.output and args.command != "derive":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
