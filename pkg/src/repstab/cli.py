"""Command-line front end: ``repstab <command> <target> [options]``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arnold, chars, powerset, squarefree, stability
from .symcore import (
    CHARACTER_CAP,
    GROUP_ENUMERATION_CAP,
    DegreeError,
    StableLabel,
    check_character_cap,
    check_group_cap,
    conjugacy_classes,
    format_subset,
    from_stable,
    partitions,
    points_of,
    subsets_of_size,
    to_stable,
)

SCHEMA_VERSION = "1"

CAPS = (f"caps: brute-force group operations n <= {GROUP_ENUMERATION_CAP}, "
        f"character-only operations n <= {CHARACTER_CAP}")


class UsageError(ValueError):
    pass


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for "
                             f"{args.command} {args.target or ''}".rstrip())


def _fmt_part(p) -> str:
    return "(" + ",".join(map(str, p)) + ")"


# --------------------------------------------------------------------------
# payloads

def _multiplicities(table: chars.MultiplicityTable) -> dict:
    rows = []
    for lam, m in table.entries.items():
        rows.append({"partition": list(lam),
                     "stable": list(to_stable(lam, table.n).mu),
                     "mult": m})
    return {"multiplicities": rows, "dimension": table.dimension()}


def _table_text(table: chars.MultiplicityTable, stable: bool) -> list[str]:
    lines = [f"{'irreducible':<16}{'mult':>6}{'dim':>8}"]
    for lam, m in table.entries.items():
        label = str(to_stable(lam, table.n)) if stable else "V" + _fmt_part(lam)
        lines.append(f"{label:<16}{m:>6}{chars.irreducible_dimension(lam):>8}")
    lines.append(f"total dimension {table.dimension()}")
    lines.append(table.format(stable=stable))
    return lines


def _decompose(args):
    _need(args, "n")
    n = args.n
    t = args.target
    if t == "powerset":
        _need(args, "k")
        check_character_cap(n)
        if not 0 <= args.k <= n:
            raise UsageError(f"need 0 <= k <= n, got k={args.k}")
        table = chars.decompose_character(chars.powerset_character(n, args.k))
    elif t == "powerset-full":
        check_character_cap(n)
        table = chars.decompose_character(chars.powerset_character(n))
    elif t == "squarefree":
        _need(args, "k")
        check_character_cap(n)
        if not 0 <= args.k <= n:
            raise UsageError(f"need 0 <= k <= n, got k={args.k}")
        table = chars.decompose_character(stability.span_character(
            powerset.level_vectors(n, args.k), n, squarefree.sf_act))
    elif t == "lambda2":
        check_character_cap(n)
        table = arnold.lambda2_decompose(n)
    elif t == "yb-ideal":
        check_character_cap(n)
        table = chars.decompose_character(arnold.i2_character_bruteforce(n))
    elif t == "arnold":
        _need(args, "degree")
        check_character_cap(n)
        table = arnold.arnold_decompose(n, args.degree)
    else:
        raise UsageError(f"unknown target {t}")
    result = _multiplicities(table)
    text = _table_text(table, args.stable)
    if t == "arnold" and args.degree == 2:
        audit = _arnold_audit(n)
        if audit:
            result["published"] = audit["payload"]
            text += audit["lines"]
    return result, text


def _arnold_audit(n: int):
    try:
        published = arnold.published_table("arnold2", n)
    except ValueError:
        return None
    computed = arnold.arnold_decompose(n, 2)
    note = arnold.A2_LITERATURE_CONFLICTS.get(n)
    agrees = computed == published
    lines = [f"published table: {published.format()}",
             "agrees with brute force" if agrees else "DISAGREES with brute force"]
    if note:
        lines.append(f"note: {note}")
    return {"payload": {"agrees": agrees, "note": note,
                        **_multiplicities(published)},
            "lines": lines}


def _vector_terms(v) -> list:
    return [{"subset": list(points_of(a)), "coeff": rational(c)} for a, c in v.terms()]


def _basis(args):
    _need(args, "n", "k", "i")
    n, k, i = args.n, args.k, args.i
    check_character_cap(n)
    if args.target == "filtration":
        items = []
        lines = []
        for a, v in zip(subsets_of_size(n, i), powerset.filtration_basis(n, k, i)):
            items.append({"label": f"sigma{format_subset(a)}", "terms": _vector_terms(v)})
            lines.append(f"sigma{format_subset(a)} = {v!r}")
        return {"basis": items, "size": len(items)}, lines + [f"{len(items)} vectors"]
    if args.target == "squarefree":
        dps = squarefree.canonical_delta_set(n, i)
        vecs = squarefree.irreducible_basis(n, k, i)
        items = [{"label": squarefree.factored_form(dp, n, k),
                  "terms": _vector_terms(v)} for dp, v in zip(dps, vecs)]
        lam = (n - i, i) if i else (n,)
        lines = [f"basis of V{_fmt_part(lam)} in Sf_{k}({n}): {len(items)} polynomials"]
        lines += [it["label"] for it in items]
        return {"partition": list(lam), "basis": items, "size": len(items)}, lines
    raise UsageError(f"unknown target {args.target}")


def _class_header(n):
    return [ct for ct, _ in conjugacy_classes(n)]


def _character(args):
    _need(args, "n")
    n = args.n
    check_character_cap(n)
    classes = _class_header(n)
    head = [_fmt_part(ct.partition()) for ct in classes]
    rows = []
    if args.target == "irr":
        for lam in partitions(n):
            chi = chars.irreducible_character(lam)
            label = str(to_stable(lam, n)) if args.stable else "V" + _fmt_part(lam)
            rows.append((label, list(lam), [chi(ct) for ct in classes]))
    elif args.target == "closed-form":
        for mu in chars.CLOSED_FORMS:
            try:
                label = StableLabel(mu, n)
            except ValueError:
                continue
            vals = [chars.closed_form_character(label, ct) for ct in classes]
            oracle = [chars.mn_character(from_stable(label), ct) for ct in classes]
            if vals != oracle:
                raise AssertionError(f"closed form for {label} disagrees with the oracle")
            rows.append((str(label), list(from_stable(label)), vals))
    elif args.target == "module":
        if args.k is None:
            chi = chars.powerset_character(n)
            rows.append((f"LP({n})", None, [chi(ct) for ct in classes]))
        else:
            chi = chars.powerset_character(n, args.k)
            rows.append((f"LP_{args.k}({n})", None, [chi(ct) for ct in classes]))
    else:
        raise UsageError(f"unknown target {args.target}")
    result = {"classes": [list(ct.partition()) for ct in classes],
              "rows": [{"label": lab, "partition": p,
                        "values": [rational(v) for v in vals]} for lab, p, vals in rows]}
    width = max(len(h) for h in head + ["x"]) + 2
    lab_w = max([len(r[0]) for r in rows] + [8]) + 2
    lines = [" " * lab_w + "".join(f"{h:>{width}}" for h in head)]
    for lab, _, vals in rows:
        lines.append(f"{lab:<{lab_w}}" + "".join(f"{str(v):>{width}}" for v in vals))
    return result, lines


def _module_family(args):
    fam = args.family or "lp-k"
    if fam == "lp":
        return stability.lp_family()
    _need(args, "k")
    if fam == "lp-k":
        return stability.lp_k_family(args.k)
    if fam == "sf-k":
        return stability.sf_k_family(args.k)
    if fam == "filtration":
        _need(args, "i")
        return stability.filtration_family(args.k, args.i)
    raise UsageError(f"unknown module family {fam}")


def _set_family(args):
    fam = args.family or "subsets"
    if fam == "subsets":
        _need(args, "k")
        return stability.subsets_family(args.k)
    if fam == "powerset":
        return stability.powerset_family()
    if fam == "natural":
        return stability.natural_family()
    raise UsageError(f"unknown set family {fam}")


def _types_payload(types: dict) -> list:
    return [{"stable": list(mu),
             "values": [{"n": n, "mult": m} for n, m in t.values.items()],
             "entry": t.entry, "onset": t.onset,
             "checked": t.checked, "confirmed": t.confirmed} for mu, t in types.items()]


def _stability(args):
    _need(args, "n_min", "n_max")
    if args.target == "rep":
        fam = _module_family(args)
        rep = stability.rep_stability_report(fam, args.n_min, args.n_max,
                                             monotonicity=True)
        summary = rep.summary()
        result = {"summary": summary,
                  "tables": [{"n": n, **_multiplicities(t)} for n, t in rep.tables.items()],
                  "types": _types_payload(rep.types),
                  "notes": rep.notes}
        lines = [f"{k}: {v}" for k, v in summary.items()]
        for n, t in rep.tables.items():
            lines.append(f"n={n}: {t.format(stable=True)}")
        for mu, t in rep.types.items():
            state = "confirmed" if t.confirmed else "not observed"
            lines.append(f"type ({','.join(map(str, mu))}): onset {t.onset} ({state}), "
                         f"tail multiplicity {t.stable_value}")
        lines += [f"note: {x}" for x in rep.notes]
        return result, lines
    if args.target == "action":
        fam = _set_family(args)
        rep = stability.action_stability_report(fam, args.n_min, args.n_max)
        summary = rep.summary()
        closure = []
        for mu, per in rep.closure.items():
            for n, v in per.items():
                closure.append({"stable": list(mu), "n": n, "holds": v["holds"],
                                "closure": [fam.fmt(x) for x in v["closure"]],
                                "target": [fam.fmt(x) for x in v["target"]]})
        result = {"summary": summary,
                  "inventories": [{"n": n, "orbits": [
                      {"stable": list(mu), "count": c}
                      for mu, c in inv.stable_counts().items()]}
                      for n, inv in rep.inventories.items()],
                  "steps": [{"n": n, **s} for n, s in rep.steps.items()],
                  "types": _types_payload(rep.types),
                  "condition_c": closure,
                  "notes": rep.notes}
        lines = [f"{k}: {v}" for k, v in summary.items()]
        for n, s in rep.steps.items():
            if s["missing_orbits"]:
                lines.append(f"n={n}: orbits not reached {', '.join(s['missing_orbits'])}")
        for c in closure:
            if not c["holds"]:
                lines.append(f"(c) fails for ({','.join(map(str, c['stable']))}) at n={c['n']}: "
                             f"closure reps {c['closure']} vs {c['target']}")
        return result, lines
    raise UsageError(f"unknown target {args.target}")


def _omega(args):
    _need(args, "n")
    n = args.n
    check_group_cap(n)
    bases = arnold.omega_bases(n)
    labels = arnold.omega_labels(n)
    checks = arnold.omega_checks(n)
    result = {"blocks": [], "mutually_orthogonal": checks["mutually_orthogonal"]}
    lines = []
    for lam, vs in bases.items():
        c = checks[lam]
        result["blocks"].append({
            "partition": list(lam), "size": c["size"],
            "independent": c["independent"], "invariant": c["invariant"],
            "character_matches": c["character_matches"],
            "labels": labels[lam]})
        lines.append(f"V{_fmt_part(lam)}: {c['size']} vectors, independent={c['independent']}, "
                     f"invariant={c['invariant']}, character={c['character_matches']}")
        lines += ["  " + s for s in labels[lam]]
    lines.append(f"mutually orthogonal: {checks['mutually_orthogonal']}")
    return result, lines


HANDLERS = {
    "decompose": _decompose,
    "basis": _basis,
    "character": _character,
    "stability": _stability,
    "omega-bases": _omega,
}

TARGETS = {
    "decompose": ["powerset", "powerset-full", "squarefree", "lambda2", "yb-ideal", "arnold"],
    "basis": ["filtration", "squarefree"],
    "character": ["irr", "closed-form", "module"],
    "stability": ["rep", "action"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repstab",
        description="Exact decompositions and stability checks for power-set "
                    "and Arnold-algebra representations of symmetric groups.",
        epilog=CAPS)
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ["decompose", "basis", "character", "stability", "omega-bases"]:
        p = sub.add_parser(cmd, epilog=CAPS)
        if cmd in TARGETS:
            p.add_argument("target", choices=TARGETS[cmd])
        else:
            p.set_defaults(target=None)
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--i", type=int)
        p.add_argument("--degree", type=int, choices=[1, 2])
        p.add_argument("--n-min", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--family", help="stability rep: lp-k, lp, sf-k, filtration; "
                                        "stability action: subsets, powerset, natural")
        p.add_argument("--format", choices=["table", "json"], default="table")
        p.add_argument("--stable", action="store_true", help="stable notation V(mu)_n")
        p.add_argument("--out", help="write the report here instead of stdout")
    return parser


def _params(args) -> dict:
    keys = ["n", "k", "i", "degree", "n_min", "n_max", "family"]
    out = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
    out["stable"] = args.stable
    return out


def render(args) -> str:
    result, lines = HANDLERS[args.command](args)
    command = args.command if args.target is None else f"{args.command} {args.target}"
    if args.format == "json":
        doc = {"command": command, "params": _params(args), "result": result,
               "schema_version": SCHEMA_VERSION}
        return json.dumps(doc, indent=2) + "\n"
    head = command + "  " + " ".join(f"{k}={v}" for k, v in _params(args).items()
                                     if k != "stable")
    return "\n".join([head.rstrip()] + lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = render(args)
    except DegreeError as e:
        print(f"repstab: {e}", file=sys.stderr)
        return 2
    except chars.NotACharacterError as e:
        print(f"repstab: internal failure: {e}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as e:
        print(f"repstab: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"repstab: internal failure: {e}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
