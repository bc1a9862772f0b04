"""Command-line frontend: construction, verification, and the discovery
pipeline, with deterministic text and JSON output.

Exit codes: 0 success / checks passed, 1 verification failure, 2 usage
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import algebra, kovacs, lemmalab, matfq, qcomb, repmod, schurweyl, subgrpd
from .errors import BudgetExceededError
from .exact import rat_to_str
from .fq import field_new
from .matfq import rank_sequence, semi_idempotent_types

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _default_budget():
    env = os.environ.get("MMU_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(EXIT_USAGE)
    return matfq.DEFAULT_ENUM_BUDGET


def _emit(args, text_lines, json_obj):
    payload = "\n".join(text_lines) + "\n" if args.format == "text" \
        else json.dumps(json_obj, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _grouped_unit_table(n, ctx, r, budget):
    unit = algebra.eta_r(n, ctx, r, budget)
    table = {}
    for key, coeff in unit.terms.items():
        seq = rank_sequence(matfq.MatFq(ctx, n, n, key))
        prev = table.get(seq)
        if prev is not None and prev != coeff:
            raise AssertionError("unit coefficients are not class functions")
        table[seq] = coeff
    return table


def cmd_unit(args):
    ctx = field_new(args.q)
    if not 0 <= args.r <= args.n:
        print("r out of range", file=sys.stderr)
        return EXIT_USAGE
    budget = args.budget
    table = _grouped_unit_table(args.n, ctx, args.r, budget)
    lines = ["%s: %s" % (repr(tuple(k)), rat_to_str(v)) for k, v in sorted(table.items())]
    jso = {"n": args.n, "q": args.q, "r": args.r,
           "classes": [{"rank_sequence": list(k), "coeff": rat_to_str(v)}
                       for k, v in sorted(table.items())]}
    _emit(args, lines, jso)
    return EXIT_OK


def cmd_verify(args):
    ctx = field_new(args.q)
    n, r = args.n, args.r
    budget = args.budget
    checks = []

    unit = algebra.eta_r(n, ctx, r, budget)
    report = algebra.verify_unit(unit, r, enum_budget=budget)
    checks.append(("unit-law" if report.exhaustive else "unit-law(criterion-only)",
                   report.passed))
    suite_cost = ctx.q ** (n * n)
    if report.exhaustive and suite_cost <= 2 ** 14:
        subs = subgrpd.all_subspaces(n, ctx)
        etas = {w.key: algebra.eta_W(w) for w in subs}
        ok = all(algebra.alg_mul(e, e) == e for e in etas.values())
        checks.append(("subspace-idempotents", ok))
        ok = True
        for w1 in subs:
            for w2 in subs:
                if w1.key == w2.key:
                    continue
                if not algebra.alg_mul(etas[w1.key], etas[w2.key]).is_zero():
                    ok = False
        checks.append(("idempotent-orthogonality", ok))
        total = algebra.alg_zero(n, ctx)
        for w in subs:
            if w.r <= r:
                total = algebra.alg_add(total, etas[w.key])
        checks.append(("idempotent-sum", total == unit))
        ok = True
        ident = matfq.identity(ctx, r).entries
        for w in subs:
            if w.r > r:
                continue
            img = subgrpd.psi_r(etas[w.key], r)
            expected = {} if w.r < r else {(w.key, w.key, ident): Fraction(1)}
            if img.terms != expected:
                ok = False
        checks.append(("groupoid-images", ok))
    else:
        checks.append(("suite", True))

    passed = all(ok for _, ok in checks)
    lines = ["%s %s" % ("PASS" if ok else "FAIL", name) for name, ok in checks]
    lines.append("result: %s" % ("pass" if passed else "fail"))
    jso = {"n": n, "q": args.q, "r": r,
           "checks": [{"name": name, "passed": ok} for name, ok in checks],
           "passed": passed}
    _emit(args, lines, jso)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_kovacs(args):
    samples = [int(s) for s in args.samples.split(",")]
    r = args.n - args.corank
    if r < 0:
        print("corank exceeds n", file=sys.stderr)
        return EXIT_USAGE
    coeffs = kovacs.interpolate_coeffs(args.n, r, samples, args.budget)
    lines = ["%s: %s" % (repr(tuple(k)), str(v)) for k, v in sorted(coeffs.items())]
    jso = {"n": args.n, "corank": args.corank, "samples": samples,
           "classes": [{"rank_sequence": list(k), "coeff": v.to_json()}
                       for k, v in sorted(coeffs.items())]}
    _emit(args, lines, jso)
    return EXIT_OK


def cmd_lemmas(args):
    if args.suite != "section3":
        print("unknown suite %r" % args.suite, file=sys.stderr)
        return EXIT_USAGE
    ctx = field_new(args.q)
    n = args.n
    q = args.q
    checks = []

    for total in range(1, n + 1):
        for parts in qcomb.partitions(total):
            nil, semi = lemmalab.count_extensions_jordan(parts, ctx)
            expected = q ** (total - parts[-1])
            checks.append(("jordan-extension-count %r" % (parts,),
                           nil == expected and semi == expected))
            if parts[-1] > 1:
                nil, semi = lemmalab.count_extensions_jordan(parts, ctx, same_rank=True)
                expected = q ** (total - parts[-1] - (len(parts) - 1))
                checks.append(("jordan-extension-count-same-rank %r" % (parts,),
                               nil == expected and semi == expected))

    for dom in [n - 1]:
        ok_all = True
        for t in lemmalab.enumerate_partial_maps(n, dom, ctx):
            counts = lemmalab.e_counts(t)
            srk = lemmalab.pm_stable_rank(t)
            if counts.get(srk, 0) != q ** srk * counts.get(srk + 1, 0):
                ok_all = False
        checks.append(("corank1-extension-identity", ok_all))

    fs = [[1] * (n + 1), list(range(n + 1)), [j * j for j in range(n + 1)]]
    ok_vanish = True
    ok_inner = True
    for t in lemmalab.enumerate_partial_maps(n, n - 1, ctx):
        inside = lemmalab.image_in_domain(t)
        for f in fs:
            for r in range(n):
                if not inside:
                    if not lemmalab.check_vanishing_sum(t, r, f):
                        ok_vanish = False
    for small in matfq.enumerate_matrices(n - 1, ctx):
        if not matfq.is_semi_idempotent(small):
            continue
        rank = matfq.mat_rank(small)
        for f in fs:
            for r in range(rank, n):
                if not lemmalab.check_inner_sum(small, r, f):
                    ok_inner = False
    checks.append(("vanishing-sum", ok_vanish))
    checks.append(("inner-sum-reduction", ok_inner))

    ok_h = True
    for r in range(0, min(n, 2) + 1):
        for t in lemmalab.enumerate_partial_maps(n, r, ctx):
            for j in range(r + 1):
                vals = {lemmalab.h_ell(ell, j, t, n, ctx) for ell in range(n - r + 1)}
                if len(vals) > 1:
                    ok_h = False
    checks.append(("shift-independence", ok_h))

    passed = all(ok for _, ok in checks)
    lines = ["%s %s" % ("PASS" if ok else "FAIL", name) for name, ok in checks]
    lines.append("result: %s" % ("pass" if passed else "fail"))
    jso = {"suite": args.suite, "n": n, "q": q, "passed": passed,
           "checks": [{"name": name, "passed": ok} for name, ok in checks]}
    _emit(args, lines, jso)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_simples(args):
    ctx = field_new(args.q)
    catalog = repmod.simple_catalog(args.n, ctx)
    lines = []
    jso = {"n": args.n, "q": args.q, "simples": []}
    total = 0
    for (r, name), module in catalog:
        total += module.dim ** 2
        lines.append("L(r=%d, %s): dim %d" % (r, name, module.dim))
        jso["simples"].append({"r": r, "name": name, "dim": module.dim})
    wedderburn = total == args.q ** (args.n ** 2)
    lines.append("%s wedderburn-sum-of-squares" % ("PASS" if wedderburn else "FAIL"))
    jso["wedderburn"] = wedderburn
    _emit(args, lines, jso)
    return EXIT_OK if wedderburn else EXIT_FAIL


def cmd_schurweyl(args):
    ctx = field_new(args.q)
    n, m = args.n, args.m
    checks = []
    comm_left = schurweyl.commutant_dimension(n, m, ctx, "left")
    img_right = schurweyl.image_dimension(n, m, ctx, "right")
    checks.append(("double-centralizer-left", comm_left == img_right))
    comm_right = schurweyl.commutant_dimension(n, m, ctx, "right")
    img_left = schurweyl.image_dimension(n, m, ctx, "left")
    checks.append(("double-centralizer-right", comm_right == img_left))
    checks.append(("actions-commute", schurweyl.actions_commute(n, m, ctx)))
    checks.append(("dimension-identity",
                   schurweyl.sw_dimension_identity(n, m, args.q)))
    passed = all(ok for _, ok in checks)
    lines = ["commutant(left)=%d image(right)=%d" % (comm_left, img_right),
             "commutant(right)=%d image(left)=%d" % (comm_right, img_left)]
    lines += ["%s %s" % ("PASS" if ok else "FAIL", name) for name, ok in checks]
    jso = {"n": n, "m": m, "q": args.q,
           "commutant_left": comm_left, "image_right": img_right,
           "commutant_right": comm_right, "image_left": img_left,
           "checks": [{"name": name, "passed": ok} for name, ok in checks],
           "passed": passed}
    _emit(args, lines, jso)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_classes(args):
    types = semi_idempotent_types(args.n)
    lines = []
    jso = {"n": args.n, "types": []}
    for t in types:
        seq = matfq.type_to_rank_sequence(t, args.n)
        lines.append("(%d, %s) -> %s" % (t.stable_rank,
                                         repr(tuple(t.nilpotent_partition)),
                                         repr(tuple(seq))))
        jso["types"].append({"stable_rank": t.stable_rank,
                             "partition": list(t.nilpotent_partition),
                             "rank_sequence": list(seq)})
    lines.append("total: %d" % len(types))
    jso["count"] = len(types)
    _emit(args, lines, jso)
    return EXIT_OK


def cmd_multiplicity(args):
    rng = random.Random(args.seed)
    labels = ["a", "b"]
    m_values = {}
    for label in labels:
        for lam in qcomb.partitions_up_to(args.size):
            v = rng.randrange(-3, 4)
            if v:
                m_values[(label, lam)] = v
    n_values = repmod.multiplicities_n_from_m(m_values, args.size)
    back = repmod.multiplicities_m_from_n(n_values)
    ok = back == m_values
    lines = ["seed=%d size=%d entries=%d" % (args.seed, args.size, len(m_values)),
             "%s inversion-round-trip" % ("PASS" if ok else "FAIL")]
    jso = {"seed": args.seed, "size": args.size, "passed": ok}
    _emit(args, lines, jso)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="matmonoid",
        description="Exact structure theory of matrix monoids over finite fields")
    parser.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default MMU_BUDGET or 2^24)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out", default=None, help="write output to a file")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled (non-exhaustive) checks")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker-count hint; outputs are order-fixed "
                             "and identical for any value")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unit", help="print the rank-ideal unit grouped by class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_unit)

    p = sub.add_parser("verify", help="verify the unit and its idempotent decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kovacs", help="discovery pipeline: solve and interpolate in q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--corank", type=int, required=True)
    p.add_argument("--samples", default="2,3,4,5,7")
    p.set_defaults(func=cmd_kovacs)

    p = sub.add_parser("lemmas", help="brute-force counting-lemma suite")
    p.add_argument("--suite", default="section3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("simples", help="build the simple modules and check dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_simples)

    p = sub.add_parser("schurweyl", help="double-centralizer and dimension checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_schurweyl)

    p = sub.add_parser("classes", help="list semi-idempotent class types")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("multiplicity", help="strip-inversion round trip on random data")
    p.add_argument("--size", type=int, default=6)
    p.set_defaults(func=cmd_multiplicity)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is None:
        args.budget = _default_budget()
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
