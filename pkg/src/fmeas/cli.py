"""Command-line front end: exact rational tables from JSON setup files.

Commands: lattice, measure, verify, frattini, embedding, invsys.  All
output is deterministic; FMEAS_THREADS changes speed, never bytes.
Exit codes: 0 success, 2 validation error, 3 cap exceeded, 4 a
verification suite reported a failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .frattini import (
    frattini_subgroup,
    has_embedding_property,
    is_frattini_cover,
    is_frattini_restriction,
)
from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    all_subgroups,
    isomorphic,
    quotient,
)
from .invsys import complete_system, dual_embedding, dual_group, generated_subsystem, level_quotient
from .lattice import SubextLattice
from .measure import TUPLE_CAP, mu1, mu_i, mu_infinity, pushforward_check, transition_matrix
from .setupfile import LoadedSetup, load_setup

SUITES = ("lifts", "markov", "tower", "frattini", "invsys", "all")


def _fmt(x: Fraction) -> str:
    """Lowest terms, integers without the denominator."""
    if x.denominator == 1:
        return "%d" % x.numerator
    return "%d/%d" % (x.numerator, x.denominator)


def _sub_name(G: FiniteGroup, H: Subgroup) -> str:
    return "<%s>" % ",".join(G.label(g) for g in H.canonical_generators())


def _vector_line(values) -> str:
    return ", ".join(_fmt(v) for v in values)


# -- commands -----------------------------------------------------------------


def cmd_lattice(args) -> int:
    loaded = load_setup(args.file)
    lat = SubextLattice(loaded.setup, loaded.base)
    for i in range(len(lat.members)):
        flag = " maximal" if lat.is_maximal(i) else ""
        member = lat.members[i]
        print("%d %s order=%d%s" % (i, lat.member_name(i), member.order, flag))
    return 0


def cmd_measure(args) -> int:
    loaded = load_setup(args.file)
    if args.mode == "iter" and args.steps is None:
        raise GroupError("--steps is required with --mode iter")
    if args.mode != "iter" and args.steps is not None:
        raise GroupError("--steps only applies to --mode iter")
    setup, K = loaded.setup, loaded.base
    lat = SubextLattice(setup, K)
    cap = args.cap if args.cap is not None else TUPLE_CAP
    if args.mode == "mu1":
        vector = mu1(setup, K, cap=cap, lattice=lat)
    elif args.mode == "iter":
        vector = mu_i(setup, K, args.steps, cap=cap, lattice=lat)
    else:
        vector = mu_infinity(setup, K, cap=cap, lattice=lat)
    if args.event is None:
        print(_vector_line(vector.values))
        return 0
    if args.event not in loaded.events:
        raise GroupError('unknown event name "%s"' % args.event)
    indices = {lat.member_index(S) for S in loaded.events[args.event]}
    print(_fmt(sum((vector.values[i] for i in sorted(indices)), Fraction(0))))
    return 0


def cmd_frattini(args) -> int:
    loaded = load_setup(args.file)
    report = frattini_subgroup(loaded.group)
    phi = report.frattini_subgroup
    print("Phi = %s" % _sub_name(loaded.group, phi))
    print("order = %d" % phi.order)
    print("maximal subgroups = %d" % len(report.maximal_subgroups))
    return 0


def cmd_embedding(args) -> int:
    loaded = load_setup(args.file)
    report = has_embedding_property(loaded.group, bound=args.bound)
    print("embedding property: %s" % ("true" if report.holds else "false"))
    if not report.holds:
        A, B, alpha, beta = report.witness
        print("witness A order %d" % A.order)
        print("witness B order %d" % B.order)
        print("witness alpha %s" % list(alpha.image_of))
        print("witness beta %s" % list(beta.image_of))
    return 0


def cmd_invsys(args) -> int:
    loaded = load_setup(args.file)
    G = loaded.group
    if args.level is not None:
        G = level_quotient(G, args.level)
    S = complete_system(G)
    if args.dump:
        sys.stdout.write(S.dump())
        return 0
    print("classes = %d" % len(S.normals))
    print("elements = %d" % len(S.universe))
    if args.level is not None:
        print("level %d quotient: order %d" % (args.level, G.order))
    return 0


# -- verification suites ---------------------------------------------------------


def _reachable(rows):
    m = len(rows)
    reach = [[bool(rows[i][j]) or i == j for j in range(m)] for i in range(m)]
    for k in range(m):
        for i in range(m):
            if reach[i][k]:
                reach[i] = [a or b for a, b in zip(reach[i], reach[k])]
    return reach


def _check_lifts(loaded: LoadedSetup, cap: int):
    setup = loaded.setup
    lat = SubextLattice(setup, loaded.base)
    r_img = setup.r.image_of
    for H in lat.members:
        sub_lat = SubextLattice(setup, H)
        candidates = [
            [h for h in H.elements if r_img[h] == r_img[s]] for s in setup.sigma_prime
        ]
        baseline = None
        first = None
        for lift in product(*candidates):
            v = mu1(setup, H, lift=lift, cap=cap, lattice=sub_lat)
            if baseline is None:
                baseline, first = v, lift
            elif v != baseline:
                return False, [
                    "member %s: lifts %r and %r disagree" % (_sub_name(setup.group, H), first, lift),
                    "  %s vs %s" % (_vector_line(baseline.values), _vector_line(v.values)),
                ]
    return True, []


def _markov_checks(loaded: LoadedSetup, cap: int):
    setup, K = loaded.setup, loaded.base
    lat = SubextLattice(setup, K)
    T = transition_matrix(setup, K, cap=cap, lattice=lat)
    inf = mu_infinity(setup, K, cap=cap, lattice=lat)
    one = mu1(setup, K, cap=cap, lattice=lat)
    m = len(lat.members)

    bad = [i for i in range(m) if (T.rows[i][i] == 1) != lat.is_maximal(i)]
    yield "absorbing-equals-maximal", not bad, ["member %d" % i for i in bad]

    reach = _reachable(T.rows)
    bad = []
    for i in range(m):
        ergodic = all(reach[j][i] for j in range(m) if reach[i][j])
        if ergodic != lat.is_maximal(i):
            bad.append(i)
    yield "ergodic-equals-maximal", not bad, ["member %d" % i for i in bad]

    stepped = [
        sum(inf.values[i] * T.rows[i][j] for i in range(m)) for j in range(m)
    ]
    ok = stepped == list(inf.values)
    yield "limit-fixed-point", ok, [] if ok else [_vector_line(stepped)]

    bad = [
        i
        for i in range(m)
        if (inf.values[i] > 0) != lat.is_maximal(i) or inf.values[i] < 0
    ]
    ok = not bad and sum(inf.values) == 1
    yield "limit-support", ok, ["member %d value %s" % (i, _fmt(inf.values[i])) for i in bad]

    bad = [i for i in range(lat.n_maximal) if not 0 < one.values[i] <= inf.values[i]]
    yield "mu1-below-limit", not bad, [
        "member %d: mu1 %s limit %s" % (i, _fmt(one.values[i]), _fmt(inf.values[i]))
        for i in bad
    ]


def _check_tower(loaded: LoadedSetup, cap: int):
    report = pushforward_check(loaded.tower, loaded.base, max_i=8, cap=cap)
    details = [
        "i=%s pushed=(%s) lower=(%s)"
        % (label, _vector_line(pushed.values), _vector_line(lower.values))
        for label, pushed, lower, equal in report.entries
        if not equal
    ]
    return report.holds, details


def _frattini_checks(loaded: LoadedSetup):
    G = loaded.group
    normals = [H for H in all_subgroups(G) if H.is_normal()]
    projections = []
    routes_ok, routes_detail = True, []
    for N in normals:
        _, pi = quotient(G, N)
        try:
            is_frattini_cover(pi)
        except RuntimeError as e:
            routes_ok = False
            routes_detail.append("kernel %s: %s" % (_sub_name(G, N), e))
        projections.append((N, pi))
    yield "frattini-cover-routes", routes_ok, routes_detail

    bad = []
    for N1, p1 in projections:
        Q1 = p1.target
        reps1 = [
            min(g for g in range(G.order) if p1.image_of[g] == c)
            for c in range(Q1.order)
        ]
        for N2, p2 in projections:
            if N1.mask & N2.mask != N1.mask or N1.mask == N2.mask:
                continue
            mid = GroupHom(Q1, p2.target, tuple(p2.image_of[r] for r in reps1))
            law = is_frattini_cover(p2) == (
                is_frattini_cover(p1) and is_frattini_cover(mid)
            )
            if not law:
                bad.append("chain %s then %s" % (_sub_name(G, N1), _sub_name(G, N2)))
    yield "frattini-composition", not bad, bad

    lat = SubextLattice(loaded.setup, loaded.base)
    bad = []
    for i, H in enumerate(lat.members):
        if lat.is_maximal(i) != is_frattini_restriction(H, loaded.setup.r):
            bad.append("member %d %s" % (i, lat.member_name(i)))
    yield "maximal-equals-frattini-restriction", not bad, bad


def _invsys_checks(loaded: LoadedSetup):
    G = loaded.group
    S = complete_system(G)
    try:
        S.validate()
        yield "system-axioms", True, []
    except GroupError as e:
        yield "system-axioms", False, [str(e)]

    D, _ = dual_group(S)
    ok = isomorphic(D, G)
    yield "dual-round-trip", ok, [] if ok else ["dual group has order %d" % D.order]

    bad = []
    for j in sorted({1, 2, G.order}):
        _, pj = dual_group(
            generated_subsystem(S, [x for x in S.universe if S.sort_of(x) <= j])
        )
        emb = dual_embedding(pj)
        for i in range(1, j + 1):
            image = {emb(x) for x in emb.source.universe if emb.source.sort_of(x) <= i}
            want = {x for x in S.universe if S.sort_of(x) <= i}
            if image != want:
                bad.append("j=%d i=%d" % (j, i))
    yield "level-tower", not bad, bad


def cmd_verify(args) -> int:
    loaded = load_setup(args.file)
    cap = args.cap if args.cap is not None else TUPLE_CAP
    if args.suite == "tower" and loaded.tower is None:
        raise GroupError("the file has no tower section")
    results = []
    if args.suite in ("lifts", "all"):
        ok, details = _check_lifts(loaded, cap)
        results.append(("lift-independence", ok, details))
    if args.suite in ("markov", "all"):
        results.extend(_markov_checks(loaded, cap))
    if args.suite == "tower" or (args.suite == "all" and loaded.tower is not None):
        ok, details = _check_tower(loaded, cap)
        results.append(("tower-pushforward", ok, details))
    if args.suite in ("frattini", "all"):
        results.extend(_frattini_checks(loaded))
    if args.suite in ("invsys", "all"):
        results.extend(_invsys_checks(loaded))
    failed = False
    for name, ok, details in results:
        print("%s %s" % ("PASS" if ok else "FAIL", name))
        if not ok:
            failed = True
            for line in details:
                print("  %s" % line)
    return 4 if failed else 0


# -- argument plumbing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmeas",
        description="Exact rational absorption measures on subextension lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="list the lattice members of the setup")
    p.add_argument("file")
    p.set_defaults(run=cmd_lattice)

    p = sub.add_parser("measure", help="print a measure vector or event value")
    p.add_argument("file")
    p.add_argument("--mode", choices=("mu1", "iter", "inf"), default="inf")
    p.add_argument("--steps", type=int, default=None, help="step count for --mode iter")
    p.add_argument("--event", default=None, help="named event from the file")
    p.add_argument("--cap", type=int, default=None, help="tuple enumeration limit")
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("verify", help="run invariant suites against the file")
    p.add_argument("file")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--cap", type=int, default=None, help="tuple enumeration limit")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("frattini", help="Frattini subgroup of the file's group")
    p.add_argument("file")
    p.set_defaults(run=cmd_frattini)

    p = sub.add_parser("embedding", help="embedding-property verdict with witnesses")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=24, help="diagram size bound")
    p.set_defaults(run=cmd_embedding)

    p = sub.add_parser("invsys", help="complete-system summary, dump, or level quotient")
    p.add_argument("file")
    p.add_argument("--level", type=int, default=None, help="level quotient to compute")
    p.add_argument("--dump", action="store_true", help="print the full system dump")
    p.set_defaults(run=cmd_invsys)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CapExceeded as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except GroupError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
