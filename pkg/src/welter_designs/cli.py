"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 orbit cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import designs as ds
from .core import elements, fmt_subset, mask_of, subset_sum
from .designs import Design, DesignError
from .distributions import (
    DEFAULT_CAP,
    OrbitCapExceeded,
    complement_distribution_identity_check,
    game_distribution,
    gf_s12v,
    projective_alpha,
    projective_by_distribution,
)
from .games import (
    GameError,
    Outcome,
    b_position,
    game_for_design,
    hexad_game,
    hexad_positions,
    outcomes,
    welter_moves,
    winning_set,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load(path: str) -> Design:
    return ds.read_design(path)


def _points(s: str) -> list[int]:
    return [int(x) for x in s.replace(",", " ").split()]


def cmd_construct(args) -> int:
    fam = args.family
    if fam == "matching":
        D = ds.make_matching_design(args.w)
    elif fam == "projective-sts":
        D = ds.make_projective_sts(args.d)
    elif fam == "affine-sts":
        D = ds.make_affine_sts(args.d)
    elif fam == "shuffle-s5612":
        D = ds.make_shuffle_s5612()
    elif fam == "cyclic":
        if args.v is None or args.k is None or args.t is None or not args.base:
            raise DesignError("cyclic needs --v, --k, --t and at least one --base")
        D = ds.make_cyclic_design(args.v, [_points(b) for b in args.base], args.k, args.t, args.lam)
    elif fam == "derived":
        if args.source is None or args.point is None:
            raise DesignError("derived needs --from and --point")
        D = ds.derived_design(_load(args.source), args.point)
    else:
        raise DesignError(f"unknown family {fam}")
    rep = ds.is_design(D)
    if not rep:
        print(f"validation failed: {rep.reason}", file=sys.stderr)
        return EXIT_FAIL
    _emit(ds.format_design(D), args.out)
    print(f"{D}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    D = _load(args.design)
    rep = ds.is_design(D)
    print(f"{D.params()}: {'PASS' if rep else 'FAIL ' + rep.reason}")
    return EXIT_OK if rep else EXIT_FAIL


def cmd_solve(args) -> int:
    D = _load(args.design)
    rep = ds.is_design(D)
    if not rep:
        print(f"invalid design: {rep.reason}", file=sys.stderr)
        return EXIT_FAIL
    g = game_for_design(D)
    table = outcomes(g)
    pset = sorted(P for P, o in table.items() if o is Outcome.P)
    terminal = sum(1 for P in g.positions() if not g.out_neighbors(P))
    ok = pset == list(D.blocks)
    print(f"design: {D}")
    print(f"positions: {len(table)}")
    print(f"terminal positions: {terminal}")
    print(f"P-positions: {len(pset)}")
    if args.stats:
        print(f"N-positions: {len(table) - len(pset)}")
        print(f"non-positions: {len(list(g.base.positions())) - len(table)}")
    if args.print_p_positions:
        for P in pset:
            print(" ".join(map(str, elements(P))))
    print("P-set equals block set: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def _mode_kwargs(args) -> dict:
    if args.sample is not None:
        return {"mode": "sample", "samples": args.sample, "seed": args.seed, "jobs": args.jobs}
    return {"mode": "exhaustive", "jobs": args.jobs, "cap": args.cap,
            "force": getattr(args, "force_exhaustive", False)}


def cmd_distribution(args) -> int:
    D = _load(args.design)
    rep = game_distribution(D, **_mode_kwargs(args))
    if args.format == "json":
        text = rep.dumps() + "\n"
    else:
        text = rep.to_tsv(components=args.components)
    _emit(text, args.out)
    if rep.mode == "sample":
        print(f"seed: {rep.seed}", file=sys.stderr)
    return EXIT_OK


def cmd_s_values(args) -> int:
    D = _load(args.design)
    rep = game_distribution(D, **_mode_kwargs(args))
    print(" ".join(map(str, rep.s_values)))
    if rep.mode == "sample":
        print(f"seed: {rep.seed} (sampled, {rep.orbit_size} draws)", file=sys.stderr)
    return EXIT_OK


def cmd_projective_check(args) -> int:
    D = _load(args.design)
    verdicts = {}
    if args.method in ("vy", "both"):
        viol = ds.vy_violation(D)
        verdicts["vy"] = viol is None
        if viol is None:
            print("veblen-young: projective")
        else:
            print("veblen-young: non-projective, witness blocks "
                  + " ".join(fmt_subset(b) for b in viol))
    if args.method in ("game", "both"):
        kw = _mode_kwargs(args)
        kw.pop("force", None)
        v = projective_by_distribution(D, **kw)
        verdicts["game"] = v.projective
        print(f"game distribution ({v.mode}): {v.status}, s = {{{', '.join(map(str, v.s_values))}}}")
        if v.mode == "sample":
            print(f"  seed {v.seed}, {v.samples} samples, projective value {projective_alpha(D.v)}")
        for perm, blocks in v.witnesses:
            print(f"  witness pi = {perm}")
    if len(verdicts) == 2:
        vy, game = verdicts["vy"], verdicts["game"]
        agree = game is None and vy or game == vy
        print("methods agree: " + ("PASS" if agree else "FAIL"))
        return EXIT_OK if agree else EXIT_FAIL
    return EXIT_OK


def cmd_gf_check(args) -> int:
    w = args.w
    coeffs = gf_s12v(w)
    expect = {n: c for n, c in enumerate(coeffs) if c}
    D = ds.make_matching_design(w)
    rep = game_distribution(D, cap=args.cap)
    ok = rep.freq == expect and complement_distribution_identity_check(D, cap=args.cap)
    lo = min(expect)
    print(f"w={w}: orbit {rep.orbit_size}")
    print("generating function: " + " ".join(str(expect[n]) for n in range(lo, max(expect) + 1))
          + f" at x^{lo}..x^{max(expect)}")
    print("distribution:        " + " ".join(str(rep.freq.get(n, 0)) for n in range(lo, max(expect) + 1)))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


# --- hexad ---------------------------------------------------------------

def check_move(P: int, p: int, q: int) -> str | None:
    """Reason the hexad move p -> q from P is illegal, or None."""
    if not P >> p & 1:
        return f"{p} is not in the current set"
    if 0 <= q < 12 and P >> q & 1:
        return f"{q} is already in the current set"
    if not 0 <= q < 12:
        return f"{q} is not a point of [12]"
    if q >= p:
        return f"{q} is not smaller than {p}"
    if subset_sum(P) - p + q < 21:
        return f"the sum would drop to {subset_sum(P) - p + q}, below 21"
    return None


def hexad_reply(P: int, table: dict) -> int | None:
    """Lowest-mask option with outcome P, else the lowest-mask option, else None."""
    opts = sorted(Q for Q in welter_moves(P) if Q in table)
    if not opts:
        return None
    winning = [Q for Q in opts if table[Q] is Outcome.P]
    return winning[0] if winning else opts[0]


def _show(P: int) -> str:
    return f"{' '.join(map(str, elements(P)))}  (sum {subset_sum(P)})"


def hexad_play(start: int, stdin, stdout) -> int:
    table = outcomes(hexad_game())
    if start not in table:
        stdout.write(f"{fmt_subset(start)} is not a hexad position\n")
        return EXIT_USAGE
    P = start
    while True:
        stdout.write(f"position: {_show(P)}\n")
        if hexad_reply(P, table) is None:
            stdout.write("no moves left: the computer made the last move and wins\n"
                         if P != start else "no moves from here: the previous player wins\n")
            return EXIT_OK
        stdout.write("your move (p q): ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            stdout.write("\nbye\n")
            return EXIT_OK
        try:
            p, q = (int(x) for x in line.split())
        except ValueError:
            stdout.write("enter two integers: the point to remove and a smaller point to add\n")
            continue
        reason = check_move(P, p, q)
        if reason:
            stdout.write(f"illegal move: {reason}\n")
            continue
        P = P ^ (1 << p) ^ (1 << q)
        reply = hexad_reply(P, table)
        if reply is None:
            stdout.write(f"position: {_show(P)}\nno moves left: you made the last move and win\n")
            return EXIT_OK
        moved_out = elements(P & ~reply)[0]
        moved_in = elements(reply & ~P)[0]
        stdout.write(f"computer plays {moved_out} {moved_in}\n")
        P = reply


def hexad_verify() -> bool:
    sh = ds.make_shuffle_s5612()
    g = hexad_game()
    pos = hexad_positions()
    win = winning_set(g)
    bpos = b_position(g.base, sh.blocks)
    checks = [
        ("|Position(Hexad)| = 905", len(pos) == 905),
        ("Winning(Hexad) = shuffle blocks (132)", win == set(sh.blocks) and len(win) == 132),
        ("b_position(shuffle blocks) = Position(Hexad)", bpos == set(pos)),
    ]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return all(ok for _, ok in checks)


def cmd_hexad(args) -> int:
    if args.verify:
        return EXIT_OK if hexad_verify() else EXIT_FAIL
    start = mask_of(_points(args.start)) if args.start else mask_of(range(6, 12))
    return hexad_play(start, sys.stdin, sys.stdout)


# --- parser ----------------------------------------------------------------

def _add_mode_flags(p: argparse.ArgumentParser, force: bool = True) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--exhaustive", action="store_true", help="enumerate the whole orbit (default)")
    grp.add_argument("--sample", type=int, metavar="N", help="draw N uniformly random relabellings")
    p.add_argument("--seed", type=int, help="RNG seed for --sample (drawn and echoed if omitted)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest orbit enumerated exhaustively")
    if force:
        p.add_argument("--force-exhaustive", action="store_true", help="ignore the orbit cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="welter-designs",
                                     description="Steiner systems and their Welter-type games")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a design and write it in the text format")
    p.add_argument("family", choices=["matching", "projective-sts", "affine-sts", "shuffle-s5612",
                                      "cyclic", "derived"])
    p.add_argument("--w", type=int, default=2, help="matching: number of blocks")
    p.add_argument("--d", type=int, default=2, help="projective/affine: dimension")
    p.add_argument("--v", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--lam", type=int, default=1)
    p.add_argument("--base", action="append", help="cyclic: base block, e.g. '0 1 3 9' (repeatable)")
    p.add_argument("--from", dest="source", help="derived: input design file")
    p.add_argument("--point", type=int, help="derived: point to derive at")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the t-design condition")
    p.add_argument("design")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="build the induced game and check its P-positions")
    p.add_argument("design")
    p.add_argument("--print-p-positions", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("distribution", help="game distribution over the orbit")
    p.add_argument("design")
    _add_mode_flags(p)
    p.add_argument("--components", action="store_true", help="include symmetric component rows (tsv)")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("s-values", help="realised values of a0 + ak")
    p.add_argument("design")
    _add_mode_flags(p)
    p.set_defaults(func=cmd_s_values)

    p = sub.add_parser("projective-check", help="projectivity of a Steiner triple system")
    p.add_argument("design")
    p.add_argument("--method", choices=["vy", "game", "both"], default="both")
    _add_mode_flags(p, force=False)
    p.set_defaults(func=cmd_projective_check)

    p = sub.add_parser("gf-check", help="compare the S(1,2,2w) generating function with enumeration")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_gf_check)

    p = sub.add_parser("hexad", help="the hexad game")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--play", action="store_true")
    grp.add_argument("--verify", action="store_true")
    p.add_argument("--start", help="starting 6-subset for --play (default '6 7 8 9 10 11')")
    p.set_defaults(func=cmd_hexad)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OrbitCapExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP
    except (DesignError, GameError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE if not isinstance(e, (DesignError, GameError)) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
