"""Print the game distributions and symmetric component tables for the small designs.

    python3 scripts/reproduce_tables.py [--jobs N] [--only sts7 sts9 s4511 s5612]
"""

import argparse
import time

from welter_designs import designs as ds
from welter_designs.distributions import game_distribution

DESIGNS = {
    "sts7": ("S(2,3,7), Fano plane", lambda: ds.make_projective_sts(2)),
    "sts9": ("S(2,3,9), affine plane AG(2,3)", lambda: ds.make_affine_sts(2)),
    "s4511": ("S(4,5,11), derived from the shuffle design at 11",
              lambda: ds.derived_design(ds.make_shuffle_s5612(), 11)),
    "s5612": ("S(5,6,12), shuffle numbering", ds.make_shuffle_s5612),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", nargs="+", choices=sorted(DESIGNS), default=list(DESIGNS))
    args = ap.parse_args(argv)
    for key in args.only:
        title, make = DESIGNS[key]
        t0 = time.perf_counter()
        rep = game_distribution(make(), jobs=args.jobs)
        dt = time.perf_counter() - t0
        print(f"# {title}: orbit {rep.orbit_size}, s = {rep.s_values}, {dt:.2f}s")
        print(rep.to_tsv(components=True))
        print(f"min n = {rep.min.n} (x{rep.min.count}), max n = {rep.max.n} (x{rep.max.count})")
        print()


if __name__ == "__main__":
    main()
