"""Show the extreme relabellings of the shuffle S(5,6,12).

The smallest game (905 positions) should come from the shuffle design itself,
the largest (916) from a single relabelling whose non-positions are listed.
"""

from welter_designs import designs as ds
from welter_designs.core import enumerate_k_subsets, fmt_subset
from welter_designs.distributions import game_distribution
from welter_designs.games import Welter, b_position


def main():
    sh = ds.make_shuffle_s5612()
    rep = game_distribution(sh)
    print(f"min: n={rep.min.n}, attained {rep.min.count} time(s), "
          f"is shuffle design: {set(rep.min.witness) == sh.block_set}")
    print(f"max: n={rep.max.n}, attained {rep.max.count} time(s), relabelling {rep.max.perm}")
    missing = sorted(set(enumerate_k_subsets(12, 6)) - b_position(Welter(12, 6), rep.max.witness))
    print(f"{len(missing)} non-positions of the largest game:")
    for P in missing:
        print("  " + fmt_subset(P))


if __name__ == "__main__":
    main()
