"""Sample relabellings of PG(3,2) and report the observed a0 + a3 values."""

import argparse

from welter_designs import designs as ds
from welter_designs.distributions import orbit_size_estimate, projective_by_distribution


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args(argv)
    D = ds.make_projective_sts(3)
    est, exact = orbit_size_estimate(D)
    print(f"orbit size {'=' if exact else '>='} {est}")
    print(f"Veblen-Young closure: {ds.is_projective_vy(D)}")
    v = projective_by_distribution(D, "sample", samples=args.samples, seed=args.seed)
    print(f"{v.samples} samples, seed {v.seed}: s = {list(v.s_values)} -> {v.status}")


if __name__ == "__main__":
    main()
