"""Census of L-space intervals over random pipeline trees.

Prints, for each sampled single-boundary tree: its loops, rational
longitude, and the exact interval of L-space slopes.

    python scripts/census_intervals.py [--count N] [--seed S]
"""

import argparse
import random
import sys

sys.path.insert(0, "tests")

from loopfloer import cfd, lspace_interval, rational_longitude
from loopfloer.loops import format_loops
from loopfloer.plumbing import format_tree


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    from conftest import random_good_bounded_tree

    rng = random.Random(args.seed)
    for i in range(args.count):
        tree = random_good_bounded_tree(rng, 6)
        loops = cfd(tree)
        try:
            interval = lspace_interval(loops)
        except ValueError as err:
            interval = f"<{err}>"
        print(f"# tree {i}")
        print(format_tree(tree).strip())
        print(f"loops: {format_loops(loops)}")
        print(f"longitude: {rational_longitude(loops)}  interval: {interval}")
        print()


if __name__ == "__main__":
    main()
