"""Walk through the Poincare-sphere computation step by step.

Builds the invariants of the intermediate plumbing trees with twist, extend
and merge moves, prints each loop, and finishes with the dual filling.

    python scripts/poincare_demo.py
"""

from loopfloer import Loop, PlumbingTree, Slope, fill, hf_dim_closed
from loopfloer.loops import format_loops, word_in
from loopfloer.plumbing import format_tree, merge_loops
from loopfloer.twists import ex, twist


def main() -> None:
    print("subtrees of the star with legs -2, -3, -5:")
    legs = {}
    for w in (-2, -3, -5):
        loop = ex(twist(Loop.from_text("e"), "tw", w))
        legs[w] = loop
        print(f"  leg {w}: {loop}  (standard word {word_in(loop, 'standard')})")

    print("\nmerging the -2 and -3 legs:")
    merged = merge_loops(legs[-2], legs[-3])
    print(" ", format_loops(merged))

    print("merging in the -5 leg:")
    merged = merge_loops(merged[0], legs[-5])
    print(" ", format_loops(merged))

    final = twist(merged[0], "tw", -1)
    print("\nafter the central -1 twist (the bounded invariant):")
    print(" ", word_in(final, "standard"))
    print("  dual word:", word_in(final, "dual"))

    res = fill(final, Slope(0, 1))
    print("\ndual filling:", res)

    tree = PlumbingTree({0: -1, 1: -2, 2: -3, 3: -5}, [(0, 1), (0, 2), (0, 3)], None)
    print("\nsame via the tree pipeline:")
    print(format_tree(tree))
    dim, lspace = hf_dim_closed(tree)
    print(f"dim={dim} lspace={'yes' if lspace else 'no'}")


if __name__ == "__main__":
    main()
