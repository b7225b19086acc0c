"""Sort a small zoo of inputs into the nested solvability classes.

Each input gets four verdicts: SUSY-constructible, shape-invariant,
factorizable along a declared integer hierarchy, exactly solvable.  The sets
nest, so the verdicts can only deepen left to right; search-based answers
are reported as no-within-search rather than flat no.

Run:  python3 demos/classification_zoo.py
"""

import numpy as np

from susyqm import (GridFunction, SuperpotentialFamily, classify_family,
                    classify_record, classify_tabulated, make_grid,
                    venn_graph_text)


def main() -> None:
    grid = make_grid(-10.0, 10.0, 1001)
    rows = [
        ("harmonic, w = a*x",
         classify_family(SuperpotentialFamily.from_expression("a*x"),
                         {"a": 1.0}, grid, search_budget=9)),
        ("cubic, w = x^3",
         classify_family(SuperpotentialFamily.from_expression("x^3"), {},
                         make_grid(-6.0, 6.0, 601), search_budget=9)),
        ("constant, w = 2",
         classify_family(SuperpotentialFamily.from_expression("2"), {},
                         grid, search_budget=9)),
        ("catalog scaling-demo",
         classify_record("scaling-demo")),
        ("tabulated -2 sech^2 x well",
         classify_tabulated(GridFunction(grid, -2.0 / np.cosh(grid.x) ** 2))),
    ]

    print(f"{'input':<28} {'susy':<6} {'shape-inv':<17} "
          f"{'factorizable':<17} {'exactly solvable'}")
    for label, tag in rows:
        print(f"{label:<28} {tag.susy:<6} {tag.shape_invariant:<17} "
              f"{tag.ih_factorizable:<17} {tag.exactly_solvable}")

    print("\nplacement graph for the harmonic family:\n")
    print(venn_graph_text(rows[0][1]))


if __name__ == "__main__":
    main()
