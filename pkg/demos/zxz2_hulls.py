"""Weak hulls in Z * Z^2.

Directions a^k b^k a^(12-2k) leave the a-axis through one flat coordinate,
so the hull stays a tree. Directions a^k b^k c^k a^(12-3k) turn a corner
inside the flat and their hulls pick up ever larger squares.
"""

from __future__ import annotations

from cuspidal.report import recipe, run


def main() -> None:
    rep = run(recipe("paper-remark-zxz2").build_config())
    res = rep["analyses"][0]["results"]
    for fam in ("gamma", "beta"):
        print(f"{fam}:")
        for row in res[fam]["per_k"]:
            print(f"  k={row['k']}  hull {row['hull_vertices']:>3} vertices  "
                  f"slim delta {row['slim']['delta_slim']}  four-point {row['four_point']['delta_four_point']}")
        print(f"  verdict over k = 2..4: {res[fam]['plateau']['verdict']}")


if __name__ == "__main__":
    main()
