"""How far is a^n from the identity once the horoballs are glued on?

Builds F2 rel <a> over the tube around a^-1024..a^1024 with horoballs of
depth 12, then prints d(e, a^n) next to log2 n.
"""

from __future__ import annotations

import math

from cuspidal.cusped import build_cusped_ball
from cuspidal.groups import FreeGroup, power_tube
from cuspidal.morse import power_path_distortion


def main() -> None:
    F = FreeGroup(2)
    tube = power_tube(F, "a", 1024, 1, [F.subgroup("A", ["a"])])
    cb = build_cusped_ball(tube, 12)
    print(f"cusped space: {cb.graph.vertex_count} vertices, {cb.graph.edge_count} edges")
    res = power_path_distortion(cb, "a", 1024)
    d = dict(zip(res["n"], res["distance"]))
    print(f"{'n':>6} {'d(e,a^n)':>9} {'log2 n':>7} {'ratio':>6}")
    for k in range(1, 11):
        n = 2 ** k
        print(f"{n:>6} {d[n]:>9} {k:>7} {d[n] / k:>6.2f}")
    fit = res["fit"]
    print(f"least squares on n in {fit['range']}: d ~ {fit['slope']:.2f} log2 n + {fit['intercept']:.2f}")
    print(f"word length of a^1024 in the base group: 1024, cusped distance {d[1024]} "
          f"(~{d[1024] / math.log2(1024):.1f} log2 n)")


if __name__ == "__main__":
    main()
