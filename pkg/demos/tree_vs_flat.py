"""Contraction in a tree against contraction in a flat.

The same axis a^-6..a^6 is measured in a free group ball and in a Z^2
ball. In the tree, projections never spread; in the flat, the worst
projection diameter grows with the distance from the axis.
"""

from __future__ import annotations

from cuspidal.graph import GeodesicPath
from cuspidal.groups import FreeAbelianGroup, FreeGroup, cayley_ball
from cuspidal.hyperbolicity import four_point_delta
from cuspidal.morse import contraction_profile, sublinearity_trend


def axis(ball, half):
    m = ball.model
    return GeodesicPath(tuple(ball.vertex_of(m.power((1,), k)) for k in range(-half, half + 1)))


def main() -> None:
    for name, model in (("F2", FreeGroup(2)), ("Z2", FreeAbelianGroup(2))):
        b = cayley_ball(model, 12)
        prof = contraction_profile(b.graph, axis(b, 6), max_r=8)
        verdict = sublinearity_trend(prof, 4).verdict
        delta = four_point_delta(b.graph, "sampled", budget=200_000, seed=0).delta_four_point
        print(f"{name}: rho_hat = {prof.rho_hat}  trend {verdict}  sampled four-point delta >= {delta}")


if __name__ == "__main__":
    main()
