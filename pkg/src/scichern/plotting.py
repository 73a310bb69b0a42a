"""Static SVG rendering of the Chern ratio region."""
from __future__ import annotations

import io
from fractions import Fraction
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .chern_core import INF, P_INF, corner, edge_line  # noqa: E402
from .enumeration import PointCloud  # noqa: E402
from .hull import Hull, corner_report, hull_of  # noqa: E402

DISPLAY_CAP = 12

STYLE = {
    "figure.figsize": (7.0, 5.0),
    "font.size": 9,
    "axes.labelsize": 10,
    "axes.linewidth": 0.8,
    "lines.linewidth": 0.9,
    "savefig.dpi": 100,
    # fixed salt and no date: the same input gives the same bytes
    "svg.hashsalt": "scichern",
    "svg.fonttype": "none",
}


def region_figure(cloud: PointCloud, h: Optional[Hull] = None,
                  cap: int = DISPLAY_CAP) -> "matplotlib.figure.Figure":
    """Scatter of the ratio points with corners and supporting lines."""
    h = h or hull_of(cloud)
    corners = corner_report(h, cloud.s1_max).matched
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        xs = [float(p[0]) for p in cloud.points()]
        ys = [float(p[1]) for p in cloud.points()]
        ax.scatter(xs, ys, s=2, c="0.6", linewidths=0, rasterized=True,
                   label=f"ratio points, s1 <= {cloud.s1_max}", gid="cloud")

        x_hi = float(P_INF[0]) + 0.05
        grid = [Fraction(0), P_INF[0] + Fraction(1, 20)]
        for m in [0, *range(1, min(cap, cloud.s1_max) + 1), INF]:
            line = edge_line(m)
            style = {"color": "C0", "alpha": 0.5}
            if m == 0:
                style = {"color": "C3", "label": "line through p1 and p_inf"}
            elif m == INF:
                style = {"color": "C2", "linestyle": "--", "label": "limit line"}
            elif m == 1:
                style["label"] = f"lines through p_m, p_m+1 (m <= {min(cap, cloud.s1_max)})"
            ax.plot([float(g) for g in grid], [float(line.at(g)) for g in grid],
                    gid=f"line-{'inf' if m == INF else m}", **style)

        for i, (m, _) in enumerate(corners):
            p = corner(m)
            ax.plot([float(p[0])], [float(p[1])], marker="o", ms=4, color="k",
                    linestyle="none", gid=f"corner-{m}",
                    label="hull corners" if i == 0 else None)
        ax.plot([float(P_INF[0])], [float(P_INF[1])], marker="*", ms=9, color="C2",
                linestyle="none", gid="p-inf", label="p_inf")

        ax.set_xlim(-0.05, x_hi)
        ax.set_ylim(0, 6)
        ax.set_xlabel("x = c1^3/(c1c2)")
        ax.set_ylabel("y = c3/(c1c2)")
        ax.legend(loc="upper right", frameon=False)
        fig.tight_layout()
    return fig


def render_svg(cloud: PointCloud, h: Optional[Hull] = None,
               cap: int = DISPLAY_CAP) -> bytes:
    fig = region_figure(cloud, h, cap)
    buf = io.BytesIO()
    with plt.rc_context(STYLE):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def write_svg(path, cloud: PointCloud, h: Optional[Hull] = None,
              cap: int = DISPLAY_CAP) -> None:
    data = render_svg(cloud, h, cap)
    with open(path, "wb") as fh:
        fh.write(data)
