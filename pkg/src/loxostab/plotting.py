"""Deterministic SVG figures for the regions and simulate commands.

Figures are drawn with the object-oriented matplotlib API (no pyplot
state).  Every circle patch carries the ``id`` of its JSON record as its
SVG gid, and the SVG hash salt and date are pinned so repeated runs write
identical bytes.
"""

from __future__ import annotations

import io

import matplotlib
from matplotlib.figure import Figure
from matplotlib.patches import Circle

import numpy as np

from .geometry import viewport

LAYER_STYLE = {
    "apollonius": dict(color="0.6", lw=0.6, ls="--"),
    "S_boundary": dict(color="tab:blue", lw=0.9),
    "h_S_boundary": dict(color="tab:blue", lw=0.9),
    "B_R": dict(color="tab:green", lw=1.2),
    "avoided": dict(color="tab:red", lw=0.8),
}


def _svg_bytes(fig: Figure) -> bytes:
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "loxostab", "svg.fonttype": "path"}):
        fig.savefig(buf, format="svg", metadata={"Date": None}, bbox_inches=None)
    return buf.getvalue().encode()


def _draw_record(ax, rec: dict, window: tuple):
    style = LAYER_STYLE[rec["layer"]]
    if rec["type"] == "circle":
        fill = rec["layer"] == "avoided"
        patch = Circle((rec["center"].real, rec["center"].imag), rec["radius"], fill=fill,
                       fc=(0.84, 0.15, 0.16, 0.25) if fill else "none", ec=style["color"],
                       lw=style["lw"], ls=style.get("ls", "-"))
        patch.set_gid(rec["id"])
        ax.add_patch(patch)
        return
    # a line: draw the segment that spans the window diagonal
    lo, hi = window
    span = abs(hi - lo)
    p, u = rec["point"], rec["direction"]
    seg = np.array([p - span * u, p + span * u])
    (line,) = ax.plot(seg.real, seg.imag, color=style["color"], lw=style["lw"], ls=style.get("ls", "-"))
    line.set_gid(rec["id"])


def _frame(ax, window, title):
    lo, hi = window
    ax.set_xlim(lo.real, hi.real)
    ax.set_ylim(lo.imag, hi.imag)
    ax.set_aspect("equal")
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)


def regions_figure(report: dict, raw_records: list) -> bytes:
    """Two panels: the z-plane with the avoided region and the w = h(z) plane."""
    alpha, beta = report["points"]["alpha"], report["points"]["beta"]
    zwin = viewport(alpha, beta)
    wwin = (-2 - 2j, 2 + 2j)
    fig = Figure(figsize=(10, 5))
    axz, axw = fig.subplots(1, 2)
    for rec in raw_records:
        if rec["panel"] == "z":
            _draw_record(axz, rec, zwin)
        else:
            _draw_record(axw, rec, wwin)
    axz.plot([alpha.real], [alpha.imag], "k*", ms=6, gid="alpha")
    axz.plot([beta.real], [beta.imag], "ko", ms=4, gid="beta")
    pole = report["points"]["pole"]
    axz.plot([pole.real], [pole.imag], "rx", ms=5, gid="pole")
    back = np.array(report["points"]["backward_orbit_w"])
    axw.plot(back.real, back.imag, "r.", ms=2, gid="backward_orbit")
    axw.plot([0, 1], [0, 0], "k.", ms=4)
    _frame(axz, zwin, "z-plane: Apollonius circles, S(r), B_R, avoided region")
    _frame(axw, wwin, "w = h(z): |w| = r, h(S(r)), avoided disks around 1/k^n")
    fig.tight_layout()
    return _svg_bytes(fig)


def orbit_figure(a: np.ndarray, b: np.ndarray, bound: np.ndarray, alpha: complex, beta: complex,
                 raw_records: list) -> bytes:
    """Orbit pair in the z-plane and deviation against the bound."""
    fig = Figure(figsize=(10, 4.5))
    axz, axd = fig.subplots(1, 2)
    zwin = viewport(alpha, beta)
    for rec in raw_records:
        if rec["panel"] == "z" and rec["layer"] in ("avoided", "B_R"):
            _draw_record(axz, rec, zwin)
    axz.plot(b.real, b.imag, "-", color="0.3", lw=0.7, marker=".", ms=2, label="exact b_n")
    axz.plot(a.real, a.imag, "-", color="tab:orange", lw=0.7, marker=".", ms=2, label="perturbed a_n")
    axz.plot([alpha.real], [alpha.imag], "k*", ms=6)
    axz.legend(fontsize=7, loc="upper right")
    _frame(axz, zwin, "orbits")
    n = np.arange(a.size)
    dev = np.abs(a - b)
    pos = dev > 0
    axd.semilogy(n[pos], dev[pos], ".", ms=2, color="tab:orange", label="|a_n - b_n|")
    finite = np.isfinite(bound) & (bound > 0)
    axd.semilogy(n[finite], bound[finite], "-", lw=0.8, color="k", label="bound")
    axd.set_xlabel("n", fontsize=8)
    axd.legend(fontsize=7)
    axd.tick_params(labelsize=7)
    axd.set_title("deviation", fontsize=9)
    fig.tight_layout()
    return _svg_bytes(fig)
