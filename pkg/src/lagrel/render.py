"""Renderers: DOT and TikZ emitters for diagrams, matplotlib figure
output for diagrams and for CLI reports, and delimited report writers.

Node shapes follow the house style: grey and white circles for the two
spider families, boxes for Fourier and squeeze generators, a triangle
for the vacuum.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .diagrams import (
    Diagram, FOURIER, FOURIER_INV, SPIDERS, SQUEEZE, VACUUM, X, Z,
)
from .scalars import EXACT


def _phase_label(node) -> str:
    f = EXACT
    if node.kind in SPIDERS:
        a = f.to_str(f.coerce(node.phase[0]))
        b = f.to_str(f.coerce(node.phase[1]))
        if a == "0" and b == "0":
            return ""
        return f"({a},{b})"
    if node.kind == SQUEEZE:
        return f.to_str(f.coerce(node.param))
    if node.kind == FOURIER:
        return "1"
    if node.kind == FOURIER_INV:
        return "-1"
    return ""


def to_dot(d: Diagram) -> str:
    lines = ["graph diagram {", "  rankdir=LR;"]
    for i in range(d.n_in):
        lines.append(f'  in{i} [shape=plaintext, label="in {i}"];')
    for j in range(d.n_out):
        lines.append(f'  out{j} [shape=plaintext, label="out {j}"];')
    for nid in sorted(d.nodes):
        node = d.nodes[nid]
        label = _phase_label(node)
        if node.kind == Z:
            lines.append(f'  n{nid} [shape=circle, style=filled, '
                         f'fillcolor=gray70, label="{label}"];')
        elif node.kind == X:
            lines.append(f'  n{nid} [shape=circle, style=filled, '
                         f'fillcolor=white, label="{label}"];')
        elif node.kind == VACUUM:
            lines.append(f'  n{nid} [shape=triangle, label=""];')
        else:
            lines.append(f'  n{nid} [shape=box, label="{label}"];')

    def name(ep) -> str:
        if ep[0] == "in":
            return f"in{ep[1]}"
        if ep[0] == "out":
            return f"out{ep[1]}"
        return f"n{ep[1]}"

    for p, q in d.edges:
        lines.append(f"  {name(p)} -- {name(q)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _layout(d: Diagram) -> Dict[object, Tuple[float, float]]:
    """Simple layered layout: breadth-first depth from the inputs."""
    adj: Dict[object, List[object]] = {}

    def key(ep):
        if ep[0] == "node":
            return ("node", ep[1])
        return ep

    for p, q in d.edges:
        adj.setdefault(key(p), []).append(key(q))
        adj.setdefault(key(q), []).append(key(p))
    depth: Dict[object, int] = {}
    frontier = [("in", i) for i in range(d.n_in)]
    for v in frontier:
        depth[v] = 0
    if not frontier:
        frontier = [("node", nid) for nid in d.nodes
                    if ("node", nid) in adj] or list(adj)
        for v in frontier:
            depth[v] = 1
    queue = list(frontier)
    while queue:
        v = queue.pop(0)
        for w in adj.get(v, []):
            if w not in depth:
                depth[w] = depth[v] + 1
                queue.append(w)
    for nid in d.nodes:
        depth.setdefault(("node", nid), 1)
    max_depth = max(list(depth.values()) + [1])
    for j in range(d.n_out):
        depth[("out", j)] = max_depth + 1
    columns: Dict[int, List[object]] = {}
    for v, dep in depth.items():
        columns.setdefault(dep, []).append(v)
    pos = {}
    for dep, vs in columns.items():
        vs.sort(key=str)
        for r, v in enumerate(vs):
            pos[v] = (float(dep), -float(r))
    return pos


def to_png(d: Diagram, path: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pos = _layout(d)

    def key(ep):
        if ep[0] == "node":
            return ("node", ep[1])
        return ep

    fig, ax = plt.subplots(figsize=(8, 5))
    for p, q in d.edges:
        x0, y0 = pos[key(p)]
        x1, y1 = pos[key(q)]
        ax.plot([x0, x1], [y0, y1], color="black", zorder=1, linewidth=1)
    for i in range(d.n_in):
        x, y = pos[("in", i)]
        ax.text(x - 0.15, y, f"in {i}", ha="right", va="center", fontsize=9)
        ax.plot([x], [y], marker="|", color="black")
    for j in range(d.n_out):
        x, y = pos[("out", j)]
        ax.text(x + 0.15, y, f"out {j}", ha="left", va="center", fontsize=9)
        ax.plot([x], [y], marker="|", color="black")
    for nid, node in d.nodes.items():
        x, y = pos[("node", nid)]
        label = _phase_label(node)
        if node.kind == Z:
            ax.scatter([x], [y], s=420, c="0.6", edgecolors="black", zorder=2)
        elif node.kind == X:
            ax.scatter([x], [y], s=420, c="white", edgecolors="black", zorder=2)
        elif node.kind == VACUUM:
            ax.scatter([x], [y], s=420, c="khaki", marker="^",
                       edgecolors="black", zorder=2)
        else:
            ax.scatter([x], [y], s=420, c="lightblue", marker="s",
                       edgecolors="black", zorder=2)
        if label:
            ax.annotate(label, (x, y), textcoords="offset points",
                        xytext=(0, 16), ha="center", fontsize=8)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def to_tikz(d: Diagram) -> str:
    pos = _layout(d)

    def key(ep):
        if ep[0] == "node":
            return ("node", ep[1])
        return ep

    def tname(v) -> str:
        if v[0] == "in":
            return f"i{v[1]}"
        if v[0] == "out":
            return f"o{v[1]}"
        return f"n{v[1]}"

    lines = [r"\begin{tikzpicture}[every node/.style={draw, inner sep=2pt}]"]
    style = {
        Z: "circle, fill=gray!60",
        X: "circle, fill=white",
        VACUUM: "regular polygon, regular polygon sides=3, fill=yellow!30",
        FOURIER: "rectangle, fill=blue!15",
        FOURIER_INV: "rectangle, fill=blue!15",
        SQUEEZE: "rectangle, fill=blue!15",
    }
    for i in range(d.n_in):
        x, y = pos[("in", i)]
        lines.append(rf"  \node[draw=none] ({tname(('in', i))}) at ({x:.2f},{y:.2f}) "
                     rf"{{$\mathrm{{in}}_{i}$}};")
    for j in range(d.n_out):
        x, y = pos[("out", j)]
        lines.append(rf"  \node[draw=none] ({tname(('out', j))}) at ({x:.2f},{y:.2f}) "
                     rf"{{$\mathrm{{out}}_{j}$}};")
    for nid in sorted(d.nodes):
        node = d.nodes[nid]
        x, y = pos[("node", nid)]
        label = _phase_label(node).replace("i", r"\mathrm{i}")
        lines.append(rf"  \node[{style[node.kind]}] ({tname(('node', nid))}) "
                     rf"at ({x:.2f},{y:.2f}) {{${label}$}};")
    for p, q in d.edges:
        lines.append(rf"  \draw ({tname(key(p))}) -- ({tname(key(q))});")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def write_tsv(rows: Sequence[Sequence], path: str, header: Optional[Sequence] = None):
    with open(path, "w") as handle:
        if header:
            handle.write("\t".join(str(h) for h in header) + "\n")
        for row in rows:
            handle.write("\t".join(str(x) for x in row) + "\n")


def axiom_figure(results: Sequence[Tuple[str, str, bool]], path: str):
    """One bar per axiom, green pass / red fail, grouped by calculus."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [f"{calc}:{name}" for calc, name, _ in results]
    values = [1 if ok else 0 for _, _, ok in results]
    colors = ["#2a9d2a" if ok else "#c82020" for _, _, ok in results]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.25 * len(names))))
    ax.barh(range(len(names)), values, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xlim(0, 1.2)
    ax.set_xticks([])
    ax.set_title("axiom soundness (bar = pass)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def teleport_figure(eps_values: Sequence, noise_values: Sequence, path: str):
    """Added-noise covariance of the teleported channel against the
    resource blur."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([float(e) for e in eps_values], [float(v) for v in noise_values],
            marker="o", color="#33508a")
    ax.set_xlabel("resource position blur")
    ax.set_ylabel("channel added-noise covariance")
    ax.set_title("teleportation noise")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
