"""Figure rendering and gnuplot companions for sweep and trace CSVs."""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_sweep_csv(path):
    """Rows of a simulate CSV as a list of dicts with numeric values."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append({k: float(v) for k, v in row.items()})
    return rows


def fer_figure(csv_paths, out_png, labels=None, xlabel="Eb/N0 (dB)"):
    """Semilog FER-vs-SNR plot, one curve per CSV, saved to out_png."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    markers = "osd^v<>ph"
    for idx, path in enumerate(csv_paths):
        rows = read_sweep_csv(path)
        xs = [r["ebn0_db"] for r in rows]
        ys = [r["fer"] for r in rows]
        label = labels[idx] if labels else Path(path).stem
        ax.semilogy(xs, ys, marker=markers[idx % len(markers)],
                    markersize=4, linewidth=1.2, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("FER")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    plt.close(fig)
    return out_png


def trace_figure(rows, out_png, n_minus_k=None):
    """Potential-vs-iteration curves from trace rows (frame, it, variant, J)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    by_key = {}
    for frame, it, variant, j_val in rows:
        by_key.setdefault((frame, variant), []).append((it, j_val))
    colors = {"adp": "tab:blue", "spa-noadapt": "tab:red"}
    seen = set()
    for (frame, variant), pts in sorted(by_key.items()):
        pts.sort()
        label = variant if variant not in seen else None
        seen.add(variant)
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                color=colors.get(variant, "gray"), alpha=0.35,
                linewidth=0.9, label=label)
    if n_minus_k is not None:
        ax.axhline(-n_minus_k, color="black", linestyle="--", linewidth=0.8,
                   label=f"J = -{n_minus_k}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("J")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_png, dpi=150)
    plt.close(fig)
    return out_png


def write_gnuplot_script(csv_paths, out_gp, labels=None):
    """Companion gnuplot script that plots FER (column 5) over column 1."""
    lines = [
        "set datafile separator ','",
        "set logscale y",
        "set xlabel 'Eb/N0 (dB)'",
        "set ylabel 'FER'",
        "set grid",
        "set key bottom left",
    ]
    plots = []
    for idx, path in enumerate(csv_paths):
        label = labels[idx] if labels else Path(path).stem
        plots.append(f"'{path}' using 1:5 skip 1 with linespoints title '{label}'")
    lines.append("plot " + ", \\\n     ".join(plots))
    Path(out_gp).write_text("\n".join(lines) + "\n")
    return out_gp
