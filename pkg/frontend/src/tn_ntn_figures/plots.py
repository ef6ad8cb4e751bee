"""The three experiment figures, rendered from aggregate sweep CSVs.

fig2: per-user throughput and latency versus user count for the TN, NTN and
disaster modes. fig3: PRR and realized fallback ratio versus failure
probability. fig4: throughput and latency versus feeder capacity. Error bars
show one sample standard deviation over the Monte Carlo runs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .loader import FigureDataError, load_agg_csv

# fixed savefig metadata so identical inputs produce identical PNG bytes
_METADATA = {"Software": "tn-ntn-figures"}
_DPI = 150

_MODE_STYLE = {
    "tn": ("TN only", "tab:blue", "o"),
    "ntn": ("NTN only", "tab:orange", "s"),
    "disaster": ("TN+NTN disaster", "tab:red", "^"),
}


def _errorbar(ax, x, frame, column, label, color, marker):
    ax.errorbar(x, frame[f"{column}_mean"], yerr=frame[f"{column}_std"],
                label=label, color=color, marker=marker, capsize=3,
                markersize=4, linewidth=1.2)


def render_fig2(input_dir: Path, out_path: Path) -> None:
    """Mode comparison over the user population size."""
    frames = {}
    for mode in _MODE_STYLE:
        frames[mode] = load_agg_csv(input_dir / f"fig2_{mode}_agg.csv")
    fig, (ax_thr, ax_lat) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for mode, (label, color, marker) in _MODE_STYLE.items():
        frame = frames[mode].sort_values("k_users")
        x = frame["k_users"]
        _errorbar(ax_thr, x, frame, "per_user_thr_mbps", label, color, marker)
        _errorbar(ax_lat, x, frame, "latency_ms", label, color, marker)
    ax_thr.set_xlabel("Users K")
    ax_thr.set_ylabel("Per-user throughput [Mbps]")
    ax_lat.set_xlabel("Users K")
    ax_lat.set_ylabel("Mean latency [ms]")
    ax_thr.legend()
    for ax in (ax_thr, ax_lat):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI, metadata=_METADATA)
    plt.close(fig)


def render_fig3(input_dir: Path, out_path: Path) -> None:
    """Failure-probability sweep: PRR and realized fallback ratio."""
    frame = load_agg_csv(input_dir / "fig3_disaster_agg.csv").sort_values("p_f")
    fig, ax_prr = plt.subplots(figsize=(5.2, 3.6))
    x = frame["p_f"]
    _errorbar(ax_prr, x, frame, "prr", "PRR", "tab:blue", "o")
    ax_eta = ax_prr.twinx()
    _errorbar(ax_eta, x, frame, "fallback_ratio",
              r"fallback ratio $\hat\eta$", "tab:red", "^")
    ax_prr.set_xlabel(r"gNB failure probability $p_f$")
    ax_prr.set_ylabel("PRR")
    ax_eta.set_ylabel(r"Realized fallback ratio $\hat\eta$")
    ax_prr.grid(True, alpha=0.3)
    handles = (ax_prr.get_legend_handles_labels()[0]
               + ax_eta.get_legend_handles_labels()[0])
    labels = (ax_prr.get_legend_handles_labels()[1]
              + ax_eta.get_legend_handles_labels()[1])
    ax_prr.legend(handles, labels, loc="center right")
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI, metadata=_METADATA)
    plt.close(fig)


def render_fig4(input_dir: Path, out_path: Path) -> None:
    """Feeder-capacity sweep: throughput and latency saturation."""
    frame = (load_agg_csv(input_dir / "fig4_disaster_agg.csv")
             .sort_values("feeder_mbps"))
    fig, (ax_thr, ax_lat) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    x = frame["feeder_mbps"]
    _errorbar(ax_thr, x, frame, "per_user_thr_mbps", "throughput",
              "tab:blue", "o")
    _errorbar(ax_lat, x, frame, "latency_ms", "latency", "tab:red", "^")
    ax_thr.set_xlabel("Feeder capacity [Mbps]")
    ax_thr.set_ylabel("Per-user throughput [Mbps]")
    ax_lat.set_xlabel("Feeder capacity [Mbps]")
    ax_lat.set_ylabel("Mean latency [ms]")
    for ax in (ax_thr, ax_lat):
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=_DPI, metadata=_METADATA)
    plt.close(fig)


FIGURES = {
    "fig2": render_fig2,
    "fig3": render_fig3,
    "fig4": render_fig4,
}


def render_figure(name: str, input_dir: Path | str, out_path: Path | str) -> None:
    """Render one named figure from the sweep CSVs in ``input_dir``."""
    if name not in FIGURES:
        raise FigureDataError(
            f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    FIGURES[name](Path(input_dir), Path(out_path))
