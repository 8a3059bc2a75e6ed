"""
Matplotlib figure rendering for CLI reports. All functions write a file and
return its path; the Agg backend keeps everything headless.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def sweep_figure(path, shots: list[int], rvf_values: list[float], title: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(shots, rvf_values, "o-", color="tab:blue")
    ax.set_xlabel("shots")
    ax.set_ylabel("recovered value fidelity")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, which="both", alpha=0.3)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def image_comparison_figure(path, truth: np.ndarray, recovered: np.ndarray,
                            accuracy: float) -> str:
    wrong = np.asarray(truth) != np.asarray(recovered)
    fig, axes = plt.subplots(1, 3, figsize=(10, 3))
    for ax, img, name in zip(axes, (truth, recovered, wrong),
                             ("input", "recovered", "errors")):
        ax.imshow(np.asarray(img, dtype=float), cmap="gray_r", interpolation="nearest")
        ax.set_title(name)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.suptitle(f"pixel accuracy {accuracy:.1%}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def ecg_figure(path, truth: list[int], recovered: list[int]) -> str:
    t = np.arange(len(truth))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(t, truth, where="mid", label="input (digitized)", color="tab:gray")
    ax.plot(t, recovered, "o", ms=4, label="recovered", color="tab:red")
    ax.set_xlabel("sample")
    ax.set_ylabel("level")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
