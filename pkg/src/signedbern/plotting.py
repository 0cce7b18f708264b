"""Figures written next to the CSV/JSON reports."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.titlesize": 11,
    "legend.fontsize": 9,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
    # fixed metadata so repeated runs write identical files
    "svg.hashsalt": "signedbern",
}


def _save(fig, path):
    meta = {"Software": None} if str(path).endswith(".png") else None
    fig.savefig(path, metadata=meta)
    plt.close(fig)


def plot_decay(m, rows, lam_half, C, path):
    """||nu^(n)|| against n with the fitted C (lambda/2)^n."""
    ns = [r[0] for r in rows]
    tv = [r[1] for r in rows]
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(5.5, 3.6))
        ax.semilogy(ns, tv, "o", ms=3, label=r"$2^{-n}a_n$")
        ax.semilogy(ns, [C * lam_half**n for n in ns], "-", lw=1,
                    label=rf"$C\,({lam_half:.6f})^n$")
        ax.set_xlabel("n")
        ax.set_ylabel("total variation")
        ax.set_title(f"m = {m}")
        ax.legend()
        _save(fig, path)


def plot_sine_product(m, n, xi, values, bound, argmax, path):
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6.5, 3.4))
        ax.plot(xi, values, lw=0.5)
        ax.axhline(bound, color="k", ls="--", lw=0.8, label=f"bound {bound:.6g}")
        ax.axhline(-bound, color="k", ls="--", lw=0.8)
        ax.axvline(argmax, color="r", lw=0.6, alpha=0.6)
        ax.set_xlabel(r"$\xi$")
        ax.set_ylabel(rf"$F_{{{n}}}(\beta;\xi)$")
        ax.set_title(f"m = {m}, n = {n}")
        ax.legend(loc="upper right")
        _save(fig, path)


def plot_roots(report, path):
    lam = float(report.lam.mid)
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
        t = [2 * math.pi * k / 256 for k in range(257)]
        for r, style in ((1.5, ":"), (lam, "--")):
            ax.plot([r * math.cos(s) for s in t], [r * math.sin(s) for s in t], "k" + style, lw=0.7)
        ax.plot([z.real for z in report.complex_roots], [z.imag for z in report.complex_roots], "o")
        ax.plot([lam], [0], "s")
        ax.set_aspect("equal")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.set_title(f"roots of f, m = {report.m}")
        _save(fig, path)
