"""
plot utilities for qdentropy

all functions return (fig, axs) and call plt.show() only when show=True.
"""

# third party
import numpy as np
import matplotlib.pyplot as plt


def qdf_curve(curves,              # list of QdfCurve (or a single one)
              titles=None,         # legend entry per curve
              truth=None,          # optional Distribution, its qdf is overlaid
              logy=True,           # plot q on a log axis
              width=8,             # width in in
              show=True):
    '''
    plot kernel quantile density estimates on their trimmed grid
    '''

    # input processing
    if not isinstance(curves, (list, tuple)):
        curves = [curves]
    if titles is None:
        titles = ['estimate %d' % i for i in range(len(curves))]
    assert len(titles) == len(curves), 'number of titles is incorrect'

    fig, ax = plt.subplots(1, 1)
    for curve, title in zip(curves, titles):
        ax.plot(curve.t, curve.q, label=title)

    if truth is not None:
        t = curves[0].t
        ax.plot(t, truth.qdf(t), 'k--', label='q of %s' % truth)

    if logy:
        ax.set_yscale('log')
    ax.set_xlabel('t')
    ax.set_ylabel('q(t)')
    ax.legend()
    ax.grid(True, alpha=0.3)

    fig.set_size_inches(width, 0.6 * width)
    if show:
        plt.tight_layout()
        plt.show()

    return (fig, ax)


def mse_curve(search, title=None, width=8, show=True):
    """
    MSE of the kernel entropy estimate over a bandwidth grid

    Parameters:
        search: BandwidthSearch from grid_search_h; disqualified candidates are marked
    """
    h = np.array(search.grid.values)
    fig, ax = plt.subplots(1, 1)
    ax.loglog(h, search.mse_curve, '.-')
    ax.axvline(search.h_star, color='k', linestyle=':', label='h* = %.4g' % search.h_star)

    bad = np.asarray(search.disqualified)
    if np.any(bad):
        top = np.nanmax(search.mse_curve)
        ax.plot(h[bad], np.full(np.sum(bad), top), 'rx', label='disqualified')

    ax.set_xlabel('h')
    ax.set_ylabel('MSE')
    ax.legend()
    if title is not None:
        ax.set_title(title)

    fig.set_size_inches(width, 0.6 * width)
    if show:
        plt.tight_layout()
        plt.show()

    return (fig, ax)


def power_bars(frame, statistics=None, width=10, show=True):
    """
    grouped bars of estimated power per alternative

    Parameters:
        frame: DataFrame with an 'alternative' column and one power column per statistic
            (as returned by qdentropy.sim.tables.run_power_table)
        statistics: columns to plot, default all non '_published' power columns
    """
    if statistics is None:
        statistics = [c for c in frame.columns
                      if c not in ('alternative', 'h') and not c.endswith('_published')]
    nb_alt = len(frame)
    nb_stat = len(statistics)
    bar = 0.8 / max(nb_stat, 1)

    fig, ax = plt.subplots(1, 1)
    x = np.arange(nb_alt)
    for k, stat in enumerate(statistics):
        ax.bar(x + k * bar, frame[stat].values, bar, label=stat)

    ax.set_xticks(x + 0.4 - bar / 2)
    ax.set_xticklabels(frame['alternative'])
    ax.set_ylim([0, 1.01])
    ax.set_ylabel('power')
    ax.legend(fontsize='small')

    fig.set_size_inches(width, 0.5 * width)
    if show:
        plt.tight_layout()
        plt.show()

    return (fig, ax)
