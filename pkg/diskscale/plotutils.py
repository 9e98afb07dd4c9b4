import os

import numpy as np
import pandas as pd
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import seaborn as sns

from diskscale import DEFAULTS, SAVEDIR
from diskscale.geometry import Instance, RadiusAssignment

SVG = DEFAULTS['svg']
DEFAULT_SIZE = (5, 5)

kwargs_svg = {'format': 'svg', 'bbox_inches': 'tight', 'transparent': True}
kwargs_png = {'format': 'png', 'bbox_inches': 'tight', 'dpi': 600, 'transparent': True}

sns.set(rc={"figure.figsize": DEFAULT_SIZE})
sns.set(font_scale=1.25)


def save_figure(plt, name, tag=None, fmt='all', savedir=SAVEDIR):
    if tag is None:
        tag = ''
    else:
        tag = tag + ' - '
    fname = os.path.join(savedir, f"{tag}{name}")
    written = []
    if fmt in ('png', 'all'):
        plt.savefig(f"{fname}.png", **kwargs_png)
        written.append(f"{fname}.png")
    if fmt in ('svg', 'all'):
        plt.savefig(f"{fname}.svg", **kwargs_svg)
        written.append(f"{fname}.svg")
    return written


def plot_bench(df: pd.DataFrame, name='bench', tag=None, fmt='svg', savedir=SAVEDIR):
    """Median millis per n, one line per algorithm"""

    plt.figure()
    ax = sns.lineplot(data=df, x='n', y='millis', hue='algo', marker='o', palette='Set2')
    ax.set(xlabel='n', ylabel='median time (ms)')
    if len(df) and df['millis'].min() > 0:
        ax.set_yscale('log')
    written = save_figure(plt, name, tag=tag, fmt=fmt, savedir=savedir)
    plt.close()
    return written


# =============================================================================
# SVG rendering of disk instances
# =============================================================================
def _num(v):
    return f"{float(v):.9g}"


def render_svg(inst: Instance, r: RadiusAssignment = None) -> str:
    """One circle per disk (class "disk", plus "scaled" when its radius is not 1)
    and one center dot per point; y grows upwards"""

    radii = np.ones(inst.n) if r is None else r.radii
    xy = inst.coords
    lo = (xy - radii[:, None]).min(axis=0)
    hi = (xy + radii[:, None]).max(axis=0)
    span = max(hi[0] - lo[0], hi[1] - lo[1])
    margin = SVG['margin'] * span
    x0, y0 = lo[0] - margin, -(hi[1] + margin)
    width = hi[0] - lo[0] + 2 * margin
    height = hi[1] - lo[1] + 2 * margin
    dot = span / 200

    elements = []
    for i in range(inst.n):
        scaled = radii[i] != 1.0
        css = 'disk scaled' if scaled else 'disk'
        stroke = SVG['scaled_stroke'] if scaled else SVG['unscaled_stroke']
        elements.append(f'<circle class="{css}" data-id="{i}" cx="{_num(xy[i, 0])}" cy="{_num(-xy[i, 1])}" '
                        f'r="{_num(radii[i])}" fill="none" stroke="{stroke}" vector-effect="non-scaling-stroke"/>')
    for i in range(inst.n):
        elements.append(f'<circle class="center" cx="{_num(xy[i, 0])}" cy="{_num(-xy[i, 1])}" '
                        f'r="{_num(dot)}" fill="{SVG["center_fill"]}"/>')

    size = SVG['size']
    return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{_num(size * height / width)}" '
            f'viewBox="{_num(x0)} {_num(y0)} {_num(width)} {_num(height)}">\n'
            + '\n'.join(elements) + '\n</svg>\n')


def write_svg(path, inst: Instance, r: RadiusAssignment = None):
    with open(path, 'w') as f:
        f.write(render_svg(inst, r))
