# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Generation of self-contained matplotlib scripts next to the data files.

The scripts only need numpy and matplotlib (the ``plot`` extra) and read
the CSV files by name relative to their own location.
"""
import logging
from pathlib import Path
from string import Template
from typing import Dict

logger = logging.getLogger(__name__)

_PREAMBLE = '''\
# generated by nonreciprocal-dicke; edit freely
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

HERE = Path(__file__).parent


def load(name):
    with open(HERE / name, encoding="utf-8") as handle:
        columns = handle.readline().strip().split(",")
    data = np.genfromtxt(
        HERE / name, delimiter=",", skip_header=1, dtype=None, encoding="utf-8"
    )
    return columns, data

'''

TEMPLATES: Dict[str, Template] = {
    "trajectory": Template(
        '''\
columns, data = load("$data")
t = data[:, 0]
fig, (top, cloud) = plt.subplots(1, 2, figsize=(11, 4))
for name in ("sx_p", "sz_p", "sx_m", "sz_m"):
    top.plot(t, data[:, columns.index(name)], label=name)
top.set_xlabel("time (1/omega0)")
top.legend()
cloud.plot(data[:, columns.index("re_beta")], data[:, columns.index("im_beta")], lw=0.5)
cloud.set_xlabel("Re beta")
cloud.set_ylabel("Im beta")
cloud.set_aspect("equal", adjustable="datalim")
fig.tight_layout()
plt.show()
'''
    ),
    "np-spectrum": Template(
        '''\
columns, data = load("$data")
phi = data[:, 0] / np.pi
fig, ax = plt.subplots(figsize=(6, 4))
for index in range(1, data.shape[1], 2):
    ax.plot(phi, data[:, index], ".", ms=1.5, color="k")
ax.axhline(0.0, color="grey", lw=0.5)
ax.set_xlabel("phi / pi")
ax.set_ylabel("Re eta (omega0)")
fig.tight_layout()
plt.show()
'''
    ),
    "phase-diagram": Template(
        '''\
columns, data = load("$data")
x = np.array([row[0] for row in data], dtype=float)
y = np.array([row[1] for row in data], dtype=float)
labels = [str(row[2]) for row in data]
names = sorted(set(labels))
codes = np.array([names.index(label) for label in labels])
xs, ys = np.unique(x), np.unique(y)
grid = codes.reshape(xs.size, ys.size)
fig, ax = plt.subplots(figsize=(6, 5))
cmap = plt.get_cmap("tab10", len(names))
mesh = ax.pcolormesh(ys, xs, grid, shading="nearest", cmap=cmap)
bar = fig.colorbar(mesh, ticks=range(len(names)))
bar.ax.set_yticklabels(names)
ax.set_xlabel(columns[1])
ax.set_ylabel(columns[0])
fig.tight_layout()
plt.show()
'''
    ),
    "spectrum": Template(
        '''\
fig, ax = plt.subplots(figsize=(6, 4))
for name in $data:
    columns, data = load(name)
    ax.semilogy(data[:, 0], data[:, 1], label=name)
ax.set_xlabel("frequency (omega0)")
ax.set_ylabel("|F|")
ax.legend()
fig.tight_layout()
plt.show()
'''
    ),
    "lambda-scan": Template(
        '''\
columns, data = load("$data")
lam = np.array([row[0] for row in data], dtype=float)
intensity = np.array([row[3] for row in data], dtype=float)
low = np.array([np.nan if row[5] == "" else row[5] for row in data], dtype=float)
high = np.array([np.nan if row[6] == "" else row[6] for row in data], dtype=float)
fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
left.plot(lam, intensity, "o-", ms=2)
left.set_xlabel("lambda")
left.set_ylabel("mean |beta|^2")
right.plot(lam, low, ".", lam, high, ".")
right.set_xlabel("lambda")
right.set_ylabel("light peak frequency (omega0)")
fig.tight_layout()
plt.show()
'''
    ),
}


def plot_script(kind: str, data: str) -> str:
    """
    The script plotting ``data`` (a file name, or the repr of a list of
    file names for ``spectrum``).

    Raises:
      KeyError if there is no script for ``kind``
    """
    return _PREAMBLE + TEMPLATES[kind].substitute(data=data)


def write_plot_script(directory: Path, kind: str, data: str) -> Path:
    path = Path(directory) / f"plot_{kind.replace('-', '_')}.py"
    path.write_text(plot_script(kind, data), encoding="utf-8")
    logger.debug("wrote plot script %s", path)
    return path
