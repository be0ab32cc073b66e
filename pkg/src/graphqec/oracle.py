"""Brute-force ground truth for small instances.

The code map is materialized as a dense complex matrix with rows indexed by
output assignments and columns by input assignments, both in lexicographic
element order.  Detection is then checked directly through the
Knill-Laflamme factorization: for every rank-one error operator localized in
the configuration, the compressed operator on the input space must be a
multiple of the identity.

Normalization is the counting measure: basis vectors indexed by group
elements are orthonormal, so every matrix entry has modulus
|G|^(-|Y|/2) and "isometry" literally means orthonormal columns.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass

import numpy as np

from .abelian import FiniteAbelianGroup
from .graphcode import WeightedGraph, describe

DEFAULT_SIZE_CAP = 2**22
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class CodeIsometry:
    group: FiniteAbelianGroup
    graph_id: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    matrix: np.ndarray

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    @property
    def entry_modulus(self) -> float:
        return float(self.group.order) ** (-len(self.outputs) / 2)


def _assignment_codes(count: int, positions: int, order: int) -> np.ndarray:
    """Element indices for all assignments, last position varying fastest."""
    idx = np.arange(count, dtype=np.int64)
    codes = np.empty((count, positions), dtype=np.int64)
    for pos in range(positions - 1, -1, -1):
        codes[:, pos] = idx % order
        idx //= order
    return codes


def _check_cap(graph: WeightedGraph, group: FiniteAbelianGroup, size_cap: int) -> None:
    total = group.order ** graph.n
    if total > size_cap:
        raise ValueError(
            f"oracle instance size |G|^(n) = {group.order}^{graph.n} = {total} "
            f"exceeds the cap {size_cap}"
        )


def build_isometry(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> CodeIsometry:
    """Materialize the code map as a |G|^|Y| x |G|^|X| complex matrix.

    Each entry is |G|^(-|Y|/2) times a root of unity whose exact rational
    exponent is accumulated per cyclic factor over all weighted vertex pairs;
    floats enter only in the final exponential.
    """
    _check_cap(graph, group, size_cap)
    xs, ys = graph.inputs, graph.outputs
    order = group.order
    n_rows = order ** len(ys)
    n_cols = order ** len(xs)
    lcm = group.exponent

    elems = np.array(
        list(itertools.product(*(range(d) for d in group.factors))), dtype=np.int64
    ).reshape(order, group.rank)
    codes_y = _assignment_codes(n_rows, len(ys), order)
    codes_x = _assignment_codes(n_cols, len(xs), order)

    gyy = np.array(graph.submatrix(ys, ys), dtype=np.int64)
    gyx = np.array(graph.submatrix(ys, xs), dtype=np.int64).reshape(len(ys), len(xs))
    gxx = np.array(graph.submatrix(xs, xs), dtype=np.int64).reshape(len(xs), len(xs))

    phase_num = np.zeros((n_rows, n_cols), dtype=np.int64)
    for i, d in enumerate(group.factors):
        ay = elems[:, i][codes_y]  # (rows, |Y|) residues of factor i
        ax = elems[:, i][codes_x]  # (cols, |X|)
        # pair sums: a.T gamma a double-counts every unordered pair, halve it
        qyy = np.einsum("rv,vw,rw->r", ay, gyy, ay) // 2
        qxx = np.einsum("cv,vw,cw->c", ax, gxx, ax) // 2
        qxy = ay @ gyx @ ax.T
        phase_num += (lcm // d) * ((qyy[:, None] + qxx[None, :] + qxy) % d)
    phase_num %= lcm

    roots = np.exp(2j * np.pi * np.arange(lcm) / lcm)
    matrix = roots[phase_num] * (float(order) ** (-len(ys) / 2))
    return CodeIsometry(
        group=group,
        graph_id=describe(graph),
        inputs=xs,
        outputs=ys,
        matrix=matrix,
    )


def check_isometry(isometry: CodeIsometry, tol: float = DEFAULT_TOL) -> bool:
    """True iff the columns are orthonormal within ``tol`` entrywise."""
    v = isometry.matrix
    gram = v.conj().T @ v
    return bool(np.abs(gram - np.eye(v.shape[1])).max() < tol)


def _error_axis_view(
    isometry: CodeIsometry, config: tuple[int, ...]
) -> tuple[np.ndarray, int]:
    """Reshape the matrix to (|G|^|E|, |G|^|I|, cols) with E axes leading."""
    order = isometry.group.order
    ys = isometry.outputs
    pos = {v: i for i, v in enumerate(ys)}
    e_axes = [pos[v] for v in config]
    i_axes = [i for i in range(len(ys)) if ys[i] not in set(config)]
    cols = isometry.cols
    tensor = isometry.matrix.reshape((order,) * len(ys) + (cols,))
    tensor = tensor.transpose(tuple(e_axes) + tuple(i_axes) + (len(ys),))
    n_e = order ** len(config)
    return tensor.reshape(n_e, order ** len(i_axes), cols), n_e


def _validated_oracle_config(graph: WeightedGraph, config) -> tuple[int, ...]:
    cfg = tuple(sorted({int(v) for v in config}))
    outputs = set(graph.outputs)
    if any(v not in outputs for v in cfg):
        raise ValueError(f"configuration {cfg} is not a subset of the outputs")
    return cfg


def kl_detects(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    config,
    tol: float = DEFAULT_TOL,
    size_cap: int = DEFAULT_SIZE_CAP,
    isometry: CodeIsometry | None = None,
) -> bool:
    """Knill-Laflamme check over all rank-one operators localized in config.

    For every pair of error-leg assignments (a, b) the compressed operator
    M = V* (|a><b| (x) id) V must be a scalar multiple of the identity:
    off-diagonal entries below ``tol`` and diagonal entries mutually within
    ``tol``.  Rank-one operators span everything localized in the
    configuration, so this is exhaustive.
    """
    cfg = _validated_oracle_config(graph, config)
    if isometry is None:
        isometry = build_isometry(graph, group, size_cap=size_cap)
    w, n_e = _error_axis_view(isometry, cfg)
    cols = isometry.cols
    if cols <= 1:
        return True  # any 1x1 compression is a scalar multiple of identity
    off_mask = ~np.eye(cols, dtype=bool)
    w_conj = w.conj()
    for a in range(n_e):
        compressed = np.einsum("ic,bid->bcd", w_conj[a], w)
        if np.abs(compressed[:, off_mask]).max(initial=0.0) >= tol:
            return False
        diag = np.einsum("bcc->bc", compressed)
        spread = np.abs(diag[:, :, None] - diag[:, None, :]).max(initial=0.0)
        if spread >= tol:
            return False
    return True


def omega_table(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    config,
    tol: float = DEFAULT_TOL,
    size_cap: int = DEFAULT_SIZE_CAP,
    isometry: CodeIsometry | None = None,
) -> dict:
    """Observed proportionality scalars, keyed by pairs of error-leg
    assignments (tuples of group elements).  Raises if the configuration is
    not detected."""
    cfg = _validated_oracle_config(graph, config)
    if isometry is None:
        isometry = build_isometry(graph, group, size_cap=size_cap)
    w, n_e = _error_axis_view(isometry, cfg)
    cols = isometry.cols
    assignments = list(
        itertools.product(itertools.product(*(range(d) for d in group.factors)),
                          repeat=len(cfg))
    )
    off_mask = ~np.eye(cols, dtype=bool)
    w_conj = w.conj()
    table: dict = {}
    for a in range(n_e):
        compressed = np.einsum("ic,bid->bcd", w_conj[a], w)
        diag = np.einsum("bcc->bc", compressed)
        if cols > 1:
            if np.abs(compressed[:, off_mask]).max(initial=0.0) >= tol:
                raise ValueError(f"configuration {cfg} is not detected")
            if np.abs(diag[:, :, None] - diag[:, None, :]).max(initial=0.0) >= tol:
                raise ValueError(f"configuration {cfg} is not detected")
        lam = diag.mean(axis=1)
        for b in range(n_e):
            table[(assignments[a], assignments[b])] = complex(lam[b])
    return table


def isometry_header(isometry: CodeIsometry) -> dict:
    return {
        "group": list(isometry.group.factors),
        "graph": isometry.graph_id,
        "rows": isometry.rows,
        "cols": isometry.cols,
        "normalization": "counting",
    }


def export_isometry_csv(isometry: CodeIsometry, path) -> dict:
    """Write (row, col, real, imag) lines in lexicographic order; returns the
    JSON-ready header describing the dump."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for r in range(isometry.rows):
            for c in range(isometry.cols):
                entry = isometry.matrix[r, c]
                writer.writerow([r, c, repr(float(entry.real)), repr(float(entry.imag))])
    return isometry_header(isometry)
