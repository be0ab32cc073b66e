"""Exact error-detection verdicts for graph codes.

An error configuration E (a subset of the output vertices) is detected
exactly when every solution d of the modular linear system

    gamma[I, X u E] * d = 0   (mod each cyclic factor),  I = Y \\ E,

vanishes on the input positions and is annihilated by the input-rows/
error-columns block gamma[X, E].  Checking kernel generators suffices
because both conditions are linear, and the cyclic factors of the group can
be checked independently because integer matrices act componentwise on a
product of cyclic groups.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from .abelian import FiniteAbelianGroup
from .graphcode import WeightedGraph, describe
from .zmodlinalg import kernel_from_snf, smith_normal_form

FAILED_INPUT = "nonzero_on_inputs"
FAILED_COUPLING = "error_action_on_inputs"


@dataclass(frozen=True)
class DetectionVerdict:
    """Certificate or counterexample for one error configuration.

    When ``detected`` is False, ``witness`` is a kernel vector of the
    detection system modulo ``factor``, indexed by ``columns``, that violates
    the condition named by ``failed_condition``.  When True, ``certificate``
    lists the kernel generators per cyclic factor; all of them satisfy both
    conditions.
    """

    graph_id: str
    graph_inputs: tuple[int, ...]
    group_factors: tuple[int, ...]
    configuration: tuple[int, ...]
    columns: tuple[int, ...]
    detected: bool
    factor: int | None = None
    failed_condition: str | None = None
    witness: tuple[int, ...] | None = None
    certificate: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "graph": self.graph_id,
            "inputs": list(self.graph_inputs),
            "group": list(self.group_factors),
            "config": list(self.configuration),
            "columns": list(self.columns),
            "detected": self.detected,
        }
        if self.detected:
            assert self.certificate is not None
            out["certificate"] = [
                {"factor": d, "generators": [list(g) for g in gens]}
                for d, gens in self.certificate
            ]
        else:
            out["factor"] = self.factor
            out["failed"] = self.failed_condition
            out["witness"] = list(self.witness or ())
        return out


@dataclass(frozen=True)
class SizeSummary:
    size: int
    checked: int
    detected: int
    undetected: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SweepReport:
    graph_id: str
    graph_inputs: tuple[int, ...]
    group_factors: tuple[int, ...]
    mode: str  # "detect" or "correct"
    max_size: int
    errors: int | None
    sizes: tuple[SizeSummary, ...]
    elapsed_s: float
    orbit_reduced: bool = False

    @property
    def all_detected(self) -> bool:
        return all(not s.undetected for s in self.sizes)

    @property
    def undetected(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cfg for s in self.sizes for cfg in s.undetected)

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "graph": self.graph_id,
            "inputs": list(self.graph_inputs),
            "group": list(self.group_factors),
            "mode": self.mode,
            "max_size": self.max_size,
            "all_detected": self.all_detected,
            "orbit_reduced": self.orbit_reduced,
            "sizes": [
                {
                    "size": s.size,
                    "checked": s.checked,
                    "detected": s.detected,
                    "undetected": [list(cfg) for cfg in s.undetected],
                }
                for s in self.sizes
            ],
        }
        if self.errors is not None:
            out["errors"] = self.errors
        if include_elapsed:
            out["elapsed_s"] = self.elapsed_s
        return out


def _validated_config(graph: WeightedGraph, config) -> tuple[int, ...]:
    cfg = tuple(sorted({int(v) for v in config}))
    outside = [v for v in cfg if v in graph.inputs or not 0 <= v < graph.n]
    if outside:
        raise ValueError(
            f"error configuration {cfg} must be a subset of the output "
            f"vertices, offending vertices: {outside}"
        )
    return cfg


def detection_system(graph: WeightedGraph, config):
    """Rows (untouched outputs), columns (inputs plus errors) and the block
    of gamma linking them, in ascending vertex order."""
    cfg = _validated_config(graph, config)
    in_cfg = set(cfg)
    rows = tuple(y for y in graph.outputs if y not in in_cfg)
    cols = tuple(sorted(set(graph.inputs) | in_cfg))
    return rows, cols, graph.submatrix(rows, cols)


def detects(
    graph: WeightedGraph, group: FiniteAbelianGroup, config
) -> DetectionVerdict:
    """Decide detection of one error configuration, with witness/certificate."""
    cfg = _validated_config(graph, config)
    rows, cols, system = detection_system(graph, cfg)
    input_set = set(graph.inputs)
    input_pos = tuple(i for i, c in enumerate(cols) if c in input_set)
    error_pos = tuple(i for i, c in enumerate(cols) if c not in input_set)
    cross = graph.submatrix(graph.inputs, cfg)
    snf = smith_normal_form(system, ncols=len(cols))

    def fail(d, vec, reason):
        return DetectionVerdict(
            graph_id=describe(graph),
            graph_inputs=graph.inputs,
            group_factors=group.factors,
            configuration=cfg,
            columns=cols,
            detected=False,
            factor=d,
            failed_condition=reason,
            witness=vec,
        )

    kernels: dict[int, tuple[tuple[int, ...], ...]] = {}
    certificate = []
    for d in group.factors:
        if d not in kernels:
            kernels[d] = kernel_from_snf(snf, d).generators
        for vec in kernels[d]:
            if any(vec[p] for p in input_pos):
                return fail(d, vec, FAILED_INPUT)
            image = (
                sum(c * vec[p] for c, p in zip(row, error_pos)) % d
                for row in cross
            )
            if any(image):
                return fail(d, vec, FAILED_COUPLING)
        certificate.append((d, kernels[d]))
    return DetectionVerdict(
        graph_id=describe(graph),
        graph_inputs=graph.inputs,
        group_factors=group.factors,
        configuration=cfg,
        columns=cols,
        detected=True,
        certificate=tuple(certificate),
    )


def strong_detects(graph: WeightedGraph, group: FiniteAbelianGroup, config) -> bool:
    """The stricter condition: the detection system has trivial kernel
    modulo every cyclic factor (implies ``detects``)."""
    _, cols, system = detection_system(graph, config)
    snf = smith_normal_form(system, ncols=len(cols))
    return all(kernel_from_snf(snf, d).is_trivial for d in set(group.factors))


def is_isometry_condition(graph: WeightedGraph, group: FiniteAbelianGroup) -> bool:
    """True iff the empty configuration is detected, i.e. the code map is an
    isometry: the kernel of gamma[Y, X] vanishes on the inputs."""
    return detects(graph, group, ()).detected


def graph_automorphisms(graph: WeightedGraph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving weights and the input/output split."""
    import networkx as nx  # deferred: only orbit reduction needs it

    g = nx.Graph()
    input_set = set(graph.inputs)
    for v in range(graph.n):
        g.add_node(v, kind=(v in input_set))
    for u, v, w in graph.edges():
        g.add_edge(u, v, weight=w)
    matcher = nx.algorithms.isomorphism.GraphMatcher(
        g,
        g,
        node_match=nx.algorithms.isomorphism.categorical_node_match("kind", None),
        edge_match=nx.algorithms.isomorphism.categorical_edge_match("weight", None),
    )
    perms = {tuple(m[v] for v in range(graph.n)) for m in matcher.isomorphisms_iter()}
    return sorted(perms)


def _orbit_representatives(configs, autos):
    reps = []
    for cfg in configs:
        canon = min(tuple(sorted(perm[v] for v in cfg)) for perm in autos)
        if canon == cfg:
            reps.append(cfg)
    return reps


def _sweep(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    max_size: int,
    mode: str,
    errors: int | None,
    workers: int,
    orbit_reduce: bool,
) -> SweepReport:
    if max_size < 0:
        raise ValueError(f"sweep size must be >= 0, got {max_size}")
    start = time.perf_counter()
    outputs = graph.outputs
    autos = graph_automorphisms(graph) if orbit_reduce else None
    sized: list[tuple[int, list[tuple[int, ...]]]] = []
    for size in range(min(max_size, len(outputs)) + 1):
        configs = list(itertools.combinations(outputs, size))
        if autos is not None:
            configs = _orbit_representatives(configs, autos)
        sized.append((size, configs))

    flat = [cfg for _, configs in sized for cfg in configs]
    if workers > 1 and len(flat) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(partial(detects, graph, group), flat, chunksize=8))
    else:
        verdicts = [detects(graph, group, cfg) for cfg in flat]
    by_config = dict(zip(flat, verdicts))

    summaries = []
    for size, configs in sized:
        undetected = tuple(cfg for cfg in configs if not by_config[cfg].detected)
        summaries.append(
            SizeSummary(
                size=size,
                checked=len(configs),
                detected=len(configs) - len(undetected),
                undetected=undetected,
            )
        )
    return SweepReport(
        graph_id=describe(graph),
        graph_inputs=graph.inputs,
        group_factors=group.factors,
        mode=mode,
        max_size=max_size,
        errors=errors,
        sizes=tuple(summaries),
        elapsed_s=time.perf_counter() - start,
        orbit_reduced=orbit_reduce,
    )


def detects_errors(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    max_size: int,
    workers: int = 1,
    orbit_reduce: bool = False,
) -> SweepReport:
    """Sweep every configuration of size <= max_size in lexicographic order."""
    return _sweep(graph, group, max_size, "detect", None, workers, orbit_reduce)


def corrects_errors(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    errors: int,
    workers: int = 1,
    orbit_reduce: bool = False,
) -> SweepReport:
    """Correcting e errors means detecting every configuration of size <= 2e."""
    if errors < 0:
        raise ValueError(f"error count must be >= 0, got {errors}")
    return _sweep(graph, group, 2 * errors, "correct", errors, workers, orbit_reduce)


def input_exchange_check(
    graph: WeightedGraph,
    group: FiniteAbelianGroup,
    new_inputs,
    errors: int,
    workers: int = 1,
    orbit_reduce: bool = False,
) -> SweepReport:
    """Re-partition the graph with a different input set and re-run the
    correction sweep."""
    return corrects_errors(
        graph.with_inputs(new_inputs), group, errors, workers, orbit_reduce
    )
