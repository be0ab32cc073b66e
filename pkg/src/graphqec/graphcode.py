"""Weighted graphs with an input/output vertex partition.

A graph is the blueprint of a code: the symmetric integer matrix ``gamma``
(zero diagonal) carries edge weights, ``inputs`` marks the encoded systems
and the remaining vertices are the physical outputs.  Builders for the three
well-known example graphs live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import FiniteAbelianGroup, GroupElement

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class WeightedGraph:
    gamma: tuple[tuple[int, ...], ...]
    inputs: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        gamma = tuple(tuple(int(x) for x in row) for row in self.gamma)
        n = len(gamma)
        if any(len(row) != n for row in gamma):
            raise ValueError("gamma must be square")
        for i in range(n):
            if gamma[i][i] != 0:
                raise ValueError(f"gamma has a nonzero diagonal entry at {i}")
            for j in range(i + 1, n):
                if gamma[i][j] != gamma[j][i]:
                    raise ValueError(f"gamma is not symmetric at ({i},{j})")
        inputs = tuple(sorted({int(v) for v in self.inputs}))
        if any(not 0 <= v < n for v in inputs):
            raise ValueError(f"input vertex out of range: {inputs}")
        if len(inputs) == n:
            raise ValueError("at least one output vertex is required")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "inputs", inputs)

    @property
    def n(self) -> int:
        return len(self.gamma)

    @property
    def outputs(self) -> tuple[int, ...]:
        taken = set(self.inputs)
        return tuple(v for v in range(self.n) if v not in taken)

    def weight(self, u: int, v: int) -> int:
        return self.gamma[u][v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u in range(self.n) if self.gamma[v][u] != 0)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as (u, v, weight) with u < v, lexicographic."""
        return [
            (u, v, self.gamma[u][v])
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.gamma[u][v] != 0
        ]

    def submatrix(self, rows, cols) -> IntMatrix:
        """The block gamma[rows, cols] in the given vertex orders."""
        return [[self.gamma[k][l] for l in cols] for k in rows]

    def with_inputs(self, new_inputs, name: str | None = None) -> "WeightedGraph":
        return WeightedGraph(
            self.gamma,
            tuple(new_inputs),
            name=self.name if name is None else name,
        )

    @classmethod
    def from_edges(cls, n: int, edges, inputs, name: str = "") -> "WeightedGraph":
        gamma = [[0] * n for _ in range(n)]
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            gamma[u][v] = w
            gamma[v][u] = w
        return cls(tuple(tuple(row) for row in gamma), tuple(inputs), name=name)


def describe(graph: WeightedGraph) -> str:
    return graph.name or f"{graph.n}-vertex graph"


def parse_graph(text: str, name: str = "") -> WeightedGraph:
    """Parse the line-oriented graph format.

    Line 1: ``vertices: <n>``.  Line 2: ``inputs: <comma-separated 0-based
    indices>`` (may be empty).  Every further line is one undirected edge
    ``<u> <v> <w>`` with u < v and a nonzero integer weight; unlisted pairs
    have weight 0.  ``#`` starts a comment.
    """
    lines: list[str] = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if len(lines) < 2:
        raise ValueError("graph file needs a vertices: line and an inputs: line")
    if not lines[0].startswith("vertices:"):
        raise ValueError(f"expected 'vertices: <n>', got {lines[0]!r}")
    try:
        n = int(lines[0].split(":", 1)[1])
    except ValueError:
        raise ValueError(f"bad vertex count in {lines[0]!r}") from None
    if n < 1:
        raise ValueError(f"vertex count must be >= 1, got {n}")
    if not lines[1].startswith("inputs:"):
        raise ValueError(f"expected 'inputs: <indices>', got {lines[1]!r}")
    inputs_text = lines[1].split(":", 1)[1].strip()
    inputs: list[int] = []
    if inputs_text:
        try:
            inputs = [int(p) for p in inputs_text.split(",")]
        except ValueError:
            raise ValueError(f"bad input list {inputs_text!r}") from None

    weights: dict[tuple[int, int], int] = {}
    for line in lines[2:]:
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"bad edge line {line!r}: expected '<u> <v> <w>'")
        try:
            u, v, w = (int(p) for p in parts)
        except ValueError:
            raise ValueError(f"bad edge line {line!r}") from None
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {u}-{v} out of range for {n} vertices")
        if u > v:
            raise ValueError(f"edge line {line!r} must list u < v")
        if w == 0:
            raise ValueError(f"edge {u}-{v} has weight 0; omit it instead")
        if (u, v) in weights and weights[(u, v)] != w:
            raise ValueError(
                f"edge {u}-{v} listed twice with conflicting weights "
                f"{weights[(u, v)]} and {w}"
            )
        weights[(u, v)] = w

    return WeightedGraph.from_edges(
        n, [(u, v, w) for (u, v), w in weights.items()], inputs, name=name
    )


def serialize_graph(graph: WeightedGraph) -> str:
    lines = [f"vertices: {graph.n}"]
    lines.append("inputs: " + ",".join(str(v) for v in graph.inputs))
    for u, v, w in graph.edges():
        lines.append(f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def apply_map(
    matrix, group: FiniteAbelianGroup, elements
) -> tuple[GroupElement, ...]:
    """Act with an integer matrix on a tuple of group elements.

    Entry k of the result is sum_l matrix[k][l] * elements[l], with integer
    scalars acting componentwise and each component reduced mod its factor.
    """
    elements = tuple(elements)
    for g in elements:
        group.validate(g)
    out: list[GroupElement] = []
    for row in matrix:
        if len(row) != len(elements):
            raise ValueError(
                f"matrix row width {len(row)} != element count {len(elements)}"
            )
        acc = [0] * group.rank
        for coeff, g in zip(row, elements):
            for i, gi in enumerate(g):
                acc[i] += coeff * gi
        out.append(group.element(acc))
    return tuple(out)


def wheel_code() -> WeightedGraph:
    """Hub-and-pentagon graph on 6 vertices: hub 0 is the input, the ring
    vertices 1..5 are outputs, all weights 1."""
    edges = [(0, i, 1) for i in range(1, 6)]
    ring = [1, 2, 3, 4, 5]
    edges += [(min(a, b), max(a, b), 1) for a, b in zip(ring, ring[1:] + ring[:1])]
    return WeightedGraph.from_edges(6, edges, (0,), name="wheel")


def _pair_of(v: int) -> int:
    # outputs 1..10 form pairs {1,2},{3,4},...,{9,10}; pair labels 0..4
    return (v - 1) // 2


def tenfold_code() -> WeightedGraph:
    """Doubled pentagon code: 1 input, 10 outputs in five pairs on a ring.

    Each output vertex is joined to the input 0, to its pair partner, and to
    all four vertices of the two ring-adjacent pairs; all weights are 1.
    """
    edges = [(0, v, 1) for v in range(1, 11)]
    for v in range(1, 11):
        for u in range(v + 1, 11):
            pv, pu = _pair_of(v), _pair_of(u)
            if pv == pu or (pu - pv) % 5 in (1, 4):
                edges.append((v, u, 1))
    return WeightedGraph.from_edges(11, edges, (0,), name="tenfold")


_MATRIX19 = (
    (0, 0, 1, 0, 1, 1, 1, 0),
    (0, 0, 0, 1, 1, 1, 0, 1),
    (1, 0, 0, 0, 2, 0, -1, 1),
    (0, 1, 0, 0, 0, 1, 2, -2),
    (1, 1, 2, 0, 0, 0, -2, 0),
    (1, 1, 0, 1, 0, 0, 0, -1),
    (1, 0, -1, 2, -2, 0, 0, 0),
    (0, 1, 1, -2, 0, -1, 0, 0),
)


def matrix19_code(inputs=(0,)) -> WeightedGraph:
    """The 8-vertex weighted graph whose off-diagonal 4x4 block determinants
    avoid exactly the primes {2, 3, 5, 11}; choose 1 or 2 input vertices."""
    inputs = tuple(sorted({int(v) for v in inputs}))
    if not inputs or len(inputs) > 2 or any(not 0 <= v < 8 for v in inputs):
        raise ValueError(f"matrix19 inputs must be 1 or 2 vertices in 0..7, got {inputs}")
    return WeightedGraph(_MATRIX19, inputs, name="matrix19")


BUILTIN_GRAPHS = {
    "wheel": wheel_code,
    "tenfold": tenfold_code,
    "matrix19": matrix19_code,
}
