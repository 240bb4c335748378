"""
Lattice-point counting oracles

Every oracle answers "how many lattice points lie in the n-th dilate of
the polytope?" for one polytope, independently of the closed forms in
families.py:

- StasheffBoxOracle   box [-n,n]^d cut by consecutive-sum facets
- CycleBoxOracle      box [-n,n]^d cut by |x_1 + ... + x_d| <= n
- GraphDfsOracle      labelings y with y_root = 0, |y_u - y_v| <= n on edges
- BipartiteOracle     closed sum for complete bipartite graphs
- MinusEdgeOracle     closed sum for K_v minus one edge
- CompleteOracle      closed sum for complete graphs

ehrhart_from_counts() turns any oracle into an exact Ehrhart polynomial by
interpolation with one over-sampled check point.
"""

from __future__ import annotations

import itertools
import numbers
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import BudgetExceededError, GraphError, InterpolationError, ParseError
from .exactpoly import Poly, lagrange_interpolate
from .families import type_a_dual
from ..utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_NODE_BUDGET = 5_000_000


class CountMethod(str, Enum):
    BRUTE = "brute"
    GRAPH_DFS = "graph_dfs"
    BIPARTITE_CLOSED = "bipartite_closed"
    MINUS_EDGE_CLOSED = "minus_edge_closed"
    COMPLETE_CLOSED = "complete_closed"


@dataclass(frozen=True)
class CountReport:
    n: int
    count: int
    method: CountMethod

    def to_record(self) -> dict:
        return {"n": self.n, "count": str(self.count), "method": self.method.value}


# ========== GRAPHS ========== #

def _graph_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise GraphError(f"{what} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class GraphSpec:
    """
    Finite simple connected graph on vertices 0..num_vertices-1

    Edges are stored as sorted pairs in sorted order.
    """

    num_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    root: int = 0

    def __post_init__(self):
        v = _graph_int(self.num_vertices, "vertex count")
        _graph_int(self.root, "root")
        if v < 2:
            raise GraphError(f"graph needs at least 2 vertices, got {v}")
        if not 0 <= self.root < v:
            raise GraphError(f"root {self.root} outside 0..{v - 1}")

        normalized = []
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphError(f"edge {edge!r} is not a pair")
            u, w = _graph_int(edge[0], "edge endpoint"), _graph_int(edge[1], "edge endpoint")
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < v and 0 <= w < v):
                raise GraphError(f"edge ({u}, {w}) outside 0..{v - 1}")
            normalized.append((min(u, w), max(u, w)))
        if len(set(normalized)) != len(normalized):
            raise GraphError("duplicate edge")
        normalized.sort()
        object.__setattr__(self, "edges", tuple(normalized))

        if not nx.is_connected(self.to_networkx()):
            raise GraphError("graph is not connected")

    @property
    def dimension(self) -> int:
        return self.num_vertices - 1

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(self.edges)
        return graph

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.num_vertices)]
        for u, w in self.edges:
            adj[u].append(w)
            adj[w].append(u)
        return adj

    def with_root(self, root: int) -> "GraphSpec":
        return GraphSpec(self.num_vertices, self.edges, root)

    def to_record(self) -> dict:
        return {
            "vertices": self.num_vertices,
            "edges": [list(edge) for edge in self.edges],
            "root": self.root,
        }

    @classmethod
    def from_networkx(cls, graph: nx.Graph, root: int = 0) -> "GraphSpec":
        mapping = {node: index for index, node in enumerate(sorted(graph.nodes()))}
        edges = tuple((mapping[u], mapping[w]) for u, w in graph.edges())
        return cls(len(mapping), edges, root)


def graph_from_record(record: Dict) -> GraphSpec:
    """
    Build a GraphSpec from {vertices, edges, root}

    Raises:
        GraphError: missing fields or invalid graph
    """
    try:
        vertices = _graph_int(record["vertices"], "vertices")
        edges = tuple(tuple(edge) for edge in record["edges"])
        root = _graph_int(record.get("root", 0), "root")
    except (KeyError, TypeError, ValueError) as e:
        raise GraphError(f"malformed graph record: {e}") from None
    return GraphSpec(vertices, edges, root)


def _parse_ints(text: str, expected: int, name: str) -> List[int]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != expected:
        raise ParseError(f"{name} expects {expected} integer(s), got {text!r}")
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise ParseError(f"{name} expects integers, got {text!r}") from None


def _complete_minus_edge(v: int) -> nx.Graph:
    graph = nx.complete_graph(v)
    # missing edge kept away from the root so the root sits in the core
    graph.remove_edge(v - 2, v - 1)
    return graph


GRAPH_SHORTCUTS: Dict[str, Callable[[str], nx.Graph]] = {
    'k_bipartite': lambda arg: nx.complete_bipartite_graph(*_parse_ints(arg, 2, 'k_bipartite')),
    'complete_minus_edge': lambda arg: _complete_minus_edge(*_parse_ints(arg, 1, 'complete_minus_edge')),
    'cycle': lambda arg: nx.cycle_graph(*_parse_ints(arg, 1, 'cycle')),
    'path': lambda arg: nx.path_graph(*_parse_ints(arg, 1, 'path')),
    'complete': lambda arg: nx.complete_graph(*_parse_ints(arg, 1, 'complete')),
}


def is_graph_shortcut(text: str) -> bool:
    name, sep, _ = text.strip().partition(":")
    return bool(sep) and name.strip().lower() in GRAPH_SHORTCUTS


def parse_graph(text: str) -> GraphSpec:
    """
    Expand a named shortcut such as "k_bipartite:3,7" or "cycle:5"

    Raises:
        ParseError: unknown shortcut or bad arguments
    """
    name, sep, arg = text.strip().partition(":")
    builder = GRAPH_SHORTCUTS.get(name.strip().lower()) if sep else None
    if builder is None:
        raise ParseError(f"Unknown graph {text!r}")
    graph = builder(arg)
    if graph.number_of_nodes() < 2:
        raise GraphError(f"{text!r} has fewer than 2 vertices")
    if name.strip().lower() == 'complete_minus_edge' and graph.number_of_nodes() < 4:
        raise GraphError("complete_minus_edge needs at least 4 vertices")
    return GraphSpec.from_networkx(graph)


# ========== ORACLES ========== #

class CountingOracle(ABC):
    """
    Abstract base class for lattice-point counters

    Subclasses implement count(n) exactly or refuse with
    BudgetExceededError; they never return a partial count.
    """

    method: CountMethod = CountMethod.BRUTE

    def __init__(self, budget: Optional[int] = None):
        self.budget = DEFAULT_NODE_BUDGET if budget is None else budget
        self.name = self.__class__.__name__

    @property
    @abstractmethod
    def degree(self) -> int:
        """Dimension of the counted polytope"""

    @abstractmethod
    def count(self, n: int) -> int:
        """Number of lattice points in the n-th dilate"""

    def __call__(self, n: int) -> int:
        return self.count(n)

    def report(self, n: int) -> CountReport:
        return CountReport(n=n, count=self.count(n), method=self.method)

    def _check_n(self, n: int):
        if n < 0:
            raise ValueError(f"dilation factor must be >= 0, got {n}")

    def _refuse(self, expanded: int):
        logger.warning(f"{self.name}: node budget {self.budget} exceeded")
        raise BudgetExceededError(
            f"{self.name} exceeded its budget of {self.budget} expanded nodes",
            budget=self.budget,
            expanded=expanded,
        )


class StasheffBoxOracle(CountingOracle):
    """
    Integer x in [-n, n]^d with x_j + ... + x_k <= n for all j < k

    Depth-first over coordinates carrying the largest suffix sum of the
    prefix; the last coordinate is counted in closed form.
    """

    method = CountMethod.BRUTE

    def __init__(self, d: int, budget: Optional[int] = None):
        super().__init__(budget)
        if d < 1:
            raise ValueError(f"StasheffBoxOracle needs d >= 1, got {d}")
        self.d = d

    @property
    def degree(self) -> int:
        return self.d

    def count(self, n: int) -> int:
        self._check_n(n)
        d = self.d
        expanded = 0

        def visit(position: int, best_suffix: Optional[int]) -> int:
            nonlocal expanded
            upper = n if best_suffix is None else min(n, n - best_suffix)
            if upper < -n:
                return 0
            if position == d - 1:
                return upper + n + 1
            total = 0
            for x in range(-n, upper + 1):
                expanded += 1
                if expanded > self.budget:
                    self._refuse(expanded)
                suffix = x if best_suffix is None else max(x, x + best_suffix)
                total += visit(position + 1, suffix)
            return total

        return visit(0, None)


class CycleBoxOracle(CountingOracle):
    """Integer x in [-n, n]^d with -n <= x_1 + ... + x_d <= n"""

    method = CountMethod.BRUTE

    def __init__(self, d: int, budget: Optional[int] = None):
        super().__init__(budget)
        if d < 1:
            raise ValueError(f"CycleBoxOracle needs d >= 1, got {d}")
        self.d = d

    @property
    def degree(self) -> int:
        return self.d

    def count(self, n: int) -> int:
        self._check_n(n)
        d = self.d
        expanded = 0

        def visit(position: int, partial: int) -> int:
            nonlocal expanded
            remaining = d - 1 - position
            lower = max(-n, -n - partial - remaining * n)
            upper = min(n, n - partial + remaining * n)
            if upper < lower:
                return 0
            if remaining == 0:
                return upper - lower + 1
            total = 0
            for x in range(lower, upper + 1):
                expanded += 1
                if expanded > self.budget:
                    self._refuse(expanded)
                total += visit(position + 1, partial + x)
            return total

        return visit(0, 0)


class GraphDfsOracle(CountingOracle):
    """
    Labelings y of the vertices with y_root = 0 and |y_u - y_v| <= n on edges

    Vertices are assigned in breadth-first order from the root. Every
    unassigned vertex keeps the intersection of [y_u - n, y_u + n] over its
    assigned neighbours; an empty interval prunes the branch.
    """

    method = CountMethod.GRAPH_DFS

    def __init__(self, graph: GraphSpec, budget: Optional[int] = None):
        super().__init__(budget)
        self.graph = graph
        self._adj = graph.adjacency()
        self._order = self._bfs_order()

    @property
    def degree(self) -> int:
        return self.graph.dimension

    def _bfs_order(self) -> List[int]:
        root = self.graph.root
        seen = {root}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(self._adj[u]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    def count(self, n: int) -> int:
        self._check_n(n)
        v = self.graph.num_vertices
        adj = self._adj
        order = self._order
        last = len(order) - 1
        # no label can sit further than (v-1)·n from the root
        bound = (v - 1) * n
        lo = [-bound] * v
        hi = [bound] * v
        assigned = [False] * v
        expanded = 0

        def tighten(vertex: int, value: int, undo: List[Tuple[int, int, int]]) -> bool:
            for w in adj[vertex]:
                if assigned[w]:
                    continue
                undo.append((w, lo[w], hi[w]))
                lo[w] = max(lo[w], value - n)
                hi[w] = min(hi[w], value + n)
                if lo[w] > hi[w]:
                    return False
            return True

        def restore(undo: List[Tuple[int, int, int]]):
            for w, old_lo, old_hi in reversed(undo):
                lo[w], hi[w] = old_lo, old_hi

        def visit(k: int) -> int:
            nonlocal expanded
            vertex = order[k]
            if k == last:
                return hi[vertex] - lo[vertex] + 1
            assigned[vertex] = True
            total = 0
            for value in range(lo[vertex], hi[vertex] + 1):
                expanded += 1
                if expanded > self.budget:
                    assigned[vertex] = False
                    self._refuse(expanded)
                undo: List[Tuple[int, int, int]] = []
                if tighten(vertex, value, undo):
                    total += visit(k + 1)
                restore(undo)
            assigned[vertex] = False
            return total

        root = order[0]
        assigned[root] = True
        undo: List[Tuple[int, int, int]] = []
        if not tighten(root, 0, undo):
            return 0
        result = visit(1)
        restore(undo)
        assigned[root] = False
        return result


def spread_count(k: int, s: int) -> int:
    """
    Number of integer k-tuples whose union with {0} has max - min == s

    N_k(0) = 1; for s >= 1
    N_k(s) = 2[(s+1)^k - s^k] + (s-1)[(s+1)^k - 2 s^k + (s-1)^k].
    """
    if k < 0 or s < 0:
        raise ValueError(f"spread_count needs k, s >= 0, got ({k}, {s})")
    if s == 0:
        return 1
    edge = (s + 1) ** k - s ** k
    inner = (s + 1) ** k - 2 * s ** k + (s - 1) ** k
    return 2 * edge + (s - 1) * inner


def spread_count_brute(k: int, s: int) -> int:
    """Direct enumeration over [-s, s]^k, for validating spread_count"""
    total = 0
    for labels in itertools.product(range(-s, s + 1), repeat=k):
        values = labels + (0,)
        if max(values) - min(values) == s:
            total += 1
    return total


class BipartiteOracle(CountingOracle):
    """
    Dual of the symmetric edge polytope of K_{m, m2}

    With the root on the side of size m, the root side has some spread s
    and every vertex on the other side ranges over a window of width
    2n+1-s, independently.
    """

    method = CountMethod.BIPARTITE_CLOSED

    def __init__(self, m: int, m2: int):
        super().__init__()
        if m < 1 or m2 < 1:
            raise ValueError(f"K_{{m,m2}} needs m, m2 >= 1, got ({m}, {m2})")
        self.m = m
        self.m2 = m2

    @property
    def degree(self) -> int:
        return self.m + self.m2 - 1

    def count(self, n: int) -> int:
        self._check_n(n)
        return sum(
            spread_count(self.m - 1, s) * (2 * n + 1 - s) ** self.m2
            for s in range(2 * n + 1)
        )


class MinusEdgeOracle(CountingOracle):
    """
    Dual of the symmetric edge polytope of K_v minus one edge

    The v-2 core vertices (root included) are pairwise adjacent, so their
    spread s is at most n; both endpoints of the missing edge range over
    windows of width 2n+1-s independently.
    """

    method = CountMethod.MINUS_EDGE_CLOSED

    def __init__(self, v: int):
        super().__init__()
        if v < 4:
            raise ValueError(f"complete-minus-edge counter needs v >= 4, got {v}")
        self.v = v

    @property
    def degree(self) -> int:
        return self.v - 1

    def count(self, n: int) -> int:
        self._check_n(n)
        return sum(
            spread_count(self.v - 3, s) * (2 * n + 1 - s) ** 2
            for s in range(n + 1)
        )


class CompleteOracle(CountingOracle):
    """Dual of the symmetric edge polytope of K_v: all labels within spread n"""

    method = CountMethod.COMPLETE_CLOSED

    def __init__(self, v: int):
        super().__init__()
        if v < 2:
            raise ValueError(f"complete graph needs v >= 2, got {v}")
        self.v = v

    @property
    def degree(self) -> int:
        return self.v - 1

    def count(self, n: int) -> int:
        self._check_n(n)
        return sum(spread_count(self.v - 1, s) for s in range(n + 1))


def choose_oracle(graph: GraphSpec, budget: Optional[int] = None) -> CountingOracle:
    """
    Route a graph to the fastest exact oracle

    Complete, complete bipartite and complete-minus-edge graphs are
    recognised by structure under any labelling; everything else goes to
    the budgeted depth-first counter.
    """
    v = graph.num_vertices
    e = len(graph.edges)
    full = v * (v - 1) // 2

    if e == full:
        return CompleteOracle(v)

    nx_graph = graph.to_networkx()
    if nx.is_bipartite(nx_graph):
        side_a, side_b = nx.bipartite.sets(nx_graph)
        if e == len(side_a) * len(side_b):
            root_side = side_a if graph.root in side_a else side_b
            other = side_b if root_side is side_a else side_a
            return BipartiteOracle(len(root_side), len(other))

    if v >= 4 and e == full - 1:
        return MinusEdgeOracle(v)

    return GraphDfsOracle(graph, budget)


# ========== COUNTING ENTRY POINTS ========== #

def count_stasheff_dual(d: int, n: int, budget: Optional[int] = None) -> int:
    return StasheffBoxOracle(d, budget).count(n)


def count_cycle_dual(d: int, n: int, budget: Optional[int] = None) -> int:
    return CycleBoxOracle(d, budget).count(n)


def count_graph_dual(graph: GraphSpec, n: int, budget: Optional[int] = None) -> int:
    return GraphDfsOracle(graph, budget).count(n)


def count_bipartite_dual(m: int, m2: int, n: int) -> int:
    return BipartiteOracle(m, m2).count(n)


def count_complete_minus_edge_dual(v: int, n: int) -> int:
    return MinusEdgeOracle(v).count(n)


def count_complete_dual(v: int, n: int) -> int:
    return CompleteOracle(v).count(n)


def ehrhart_from_counts(
    counter: Union[CountingOracle, Callable[[int], int]],
    degree: int,
    oversample: int = 1,
) -> Poly:
    """
    Recover an Ehrhart polynomial from exact counts

    Interpolates through n = 0..degree, then checks n = degree+1 ..
    degree+oversample against the fitted polynomial.

    Raises:
        InterpolationError: a check point disagrees (wrong degree or counter)
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if oversample < 1:
        raise ValueError("at least one check point is required")

    counts = [counter(n) for n in range(degree + oversample + 1)]
    fitted = lagrange_interpolate([(n, counts[n]) for n in range(degree + 1)])

    for n in range(degree + 1, degree + oversample + 1):
        predicted = fitted(n)
        if predicted != counts[n]:
            logger.warning(f"Over-sample check failed at n={n}: fitted {predicted}, counted {counts[n]}")
            raise InterpolationError(
                f"count at n={n} is {counts[n]} but the degree-{degree} fit predicts {predicted}",
                expected=counts[n],
                actual=predicted,
            )
    logger.debug(f"Interpolated degree-{degree} Ehrhart polynomial from {len(counts)} counts")
    return fitted


@dataclass(frozen=True)
class SandwichBounds:
    lower: int
    count: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.count <= self.upper


def sandwich_bounds(graph: GraphSpec, n: int, budget: Optional[int] = None) -> SandwichBounds:
    """
    Complete-graph dual <= graph dual <= tree dual

    For a connected graph on v vertices the duals nest, so the counts
    satisfy typeA(v-1)(n) <= count <= (2n+1)^(v-1).
    """
    d = graph.dimension
    lower = type_a_dual(d)(n)
    count = choose_oracle(graph, budget).count(n)
    return SandwichBounds(lower=int(lower), count=count, upper=(2 * n + 1) ** d)


def sample_counts(oracle: CountingOracle, ns: Sequence[int]) -> List[CountReport]:
    return [oracle.report(n) for n in ns]
