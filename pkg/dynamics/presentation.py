"""
Graph Presentation Module

This module builds the follower-set automaton of a sofic S-limited shift
and derives what the rest of the toolkit needs from it:

- The labeled graph itself (right-resolving, essential, minimized)
- Its adjacency matrix
- The spectral-radius entropy, certified by Collatz–Wielandt bounds
- A deterministic Graphviz DOT rendering

A state (i, n) records that the current run is letter i and has length n,
with n folded onto the head of Δ(S_i) plus one period.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Set, Tuple

import networkx as nx
import numpy as np

import config
from shifts.classify import is_sofic
from shifts.errors import EmptyGraph, NotSofic, UnknownMembership
from shifts.language import RunWord, ShiftSpec
from shifts.sets import SetSpec, Verdict

logger = logging.getLogger(__name__)


class State(NamedTuple):
    """Automaton state: current letter, folded run length, head/cycle tag."""

    letter: int
    position: int
    tag: str

    @property
    def node_name(self) -> str:
        return f"L{self.letter}R{self.position}"


class Edge(NamedTuple):
    src: State
    dst: State
    label: int


@dataclass(frozen=True)
class GraphPresentation:
    """
    Labeled directed graph presenting a sofic shift.

    Attributes:
        states: States in sorted order (the adjacency matrix index order)
        edges: Labeled edges sorted by (src, dst, label)
    """

    states: Tuple[State, ...]
    edges: Tuple[Edge, ...]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.states)
        for edge in self.edges:
            graph.add_edge(edge.src, edge.dst, label=edge.label)
        return graph

    def out_edges(self, state: State) -> List[Edge]:
        return [e for e in self.edges if e.src == state]

    def is_right_resolving(self) -> bool:
        """No state has two outgoing edges with the same label."""
        seen = set()
        for edge in self.edges:
            key = (edge.src, edge.label)
            if key in seen:
                return False
            seen.add(key)
        return True

    def to_dict(self) -> Dict:
        return {
            'states': [s.node_name for s in self.states],
            'edges': [[e.src.node_name, e.dst.node_name, e.label] for e in self.edges],
        }


def _fold(spec: SetSpec, position: int) -> int:
    head, period = spec.head_end(), spec.period_sum()
    if period and position > head + period:
        return head + (position - head - 1) % period + 1
    return position


def _state(spec: SetSpec, letter: int, position: int) -> State:
    position = _fold(spec, position)
    return State(letter, position, 'head' if position <= spec.head_end() else 'cycle')


def _raw_automaton(shift: ShiftSpec) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    for letter in shift.letters:
        spec = shift.set_for(letter)
        for position in range(1, spec.head_end() + spec.period_sum() + 1):
            src = _state(spec, letter, position)
            graph.add_node(src)
            if spec.at_least(position + 1) is Verdict.YES:
                graph.add_edge(src, _state(spec, letter, position + 1), label=letter)
            if spec.contains(position) is Verdict.YES:
                for nxt in shift.successors(letter):
                    graph.add_edge(src, _state(shift.set_for(nxt), nxt, 1), label=nxt)
    return graph


def make_essential(graph: nx.MultiDiGraph) -> None:
    """Remove, in place, every state that lies on no bi-infinite path."""
    while True:
        stranded = [q for q in graph if graph.out_degree(q) == 0 or graph.in_degree(q) == 0]
        if not stranded:
            return
        graph.remove_nodes_from(stranded)


def _follower_partition(graph: nx.MultiDiGraph) -> Dict[State, int]:
    """Moore refinement: states with identical labeled futures share a block."""
    moves = {
        q: {data['label']: dst for _, dst, data in graph.out_edges(q, data=True)}
        for q in graph
    }
    block = {q: tuple(sorted(moves[q])) for q in graph}
    while True:
        signature = {
            q: (block[q], tuple((label, block[moves[q][label]]) for label in sorted(moves[q])))
            for q in graph
        }
        ids: Dict[tuple, int] = {}
        for q in sorted(graph):
            ids.setdefault(signature[q], len(ids))
        refined = {q: ids[signature[q]] for q in graph}
        if len(set(refined.values())) == len(set(block.values())):
            return refined
        block = refined


def _minimize(graph: nx.MultiDiGraph) -> GraphPresentation:
    blocks = _follower_partition(graph)
    representative: Dict[int, State] = {}
    for q in sorted(graph):
        representative.setdefault(blocks[q], q)
    states = sorted(representative.values())
    edges = set()
    for q in states:
        for _, dst, data in graph.out_edges(q, data=True):
            edges.add(Edge(q, representative[blocks[dst]], data['label']))
    return GraphPresentation(tuple(states), tuple(sorted(edges)))


def build_follower_automaton(shift: ShiftSpec) -> GraphPresentation:
    """
    Follower-set automaton of a sofic shift.

    Edges extend the current run (label i) while some member of S_i allows
    it, and switch to the next letter (label next(i), or every other letter
    for generalized shifts) when the run length is a member of S_i. The
    graph is trimmed to its essential part and follower-equivalent states
    are merged.

    Args:
        shift: Shift whose sets all have closed forms

    Returns:
        Right-resolving, essential, minimized presentation

    Raises:
        UnknownMembership: If soficity is undecidable (bounded explicit sets)
        NotSofic: If the shift is not sofic
    """
    verdict = is_sofic(shift)
    if verdict is Verdict.UNKNOWN:
        raise UnknownMembership("Soficity is unknown for bounded explicit sets")
    if verdict is Verdict.NO:
        raise NotSofic("Shift is not sofic")
    graph = _raw_automaton(shift)
    raw_size = graph.number_of_nodes()
    make_essential(graph)
    presentation = _minimize(graph)
    logger.debug(f"Follower automaton: {raw_size} raw states, {len(presentation.states)} after minimization")
    return presentation


def adjacency_matrix(g: GraphPresentation) -> np.ndarray:
    """
    Adjacency matrix indexed by g.states.

    Returns:
        Square integer matrix; entry (s, t) counts edges s → t
    """
    if not g.states:
        return np.zeros((0, 0), dtype=int)
    return nx.to_numpy_array(g.to_networkx(), nodelist=list(g.states), dtype=int)


def _radius_bounds(matrix: np.ndarray, tol: float, max_steps: int) -> Tuple[float, float]:
    """Collatz–Wielandt bounds on the spectral radius of a primitive matrix."""
    x = np.ones(matrix.shape[0])
    lower, upper = 0.0, math.inf
    for _ in range(max_steps):
        y = matrix @ x
        ratios = y / x
        lower, upper = max(lower, ratios.min()), min(upper, ratios.max())
        if math.log(upper - 1.0) - math.log(lower - 1.0) <= tol:
            return lower, upper
        x = y / np.linalg.norm(y)
    logger.warning(f"Power iteration stopped after {max_steps} steps with bracket [{lower}, {upper}]")
    return lower, upper


def spectral_radius_bounds(g: GraphPresentation, tol: float = None) -> Tuple[float, float]:
    """
    Certified bracket on the spectral radius of the adjacency matrix.

    Each nontrivial strongly connected component C is handled separately:
    A_C + I is primitive, so power iteration converges and the
    Collatz–Wielandt ratios min(Bx/x) ≤ ρ(B) ≤ max(Bx/x) bracket its
    Perron root. ρ(A) is the largest ρ(A_C) = ρ(A_C + I) - 1.

    Args:
        g: Graph presentation
        tol: Target width of the bracket in log scale (defaults to config)

    Returns:
        (lower, upper) bounds on ρ(A)

    Raises:
        EmptyGraph: If the graph has no cycle
    """
    tol = tol or config.DEFAULT_ENTROPY_TOL
    matrix = adjacency_matrix(g).astype(float)
    graph = g.to_networkx()
    index = {s: k for k, s in enumerate(g.states)}
    best: Optional[Tuple[float, float]] = None
    for component in nx.strongly_connected_components(graph):
        nodes = sorted(index[s] for s in component)
        block = matrix[np.ix_(nodes, nodes)]
        if not block.any():
            continue
        lower, upper = _radius_bounds(block + np.eye(len(nodes)), tol, config.POWER_ITERATION_MAX_STEPS)
        if best is None or lower - 1.0 > best[0]:
            best = (lower - 1.0, upper - 1.0)
    if best is None:
        raise EmptyGraph("Graph has no cycle; the presented shift is empty")
    return best


def spectral_entropy(g: GraphPresentation, tol: float = None) -> float:
    """
    Entropy log ρ(A) of the presented shift (natural log).

    Args:
        g: Graph presentation
        tol: Absolute error allowed on the result (defaults to config)

    Returns:
        Natural log of the spectral radius

    Raises:
        EmptyGraph: If the graph has no states or no cycle
    """
    if not g.states:
        raise EmptyGraph("Graph has no states")
    lower, upper = spectral_radius_bounds(g, tol)
    return math.log(math.sqrt(lower * upper))


def export_dot(g: GraphPresentation) -> str:
    """
    Render the graph as Graphviz DOT text.

    Nodes are named L<letter>R<position>; states are listed in sorted order,
    then edges in (src, dst, label) order.

    Returns:
        DOT text ending with a newline
    """
    lines = ["digraph presentation {"]
    for state in g.states:
        lines.append(f"  {state.node_name};")
    for edge in g.edges:
        lines.append(f'  {edge.src.node_name} -> {edge.dst.node_name} [label="{edge.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def label_words(g: GraphPresentation, n: int) -> Set[RunWord]:
    """
    Label sequences of all length-n paths.

    Args:
        g: Graph presentation
        n: Path length

    Returns:
        Set of words read along the paths
    """
    frontier: Dict[State, Set[Tuple[int, ...]]] = {s: {()} for s in g.states}
    for _ in range(n):
        step: Dict[State, Set[Tuple[int, ...]]] = {s: set() for s in g.states}
        for edge in g.edges:
            step[edge.dst] |= {word + (edge.label,) for word in frontier[edge.src]}
        frontier = step
    words = set().union(*frontier.values()) if frontier else set()
    return {RunWord.from_letters(w) for w in words}
