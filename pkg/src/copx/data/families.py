"""Built-in instance families.

Graph families enumerate edge subsets of the right size and keep the ones passing a
`networkx` predicate, so every vertex is feasible by construction.
"""

import itertools
import logging
import math
import re
from collections.abc import Callable, Iterator, Sequence
from pathlib import Path
from typing import Optional

import networkx as nx

from copx.data.instance import Instance, default_labels, load_instance
from copx.exceptions import InstanceError, SizeCapError
from copx.typing import BinaryVector, Family, FilePath
from copx.utils.cli.family import FamilyArgs

logger = logging.getLogger(__name__)

Edge = tuple[int, int]

_COMPLETE_GRAPH = re.compile(r"^[Kk](\d+)$")


def complete_graph_edges(m: int) -> list[Edge]:
    return sorted(tuple(sorted(e)) for e in nx.complete_graph(m).edges())


def named_graph_edges(name: str) -> list[Edge]:
    if name.lower() == "triangle":
        return complete_graph_edges(3)

    match = _COMPLETE_GRAPH.match(name)
    if match is None:
        raise InstanceError(
            f"unknown graph {name!r}. Use 'triangle', 'K<m>' or an explicit --edges list"
        )

    m = int(match.group(1))
    if m < 2:
        raise InstanceError(f"complete graph needs at least 2 nodes. Received: {name}")
    return complete_graph_edges(m)


def parse_edges(edges: Sequence[str]) -> list[Edge]:
    parsed: list[Edge] = []
    for text in edges:
        try:
            u, v = (int(part) for part in text.split("-"))
        except ValueError:
            raise InstanceError(
                f"edges must look like 'u-v'. Received: {text!r}"
            ) from None
        if u == v:
            raise InstanceError(f"self loops are not allowed: {text!r}")
        parsed.append((min(u, v), max(u, v)))

    if len(set(parsed)) != len(parsed):
        raise InstanceError(f"repeated edge in {list(edges)}")
    return parsed


def edge_labels(edges: Sequence[Edge]) -> tuple[str, ...]:
    return tuple(f"{u}-{v}" for u, v in edges)


def _check_candidates(total: int, size: int, max_candidates: int):
    candidates = math.comb(total, size)
    if candidates > max_candidates:
        raise SizeCapError("candidate subsets", candidates, max_candidates)


def _enumerate(
    n: int,
    size: int,
    accept: Callable[[tuple[int, ...]], bool],
    max_candidates: int,
) -> Iterator[BinaryVector]:
    _check_candidates(n, size, max_candidates)
    for subset in itertools.combinations(range(n), size):
        if accept(subset):
            chosen = set(subset)
            yield tuple(int(i in chosen) for i in range(n))


def _subgraph(
    nodes: Sequence[int], edges: Sequence[Edge], subset: Sequence[int]
) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(edges[i] for i in subset)
    return graph


def _graph_nodes(edges: Sequence[Edge]) -> list[int]:
    return sorted({node for edge in edges for node in edge})


def spanning_tree_vectors(
    edges: Sequence[Edge], max_candidates: int
) -> list[BinaryVector]:
    nodes = _graph_nodes(edges)

    def is_spanning_tree(subset: tuple[int, ...]) -> bool:
        return nx.is_tree(_subgraph(nodes, edges, subset))

    return list(_enumerate(len(edges), len(nodes) - 1, is_spanning_tree, max_candidates))


def perfect_matching_vectors(
    edges: Sequence[Edge], max_candidates: int
) -> list[BinaryVector]:
    nodes = _graph_nodes(edges)
    if len(nodes) % 2:
        return []

    graph = nx.Graph(list(edges))

    def is_perfect_matching(subset: tuple[int, ...]) -> bool:
        return nx.is_perfect_matching(graph, {edges[i] for i in subset})

    return list(
        _enumerate(len(edges), len(nodes) // 2, is_perfect_matching, max_candidates)
    )


def tour_vectors(
    cities: int, max_candidates: int
) -> tuple[list[Edge], list[BinaryVector]]:
    """Hamiltonian cycles of the complete graph on `cities` nodes, one per undirected
    tour."""
    edges = complete_graph_edges(cities)
    nodes = list(range(cities))

    def is_tour(subset: tuple[int, ...]) -> bool:
        graph = _subgraph(nodes, edges, subset)
        return all(degree == 2 for _, degree in graph.degree()) and nx.is_connected(graph)

    return edges, list(_enumerate(len(edges), cities, is_tour, max_candidates))


def k_subset_vectors(n: int, k: int, max_candidates: int) -> list[BinaryVector]:
    return list(_enumerate(n, k, lambda _: True, max_candidates))


def gen_family(
    family: Family, params: FamilyArgs, cube_cap: Optional[int] = 20
) -> Instance:
    """Build an instance for one of the built-in families.

    Args:
        family (Family): which family to enumerate
        params (FamilyArgs): family parameters; `params.family` is ignored in favor of
            `family`
        cube_cap (Optional[int]): largest allowed ground set size. None disables the
            check.

    Raises:
        InstanceError: if the parameters are invalid or the family is empty
        SizeCapError: if the ground set or the candidate scan is too large

    Returns:
        Instance: the instance with lexicographically sorted vertices
    """
    max_candidates = params.max_candidates

    if family == Family.k_subsets:
        if params.n is None or params.k is None:
            raise InstanceError("k-subsets requires n and k")
        n = params.n
        _check_ground_set(n, cube_cap)
        labels = default_labels(n)
        vertices = k_subset_vectors(n, params.k, max_candidates)
        tag = f"k-subsets:n={n},k={params.k}"

    elif family in (Family.spanning_trees, Family.perfect_matchings):
        if params.edges is not None:
            edges = parse_edges(params.edges)
            graph_name = ",".join(params.edges)
        elif params.graph is not None:
            edges = named_graph_edges(params.graph)
            graph_name = params.graph
        else:
            raise InstanceError(f"{family.value} requires a graph or an edge list")

        n = len(edges)
        _check_ground_set(n, cube_cap)
        labels = edge_labels(edges)
        if family == Family.spanning_trees:
            vertices = spanning_tree_vectors(edges, max_candidates)
        else:
            vertices = perfect_matching_vectors(edges, max_candidates)
        tag = f"{family.value}:{graph_name}"

    elif family == Family.tsp_tours:
        if params.cities is None or params.cities < 3:
            raise InstanceError(
                f"tsp requires at least 3 cities. Received: {params.cities}"
            )
        n = params.cities * (params.cities - 1) // 2
        _check_ground_set(n, cube_cap)
        edges, vertices = tour_vectors(params.cities, max_candidates)
        labels = edge_labels(edges)
        tag = f"tsp:m={params.cities}"

    elif family == Family.explicit:
        if not params.vertices:
            raise InstanceError("explicit family requires at least one vertex")
        n = len(params.vertices[0])
        _check_ground_set(n, cube_cap)
        labels = params.labels if params.labels is not None else default_labels(n)
        vertices = list(params.vertices)
        tag = "explicit"

    else:
        raise InstanceError(f"unknown family: {family}")

    if not vertices:
        raise InstanceError(f"feasible family is empty for {tag}")

    inst = Instance(n=n, labels=labels, vertices=vertices, family_tag=tag)
    logger.info(f"Generated {tag}: |X| = {inst.size}, N = {inst.n}")
    return inst


def _check_ground_set(n: int, cube_cap: Optional[int]):
    if cube_cap is not None and n > cube_cap:
        raise SizeCapError("ground set size n", n, cube_cap)


_BUILTINS: dict[str, FamilyArgs] = {
    "fig1": FamilyArgs(family=Family.spanning_trees, graph="triangle"),
    "k4-trees": FamilyArgs(family=Family.spanning_trees, graph="K4"),
    "k4-matchings": FamilyArgs(family=Family.perfect_matchings, graph="K4"),
    "tsp4": FamilyArgs(family=Family.tsp_tours, cities=4),
    "tsp5": FamilyArgs(family=Family.tsp_tours, cities=5),
}
BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_instance(name: str) -> Instance:
    """Shipped fixtures: fig1 (triangle spanning trees), k4-trees, k4-matchings, tsp4 and
    tsp5."""
    params = _BUILTINS.get(name)
    if params is None:
        raise InstanceError(
            f"unknown builtin instance {name!r}. Choose from {BUILTIN_NAMES}"
        )
    inst = gen_family(params.family, params)
    return Instance(n=inst.n, labels=inst.labels, vertices=inst.vertices, family_tag=name)


def resolve_instance(ref: FilePath) -> Instance:
    """A builtin instance name or a path to an instance JSON file."""
    if str(ref) in _BUILTINS:
        return builtin_instance(str(ref))
    path = Path(ref)
    if not path.exists():
        raise InstanceError(
            f"{ref!r} is neither an instance file nor a builtin name {BUILTIN_NAMES}"
        )
    return load_instance(path)
