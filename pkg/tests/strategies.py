"""Hypothesis strategies for graphs, permutations and posets."""
from itertools import combinations

from hypothesis import strategies as st

from app.domain.entities import CotreeKind, CotreeNode
from app.domain.graph import Graph, build_graph
from app.domain.poset import Poset, poset_from_linear_orders, poset_from_permutation


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 12) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@st.composite
def permutations(draw, min_n: int = 0, max_n: int = 12) -> list[int]:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    return draw(st.permutations(list(range(n))))


@st.composite
def dimension_two_posets(draw, min_n: int = 0, max_n: int = 12) -> Poset:
    return poset_from_permutation(draw(permutations(min_n, max_n)))


@st.composite
def posets(draw, min_n: int = 0, max_n: int = 10, max_dim: int = 3) -> Poset:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    dim = draw(st.integers(min_value=1, max_value=max_dim))
    orders = [draw(st.permutations(list(range(n)))) for _ in range(dim)]
    return poset_from_linear_orders(orders)


@st.composite
def cotrees(draw, max_n: int = 16) -> CotreeNode:
    """Binary cotrees over ``0..n-1`` with random join/union labels."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    order = draw(st.permutations(list(range(n))))

    def build(vertices: list[int]) -> CotreeNode:
        if len(vertices) == 1:
            return CotreeNode.leaf(vertices)
        cut = draw(st.integers(min_value=1, max_value=len(vertices) - 1))
        kind = draw(st.sampled_from([CotreeKind.JOIN, CotreeKind.UNION]))
        return CotreeNode(kind, children=[build(vertices[:cut]), build(vertices[cut:])])

    return build(order)
