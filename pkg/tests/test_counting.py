from fractions import Fraction

import networkx as nx
import pytest

from ehrhart.core.bases import is_magic_positive, power_to_magic
from ehrhart.core.counting import (
    BipartiteOracle,
    CompleteOracle,
    CountMethod,
    CycleBoxOracle,
    GraphDfsOracle,
    GraphSpec,
    MinusEdgeOracle,
    StasheffBoxOracle,
    choose_oracle,
    count_bipartite_dual,
    count_complete_dual,
    count_complete_minus_edge_dual,
    count_cycle_dual,
    count_graph_dual,
    count_stasheff_dual,
    ehrhart_from_counts,
    graph_from_record,
    is_graph_shortcut,
    parse_graph,
    sample_counts,
    sandwich_bounds,
    spread_count,
    spread_count_brute,
)
from ehrhart.core.errors import BudgetExceededError, GraphError, InterpolationError, ParseError
from ehrhart.core.families import cross_dual, cycle_dual, stasheff_dual, type_a_dual
from ehrhart.core.selftest import K10_MINUS_EDGE_MAGIC, K10_MINUS_EDGE_POWER, K37_MAGIC

HOUSE = GraphSpec(5, ((0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)), root=4)


class TestBoxOracles:
    def test_stasheff_examples(self):
        assert count_stasheff_dual(2, 1) == 8
        assert count_stasheff_dual(3, 1) == 21
        assert count_stasheff_dual(5, 0) == 1

    def test_cycle_examples(self):
        assert count_cycle_dual(2, 1) == 7
        assert count_cycle_dual(3, 1) == 19
        assert count_cycle_dual(4, 0) == 1

    @pytest.mark.parametrize("d", range(1, 6))
    def test_stasheff_agrees_with_recurrence(self, d):
        polynomial = stasheff_dual(d)
        for n in range(5):
            assert count_stasheff_dual(d, n) == polynomial(n)

    @pytest.mark.parametrize("d", range(1, 7))
    def test_cycle_agrees_with_formula(self, d):
        polynomial = cycle_dual(d)
        for n in range(4):
            assert count_cycle_dual(d, n) == polynomial(n)

    def test_recovered_polynomial(self):
        assert ehrhart_from_counts(CycleBoxOracle(3), 3) == cycle_dual(3)
        assert ehrhart_from_counts(StasheffBoxOracle(4), 4, oversample=2) == stasheff_dual(4)

    def test_budget_refusal(self):
        with pytest.raises(BudgetExceededError) as info:
            count_stasheff_dual(6, 4, budget=100)
        assert info.value.budget == 100
        assert info.value.expanded > 100

    def test_negative_dilation(self):
        with pytest.raises(ValueError):
            StasheffBoxOracle(2).count(-1)

    def test_dimension_zero_rejected(self):
        with pytest.raises(ValueError):
            CycleBoxOracle(0)


class TestGraphDfs:
    def test_single_edge(self):
        assert count_graph_dual(GraphSpec(2, ((0, 1),)), 3) == 7

    def test_path_is_cross(self):
        path = parse_graph("path:4")
        assert count_graph_dual(path, 2) == 125
        for n in range(4):
            assert count_graph_dual(path, n) == cross_dual(3)(n)

    def test_triangle_is_type_a(self):
        assert count_graph_dual(parse_graph("complete:3"), 1) == 7

    def test_cycle_graph_matches_cycle_dual(self):
        for v in range(3, 7):
            graph = parse_graph(f"cycle:{v}")
            for n in range(3):
                assert count_graph_dual(graph, n) == cycle_dual(v - 1)(n)

    def test_root_independence(self):
        for root in range(HOUSE.num_vertices):
            assert count_graph_dual(HOUSE.with_root(root), 2) == count_graph_dual(HOUSE, 2)

    def test_budget_refusal_reports_nodes(self):
        with pytest.raises(BudgetExceededError) as info:
            count_graph_dual(parse_graph("cycle:8"), 5, budget=50)
        assert info.value.expanded == 51

    def test_isomorphic_graphs_count_alike(self):
        relabelled = nx.relabel_nodes(HOUSE.to_networkx(), {0: 3, 1: 0, 2: 4, 3: 1, 4: 2})
        other = GraphSpec.from_networkx(relabelled)
        assert nx.is_isomorphic(other.to_networkx(), HOUSE.to_networkx())
        for n in range(3):
            assert count_graph_dual(other, n) == count_graph_dual(HOUSE, n)

    def test_house_sandwich(self):
        for n in range(4):
            bounds = sandwich_bounds(HOUSE, n)
            assert bounds.holds
        bounds = sandwich_bounds(HOUSE, 1)
        assert bounds.lower == type_a_dual(4)(1)
        assert bounds.upper == 3 ** 4


class TestSpread:
    def test_values(self):
        assert spread_count(1, 3) == 2
        assert spread_count(2, 1) == 6
        assert spread_count(7, 1) == 254
        assert spread_count(4, 0) == 1
        assert spread_count(0, 2) == 0

    @pytest.mark.parametrize("k", range(4))
    def test_matches_enumeration(self, k):
        for s in range(7):
            assert spread_count(k, s) == spread_count_brute(k, s)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            spread_count(-1, 2)


class TestClosedOracles:
    def test_bipartite_examples(self):
        assert count_bipartite_dual(3, 7, 1) == 2967
        assert count_bipartite_dual(4, 5, 0) == 1
        assert count_bipartite_dual(2, 2, 1) == 19
        assert count_bipartite_dual(2, 2, 1) == count_graph_dual(parse_graph("cycle:4"), 1)

    def test_bipartite_symmetry(self):
        for m in range(1, 5):
            for m2 in range(1, 5):
                for n in range(3):
                    assert count_bipartite_dual(m, m2, n) == count_bipartite_dual(m2, m, n)

    @pytest.mark.parametrize("m,m2", [(1, 3), (2, 3), (3, 3), (2, 4)])
    def test_bipartite_matches_dfs(self, m, m2):
        graph = parse_graph(f"k_bipartite:{m},{m2}")
        for root in (0, graph.num_vertices - 1):
            for n in range(4):
                assert count_graph_dual(graph.with_root(root), n) == count_bipartite_dual(m, m2, n)

    def test_star_is_cross(self):
        # K_{1,m2} is a tree
        for n in range(4):
            assert count_bipartite_dual(1, 4, n) == cross_dual(4)(n)

    def test_minus_edge_examples(self):
        assert count_complete_minus_edge_dual(10, 1) == 1025
        assert count_complete_minus_edge_dual(6, 0) == 1

    @pytest.mark.parametrize("v", [4, 5])
    def test_minus_edge_matches_dfs(self, v):
        graph = parse_graph(f"complete_minus_edge:{v}")
        for n in range(4):
            assert count_graph_dual(graph, n) == count_complete_minus_edge_dual(v, n)

    def test_complete_is_type_a(self):
        for v in range(2, 8):
            for n in range(6):
                assert count_complete_dual(v, n) == type_a_dual(v - 1)(n)

    def test_closed_oracles_validate(self):
        with pytest.raises(ValueError):
            BipartiteOracle(0, 3)
        with pytest.raises(ValueError):
            MinusEdgeOracle(3)
        with pytest.raises(ValueError):
            CompleteOracle(1)


class TestInterpolation:
    def test_k37_counterexample(self):
        polynomial = ehrhart_from_counts(BipartiteOracle(3, 7), 9)
        assert polynomial.degree == 9
        assert polynomial.leading == Fraction(128, 3)
        assert polynomial.coefficient(8) == 192
        assert polynomial.coefficient(1) == Fraction(72, 5)
        assert polynomial(1) == 2967
        magic = power_to_magic(polynomial, 9)
        assert magic.a == K37_MAGIC
        verdict = is_magic_positive(magic)
        assert verdict.witnesses == ((3, Fraction(-142, 15)), (6, Fraction(-142, 15)))

    def test_k10_minus_edge_counterexample(self):
        polynomial = ehrhart_from_counts(MinusEdgeOracle(10), 9)
        assert polynomial.leading == Fraction(92, 9)
        assert polynomial(1) == 1025
        assert polynomial.coeffs == K10_MINUS_EDGE_POWER
        magic = power_to_magic(polynomial, 9)
        assert magic.a == K10_MINUS_EDGE_MAGIC
        verdict = is_magic_positive(magic)
        assert not verdict.positive
        assert verdict.witnesses == ((3, Fraction(-19, 45)), (6, Fraction(-19, 45)))

    def test_wrong_degree_is_detected(self):
        with pytest.raises(InterpolationError) as info:
            ehrhart_from_counts(CycleBoxOracle(3), 2)
        assert info.value.expected == count_cycle_dual(3, 3)

    def test_plain_callable(self):
        assert ehrhart_from_counts(lambda n: (2 * n + 1) ** 2, 2) == cross_dual(2)

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            ehrhart_from_counts(CompleteOracle(3), -1)
        with pytest.raises(ValueError):
            ehrhart_from_counts(CompleteOracle(3), 2, oversample=0)

    def test_sample_counts(self):
        reports = sample_counts(CompleteOracle(3), [0, 1, 2])
        assert [r.count for r in reports] == [1, 7, 19]
        assert reports[1].to_record() == {"n": 1, "count": "7", "method": "complete_closed"}


class TestGraphSpec:
    def test_normalizes_edges(self):
        graph = GraphSpec(3, ((2, 1), (1, 0)))
        assert graph.edges == ((0, 1), (1, 2))
        assert graph.dimension == 2

    @pytest.mark.parametrize("vertices,edges,root", [
        (1, (), 0),
        (3, ((0, 1),), 0),
        (3, ((0, 1), (1, 1)), 0),
        (3, ((0, 1), (1, 0), (1, 2)), 0),
        (3, ((0, 1), (1, 3)), 0),
        (3, ((0, 1), (1, 2)), 5),
    ])
    def test_rejects(self, vertices, edges, root):
        with pytest.raises(GraphError):
            GraphSpec(vertices, edges, root)

    def test_graph_errors_are_parse_errors(self):
        with pytest.raises(ParseError):
            GraphSpec(3, ((0, 1),))

    def test_record(self):
        record = {"vertices": 3, "edges": [[0, 1], [1, 2]], "root": 1, "description": "path"}
        graph = graph_from_record(record)
        assert graph.root == 1
        assert graph.to_record() == {"vertices": 3, "edges": [[0, 1], [1, 2]], "root": 1}

    @pytest.mark.parametrize("record", [
        {"vertices": 3, "edges": [[0, 1], [1, 1.7]]},
        {"vertices": 3, "edges": [[0, 1], [1, 2.0]]},
        {"vertices": 3, "edges": [[0, 1], [1, "2"]]},
        {"vertices": 3, "edges": [[0, 1], [1, True]]},
        {"vertices": 3.0, "edges": [[0, 1], [1, 2]]},
        {"vertices": 3, "edges": [[0, 1], [1, 2]], "root": 0.5},
    ])
    def test_record_rejects_non_integers(self, record):
        with pytest.raises(GraphError, match="must be an integer"):
            graph_from_record(record)

    def test_record_missing_fields(self):
        with pytest.raises(GraphError):
            graph_from_record({"edges": [[0, 1]]})


class TestShortcuts:
    def test_parse(self):
        assert parse_graph("k_bipartite:3,7").num_vertices == 10
        assert len(parse_graph("k_bipartite:3,7").edges) == 21
        assert len(parse_graph("complete_minus_edge:10").edges) == 44
        assert len(parse_graph("cycle:5").edges) == 5

    @pytest.mark.parametrize("text", ["k_bipartite:3", "cycle:x", "petersen:10", "cycle"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            parse_graph(text)

    def test_too_small(self):
        with pytest.raises(GraphError):
            parse_graph("complete_minus_edge:3")
        with pytest.raises(GraphError):
            parse_graph("path:1")

    def test_is_shortcut(self):
        assert is_graph_shortcut("cycle:4")
        assert not is_graph_shortcut("stasheff:4")
        assert not is_graph_shortcut("cycle")


class TestRouting:
    def test_complete(self):
        oracle = choose_oracle(parse_graph("complete:5"))
        assert isinstance(oracle, CompleteOracle)
        assert oracle.method is CountMethod.COMPLETE_CLOSED

    def test_bipartite_root_side(self):
        graph = parse_graph("k_bipartite:3,7")
        oracle = choose_oracle(graph)
        assert isinstance(oracle, BipartiteOracle)
        assert (oracle.m, oracle.m2) == (3, 7)
        flipped = choose_oracle(graph.with_root(9))
        assert (flipped.m, flipped.m2) == (7, 3)

    def test_even_cycle_is_bipartite(self):
        oracle = choose_oracle(parse_graph("cycle:4"))
        assert isinstance(oracle, BipartiteOracle)
        assert oracle.count(1) == 19

    def test_path_of_two_is_complete(self):
        oracle = choose_oracle(parse_graph("path:2"))
        assert isinstance(oracle, CompleteOracle)
        assert oracle.count(5) == 11

    def test_minus_edge_any_labelling(self):
        graph = nx.complete_graph(6)
        graph.remove_edge(0, 3)
        oracle = choose_oracle(GraphSpec.from_networkx(graph))
        assert isinstance(oracle, MinusEdgeOracle)

    def test_fallback(self):
        oracle = choose_oracle(HOUSE, budget=1234)
        assert isinstance(oracle, GraphDfsOracle)
        assert oracle.budget == 1234
        assert oracle.degree == 4
