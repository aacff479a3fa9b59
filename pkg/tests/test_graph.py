import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mbckit import (
    CapExceededError,
    ContractViolationError,
    CostedInstance,
    DisconnectedGraphError,
    DuplicateEdgeError,
    FormatError,
    Graph,
    SelfLoopError,
    UnknownLabelError,
    apsp,
    cost_array,
    enumerate_shortest_paths,
    on_shortest_path,
    parse_costs,
    parse_graph,
    parse_instance,
    to_instance_json,
)
from mbckit.generators import gen_random

from oracle_utils import dist_sigma_int


class TestGraphConstruction:
    def test_labels_in_first_appearance_order(self):
        g = Graph([("x", "y"), ("y", "a"), ("a", "x")])
        assert g.labels == ("x", "y", "a")
        assert g.id_of == {"x": 0, "y": 1, "a": 2}
        assert g.n == 3 and g.m == 3

    def test_labels_coerced_to_strings(self):
        g = Graph([(0, 1), (1, 2)])
        assert g.labels == ("0", "1", "2")

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            Graph([("a", "b"), ("b", "b")])

    def test_duplicate_edge_rejected_in_both_orientations(self):
        with pytest.raises(DuplicateEdgeError):
            Graph([("a", "b"), ("a", "b")])
        with pytest.raises(DuplicateEdgeError):
            Graph([("a", "b"), ("b", "a")])

    def test_empty_edge_list_rejected(self):
        with pytest.raises(FormatError):
            Graph([])

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            Graph([("a", "b"), ("c", "d")])

    def test_neighbors_degree_has_edge(self, c4):
        assert c4.neighbors(0) == [1, 3]
        assert c4.degree(0) == 2
        assert c4.has_edge(0, 1) and c4.has_edge(1, 0)
        assert not c4.has_edge(0, 2)

    def test_ids_and_label_round_trip(self, p3):
        assert p3.ids(["c", "a"]) == [2, 0]
        assert p3.label(1) == "b"
        with pytest.raises(UnknownLabelError):
            p3.ids(["nope"])

    def test_csr_matches_adjacency(self, c4):
        mat = c4.csr()
        assert mat.shape == (4, 4)
        dense = mat.toarray()
        for u in range(4):
            for v in range(4):
                assert bool(dense[u, v]) == c4.has_edge(u, v) if u != v else True


class TestParsing:
    def test_edge_list_with_comments_and_blanks(self):
        g = parse_graph("# header\n a b # inline\n\nb c\n")
        assert g.labels == ("a", "b", "c")

    def test_malformed_edge_line(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_graph("a b\na b c\n")

    def test_empty_document(self):
        with pytest.raises(FormatError):
            parse_graph("   \n")

    def test_json_instance(self):
        text = json.dumps(
            {"edges": [["a", "b"], ["b", "c"]], "costs": {"b": 3}, "budget": 2}
        )
        inst = parse_instance(text)
        assert inst.graph.labels == ("a", "b", "c")
        assert inst.cost.tolist() == [1.0, 3.0, 1.0]
        assert inst.budget == 2.0

    def test_explicit_arguments_beat_json_fields(self):
        text = json.dumps({"edges": [["a", "b"]], "costs": {"a": 5}, "budget": 9})
        inst = parse_instance(text, costs_text="b 7\n", budget=1)
        assert inst.cost.tolist() == [1.0, 7.0]
        assert inst.budget == 1.0

    def test_missing_budget(self):
        with pytest.raises(FormatError, match="budget"):
            parse_instance("a b\n")

    def test_bad_json_shapes(self):
        with pytest.raises(FormatError):
            parse_graph("{not json")
        with pytest.raises(FormatError):
            parse_graph(json.dumps({"edges": "ab"}))
        with pytest.raises(FormatError):
            parse_graph(json.dumps({"nodes": []}))
        with pytest.raises(FormatError):
            parse_instance(json.dumps({"edges": [["a", "b"]], "budget": True}))

    def test_costs_file_defaults_and_errors(self, p3):
        cost = parse_costs("b 2.5\n# note\n", p3)
        assert cost.tolist() == [1.0, 2.5, 1.0]
        with pytest.raises(UnknownLabelError):
            parse_costs("zz 1\n", p3)
        with pytest.raises(FormatError):
            parse_costs("b\n", p3)
        with pytest.raises(FormatError):
            parse_costs("b twelve\n", p3)
        with pytest.raises(FormatError):
            parse_costs("b -1\n", p3)

    def test_to_instance_json_round_trip(self, c4):
        text = to_instance_json(c4, cost=np.array([1.0, 2.0, 3.0, 4.0]), budget=5)
        inst = parse_instance(text)
        g2 = inst.graph
        assert sorted(g2.labels) == sorted(c4.labels)
        before = {frozenset((c4.labels[u], c4.labels[v])) for u, v in c4.edge_list}
        after = {frozenset((g2.labels[u], g2.labels[v])) for u, v in g2.edge_list}
        assert after == before
        # costs follow labels, whatever the new id assignment
        assert [float(inst.cost[g2.id_of[lab]]) for lab in c4.labels] == [1.0, 2.0, 3.0, 4.0]
        assert inst.budget == 5.0


class TestCostedInstance:
    def test_unit_helper(self, p3):
        inst = CostedInstance.unit(p3, 2)
        assert inst.unit_costs and inst.budget == 2.0
        assert inst.cost_of([0, 2]) == 2.0

    def test_validation(self, p3):
        with pytest.raises(ContractViolationError):
            CostedInstance(p3, np.ones(2), 1.0)
        with pytest.raises(ContractViolationError):
            CostedInstance(p3, -np.ones(3), 1.0)
        with pytest.raises(ContractViolationError):
            CostedInstance(p3, np.full(3, np.inf), 1.0)
        with pytest.raises(ContractViolationError):
            CostedInstance(p3, np.ones(3), -1.0)


class TestApsp:
    def test_p3_counts(self, p3):
        pc = apsp(p3)
        assert pc.dist[0, 2] == 2
        assert pc.sigma[0, 2] == 1.0
        assert pc.sigma[0, 0] == 1.0 and pc.dist[0, 0] == 0

    def test_c4_counts(self, c4):
        pc = apsp(c4)
        assert pc.dist[0, 2] == 2
        assert pc.sigma[0, 2] == 2.0

    def test_arrays_read_only(self, p3):
        pc = apsp(p3)
        with pytest.raises(ValueError):
            pc.dist[0, 0] = 5

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_bfs_counting_on_random_graphs(self, seed):
        g = gen_random(4 + seed * 2, 0.3, seed=seed)
        pc = apsp(g)
        dists, sigmas = dist_sigma_int(g.n, list(g.edge_list))
        for s in range(g.n):
            for t in range(g.n):
                assert pc.dist[s, t] == dists[s][t]
                assert pc.sigma[s, t] == float(sigmas[s][t])


class TestPathPredicates:
    def test_on_shortest_path(self, c4):
        pc = apsp(c4)
        assert on_shortest_path(pc, 0, 1, 2)
        assert on_shortest_path(pc, 0, 3, 2)
        assert not on_shortest_path(pc, 0, 2, 1)
        assert on_shortest_path(pc, 0, 0, 2)  # endpoints count
        with pytest.raises(ContractViolationError):
            on_shortest_path(pc, 0, 9, 2)

    def test_enumerate_c4_diagonal(self, c4):
        assert enumerate_shortest_paths(c4, 0, 2) == [[0, 1, 2], [0, 3, 2]]

    def test_enumerate_orders_lexicographically(self):
        # two middle layers: 0 - {1,2} - 3
        g = Graph([("s", "u"), ("s", "v"), ("u", "t"), ("v", "t")])
        paths = enumerate_shortest_paths(g, 0, g.id_of["t"])
        assert paths == sorted(paths)
        assert len(paths) == 2

    def test_enumerate_same_endpoint(self, p3):
        assert enumerate_shortest_paths(p3, 1, 1) == [[1]]

    def test_enumerate_cap(self, c4):
        with pytest.raises(CapExceededError) as err:
            enumerate_shortest_paths(c4, 0, 2, cap=1)
        assert err.value.count == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.randoms(use_true_random=False))
def test_parse_serialize_round_trip(n, rng):
    g = gen_random(n, rng.random(), seed=rng.randrange(10_000))
    again = parse_graph(to_instance_json(g))
    assert sorted(again.labels) == sorted(g.labels)
    before = {frozenset((g.labels[u], g.labels[v])) for u, v in g.edge_list}
    after = {frozenset((again.labels[u], again.labels[v])) for u, v in again.edge_list}
    assert after == before


def test_cost_array_accepts_int_labels():
    g = Graph([(0, 1), (1, 2)])
    arr = cost_array(g, {1: 4})
    assert arr.tolist() == [1.0, 4.0, 1.0]
