"""Distributed protocol simulation: phases, accounting, classification."""

import numpy as np
import pytest

import boundarykit as bk

TRIANGLE = [[1, 2], [0, 2], [0, 1]]
STAR3 = [[1, 2, 3], [0], [0], [0]]


def default_run(adj, **kw):
    return bk.run_protocol(adj, bk.ProtocolConfig(**kw))


# -- local rule --------------------------------------------------------------


def test_classify_local():
    assert bk.classify_local(0, 0.0) is True
    assert bk.classify_local(5, 4.9) is False
    assert bk.classify_local(5, 5.0) is True    # ties declare
    with pytest.raises(ValueError):
        bk.classify_local(1, -0.1)


def test_theta_domain():
    sigma = bk.sigma_interior()
    for bad in (0.0, -0.2, sigma, 0.45, 1.0):
        with pytest.raises(ValueError):
            bk.ProtocolConfig(theta=bad)
    bk.ProtocolConfig(theta=0.41)  # just under the interior constant
    bk.ProtocolConfig(theta=1e-6)


def test_config_validation():
    with pytest.raises(ValueError):
        bk.ProtocolConfig(smoothing_window=4)   # must be odd
    with pytest.raises(ValueError):
        bk.ProtocolConfig(filter_min_boundary_neighbors=-1)
    with pytest.raises(ValueError):
        bk.ProtocolConfig(degree_cap=0)


# -- worked examples ---------------------------------------------------------


def test_triangle_all_boundary():
    labels, trace = default_run(TRIANGLE)
    assert labels.tolist() == [True, True, True]
    comp = trace.components[0]
    assert comp.dhat == 2
    assert comp.threshold == pytest.approx(1.0 / 3.0)
    assert comp.histogram == {2: 3}


def test_star_filter_off():
    labels, trace = default_run(STAR3, filter_enabled=False)
    # leaves land at or below the threshold, the hub sticks out
    assert trace.declared.tolist() == [False, True, True, True]
    assert labels.tolist() == [False, True, True, True]


def test_star_filter_on_clears_everything():
    # each leaf has one neighbour, the undeclared hub, so the filter
    # removes all three declarations
    labels, trace = default_run(STAR3)
    assert labels.tolist() == [False, False, False, False]
    assert trace.declared.tolist() == [False, True, True, True]


def test_single_node_silent():
    labels, trace = default_run([[]])
    assert trace.total_messages == 0
    assert labels.tolist() == [False]           # filter removes the declaration
    labels2, _ = default_run([[]], filter_enabled=False)
    assert labels2.tolist() == [True]


def test_empty_graph_rejected():
    with pytest.raises(ValueError):
        default_run([])


# -- tree properties ---------------------------------------------------------


def network(seed, n=400, side=6.0, r=0.8):
    reg = bk.PolygonRegion([(0, 0), (side, 0), (side, side), (0, side)])
    return bk.build_network(reg, n, r, seed=seed)


def test_election_and_tree():
    net = network(3)
    labels, trace = default_run(net)
    comp = trace.component_id
    for ci, info in enumerate(trace.components):
        members = np.nonzero(comp == ci)[0]
        # min-id election
        assert info.root == members.min()
        assert info.size == len(members)
        # root histogram is the exact degree histogram of the component
        degs = net.degrees[members]
        expect = {int(d): int(c) for d, c in zip(*np.unique(degs, return_counts=True))}
        assert info.histogram == expect
    # parent levels
    for v in range(net.n):
        p = trace.parent[v]
        if p < 0:
            assert v in [i.root for i in trace.components]
            assert trace.level[v] == 0
        else:
            assert trace.level[v] == trace.level[p] + 1
            assert comp[p] == comp[v]
    # walking up from any node terminates at its component root
    for v in range(0, net.n, 17):
        u, hops = v, 0
        while trace.parent[u] >= 0:
            u = int(trace.parent[u])
            hops += 1
            assert hops <= net.n
        assert u == trace.components[comp[v]].root


def test_multi_component():
    # two disjoint triangles
    adj = [[1, 2], [0, 2], [0, 1], [4, 5], [3, 5], [3, 4]]
    labels, trace = default_run(adj)
    assert trace.multi_component
    assert len(trace.components) == 2
    assert [c.root for c in trace.components] == [0, 3]
    assert all(c.dhat == 2 for c in trace.components)
    assert labels.all()


def test_explicit_root():
    net = network(4)
    labels, trace = default_run(net, root=25)
    roots = [c.root for c in trace.components]
    assert 25 in roots
    # other components, if any, fall back to their min id
    comp_of_25 = trace.component_id[25]
    for ci, info in enumerate(trace.components):
        if ci != comp_of_25:
            members = np.nonzero(trace.component_id == ci)[0]
            assert info.root == members.min()


def test_explicit_root_out_of_range():
    with pytest.raises(ValueError):
        default_run(TRIANGLE, root=7)


# -- phase 5 equals the centralized index ------------------------------------


def test_stress1_matches_centralized():
    for seed in range(6):
        net = network(seed, n=250, r=0.9)
        labels, trace = default_run(net)
        assert np.array_equal(trace.stress1, bk.stress1(net))


def test_declarations_follow_local_rule():
    net = network(11)
    labels, trace = default_run(net, filter_enabled=False)
    for v in range(net.n):
        T = trace.components[trace.component_id[v]].threshold
        assert trace.declared[v] == bk.classify_local(int(trace.stress1[v]), T)
    assert np.array_equal(labels, trace.declared)


def test_filter_semantics():
    net = network(12)
    labels, trace = default_run(net, filter_min_boundary_neighbors=2)
    declared = trace.declared
    for v in range(net.n):
        nb = net.neighbors(v)
        support = int(declared[nb].sum())
        if declared[v]:
            assert labels[v] == (support >= 2)
        else:
            assert not labels[v]


# -- accounting --------------------------------------------------------------


def test_accounting_totals():
    net = network(21)
    labels, trace = default_run(net)
    acc = bk.message_accounting(trace)
    assert acc.total_messages == sum(r.messages for r in trace.rounds)
    assert acc.total_payload == sum(r.payload_units for r in trace.rounds)
    assert set(acc.per_phase) <= {1, 2, 3, 4, 5, 6}
    assert sum(m for m, _ in acc.per_phase.values()) == acc.total_messages
    assert acc.payload_per_node == pytest.approx(acc.total_payload / net.n)


def test_phase5_payload_is_degree_sum():
    net = network(22)
    labels, trace = default_run(net)
    acc = bk.message_accounting(trace)
    assert acc.per_phase[5][1] == int(net.degrees.sum())


def test_round_numbers_strictly_increase():
    net = network(23)
    _, trace = default_run(net)
    nos = [r.round_no for r in trace.rounds]
    assert nos == sorted(nos)
    assert len(set(nos)) == len(nos)
    phases = [r.phase for r in trace.rounds]
    assert phases == sorted(phases)  # phases run in order


def test_trace_deterministic():
    net = network(24)
    l1, t1 = default_run(net)
    l2, t2 = default_run(net)
    assert np.array_equal(l1, l2)
    assert t1.rounds == t2.rounds
    assert t1.components == t2.components


# -- ground truth and rates --------------------------------------------------


def test_classification_rates():
    truth = np.array([True, True, False, False])
    fn, fp = bk.classification_rates(np.array([True, False, True, False]), truth)
    assert fn == pytest.approx(0.5)
    assert fp == pytest.approx(0.5)
    fn, fp = bk.classification_rates(truth, truth)
    assert fn == 0.0 and fp == 0.0


def test_classification_rates_empty_classes():
    truth = np.array([False, False])
    fn, fp = bk.classification_rates(np.array([False, False]), truth)
    assert fn == 0.0 and fp == 0.0


# -- strips ------------------------------------------------------------------


def test_strips_empty():
    assert bk.boundary_strips(TRIANGLE, np.array([False] * 3)) == []


def test_strips_whole_component():
    strips = bk.boundary_strips(TRIANGLE, np.array([True] * 3))
    assert [sorted(s) for s in strips] == [[0, 1, 2]]


def test_strips_split_and_order():
    #  0-1-2   5-6   (labels on a path graph)
    adj = [[1], [0, 2], [1, 3], [2, 4], [3, 5], [4, 6], [5]]
    labels = np.array([True, True, True, False, False, True, True])
    strips = bk.boundary_strips(adj, labels)
    assert [sorted(s) for s in strips] == [[0, 1, 2], [5, 6]]


def test_annulus_two_strips(annulus_run):
    net, labels, trace = annulus_run
    strips = bk.boundary_strips(net, labels)
    declared = int(labels.sum())
    assert len(strips) >= 2
    top2 = len(strips[0]) + len(strips[1])
    assert top2 / declared >= 0.95
    # the two big strips hug different walls: one the outer square,
    # one the hole
    d_outer = bk.distances_to_boundary(
        bk.PolygonRegion(net.region.outer), net.positions
    )
    m0 = np.median(d_outer[list(strips[0])])
    m1 = np.median(d_outer[list(strips[1])])
    assert (m0 < 1.0) != (m1 < 1.0)


# -- exports -----------------------------------------------------------------


def test_trace_csv(tmp_path):
    _, trace = default_run(TRIANGLE)
    p = tmp_path / "trace.csv"
    bk.trace_to_csv(trace, p)
    lines = p.read_text().splitlines()
    assert lines[0] == "round,phase,messages,payload_units"
    assert len(lines) == 1 + len(trace.rounds)


def test_classification_csv(tmp_path):
    net = network(31, n=60)
    labels, trace = default_run(net)
    p = tmp_path / "cls.csv"
    bk.classification_to_csv(net, trace, p)
    lines = p.read_text().splitlines()
    assert lines[0] == "node_id,x,y,degree,stress1,classification,filtered"
    assert len(lines) == 1 + net.n
    row = lines[1].split(",")
    assert int(row[0]) == 0
    assert float(row[1]) == net.positions[0, 0]
    assert row[5] in ("boundary", "interior")


def test_node_state_accessor():
    labels, trace = default_run(TRIANGLE)
    st = trace.node_state(1)
    assert st.node_id == 1
    assert st.degree == 2
    assert st.dhat == 2
    assert st.threshold == pytest.approx(1.0 / 3.0)
    assert st.declared and st.classification == "boundary"
    assert st.parent == 0 and st.level == 1
