import json

import networkx as nx
import pytest

from reebspace.export import UsageError, export, to_dot, to_json, to_obj
from reebspace.generators import generate
from reebspace.reeb_space import ReebSpaceNet, compute_reeb_space

from conftest import net_of


@pytest.fixture(scope="module")
def s4net():
    return compute_reeb_space(generate("s4boundary", 1, "linear"))


def test_json_is_deterministic(s4net):
    again = compute_reeb_space(generate("s4boundary", 1, "linear"))
    for a, b in [(s4net, again), (s4net.mdrg, again.mdrg), (s4net.mdrg.jstruct, again.mdrg.jstruct),
                 (s4net.mdrg.rg1, again.mdrg.rg1), (s4net.mdrg.js, again.mdrg.js)]:
        assert to_json(a) == to_json(b)


def test_net_json_schema(s4net):
    doc = json.loads(to_json(s4net))
    ids = [n["id"] for n in doc["nodes"]]
    assert ids == list(range(len(ids)))
    keys = [(n["f"][0], n["f"][1]) for n in doc["nodes"]]
    assert keys == sorted(keys)
    kinds = {n["kind"] for n in doc["nodes"]}
    assert kinds <= {"jacobi-vertex", "double-point", "embedded-rg2-node"}
    assert {e["kind"] for e in doc["edges"]} == {"jacobi", "reeb-arc"}
    n = len(ids)
    assert all(0 <= e["src"] < n and 0 <= e["dst"] < n for e in doc["edges"])


def test_graph_json_has_types_and_values(s4net):
    doc = json.loads(to_json(s4net.mdrg.rg1))
    assert doc["type"] == "reeb-graph"
    assert all(n["kind"] in ("minimum", "maximum", "down-fork", "up-fork", "degree2")
               for n in doc["nodes"])
    vals = [n["value"] for n in doc["nodes"]]
    assert vals == sorted(vals)


def test_empty_net():
    net = ReebSpaceNet(None, None)
    for fmt in ("json", "dot", "obj"):
        assert export(net, fmt)
    assert json.loads(to_json(net))["nodes"] == []
    assert to_dot(net).decode().strip() == "graph net {\n}"


def test_dot_styles(s4net):
    text = to_dot(s4net).decode()
    assert "style=dashed" in text and "style=solid" in text
    assert text.count("style=dashed") == len(s4net.edges_of_kind("jacobi"))


def test_fig1_dot_has_solid_cycle():
    text = to_dot(net_of("torus3", 6, "fig1")).decode()
    g = nx.MultiGraph()
    for line in text.splitlines():
        if "--" in line and "style=solid" in line:
            a, b = line.split("[")[0].split("--")
            g.add_edge(a.strip(), b.strip())
    assert nx.cycle_basis(nx.Graph(g)) or g.number_of_edges() > nx.Graph(g).number_of_edges()


def test_obj_groups_and_offsets(s4net):
    lines = to_obj(s4net).decode().splitlines()
    verts = [ln for ln in lines if ln.startswith("v ")]
    assert len(verts) == len(s4net.nodes)
    assert "g jacobi" in lines and "g reeb-arc" in lines
    pts = [tuple(ln.split()[1:]) for ln in verts]
    assert len(set(pts)) == len(pts)
    n_l = sum(ln.startswith("l ") for ln in lines)
    assert n_l == len(s4net.edges)


def test_obj_of_mdrg_is_a_usage_error(s4net):
    with pytest.raises(UsageError):
        to_obj(s4net.mdrg)
    with pytest.raises(UsageError):
        export(s4net, "svg")
    with pytest.raises(UsageError):
        to_json(object())
