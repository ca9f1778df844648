import pytest

from qatorsion.covers import BOUNDARY, WhiteGraph, kanenobu_white_graph
from qatorsion.diagrams import (DiagramError, LinkDiagram, braid_closure,
                                figure_eight_diagram, kanenobu_diagram,
                                torus_knot_diagram, unknot_diagram,
                                white_graph_diagram)


def test_arc_labels_must_appear_twice():
    with pytest.raises(DiagramError):
        LinkDiagram([(1, 2, 3, 4)])


def test_face_count_euler():
    for d in [braid_closure([1], 2), braid_closure([1, 1, 1], 2),
              figure_eight_diagram(), torus_knot_diagram(3, 5),
              kanenobu_diagram(0, 3)]:
        assert len(d.faces()) == d.n_crossings + 2


def test_checkerboard_colors_proper():
    for d in [braid_closure([1, 1, 1], 2), figure_eight_diagram(),
              kanenobu_diagram(2, -1)]:
        colors = d.checkerboard_colors()
        fq = d.face_of_quadrant()
        for ci in range(d.n_crossings):
            for k in range(4):
                assert colors[fq[(ci, k)]] != colors[fq[(ci, (k + 1) % 4)]]
        assert colors[d.unbounded_face()] == 1


def test_components_and_writhe():
    assert braid_closure([1, 1, 1], 2).n_components() == 1
    assert braid_closure([1, 1, 1], 2).writhe() == 3
    assert braid_closure([-1, -1, -1], 2).writhe() == -3
    assert braid_closure([1, 1], 2).n_components() == 2
    assert braid_closure([1, -1], 2).n_components() == 2
    assert torus_knot_diagram(3, 5).writhe() == 10
    assert unknot_diagram().n_components() == 1
    assert figure_eight_diagram().writhe() == 0


def test_free_strand_becomes_loop():
    d = braid_closure([1], 3)  # strand 3 untouched
    assert d.free_loops == 1
    assert d.n_components() == 2


def test_twist_family_diagram_size_and_knottedness():
    for (p, q) in [(0, 0), (0, 3), (1, -1), (-2, 3), (3, 3), (-10, 13)]:
        d = kanenobu_diagram(p, q)
        assert d.n_crossings == 8 + abs(p) + abs(q)
        assert d.n_components() == 1
        assert d.is_connected()


def test_pd_text_round_trip():
    d = braid_closure([1, 1, 1], 2)
    text = d.to_text()
    assert text.startswith("X[")
    assert "O[0:" in text
    back = LinkDiagram.from_text(text)
    assert back.crossings == d.crossings
    assert back.writhe() == d.writhe()


def test_pd_text_rejects_wrong_orientation_line():
    d = braid_closure([1, 1, 1], 2)
    comp = d.components()[0]
    text = ", ".join("X[%d,%d,%d,%d]" % c for c in d.crossings)
    bad = text + "\nO[0: " + " ".join(str(a) for a in reversed(comp)) + "]\n"
    with pytest.raises(DiagramError):
        LinkDiagram.from_text(bad)
    garbled = text + "\nO[0: 1 1 1]\n"
    with pytest.raises(DiagramError):
        LinkDiagram.from_text(garbled)


def test_nonplanar_tuples_rejected():
    # a tuple soup whose rotation system fails the sphere face count
    with pytest.raises(DiagramError):
        LinkDiagram([(1, 2, 3, 4), (1, 3, 2, 4)]).faces()


def test_white_graph_diagram_requires_boundary_rotation():
    graph = WhiteGraph(vertices=1, edges=((1, BOUNDARY, 1),) * 3,
                       cyclic=((0, 2, 4),))
    with pytest.raises(DiagramError):
        white_graph_diagram(graph)
    with_boundary = WhiteGraph(vertices=1, edges=((1, BOUNDARY, 1),) * 3,
                               cyclic=((0, 2, 4), (5, 3, 1)))
    d = white_graph_diagram(with_boundary)
    assert d.n_crossings == 3
    assert d.n_components() == 1


def test_generated_diagram_faces_match_white_regions():
    graph = kanenobu_white_graph(-1, 2)
    d = white_graph_diagram(graph)
    colors = d.checkerboard_colors()
    whites = [f for f in range(len(d.faces())) if colors[f] == 1]
    # one white region per graph vertex plus the unbounded one
    assert len(whites) == graph.vertices + 1


def test_trefoil_graph_diagram_matches_homology_determinant():
    graph = WhiteGraph(vertices=1, edges=((1, BOUNDARY, 1),) * 3,
                       cyclic=((0, 2, 4), (5, 3, 1)))
    d = white_graph_diagram(graph)
    from qatorsion.skein import goeritz_invariants
    assert goeritz_invariants(d)[1] == 3
