"""Smoke tests for the python module: one happy path per operation family."""

import json
import math

import pytest

import ishicone as ic

EYE3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]


def test_star_frame_structure():
    f = ic.star3()
    assert (f.rank, f.order, f.ambient_dim) == (3, 3, 5)
    assert f.sizes == [1, 1, 1]
    assert f.axioms_pass
    assert f.dim(1, 2) == 0 and f.dim(1, 3) == 1 and f.dim(2, 3) == 1
    assert f.basis(2, 3) == [[[1.0]]]
    assert ic.verify_axioms(f)["passed"]


def test_make_frame_matches_catalog():
    f = ic.make_frame([1, 1, 1], {(1, 3): [[[1.0]]], (2, 3): [[[1.0]]]})
    assert f.axioms_pass
    assert ic.frame_to_json(f) == ic.frame_to_json(ic.star3())


def test_membership_classification():
    f = ic.star3()
    assert ic.in_cone(f, EYE3) == "interior"
    assert ic.in_cone(f, [[1, 0, 1], [0, 0, 0], [1, 0, 1]]) == "boundary"
    assert ic.in_cone(f, [[1, 0, 0], [0, 1, 0], [0, 0, -1]]) == "outside"
    assert ic.in_cone(f, [[1, 1, 0], [1, 1, 0], [0, 0, 1]]) == "not_in_span"


def test_conditions_and_selfduality():
    f = ic.star3()
    assert ic.primal_condition(f)["holds"]
    dual = ic.dual_condition(f)
    assert not dual["holds"]
    assert dual["violations"] == [(1, 2, 3, 0, 1)]
    assert ic.operator_condition(f, "dual")["holds"] == dual["holds"]
    report = ic.is_selfdual(f)
    assert not report["selfdual"] and report["criteria_agree"]
    assert ic.is_selfdual(ic.full(3))["selfdual"]
    assert ic.indecomposable_components(f) == [[1, 2, 3]]


def test_decompose_and_bounds():
    f = ic.star3()
    dec = ic.decompose(f, EYE3)
    assert len(dec["terms"]) == 3
    assert all(t["weight"] == 1.0 for t in dec["terms"])

    hit = ic.dual_witness_search(f, EYE3)
    assert hit is not None and len(hit["terms"]) == 2
    assert hit["terms"][0]["generator"] == [[1, 0, 1], [0, 1, 1], [1, 1, 1]]

    assert ic.dual_witness_search(ic.full(3), EYE3) is None
    assert ic.caratheodory_bounds(f, EYE3, "primal") == (3, 3, False)
    assert ic.caratheodory_bounds(f, EYE3, "dual") == (1, 2, True)


def test_witness_constructions():
    dec = ic.dual_witness(ic.star3(), 1, 2, 3, [[1.0]], [[1.0]])
    assert len(dec["terms"]) == 2
    assert dec["point"] == EYE3
    with pytest.raises(ic.Error):
        ic.dual_witness(ic.full(3), 1, 2, 3, [[1.0]], [[1.0]])
    w3 = ic.witness3()
    dec = ic.primal_witness(w3, 1, 2, 3, [[1.0], [0.0]], [[0.0], [1.0]])
    assert len(dec["terms"]) == 2


def test_factorization_roundtrip():
    f = ic.full(3)
    x = [[4.0, 1.0, 0.5], [1.0, 3.0, 0.25], [0.5, 0.25, 2.0]]
    t = ic.orbit_factor(f, x)
    n = 3
    recon = [
        [sum(t[k][i] * t[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]
    assert all(
        math.isclose(recon[i][j], x[i][j], abs_tol=1e-9) for i in range(n) for j in range(n)
    )
    assert all(t[i][j] == 0.0 for i in range(n) for j in range(i))

    y = ic.group_act(ic.star3(), [[1, 0, 1], [0, 1, 1], [0, 0, 1]], EYE3, "dual")
    td = ic.dual_orbit_factor(ic.star3(), y)
    assert math.isclose(td[0][2], 1.0, abs_tol=1e-9)

    assert ic.minimal_face(ic.star3(), [[1, 0, 1], [0, 0, 0], [1, 0, 1]]) == [1]
    assert ic.maximal_chain_rank(ic.star3()) == 3


def test_graph_classification():
    g = ic.Graph.star(4)
    res = ic.classify_sparse(g)
    assert res["homogeneous"]
    assert res["ordering"][-1] == 4  # the center goes last
    assert ic.frame_from_graph(g, res["ordering"]).axioms_pass

    p4 = ic.Graph.path(4)
    res = ic.classify_sparse(p4)
    assert not res["homogeneous"] and sorted(res["obstruction"]) == [1, 2, 3, 4]
    assert ic.is_chordal(p4)["chordal"]
    assert not ic.is_chordal(ic.Graph.cycle(4))["chordal"]

    classes = ic.enumerate_connected_homogeneous(4)
    assert sorted(c["frame_dimension"] for c in classes) == [7, 8, 9, 10]
    assert sum(c["labelled_count"] for c in classes) == 23


def test_catalog_and_json_roundtrip():
    names = [name for name, _ in ic.homogeneous_catalog()]
    assert "star3" in names and "witness3" in names
    for name, f in ic.random_frames(3, 2026):
        text = ic.frame_to_json(f)
        back = ic.frame_from_json(text)
        assert ic.frame_to_json(back) == text
        json.loads(text)  # valid JSON as far as python is concerned


def test_errors_are_catchable():
    with pytest.raises(ic.Error):
        ic.make_frame([], {})
    with pytest.raises(ic.Error):
        ic.orbit_factor(ic.star3(), [[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    with pytest.raises(ic.Error):
        ic.caratheodory_bounds(ic.star3(), EYE3, "sideways")
