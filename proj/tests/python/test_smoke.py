"""Smoke tests for the python bindings: one pass over each exposed surface."""

import math
import os

import pytest

import espgroups as eg

DATA = os.environ.get(
    "ESP_DATA_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "data"),
)


def hall9():
    return eg.qf_load(os.path.join(DATA, "hall9.qtable"))


def test_prime_field_verifies():
    table = eg.qf_prime(5)
    assert table.order == 5
    assert table.one == 1
    report = eg.qf_verify(table)
    assert report.all_pass()
    assert table.add(3, 4) == 2
    assert table.mul(3, 4) == 2


def test_hall9_is_a_non_field_quasifield():
    table = hall9()
    report = eg.qf_verify(table)
    assert report.all_pass()
    assoc = next(c for c in report.checks if c.axiom == "mul-associativity")
    assert assoc.informational and not c_pass(assoc)


def c_pass(check):
    return check.pass_


def test_group_law_and_relations():
    params = eg.GroupParams(eg.Family.M, eg.qf_prime(3), 1)
    b = eg.GElem([0], [1], 0)
    cube = eg.gpow(params, b, 3)
    assert (cube.x, cube.y, cube.z) == ([0], [0], 1)  # b^p = c in M_1
    assert eg.check_relations(params).all_pass()
    assert eg.check_associativity_exhaustive(params).all_ok()


def test_errors_map_to_python():
    with pytest.raises(eg.NotPrime):
        eg.qf_prime(4)
    with pytest.raises(eg.NotMFamily):
        eg.GroupParams(eg.Family.M, hall9(), 1)


def test_brick_coverage():
    params = eg.GroupParams(eg.Family.M, eg.qf_prime(3), 1)
    full = eg.Brick(params, [[0, 1, 2]], [[0, 1, 2]], [0, 1, 2])
    report = eg.coverage(full)
    assert report.N == 9
    assert report.certified == 9
    assert report.sound()
    assert eg.large_z_branch(full)
    assert eg.eq1_check(eg.qf_prime(3), [0, 1])
    assert eg.sumset(eg.qf_prime(3), [0, 1], [0, 1]) == [0, 1, 2]


def test_spectrum():
    graph = eg.SPGraph(eg.qf_prime(3), 1)
    assert graph.side_size == 9
    report = eg.spectrum(graph)
    assert report.pass_
    assert math.isclose(report.lambda1, 3.0, abs_tol=1e-6)
    assert math.isclose(report.lambda2, math.sqrt(3.0), abs_tol=1e-6)
    assert math.isclose(report.lambda_min, -3.0, abs_tol=1e-6)
