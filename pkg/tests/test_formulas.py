"""Bit-exactness of derived parameters.

The recorded values below are frozen: the certificate checker recomputes
them, so any drift here breaks previously written certificates.
"""

import math

import pytest

from boxlab.errors import ParameterError
from boxlab.formulas import (
    auto_partition_params,
    bipartite_params,
    caught_t,
    colouring_l_min,
    colouring_t_min,
    degen_t,
    degen_target,
    genus_split_k,
    ltw_target,
    meets_bound,
    stepzero_threshold,
)


def test_auto_partition_params_frozen():
    assert auto_partition_params(1000) == (691, 5)
    assert auto_partition_params(30) == (30, 1)
    assert auto_partition_params(2) == (2, 1)
    # clamp boundary: d = ceil(100 ln Delta) >= Delta up to Delta = 648
    assert auto_partition_params(648) == (648, 1)
    assert auto_partition_params(649) == (648, 4)
    with pytest.raises(ParameterError):
        auto_partition_params(1)


def test_bipartite_params_frozen():
    assert bipartite_params(16, 64) == (2, 151, 9)
    r, ell, t = bipartite_params(100, 500)
    assert r == math.ceil(math.sqrt(math.log(100)))
    assert meets_bound(ell, colouring_l_min(100, r))
    assert meets_bound(t, colouring_t_min(100, 500))
    with pytest.raises(ParameterError):
        bipartite_params(1, 5)
    with pytest.raises(ParameterError):
        bipartite_params(10, 5)


def test_bipartite_params_always_clear_their_own_bounds():
    for d in (2, 3, 7, 16, 50, 213, 691):
        for delta in (d, 2 * d, 10 * d):
            r, ell, t = bipartite_params(d, delta)
            assert meets_bound(ell, colouring_l_min(d, r))
            assert meets_bound(t, colouring_t_min(d, delta))


def test_caught_t_values():
    assert caught_t(1, 2) == math.ceil(3 * math.log(2))
    assert caught_t(8, 100) == math.ceil(1.5 * 9 * math.log(100))
    with pytest.raises(ParameterError):
        caught_t(0, 10)
    with pytest.raises(ParameterError):
        caught_t(3, 1)


def test_degen_values():
    assert degen_target(3, 50) == 5 * math.ceil(2 * math.e * math.log(50))
    assert degen_t(3, 50) == math.ceil(1.5 * 4 * 2 * math.e * math.log(50))
    assert degen_target(0, 2) == 2 * math.ceil(2 * math.e * math.log(2))


def test_genus_split_k():
    assert genus_split_k(0) == 8
    assert genus_split_k(1) == 8
    assert genus_split_k(2) == 7 + math.ceil(math.sqrt(2 / math.log(2)))
    assert genus_split_k(100) == 12
    with pytest.raises(ParameterError):
        genus_split_k(-1)


def test_ltw_target():
    assert ltw_target(1) == 10
    assert ltw_target(3) == 22
    with pytest.raises(ParameterError):
        ltw_target(0)


def test_meets_bound_strictness():
    assert not meets_bound(10.0, 10.0)
    assert meets_bound(10.0 + 1e-6, 10.0)
    assert not meets_bound(10.0 + 1e-12, 10.0)
    assert meets_bound(11, 10.5)


def test_stepzero_threshold_value():
    d, delta = 3, 30
    want = (4 * d + 4) ** (1 / d) * math.e / d * delta ** (1 + 1 / d)
    assert stepzero_threshold(d, delta) == want
    assert meets_bound(213, stepzero_threshold(3, 30))
