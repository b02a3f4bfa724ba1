import numpy as np
import pytest

from pcpkit.errors import InvalidInputError
from pcpkit.tensor_core import (
    PcpInstance,
    PolynomialMap,
    Tensor,
    as_map,
    componentwise_power,
    componentwise_root,
    fd_jacobian,
    instance_from_json,
    instance_to_json,
    leading_term,
    map_from_json,
    map_to_json,
    min_map,
    tensor_from_json,
    tensor_to_json,
)


def diag_cube() -> Tensor:
    c = np.zeros((2, 2, 2, 2))
    c[0, 0, 0, 0] = 1.0
    c[1, 1, 1, 1] = 1.0
    return Tensor(c)


def test_tensor_apply_matrix_case():
    t = Tensor(np.array([[2.0, 0.0], [1.0, 3.0]]))
    assert t.order == 2 and t.dim == 2
    assert np.allclose(t.apply([1.0, 2.0]), [2.0, 7.0])


def test_tensor_apply_cube():
    t = diag_cube()
    assert t.order == 4
    assert np.allclose(t.apply([2.0, -1.0]), [8.0, -1.0])


def test_tensor_apply_batch_matches_single():
    rng = np.random.default_rng(0)
    t = Tensor(rng.normal(size=(3, 3, 3)))
    X = rng.normal(size=(8, 3))
    batch = t.apply_batch(X)
    for i in range(8):
        assert np.allclose(batch[i], t.apply(X[i]))


def test_tensor_jacobian_matches_finite_differences():
    rng = np.random.default_rng(1)
    t = Tensor(rng.normal(size=(2, 2, 2, 2)))
    x = rng.normal(size=2)
    J = t.jacobian(x)
    Jfd = fd_jacobian(t, x)
    assert np.abs(J - Jfd).max() < 1e-5


def test_tensor_equality_and_hash():
    a = diag_cube()
    b = diag_cube()
    assert a == b and hash(a) == hash(b)
    c = Tensor(a.coeffs * 2.0)
    assert a != c


def test_polynomial_map_orders():
    f = PolynomialMap([diag_cube(), Tensor(np.eye(2))])
    assert f.order == 4 and f.degree == 3
    assert sorted(f.terms) == [2, 4]
    assert not f.is_homogeneous()
    assert f.leading == diag_cube()
    x = np.array([2.0, -1.0])
    assert np.allclose(f.eval(x), [10.0, -2.0])


def test_polynomial_map_rejects_duplicates_and_constants():
    with pytest.raises(InvalidInputError):
        PolynomialMap([Tensor(np.eye(2)), Tensor(2.0 * np.eye(2))])
    with pytest.raises(InvalidInputError):
        PolynomialMap([Tensor(np.ones(2))])
    with pytest.raises(InvalidInputError):
        PolynomialMap([])


def test_polynomial_map_rejects_zero_leading():
    with pytest.raises(InvalidInputError):
        PolynomialMap([Tensor(np.zeros((2, 2, 2))), Tensor(np.eye(2))])


def test_polynomial_map_dimension_mismatch():
    with pytest.raises(InvalidInputError):
        PolynomialMap([diag_cube(), Tensor(np.eye(3))])


def test_as_map_and_leading_term():
    t = diag_cube()
    f = as_map(t)
    assert isinstance(f, PolynomialMap) and f.is_homogeneous()
    g = leading_term(PolynomialMap([t, Tensor(np.eye(2))]))
    assert g.is_homogeneous() and g.leading == t


def test_min_map_and_residual():
    f = as_map(diag_cube())
    q = np.array([-1.0, 5.0])
    x = np.array([1.0, 0.0])
    # y = (0, 5); min{x, y} = (0, 0)
    assert np.allclose(min_map(f, q, x), [0.0, 0.0])
    inst = PcpInstance(f, q)
    assert np.allclose(inst.residual(x), [0.0, 0.0])
    assert np.allclose(inst.y(x), [0.0, 5.0])
    assert inst.dim == 2


def test_componentwise_power_and_root_are_inverse():
    y = np.array([-8.0, 0.0, 2.7])
    assert np.allclose(componentwise_power(componentwise_root(y, 3), 3), y)
    assert np.allclose(componentwise_root(np.array([-27.0, 8.0]), 3), [-3.0, 2.0])


def test_componentwise_power_rejects_even_k():
    with pytest.raises(InvalidInputError):
        componentwise_power(np.ones(2), 2)
    with pytest.raises(InvalidInputError):
        componentwise_root(np.ones(2), 4)


def test_tensor_json_round_trip():
    t = diag_cube()
    obj = tensor_to_json(t)
    assert obj["order"] == 4 and obj["dim"] == 2
    # entries carry 1-based indices
    idx = sorted(tuple(e["idx"]) for e in obj["entries"])
    assert idx == [(1, 1, 1, 1), (2, 2, 2, 2)]
    back = tensor_from_json(obj)
    assert back == t


def test_tensor_from_json_rejects_bad_entries():
    with pytest.raises(InvalidInputError):
        tensor_from_json({"order": 2, "dim": 2, "entries": [{"idx": [0, 1], "val": 1.0}]})
    with pytest.raises(InvalidInputError):
        tensor_from_json({"order": 2, "dim": 2, "entries": [{"idx": [3, 1], "val": 1.0}]})


def test_map_json_round_trip_folds_constants():
    f = PolynomialMap([diag_cube(), Tensor(np.eye(2))])
    obj = map_to_json(f)
    back, const = map_from_json(obj)
    assert back == f
    assert np.allclose(const, 0.0)
    # an order-1 term comes back as a constant offset, not a map term
    obj["terms"].append({"order": 1, "dim": 2, "entries": [{"idx": [2], "val": 0.5}]})
    back2, const2 = map_from_json(obj)
    assert back2 == f
    assert np.allclose(const2, [0.0, 0.5])


def test_instance_json_round_trip(tmp_path):
    inst = PcpInstance(as_map(diag_cube()), np.array([-1.0, 2.0]))
    obj = instance_to_json(inst)
    back = instance_from_json(obj)
    assert back.map == inst.map
    assert np.allclose(back.q, inst.q)


def test_fd_jacobian_on_polynomial_map():
    rng = np.random.default_rng(4)
    f = PolynomialMap([Tensor(rng.normal(size=(2, 2, 2))), Tensor(rng.normal(size=(2, 2)))])
    x = rng.normal(size=2)
    assert np.abs(f.jacobian(x) - fd_jacobian(f, x)).max() < 1e-5
