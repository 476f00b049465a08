import pytest

import tclab

HALF = [["1", "0"], ["1/2", "1/2"]]


def test_schema():
    assert tclab.REPORT_SCHEMA == "tclab-report/1"


def test_field_invariants():
    K = tclab.Field([-1, -1, 1], label="Q(sqrt 5)")
    assert K.degree == 2
    assert K.discriminant == "5"
    info = K.info()
    assert info["signature"] == [2, 0]
    assert info["class_group"]["group"] == "0"
    assert info["units"]["rank"] == 1


def test_class_group_with_basis():
    K = tclab.Field([23, 0, 1], integral_basis=HALF)
    assert K.discriminant == "-23"
    assert K.class_group()["group"] == "Z/3"


def test_refusals():
    with pytest.raises(ValueError):
        tclab.Field([-5, 0, 1])  # Z[sqrt 5] is not maximal
    with pytest.raises(ValueError):
        tclab.Field([1, 0, 2])
    K = tclab.Field([-1, -1, 1])
    with pytest.raises(ValueError):
        K.rusb(3, [3])


def test_example1_groups():
    K = tclab.Field([-1, -1, 1])
    assert [K.ray_class(3, m)["group"] for m in ([5], [5, 107], [5, 107, 197])] == ["0", "Z/3", "Z/27"]
    assert K.primes_above(5)[0]["e"] == 2


def test_rusb_two_routes():
    L = tclab.Field([-1, -2, 1, 1])
    dims = []
    for S in ([], [7], [7, 181, 293], [7, 181, 293, 307, 349]):
        r = L.rusb(2, S)
        assert r["dim"] == r["h1"]["rusb"]
        dims.append(r["dim"])
    assert dims == [3, 2, 2, 0]
    assert tclab.Field([0, 1]).rusb(3, [])["dim"] == 0


def test_sandwich_and_exceptional():
    L = tclab.Field([-1, -2, 1, 1])
    s = L.sandwich(2, [7, 181, 293], [7, 181, 293, 307, 349])
    assert (s["lower"], s["upper"], s["certified"]) == (2, 2, True)
    e = L.exceptional([7, 181, 293])
    assert not e["condition_c"] and not e["exceptional"]
    assert tclab.Field([1, 0, 1]).exceptional([5])["condition_a"] is False


def test_preserving_primes():
    X = tclab.Field([-1, -1, 1]).preserving_primes(3, [], count=3)
    assert [P["label"] for P in X["X"]] == ["7_1", "139_1", "139_2"]
    assert X["verified"]


@pytest.mark.parametrize("name", ["example1", "example2"])
def test_reproduce(name):
    r = tclab.reproduce(name)
    assert r["schema"] == "tclab-report/1"
    assert r["golden_diff"] == []


def test_unknown_builtin():
    with pytest.raises(ValueError):
        tclab.reproduce("example3")
