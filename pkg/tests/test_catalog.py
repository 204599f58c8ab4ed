import numpy as np
import pytest

from hallforge import rep as R
from hallforge.catalog import Catalog, random_representation, validate_catalog_json
from hallforge.errors import UnknownLabel
from hallforge.quiver import Quiver, linear_quiver


@pytest.mark.parametrize("q", [2, 3])
def test_indecomposable_counts_linear(q):
    # equioriented A_n has one indecomposable per interval
    assert len(Catalog(linear_quiver(2), q).catalog((1, 1))) == 3
    assert len(Catalog(linear_quiver(3), q).catalog((1, 1, 1))) == 6
    assert len(Catalog(linear_quiver(2), q).catalog((2, 2))) == 3


def test_class_counts_a2(a2):
    counts = {d: len(a2.iso_classes(d)) for d in [(0, 0), (1, 0), (0, 1), (1, 1)]}
    assert counts == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2}
    assert [c.label for c in a2.iso_classes((1, 1))] == ["S2+S1", "M(1,1)"]


def test_a1_classes(a1):
    assert [c.label for c in a1.classes_below((3,))] == ["0", "S1", "S1^2", "S1^3"]


def test_kronecker_regular_family():
    kron = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    cat = Catalog(kron, 2)
    # q + 1 regular simples of dimension (1,1)
    assert len(cat.indecomposables((1, 1))) == 3
    assert cat.parse_label("M(1,1)#2").dims == (1, 1)


def test_label_roundtrip(catalogs):
    cat = catalogs(3, 2)
    for cls in cat.classes_below((1, 1, 1)):
        assert cat.parse_label(cls.label) == cls


def test_unknown_labels(a2):
    for bad in ["S9", "M(1,1)#4", "M(1)", "Q"]:
        with pytest.raises(UnknownLabel):
            a2.parse_label(bad)


@pytest.mark.parametrize("seed", range(10))
def test_classify_is_base_change_invariant(seed, catalogs):
    cat = catalogs(2, 3)
    rng = np.random.default_rng(seed)
    m = random_representation(cat.quiver, 3, (2, 2), rng)
    assert cat.classify(m) == cat.classify(R.random_base_change(m, rng))
    assert R.is_isomorphic(cat.classify(m).rep, m)


def test_persistence_and_validation(a2):
    data = a2.to_json((2, 2))
    fresh = Catalog(a2.quiver, 2)
    fresh.load_json(data)
    assert [c.label for c in fresh.classes_below((2, 2))] == [c.label for c in a2.classes_below((2, 2))]
    assert validate_catalog_json(fresh, data) == []
    data["indecomposables"].append(dict(data["indecomposables"][-1]))
    assert validate_catalog_json(fresh, data)
