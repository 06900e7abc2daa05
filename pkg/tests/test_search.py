import pytest

from fibsurf.search import SearchSpace, canonical_matrix, enumerate_configurations, two_component_search


def test_two_component_minimum():
    table = two_component_search(30, 60)
    assert len(table) == 76
    assert table[0].as_tuple() == (2, 3, 6, 11)
    assert all(e.genus >= 11 for e in table)


def test_genus_13_configuration_found():
    found = list(enumerate_configurations(SearchSpace(5, 3, 1)))
    assert len(found) == 8
    full = [f for f in found if f.mults == (2, 2, 2, 3, 3) and all(
        f.matrix[i][j] == 1 for i in range(5) for j in range(5) if i != j)]
    assert [f.genus for f in full] == [13]
    assert "winters" in full[0].flags


def test_results_are_sorted_and_unique():
    found = list(enumerate_configurations(SearchSpace(3, 4, 2)))
    keys = [f.sort_key() for f in found]
    assert keys == sorted(keys)
    assert len({(f.labels, f.matrix) for f in found}) == len(found)


def test_canonical_matrix_relabelling():
    labels = ((2, 0), (2, 0), (3, 0))
    m = ((0, 0, 1), (0, 0, 2), (1, 2, 0))
    assert canonical_matrix(labels, m) == ((0, 0, 1), (0, 0, 2), (1, 2, 0))
    swapped = ((0, 0, 2), (0, 0, 1), (2, 1, 0))
    assert canonical_matrix(labels, swapped) == canonical_matrix(labels, m)


def test_max_genus_and_minus_one_filters():
    assert all(f.genus <= 6 for f in enumerate_configurations(SearchSpace(5, 3, 1, max_genus=6)))
    assert list(enumerate_configurations(SearchSpace(0, 3, 1))) == []
    with pytest.raises(ValueError):
        SearchSpace(-1, 2, 2)
