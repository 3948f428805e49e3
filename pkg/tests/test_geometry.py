import csv
import itertools
import json
from fractions import Fraction

import pytest

from borsuk.construction import enumerate_family, intersection_size
from borsuk.geometry import (
    affine_certificates,
    diameter_graph,
    embed,
    export_cloud_csv,
    export_cloud_json,
    export_edges_csv,
)

# exact affine ranks, frozen from independent elimination oracles
# (sympy.Matrix.rank for k <= 2, numpy SVD rank for k = 3)
EXPECTED_RANK = {1: 2, 2: 20, 3: 54}


def coordinate_distance_sq(cloud, u, v):
    """Oracle: materialize coordinates and sum squared differences exactly."""
    cu, cv = cloud.coordinates(u), cloud.coordinates(v)
    return sum((a - b) * (a - b) for a, b in zip(cu, cv))


def test_embed_k1_three_equidistant_points():
    cloud = embed(1)
    assert cloud.n_points == 3
    assert cloud.ambient_dim == 6
    for u, v in itertools.combinations(range(3), 2):
        assert cloud.squared_distance(u, v) == 4
        assert coordinate_distance_sq(cloud, u, v) == 4
    graph = diameter_graph(cloud)
    assert set(graph.edges) == {(0, 1), (0, 2), (1, 2)}
    assert graph.diameter_sq == 4


def test_embed_k2_shape():
    cloud = embed(2)
    assert cloud.n_points == 35
    assert cloud.ambient_dim == 28
    assert cloud.weight == 16
    assert all(bits.bit_count() == 16 for bits in cloud.cut_bits)


def test_unit_scaling_gives_exact_diameter_one():
    cloud = embed(2, unit_diameter=True)
    assert cloud.scale == Fraction(1, 4)
    best = max(
        cloud.squared_distance(u, v)
        for u, v in itertools.combinations(range(cloud.n_points), 2)
    )
    assert best == Fraction(1)
    # exact coordinate-level confirmation on the full 595 pairs
    best_coord = max(
        coordinate_distance_sq(cloud, u, v)
        for u, v in itertools.combinations(range(cloud.n_points), 2)
    )
    assert best_coord == Fraction(1)


def test_distance_identity_with_intersections():
    for k in (1, 2, 3):
        fam = list(enumerate_family(k))
        cloud = embed(k)
        full = 4 * k * k
        for u, v in itertools.combinations(range(len(fam)), 2):
            expected = 2 * (full - intersection_size(fam[u], fam[v]))
            assert cloud.squared_distance(u, v) == expected


def test_squared_distance_identity_and_examples():
    cloud = embed(2)
    assert cloud.squared_distance(7, 7) == 0
    fam = list(enumerate_family(2))
    seen = set()
    for u, v in itertools.combinations(range(35), 2):
        inter = intersection_size(fam[u], fam[v])
        if inter == 8:
            assert cloud.squared_distance(u, v) == 16
        elif inter == 10:
            assert cloud.squared_distance(u, v) == 12
        seen.add(inter)
    assert seen == {8, 10}


def test_diameter_graph_k2_degrees_and_edges():
    cloud = embed(2)
    graph = diameter_graph(cloud)
    assert graph.n_vertices == 35
    assert set(graph.degrees()) == {18}
    fam = list(enumerate_family(2))
    expected = {
        (u, v)
        for u, v in itertools.combinations(range(35), 2)
        if intersection_size(fam[u], fam[v]) == 8
    }
    assert set(graph.edges) == expected
    assert graph.diameter_sq == 16


def test_diameter_graph_matches_minimal_intersection_k3():
    cloud = embed(3)
    graph = diameter_graph(cloud)
    fam = list(enumerate_family(3))
    expected = {
        (u, v)
        for u, v in itertools.combinations(range(462), 2)
        if intersection_size(fam[u], fam[v]) == 18
    }
    assert set(graph.edges) == expected
    assert set(graph.degrees()) == {200}


def test_affine_certificates_raw_k2():
    cloud = embed(2)
    report = affine_certificates(cloud)
    assert report.on_hyperplane and report.on_sphere
    assert report.coordinate_sum == 16
    assert report.squared_norm == 16
    assert report.affine_rank == EXPECTED_RANK[2]
    assert report.affine_rank <= report.ambient_dim - 1 == 27
    # honest coordinate-level recomputation
    for i in range(cloud.n_points):
        coords = cloud.coordinates(i)
        assert sum(coords) == 16
        assert sum(c * c for c in coords) == 16


def test_affine_certificates_scaled():
    cloud = embed(2, unit_diameter=True)
    report = affine_certificates(cloud)
    assert report.coordinate_sum == Fraction(16, 4) == 4
    assert report.squared_norm == Fraction(16, 16) == 1
    assert report.affine_rank == EXPECTED_RANK[2]  # scaling preserves rank


def test_affine_rank_all_small_k():
    for k, expected in EXPECTED_RANK.items():
        report = affine_certificates(embed(k))
        assert report.affine_rank == expected, k
        assert report.affine_rank <= report.ambient_dim - 1


def test_affine_rank_oracle_sympy():
    sympy = pytest.importorskip("sympy")
    for k in (1, 2):
        cloud = embed(k)
        base = cloud.cut_bits[0]
        rows = [
            [((bits >> c) & 1) - ((base >> c) & 1) for c in range(cloud.ambient_dim)]
            for bits in cloud.cut_bits[1:]
        ]
        assert sympy.Matrix(rows).rank() == EXPECTED_RANK[k]


def test_affine_rank_oracle_numpy_k3():
    numpy = pytest.importorskip("numpy")
    cloud = embed(3)
    base = cloud.cut_bits[0]
    rows = numpy.array(
        [
            [((bits >> c) & 1) - ((base >> c) & 1) for c in range(cloud.ambient_dim)]
            for bits in cloud.cut_bits[1:]
        ],
        dtype=float,
    )
    assert numpy.linalg.matrix_rank(rows) == EXPECTED_RANK[3]


def test_rank_cap_omits_rank_but_keeps_certificates():
    report = affine_certificates(embed(2), rank_cap=10)
    assert report.affine_rank is None
    assert report.on_hyperplane and report.on_sphere


def test_cloud_csv_round_trip(tmp_path):
    cloud = embed(1, unit_diameter=True)
    path = tmp_path / "cloud.csv"
    export_cloud_csv(cloud, str(path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "point" and len(rows[0]) == 7
    for i, row in enumerate(rows[1:]):
        assert int(row[0]) == i
        coords = tuple(Fraction(cell) for cell in row[1:])
        assert coords == cloud.coordinates(i)


def test_cloud_json_export(tmp_path):
    cloud = embed(1)
    path = tmp_path / "cloud.json"
    export_cloud_json(cloud, str(path))
    payload = json.loads(path.read_text())
    assert payload["m"] == 4 and payload["k"] == 1
    assert payload["scale"] == "1/1"
    assert len(payload["points"]) == 3
    assert all(len(pt) == 6 for pt in payload["points"])


def test_edges_csv_export(tmp_path):
    graph = diameter_graph(embed(1))
    path = tmp_path / "edges.csv"
    export_edges_csv(graph, str(path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows == [["u", "v"], ["0", "1"], ["0", "2"], ["1", "2"]]
