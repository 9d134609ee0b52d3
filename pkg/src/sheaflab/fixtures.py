"""Small bundled complexes and input files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .complex import GeometricComplex, SimplicialComplex, load_complex, read_points_csv

FIXTURES = (
    "unit_right_triangle.json",
    "hollow_triangle.json",
    "k3_graph.json",
    "tetrahedron.json",
    "unit_square.csv",
    "unit_right_triangle_face_vectors.csv",
    "full_triangle_weights.csv",
    "one_edge_moduli.csv",
)


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return Path(str(resources.files("sheaflab") / "data" / name))


def unit_right_triangle() -> GeometricComplex:
    """Filled triangle at (0,0,0), (1,0,0), (0,1,0)."""
    return load_complex(fixture_path("unit_right_triangle.json"))


def hollow_triangle() -> SimplicialComplex:
    return load_complex(fixture_path("hollow_triangle.json"))


def k3_graph() -> GeometricComplex:
    """The three edges of the unit right triangle, no face."""
    return load_complex(fixture_path("k3_graph.json"))


def tetrahedron() -> GeometricComplex:
    return load_complex(fixture_path("tetrahedron.json"))


def unit_square_cloud():
    return read_points_csv(fixture_path("unit_square.csv"))
