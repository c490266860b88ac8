from __future__ import annotations

import pytest

import projclose

TRIPOD = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
FIVE_POINT = [(1, 0, 0), (0, 1, 0), (0, 1, 1)]
DENSE = [(1, 0, 0), (1, 1, 0), (1, 1, 1)]


def basis_of(vectors: list[tuple[int, int, int]]) -> projclose.BasisSpec:
    return projclose.BasisSpec.from_triples(vectors)


@pytest.fixture
def tripod_basis() -> projclose.BasisSpec:
    return basis_of(TRIPOD)


@pytest.fixture
def five_point_basis() -> projclose.BasisSpec:
    return basis_of(FIVE_POINT)


@pytest.fixture
def dense_basis() -> projclose.BasisSpec:
    return basis_of(DENSE)


@pytest.fixture(scope="session")
def dense_closure() -> tuple[projclose.PointStore, projclose.ClosureTrace]:
    """The dense basis under the default caps, shared because it takes a moment."""
    return projclose.run_closure(basis_of(DENSE), projclose.ClosureCaps())


@pytest.fixture(scope="session")
def dense_density(
    dense_closure: tuple[projclose.PointStore, projclose.ClosureTrace],
) -> projclose.DensityReport:
    store, trace = dense_closure
    return projclose.density_report(store, trace, projclose.sample_directions(10_000))
