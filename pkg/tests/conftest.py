"""Shared fixtures: the standard algebra suite and cached heavy objects.

Mixed complexes and homology reports are the expensive objects, so they are
built once per session at a canonical depth per algebra and shared across
test modules.
"""

import pytest

from cychom.algebra import (FiniteGroup, group_algebra, hecke_algebra,
                            matrix_algebra, symmetric_group_with_perms)
from cychom.catalog import dual_numbers, ground_field, scrambled_dim3
from cychom.homology import cyclic_homology, hochschild_homology
from cychom.mixed import build_mixed_complex

# depth each named algebra is built to when first requested; rand3 has a
# dense scrambled table, so deep eliminations are kept off its menu
CANONICAL_NMAX = {
    "ground": 6,
    "dual": 6,
    "z2": 6,
    "z3": 6,
    "z4": 6,
    "m2q": 6,
    "hecke_s3_s2": 6,
    "rand3": 5,
}


def build_named_algebra(name):
    if name == "ground":
        return ground_field()
    if name == "dual":
        return dual_numbers()
    if name in ("z2", "z3", "z4"):
        return group_algebra(FiniteGroup.cyclic(int(name[1])))
    if name == "m2q":
        return matrix_algebra(ground_field(), 2)
    if name == "hecke_s3_s2":
        g, perms = symmetric_group_with_perms(3)
        k = [i for i, p in enumerate(perms) if p[2] == 2]
        return hecke_algebra(g, k)[0]
    if name == "rand3":
        return scrambled_dim3()
    raise KeyError(name)


@pytest.fixture(scope="session")
def algebras():
    return {name: build_named_algebra(name) for name in CANONICAL_NMAX}


@pytest.fixture(scope="session")
def mixed_complexes(algebras):
    """Callable (name, n_max=None) -> mixed complex of depth >= n_max."""
    cache = {}

    def get(name, n_max=None):
        target = CANONICAL_NMAX[name] if n_max is None else n_max
        have = cache.get(name)
        if have is None or have.n_max < target:
            cache[name] = build_mixed_complex(
                algebras[name], max(target, CANONICAL_NMAX[name]))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def homology_reports(algebras, mixed_complexes):
    """Callable (name, theory, max_degree, representatives) -> cached report."""
    cache = {}

    def get(name, theory, max_degree, representatives=False):
        key = (name, theory, max_degree, representatives)
        if key not in cache:
            mc = mixed_complexes(name, max_degree + 1)
            fn = hochschild_homology if theory == "HH" else cyclic_homology
            cache[key] = fn(algebras[name], max_degree, mc=mc,
                            representatives=representatives)
        return cache[key]

    return get
