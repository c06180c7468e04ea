"""Shared fixtures: instances are built and certified once per session.

The `built` factory returns a BuildRecord with the certificate bundle and
the measured build/certify times, so acceptance tests can assert on both
results and budgets without rebuilding anything.
"""

import time
from dataclasses import dataclass

import pytest

from polycert.instances import (cross_basis, cube_basis, cyclic_polar_basis,
                                gen_cross, gen_cube, gen_cyclic_polar)
from polycert.prover import build_certificates
from polycert.verifier import certify_stages


def instance(key):
    """(polytope, analytic starting basis) for a conventional key like
    'cube3', 'cross4' or 'cyclic6_12'."""
    if key.startswith("cube"):
        n = int(key[4:])
        return gen_cube(n), cube_basis(n)
    if key.startswith("cross"):
        n = int(key[5:])
        return gen_cross(n), cross_basis(n)
    if key.startswith("cyclic"):
        n, p = key[6:].split("_")
        return gen_cyclic_polar(int(n), int(p)), cyclic_polar_basis(int(n))
    raise KeyError(key)


@dataclass
class BuildRecord:
    P: object
    C: object
    results: list
    build_seconds: float
    certify_seconds: float

    @property
    def all_passed(self):
        return len(self.results) == 6 and all(r.passed for r in self.results)


@pytest.fixture(scope="session")
def built():
    cache = {}

    def get(key):
        if key not in cache:
            P, hint = instance(key)
            t0 = time.perf_counter()
            C = build_certificates(P, basis_hint=hint)
            t1 = time.perf_counter()
            results = certify_stages(C)
            t2 = time.perf_counter()
            cache[key] = BuildRecord(P, C, results, t1 - t0, t2 - t1)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def lex_oracle():
    """Session-cached exhaustive lex-feasible basis scans."""
    from oracles import all_lex_feasible_bases
    cache = {}

    def get(key):
        if key not in cache:
            P, _ = instance(key)
            cache[key] = all_lex_feasible_bases(P)
        return cache[key]

    return get
