import sys
import os

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bigcell.roots import build_affine_data
from bigcell.loop import StructureConstants
from bigcell.realize import Realization
from bigcell.splitting import solve_phi


@pytest.fixture(scope='session')
def sl2():
    data = build_affine_data("A1~")
    return Realization(StructureConstants(data))


@pytest.fixture(scope='session')
def a2():
    data = build_affine_data("A2~")
    return Realization(StructureConstants(data))


@pytest.fixture(scope='session')
def sl2_phi(sl2):
    """One-form correction for the rank-one algebra, deep enough for the
    grade-2 pair suite (brackets reach grade 4)."""
    phi, report = solve_phi(sl2, cutoff=8, n_max=4, pair_n=2)
    return phi, report


@pytest.fixture(scope='session')
def sl2_phi_small(sl2):
    phi, report = solve_phi(sl2, cutoff=6, n_max=2, pair_n=1)
    return phi, report


@pytest.fixture(scope='session')
def a2_phi(a2):
    phi, report = solve_phi(a2, cutoff=5, n_max=2, pair_n=1)
    return phi, report
