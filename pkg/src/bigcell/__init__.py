"""Exact truncated free-field realization engine for untwisted affine
Kac-Moody algebras: coordinate flows on the big cell, the doubled
realization with abstract gl-loop generators, the free-field vertex layer,
the splitting one-form, and the zeta-regularization pipeline."""

from .roots import build_affine_data, AffineData, RootDataError
from .loop import StructureConstants, LieElt
from .realize import Realization, DgElement
from .bch import BchEngine, GroupWord, pi_truncate
from .states import VAState, nth_product, mode_apply, translate

__all__ = [
    'build_affine_data', 'AffineData', 'RootDataError',
    'StructureConstants', 'LieElt', 'Realization', 'DgElement',
    'BchEngine', 'GroupWord', 'pi_truncate',
    'VAState', 'nth_product', 'mode_apply', 'translate',
]
