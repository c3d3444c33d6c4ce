"""Shared fixtures: bases are expensive at s = 2, compute each once."""

import functools

import pytest

from morava32.groebner import buchberger
from morava32.presentations import build, default_order, forget_v


@functools.lru_cache(maxsize=None)
def _gb(group: str, s: int):
    nv = forget_v(build(group, s))
    return buchberger(nv.polynomials(), default_order(nv.table))


@pytest.fixture(scope="session")
def gbs():
    """Callable (group, s) -> reduced basis of the v-forgotten presentation."""
    return _gb
