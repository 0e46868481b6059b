"""Finite order theory: antichain hierarchies, open maps, Heyting and modal duality."""

import json

from ._finorder import (
    BudgetExceeded,
    DownsetAlgebra,
    Frame,
    Preorder,
    SizeLimitError,
    __version__,
    closure_iff_preorder,
    coreflect,
    enumerate_posets,
    enumerate_preorders,
    frame_of_opposite,
    fullness_check,
    implies_by_search,
    is_closure_algebra,
    is_monotone,
    is_open_by_down_sets,
    is_open_by_images,
    is_open_by_up_sets,
    is_pmorphism,
    named_poset,
    open_maps,
    pmorphisms,
    poset_iso,
    posets_up_to,
    product,
    sierpinski,
    singleton,
    suite_names,
    verify_adjunction_unit,
    verify_bao_adjunction,
)
from . import _finorder


def hierarchy_stats(base="thm33", depth=2, budget=200000):
    """Level sizes and growth; returns (report, exit_code)."""
    text, code = _finorder._hierarchy_stats(base, depth, budget)
    return json.loads(text), code


def verify(suite, depth=2, seed=20240601, max_size=3, states=3, samples=10000):
    """Run a verification suite; returns (report, exit_code)."""
    text, code = _finorder._verify(suite, depth, seed, max_size, states, samples)
    return json.loads(text), code


def obstruct(posets, depth=2):
    """Product-obstruction search for each poset; posets may hold names."""
    resolved = [named_poset(p) if isinstance(p, str) else p for p in posets]
    text, code = _finorder._obstruct(resolved, depth)
    return json.loads(text), code
