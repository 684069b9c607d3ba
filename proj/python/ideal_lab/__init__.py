"""Python access to the ideal-lab core.

Structured results come back as plain dicts with the same layout as the
``ideal-lab`` CLI reports.
"""

import json

from ._core import (
    BoundError,
    ConstructionError,
    DomainError,
    Error,
    fs,
    nu2,
    pairs,
    positivity_search,
    tree_index,
    tree_seq,
)
from . import _core

__all__ = [
    "BoundError",
    "ConstructionError",
    "DomainError",
    "Error",
    "certify_very_sparse",
    "construct",
    "find_limit_witness",
    "fs",
    "generate_very_sparse",
    "nu2",
    "nu2_sequence",
    "pairs",
    "positivity_search",
    "run_suite",
    "tree_index",
    "tree_seq",
    "validate_scheme",
]


def generate_very_sparse(size, growth=4, threads=1):
    return json.loads(_core.generate_very_sparse_json(size, growth, threads))


def certify_very_sparse(d, threads=1):
    return json.loads(_core.certify_very_sparse_json(list(d), threads))


def nu2_sequence(bound):
    return json.loads(_core.nu2_sequence_json(bound))


def find_limit_witness(sequence, rho, eta, eps_ladder=None, max_f=6, max_k=None, max_element=0, node_budget=0):
    """Search a ρ-limit witness; ``sequence`` is a dict as returned by nu2_sequence/construct."""
    text = sequence if isinstance(sequence, str) else json.dumps(sequence)
    return json.loads(
        _core.find_limit_witness_json(text, rho, eta, eps_ladder, max_f, max_k, max_element, node_budget)
    )


def construct(kind, scheme, bound, depth=12, sparse_size=10, threads=1):
    return json.loads(_core.construct_json(kind, scheme, bound, depth, sparse_size, threads))


def validate_scheme(scheme, depth, width):
    return json.loads(_core.validate_scheme_json(scheme, depth, width))


def run_suite(name, depth=4, threads=1):
    return json.loads(_core.run_suite_json(name, depth, threads))
