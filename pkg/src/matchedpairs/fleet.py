"""A named collection of small matched pairs and morphisms used by tests, demos and the CLI."""
from __future__ import annotations

from typing import Callable

from .doubles import (MatchedPairMorphism, compose_morphisms, identity_morphism, initial_morphism,
                      terminal_morphism)
from .groupoid import coarse, cyclic_group, symmetric_group
from .matched import (MatchedPair, make_conjugation_pair, make_group_pair, make_initial, make_MXY,
                      make_semi, make_terminal)

S3_ROTATIONS = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
S3_TRANSPOSITION = [(0, 1, 2), (1, 0, 2)]


def _points(n: int) -> list[str]:
    return [chr(ord("A") + i) for i in range(n)]


def s3_pair() -> MatchedPair:
    """``S3 = C3 · C2`` with the rotations vertical."""
    return make_group_pair(symmetric_group(3), S3_ROTATIONS, S3_TRANSPOSITION)


def c6_pair() -> MatchedPair:
    """``C6 = C2 · C3`` (a trivial matched pair of groups)."""
    return make_group_pair(cyclic_group(6), [0, 3], [0, 2, 4])


BUILDERS: dict[str, Callable[[], MatchedPair]] = {
    "initial1": lambda: make_initial(_points(1)),
    "initial2": lambda: make_initial(_points(2)),
    "initial3": lambda: make_initial(_points(3)),
    "terminal1": lambda: make_terminal(_points(1)),
    "terminal2": lambda: make_terminal(_points(2)),
    "terminal3": lambda: make_terminal(_points(3)),
    "MXY11": lambda: make_MXY([0], ["a"]),
    "MXY12": lambda: make_MXY([0], ["a", "b"]),
    "MXY21": lambda: make_MXY([0, 1], ["a"]),
    "MXY22": lambda: make_MXY([0, 1], ["a", "b"]),
    "S3": s3_pair,
    "C6": c6_pair,
    "conj_coarse2": lambda: make_conjugation_pair(coarse(_points(2))),
    "conj_S3": lambda: make_conjugation_pair(symmetric_group(3)),
    "semi_v_coarse2": lambda: make_semi(coarse(_points(2)), "vertical"),
    "semi_h_coarse2": lambda: make_semi(coarse(_points(2)), "horizontal"),
    "semi_v_S3": lambda: make_semi(symmetric_group(3), "vertical"),
    "semi_h_S3": lambda: make_semi(symmetric_group(3), "horizontal"),
}

# Pairs small enough for the heavier checks (doubles, Hopf certification, rotation search).
SMALL = ["initial1", "initial2", "initial3", "terminal1", "terminal2", "terminal3", "MXY12", "MXY21",
         "MXY22", "S3", "C6", "conj_coarse2", "semi_v_coarse2", "semi_h_coarse2", "semi_v_S3", "semi_h_S3"]

_cache: dict[str, MatchedPair] = {}


def get(name: str) -> MatchedPair:
    if name not in BUILDERS:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUILDERS)}")
    if name not in _cache:
        _cache[name] = BUILDERS[name]()
    return _cache[name]


def all_pairs(names=None) -> dict[str, MatchedPair]:
    return {n: get(n) for n in (BUILDERS if names is None else names)}


def standard_morphisms(M: MatchedPair) -> dict[str, MatchedPairMorphism]:
    """Identity, initial ``(α₀, β₀)``, terminal ``(α₁, β₁)`` and the composed triangle into M."""
    ident = identity_morphism(M)
    init = initial_morphism(M)
    term = terminal_morphism(M)
    return {
        "identity": ident,
        "initial": init,
        "terminal": term,
        "initial;terminal": compose_morphisms(term, init),
    }
