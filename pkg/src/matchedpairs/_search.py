"""Backtracking search for maps between finite sets with constraint propagation.

Used for groupoid morphisms, isomorphisms, rotations and representation
morphisms. Propagation is what keeps these searches small: once a value is
fixed, composition and action laws usually force many others.
"""
from __future__ import annotations

from typing import Callable, Iterable, Iterator


class SizeGuardExceeded(RuntimeError):
    """Raised when a search visits more nodes than its budget allows."""


class Conflict(Exception):
    pass


def search_maps(
    n: int,
    candidates: Callable[[int, list], Iterable[int]],
    propagate: Callable[[list, int, int], Iterable[tuple[int, int]]],
    accept: Callable[[list], bool] | None = None,
    max_nodes: int | None = None,
    order: list[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every total assignment ``0..n-1 -> value`` consistent with the rules.

    ``propagate(assign, i, v)`` is called after ``assign[i] = v`` and returns
    forced pairs ``(j, w)``; it raises :class:`Conflict` when ``v`` is
    inconsistent with the current partial assignment.
    """
    assign: list = [None] * n
    order = list(range(n)) if order is None else list(order)
    nodes = [0]

    def apply(i: int, v: int, trail: list) -> bool:
        queue = [(i, v)]
        while queue:
            j, w = queue.pop()
            cur = assign[j]
            if cur is not None:
                if cur != w:
                    return False
                continue
            assign[j] = w
            trail.append(j)
            try:
                queue.extend(propagate(assign, j, w))
            except Conflict:
                return False
        return True

    def undo(trail: list) -> None:
        for j in trail:
            assign[j] = None

    def rec(pos: int):
        while pos < len(order) and assign[order[pos]] is not None:
            pos += 1
        if pos == len(order):
            if accept is None or accept(assign):
                yield tuple(assign)
            return
        i = order[pos]
        for v in list(candidates(i, assign)):
            nodes[0] += 1
            if max_nodes is not None and nodes[0] > max_nodes:
                raise SizeGuardExceeded(f"search exceeded {max_nodes} nodes")
            trail: list = []
            if apply(i, v, trail):
                yield from rec(pos + 1)
            undo(trail)

    yield from rec(0)
