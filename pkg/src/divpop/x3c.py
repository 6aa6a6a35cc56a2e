"""Exact Cover by 3-Sets instances and a backtracking solver."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class X3CInstance:
    """Ground set {1..m} plus a list of 3-element subsets (1-based indices)."""

    m: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.m < 3 or self.m % 3 != 0:
            raise DomainError(f"ground set size must be a positive multiple of 3, got {self.m}")
        for j, block in enumerate(self.sets, start=1):
            if len(block) != 3 or not all(isinstance(e, int) and 1 <= e <= self.m for e in block):
                raise DomainError(f"set {j} is not a 3-element subset of [1,{self.m}]")

    @classmethod
    def build(cls, m: int, sets) -> "X3CInstance":
        return cls(m, tuple(frozenset(s) for s in sets))

    @property
    def q(self) -> int:
        return len(self.sets)

    def incidence(self, element: int) -> tuple[int, ...]:
        """1-based indices of the sets containing ``element``."""
        if not 1 <= element <= self.m:
            raise DomainError(f"element {element} outside [1,{self.m}]")
        return tuple(j for j, block in enumerate(self.sets, start=1) if element in block)


def x3c_solve(inst: X3CInstance) -> tuple[int, ...] | None:
    """Exact cover by backtracking on the smallest uncovered element.

    Returns sorted 1-based set indices, or None when no cover exists.
    Deterministic: candidate sets are tried in index order.
    """
    by_element: dict[int, list[int]] = {e: [] for e in range(1, inst.m + 1)}
    for j, block in enumerate(inst.sets, start=1):
        for e in block:
            by_element[e].append(j)

    covered: set[int] = set()
    chosen: list[int] = []

    def rec() -> bool:
        if len(covered) == inst.m:
            return True
        pivot = min(e for e in range(1, inst.m + 1) if e not in covered)
        for j in by_element[pivot]:
            block = inst.sets[j - 1]
            if covered & block:
                continue
            covered.update(block)
            chosen.append(j)
            if rec():
                return True
            chosen.pop()
            covered.difference_update(block)
        return False

    if rec():
        return tuple(sorted(chosen))
    return None


def is_exact_cover(inst: X3CInstance, indices) -> bool:
    chosen = list(indices)
    if len(set(chosen)) != len(chosen):
        return False
    covered: set[int] = set()
    for j in chosen:
        if not 1 <= j <= inst.q:
            return False
        block = inst.sets[j - 1]
        if covered & block:
            return False
        covered.update(block)
    return len(covered) == inst.m
