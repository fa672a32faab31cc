"""
Brute-force path enumeration oracles.

Ordinary paths use the steps N = (0,1) and E = (1,0); generalized paths use
U = (0,2), F = (1,1) and D = (2,0). Everything here is an exhaustive search on
purpose: these counts are the reference the closed forms are checked against.
"""
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .utils.config import DEFAULT_ENUMERATION_BUDGET
from .utils.dependencies import BudgetExceededError

Step = Tuple[int, int]

NE_STEPS: Tuple[Step, ...] = ((0, 1), (1, 0))
GEN3_STEPS: Tuple[Step, ...] = ((0, 2), (1, 1), (2, 0))


class BoundSpec(BaseModel):
    """Paths (0,0) -> (n,n) kept inside -s <= y - x <= m; None means that side is unbounded."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    m: Optional[int] = Field(default=None, ge=0)
    s: Optional[int] = Field(default=0, ge=0)

    @property
    def N(self) -> Optional[int]:
        if self.m is None or self.s is None:
            return None
        return self.m + self.s + 2

    def admits(self, h: int) -> bool:
        if self.m is not None and h > self.m:
            return False
        if self.s is not None and h < -self.s:
            return False
        return True


class ContactPolicy(str, Enum):
    weak = "weak"
    strict = "strict"
    flat_free = "flat_free"


class GenPathSpec(BaseModel):
    """
    Paths (0,0) -> (n,n) built from (0,2), (1,1), (2,0).

    Bounds are in lattice units on h = y - x and apply to step ends and to the
    midpoint of (0,2)/(2,0) steps. The policy decides how the path may touch
    the walls:
      weak       every visited point satisfies -s <= h <= m
      strict     additionally h > 0 away from the two ends (the diagonal is the lower wall)
      flat_free  as weak, and no (1,1) step runs along h = -s or h = m
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    m: Optional[int] = Field(default=None, ge=0)
    s: Optional[int] = Field(default=None, ge=0)
    policy: ContactPolicy = ContactPolicy.weak


class _Budget:
    def __init__(self, budget: int):
        if budget <= 0:
            raise ValueError(f"enumeration budget must be positive, got {budget}")
        self.budget = budget
        self.states = 0

    def tick(self):
        self.states += 1
        if self.states > self.budget:
            raise BudgetExceededError("enumeration partial states", self.states, self.budget)


def path_in_region(path: Sequence[Step], spec: BoundSpec) -> bool:
    """Replay a N/E path from the origin and check every point against the region."""
    x = y = 0
    if not spec.admits(0):
        return False
    for dx, dy in path:
        x, y = x + dx, y + dy
        if not spec.admits(y - x):
            return False
    return (x, y) == (spec.n, spec.n)


def _enumerate_ne(spec: BoundSpec, budget: _Budget) -> int:
    n = spec.n
    path: List[Step] = []
    count = 0

    def walk(x: int, y: int):
        nonlocal count
        budget.tick()
        if x == n and y == n:
            if not path_in_region(path, spec):
                raise AssertionError(f"enumerated path {path} left the region of {spec}")
            count += 1
            return
        for dx, dy in NE_STEPS:
            nx, ny = x + dx, y + dy
            if nx > n or ny > n or not spec.admits(ny - nx):
                continue
            path.append((dx, dy))
            walk(nx, ny)
            path.pop()

    if spec.admits(0):
        walk(0, 0)
    return count


def count_bounded_enum(spec: BoundSpec, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """
    Count N/E paths (0,0) -> (n,n) staying in -s <= y - x <= m.

    Raises:
        BudgetExceededError: the search visits more than `budget` partial paths
    """
    return _enumerate_ne(spec, _Budget(budget))


def count_all_paths_enum(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    return count_bounded_enum(BoundSpec(n=n, m=None, s=None), budget)


def count_dyck_enum(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    return count_bounded_enum(BoundSpec(n=n, m=None, s=0), budget)


def _gen_lower(spec: GenPathSpec) -> Optional[int]:
    if spec.policy == ContactPolicy.strict:
        return 0
    return None if spec.s is None else -spec.s


def _gen_point_ok(h: int, spec: GenPathSpec, interior: bool) -> bool:
    if spec.m is not None and h > spec.m:
        return False
    lower = _gen_lower(spec)
    if lower is not None and h < lower:
        return False
    if spec.policy == ContactPolicy.strict and interior and h <= 0:
        return False
    return True


def _gen_flat_ok(h: int, spec: GenPathSpec) -> bool:
    # h is the height the (1,1) step runs along
    if spec.policy == ContactPolicy.strict:
        return h > 0
    if spec.policy == ContactPolicy.flat_free:
        if spec.m is not None and h == spec.m:
            return False
        if spec.s is not None and h == -spec.s:
            return False
    return True


def _gen_step_ok(x: int, y: int, step: Step, spec: GenPathSpec) -> bool:
    """Check the points a step visits, starting from (x, y)."""
    n = spec.n
    dx, dy = step
    nx, ny = x + dx, y + dy
    if nx > n or ny > n:
        return False
    at_end = (nx, ny) == (n, n)
    if step == (1, 1):
        if not _gen_flat_ok(y - x, spec):
            return False
    else:
        # midpoint of a (0,2) or (2,0) step is a lattice point
        mid = (y - x) + (1 if dy == 2 else -1)
        if not _gen_point_ok(mid, spec, interior=True):
            return False
    return _gen_point_ok(ny - nx, spec, interior=not at_end)


def gen_path_valid(path: Sequence[Step], spec: GenPathSpec) -> bool:
    x = y = 0
    for step in path:
        if step not in GEN3_STEPS or not _gen_step_ok(x, y, step, spec):
            return False
        x, y = x + step[0], y + step[1]
    return (x, y) == (spec.n, spec.n)


def count_generalized_enum(spec: GenPathSpec, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """
    Count (0,2)/(1,1)/(2,0) paths (0,0) -> (n,n) under the spec's bounds and contact policy.

    Raises:
        BudgetExceededError: the search visits more than `budget` partial paths
    """
    counter = _Budget(budget)
    n = spec.n
    path: List[Step] = []
    count = 0

    def walk(x: int, y: int):
        nonlocal count
        counter.tick()
        if x == n and y == n:
            if not gen_path_valid(path, spec):
                raise AssertionError(f"enumerated path {path} violates {spec}")
            count += 1
            return
        for step in GEN3_STEPS:
            if _gen_step_ok(x, y, step, spec):
                path.append(step)
                walk(x + step[0], y + step[1])
                path.pop()

    walk(0, 0)
    return count
