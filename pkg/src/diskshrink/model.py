"""Instances, solutions, verdicts and the validator every solver answers to."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import networkx as nx

from diskshrink.geometry import DiskModel, Point, build_disk_graph


class Problem(str, enum.Enum):
    SHRINK_INDEPENDENCE = "shrink-independence"
    MIN_SHRINK_INDEPENDENCE = "min-shrink-independence"
    SHRINK_ACYCLICITY = "shrink-acyclicity"
    MIN_SHRINK_ACYCLICITY = "min-shrink-acyclicity"
    SHRINK_CONNECTIVITY = "shrink-connectivity"
    EXPAND_CONNECTIVITY = "expand-connectivity"

    @property
    def is_min(self) -> bool:
        return self in (Problem.MIN_SHRINK_INDEPENDENCE, Problem.MIN_SHRINK_ACYCLICITY)

    @property
    def is_independence(self) -> bool:
        return self in (Problem.SHRINK_INDEPENDENCE, Problem.MIN_SHRINK_INDEPENDENCE)

    @property
    def is_acyclicity(self) -> bool:
        return self in (Problem.SHRINK_ACYCLICITY, Problem.MIN_SHRINK_ACYCLICITY)

    @property
    def is_connectivity(self) -> bool:
        return self in (Problem.SHRINK_CONNECTIVITY, Problem.EXPAND_CONNECTIVITY)

    @property
    def default_model(self) -> DiskModel:
        return DiskModel.CLOSED if self.is_connectivity else DiskModel.OPEN

    def cardinality_twin(self) -> "Problem":
        return {
            Problem.MIN_SHRINK_INDEPENDENCE: Problem.SHRINK_INDEPENDENCE,
            Problem.MIN_SHRINK_ACYCLICITY: Problem.SHRINK_ACYCLICITY,
        }.get(self, self)


@dataclass(frozen=True)
class Instance:
    points: tuple[Point, ...]
    problem: Problem
    alpha: float
    k: int
    mu: float | None = None
    model: DiskModel | None = None
    meta: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "problem", Problem(self.problem))
        if self.model is None:
            object.__setattr__(self, "model", self.problem.default_model)
        object.__setattr__(self, "model", DiskModel(self.model))
        if self.problem is Problem.EXPAND_CONNECTIVITY:
            if not self.alpha >= 1.0:
                raise ValueError(f"expansion factor must be >= 1, got {self.alpha}")
        elif not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a non-negative integer, got {self.k}")
        if self.problem.is_min != (self.mu is not None):
            raise ValueError(f"mu must be given exactly for Min problems ({self.problem.value})")
        if self.mu is not None and self.mu < 0:
            raise ValueError("mu must be non-negative")
        if self.model is not self.problem.default_model:
            raise ValueError(f"{self.problem.value} uses {self.problem.default_model.value} disks")

    @property
    def n(self) -> int:
        return len(self.points)

    def restrict(self, keep: Sequence[int]) -> tuple["Instance", list[int]]:
        """Sub-instance on ``keep`` (in that order) plus the index map back to self."""
        keep = list(keep)
        sub = Instance(tuple(self.points[i] for i in keep), self.problem, self.alpha, self.k,
                       self.mu, self.model)
        return sub, keep

    def with_k(self, k: int) -> "Instance":
        return Instance(self.points, self.problem, self.alpha, k, self.mu, self.model, self.meta)


@dataclass(frozen=True)
class Solution:
    shrunk: frozenset[int]
    radii: Mapping[int, float]

    @classmethod
    def from_radii(cls, radii: Mapping[int, float] | Sequence[float], tol: float = 0.0) -> "Solution":
        if not isinstance(radii, Mapping):
            radii = dict(enumerate(radii))
        shrunk = frozenset(i for i, r in radii.items() if r < 1.0 - tol or r > 1.0 + tol)
        clean = {i: (1.0 if i not in shrunk else float(r)) for i, r in radii.items()}
        return cls(shrunk, clean)

    @classmethod
    def uniform(cls, n: int, shrunk, alpha: float) -> "Solution":
        shrunk = frozenset(shrunk)
        return cls(shrunk, {i: (alpha if i in shrunk else 1.0) for i in range(n)})

    @classmethod
    def lift(cls, n: int, sub: "Solution", index_map: Sequence[int]) -> "Solution":
        """Embed a solution of a restricted instance back into ``n`` points."""
        radii = {i: 1.0 for i in range(n)}
        for j, r in sub.radii.items():
            radii[index_map[j]] = r
        return cls(frozenset(index_map[j] for j in sub.shrunk), radii)

    def radius_list(self, n: int) -> list[float]:
        return [self.radii[i] for i in range(n)]


@dataclass
class Verdict:
    answer: bool
    witness: Solution | None = None
    optimum_cost: float | None = None
    stats: dict = field(default_factory=dict)
    inconclusive: bool = False

    @classmethod
    def no(cls, reason: str = "", **stats) -> "Verdict":
        return cls(False, None, None, {"reason": reason, **stats} if reason else dict(stats))

    @property
    def size(self) -> int | None:
        return None if self.witness is None else len(self.witness.shrunk)


class MalformedSolution(ValueError):
    def __init__(self, index, message):
        super().__init__(f"point {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def cost(sol: Solution) -> float:
    return math.fsum(1.0 - sol.radii[p] for p in sol.shrunk)


def normalize(inst: Instance, sol: Solution) -> Solution:
    """Drop points whose radius is exactly 1 from S (Min variants accept r(p) = 1)."""
    if not inst.problem.is_min:
        return sol
    return Solution(frozenset(p for p in sol.shrunk if sol.radii[p] != 1.0), sol.radii)


def _check_radii_map(inst: Instance, sol: Solution) -> None:
    for i in range(inst.n):
        if i not in sol.radii:
            raise MalformedSolution(i, "missing radius")
        r = sol.radii[i]
        if not isinstance(r, (int, float)) or not math.isfinite(r) or r < 0:
            raise MalformedSolution(i, f"invalid radius {r!r}")
    extra = set(sol.radii) - set(range(inst.n))
    if extra:
        raise MalformedSolution(min(extra), "index outside the instance")
    bad = [p for p in sol.shrunk if not 0 <= p < inst.n]
    if bad:
        raise MalformedSolution(min(bad), "shrunk index outside the instance")


def validate(inst: Instance, sol: Solution, tol: float | None = None,
             relax_k: float | None = None, relax_mu: float | None = None) -> ValidationResult:
    """Check ``sol`` against ``inst``.

    ``tol`` absorbs LP round-off in radius sums, radius bounds and the budget; it
    defaults to 1e-9 for Min problems and to 0 (exact) otherwise. ``relax_k`` /
    ``relax_mu`` replace the bounds k and mu (bicriteria checks).
    """
    _check_radii_map(inst, sol)
    prob = inst.problem
    if tol is None:
        tol = 1e-9 if prob.is_min else 0.0
    sol = normalize(inst, sol)
    kb = inst.k if relax_k is None else relax_k
    for p in range(inst.n):
        r = sol.radii[p]
        if p not in sol.shrunk:
            if r != 1.0:
                return ValidationResult(False, f"point {p} not in S but radius {r} != 1")
        elif prob.is_min:
            if r < inst.alpha - tol or r > 1.0 + tol:
                return ValidationResult(False, f"radius {r} of point {p} outside [alpha, 1]")
        elif r != inst.alpha:
            return ValidationResult(False, f"radius {r} of point {p} != alpha")
    if prob is Problem.SHRINK_CONNECTIVITY:
        if len(sol.shrunk) < kb:
            return ValidationResult(False, f"|S| = {len(sol.shrunk)} < k = {kb}")
    elif len(sol.shrunk) > kb:
        return ValidationResult(False, f"|S| = {len(sol.shrunk)} > k = {kb}")

    radii = sol.radius_list(inst.n)
    g = build_disk_graph(inst.points, radii, inst.model, tol=tol)
    if prob.is_independence:
        if g.edges:
            u, v = next(iter(g.edges))
            return ValidationResult(False, f"edge present ({u}, {v})")
    elif prob.is_acyclicity:
        if inst.n and not nx.is_forest(g.to_networkx()):
            return ValidationResult(False, "cycle present")
    elif inst.n and not nx.is_connected(g.to_networkx()):
        return ValidationResult(False, "graph disconnected")

    if prob.is_min:
        mu = inst.mu if relax_mu is None else relax_mu
        c = cost(sol)
        if c > mu + tol * max(1, inst.n):
            return ValidationResult(False, f"cost {c} exceeds budget {mu}")
    return ValidationResult(True)
