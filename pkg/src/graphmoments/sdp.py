"""Minimal dense semidefinite programming kernel.

Solves   minimize  b . y   subject to   sum_j y_j A_j - C  >=  0   per block,
optionally with box bounds on y.  Problems here are tiny (blocks of size a
few, a couple dozen variables), so the solver favors robustness and
determinism: a log-barrier Newton path-following method with backtracking
line search, preceded by a margin-maximization phase to find a strictly
feasible start.  Identical inputs produce identical iterate sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class SdpBlock:
    """One linear matrix inequality: sum_j y_j * coefficients[j] - constant >= 0."""

    constant: np.ndarray
    coefficients: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return self.constant.shape[0]


@dataclass(frozen=True)
class SdpProblem:
    objective: np.ndarray
    blocks: tuple[SdpBlock, ...]
    var_bounds: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def validate(self) -> None:
        for blk in self.blocks:
            if len(blk.coefficients) != self.num_vars:
                raise ValidationError("coefficient count does not match num_vars")
            for m in (blk.constant, *blk.coefficients):
                if m.shape != (blk.size, blk.size):
                    raise ValidationError("non-square or mismatched block matrix")
                skew = float(np.abs(m - m.T).max(initial=0.0))
                if skew > _SYM_TOL * (1.0 + float(np.abs(m).max(initial=0.0))):
                    raise ValidationError("block matrices must be symmetric")
        if self.var_bounds is not None:
            lo, hi = self.var_bounds
            if len(lo) != self.num_vars or len(hi) != self.num_vars:
                raise ValidationError("var_bounds length mismatch")
            if np.any(np.asarray(lo) >= np.asarray(hi)):
                raise ValidationError("var_bounds must satisfy lo < hi")


@dataclass
class SdpSolution:
    y: np.ndarray
    objective_value: float
    status: str                      # optimal | infeasible | unbounded | max_iter
    psd_margins: list[float] = field(default_factory=list)
    duality_gap_estimate: float = float("inf")


def min_eig(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and a unit eigenvector of a symmetric matrix.

    Rejects inputs whose skew part exceeds 1e-12 relative to the entry scale.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    scale = 1.0 + float(np.abs(m).max(initial=0.0))
    if float(np.abs(m - m.T).max(initial=0.0)) > 1e-12 * scale:
        raise ValidationError("matrix is not symmetric")
    w, v = np.linalg.eigh(m)
    return float(w[0]), v[:, 0]


class _Barrier:
    """Log-barrier over stacked block data, analytic box terms, and an
    optional quadratic pull (used by phase 1 to keep iterates from drifting
    along scale-invariant margin directions)."""

    def __init__(self, blocks, lo=None, hi=None, nvars=0, quad=None):
        self.consts = [np.asarray(b.constant, float) for b in blocks]
        self.stacks = [np.stack([np.asarray(a, float) for a in b.coefficients])
                       if nvars else np.zeros((0, b.size, b.size))
                       for b in blocks]
        self.lo = None if lo is None else np.asarray(lo, float)
        self.hi = None if hi is None else np.asarray(hi, float)
        self.quad = None if quad is None else np.asarray(quad, float)
        self.nvars = nvars
        self.nu = sum(b.size for b in blocks)
        if self.lo is not None:
            self.nu += 2 * nvars

    def block_values(self, y: np.ndarray) -> list[np.ndarray]:
        out = []
        for c, stack in zip(self.consts, self.stacks):
            m = -c.copy()
            if self.nvars:
                m += np.tensordot(y, stack, axes=1)
            out.append(m)
        return out

    def margin(self, y: np.ndarray) -> float:
        vals = [float(np.linalg.eigvalsh(m)[0]) for m in self.block_values(y)]
        return min(vals)

    def in_domain(self, y: np.ndarray) -> bool:
        if self.lo is not None and (np.any(y <= self.lo) or np.any(y >= self.hi)):
            return False
        for m in self.block_values(y):
            try:
                np.linalg.cholesky(m)
            except np.linalg.LinAlgError:
                return False
        return True

    def value(self, y: np.ndarray, t: float, bvec: np.ndarray) -> float:
        total = t * float(bvec @ y)
        if self.quad is not None:
            total += t * float(self.quad @ (y * y))
        for m in self.block_values(y):
            sign, logdet = np.linalg.slogdet(m)
            if sign <= 0:
                return np.inf
            total -= logdet
        if self.lo is not None:
            dlo = y - self.lo
            dhi = self.hi - y
            if np.any(dlo <= 0) or np.any(dhi <= 0):
                return np.inf
            total -= float(np.sum(np.log(dlo)) + np.sum(np.log(dhi)))
        return total

    def grad_hess(self, y: np.ndarray, t: float, bvec: np.ndarray):
        grad = t * np.asarray(bvec, float).copy()
        hess = np.zeros((self.nvars, self.nvars))
        if self.quad is not None:
            grad += 2.0 * t * self.quad * y
            hess[np.diag_indices_from(hess)] += 2.0 * t * self.quad
        for c, stack in zip(self.consts, self.stacks):
            m = -c.copy()
            if self.nvars:
                m += np.tensordot(y, stack, axes=1)
            inv = np.linalg.inv(m)
            ma = np.einsum("ab,jbc->jac", inv, stack)    # inv @ A_j, stacked
            grad -= np.einsum("jaa->j", ma)
            hess += np.einsum("jab,lba->jl", ma, ma)
        if self.lo is not None:
            dlo = y - self.lo
            dhi = self.hi - y
            grad += -1.0 / dlo + 1.0 / dhi
            hess[np.diag_indices_from(hess)] += 1.0 / dlo ** 2 + 1.0 / dhi ** 2
        return grad, hess


def _newton(barrier: _Barrier, y: np.ndarray, t: float, bvec: np.ndarray,
            max_steps: int = 60) -> np.ndarray:
    for _ in range(max_steps):
        grad, hess = barrier.grad_hess(y, t, bvec)
        ridge = 1e-12 * (1.0 + float(np.trace(hess))) if barrier.nvars else 0.0
        try:
            step = np.linalg.solve(hess + ridge * np.eye(barrier.nvars), -grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        decrement2 = float(-grad @ step)
        if not np.isfinite(decrement2) or decrement2 <= 0:
            step = -grad
            decrement2 = float(grad @ grad)
        f0 = barrier.value(y, t, bvec)
        alpha = 1.0
        while alpha > 1e-14:
            trial = y + alpha * step
            if barrier.in_domain(trial) and \
                    barrier.value(trial, t, bvec) <= f0 - 0.25 * alpha * decrement2:
                break
            alpha *= 0.5
        else:
            return y
        y = trial
        if decrement2 <= 1e-11 * (1.0 + abs(t)):
            return y
    return y


def _phase1(problem: SdpProblem, tol: float) -> tuple[np.ndarray | None, float]:
    """Strictly feasible start via margin maximization.

    Extends the variable to (y, s), maximizes s subject to block(y) - s*I >= 0
    and s <= 1, and stops as soon as the plain-block margin of y is safely
    positive.  A tiny quadratic pull on y keeps the subproblem coercive: the
    margin alone is indifferent to block scale, and the barrier would
    otherwise wander to astronomically large Gram matrices.
    """
    n = problem.num_vars
    ext_blocks = []
    for blk in problem.blocks:
        eye = np.eye(blk.size)
        ext_blocks.append(SdpBlock(blk.constant,
                                   tuple(blk.coefficients) + (-eye,)))
    ext_blocks.append(SdpBlock(np.array([[-1.0]]),
                               tuple(np.zeros((1, 1)) for _ in range(n))
                               + (np.array([[-1.0]]),)))
    if problem.var_bounds is not None:
        lo = np.concatenate([np.asarray(problem.var_bounds[0], float), [0.0]])
        hi = np.concatenate([np.asarray(problem.var_bounds[1], float), [0.0]])
        start = min(float(np.linalg.eigvalsh(-blk.constant)[0])
                    for blk in problem.blocks) - 1.0
        lo[-1] = min(start - 1.0, -10.0)
        hi[-1] = 2.0
    else:
        lo = hi = None
        start = min(float(np.linalg.eigvalsh(-blk.constant)[0])
                    for blk in problem.blocks) - 1.0
    quad = np.append(np.full(n, 1e-8), 0.0)
    barrier = _Barrier(ext_blocks, lo, hi, n + 1, quad=quad)
    plain = _Barrier(list(problem.blocks), nvars=n)
    y = np.zeros(n + 1)
    y[-1] = start
    bvec = np.zeros(n + 1)
    bvec[-1] = -1.0
    t = 1.0
    for _ in range(40):
        y = _newton(barrier, y, t, bvec)
        if y[-1] > 100.0 * tol:
            m = plain.margin(y[:-1])
            if m > tol:
                return y[:-1].copy(), m
        if barrier.nu / t < tol:
            break
        t *= 10.0
    m = plain.margin(y[:-1])
    if m > tol:
        return y[:-1].copy(), m
    return None, m


def solve_sdp(problem: SdpProblem, tol: float = 1e-8,
              max_iter: int = 60) -> SdpSolution:
    """Barrier path-following solve of a block-LMI problem.

    ``status="optimal"`` guarantees every block margin is >= -tol and the
    objective is within tol * (1 + |value|) of the optimum (the barrier
    duality gap).  Exhausting the iteration budget returns the best iterate
    with ``status="max_iter"``; an empty interior reports ``infeasible``.
    """
    problem.validate()
    n = problem.num_vars
    y0, margin = _phase1(problem, tol=min(1e-7, tol))
    if y0 is None:
        return SdpSolution(y=np.zeros(n), objective_value=float("nan"),
                           status="infeasible", psd_margins=[margin],
                           duality_gap_estimate=float("inf"))
    lo, hi = (problem.var_bounds if problem.var_bounds is not None else (None, None))
    barrier = _Barrier(list(problem.blocks), lo, hi, n)
    bvec = np.asarray(problem.objective, dtype=float)
    scale = 1.0 + float(np.abs(bvec).max(initial=0.0))
    bvec_scaled = bvec / scale
    y = y0.copy()
    t = max(1.0, barrier.nu / (1.0 + abs(float(bvec_scaled @ y))))
    status = "max_iter"
    gap = float("inf")
    for _ in range(max_iter):
        y = _newton(barrier, y, t, bvec_scaled)
        gap = barrier.nu / t * scale
        if gap <= tol * (1.0 + abs(float(bvec @ y))):
            status = "optimal"
            break
        t *= 10.0
    margins = [float(np.linalg.eigvalsh(m)[0]) for m in barrier.block_values(y)]
    return SdpSolution(y=y, objective_value=float(bvec @ y), status=status,
                       psd_margins=margins, duality_gap_estimate=gap)
