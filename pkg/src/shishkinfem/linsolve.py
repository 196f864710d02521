"""Sparse solvers for the nonsymmetric discrete systems.

Primary path is ILU-preconditioned GMRES; a complete sparse LU is the
robustness fallback and a dense LU serves as the oracle for systems
with up to 2,000 unknowns.  Every accepted solution has its residual
recomputed from scratch before it is returned.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

__all__ = [
    "SolveReport",
    "SolveError",
    "solve",
    "solve_transpose",
    "dense_solve",
]

DENSE_LIMIT = 2000
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 20000


@dataclass
class SolveReport:
    iterations: int
    relative_residual: float
    method: str


class SolveError(RuntimeError):
    """Raised when no solution path reaches the requested tolerance."""

    def __init__(self, message, best_residual):
        super().__init__(message)
        self.best_residual = best_residual


def _relative_residual(A, x, b):
    nb = np.linalg.norm(b)
    if nb == 0.0:
        return 0.0
    return np.linalg.norm(b - A @ x) / nb


def dense_solve(A, b):
    """Dense LU oracle; only for small systems."""
    A = sp.csr_matrix(A)
    if A.shape[0] > DENSE_LIMIT:
        raise ValueError(
            f"dense oracle limited to {DENSE_LIMIT} unknowns, got {A.shape[0]}")
    return scipy.linalg.solve(A.toarray(), b)


def _gmres(A, b, tol, max_iter):
    try:
        ilu = spla.spilu(A.tocsc(), drop_tol=1e-5, fill_factor=20)
    except RuntimeError:
        return None, 0
    M = spla.LinearOperator(A.shape, ilu.solve)
    count = [0]

    def cb(_):
        count[0] += 1

    x, info = spla.gmres(A, b, rtol=0.1 * tol, atol=0.0, restart=50,
                         maxiter=max(1, max_iter // 50), M=M,
                         callback=cb, callback_type="pr_norm")
    if info != 0:
        return None, count[0]
    return x, count[0]


def solve(A, b, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, method="auto"):
    """Solve A x = b to relative residual <= tol.

    method: "auto" (GMRES+ILU, then sparse LU fallback), "gmres",
    "splu", or "dense".  Deterministic: zero initial guess, no
    randomized components.  Returns (x, SolveReport).
    """
    A = sp.csr_matrix(A)
    b = np.asarray(b, dtype=float)
    if A.shape[0] != A.shape[1] or A.shape[0] != len(b):
        raise ValueError("A must be square and match b")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if np.linalg.norm(b) == 0.0:
        return np.zeros_like(b), SolveReport(0, 0.0, "trivial")

    attempts = []
    best = np.inf
    if method in ("auto", "gmres"):
        x, iters = _gmres(A, b, tol, max_iter)
        if x is not None:
            res = _relative_residual(A, x, b)
            best = min(best, res)
            if res <= tol:
                return x, SolveReport(iters, res, "gmres+ilu")
        attempts.append("gmres+ilu")
    if method in ("auto", "splu"):
        lu = spla.splu(A.tocsc())
        x = lu.solve(b)
        res = _relative_residual(A, x, b)
        best = min(best, res)
        if res <= tol:
            return x, SolveReport(1, res, "splu")
        attempts.append("splu")
    if method == "dense" or (method == "auto" and A.shape[0] <= DENSE_LIMIT):
        x = dense_solve(A, b)
        res = _relative_residual(A, x, b)
        best = min(best, res)
        if res <= tol:
            return x, SolveReport(1, res, "dense")
        attempts.append("dense")
    raise SolveError(
        f"no solver reached tol={tol} (tried {attempts}, best residual {best:.3e})",
        best_residual=best)


def solve_transpose(A, e, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                    method="auto"):
    """Solve A^T g = e; same contract as solve."""
    At = sp.csr_matrix(A).T.tocsr()
    return solve(At, e, tol=tol, max_iter=max_iter, method=method)
