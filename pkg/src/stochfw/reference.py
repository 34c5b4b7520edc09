"""Brute-force reference oracles for validating the fast paths.

Everything here trades speed for independence: vertex enumeration instead
of closed-form LMOs, central differences instead of analytic gradients,
exhaustive batch enumeration instead of sampling. Budgets are deliberately
tiny (n <= 8, b <= 4, d <= 10) so enumerations stay under 10^4 cases.
These oracles are shipped with the library (not buried in test code) so
any reimplementation can be checked against the same fixtures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EnumerationBudget",
    "lmo_by_enumeration",
    "finite_diff_grad",
    "expected_estimator_update",
    "enumerate_batches",
]


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 8
    max_b: int = 4
    max_d: int = 10


_BUDGET = EnumerationBudget()


def vertex_matrix(cset, d):
    """All vertices, one per row, in canonical tie-break order: ascending
    coordinate index with +r before -r (box corners in that lexicographic
    order)."""
    r = cset.radius
    if cset.kind == "l1_ball":
        V = np.zeros((2 * d, d))
        for i in range(d):
            V[2 * i, i] = r
            V[2 * i + 1, i] = -r
        return V
    if cset.kind == "simplex":
        return r * np.eye(d)
    return np.array(list(itertools.product((r, -r), repeat=d)))


def lmo_by_enumeration(cset, g):
    """Score every vertex and return the first minimizer."""
    g = np.asarray(g, dtype=np.float64)
    d = g.shape[0]
    if d > _BUDGET.max_d:
        raise ValueError(f"enumeration budget exceeded: d={d} > {_BUDGET.max_d}")
    V = vertex_matrix(cset, d)
    scores = V @ g
    return V[int(np.argmin(scores))].copy()


def finite_diff_grad(fn, w, h=1e-5):
    """Central differences (fn(w + h e_j) - fn(w - h e_j)) / 2h per coordinate."""
    if h <= 0:
        raise ValueError("h must be positive")
    w = np.asarray(w, dtype=np.float64)
    grad = np.zeros_like(w)
    for j in range(w.shape[0]):
        wp = w.copy()
        wm = w.copy()
        wp[j] += h
        wm[j] -= h
        grad[j] = (fn(wp) - fn(wm)) / (2.0 * h)
    return grad


def enumerate_batches(n, b, sampling):
    """All batches the estimator could draw, as equally likely outcomes.

    with_replacement: all n^b ordered tuples; without_replacement: all
    C(n, b) combinations. Matches the estimator's configured sampling mode.
    """
    if n > _BUDGET.max_n or b > _BUDGET.max_b:
        raise ValueError(
            f"enumeration budget exceeded: n={n}, b={b} "
            f"(max {_BUDGET.max_n}, {_BUDGET.max_b})"
        )
    if sampling == "with_replacement":
        return [list(t) for t in itertools.product(range(n), repeat=b)]
    if sampling == "without_replacement":
        return [list(t) for t in itertools.combinations(range(n), b)]
    raise ValueError(f"unknown sampling mode {sampling!r}")


def expected_estimator_update(kind, obj, state, x_new, x_old, *, b, sampling,
                              p=None, lam=None, k=None, rho=None):
    """Exact E[g^{k+1}] by enumerating every batch (and both SARAH branches).

    ``state`` is a snapshot dict: ``g`` (current estimate) and, for
    saga_sarah, ``table`` as an (n, d) array of stored per-sample gradients
    y_i. The update formulas are recomputed here per-sample from
    ``obj.grad_sample``, independently of the estimator's vectorized path.
    """
    x_new = np.asarray(x_new, dtype=np.float64)
    x_old = np.asarray(x_old, dtype=np.float64)
    g = np.asarray(state["g"], dtype=np.float64)
    n = obj.n
    batches = enumerate_batches(n, b, sampling)

    def batch_mean(fn, S):
        total = np.zeros(obj.d)
        for i in S:
            total += fn(i)
        return total / len(S)

    if kind == "sarah":
        if p is None:
            raise ValueError("sarah expectation needs p")
        full_new = batch_mean(lambda i: obj.grad_sample(i, x_new), range(n))
        batch_avg = np.zeros(obj.d)
        for S in batches:
            diff = batch_mean(
                lambda i: obj.grad_sample(i, x_new) - obj.grad_sample(i, x_old), S
            )
            batch_avg += g + diff
        batch_avg /= len(batches)
        return p * full_new + (1.0 - p) * batch_avg

    if kind == "saga_sarah":
        if lam is None:
            raise ValueError("saga_sarah expectation needs lam")
        table = np.asarray(state["table"], dtype=np.float64)
        table_avg = table.mean(axis=0)
        acc = np.zeros(obj.d)
        for S in batches:
            sarah_term = batch_mean(
                lambda i: obj.grad_sample(i, x_new) - obj.grad_sample(i, x_old), S
            )
            saga_term = (
                batch_mean(lambda i: obj.grad_sample(i, x_old) - table[i], S)
                + table_avg
            )
            acc += sarah_term + (1.0 - lam) * g + lam * saga_term
        return acc / len(batches)

    if kind == "momentum":
        if rho is None:
            if k is None:
                raise ValueError("momentum expectation needs k or rho")
            rho = (k + 1.0) ** (-2.0 / 3.0)
        acc = np.zeros(obj.d)
        for S in batches:
            acc += (1.0 - rho) * g + rho * batch_mean(
                lambda i: obj.grad_sample(i, x_new), S
            )
        return acc / len(batches)

    raise ValueError(f"unknown estimator kind {kind!r}")
