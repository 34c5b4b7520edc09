"""Finite-sum objectives f(x) = (1/n) sum_i f_i(x) for two linear-model losses.

Both losses depend on the per-sample margin z_i = <w, x_i>, so every
per-sample gradient is a scalar multiple of the (sparse) sample:
grad f_i(w) = c_i(w) * x_i. Batch and full gradients are accumulated in a
dense length-d buffer via sparse matrix products; the scalar factorization
is also what lets the SAGA table store one float per sample.

logistic:  f_i(w) = log(1 + exp(-y_i z_i)),          y_i in {-1, +1}
nlls:      f_i(w) = (y_i - 1/(1 + exp(z_i)))^2,      y_i in {0, 1}
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

__all__ = ["Objective", "SmoothnessInfo", "LOSS_KINDS"]

LOSS_KINDS = ("logistic", "nlls")

# Uniform bound on |d^2/dt^2 (y - 1/(1+e^t))^2| over y in [0, 1]; the true
# supremum is ~0.26, so 0.3 is safe but not tight.
_NLLS_CURVATURE_BOUND = 0.3


@dataclass(frozen=True)
class SmoothnessInfo:
    """Per-sample smoothness bounds; diagnostics only, no schedule uses them."""

    L_i: np.ndarray
    L_tilde: float
    L_bound: float


class Objective:
    """One of the two losses bound to a dataset with normalized labels."""

    def __init__(self, kind, dataset):
        if kind not in LOSS_KINDS:
            raise ValueError(f"unknown loss kind {kind!r}")
        expected = {-1.0, 1.0} if kind == "logistic" else {0.0, 1.0}
        seen = set(np.unique(dataset.labels))
        if not seen <= expected:
            raise ValueError(
                f"labels {sorted(seen)} not normalized for {kind}; "
                f"expected values in {sorted(expected)}"
            )
        self.kind = kind
        self.dataset = dataset
        self.X = dataset.to_csr()
        self.y = dataset.labels

    @property
    def n(self):
        return self.dataset.n

    @property
    def d(self):
        return self.dataset.d

    def _check_w(self, w):
        w = np.asarray(w, dtype=np.float64)
        if w.shape != (self.d,):
            raise ValueError(f"w has shape {w.shape}, expected ({self.d},)")
        if not np.all(np.isfinite(w)):
            raise ValueError("w contains NaN or Inf")
        return w

    def margins(self, w, rows=None):
        X = self.X if rows is None else self.X[rows]
        return np.asarray(X @ w).ravel()

    def _losses(self, z, y):
        if self.kind == "logistic":
            return np.logaddexp(0.0, -y * z)
        s = expit(-z)  # 1 / (1 + e^z)
        return (y - s) ** 2

    def _coefs(self, z, y):
        # grad f_i(w) = c_i * x_i with c_i = d f_i / d z_i
        if self.kind == "logistic":
            return -y * expit(-y * z)
        s = expit(-z)
        return 2.0 * (y - s) * s * (1.0 - s)

    def loss_sample(self, i, w):
        """f_i(w) for one sample."""
        if not 0 <= i < self.n:
            raise IndexError(f"sample index {i} out of range [0, {self.n})")
        w = self._check_w(w)
        z = self.margins(w, rows=[i])
        return float(self._losses(z, self.y[[i]])[0])

    def loss_full(self, w):
        """f(w) = (1/n) sum_i f_i(w); overflow-safe for any finite w."""
        w = self._check_w(w)
        z = self.margins(w)
        return float(np.mean(self._losses(z, self.y)))

    def grad_coefs(self, w, rows=None):
        """Scalar multipliers c_i with grad f_i(w) = c_i * x_i.

        ``rows=None`` evaluates every sample in storage order.
        """
        w = self._check_w(w)
        if rows is None:
            return self._coefs(self.margins(w), self.y)
        rows = np.asarray(rows, dtype=np.int64)
        z = self.margins(w, rows=rows)
        return self._coefs(z, self.y[rows])

    def margin_coefs(self, z, y):
        """Gradient multipliers from precomputed margins; lets callers that
        already hold a batch slice evaluate several points without re-slicing."""
        return self._coefs(np.asarray(z), np.asarray(y))

    def grad_sample(self, i, w):
        """grad f_i(w) as a dense length-d vector."""
        if not 0 <= i < self.n:
            raise IndexError(f"sample index {i} out of range [0, {self.n})")
        c = self.grad_coefs(w, [i])[0]
        g = np.zeros(self.d)
        row = self.dataset.row(i)
        g[row.indices] = c * row.values
        return g

    def grad_batch(self, S, w):
        """(1/|S|) sum_{i in S} grad f_i(w); duplicates count with multiplicity."""
        S = np.asarray(S, dtype=np.int64)
        if S.size == 0:
            raise ValueError("empty batch")
        w = self._check_w(w)
        XS = self.X[S]
        c = self.margin_coefs(np.asarray(XS @ w).ravel(), self.y[S])
        return np.asarray(XS.T @ c).ravel() / S.size

    def grad_full(self, w):
        """grad f(w), the average of all n per-sample gradients."""
        w = self._check_w(w)
        z = self.margins(w)
        c = self._coefs(z, self.y)
        return np.asarray(self.X.T @ c).ravel() / self.n

    def smoothness(self):
        """Per-sample curvature bounds L_i and their root-mean-square L_tilde."""
        sq_norms = np.asarray(self.X.power(2).sum(axis=1)).ravel()
        if self.kind == "logistic":
            L_i = sq_norms / 4.0
        else:
            L_i = _NLLS_CURVATURE_BOUND * sq_norms
        L_tilde = float(np.sqrt(np.mean(L_i**2)))
        return SmoothnessInfo(L_i=L_i, L_tilde=L_tilde, L_bound=L_tilde)
