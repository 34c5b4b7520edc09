"""Stochastic gradient estimators: full, SARAH, SAGA-SARAH, and momentum.

Each estimator owns its estimate g, its seeded RNG, and its stochastic
first-order oracle (SFO) counter; the counter increments by exactly the
number of per-sample gradient evaluations performed. The SARAH refresh coin
is drawn before any batch so the refresh branch consumes exactly one RNG
draw, which keeps seeded reruns bit-exact.

Update rules (x_new = x^{k+1}, x_old = x^k, batch S of size b):

    full        g = grad f(x_new)                                  [n SFO]
    sarah       with prob p: g = grad f(x_new)                     [n SFO]
                else: g += mean_S[grad f_i(x_new) - grad f_i(x_old)]
                                                                   [2b SFO]
    saga_sarah  g = mean_S[grad f_i(x_new) - grad f_i(x_old)]
                    + (1-lam) g
                    + lam (mean_S[grad f_i(x_old) - y_i] + avg_j y_j)
                then y_i = grad f_i(x_new) for i in S              [2b SFO]
    momentum    g = (1-rho_k) g + rho_k mean_S[grad f_i(x_new)]    [b SFO]

The SAGA table stores each y_i in factored form: both losses have
grad f_i = c_i * x_i, so one scalar per sample suffices. The table average
is maintained incrementally (O(b * nnz) per step) and recomputed from
scratch every 10^4 updates to wash out float drift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EstimatorConfig",
    "FullGradEstimator",
    "SarahEstimator",
    "SagaSarahEstimator",
    "MomentumEstimator",
    "init_estimator",
    "ESTIMATOR_KINDS",
    "SAMPLING_MODES",
]

ESTIMATOR_KINDS = ("full", "sarah", "saga_sarah", "momentum")
SAMPLING_MODES = ("with_replacement", "without_replacement")

_SAGA_RECOMPUTE_EVERY = 10_000


def default_momentum_rho(k):
    return (k + 1.0) ** (-2.0 / 3.0)


@dataclass(frozen=True)
class EstimatorConfig:
    """Which estimator to run and its parameters.

    ``p`` is required for sarah, ``lam`` for saga_sarah; ``momentum_rho``
    overrides the default (k+1)^(-2/3) rule. ``cold_start`` starts
    saga_sarah from a single sampled gradient and an all-zero table instead
    of a full-gradient pass.
    """

    kind: str
    b: int = 1
    p: float | None = None
    lam: float | None = None
    momentum_rho: object = None
    sampling: str = "with_replacement"
    cold_start: bool = False

    def __post_init__(self):
        if self.kind not in ESTIMATOR_KINDS:
            raise ValueError(f"unknown estimator kind {self.kind!r}")
        if self.sampling not in SAMPLING_MODES:
            raise ValueError(f"unknown sampling mode {self.sampling!r}")
        if self.b < 1:
            raise ValueError("batch size must be >= 1")
        if self.kind == "sarah" and (self.p is None or not 0 < self.p <= 1):
            raise ValueError("sarah needs refresh probability p in (0, 1]")
        if self.kind == "saga_sarah" and (self.lam is None or not 0 < self.lam <= 1):
            raise ValueError("saga_sarah needs mixing weight lam in (0, 1]")
        if self.cold_start and self.kind != "saga_sarah":
            raise ValueError("cold_start only applies to saga_sarah")


class _Estimator:
    kind = None

    def __init__(self, cfg, obj, seed):
        if cfg.kind != self.kind:
            raise ValueError(f"config kind {cfg.kind!r} does not match {self.kind!r}")
        if cfg.sampling == "without_replacement" and cfg.b > obj.n:
            raise ValueError("batch size exceeds n for without-replacement sampling")
        self.cfg = cfg
        self.obj = obj
        self.rng = np.random.default_rng(seed)
        self.sfo_count = 0
        self.g = None

    def draw_batch(self):
        n, b = self.obj.n, self.cfg.b
        if self.cfg.sampling == "with_replacement":
            return self.rng.integers(0, n, size=b)
        return self.rng.choice(n, size=b, replace=False)

    def _full_refresh(self, x):
        self.g = self.obj.grad_full(x)
        self.sfo_count += self.obj.n


class FullGradEstimator(_Estimator):
    """Deterministic baseline: g is always the exact full gradient."""

    kind = "full"

    def __init__(self, cfg, obj, x0, seed):
        super().__init__(cfg, obj, seed)
        self._full_refresh(x0)

    def update(self, x_new, x_old=None, k=None):
        self._full_refresh(x_new)


class SarahEstimator(_Estimator):
    """Loopless SARAH: recursive correction, full refresh with probability p."""

    kind = "sarah"

    def __init__(self, cfg, obj, x0, seed):
        super().__init__(cfg, obj, seed)
        self._full_refresh(x0)
        self.refresh_log = []

    def update(self, x_new, x_old, k=None, force_refresh=None, force_batch=None):
        # Coin first, then batch: the refresh branch consumes one RNG draw.
        if force_refresh is None:
            refresh = self.rng.random() < self.cfg.p
        else:
            refresh = bool(force_refresh)
        if refresh:
            self._full_refresh(x_new)
        else:
            obj = self.obj
            S = self.draw_batch() if force_batch is None else np.asarray(force_batch)
            XS = obj.X[S]
            yS = obj.y[S]
            c_new = obj.margin_coefs(np.asarray(XS @ x_new).ravel(), yS)
            c_old = obj.margin_coefs(np.asarray(XS @ x_old).ravel(), yS)
            self.g = self.g + np.asarray(XS.T @ (c_new - c_old)).ravel() / len(S)
            self.sfo_count += 2 * len(S)
        self.refresh_log.append(refresh)


class SagaSarahEstimator(_Estimator):
    """SARAH recursion mixed with a SAGA-table correction; no full gradients."""

    kind = "saga_sarah"

    def __init__(self, cfg, obj, x0, seed):
        super().__init__(cfg, obj, seed)
        n = obj.n
        if cfg.cold_start:
            i0 = int(self.rng.integers(0, n))
            self.g = obj.grad_sample(i0, x0)
            self.sfo_count += 1
            self.table_coefs = np.zeros(n)
            self.saga_avg = np.zeros(obj.d)
        else:
            # One pass fills the table and the initial estimate together.
            coefs = obj.grad_coefs(x0)
            self.table_coefs = coefs
            self.saga_avg = np.asarray(obj.X.T @ coefs).ravel() / n
            self.g = self.saga_avg.copy()
            self.sfo_count += n
        self._updates_since_recompute = 0

    def table_mean(self):
        """Recompute (1/n) sum_j y_j from the stored table."""
        return np.asarray(self.obj.X.T @ self.table_coefs).ravel() / self.obj.n

    def update(self, x_new, x_old, k=None, force_batch=None):
        obj, lam = self.obj, self.cfg.lam
        S = self.draw_batch() if force_batch is None else np.asarray(force_batch)
        b = len(S)

        XS = obj.X[S]
        yS = obj.y[S]
        c_new = obj.margin_coefs(np.asarray(XS @ x_new).ravel(), yS)
        c_old = obj.margin_coefs(np.asarray(XS @ x_old).ravel(), yS)
        sarah_term = np.asarray(XS.T @ (c_new - c_old)).ravel() / b
        saga_term = (
            np.asarray(XS.T @ (c_old - self.table_coefs[S])).ravel() / b
            + self.saga_avg
        )
        self.g = sarah_term + (1.0 - lam) * self.g + lam * saga_term
        self.sfo_count += 2 * b

        # Table write-back on unique indices; duplicates in S only affect
        # the averages above, each y_i is overwritten once. Zeroing the
        # non-first duplicate positions makes XS.T @ delta_vec equal the
        # sum of per-unique-row deltas without slicing X again.
        uniq, first_pos = np.unique(S, return_index=True)
        delta_vec = np.zeros(b)
        delta_vec[first_pos] = c_new[first_pos] - self.table_coefs[uniq]
        self.saga_avg = self.saga_avg + np.asarray(XS.T @ delta_vec).ravel() / obj.n
        self.table_coefs[uniq] = c_new[first_pos]

        self._updates_since_recompute += 1
        if self._updates_since_recompute >= _SAGA_RECOMPUTE_EVERY:
            self.saga_avg = self.table_mean()
            self._updates_since_recompute = 0


class MomentumEstimator(_Estimator):
    """Exponential-average baseline: g = (1 - rho_k) g + rho_k batch gradient."""

    kind = "momentum"

    def __init__(self, cfg, obj, x0, seed):
        super().__init__(cfg, obj, seed)
        self._full_refresh(x0)
        self.rho = cfg.momentum_rho or default_momentum_rho

    def update(self, x_new, x_old=None, k=0, force_batch=None):
        rho = self.rho(k)
        S = self.draw_batch() if force_batch is None else np.asarray(force_batch)
        self.g = (1.0 - rho) * self.g + rho * self.obj.grad_batch(S, x_new)
        self.sfo_count += len(S)


_CLASSES = {
    "full": FullGradEstimator,
    "sarah": SarahEstimator,
    "saga_sarah": SagaSarahEstimator,
    "momentum": MomentumEstimator,
}


def init_estimator(cfg, obj, x0, seed):
    """Build the estimator named by ``cfg.kind`` with g initialized at x0."""
    return _CLASSES[cfg.kind](cfg, obj, np.asarray(x0, dtype=np.float64), seed)
