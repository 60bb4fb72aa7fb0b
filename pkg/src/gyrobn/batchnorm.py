"""GyroBN: batch normalization over gyro-structures.

The core map is

    x~ = beta (+) ((s / sqrt(v^2 + eps)) (.) ((-)mu (+) x))

i.e. gyro-centering at the Fréchet mean ``mu``, scaling the dispersion about
the identity, then gyro-biasing. Training mode normalizes with batch
statistics after updating the running ones; inference mode uses the running
statistics and leaves the state untouched.
"""

import json
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .base import GyroError
from .descriptor import ManifoldDescriptor, make_ops, parse_descriptor
from .frechet import KarcherConfig, binary_barycenter, frechet_mean, frechet_variance


@dataclass(frozen=True)
class BatchNormState:
    """Parameters and running statistics of one GyroBN layer."""

    descriptor: ManifoldDescriptor
    bias: np.ndarray
    scale: float
    running_mean: np.ndarray
    running_var: float
    momentum: float = 0.1
    eps: float = 1e-5
    training: bool = True
    mean_cfg: KarcherConfig = field(default_factory=KarcherConfig)

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if not 0 <= self.momentum <= 1:
            raise ValueError("momentum must lie in [0, 1]")
        if not self.running_var >= 0:
            raise ValueError("running_var must be nonnegative")

    def eval(self):
        return replace(self, training=False)

    def train(self):
        return replace(self, training=True)


@dataclass(frozen=True)
class BatchReport:
    """Before/after statistics of one forward pass.

    ``pre_var`` is the variance used for normalization in training mode; in
    inference mode both pre statistics are still measured on the batch.
    """

    pre_mean: np.ndarray
    pre_var: float
    post_mean: np.ndarray
    post_var: float
    mean_iters: int
    residual_to_bias: float
    converged: bool

    def to_dict(self):
        out = asdict(self)
        out["pre_mean"] = np.asarray(self.pre_mean).ravel().tolist()
        out["post_mean"] = np.asarray(self.post_mean).ravel().tolist()
        return out


def init_state(descriptor, bias=None, scale=1.0, momentum=0.1, eps=1e-5, mean_cfg=None, ops=None):
    """Fresh layer state with running mean ``e`` and running variance 1.

    Raises
    ------
    GyroError
        If ``bias`` is off-manifold.
    """
    desc = parse_descriptor(descriptor)
    ops = ops or make_ops(desc)
    e = np.array(ops.identity(), dtype=float)
    bias = e.copy() if bias is None else ops.validate(np.array(bias, dtype=float))
    return BatchNormState(
        descriptor=desc,
        bias=bias,
        scale=float(scale),
        running_mean=e,
        running_var=1.0,
        momentum=float(momentum),
        eps=float(eps),
        training=True,
        mean_cfg=mean_cfg or KarcherConfig(),
    )


def normalize(batch, mean, var, bias, scale, eps, ops):
    """Gyro-center at ``mean``, scale by ``scale / sqrt(var + eps)``, bias by ``bias``."""
    centered = ops.oplus(ops.ominus(mean), batch)
    scaled = ops.odot(scale / np.sqrt(var + eps), centered)
    return ops.oplus(bias, scaled)


def _check_batch(batch, ops):
    batch = np.asarray(batch, dtype=float)
    if batch.ndim != len(ops.point_shape) + 1 or batch.shape[0] == 0:
        raise GyroError(f"expected a nonempty batch of shape (N, *{tuple(ops.point_shape)}), got {batch.shape}")
    if not np.all(np.isfinite(batch)):
        raise GyroError("batch contains non-finite values")
    return batch


def forward(batch, state, ops=None, report=True):
    """One GyroBN pass.

    Parameters
    ----------
    batch : ndarray, shape (N, *point_shape)
    state : BatchNormState
    ops : GyroOps, optional
        Built from ``state.descriptor`` when omitted.
    report : bool
        Compute post-normalization statistics (one extra Fréchet mean).

    Returns
    -------
    out : ndarray
        Normalized batch, same shape as ``batch``.
    report : BatchReport or None
    state : BatchNormState
        Updated running statistics in training mode, ``state`` itself
        otherwise.
    """
    ops = ops or make_ops(state.descriptor)
    batch = _check_batch(batch, ops)
    cfg = state.mean_cfg
    mu_b, iters, grad_norm = frechet_mean(batch, ops, cfg=cfg)
    var_b = frechet_variance(batch, mu_b, ops)
    converged = grad_norm < cfg.tol

    if state.training:
        eta = state.momentum
        state = replace(
            state,
            running_mean=binary_barycenter(mu_b, state.running_mean, eta, ops),
            running_var=eta * var_b + (1 - eta) * state.running_var,
        )
        mean, var = mu_b, var_b
    else:
        mean, var = state.running_mean, state.running_var

    out = normalize(batch, mean, var, state.bias, state.scale, state.eps, ops)
    if not np.all(np.isfinite(out)):
        raise GyroError("normalization produced non-finite values")
    if not report:
        return out, None, state

    post_mean, _, post_grad = frechet_mean(out, ops, cfg=cfg)
    rep = BatchReport(
        pre_mean=mu_b,
        pre_var=var_b,
        post_mean=post_mean,
        post_var=frechet_variance(out, post_mean, ops),
        mean_iters=int(iters),
        residual_to_bias=float(ops.dist(post_mean, state.bias)),
        converged=bool(converged and post_grad < cfg.tol),
    )
    return out, rep, state


# -- serialization ------------------------------------------------------------


def state_to_dict(state):
    return {
        "descriptor": str(state.descriptor),
        "bias": np.asarray(state.bias).ravel().tolist(),
        "running_mean": np.asarray(state.running_mean).ravel().tolist(),
        "scale": state.scale,
        "running_var": state.running_var,
        "momentum": state.momentum,
        "eps": state.eps,
        "training": state.training,
        "mean_cfg": asdict(state.mean_cfg),
    }


def state_from_dict(data):
    desc = parse_descriptor(data["descriptor"])
    ops = make_ops(desc)
    shape = tuple(ops.point_shape)
    return BatchNormState(
        descriptor=desc,
        bias=np.asarray(data["bias"], dtype=float).reshape(shape),
        scale=float(data["scale"]),
        running_mean=np.asarray(data["running_mean"], dtype=float).reshape(shape),
        running_var=float(data["running_var"]),
        momentum=float(data["momentum"]),
        eps=float(data["eps"]),
        training=bool(data.get("training", True)),
        mean_cfg=KarcherConfig(**data.get("mean_cfg", {})),
    )


def state_to_json(state):
    return json.dumps(state_to_dict(state))


def state_from_json(text):
    return state_from_dict(json.loads(text))


# -- correlation matrices -----------------------------------------------------


def cor_row_states(n, momentum=0.1, eps=1e-5, scale=1.0, mean_cfg=None):
    """One unit Poincaré-ball state per Cholesky row of an ``n x n`` correlation matrix."""
    return [
        init_state(ManifoldDescriptor("stereo", k, K=-1.0), scale=scale, momentum=momentum, eps=eps, mean_cfg=mean_cfg)
        for k in range(1, n)
    ]


def cor_gyrobn(batch, states, report=False):
    """Row-wise GyroBN of correlation matrices.

    Each Cholesky row is normalized independently on its own Poincaré ball.

    Returns
    -------
    out : ndarray, shape (N, n, n)
    reports : list of BatchReport or None
    states : list of BatchNormState
    """
    from .manifolds.correlation import _segments, cor_to_poly, poly_to_cor

    batch = np.asarray(batch, dtype=float)
    if batch.ndim != 3 or batch.shape[0] == 0 or batch.shape[1] != batch.shape[2]:
        raise GyroError("expected a nonempty batch of square correlation matrices")
    n = batch.shape[-1]
    if len(states) != n - 1:
        raise GyroError(f"need {n - 1} row states, got {len(states)}")
    poly = cor_to_poly(batch)
    rows, reports, new_states = [], [], []
    for st, seg in zip(states, _segments(n)):
        out, rep, st = forward(poly[:, seg], st, report=report)
        rows.append(out)
        reports.append(rep)
        new_states.append(st)
    return poly_to_cor(np.concatenate(rows, axis=-1), n), reports, new_states


# -- estimator ---------------------------------------------------------------


class GyroBatchNorm(TransformerMixin, BaseEstimator):
    """Scikit-learn style GyroBN transformer.

    Parameters
    ----------
    manifold : str
        Descriptor such as ``"stereo:K=-1:n=8"`` or ``"grass-onb:n=10:p=3"``.
    scale : float
        Scaling parameter ``s``.
    bias : array-like, optional
        Bias point ``beta``; defaults to the identity.
    momentum : float
        Running-statistic momentum ``eta``.
    eps : float
    max_iters, tol : int, float
        Karcher-flow settings.

    Attributes
    ----------
    state_ : BatchNormState
        Current layer state after :meth:`fit` / :meth:`partial_fit`.
    last_report_ : BatchReport
    """

    def __init__(self, manifold="stereo:K=-1:n=2", scale=1.0, bias=None, momentum=0.1, eps=1e-5, max_iters=50, tol=1e-9):
        self.manifold = manifold
        self.scale = scale
        self.bias = bias
        self.momentum = momentum
        self.eps = eps
        self.max_iters = max_iters
        self.tol = tol

    def _ops(self):
        return make_ops(self.manifold)

    def _validate(self, X, ops):
        X = np.asarray(X, dtype=float)
        if X.ndim != len(ops.point_shape) + 1 or X.shape[0] == 0:
            raise ValueError(f"expected X of shape (n_samples, *{tuple(ops.point_shape)}), got {X.shape}")
        return ops.validate(X)

    def _new_state(self, ops):
        cfg = KarcherConfig(max_iters=self.max_iters, tol=self.tol)
        return init_state(ops.descriptor, self.bias, self.scale, self.momentum, self.eps, cfg, ops=ops)

    def _train_step(self, X):
        ops = self._ops()
        X = self._validate(X, ops)
        if not hasattr(self, "state_"):
            self.state_ = self._new_state(ops)
        out, rep, self.state_ = forward(X, self.state_.train(), ops=ops)
        self.last_report_ = rep
        self.n_batches_seen_ = getattr(self, "n_batches_seen_", 0) + 1
        return out

    def fit(self, X, y=None):
        """Reset the layer and run one training step on ``X``."""
        for attr in ("state_", "last_report_", "n_batches_seen_"):
            if hasattr(self, attr):
                delattr(self, attr)
        self._train_step(X)
        return self

    def partial_fit(self, X, y=None):
        """One more training step, keeping the running statistics."""
        self._train_step(X)
        return self

    def fit_transform(self, X, y=None):
        """Training-mode output: ``X`` normalized with its own batch statistics."""
        for attr in ("state_", "last_report_", "n_batches_seen_"):
            if hasattr(self, attr):
                delattr(self, attr)
        return self._train_step(X)

    def transform(self, X):
        """Inference-mode output using the running statistics."""
        check_is_fitted(self, "state_")
        ops = self._ops()
        X = self._validate(X, ops)
        out, _, _ = forward(X, self.state_.eval(), ops=ops, report=False)
        return out
