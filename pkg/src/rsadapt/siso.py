"""Soft-input soft-output updates on a binary parity-check matrix.

The extrinsic LLR of bit i is the sum over its checks of
2*atanh(prod of tanh(L_p/2) over the other participants), accumulated onto
the current LLR vector with a damping factor. The same leave-one-out
products, without the atanh, give the gradient of the potential
J(H, T) = -sum_j prod_{p in row j} T_p, whose minimum value -(n-k) is hit
exactly on codeword vertices T in {-1, +1}^n.

Numerics: check products are clamped to 1 - 1e-12 in magnitude before
atanh, updated LLRs are capped at 50 nats, and bits pinned to +-inf enter
products as tanh = +-1 and are never moved off infinity.
"""

from dataclasses import dataclass

import numpy as np

from .adapt import rank_order

TANH_CLAMP = 1.0 - 1e-12
LLR_CAP = 50.0
# largest extrinsic magnitude a single check can contribute
EXT_CAP = 2.0 * np.arctanh(TANH_CLAMP)


@dataclass
class SpaConfig:
    rule: str = "sum-product"          # "sum-product" | "min-sum"
    partial_m: int | None = None       # update only the n-k+M least reliable bits
    dense_tanh_approx: bool = False    # one shared tanh factor for the reliable part

    def __post_init__(self):
        if self.rule not in ("sum-product", "min-sum"):
            raise ValueError(f"unknown update rule {self.rule!r}")
        if self.partial_m is not None and self.partial_m < 0:
            raise ValueError("partial_m must be >= 0")


def tanh_map(llr):
    """T = tanh(L/2); +-inf maps to exactly +-1."""
    return np.tanh(0.5 * np.asarray(llr, dtype=float))


def tanh_unmap(t):
    """L = 2*atanh(T) = ln((1+T)/(1-T)), with |T| clamped below 1."""
    t = np.clip(np.asarray(t, dtype=float), -TANH_CLAMP, TANH_CLAMP)
    return 2.0 * np.arctanh(t)


def _leave_one_out(vals, mask):
    """loo[j, i] = product of vals over row j participants other than i.

    Exact under zeros: a row with one zero factor still yields the nonzero
    leave-one-out product at the zero's own position. Entries outside the
    mask are returned as 0.
    """
    v = np.where(mask, vals, 1.0)
    zero = v == 0.0
    nz = np.where(zero, 1.0, v)
    prod_nz = nz.prod(axis=1, keepdims=True)
    zcount = zero.sum(axis=1, keepdims=True)
    loo = np.where(zero,
                   np.where(zcount == 1, prod_nz, 0.0),
                   np.where(zcount == 0, prod_nz / nz, 0.0))
    return np.where(mask, loo, 0.0)


def _minsum_loo(llr, mask):
    """Leave-one-out min magnitude and sign product per (check, bit)."""
    a = np.where(mask, np.abs(llr), np.inf)
    i1 = a.argmin(axis=1)
    rows = np.arange(a.shape[0])
    m1 = a[rows, i1]
    a2 = a.copy()
    a2[rows, i1] = np.inf
    m2 = a2.min(axis=1)
    is_min = np.zeros(a.shape, dtype=bool)
    is_min[rows, i1] = True
    mag = np.where(is_min, m2[:, None], m1[:, None])
    mag = np.minimum(mag, EXT_CAP)
    sgn = np.where(np.asarray(llr) < 0, -1.0, 1.0)
    srow = np.where(mask, sgn, 1.0).prod(axis=1, keepdims=True)
    return np.where(mask, srow * sgn * mag, 0.0)


def extrinsic(h, llr, cfg=None):
    """Extrinsic LLR for every bit under the given check matrix.

    partial_m restricts nonzero output to the n-k+M least reliable bits of
    the current ordering; dense_tanh_approx replaces every reliable-part
    tanh factor by the tanh of the smallest reliable-part |LLR|.
    """
    cfg = cfg or SpaConfig()
    h = np.asarray(h)
    llr = np.asarray(llr, dtype=float)
    mask = h != 0
    r = h.shape[0]

    order = None
    if cfg.partial_m is not None or cfg.dense_tanh_approx:
        order = rank_order(np.abs(llr))

    if cfg.rule == "min-sum":
        loo = _minsum_loo(llr, mask)
        lext = loo.sum(axis=0)
    else:
        t = tanh_map(llr)
        if cfg.dense_tanh_approx and r < llr.size:
            reliable = order[r:]
            t_min = np.tanh(0.5 * np.abs(llr[reliable[0]]))
            t = t.copy()
            t[reliable] = np.where(t[reliable] < 0, -t_min,
                                   np.where(t[reliable] > 0, t_min, 0.0))
        loo = np.clip(_leave_one_out(t, mask), -TANH_CLAMP, TANH_CLAMP)
        lext = (2.0 * np.arctanh(loo)).sum(axis=0)

    if cfg.partial_m is not None:
        keep = order[: min(r + cfg.partial_m, llr.size)]
        out = np.zeros_like(lext)
        out[keep] = lext[keep]
        lext = out
    return lext


def damped_update(llr, lext, alpha, cap=LLR_CAP):
    """L <- L + alpha * L_ext, capped at +-cap; pinned +-inf stay put."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must be in (0, 1]")
    out = np.asarray(llr, dtype=float) + alpha * np.asarray(lext, dtype=float)
    finite = np.isfinite(out)
    out[finite] = np.clip(out[finite], -cap, cap)
    return out


def potential(h, t):
    """J(H, T) = -sum over checks of the product of participating T's."""
    mask = np.asarray(h) != 0
    v = np.where(mask, np.asarray(t, dtype=float), 1.0)
    return float(-v.prod(axis=1).sum())


def gradient(h, t):
    """dJ/dT_i = -sum over checks containing i of the leave-one-out product."""
    mask = np.asarray(h) != 0
    return -_leave_one_out(np.asarray(t, dtype=float), mask).sum(axis=0)


def tanh_domain_update(h, t, alpha):
    """One damped descent step expressed purely in the tanh domain.

    Equals tanh_map(damped_update(tanh_unmap(T), extrinsic(...), alpha)):
    the check-wise atanh of the leave-one-out products is exactly the
    extrinsic LLR, so the two formulations coincide.
    """
    h = np.asarray(h)
    t = np.asarray(t, dtype=float)
    mask = h != 0
    loo = np.clip(_leave_one_out(t, mask), -TANH_CLAMP, TANH_CLAMP)
    modified_grad = -(2.0 * np.arctanh(loo)).sum(axis=0)
    return np.tanh(0.5 * (tanh_unmap(t) - alpha * modified_grad))
