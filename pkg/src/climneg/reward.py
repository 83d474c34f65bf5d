"""Per-step utility and reward computation.

The baseline reward of a region is isoelastic (CRRA) utility of
aggregate consumption. The augmented reward blends in the utility the
region would enjoy if its invested output were consumed instead, with
weight ``omega``; at ``omega=0`` the baseline is recovered bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Width of the log-utility branch around alpha = 1.
LOG_BRANCH_TOL = 1e-9


@dataclass(frozen=True)
class RewardParams:
    """Reward shaping and feasibility parameters.

    ``alpha`` and ``beta`` act as defaults for regions that do not give
    their own; ``omega`` weights the savings credit; ``epsilon_c`` is the
    consumption floor substituted (and flagged) when consumption would
    otherwise drop below it.
    """

    alpha: float = 1.45
    omega: float = 0.0
    beta: float = 0.98
    epsilon_c: float = 1e-9

    def violations(self, prefix: str = "") -> list[str]:
        out = []
        if not np.isfinite(self.alpha) or self.alpha <= 0:
            out.append(f"{prefix}alpha: must be finite and > 0, got {self.alpha!r}")
        if not np.isfinite(self.omega) or not 0 <= self.omega <= 1:
            out.append(f"{prefix}omega: must lie in [0, 1], got {self.omega!r}")
        if not np.isfinite(self.beta) or not 0 < self.beta <= 1:
            out.append(f"{prefix}beta: must lie in (0, 1], got {self.beta!r}")
        if not np.isfinite(self.epsilon_c) or self.epsilon_c <= 0:
            out.append(f"{prefix}epsilonC: must be finite and > 0, got {self.epsilon_c!r}")
        return out


def consumption(s, Q, exports, epsilon_c: float = 1e-9):
    """Aggregate consumption (1 - s) * Q - exports, floored at ``epsilon_c``.

    Returns ``(C, infeasible)``. ``infeasible`` is True wherever the raw
    value fell below the floor; callers record the flag rather than
    aborting so policy search can traverse infeasible corners.
    """
    raw = (1.0 - s) * Q - exports
    infeasible = raw < epsilon_c
    c = np.where(infeasible, epsilon_c, raw)
    if np.ndim(c) == 0:
        return float(c), bool(infeasible)
    return c, infeasible


def _crra(C, L, alpha):
    """Isoelastic utility without domain checks; log branch near alpha=1."""
    cpc = np.asarray(C) / L
    log_branch = np.abs(np.asarray(alpha) - 1.0) < LOG_BRANCH_TOL
    alpha_safe = np.where(log_branch, 2.0, alpha)
    with np.errstate(all="ignore"):
        general = L / (1.0 - alpha_safe) * (cpc ** (1.0 - alpha_safe) - 1.0)
        logform = L * np.log(cpc)
    return np.where(log_branch, logform, general)


def baseline_utility(C, L, alpha):
    """CRRA utility U = L/(1-alpha) * ((C/L)**(1-alpha) - 1).

    Uses the exact log limit L*ln(C/L) when |alpha - 1| < 1e-9. Zero
    exactly when per-capita consumption is 1.
    """
    if np.any(np.asarray(C) <= 0) or np.any(np.asarray(L) <= 0):
        raise DomainError("baseline_utility requires C > 0 and L > 0")
    if np.any(np.asarray(alpha) <= 0):
        raise DomainError("baseline_utility requires alpha > 0")
    u = _crra(C, L, alpha)
    return float(u) if np.ndim(u) == 0 else u


def augmented_reward(C, L, alpha, s, Qnet, omega):
    """Savings-crediting reward.

    r = (1 - omega) * U(C) + omega * U(C + s * Qnet): a convex blend of
    realized-consumption utility and the utility of consuming the
    invested share as well. Reduces to U(C) exactly at omega = 0 and at
    s * Qnet = 0.
    """
    if np.any(np.asarray(omega) < 0) or np.any(np.asarray(omega) > 1):
        raise DomainError(f"omega must lie in [0, 1], got {omega!r}")
    if np.any(np.asarray(s) < 0) or np.any(np.asarray(s) >= 1):
        raise DomainError(f"savings rate must lie in [0, 1), got {s!r}")
    if np.any(np.asarray(Qnet) < 0):
        raise DomainError(f"net output must be >= 0, got {Qnet!r}")
    u = baseline_utility(C, L, alpha)
    if np.ndim(u) == 0:
        invest = s * Qnet
        if omega == 0.0 or invest == 0.0:
            return u
        return (1.0 - omega) * u + omega * baseline_utility(C + invest, L, alpha)
    return _blend(u, C, L, alpha, s, Qnet, omega)


def _blend(u, C, L, alpha, s, Qnet, omega):
    """Vectorized augmented reward given precomputed baseline utility."""
    if np.ndim(omega) == 0 and omega == 0.0:
        return u
    invest = s * np.asarray(Qnet)
    blended = (1.0 - omega) * u + omega * _crra(C + invest, L, alpha)
    return np.where(invest == 0.0, u, blended)


def discounted_return(rewards, beta):
    """Sum of beta**t * r_t, accumulated in step order.

    ``rewards`` may be a sequence of scalars or an array whose first axis
    is time; ``beta`` may be a scalar or broadcast against each step.
    """
    if np.any(np.asarray(beta) <= 0) or np.any(np.asarray(beta) > 1):
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    acc = None
    beta_pow = None
    for r in rewards:
        if acc is None:
            acc = np.zeros(np.broadcast_shapes(np.shape(r), np.shape(beta)))
            beta_pow = np.ones_like(acc)
        acc = acc + beta_pow * r
        beta_pow = beta_pow * beta
    if acc is None:
        return 0.0
    return float(acc) if np.ndim(acc) == 0 else acc
