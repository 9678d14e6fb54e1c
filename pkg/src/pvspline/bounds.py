"""A priori error budgets of the form L * ln N / N^beta.

Three families are provided:

``bound_thm1``  real rule, classes W1, C1AlphaPiecewise, W2Piecewise
``bound_thm2``  off-cut rule, same classes, with L* = sqrt(L^2 + (L1/ln N)^2)
``bound_thm3``  real rule, adds the Holder class; main terms are half of
                ``bound_thm1``'s for the shared classes

Constants carry their ``(1 + c / ln N)`` correction factors; the main term
alone is kept as ``ErrorBudget.leading``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import DomainError, UnsupportedClassError
from .spline import ClassTag, FunctionClassSpec

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ErrorBudget:
    """Bound ``bound_value = C * ln N / N**beta`` with its ingredients.

    ``leading`` is the main term of the constant, i.e. the constant with
    its ``(1 + c / ln N)`` correction dropped.
    """

    kind: str
    beta: float
    leading: float
    N: float
    gamma: float
    bound_value: float
    L: float | None = None
    L1: float | None = None
    L_star: float | None = None
    L2: float | None = None

    def to_dict(self):
        return asdict(self)


def _check(gamma, N):
    if not gamma >= 2.0:
        raise DomainError(f"mesh ratio must be >= 2, got {gamma!r}")
    if not N >= 3:
        raise DomainError(f"bounds need N >= 3, got {N!r}")


def _beta_and_L(cls: FunctionClassSpec, gamma: float, ln_n: float):
    tag = cls.tag
    if tag is ClassTag.W1:
        lead = 4.0 * gamma * cls.M1 / math.pi
        return 1.0, lead, lead * (1.0 + math.pi * _SQRT2 / (2.0 * gamma * ln_n))
    if tag is ClassTag.C1_ALPHA:
        lead = 2.0 * gamma ** (1.0 + cls.alpha) * cls.K1 / math.pi
        return 1.0 + cls.alpha, lead, lead * (1.0 + math.pi * _SQRT2 / (2.0 * gamma * ln_n))
    if tag is ClassTag.W2:
        lead = gamma**2 * cls.M2 / math.pi
        return 2.0, lead, lead * (1.0 + math.pi * _SQRT2 / (gamma * ln_n))
    raise UnsupportedClassError(f"{tag.value} class is only covered by bound_thm3")


def bound_thm1(cls: FunctionClassSpec, gamma: float, N: float) -> ErrorBudget:
    """Uniform bound on the real-rule error for the three smooth classes."""
    _check(gamma, N)
    ln_n = math.log(N)
    beta, lead, L = _beta_and_L(cls, gamma, ln_n)
    return ErrorBudget("thm1", beta, lead, N, gamma, L * ln_n / N**beta, L=L)


def bound_thm2(cls: FunctionClassSpec, gamma: float, N: float) -> ErrorBudget:
    """Bound on the off-cut error, maximised over z."""
    _check(gamma, N)
    ln_n = math.log(N)
    beta, lead, L = _beta_and_L(cls, gamma, ln_n)
    tag = cls.tag
    if tag is ClassTag.W1:
        L1 = cls.M1 * gamma / (2.0 * math.pi)
    elif tag is ClassTag.C1_ALPHA:
        L1 = cls.K1 * gamma ** (1.0 + cls.alpha) / (4.0 * math.pi)
    else:
        L1 = cls.M2 * gamma**2 / (8.0 * math.pi)
    L_star = math.hypot(L, L1 / ln_n)
    return ErrorBudget("thm2", beta, lead, N, gamma, L_star * ln_n / N**beta, L=L, L1=L1, L_star=L_star)


def bound_thm3(cls: FunctionClassSpec, gamma: float, N: float) -> ErrorBudget:
    """Uniform bound on the real-rule error, Holder class included."""
    _check(gamma, N)
    ln_n = math.log(N)
    tag = cls.tag
    if tag is ClassTag.HOLDER:
        a = cls.alpha
        beta = a
        lead = 2.0 ** (2.0 - a) * gamma**a * cls.K / math.pi
        # the whole correction is divided by ln N
        L2 = lead * (1.0 + (2.0 + 1.0 / a) * 2.0 ** (2.0 - 2.0 * a) / (gamma**a * ln_n))
    elif tag is ClassTag.W1:
        beta = 1.0
        lead = 2.0 * gamma * cls.M1 / math.pi
        L2 = lead * (1.0 + 12.0 * math.pi / (gamma * ln_n))
    elif tag is ClassTag.C1_ALPHA:
        beta = 1.0 + cls.alpha
        lead = gamma ** (1.0 + cls.alpha) * cls.K1 / math.pi
        L2 = lead * (1.0 + 12.0 * math.pi / (gamma * ln_n))
    else:
        beta = 2.0
        lead = gamma**2 * cls.M2 / (2.0 * math.pi)
        L2 = lead * (1.0 + math.pi * math.sqrt(24.0 * math.pi) / (gamma * ln_n))
    return ErrorBudget("thm3", beta, lead, N, gamma, L2 * ln_n / N**beta, L2=L2)


def real_bound(cls: FunctionClassSpec, gamma: float, N: float) -> ErrorBudget:
    """The real-rule bound that applies: thm1 where it covers the class, else thm3."""
    if cls.tag is ClassTag.HOLDER:
        return bound_thm3(cls, gamma, N)
    return bound_thm1(cls, gamma, N)
