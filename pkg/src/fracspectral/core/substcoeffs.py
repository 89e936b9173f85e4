"""
Coefficients A_i^j(a) of the change of variables t = y^a

D_y^s Y(y^a) = y^(-s) sum_{j=1}^{s} A_{j-1}^s(a) t^j D_t^j Y, filled by the
three-term recurrence; the binomial convolution and the falling-factorial
identity are exposed as independent checks.
"""

from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from fracspectral.core.specialfn import falling_factorial
from fracspectral.errors import DomainError, InvalidParameterError


@dataclass(frozen=True)
class CoeffTable:
    a: float
    order: int
    entries: np.ndarray  # entries[i, j] = A_i^j, zero for i >= j

    def coeff(self, i: int, j: int) -> float:
        if i < 0 or i >= j:
            return 0.0
        return float(self.entries[i, j])


def build_coeff_table(a: float, order: int) -> CoeffTable:
    if order < 1:
        raise InvalidParameterError(f"coefficient table order must be >= 1, got {order}")
    table = np.zeros((order + 1, order + 1))
    for j in range(1, order + 1):
        table[0, j] = falling_factorial(a, j)
        table[j - 1, j] = a ** j
        for i in range(1, j - 1):
            table[i, j] = a * ((i + 1) * table[i, j - 1] + table[i - 1, j - 1]) - (j - 1) * table[i, j - 1]
    table.setflags(write=False)
    return CoeffTable(a=a, order=order, entries=table)


def coefficient_by_convolution(table: CoeffTable, i: int, j: int) -> float:
    """A_i^j rebuilt from row i-1 by the binomial convolution (i >= 1)."""
    if i < 1:
        raise DomainError(f"the convolution identity starts at i = 1, got {i}")
    return sum(comb(j - 1, s) * falling_factorial(table.a, j - s) * table.coeff(i - 1, s) for s in range(i, j))


def weighted_falling_sum(table: CoeffTable, x: float, s: int) -> float:
    if not 1 <= s <= table.order:
        raise DomainError(f"s={s} outside [1, {table.order}]")
    return sum(falling_factorial(x, j) * table.coeff(j - 1, s) for j in range(1, s + 1))


def chain_rule_apply(table: CoeffTable, t_derivatives: Sequence[float], y: float) -> float:
    """
    D_y^s of Y(y^a) from the t-derivatives D_t^1 Y ... D_t^s Y taken at t = y^a,
    s = len(t_derivatives).
    """
    if y <= 0.0:
        raise DomainError(f"the substitution t = y^a is singular at y={y}")
    s = len(t_derivatives)
    if not 1 <= s <= table.order:
        raise DomainError(f"{s} t-derivatives given, table holds order {table.order}")
    t = y ** table.a
    total = sum(table.coeff(j - 1, s) * t ** j * t_derivatives[j - 1] for j in range(1, s + 1))
    return total * y ** (-s)
