"""Classical Pell numbers, generalized Pell (p,i)-numbers and exact ratio bounds.

Everything here is integer or :class:`fractions.Fraction` arithmetic; the
silver ratio ``1 + sqrt(2)`` is never stored as a float in any contract, only
bracketed by consecutive Pell ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple


class DomainError(ValueError):
    """An index or parameter lies outside the domain of a sequence."""


@dataclass(frozen=True)
class SequenceParams:
    """Parameters ``(p, i)`` of the generalized Pell family."""

    p: int
    i: int

    def __post_init__(self):
        if self.p < 1:
            raise DomainError(f"p must be >= 1, got {self.p}")
        if not 0 <= self.i <= self.p:
            raise DomainError(f"i must satisfy 0 <= i <= p={self.p}, got {self.i}")


_PELL: List[int] = [0, 1]


def pell(n: int) -> int:
    """Classical Pell number with ``P_0 = 0`` and ``P_1 = 1``."""
    if n < 0:
        raise DomainError(f"pell index must be >= 0, got {n}")
    while len(_PELL) <= n:
        _PELL.append(2 * _PELL[-1] + _PELL[-2])
    return _PELL[n]


@lru_cache(maxsize=None)
def _gen_pell_terms(p: int, i: int) -> List[int]:
    # 1-based: terms[0] is a placeholder so terms[k] == P_p^(i)(k).
    return [0] + [0] * i + [1] * (p + 1 - i)


def gen_pell(params: SequenceParams, n: int) -> int:
    """Generalized Pell (p,i)-number ``P_p^(i)(n)`` for ``n >= 1``.

    The first ``i`` terms are 0, terms ``i+1 .. p+1`` are 1, and after that
    ``P(n) = 2 P(n-1) + P(n-p-1)``.
    """
    if n < 1:
        raise DomainError(f"generalized Pell index must be >= 1, got {n}")
    p = params.p
    terms = _gen_pell_terms(p, params.i)
    while len(terms) <= n:
        k = len(terms)
        terms.append(2 * terms[k - 1] + terms[k - p - 1])
    return terms[n]


def _sqrt2_mul(x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
    # (a + b*sqrt2)(c + d*sqrt2)
    a, b = x
    c, d = y
    return a * c + 2 * b * d, a * d + b * c


def _sqrt2_pow(x: Tuple[int, int], n: int) -> Tuple[int, int]:
    result = (1, 0)
    base = x
    while n:
        if n & 1:
            result = _sqrt2_mul(result, base)
        base = _sqrt2_mul(base, base)
        n >>= 1
    return result


def binet_pell(n: int) -> int:
    """Pell number from the Binet form, computed exactly in Z[sqrt 2].

    ``gamma**n - delta**n`` has zero rational part and ``sqrt2`` coefficient
    ``2*b`` where ``gamma**n = a + b*sqrt2``; dividing by ``gamma - delta =
    2*sqrt2`` leaves ``b``.
    """
    if n < 0:
        raise DomainError(f"pell index must be >= 0, got {n}")
    a1, b1 = _sqrt2_pow((1, 1), n)
    a2, b2 = _sqrt2_pow((1, -1), n)
    num_rational, num_sqrt2 = a1 - a2, b1 - b2
    assert num_rational == 0
    quotient, remainder = divmod(num_sqrt2, 2)
    assert remainder == 0
    return quotient


def pell_ratio(n: int) -> Fraction:
    """Exact ratio ``P_{n+1} / P_n``."""
    if n < 1:
        raise DomainError(f"pell_ratio needs n >= 1, got {n}")
    return Fraction(pell(n + 1), pell(n))


def ratio_interval(n: int) -> Tuple[Fraction, Optional[Fraction]]:
    """Open interval that brackets every code-matrix row ratio ``e1/e2``.

    The endpoints are the consecutive ratios ``P(n+2)/P(n+1)`` and
    ``P(n+1)/P(n)`` of the (1,1) sequence, i.e. ``pell(n+1)/pell(n)`` and
    ``pell(n)/pell(n-1)``, ordered so that ``lo < hi``. At ``n = 1`` the
    second ratio has a zero denominator and the interval is unbounded above;
    ``hi`` is then ``None``.
    """
    if n < 1:
        raise DomainError(f"ratio_interval needs n >= 1, got {n}")
    a = Fraction(pell(n + 1), pell(n))
    if n == 1:
        return a, None
    b = Fraction(pell(n), pell(n - 1))
    return (a, b) if a < b else (b, a)


def in_open_interval(num: int, den: int, interval: Tuple[Fraction, Optional[Fraction]]) -> bool:
    """``num/den`` strictly inside ``interval``, decided by cross-multiplication."""
    if den == 0:
        raise ZeroDivisionError("ratio with zero denominator")
    if den < 0:
        num, den = -num, -den
    lo, hi = interval
    if num * lo.denominator <= lo.numerator * den:
        return False
    if hi is not None and num * hi.denominator >= hi.numerator * den:
        return False
    return True
