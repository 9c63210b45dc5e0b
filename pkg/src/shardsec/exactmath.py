"""Exact integer and rational helpers shared by every analysis.

Python's ``int`` already is an arbitrary-precision integer, and
``fractions.Fraction`` keeps values in lowest terms, so probabilities are
carried as ``Fraction`` objects from the first binomial to the final
rendering.  Floating point only appears in :func:`to_scientific` output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

# Exact probability in [0, 1]; always a reduced Fraction.
ExactProb = Fraction


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return _binomial_memo(n, min(k, n - k))


@lru_cache(maxsize=1 << 16)
def _binomial_memo(n: int, k: int) -> int:
    return math.comb(n, k)


def prob_from_ratio(num: int, den: int) -> ExactProb:
    """Build a probability from a count ratio, rejecting anything outside [0, 1].

    A numerator larger than the denominator means the caller counted a
    superset of the sample space, which is a formula bug rather than a
    rounding issue, so it raises instead of clamping.
    """
    if den <= 0:
        raise ValueError(f"probability denominator must be positive, got {den}")
    if num < 0 or num > den:
        raise ValueError(f"probability ratio {num}/{den} lies outside [0, 1]")
    return Fraction(num, den)


def round_half_even(x: Fraction, digits: int = 0) -> Fraction:
    """Round an exact rational to ``digits`` decimal places, ties to even."""
    scale = 10**digits if digits >= 0 else Fraction(1, 10**-digits)
    return Fraction(round(x * scale)) / scale


def to_scientific(p: Fraction, sig_digits: int = 3) -> str:
    """Render ``p`` in scientific notation, e.g. ``"2.04e-06"``.

    Rounding is done on the exact rational (round-half-even), so values
    far below float's subnormal range still print correctly.
    """
    if sig_digits < 1:
        raise ValueError("sig_digits must be >= 1")
    p = Fraction(p)
    if p == 0:
        return "0"
    sign = "-" if p < 0 else ""
    p = abs(p)
    exp = _decimal_exponent(p)
    mantissa = round(p / Fraction(10) ** exp * 10 ** (sig_digits - 1))
    if mantissa >= 10**sig_digits:
        exp += 1
        mantissa = round(p / Fraction(10) ** exp * 10 ** (sig_digits - 1))
    digits = str(mantissa)
    body = digits[0] + ("." + digits[1:] if sig_digits > 1 else "")
    esign = "-" if exp < 0 else "+"
    return f"{sign}{body}e{esign}{abs(exp):02d}"


def to_fixed(x: Fraction, decimals: int = 2) -> str:
    """Render ``x`` with a fixed number of decimals (ties to even)."""
    q = round_half_even(Fraction(x), decimals)
    sign = "-" if q < 0 else ""
    scaled = abs(q) * 10**decimals
    whole, frac = divmod(int(scaled), 10**decimals)
    if decimals == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{decimals}d}"


def _decimal_exponent(p: Fraction) -> int:
    """Largest e with 10**e <= p, for p > 0."""
    # digit-length estimate, then correct by at most one step either way
    exp = len(str(p.numerator)) - len(str(p.denominator))
    while Fraction(10) ** exp > p:
        exp -= 1
    while Fraction(10) ** (exp + 1) <= p:
        exp += 1
    return exp
