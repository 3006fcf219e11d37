from __future__ import annotations
from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q`` into a reduced Fraction.

        Raises ValueError on anything else (decimals included, so that every
        accepted spelling is exact).
        """

    s = text.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not a rational: {text!r}")
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc
    return value

def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
