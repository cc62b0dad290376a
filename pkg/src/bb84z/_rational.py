from fractions import Fraction


def as_fraction(x) -> Fraction:
    """Exact rational reading of a threshold.

    Floats are snapped to the nearest fraction with denominator <= 10**12, so
    ``1/7`` compares as one seventh rather than its binary approximation.
    """
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)
