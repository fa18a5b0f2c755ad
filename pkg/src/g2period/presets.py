"""Built-in curve data: Cantor's sequence (OEIS A058231)."""

from .curve import Curve, IntegralPoint
from .sequence import SequenceSeed, seed_from_table

A058231_CURVE = Curve(a4=-3, a3=0, a2=0, a1=-2, a0=9)
A058231_POINT = IntegralPoint(0, 3)
A058231_C4_TO_C9 = (
    -16,
    5041728,
    -19631351040,
    -62024429150208,
    -2805793044443561984,
    -1213280369793911777918976,
)
A058231_SEED: SequenceSeed = seed_from_table(0, A058231_C4_TO_C9, A058231_CURVE)

PRESETS = {"a058231": (A058231_CURVE, A058231_POINT, A058231_SEED)}
