from .counting import certified_nonzero, count_distinct_roots, degree_at
from .sequence import SresSequence, sres_in_y, sres_of_truncation


__all__ = [
    "SresSequence",
    "certified_nonzero",
    "count_distinct_roots",
    "degree_at",
    "sres_in_y",
    "sres_of_truncation",
]
