# qscalar/exceptions.py

from django.core.exceptions import ValidationError


class DomainError(ValidationError):
    """
    An operation was called outside its domain: bad input, an illegal braid move,
    a non-reduced word, or a weight beyond the configured height bound.
    """


class InternalError(RuntimeError):
    """
    A computed result contradicts a theorem the algorithms rely on
    (singular PBW system, broken triangularity, dimension mismatch).
    Seeing one of these means there is a bug.
    """
