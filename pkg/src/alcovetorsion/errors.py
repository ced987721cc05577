"""Exceptions shared across modules."""


class ComputationMismatch(AssertionError):
    """A computed value disagrees with the closed form or proved value it should match."""
