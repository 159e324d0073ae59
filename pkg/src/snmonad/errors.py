"""Exception hierarchy shared across the package.

The three classes map onto the CLI exit codes: malformed input (2),
a mathematical hypothesis that fails honestly (3), and a broken
internal theorem-level invariant, which is always a bug (4).
"""


class ValidationError(ValueError):
    """Malformed input: wrong lengths, non-monotone sequences, bad JSON."""


class MathematicalRefusal(RuntimeError):
    """A hypothesis required by the mathematics does not hold for this input."""


class InvariantViolation(RuntimeError):
    """An exact identity that is a theorem failed; signals a bug upstream."""
