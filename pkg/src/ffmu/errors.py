"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: input problems exit 2, theorem-level
assertion failures exit 3, resource exhaustion exits 4.
"""


class FFMuError(Exception):
    """Base class for all package errors."""


class InputError(FFMuError):
    """Malformed user input (curve spec, strings, flags)."""


class SingularModelError(FFMuError):
    """A Weierstrass equation with vanishing discriminant."""


class PrecisionExhausted(FFMuError):
    """A Laurent-series valuation was needed beyond the working precision.

    Callers that hold exact rational-function inputs should re-expand at
    doubled precision (capped at 2**16) and retry.
    """


class BudgetExceeded(FFMuError):
    """Enumeration or counting work would exceed the configured budget."""


class TheoremViolation(FFMuError):
    """A runtime check backed by a theorem failed.

    This never indicates bad user input: it means a counting or assembly
    bug upstream, and is scientifically meaningful, so it gets its own
    exit code.
    """


class AssemblyError(TheoremViolation):
    """No consistent functional-equation sign, or non-integer coefficients."""
