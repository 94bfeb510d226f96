"""
Exception hierarchy for cu-sketch-lab.

Validation failures subclass ValueError so callers that only know about the
standard library keep working. Invariant violations subclass AssertionError and
carry the step index at which the check failed.
"""


class LabError(Exception):
    """Root of every error raised by this package."""


class ValidationError(LabError, ValueError):
    """A precondition on an operation's inputs does not hold."""


class VertexInCoreError(ValidationError):
    """A vertex has no finite peeling level (it belongs to the core)."""

    def __init__(self, vertex):
        super().__init__(f"Vertex {vertex} is in the core and has no finite peeling level")
        self.vertex = vertex


class RejectionBudgetExceeded(LabError, RuntimeError):
    """A rejection sampler gave up after its retry budget."""


class InvariantViolation(LabError, AssertionError):
    """
    A checked invariant failed during a run.

    Args:
        message (str): What failed.
        step (int, optional): Step clock value at which the check failed.
        snapshot (dict, optional): Counter values captured at the failure.
    """

    def __init__(self, message, step=None, snapshot=None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step
        self.snapshot = snapshot or {}
