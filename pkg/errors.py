"""
Exception hierarchy for the G2 Monge-Ampere pipeline.

Library code raises these; the orchestrator in main.py and the HTTP layer in
api_server.py translate them into result dictionaries, exit codes and status codes.
"""


class PipelineError(Exception):
    """Base class for every error raised by the pipeline."""


class DomainError(PipelineError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(DomainError):
    """Input data violates a documented precondition (e.g. non-isotropic eigenspaces)."""


class NotAnEigenvectorError(DomainError):
    """A vector passed to weight_of is not an eigenvector of the operator."""


class UsageError(PipelineError):
    """Bad command-line or request input."""


class CertificateError(PipelineError):
    """An internal consistency certificate failed."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        message = f"certificate failed: {invariant}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
