"""Exception classes for softsnake."""

from typing import Any, Dict, List, Optional


class SoftSnakeError(Exception):
    """Base exception for all softsnake errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the CLI error channel."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }

    def __reduce__(self):
        # subclasses take extra required arguments; rebuild from message and details
        return _restore, (self.__class__, self.message, self.details)


class InputDomainError(SoftSnakeError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""

    def __init__(self, message: str, field: Optional[str] = None, value: Any = None):
        details = {"field": field, "value": value}
        super().__init__(message, details)
        self.field = field
        self.value = value


class NumericalDegeneracyError(SoftSnakeError):
    """Raised when the inertia matrix cannot be factorized."""

    def __init__(self, message: str, min_eigenvalue: Optional[float] = None):
        super().__init__(message, {"min_eigenvalue": min_eigenvalue})
        self.min_eigenvalue = min_eigenvalue


class StiffnessError(SoftSnakeError):
    """Raised when the integrator step size underflows."""

    def __init__(self, message: str, t: Optional[float] = None, last_state: Any = None):
        super().__init__(message, {"t": t, "last_state": last_state})
        self.t = t
        self.last_state = last_state


class DivergenceError(SoftSnakeError):
    """Raised when the simulated state stops being finite."""

    def __init__(self, message: str, t: Optional[float] = None, last_state: Any = None):
        super().__init__(message, {"t": t, "last_state": last_state})
        self.t = t
        self.last_state = last_state


class ConvergenceError(SoftSnakeError):
    """Raised when an iterative fit fails to converge."""

    def __init__(
        self,
        message: str,
        best: Any = None,
        residual: Optional[float] = None,
        iterations: Optional[int] = None,
    ):
        details = {"best": best, "residual": residual, "iterations": iterations}
        super().__init__(message, details)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class StorageError(SoftSnakeError):
    """Raised when result store operations fail."""

    def __init__(self, message: str, operation: str, store: Optional[str] = None):
        details = {"operation": operation, "store": store}
        super().__init__(message, details)
        self.operation = operation
        self.store = store


class ConfigError(SoftSnakeError):
    """Raised when a configuration file cannot be loaded or validated."""

    def __init__(self, message: str, path: Optional[str] = None, errors: Optional[List[Any]] = None):
        super().__init__(message, {"path": path, "errors": errors or []})
        self.path = path
        self.errors = errors or []


def _restore(cls, message: str, details: Dict[str, Any]) -> "SoftSnakeError":
    err = cls.__new__(cls)
    SoftSnakeError.__init__(err, message, details)
    for key, value in details.items():
        setattr(err, key, value)
    return err


def _jsonable(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    return str(value)
