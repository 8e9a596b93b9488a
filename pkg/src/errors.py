from typing import Any, Dict, Optional


class CycleParseError(ValueError):
    """Malformed cycle notation; `position` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceLimitError(RuntimeError):
    def __init__(self, message: str, *, limit: int, setting: str) -> None:
        super().__init__(f"{message}; limit is {limit}, raise {setting} to allow more")
        self.limit = limit
        self.setting = setting


class ConsistencyError(RuntimeError):
    """An internal cross-check failed. Always a bug or a wrong convention, never bad input."""

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.report: Dict[str, Any] = dict(report or {})

    def to_json(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), "report": self.report}


class InvarianceError(ConsistencyError):
    pass
