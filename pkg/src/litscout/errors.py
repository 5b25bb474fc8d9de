"""Error types shared across the pipeline.

Every error carries a machine-readable ``code`` so the CLI and the HTTP
service can map failures one-to-one onto ApiError payloads.
"""

from __future__ import annotations

from typing import Any


class LitScoutError(Exception):
    code = "internal"

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def as_api_error(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


class SchemeValidationError(LitScoutError):
    code = "invalid_scheme"

    def __init__(self, findings):
        super().__init__(
            "keyword scheme failed validation",
            detail=[f.as_dict() for f in findings],
        )
        self.findings = findings


class QuerySyntaxError(LitScoutError):
    code = "invalid_query"


class TemplateError(LitScoutError):
    code = "invalid_prompt_template"


class ConfigurationError(LitScoutError):
    code = "configuration"


class TransportError(LitScoutError):
    code = "transport"

    def __init__(self, message: str, attempts: int = 1, detail: Any = None):
        super().__init__(message, detail)
        self.attempts = attempts


class AuthError(LitScoutError):
    code = "auth_rejected"


class RateLimitError(LitScoutError):
    code = "rate_limited"

    def __init__(self, message: str, retry_after: float | None = None):
        super().__init__(message, detail={"retry_after": retry_after})
        self.retry_after = retry_after


class MalformedResponseError(LitScoutError):
    code = "malformed_response"

    def __init__(self, message: str, excerpt: str = ""):
        super().__init__(message, detail={"excerpt": excerpt[:500]})
        self.excerpt = excerpt


class FixtureMissError(LitScoutError):
    code = "fixture_miss"


class FixtureCollisionError(LitScoutError):
    code = "fixture_collision"


class IntegrityError(LitScoutError):
    code = "integrity"


class UnknownIdError(LitScoutError):
    code = "unknown_id"


class ConflictError(LitScoutError):
    code = "conflict"


class EidMismatchError(LitScoutError):
    code = "eid_mismatch"


class StoreVersionError(LitScoutError):
    code = "unsupported_schema_version"


class StoreParseError(LitScoutError):
    code = "project_parse"

    def __init__(self, message: str, byte_offset: int | None = None):
        super().__init__(message, detail={"byte_offset": byte_offset})
        self.byte_offset = byte_offset


class BatchError(LitScoutError):
    """Some items of a batch failed; partial results are still usable."""

    code = "partial_failure"

    def __init__(self, message: str, item_errors: dict):
        super().__init__(message, detail={"items": {k: str(v) for k, v in item_errors.items()}})
        self.item_errors = item_errors
