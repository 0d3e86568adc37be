"""Pydantic base models shared across components.

Every activity and workflow result extends RunResult so callers check one
`success` flag instead of catching exceptions for expected failures (an
unwritable output directory, an empty policy filter). Programming errors
still raise.
"""

from pydantic import BaseModel


class RunResult(BaseModel):
    """Standard result envelope returned by activities and workflows."""

    success: bool
    message: str
