"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: ConfigError -> 2, InputError -> 3,
everything else raised by a stage -> 4.
"""


class TermscapeError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(TermscapeError):
    """Invalid configuration (bad config file, bad parameter values)."""


class InputError(TermscapeError):
    """Unusable input: unreadable path, undecodable stream, missing column."""


class SchemaError(TermscapeError):
    """An intermediate artifact has a missing or mismatched schema version."""


class StageError(TermscapeError):
    """A pipeline stage failed; carries the stage name for context."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage
