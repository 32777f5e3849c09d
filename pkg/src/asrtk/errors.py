"""Exception hierarchy shared by all asrtk modules.

The CLI maps each class to a distinct exit code (see ``asrtk.cli``), so new
error kinds should subclass one of these rather than raising bare builtins.
"""


class ToolkitError(Exception):
    """Base class for all asrtk errors."""


class FormatError(ToolkitError):
    """File is structurally malformed (bad WAV header, bad manifest line)."""


class UnsupportedCodecError(FormatError):
    """WAV file is well-formed but uses an encoding we do not read."""


class CharsetError(ToolkitError):
    """Transcription contains a symbol outside the configured inventory."""

    def __init__(self, symbol: str, byte_offset: int, context: str = ""):
        self.symbol = symbol
        self.byte_offset = byte_offset
        detail = f" in {context}" if context else ""
        super().__init__(
            f"symbol {symbol!r} (U+{ord(symbol):04X}) outside inventory"
            f" at byte offset {byte_offset}{detail}"
        )


class HygieneError(ToolkitError):
    """Operation would break split-before-augment hygiene."""


class DegenerateInputError(ToolkitError):
    """Input is valid but the requested operation is meaningless on it."""


class ParameterError(ToolkitError, ValueError):
    """A parameter is outside its documented domain."""


class MetricUndefinedError(ToolkitError):
    """Metric denominator is empty (e.g. empty reference)."""


class PairingError(ToolkitError):
    """Reference and hypothesis manifests cannot be paired by id."""

    def __init__(self, missing_ids, message="hypothesis manifest is missing ids"):
        self.missing_ids = list(missing_ids)
        super().__init__(f"{message}: {', '.join(self.missing_ids)}")
