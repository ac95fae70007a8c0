"""Exception hierarchy shared across the toolkit.

Every error carries an ``exit_code`` used by the CLI: 3 for data errors,
4 for network errors, 5 for internal failures.
"""


class ToolkitError(Exception):
    exit_code = 3


# --- scene expressions ---------------------------------------------------

class SceneSyntaxError(ToolkitError):
    """Malformed scene expression (unbalanced parens, missing operand, ...)."""


class TooManyEventsError(ToolkitError):
    """Scene has more event leaves than the configured maximum."""


class TooFewEventsError(ToolkitError):
    """Operation needs a multi-event scene but got a single leaf."""


class UnknownLabelError(ToolkitError):
    """Scene leaf label has no snippet in the pool."""

    def __init__(self, label: str):
        super().__init__(f"no snippet in pool for label {label!r}")
        self.label = label


# --- manifests and audio files -------------------------------------------

class ManifestError(ToolkitError):
    """Bad manifest row; remembers the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateIdError(ToolkitError):
    """Same id appears twice in a pool manifest."""


class DecodeError(ToolkitError):
    """Audio file could not be decoded as PCM16/float32 RIFF WAV."""


class RateMismatchError(ToolkitError):
    """Sample rates differ and resampling is disabled."""


class RangeOutOfBoundsError(ToolkitError):
    """Snippet slice extends past the end of its source audio."""


# --- composition ----------------------------------------------------------

class EmptyClipError(ToolkitError):
    """Composition input has zero samples."""


class SilentClipError(ToolkitError):
    """All-zero clip: sound pressure is undefined, cannot mix."""


# --- captions -------------------------------------------------------------

class TooShortError(ToolkitError):
    """Caption has fewer than two whitespace tokens."""


# --- loss kernels ---------------------------------------------------------

class NormViolationError(ToolkitError):
    """Embedding row is not unit-norm within tolerance."""


class DimMismatchError(ToolkitError):
    """Embedding dimensions disagree."""


class ExtrasCountMismatchError(ToolkitError):
    """Per-audio extra caption counts do not match what the loss expects."""


class EmptyPositivesError(ToolkitError):
    """Modular loss requires at least one generated positive per audio."""


class MaskCountError(ToolkitError):
    """Row count does not match batch size plus generated-caption counts."""


class EmbFormatError(ToolkitError):
    """EMB1 blob is malformed (bad magic, header, or truncated payload)."""


# --- evaluation -----------------------------------------------------------

class MissingSimError(ToolkitError):
    """Similarity source cannot resolve a (caption, audio) pair."""

    def __init__(self, instance_id: str, detail: str = ""):
        msg = f"missing similarity for instance {instance_id!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.instance_id = instance_id


class EmptyBenchmarkError(ToolkitError):
    """Benchmark has no instances."""


class EmptyInputError(ToolkitError):
    """Embedder got empty text or zero-length audio."""


# --- negative mining ------------------------------------------------------

class EmptyRequestError(ToolkitError):
    """Mining request contains no captions."""


class MalformedResponseError(ToolkitError):
    """LLM response shape cannot be recovered into lists of captions."""


class NetworkError(ToolkitError):
    exit_code = 4


class AuthError(NetworkError):
    """Endpoint rejected the credentials."""


class RateLimitedError(NetworkError):
    """Endpoint kept rate-limiting after all retries."""


# --- configuration --------------------------------------------------------

class ConfigError(ToolkitError):
    """Unknown key or unparsable value in a config file."""
