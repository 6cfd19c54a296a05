"""Exception types shared across the package.

Every error raised by the public API derives from GameIQAError so the CLI
can map failures to stable machine-readable codes.
"""


class GameIQAError(Exception):
    """Base class; `code` feeds the CLI's single-line error output."""

    code = "ERROR"


class ValidationError(GameIQAError):
    """Bad argument values or inconsistent inputs."""

    code = "VALIDATION"


class ConfigurationError(GameIQAError):
    """Structurally invalid configuration (sizes, missing blocks, ...)."""

    code = "CONFIG"


class UnknownNameError(GameIQAError, KeyError):
    """Lookup of an unregistered preset, level, or subject."""

    code = "LOOKUP"

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return Exception.__str__(self)


class NoGroundTruthError(GameIQAError):
    """Requested a proxy score for a configuration that has none."""

    code = "NO_GROUND_TRUTH"


class TrainingError(GameIQAError):
    """Training diverged or could not proceed."""

    code = "TRAINING"


class StateError(GameIQAError):
    """Operation requires a model state it does not have (e.g. trained head)."""

    code = "STATE"


class EncoderError(GameIQAError):
    """Semantic encoder produced unusable embeddings."""

    code = "ENCODER"


class UndefinedCorrelationError(GameIQAError):
    """Rank correlation undefined (constant sequence)."""

    code = "UNDEFINED_CORRELATION"


class CheckpointError(GameIQAError):
    """Base for checkpoint load/save failures."""

    code = "CHECKPOINT"


class CheckpointVersionError(CheckpointError):
    """Checkpoint format_version is not supported."""

    code = "CKPT_VERSION"


class CheckpointIntegrityError(CheckpointError):
    """Checkpoint file corrupt or content hash mismatch."""

    code = "CKPT_INTEGRITY"


class StageError(GameIQAError):
    """A pipeline stage failed; carries the stage name for resume."""

    code = "STAGE"

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage
