"""Exception types shared across the simulator."""


class ConfigurationError(ValueError):
    """A user-supplied setting is missing, unknown, or out of range."""


class StageError(RuntimeError):
    """Failure inside one stage of the link chain, tagged with the stage name."""

    def __init__(self, stage, message):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage
