class GroupoidError(ValueError):
    """Malformed groupoid, functor or transformation data."""


class ShapeError(GroupoidError):
    """Functors or transformations that do not fit together."""


class DisconnectedError(GroupoidError):
    pass


class NotFilteredError(ValueError):
    pass


class CoverError(ValueError):
    """Cover members that do not share a parent or fail to cover."""


class ResourceLimitError(RuntimeError):
    """A configured size or budget cap was exceeded."""


class SchemaError(ValueError):
    """Input that does not match the JSON formats; ``where`` locates it."""

    def __init__(self, message, where="$"):
        super().__init__(f"{where}: {message}")
        self.where = where
