"""Exception classes shared across the simulator."""


class DomainError(ValueError):
    """An operation was called with inputs outside its mathematical domain."""


class ConfigError(ValueError):
    """A scenario configuration violates the schema or an invariant.

    The message lists every violation found, one per line, each prefixed
    with the field path that caused it.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("\n".join(self.violations))


class ConfigFileError(ConfigError):
    """The configuration file is missing or unreadable."""


class ConfigSchemaError(ConfigError):
    """The configuration document has the wrong structure or types."""


class ConfigInvariantError(ConfigError):
    """The configuration is well-formed but violates model invariants."""


class DivergenceError(RuntimeError):
    """The simulated dynamics left their valid domain (e.g. carbon mass <= 0)."""
