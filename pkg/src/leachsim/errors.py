"""Exception and warning types shared across the package."""

from __future__ import annotations


class LeachsimError(Exception):
    """Base class for all leachsim errors."""


class ParameterError(LeachsimError, ValueError):
    """A physical or numerical parameter is missing, non-finite, or out of range."""


class ScenarioNotFoundError(LeachsimError, LookupError):
    """An unknown scenario preset was requested."""


class ConfigError(LeachsimError):
    """A config document failed to parse or validate.

    The message always names the section and key (when known) so typos are
    easy to locate.
    """

    def __init__(self, reason: str, *, section: str | None = None, key: str | None = None):
        self.section = section
        self.key = key
        self.reason = reason
        where = ""
        if section is not None and key is not None:
            where = f"[{section}] {key}: "
        elif section is not None:
            where = f"[{section}]: "
        super().__init__(where + reason)


class StabilityError(LeachsimError):
    """Refused to run an explicit step outside the stability envelope (policy 'error')."""


class BlowUpError(LeachsimError):
    """The solution left the range of finite floats."""

    def __init__(self, t: float, node: tuple[int, int], step_index: int | None = None):
        self.t = t
        self.node = node
        self.step_index = step_index
        at = f"step {step_index}, " if step_index is not None else ""
        super().__init__(
            f"non-finite concentration at node (i={node[0]}, j={node[1]}) "
            f"({at}t = {t:g} day); the explicit scheme has blown up"
        )


class ComparisonError(LeachsimError):
    """Two fields or profiles cannot be compared (shape mismatch)."""


class StabilityWarning(UserWarning):
    """The configured timestep violates the explicit stability limit; results may oscillate."""


class NumericalLimitWarning(UserWarning):
    """A guarded numerical path saturated; a documented fallback value was returned."""
