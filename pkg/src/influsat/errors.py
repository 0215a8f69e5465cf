"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class InfluenceError(ValueError):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 2


class InputError(InfluenceError):
    """Malformed graph, model or vector (unknown vertex, bad label, wrong length...)."""


class NotTwoLayeredError(InfluenceError):
    """Some vertex has both predecessors and successors."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has both predecessors and successors; graph is not two-layered")
        self.vertex = vertex


class ModelValidityError(InfluenceError):
    """The parameters do not describe a valid decision model (e.g. a zero label)."""


class EngineInapplicableError(InfluenceError):
    """A polynomial engine was requested for an instance outside its graph class."""

    exit_code = 3

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = certificate or {}


class NotHierarchicalError(EngineInapplicableError):
    """The graph is not strong hierarchical; ``certificate`` names the offending vertex."""


class NotStarError(EngineInapplicableError):
    """The game is not a star influence game."""


class CapExceededError(InfluenceError):
    """Brute-force enumeration refused because the instance is above the size cap."""

    exit_code = 4

    def __init__(self, size: int, cap: int):
        super().__init__(f"enumeration over 2^{size} vectors exceeds the cap of 2^{cap}")
        self.size = size
        self.cap = cap
