"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EfleetError(Exception):
    """Base class for all package errors."""


class ValidationError(EfleetError):
    """An input file or value failed schema validation.

    Carries enough context (source, location, field) to point at the
    offending row/field of the input.
    """

    def __init__(self, message: str, *, source: str | None = None,
                 location: str | None = None, field: str | None = None):
        self.source = source
        self.location = location
        self.field = field
        prefix = ""
        if source is not None:
            prefix += str(source)
        if location is not None:
            prefix += f":{location}"
        if field is not None:
            prefix += f" [{field}]"
        super().__init__(f"{prefix}: {message}" if prefix else message)


class GraphIntegrityError(EfleetError):
    """The road graph violates a structural invariant (dangling edge, disconnected path)."""


class UnknownCityError(EfleetError):
    """A city name is not present in the network's city index."""


class NoRouteError(EfleetError):
    """No path exists between the requested origin and destination."""


class LoadCapacityError(EfleetError):
    """A per-trip load is negative or exceeds the vehicle capacity."""


class MissingTariffError(EfleetError):
    """A charging site's utility has no tariff row."""


class MissingFactorError(EfleetError):
    """A charge region has no carbon-intensity factor."""


class MissingDieselPriceError(EfleetError):
    """A county has neither a specific nor a wildcard diesel price."""


class InfeasibleChargingError(EfleetError):
    """No charging policy can complete the route within battery bounds.

    ``prefix_index`` is the smallest site index at which feasibility is
    certifiably lost, or None when infeasibility stems from the
    semicontinuous charge floors rather than raw battery capacity.
    """

    def __init__(self, message: str, *, prefix_index: int | None = None,
                 route_id: str | None = None):
        self.prefix_index = prefix_index
        self.route_id = route_id
        if route_id is not None:
            message = f"route {route_id}: {message}"
        super().__init__(message)
