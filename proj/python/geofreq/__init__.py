"""Python interface to the geofreq library."""

from ._geofreq import (
    GeofreqError,
    IntegrationFailure,
    InvalidModel,
    PreconditionError,
    RingMismatch,
    __version__,
    ellipse_mean_frequency,
    ellipse_perimeter,
    ellipse_sandwich,
    mean_frequency_constant,
    mean_frequency_scalar,
    resonance,
    ring_op,
    run_cli,
)

__all__ = [
    "GeofreqError",
    "IntegrationFailure",
    "InvalidModel",
    "PreconditionError",
    "RingMismatch",
    "__version__",
    "ellipse_mean_frequency",
    "ellipse_perimeter",
    "ellipse_sandwich",
    "mean_frequency_constant",
    "mean_frequency_scalar",
    "resonance",
    "ring_op",
    "run_cli",
]
