from . import (
    config,
    exceptions,
    gompertz,
    ingest,
    models,
    pipelines,
    quadrature,
    services,
    special_fn,
    synthetic_data,
    transform,
    wavelets,
)

__all__ = [
    "config",
    "exceptions",
    "special_fn",
    "quadrature",
    "gompertz",
    "wavelets",
    "models",
    "transform",
    "ingest",
    "synthetic_data",
    "services",
    "pipelines",
]
