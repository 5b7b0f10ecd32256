"""Python bindings for the NFPR patch-reordering denoiser.

Images are 2D float64 NumPy arrays indexed (row, column).
"""

from ._nfpr import (
    InvalidParams,
    IoError,
    NfprParams,
    ReorderedSets,
    StepScale,
    add_awgn,
    build_sets,
    denoise,
    dft2,
    evolve_step,
    frc,
    g_weight,
    gaussian_smooth,
    h_weight,
    load_image,
    load_pgm,
    load_sidecar,
    mse,
    presmooth,
    rescale_distances,
    save_pgm,
    save_sidecar,
)


def params(**kwargs) -> NfprParams:
    """Build NfprParams from keyword arguments (``lambda_`` for lambda)."""
    p = NfprParams()
    for key, value in kwargs.items():
        if not hasattr(p, key):
            raise TypeError(f"unknown parameter {key!r}")
        setattr(p, key, value)
    p.validate()
    return p


__all__ = [
    "InvalidParams",
    "IoError",
    "NfprParams",
    "ReorderedSets",
    "StepScale",
    "add_awgn",
    "build_sets",
    "denoise",
    "dft2",
    "evolve_step",
    "frc",
    "g_weight",
    "gaussian_smooth",
    "h_weight",
    "load_image",
    "load_pgm",
    "load_sidecar",
    "mse",
    "params",
    "presmooth",
    "rescale_distances",
    "save_pgm",
    "save_sidecar",
]
