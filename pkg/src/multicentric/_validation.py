"""Input validation helpers shared by the functional API and the estimators."""

import numbers

import numpy as np

from .exceptions import DimensionMismatch, IndexOutOfRange, ValidationError


def as_complex_array(x, name="array"):
    arr = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def as_complex_vector(x, length=None, name="vector"):
    arr = as_complex_array(x, name)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"{name} must have length {length}, got {arr.shape[0]}")
    return arr


def as_square_matrix(A, name="matrix"):
    arr = as_complex_array(A, name)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_trailing_shape(arr, shape, name="value"):
    """Check that the last ``len(shape)`` axes of ``arr`` equal ``shape``."""
    shape = tuple(shape)
    if arr.ndim < len(shape) or arr.shape[arr.ndim - len(shape):] != shape:
        raise DimensionMismatch(
            f"{name} must have trailing shape {shape}, got {arr.shape}")
    return arr


def check_index(i, size, name="index"):
    if not isinstance(i, numbers.Integral) or isinstance(i, bool):
        raise IndexOutOfRange(f"{name} must be an integer, got {i!r}")
    if not 0 <= i < size:
        raise IndexOutOfRange(f"{name}={i} out of range [0, {size})")
    return int(i)


def check_nonnegative(x, name="value"):
    x = float(x)
    if not x >= 0:
        raise ValidationError(f"{name} must be nonnegative, got {x}")
    return x
