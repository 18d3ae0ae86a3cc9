"""Compensated summation along one array axis."""

import numpy as np


def compensated_sum(values, axis=-1):
    """Neumaier-compensated sum of ``values`` along ``axis``.

    Vectorized over the remaining axes: the loop runs over the summation
    axis only, so summing an ``(n + 1, m)`` table along ``axis=0`` costs
    ``n + 1`` vector operations of length ``m``.
    """
    arr = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    if arr.shape[0] == 0:
        return np.zeros(arr.shape[1:])
    total = arr[0].copy()
    comp = np.zeros_like(total)
    for term in arr[1:]:
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
    result = total + comp
    return result if result.ndim else float(result)
