"""Cyclic DFTs over the last axis, with Bluestein for lengths with large prime factors.

Sign convention: X[q] = sum_r x[r] * exp(-2j*pi*r*q/n). Leading axes are batch
axes and are transformed independently. Smooth lengths go straight to
`np.fft`; any other length becomes a chirp convolution at a smooth padded
length, again through `np.fft`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np


# Largest prime factor a length may have to be transformed directly.
DIRECT_RADIX_LIMIT = 7


@lru_cache(maxsize=None)
def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


@lru_cache(maxsize=None)
def is_smooth(n: int, limit: int = DIRECT_RADIX_LIMIT) -> bool:
    """True when every prime factor of n is at most `limit`."""
    while n > 1:
        p = smallest_prime_factor(n)
        if p > limit:
            return False
        n //= p
    return True


@lru_cache(maxsize=None)
def next_smooth(n: int) -> int:
    """Smallest smooth length >= n."""
    m = max(int(n), 1)
    while not is_smooth(m):
        m += 1
    return m


@lru_cache(maxsize=32)
def _bluestein_chirp(n: int) -> np.ndarray:
    j = np.arange(n)
    # j^2 reduced mod 2n keeps the phase argument small for large n
    chirp = np.exp(1j * np.pi * ((j * j) % (2 * n)) / n)
    chirp.flags.writeable = False
    return chirp


@lru_cache(maxsize=32)
def _bluestein_filter(n: int, size: int) -> np.ndarray:
    chirp = _bluestein_chirp(n)
    b = np.zeros(size, dtype=np.complex128)
    b[:n] = chirp
    b[size - n + 1:] = chirp[1:][::-1]
    spectrum = np.fft.fft(b)
    spectrum.flags.writeable = False
    return spectrum


def _bluestein(x: np.ndarray) -> np.ndarray:
    """Length-n DFT as a chirp convolution padded to a smooth length >= 2n - 1."""
    n = x.shape[-1]
    size = next_smooth(2 * n - 1)
    chirp = _bluestein_chirp(n)
    a = np.fft.fft(x * np.conj(chirp), size, axis=-1)
    conv = np.fft.ifft(a * _bluestein_filter(n, size), axis=-1)
    return conv[..., :n] * np.conj(chirp)


def fft_last(x: np.ndarray) -> np.ndarray:
    """Forward transform along the last axis."""
    x = np.asarray(x, dtype=np.complex128)
    if is_smooth(x.shape[-1]):
        return np.fft.fft(x, axis=-1)
    return _bluestein(x)


def ifft_last(x: np.ndarray) -> np.ndarray:
    """Inverse transform along the last axis, normalized by 1/n."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    if is_smooth(n):
        return np.fft.ifft(x, axis=-1)
    return np.conj(fft_last(np.conj(x))) / n


def fftn_trailing(x: np.ndarray, shape: Sequence[int], inverse: bool = False) -> np.ndarray:
    """
    Transform the trailing axis of `x` viewed as the multi-dimensional block `shape`.

    Args:
        x: array whose last axis has length prod(shape)
        shape: cyclic factor sizes, first factor most significant
        inverse: apply the normalized inverse transform instead

    Returns:
        Array of the same shape as x
    """
    x = np.asarray(x, dtype=np.complex128)
    batch = x.shape[:-1]
    k = len(shape)
    block = x.reshape(batch + tuple(shape))
    step = ifft_last if inverse else fft_last
    for axis in range(k):
        pos = len(batch) + axis
        moved = np.moveaxis(block, pos, -1)
        block = np.moveaxis(step(moved), -1, pos)
    return block.reshape(x.shape)
