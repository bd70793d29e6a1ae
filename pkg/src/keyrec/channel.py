"""Raw-key generation, the q-ary symmetric channel, and the symbol-wise
posterior matrix that seeds the decoder."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelModel:
    """q-ary symmetric channel: a symbol survives with probability 1 - p and
    otherwise becomes one of the q - 1 other symbols uniformly."""

    q: int
    p: float

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"alphabet size q={self.q} must be >= 2")
        if not 0.0 <= self.p < 1.0:
            raise ValueError(f"transition probability p={self.p} outside [0, 1)")

    @property
    def off_diagonal(self) -> float:
        return self.p / (self.q - 1)


def gen_key(n: int, q: int, rng: np.random.Generator) -> np.ndarray:
    """Length-n vector of i.i.d. uniform symbols in [0, q)."""
    if n < 1:
        raise ValueError("key length must be >= 1")
    return rng.integers(0, q, size=n).astype(np.uint8)


def transmit(x: np.ndarray, model: ChannelModel, rng: np.random.Generator) -> np.ndarray:
    """Pass symbols through the channel.

    Draws a flip mask and, for flipped positions, a uniform nonzero offset;
    both draws happen unconditionally so the stream consumption (and hence
    reproducibility) does not depend on p.
    """
    x = np.asarray(x)
    if x.size and (x.min() < 0 or x.max() >= model.q):
        raise ValueError("symbols must lie in [0, q)")
    flips = rng.random(x.shape) < model.p
    offsets = rng.integers(1, model.q, size=x.shape)
    return np.where(flips, (x + offsets) % model.q, x).astype(np.uint8)


def posteriors(y: np.ndarray, model: ChannelModel) -> np.ndarray:
    """Row-stochastic (n, q) matrix: row i puts 1 - p on y_i, p/(q-1) elsewhere."""
    y = np.asarray(y)
    if y.size and (y.min() < 0 or y.max() >= model.q):
        raise ValueError("symbols must lie in [0, q)")
    out = np.full((y.shape[0], model.q), model.off_diagonal, dtype=np.float64)
    out[np.arange(y.shape[0]), y] = 1.0 - model.p
    return out
