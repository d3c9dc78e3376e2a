"""Counter-based random number generation: Philox4x32-10 plus fixed-consumption samplers.

The generator is a pure function of (key, counter); repeated calls with equal
inputs return bitwise-equal outputs, which is what allows callers to address
individual random variates directly instead of walking a mutable stream.

This module holds the scalar reference implementation.  Batch (vectorised)
kernels live in `_kernels` and are property-tested against the functions here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple, Union

import numpy as np

_MASK32 = 0xFFFFFFFF
_MASK64 = 0xFFFFFFFFFFFFFFFF

# Philox4x32 round constants: two odd multipliers and two Weyl key increments.
PHILOX_M0 = 0xD2511F53
PHILOX_M1 = 0xCD9E8D57
PHILOX_W0 = 0x9E3779B9
PHILOX_W1 = 0xBB67AE85
PHILOX_ROUNDS = 10

#: Generator identifiers embedded in every report for provenance.
CBRNG_NAME = "philox4x32-10"
UNIFORM_RULE = "top53of64*2^-53"


class Key128(NamedTuple):
    """128 bits of key material as two unsigned 64-bit halves (hi, lo).

    The Philox4x32 cipher key is only 64 bits wide: `philox_block` takes it
    from the two leading 32-bit words, i.e. from `hi`.  Derivation code that
    needs all 128 bits to matter folds the remaining half into the counter
    (see `eventkey.event_key`), mirroring how the chain itself overlaps key
    and counter material.
    """

    hi: int
    lo: int

    def words(self) -> Tuple[int, int, int, int]:
        """Big-endian 32-bit word view: words 0,1 come from `hi`."""
        return (
            (self.hi >> 32) & _MASK32,
            self.hi & _MASK32,
            (self.lo >> 32) & _MASK32,
            self.lo & _MASK32,
        )

    @classmethod
    def from_words(cls, w0: int, w1: int, w2: int, w3: int) -> "Key128":
        return cls(hi=((w0 & _MASK32) << 32) | (w1 & _MASK32),
                   lo=((w2 & _MASK32) << 32) | (w3 & _MASK32))


class Counter128(NamedTuple):
    """128-bit counter as four unsigned 32-bit words, word 0 first."""

    w0: int
    w1: int
    w2: int
    w3: int


def philox4x32_10(key: Tuple[int, int],
                  counter: Tuple[int, int, int, int]) -> Tuple[int, int, int, int]:
    """One Philox4x32-10 block: (2x32-bit key, 4x32-bit counter) -> 4x32-bit output.

    Ten rounds; the key is bumped by the Weyl constants between rounds (the
    first round uses the key as given).  Bit-exact against the published
    known-answer vectors (see tests/data/philox4x32_10_kat.txt).
    """
    k0, k1 = key[0] & _MASK32, key[1] & _MASK32
    x0, x1, x2, x3 = (w & _MASK32 for w in counter)
    for _ in range(PHILOX_ROUNDS):
        p0 = PHILOX_M0 * x0
        p1 = PHILOX_M1 * x2
        x0 = (p1 >> 32) ^ x1 ^ k0
        x1 = p1 & _MASK32
        x2 = (p0 >> 32) ^ x3 ^ k1
        x3 = p0 & _MASK32
        k0 = (k0 + PHILOX_W0) & _MASK32
        k1 = (k1 + PHILOX_W1) & _MASK32
    return x0, x1, x2, x3


def philox_block(key: Key128, counter: Counter128) -> Tuple[int, int, int, int]:
    """Typed wrapper around `philox4x32_10`.

    The cipher key is words 0,1 of the key's word view (the `hi` half); an
    all-zero / all-one `Key128` therefore reproduces the classic all-zero /
    all-one known-answer vectors.
    """
    w = key.words()
    return philox4x32_10((w[0], w[1]), tuple(counter))


def unit_uniform_from_u64(v: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
    """Map a 64-bit integer (or array) to [0, 1) using its top 53 bits.

    binary64 cannot represent 1 - 2^-64, so the conversion keeps exactly the
    53 representable bits: u = (v >> 11) * 2^-53.  Monotone (non-strict) in v,
    0 maps to 0.0, 2^63 to 0.5, and the maximum value to 1 - 2^-53 < 1.
    """
    if isinstance(v, np.ndarray):
        return (v >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
    return float((int(v) & _MASK64) >> 11) * 2.0 ** -53


def to_unit_uniform(w_hi: int, w_lo: int) -> float:
    """Two 32-bit generator words -> one uniform in [0, 1).

    The pair is read as the 64-bit integer (w_hi << 32) | w_lo; a generator
    block's words 0,1 feed this, leaving words 2,3 free for a paired draw.
    """
    return unit_uniform_from_u64(((w_hi & _MASK32) << 32) | (w_lo & _MASK32))


# --- fixed-consumption samplers -------------------------------------------
#
# Every distribution below is an inverse-CDF transform of exactly one uniform.
# Rejection-style samplers are deliberately absent: consuming a variable
# number of uniforms per variate would break the one-event/one-block
# accounting the rest of the package relies on.


@dataclass(frozen=True)
class Bernoulli:
    """Indicator [u < p]; returns 1 or 0."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"Bernoulli p must be in [0, 1], got {self.p}")

    def sample(self, u):
        if isinstance(u, np.ndarray):
            return (u < self.p).astype(np.int64)
        return int(u < self.p)


@dataclass(frozen=True)
class Exponential:
    """Inverse CDF -log(1 - u) / rate; u in [0, 1) keeps the value finite."""

    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise ValueError(f"Exponential rate must be > 0, got {self.rate}")

    def sample(self, u):
        return -np.log1p(-u) / self.rate if isinstance(u, np.ndarray) \
            else -math.log1p(-u) / self.rate


@dataclass(frozen=True)
class DiscreteUniform:
    """Uniform integer in {0, ..., n-1} via floor(u * n)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"DiscreteUniform n must be >= 1, got {self.n}")

    def sample(self, u):
        if isinstance(u, np.ndarray):
            return np.minimum((u * self.n).astype(np.int64), self.n - 1)
        return min(int(u * self.n), self.n - 1)


@dataclass(frozen=True)
class Geometric:
    """Number of failures before the first success, k in {0, 1, ...}.

    Inverse CDF floor(log(1-u) / log(1-p)); p = 1 collapses to 0.
    """

    p: float

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"Geometric p must be in (0, 1], got {self.p}")

    def sample(self, u):
        if isinstance(u, np.ndarray):
            with np.errstate(divide="ignore"):
                return np.floor(np.log1p(-u) / np.log1p(-self.p)).astype(np.int64)
        if self.p == 1.0:
            return 0
        return int(math.floor(math.log1p(-u) / math.log1p(-self.p)))


Distribution = Union[Bernoulli, Exponential, DiscreteUniform, Geometric]


def sample_fixed(dist: Distribution, u):
    """Apply a fixed-consumption inverse-CDF sampler to one uniform."""
    return dist.sample(u)
