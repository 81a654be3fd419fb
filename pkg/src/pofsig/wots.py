"""Winternitz one-time signatures over hash chains with per-step excess.

Messages of L bits are split into nu-bit base-w digits, a checksum is
appended, and each extended digit selects how far to walk the matching
secret chain.  The checksum guarantees that any other message forces at
least one digit strictly downward, so a forger must invert part of a
chain rather than merely advance known values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import BitString, WotsParams
from .errors import DomainError
from .lamport import draw_bits
from .oracle import SEED_BYTES, Seed, chain


@dataclass(frozen=True)
class WotsPublicKey:
    params: WotsParams
    r: Seed
    pk: tuple[BitString, ...]


@dataclass(frozen=True)
class WotsKeyPair:
    params: WotsParams
    r: Seed
    sk: tuple[BitString, ...]
    pk: tuple[BitString, ...]

    def public(self) -> WotsPublicKey:
        return WotsPublicKey(self.params, self.r, self.pk)


@dataclass(frozen=True)
class WotsSignature:
    sigma: tuple[BitString, ...]


def to_base_w(M: BitString, params: WotsParams) -> tuple[int, ...]:
    """Split an L-bit message into l1 base-w digits, MSB-first."""
    if M.bit_len != params.L:
        raise DomainError(f"message must be {params.L} bits, got {M.bit_len}")
    value = M.to_int()
    digits = []
    for i in range(params.l1):
        shift = params.nu * (params.l1 - 1 - i)
        digits.append((value >> shift) & (params.w - 1))
    return tuple(digits)


def checksum(m_digits: tuple[int, ...], params: WotsParams) -> tuple[int, tuple[int, ...]]:
    """Sum of digit complements and its base-w form in exactly l2 digits."""
    C = sum(params.w - 1 - m for m in m_digits)
    c = []
    for i in range(params.l2):
        shift = params.nu * (params.l2 - 1 - i)
        c.append((C >> shift) & (params.w - 1))
    return C, tuple(c)


def extend(M: BitString, params: WotsParams) -> tuple[int, ...]:
    """Message digits followed by checksum digits: the l chain depths."""
    m = to_base_w(M, params)
    _, c = checksum(m, params)
    return m + c


def keygen(params: WotsParams, rng: random.Random) -> WotsKeyPair:
    r = Seed(draw_bits(rng, 8 * SEED_BYTES).payload)
    sk = tuple(draw_bits(rng, params.sk_bits) for _ in range(params.l))
    pk = tuple(chain(params, r, 0, params.w - 1, s) for s in sk)
    return WotsKeyPair(params=params, r=r, sk=sk, pk=pk)


def sign(kp: WotsKeyPair, M: BitString) -> WotsSignature:
    b = extend(M, kp.params)
    sigma = tuple(
        chain(kp.params, kp.r, 0, b_i, sk_i) for b_i, sk_i in zip(b, kp.sk)
    )
    return WotsSignature(sigma)


def verify(pk: WotsPublicKey, sig: WotsSignature, M: BitString) -> int:
    """Finish every chain from its claimed depth and compare to the public key.

    Structural mismatches (wrong element count or lengths) verify as 0
    rather than raising, so callers get a single boolean outcome.
    """
    params = pk.params
    try:
        b = extend(M, params)
    except DomainError:
        return 0
    if len(sig.sigma) != params.l:
        return 0
    for b_i, sigma_i, pk_i in zip(b, sig.sigma, pk.pk):
        if sigma_i.bit_len != params.value_bits(b_i):
            return 0
        if chain(params, pk.r, b_i, params.w - 1, sigma_i) != pk_i:
            return 0
    return 1
