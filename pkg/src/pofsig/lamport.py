"""Single-bit Lamport one-time signatures with an enlarged preimage space.

Secret key halves are (n+delta)-bit strings; public halves are their
n-bit oracle images.  The delta-bit excess is what makes an exhaustive
forger land on a preimage different from the signer's with high
probability, which is the whole point of the construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import BitString, LamportParams
from .errors import DomainError, EntropyError
from .oracle import LABEL_LAMPORT, OracleTag, oracle_eval

_LAM_TAG = OracleTag(LABEL_LAMPORT)


def hash_secret(params: LamportParams, s: BitString) -> BitString:
    """The scheme's one-way map from a secret half to a public half."""
    return oracle_eval(_LAM_TAG, s, params.n)


@dataclass(frozen=True)
class LamportPublicKey:
    params: LamportParams
    pk0: BitString
    pk1: BitString

    def half(self, m: int) -> BitString:
        return self.pk1 if m else self.pk0


@dataclass(frozen=True)
class LamportKeyPair:
    params: LamportParams
    sk0: BitString
    sk1: BitString
    pk0: BitString
    pk1: BitString

    def public(self) -> LamportPublicKey:
        return LamportPublicKey(self.params, self.pk0, self.pk1)


@dataclass(frozen=True)
class LamportSignature:
    sigma: BitString


def draw_bits(rng: random.Random, bit_len: int) -> BitString:
    """Draw a uniform bit string from the injected randomness source."""
    try:
        value = rng.getrandbits(bit_len) if bit_len else 0
    except Exception as exc:  # pragma: no cover - depends on a broken source
        raise EntropyError(f"randomness source failed: {exc}") from exc
    return BitString.from_int(value, bit_len)


def keygen(params: LamportParams, rng: random.Random) -> LamportKeyPair:
    sk0 = draw_bits(rng, params.sk_bits)
    sk1 = draw_bits(rng, params.sk_bits)
    return LamportKeyPair(
        params=params,
        sk0=sk0,
        sk1=sk1,
        pk0=hash_secret(params, sk0),
        pk1=hash_secret(params, sk1),
    )


def sign(kp: LamportKeyPair, m: int) -> LamportSignature:
    """Reveal the secret half matching the message bit; fully deterministic."""
    if m not in (0, 1):
        raise DomainError(f"message must be the bit 0 or 1, got {m!r}")
    return LamportSignature(kp.sk1 if m else kp.sk0)


def verify(pk: LamportPublicKey, sig: LamportSignature, m: int) -> int:
    if m not in (0, 1):
        raise DomainError(f"message must be the bit 0 or 1, got {m!r}")
    if sig.sigma.bit_len != pk.params.sk_bits:
        raise DomainError(
            f"signature must be {pk.params.sk_bits} bits, got {sig.sigma.bit_len}"
        )
    return 1 if hash_secret(pk.params, sig.sigma) == pk.half(m) else 0
