"""Deterministic random-oracle backend with domain separation.

A single SHA-256-based construction serves both schemes.  The requested
output width is bound into the hashed tag, so oracles of different
widths are independent functions rather than prefixes of each other.

Normative layout of the hashed message for an evaluation::

    T = label || 0x00 || r_or_empty || u8(index_or_0)
          || be64(out_bits) || be64(in_bit_len) || payload
    stream = SHA256(T || be32(0)) || SHA256(T || be32(1)) || ...
    output = first out_bits bits of stream (MSB-first)

The Winternitz one-way family keyed by a 16-byte seed r and a chain
index i is realized by putting (r, i) into the tag instead of the
bit-mask-XOR construction; each member still behaves as an independent
random oracle.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Optional

from .core import BitString, WotsParams
from .errors import DomainError, InvalidParams

LABEL_LAMPORT = b"LAM"
LABEL_WOTS_CHAIN = b"WOTS-F"

_LABELS = (LABEL_LAMPORT, LABEL_WOTS_CHAIN)

SEED_BYTES = 16


class Seed(bytes):
    """16-byte randomizer for the Winternitz chain family."""

    def __new__(cls, data: bytes) -> "Seed":
        if len(data) != SEED_BYTES:
            raise InvalidParams(f"seed must be {SEED_BYTES} bytes, got {len(data)}")
        return super().__new__(cls, data)


@dataclass(frozen=True)
class OracleTag:
    """Domain-separation tag: label, optional seed, optional chain index."""

    label: bytes
    r: Optional[Seed] = None
    index: Optional[int] = None

    def __post_init__(self):
        if self.label not in _LABELS:
            raise InvalidParams(f"unknown oracle label {self.label!r}")
        if self.label == LABEL_WOTS_CHAIN:
            if self.index is None or self.index < 1:
                raise InvalidParams("chain oracle needs an index >= 1")
            if self.r is None:
                raise InvalidParams("chain oracle needs a seed")
        else:
            if self.index is not None:
                raise InvalidParams("index is only valid for the chain oracle")


def tag_prefix(tag: OracleTag, out_bits: int, in_bit_len: int) -> bytes:
    """The tag-and-lengths header T minus the input payload."""
    r = bytes(tag.r) if tag.r is not None else b""
    idx = tag.index if tag.index is not None else 0
    return (
        tag.label
        + b"\x00"
        + r
        + bytes([idx])
        + out_bits.to_bytes(8, "big")
        + in_bit_len.to_bytes(8, "big")
    )


def digest_bits(prefix: bytes, payload: bytes, out_bits: int) -> bytes:
    """First out_bits of the counter-mode SHA-256 stream, pad bits zeroed."""
    nbytes = (out_bits + 7) // 8
    msg = prefix + payload
    out = hashlib.sha256(msg + b"\x00\x00\x00\x00").digest()
    ctr = 1
    while len(out) < nbytes:
        out += hashlib.sha256(msg + ctr.to_bytes(4, "big")).digest()
        ctr += 1
    buf = bytearray(out[:nbytes])
    pad = 8 * nbytes - out_bits
    if pad:
        buf[-1] &= (0xFF << pad) & 0xFF
    return bytes(buf)


def oracle_eval(tag: OracleTag, x: BitString, out_bits: int) -> BitString:
    """Evaluate the oracle named by tag on x, producing exactly out_bits bits."""
    if out_bits < 1:
        raise InvalidParams("out_bits must be >= 1")
    prefix = tag_prefix(tag, out_bits, x.bit_len)
    return BitString(out_bits, digest_bits(prefix, x.payload, out_bits))


def f_step(params: WotsParams, r: Seed, i: int, x: BitString) -> BitString:
    """One chain step: maps a position-(i-1) value to a position-i value.

    Input width is n + delta*(w-i); output width shrinks by delta.
    """
    if not 1 <= i <= params.w - 1:
        raise IndexError(f"chain step index {i} outside 1..{params.w - 1}")
    in_bits = params.value_bits(i - 1)
    if x.bit_len != in_bits:
        raise DomainError(
            f"step {i} expects a {in_bits}-bit input, got {x.bit_len} bits"
        )
    out_bits = params.value_bits(i)
    return oracle_eval(OracleTag(LABEL_WOTS_CHAIN, r, i), x, out_bits)


def chain(params: WotsParams, r: Seed, a: int, b: int, x: BitString) -> BitString:
    """Walk a value from chain position a up to position b (inclusive ends).

    a == b returns x unchanged; composition holds:
    chain(a, c, x) == chain(b, c, chain(a, b, x)) for a <= b <= c.
    """
    if a > b:
        raise IndexError(f"chain start {a} exceeds end {b}")
    if b > params.w - 1:
        raise IndexError(f"chain end {b} exceeds w-1={params.w - 1}")
    if a < 0:
        raise IndexError(f"chain start {a} is negative")
    if x.bit_len != params.value_bits(a):
        raise DomainError(
            f"value at position {a} must be {params.value_bits(a)} bits, "
            f"got {x.bit_len}"
        )
    for i in range(a + 1, b + 1):
        x = f_step(params, r, i, x)
    return x
