"""Brute-force forgery at toy hash sizes.

Everything here is exhaustive search: full preimage-set enumeration for
the Lamport oracle and full inversion of composed Winternitz chains.
A hard cap on domain width keeps runs at desk scale; production sizes
are refused outright.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import BitString, LamportParams, WotsParams
from .errors import BudgetExceeded, DomainError, EmptyPreimageSet, InvalidParams
from .lamport import LamportPublicKey, LamportSignature, hash_secret
from .oracle import (
    LABEL_LAMPORT,
    LABEL_WOTS_CHAIN,
    OracleTag,
    Seed,
    chain,
    digest_bits,
    tag_prefix,
)
from .wots import WotsPublicKey, WotsSignature, extend

MAX_DOMAIN_BITS = 28


@dataclass(frozen=True)
class ForgeryBudget:
    """Cap on exhaustive-search width; 28 bits is minutes on a desktop."""

    max_domain_bits: int = MAX_DOMAIN_BITS

    def __post_init__(self):
        if not 1 <= self.max_domain_bits <= MAX_DOMAIN_BITS:
            raise InvalidParams(
                f"max_domain_bits must be in 1..{MAX_DOMAIN_BITS}"
            )

    def check(self, domain_bits: int) -> None:
        if domain_bits > self.max_domain_bits:
            raise BudgetExceeded(
                f"enumerating a {domain_bits}-bit domain exceeds the "
                f"{self.max_domain_bits}-bit budget"
            )


@dataclass(frozen=True)
class PreimageSet:
    """The complete preimage set of one oracle output, in ascending input order."""

    target: BitString
    domain_bits: int
    members: tuple[BitString, ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.members)


def enumerate_preimages(
    oracle_fn: Callable[[BitString], BitString],
    y0: BitString,
    domain_bits: int,
    budget: ForgeryBudget,
) -> PreimageSet:
    """Scan the whole domain and collect every input mapping to y0."""
    budget.check(domain_bits)
    members = []
    for v in range(1 << domain_bits):
        x = BitString.from_int(v, domain_bits)
        if oracle_fn(x) == y0:
            members.append(x)
    return PreimageSet(target=y0, domain_bits=domain_bits, members=tuple(members))


def sample_preimage(ps: PreimageSet, rng: random.Random) -> BitString:
    if ps.count == 0:
        raise EmptyPreimageSet(f"target {ps.target.hex()} has no preimage")
    return ps.members[rng.randrange(ps.count)]


def build_lamport_preimage_index(params: LamportParams) -> dict[bytes, list[BitString]]:
    """Full image table of the Lamport oracle at these parameters.

    The Lamport hash is one fixed function per (n, delta), so batch runs
    enumerate it once and answer every inversion by lookup.  Member
    lists come out in ascending input order, identical to a fresh scan.
    """
    domain_bits = params.sk_bits
    prefix = tag_prefix(OracleTag(LABEL_LAMPORT), params.n, domain_bits)
    nbytes = (domain_bits + 7) // 8
    pad = 8 * nbytes - domain_bits
    index: dict[bytes, list[BitString]] = {}
    for v in range(1 << domain_bits):
        payload = (v << pad).to_bytes(nbytes, "big")
        y = digest_bits(prefix, payload, params.n)
        index.setdefault(y, []).append(BitString(domain_bits, payload))
    return index


def lamport_preimages(
    params: LamportParams,
    y0: BitString,
    budget: ForgeryBudget,
    index: Optional[dict[bytes, list[BitString]]] = None,
) -> PreimageSet:
    budget.check(params.sk_bits)
    if index is not None:
        members = tuple(index.get(y0.payload, ()))
        return PreimageSet(target=y0, domain_bits=params.sk_bits, members=members)
    return enumerate_preimages(
        lambda x: hash_secret(params, x), y0, params.sk_bits, budget
    )


def forge_lamport(
    pk: LamportPublicKey,
    known_m: int,
    known_sig: LamportSignature,
    m_star: int,
    budget: ForgeryBudget,
    rng: random.Random,
    index: Optional[dict[bytes, list[BitString]]] = None,
) -> LamportSignature:
    """Invert the public half for the target bit and emit a random preimage.

    The output verifies unconditionally; whether it coincides with the
    signer's own secret half is exactly the detection-failure event.
    """
    if m_star == known_m:
        raise DomainError("target message must differ from the signed one")
    ps = lamport_preimages(pk.params, pk.half(m_star), budget, index=index)
    return LamportSignature(sample_preimage(ps, rng))


def chain_preimages(
    params: WotsParams,
    r: Seed,
    b_star: int,
    pk_value: BitString,
    budget: ForgeryBudget,
) -> PreimageSet:
    """All position-b_star values whose finished chain reaches pk_value.

    Enumerates the composed map from position b_star to the chain top by
    raw scan; later steps are memoized since the image shrinks by delta
    bits per step.
    """
    domain_bits = params.value_bits(b_star)
    budget.check(domain_bits)
    steps = []
    for i in range(b_star + 1, params.w):
        out_bits = params.value_bits(i)
        prefix = tag_prefix(
            OracleTag(LABEL_WOTS_CHAIN, r, i), out_bits, params.value_bits(i - 1)
        )
        steps.append((prefix, out_bits))
    nbytes = (domain_bits + 7) // 8
    pad = 8 * nbytes - domain_bits
    target = pk_value.payload
    memos: list[dict[bytes, bytes]] = [dict() for _ in steps]
    members = []
    for v in range(1 << domain_bits):
        cur = (v << pad).to_bytes(nbytes, "big")
        for k, (prefix, out_bits) in enumerate(steps):
            if k == 0:
                cur = digest_bits(prefix, cur, out_bits)
            else:
                nxt = memos[k].get(cur)
                if nxt is None:
                    nxt = digest_bits(prefix, cur, out_bits)
                    memos[k][cur] = nxt
                cur = nxt
        if cur == target:
            members.append(BitString(domain_bits, (v << pad).to_bytes(nbytes, "big")))
    return PreimageSet(target=pk_value, domain_bits=domain_bits, members=tuple(members))


def forge_wots(
    pk: WotsPublicKey,
    known_M: BitString,
    known_sig: WotsSignature,
    M_star: BitString,
    budget: ForgeryBudget,
    rng: random.Random,
) -> WotsSignature:
    """Forge a signature for M_star from one observed message-signature pair.

    Positions whose target depth is not below the known depth are
    advanced along the chain from the known value.  Positions forced
    downward by the checksum are inverted exhaustively and a uniformly
    random member of the preimage set is taken.
    """
    params = pk.params
    if M_star == known_M:
        raise DomainError("target message must differ from the signed one")
    b = extend(known_M, params)
    b_star = extend(M_star, params)
    sigma_star = []
    for i in range(params.l):
        if b_star[i] >= b[i]:
            sigma_star.append(
                chain(params, pk.r, b[i], b_star[i], known_sig.sigma[i])
            )
        else:
            ps = chain_preimages(params, pk.r, b_star[i], pk.pk[i], budget)
            sigma_star.append(sample_preimage(ps, rng))
    return WotsSignature(tuple(sigma_star))
