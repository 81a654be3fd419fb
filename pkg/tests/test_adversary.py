import random

import pytest

from pofsig import lamport, wots
from pofsig.adversary import (
    ForgeryBudget,
    PreimageSet,
    build_lamport_preimage_index,
    chain_preimages,
    enumerate_preimages,
    forge_lamport,
    forge_wots,
    lamport_preimages,
    sample_preimage,
)
from pofsig.analysis import exact_expectation
from pofsig.core import BitString, LamportParams, derive_wots_params
from pofsig.errors import (
    BudgetExceeded,
    DomainError,
    EmptyPreimageSet,
    InvalidParams,
)
from pofsig.oracle import chain

BUDGET = ForgeryBudget()
LP = LamportParams(8, 2)
WP = derive_wots_params(6, 1, 4, 2)


def lam_oracle(params):
    return lambda x: lamport.hash_secret(params, x)


class TestBudget:
    def test_cap_enforced_on_construction(self):
        with pytest.raises(InvalidParams):
            ForgeryBudget(30)

    def test_large_domain_refused(self):
        y0 = BitString.from_int(0, 8)
        small = ForgeryBudget(12)
        with pytest.raises(BudgetExceeded):
            enumerate_preimages(lam_oracle(LP), y0, 20, small)


class TestEnumerate:
    def test_known_input_is_member(self):
        x0 = BitString.from_int(0x2A7, 10)
        y0 = lamport.hash_secret(LP, x0)
        ps = enumerate_preimages(lam_oracle(LP), y0, 10, BUDGET)
        assert x0 in ps.members

    def test_all_members_map_to_target(self):
        x0 = BitString.from_int(123, 10)
        y0 = lamport.hash_secret(LP, x0)
        ps = enumerate_preimages(lam_oracle(LP), y0, 10, BUDGET)
        assert ps.count >= 1
        for x in ps.members:
            assert lamport.hash_secret(LP, x) == y0

    def test_ascending_order(self):
        x0 = BitString.from_int(77, 10)
        y0 = lamport.hash_secret(LP, x0)
        ps = enumerate_preimages(lam_oracle(LP), y0, 10, BUDGET)
        values = [m.to_int() for m in ps.members]
        assert values == sorted(values)

    def test_agrees_with_index_lookup(self):
        # independent path: full image table vs per-target scan
        index = build_lamport_preimage_index(LP)
        rng = random.Random(31)
        for _ in range(10):
            x0 = BitString.from_int(rng.getrandbits(10), 10)
            y0 = lamport.hash_secret(LP, x0)
            scan = enumerate_preimages(lam_oracle(LP), y0, 10, BUDGET)
            via_index = lamport_preimages(LP, y0, BUDGET, index=index)
            assert scan.members == via_index.members


class TestSample:
    def test_singleton(self):
        x = BitString.from_int(3, 4)
        ps = PreimageSet(target=x, domain_bits=4, members=(x,))
        rng = random.Random(0)
        assert all(sample_preimage(ps, rng) == x for _ in range(10))

    def test_empty_raises(self):
        ps = PreimageSet(target=BitString.from_int(0, 4), domain_bits=4, members=())
        with pytest.raises(EmptyPreimageSet):
            sample_preimage(ps, random.Random(0))

    def test_uniform_over_members(self):
        members = tuple(BitString.from_int(v, 4) for v in (1, 5, 9, 13))
        ps = PreimageSet(target=BitString.from_int(0, 4), domain_bits=4, members=members)
        rng = random.Random(8)
        counts = {m: 0 for m in members}
        draws = 10_000
        for _ in range(draws):
            counts[sample_preimage(ps, rng)] += 1
        # each frequency within 3 sigma of 1/4
        sigma = (0.25 * 0.75 / draws) ** 0.5
        for c in counts.values():
            assert abs(c / draws - 0.25) <= 3 * sigma

    def test_sample_satisfies_membership(self):
        x0 = BitString.from_int(200, 10)
        y0 = lamport.hash_secret(LP, x0)
        ps = enumerate_preimages(lam_oracle(LP), y0, 10, BUDGET)
        rng = random.Random(4)
        for _ in range(5):
            assert lamport.hash_secret(LP, sample_preimage(ps, rng)) == y0


class TestForgeLamport:
    def test_always_verifies(self):
        rng = random.Random(6)
        index = build_lamport_preimage_index(LP)
        for _ in range(50):
            kp = lamport.keygen(LP, rng)
            m = rng.getrandbits(1)
            sigma = lamport.sign(kp, m)
            forged = forge_lamport(
                kp.public(), m, sigma, 1 - m, BUDGET, rng, index=index
            )
            assert lamport.verify(kp.public(), forged, 1 - m) == 1

    def test_same_message_refused(self):
        rng = random.Random(6)
        kp = lamport.keygen(LP, rng)
        with pytest.raises(DomainError):
            forge_lamport(kp.public(), 0, lamport.sign(kp, 0), 0, BUDGET, rng)

    def test_collision_rate_matches_expectation_delta0(self):
        # fraction of forgeries that reproduce the signer's exact secret
        # should track E[1/N] ~ 0.632 at delta=0
        params = LamportParams(8, 0)
        index = build_lamport_preimage_index(params)
        rng = random.Random(12345)
        hits = 0
        trials = 1000
        for _ in range(trials):
            kp = lamport.keygen(params, rng)
            m = rng.getrandbits(1)
            sigma = lamport.sign(kp, m)
            forged = forge_lamport(
                kp.public(), m, sigma, 1 - m, BUDGET, rng, index=index
            )
            if forged.sigma == (kp.sk1 if 1 - m else kp.sk0):
                hits += 1
        expect = exact_expectation(8, 0)
        sigma_mc = (expect * (1 - expect) / trials) ** 0.5
        assert abs(hits / trials - expect) <= 3 * sigma_mc

    def test_collision_rate_bounded_delta6(self):
        params = LamportParams(8, 6)
        index = build_lamport_preimage_index(params)
        rng = random.Random(99)
        hits = 0
        trials = 1000
        for _ in range(trials):
            kp = lamport.keygen(params, rng)
            sigma = lamport.sign(kp, 0)
            forged = forge_lamport(kp.public(), 0, sigma, 1, BUDGET, rng, index=index)
            if forged.sigma == kp.sk1:
                hits += 1
        bound = 5.22 * 2 ** -6
        assert hits / trials < bound + 3 * (bound * (1 - bound) / trials) ** 0.5


class TestChainInversion:
    def test_members_reach_public_key(self):
        rng = random.Random(13)
        kp = wots.keygen(WP, rng)
        ps = chain_preimages(WP, kp.r, 0, kp.pk[0], BUDGET)
        assert ps.count >= 1
        for x in ps.members:
            assert chain(WP, kp.r, 0, WP.w - 1, x) == kp.pk[0]

    def test_agrees_with_generic_scan(self):
        rng = random.Random(14)
        kp = wots.keygen(WP, rng)
        for b_star in (0, 1, 2):
            fast = chain_preimages(WP, kp.r, b_star, kp.pk[1], BUDGET)
            slow = enumerate_preimages(
                lambda x: chain(WP, kp.r, b_star, WP.w - 1, x),
                kp.pk[1],
                WP.value_bits(b_star),
                BUDGET,
            )
            assert fast.members == slow.members


class TestForgeWots:
    def test_always_verifies(self):
        rng = random.Random(21)
        for _ in range(10):
            kp = wots.keygen(WP, rng)
            M = BitString.from_int(rng.getrandbits(4), 4)
            while True:
                M_star = BitString.from_int(rng.getrandbits(4), 4)
                if M_star != M:
                    break
            sigma = wots.sign(kp, M)
            forged = forge_wots(kp.public(), M, sigma, M_star, BUDGET, rng)
            assert wots.verify(kp.public(), forged, M_star) == 1

    def test_some_position_is_inverted(self):
        # the checksum guarantees a strictly decreasing digit somewhere
        for a in range(16):
            for b in range(16):
                if a == b:
                    continue
                ba = wots.extend(BitString.from_int(a, 4), WP)
                bb = wots.extend(BitString.from_int(b, 4), WP)
                assert any(x < y for x, y in zip(bb, ba))

    def test_same_message_refused(self):
        rng = random.Random(22)
        kp = wots.keygen(WP, rng)
        M = BitString.from_int(5, 4)
        with pytest.raises(DomainError):
            forge_wots(kp.public(), M, wots.sign(kp, M), M, BUDGET, rng)
