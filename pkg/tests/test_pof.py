import random

import pytest

from pofsig import lamport, wots
from pofsig.adversary import (
    ForgeryBudget,
    build_lamport_preimage_index,
    forge_lamport,
    forge_wots,
)
from pofsig.core import BitString, LamportParams, derive_wots_params
from pofsig.errors import NotAValidSignature
from pofsig.pof import (
    PofEvidenceI,
    PofEvidenceII,
    detect_forgery,
    verify_pof1,
    verify_pof2,
)

LP = LamportParams(8, 4)
WP = derive_wots_params(6, 1, 4, 2)
BUDGET = ForgeryBudget()


def lamport_kp(seed=0, params=LP):
    return lamport.keygen(params, random.Random(seed))


def colliding_lamport_instance():
    # two preimages of one image, found exhaustively; with pk0 = pk1 a
    # single signature is valid for both message bits
    params = LamportParams(8, 2)
    index = build_lamport_preimage_index(params)
    members = next(ms for ms in index.values() if len(ms) >= 2)
    y = lamport.hash_secret(params, members[0])
    pk = lamport.LamportPublicKey(params, y, y)
    return pk, members


class TestPof1:
    def test_equal_messages_rejected(self):
        pk, members = colliding_lamport_instance()
        E = PofEvidenceI(pk, lamport.LamportSignature(members[0]), M=1, M_star=1)
        assert verify_pof1(E) == 0

    def test_failing_verification_rejected(self):
        kp = lamport_kp()
        E = PofEvidenceI(kp.public(), lamport.sign(kp, 0), M=0, M_star=1)
        assert verify_pof1(E) == 0  # sk0 does not verify for bit 1

    def test_hand_built_collision_accepted(self):
        pk, members = colliding_lamport_instance()
        E = PofEvidenceI(pk, lamport.LamportSignature(members[0]), M=0, M_star=1)
        assert verify_pof1(E) == 1


class TestPof2:
    def _evidence(self):
        kp = lamport_kp(seed=5)
        rng = random.Random(99)
        M = 0
        sigma = lamport.sign(kp, M)
        forged = forge_lamport(kp.public(), M, sigma, 1, BUDGET, rng)
        outcome = detect_forgery(kp, 1, forged)
        assert outcome.detected  # seed chosen so detection succeeds
        return kp, outcome.evidence

    def test_detection_evidence_verifies(self):
        _, E = self._evidence()
        assert verify_pof2(E) == 1

    def test_identical_signatures_rejected(self):
        kp, E = self._evidence()
        same = PofEvidenceII(E.pk, E.sigma_star, E.sigma_star, E.M_star)
        assert verify_pof2(same) == 0

    def test_tampered_pk_rejected(self):
        kp, E = self._evidence()
        # tamper the half that M_star = 1 actually selects
        bad_pk = lamport.LamportPublicKey(
            E.pk.params, E.pk.pk0, E.pk.pk1.flip_bit(0)
        )
        tampered = PofEvidenceII(bad_pk, E.sigma_tilde_star, E.sigma_star, E.M_star)
        assert verify_pof2(tampered) == 0

    def test_third_party_needs_only_evidence(self):
        # the evidence carries the public key; verification never touches sk
        _, E = self._evidence()
        assert E.pk is not None
        assert verify_pof2(E) == 1


class TestDetectForgery:
    def test_fresh_preimage_gives_evidence(self):
        kp, E = TestPof2()._evidence()
        assert isinstance(E, PofEvidenceII)

    def test_exact_signature_undetectable(self):
        kp = lamport_kp(seed=1)
        legit = lamport.sign(kp, 1)
        outcome = detect_forgery(kp, 1, legit)
        assert not outcome.detected
        assert outcome.evidence is None

    def test_garbage_raises(self):
        kp = lamport_kp(seed=2)
        garbage = lamport.LamportSignature(BitString.from_int(0, LP.sk_bits))
        with pytest.raises(NotAValidSignature):
            detect_forgery(kp, 1, garbage)

    def test_wots_end_to_end(self):
        rng = random.Random(17)
        kp = wots.keygen(WP, rng)
        M = BitString.from_int(0b1101, 4)
        M_star = BitString.from_int(0b0110, 4)
        sigma = wots.sign(kp, M)
        forged = forge_wots(kp.public(), M, sigma, M_star, BUDGET, rng)
        outcome = detect_forgery(kp, M_star, forged)
        if outcome.detected:
            assert verify_pof2(outcome.evidence) == 1
        else:
            assert forged == wots.sign(kp, M_star)

    def test_soundness_of_every_evidence(self):
        rng = random.Random(23)
        for trial in range(20):
            kp = lamport.keygen(LP, rng)
            M = rng.getrandbits(1)
            sigma = lamport.sign(kp, M)
            forged = forge_lamport(kp.public(), M, sigma, 1 - M, BUDGET, rng)
            outcome = detect_forgery(kp, 1 - M, forged)
            if outcome.detected:
                assert verify_pof2(outcome.evidence) == 1
