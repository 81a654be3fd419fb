"""Command-line front end.

Exit codes: 0 success/valid, 1 invalid signature or evidence,
2 usage/format/budget error, 4 forgery undetectable.  Every randomized
subcommand takes a mandatory --seed so runs are replayable bit-exactly.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import analysis, lamport, pof, serial, wots
from .adversary import ForgeryBudget, forge_lamport, forge_wots
from .core import BitString, LamportParams, WotsParams, derive_wots_params
from .errors import (
    BudgetExceeded,
    DomainError,
    FormatError,
    InvalidParams,
    NotAValidSignature,
    PofsigError,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_UNDETECTABLE = 4


class UsageError(PofsigError):
    pass


def _parse_seed(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise UsageError(f"seed must be hex, got {text!r}")


def _rng(seed_hex: str) -> random.Random:
    return random.Random(_parse_seed(seed_hex))


def _build_params(args):
    if args.scheme == "lamport":
        if getattr(args, "L", None) is not None or getattr(args, "nu", None) is not None:
            raise UsageError("--L/--nu are only valid for --scheme wots")
        return LamportParams(args.n, args.delta)
    if args.L is None or args.nu is None:
        raise UsageError("--scheme wots requires --L and --nu")
    return derive_wots_params(args.n, args.delta, args.L, args.nu)


def _parse_message(text: str, params):
    if isinstance(params, LamportParams):
        if text not in ("0", "1"):
            raise UsageError(f"lamport message must be the bit 0 or 1, got {text!r}")
        return int(text)
    nbytes = (params.L + 7) // 8
    try:
        payload = bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"message must be hex, got {text!r}")
    if len(payload) != nbytes:
        raise UsageError(
            f"message must encode exactly {params.L} bits ({nbytes} bytes of hex)"
        )
    try:
        return BitString(params.L, payload)
    except InvalidParams as exc:
        raise UsageError(str(exc))


def _message_str(message, params) -> str:
    if isinstance(params, LamportParams):
        return str(message)
    return message.hex()


def _load(path, want_kinds):
    obj = serial.load_path(path)
    names = {
        lamport.LamportKeyPair: "secret-key",
        wots.WotsKeyPair: "secret-key",
        lamport.LamportPublicKey: "public-key",
        wots.WotsPublicKey: "public-key",
        serial.SignatureFile: "signature",
        pof.PofEvidenceI: "pof-1",
        pof.PofEvidenceII: "pof-2",
    }
    kind = names[type(obj)]
    if kind not in want_kinds:
        raise UsageError(f"{path}: is a {kind} file, expected {' or '.join(want_kinds)}")
    return obj


def _cmd_keygen(args) -> int:
    params = _build_params(args)
    rng = _rng(args.seed)
    if isinstance(params, LamportParams):
        kp = lamport.keygen(params, rng)
    else:
        kp = wots.keygen(params, rng)
    serial.dump_path(args.sk_out, serial.dump_secret_key(kp))
    serial.dump_path(args.pk_out, serial.dump_public_key(kp.public()))
    return EXIT_OK


def _cmd_sign(args) -> int:
    kp = _load(args.sk, ("secret-key",))
    message = _parse_message(args.message, kp.params)
    print(
        "warning: one-time key; never sign a second message with this key",
        file=sys.stderr,
    )
    if isinstance(kp, lamport.LamportKeyPair):
        sig = lamport.sign(kp, message)
    else:
        sig = wots.sign(kp, message)
    serial.dump_path(args.out, serial.dump_signature(sig, message, kp.params))
    return EXIT_OK


def _cmd_verify(args) -> int:
    pk = _load(args.pk, ("public-key",))
    sig_file = _load(args.sig, ("signature",))
    message = _parse_message(args.message, pk.params)
    ok = pof.scheme_verify(pk, sig_file.signature, message)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_INVALID


def _cmd_forge(args) -> int:
    pk = _load(args.pk, ("public-key",))
    known_sig = _load(args.known_sig, ("signature",)).signature
    known_m = _parse_message(args.known_message, pk.params)
    m_star = _parse_message(args.target_message, pk.params)
    budget = ForgeryBudget(args.max_domain_bits)
    rng = _rng(args.seed)
    if isinstance(pk, lamport.LamportPublicKey):
        forged = forge_lamport(pk, known_m, known_sig, m_star, budget, rng)
    else:
        forged = forge_wots(pk, known_m, known_sig, m_star, budget, rng)
    serial.dump_path(args.out, serial.dump_signature(forged, m_star, pk.params))
    return EXIT_OK


def _cmd_detect(args) -> int:
    kp = _load(args.sk, ("secret-key",))
    sig_file = _load(args.sig, ("signature",))
    message = _parse_message(args.message, kp.params)
    try:
        outcome = pof.detect_forgery(kp, message, sig_file.signature)
    except NotAValidSignature as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not outcome.detected:
        print("undetectable: forged signature equals the legitimate one")
        return EXIT_UNDETECTABLE
    serial.dump_path(args.pof_out, serial.dump_pof2(outcome.evidence))
    print(f"evidence written to {args.pof_out}")
    return EXIT_OK


def _cmd_verify_pof(args) -> int:
    evidence = _load(args.pof, ("pof-1", "pof-2"))
    if isinstance(evidence, pof.PofEvidenceI):
        ok = pof.verify_pof1(evidence)
    else:
        ok = pof.verify_pof2(evidence)
    print("valid evidence" if ok else "invalid evidence")
    return EXIT_OK if ok else EXIT_INVALID


def _cmd_experiment(args) -> int:
    params = _build_params(args)
    config = analysis.ExperimentConfig(
        scheme=args.scheme,
        params=params,
        trials=args.trials,
        master_seed=_parse_seed(args.seed),
    )
    report = analysis.run_fda_experiment(config)
    print(analysis.report_text(report))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(analysis.CSV_HEADER + "\n" + analysis.csv_row(report) + "\n")
    return EXIT_OK


def _cmd_scenario(args) -> int:
    params = _build_params(args)
    mode = "exact-sk" if args.adversary_mode == "exact-sk" else "fresh"
    log = analysis.run_scenario(
        args.scheme,
        params,
        _parse_seed(args.seed),
        adversary_mode=mode,
        notify_adversary=args.notify_adversary,
    )
    print(analysis.scenario_text(log))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    b = analysis.fda_bounds(args.n, args.delta)
    print(f"n:                 {b.n}")
    print(f"delta:             {b.delta}")
    print(f"lower bound:       {b.lower:.6g}")
    print(f"upper bound:       {b.upper:.6g}")
    print(f"exact expectation: {b.exact_expectation:.6g}")
    return EXIT_OK


def _add_scheme_params(sub, wots_required=False):
    sub.add_argument("--scheme", required=True, choices=("lamport", "wots"))
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--delta", type=int, required=True)
    sub.add_argument("--L", type=int, default=None)
    sub.add_argument("--nu", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pofsig",
        description="One-time hash-based signatures with proof-of-forgery evidence",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("keygen", help="generate a key pair")
    _add_scheme_params(s)
    s.add_argument("--seed", required=True)
    s.add_argument("--sk-out", required=True)
    s.add_argument("--pk-out", required=True)
    s.set_defaults(fn=_cmd_keygen)

    s = subs.add_parser("sign", help="sign a message")
    s.add_argument("--sk", required=True)
    s.add_argument("--message", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_sign)

    s = subs.add_parser("verify", help="verify a signature")
    s.add_argument("--pk", required=True)
    s.add_argument("--sig", required=True)
    s.add_argument("--message", required=True)
    s.set_defaults(fn=_cmd_verify)

    s = subs.add_parser("forge", help="exhaustively forge a signature at toy sizes")
    s.add_argument("--pk", required=True)
    s.add_argument("--known-message", required=True)
    s.add_argument("--known-sig", required=True)
    s.add_argument("--target-message", required=True)
    s.add_argument("--max-domain-bits", type=int, required=True)
    s.add_argument("--seed", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=_cmd_forge)

    s = subs.add_parser("detect", help="re-sign and compare to build evidence")
    s.add_argument("--sk", required=True)
    s.add_argument("--message", required=True)
    s.add_argument("--sig", required=True)
    s.add_argument("--pof-out", required=True)
    s.set_defaults(fn=_cmd_detect)

    s = subs.add_parser("verify-pof", help="verify an evidence file")
    s.add_argument("--pof", required=True)
    s.set_defaults(fn=_cmd_verify_pof)

    s = subs.add_parser("experiment", help="Monte Carlo forgery-detection run")
    _add_scheme_params(s)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", required=True)
    s.add_argument("--csv", default=None)
    s.set_defaults(fn=_cmd_experiment)

    s = subs.add_parser("scenario", help="replay the three-party scenario")
    _add_scheme_params(s)
    s.add_argument(
        "--adversary-mode", required=True, choices=("fresh", "exact-sk")
    )
    s.add_argument("--notify-adversary", action="store_true")
    s.add_argument("--seed", required=True)
    s.set_defaults(fn=_cmd_scenario)

    s = subs.add_parser("bounds", help="print analytic detection bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=int, required=True)
    s.set_defaults(fn=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, FormatError, InvalidParams, DomainError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
