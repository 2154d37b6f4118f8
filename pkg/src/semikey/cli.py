"""Command-line front door.

Subcommands: check, demo, attack, ff-attack, enumerate-order2. All
randomness flows from one --seed flag. kv output is line-oriented
key=value for scripting; every kv run reports seed=, semiring= and
match=.

Exit codes: 0 success/match, 1 usage or input error, 2 degenerate
instance, 3 attack mismatch.
"""

import argparse
import sys

from .attack import recover_key
from .congruence import SIMPLICITY_ORDER_LIMIT, is_congruence_simple
from .errors import SemikeyError
from .field_attack import field_matrix_semiring, run_field_attack_demo
from .matrices import format_matrix, load_matrix
from .protocol import (ROUTE_FINITE_FIELD, ROUTE_IDEMPOTENT, ProtocolInstance,
                       random_instance, run_exchange, semiring_route)
from .semirings import (BUILTIN_NAMES, builtin, center, check_axioms,
                        classify, enumerate_order2_semirings,
                        is_additively_commutative, is_additively_idempotent,
                        load_semiring, order2_type)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DEGENERATE = 2
EXIT_MISMATCH = 3


class Output:
    """Collects human or key=value lines and prints them."""

    def __init__(self, kv: bool):
        self.kv = kv

    def emit(self, key, value, human=None):
        if self.kv:
            print(f"{key}={value}")
        else:
            print(human if human is not None else f"{key}: {value}")

    def block(self, title, text):
        if not self.kv:
            print(f"{title}:")
            print(text.rstrip())


def _bool(v) -> str:
    return "true" if v else "false"


def _add_source(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", help=f"builtin semiring ({', '.join(BUILTIN_NAMES)})")
    group.add_argument("--file", help="semiring interchange file")


def _add_format(parser):
    parser.add_argument("--format", choices=("human", "kv"), default="human",
                        help="human-readable or key=value lines")


def _load_source(args):
    if args.builtin:
        return builtin(args.builtin)
    return load_semiring(args.file)


def _semiring_label(args):
    return args.builtin if args.builtin else args.file


def cmd_check(args) -> int:
    s = _load_source(args)
    out = Output(args.format == "kv")
    violations = check_axioms(s)
    label = _semiring_label(args)
    out.emit("semiring", label)
    out.emit("seed", "none")
    out.emit("order", s.order)
    out.emit("axioms", "ok" if not violations else "violated",
             human=f"axioms: {'ok' if not violations else 'VIOLATED'}")
    for v in violations[:8]:
        out.emit("violation", f"{v.law}{v.witness}")
    if violations:
        out.emit("match", "false")
        return EXIT_ERROR
    out.emit("class", classify(s).value)
    out.emit("idempotent_add", _bool(is_additively_idempotent(s)))
    out.emit("commutative_add", _bool(is_additively_commutative(s)))
    out.emit("center", " ".join(str(c) for c in center(s)),
             human=f"center: {{{', '.join(str(c) for c in center(s))}}}")
    t = order2_type(s)
    if t:
        out.emit("order2_type", t)
    if s.order <= SIMPLICITY_ORDER_LIMIT:
        out.emit("simple", _bool(is_congruence_simple(s)))
    else:
        out.emit("simple", "skipped",
                 human=f"simple: skipped (order > {SIMPLICITY_ORDER_LIMIT})")
    route = semiring_route(s)
    out.emit("degenerate", _bool(route.degenerate))
    out.emit("route", route.route or "none")
    out.emit("match", "true")
    return EXIT_OK


def _print_degenerate(report, out: Output) -> int:
    out.emit("degenerate", "true")
    out.emit("reason", report.reason, human=f"degenerate instance: {report.reason}")
    out.emit("match", "false")
    return EXIT_DEGENERATE


def cmd_demo(args) -> int:
    s = _load_source(args)
    out = Output(args.format == "kv")
    out.emit("semiring", _semiring_label(args))
    out.emit("seed", args.seed)
    report = semiring_route(s)
    if report.degenerate:
        return _print_degenerate(report, out)
    inst = random_instance(s, args.n, args.m, args.seed)
    transcript = run_exchange(inst, args.seed + 1)
    out.emit("n", args.n)
    out.emit("m", args.m)
    for name, mat in (("S", inst.s), ("M1", inst.m1), ("M2", inst.m2),
                      ("A", transcript.alice.public_value),
                      ("B", transcript.bob.public_value),
                      ("key", transcript.key_alice)):
        if out.kv:
            flat = " ".join(str(v) for v in mat.entries)
            print(f"{name.lower()}={flat}")
        else:
            out.block(name, format_matrix(mat))
    out.emit("agree", _bool(transcript.agree))
    out.emit("match", _bool(transcript.agree))
    return EXIT_OK if transcript.agree else EXIT_ERROR


def _transcript_mode(args) -> bool:
    files = (args.s_file, args.m1_file, args.m2_file, args.a_file, args.b_file)
    if any(files) and not all(files):
        raise SemikeyError("transcript mode needs all of --s-file --m1-file "
                           "--m2-file --a-file --b-file")
    return all(files)


def cmd_attack(args) -> int:
    s = _load_source(args)
    out = Output(args.format == "kv")
    out.emit("semiring", _semiring_label(args))
    out.emit("seed", args.seed)
    report = semiring_route(s)
    if report.degenerate:
        return _print_degenerate(report, out)
    if report.route != ROUTE_IDEMPOTENT:
        if report.route == ROUTE_FINITE_FIELD:
            raise SemikeyError("this semiring routes to the finite-field attack; use ff-attack")
        raise SemikeyError("no attack route for this semiring")

    true_key = None
    if _transcript_mode(args):
        s_mat = load_matrix(args.s_file, s)
        inst = ProtocolInstance(
            s, s_mat.n,
            s_mat,
            load_matrix(args.m1_file, s),
            load_matrix(args.m2_file, s),
            args.m)
        a_public = load_matrix(args.a_file, s)
        b_public = load_matrix(args.b_file, s)
        if args.key_file:
            true_key = load_matrix(args.key_file, s)
        oracle = args.key_file is not None
    else:
        inst = random_instance(s, args.n, args.m, args.seed)
        transcript = run_exchange(inst, args.seed + 1)
        a_public = transcript.alice.public_value
        b_public = transcript.bob.public_value
        true_key = transcript.key_alice
        oracle = args.oracle

    bound = args.bound if args.bound is not None else 2 * args.m
    result = recover_key(inst, a_public, b_public, bound, greedy=args.greedy)
    out.emit("bound", bound)
    out.emit("witness_size", len(result.witness))
    out.emit("verified", _bool(result.verified),
             human=f"witness sum check: {'ok' if result.verified else 'FAILED (raise the bound)'}")
    if out.kv:
        print("key=" + " ".join(str(v) for v in result.key.entries))
    else:
        out.block("recovered key", format_matrix(result.key))
    if args.stats or out.kv:
        st = result.stats
        out.emit("matrix_products", st.matrix_products)
        out.emit("matrix_additions", st.matrix_additions)
        out.emit("comparisons", st.comparisons)
        out.emit("wall_time", f"{st.wall_time:.6f}")
    if oracle and true_key is not None:
        # Oracle-only comparison: the attack itself never reads private data.
        match = result.key == true_key
        out.emit("match", _bool(match))
        return EXIT_OK if match else EXIT_MISMATCH
    out.emit("match", "unknown" if true_key is None else _bool(result.key == true_key))
    return EXIT_OK


def cmd_ff_attack(args) -> int:
    out = Output(args.format == "kv")
    out.emit("semiring", f"mat{args.n}(F{args.p})")
    out.emit("seed", args.seed)
    s = field_matrix_semiring(args.p, args.n)
    degree = args.degree if args.degree is not None else args.m * args.n + 2
    outcome = run_field_attack_demo(s, args.m, degree, args.seed)
    out.emit("outer", args.m)
    out.emit("degree", degree)
    if out.kv:
        flat = " ".join(str(v) for v in outcome.recovered.a.reshape(-1).tolist())
        print(f"recovered={flat}")
    else:
        rows = "\n".join(" ".join(str(v) for v in row)
                         for row in outcome.recovered.a.tolist())
        out.block("recovered key (flattened)", rows)
    out.emit("match", _bool(outcome.match))
    return EXIT_OK if outcome.match else EXIT_MISMATCH


def cmd_enumerate_order2(args) -> int:
    out = Output(args.format == "kv")
    found = enumerate_order2_semirings()
    out.emit("semiring", "order2-enumeration")
    out.emit("seed", "none")
    out.emit("count", len(found))
    bad = [s for s in found
           if not is_additively_commutative(s) and not is_additively_idempotent(s)]
    out.emit("noncommutative_nonidempotent", len(bad))
    hits = sorted({t for s in found if (t := order2_type(s))})
    out.emit("builtin_types", " ".join(hits))
    if not out.kv and args.verbose:
        for s in found:
            t = order2_type(s) or "-"
            print(f"add={s.add_rows} mul={s.mul_rows} type={t}")
    out.emit("match", _bool(not bad and len(hits) == 8))
    return EXIT_OK if not bad else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semikey",
        description="Finite-semiring matrix key exchange and the attacks that break it")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="inspect a semiring")
    _add_source(p_check)
    _add_format(p_check)
    p_check.set_defaults(fn=cmd_check)

    p_demo = sub.add_parser("demo", help="run one key exchange")
    _add_source(p_demo)
    _add_format(p_demo)
    p_demo.add_argument("--n", type=int, default=2, help="matrix dimension")
    p_demo.add_argument("--m", type=int, default=3, help="key degree bound")
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.set_defaults(fn=cmd_demo)

    p_attack = sub.add_parser("attack", help="witness-set attack on a transcript")
    _add_source(p_attack)
    _add_format(p_attack)
    p_attack.add_argument("--n", type=int, default=2)
    p_attack.add_argument("--m", type=int, default=3, help="generation degree bound")
    p_attack.add_argument("--seed", type=int, default=0)
    p_attack.add_argument("--bound", type=int, default=None,
                          help="attacker degree bound (default 2*m)")
    p_attack.add_argument("--greedy", action="store_true",
                          help="greedily shrink the witness set")
    p_attack.add_argument("--stats", action="store_true",
                          help="print operation counters")
    p_attack.add_argument("--oracle", action="store_true",
                          help="compare with the true key; exit 3 on mismatch")
    p_attack.add_argument("--s-file")
    p_attack.add_argument("--m1-file")
    p_attack.add_argument("--m2-file")
    p_attack.add_argument("--a-file")
    p_attack.add_argument("--b-file")
    p_attack.add_argument("--key-file", help="oracle key for transcript mode")
    p_attack.set_defaults(fn=cmd_attack)

    p_ff = sub.add_parser("ff-attack", help="linear-algebra attack over Mat_n(F_p)")
    _add_format(p_ff)
    p_ff.add_argument("--p", type=int, required=True, help="prime modulus")
    p_ff.add_argument("--n", type=int, default=1, help="inner matrix dimension")
    p_ff.add_argument("--m", type=int, default=2, help="outer matrix dimension")
    p_ff.add_argument("--seed", type=int, default=0)
    p_ff.add_argument("--degree", type=int, default=None,
                      help="private key degree bound (default m*n + 2)")
    p_ff.set_defaults(fn=cmd_ff_attack)

    p_enum = sub.add_parser("enumerate-order2",
                            help="brute-force all order-2 semirings")
    _add_format(p_enum)
    p_enum.add_argument("--verbose", action="store_true", help="print every table pair")
    p_enum.set_defaults(fn=cmd_enumerate_order2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SemikeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
