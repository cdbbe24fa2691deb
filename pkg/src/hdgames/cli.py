"""Command-line entry point.

Every successful command prints exactly one ``result: <value>`` line on
stdout.  Exit codes: 0 answer computed, 2 usage or parse error,
3 validation or precondition error, 4 resource bound exceeded.
"""

import argparse
import sys

from . import automata, games, hardness
from .constructions import check_hd_with_det, check_simulation, solve_token
from .containment import containment_report
from .errors import ParseError, ResourceLimitError, ValidationError
from .solvers import (BRUTE_LIMIT, check_good, solve_2d, solve_parity_brute,
                      solve_parity_recursive)
from .zielonka import build_zielonka, containment_condition, zielonka_shape

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_RESOURCE = 0, 2, 3, 4


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _yes(flag):
    return "yes" if flag else "no"


def _load_game(path, dims):
    g = games.parse_game(_read(path))
    want = games.ParityGame if dims == 1 else games.TwoDimGame
    if not isinstance(g, want):
        raise ValidationError(f"{path}: expected a {dims}-dimensional game")
    return g


def _load_pa(path):
    return automata.parse_automaton(_read(path))


def _symbols(a, spec):
    if spec in ("-", ""):
        return ()
    return tuple(a.symbol_index(tok) for tok in spec.split(","))


def cmd_solve(args, log):
    if args.kind == "parity":
        g = _load_game(args.file, 1)
        if args.method in (None, "recursive"):
            res = solve_parity_recursive(g)
            log(f"Eve region: {[v for v, w in enumerate(res.regions) if w == games.EVE]}")
            return str(res.winner)
        if args.method == "brute":
            return str(solve_parity_brute(g, args.limit))
    else:
        g = _load_game(args.file, 2)
        if args.method in (None, "enum", "muller"):
            return str(solve_2d(g, args.method or "enum", args.limit))
    raise ValidationError(f"method {args.method!r} not available for {args.kind} games")


def cmd_sim(args, log):
    a, b = _load_pa(args.a), _load_pa(args.b)
    return _yes(check_simulation(a, b, args.method))


def cmd_hd(args, log):
    h, det = _load_pa(args.h), _load_pa(args.det)
    return _yes(check_hd_with_det(h, det, sample=args.sample))


def cmd_token(args, log):
    return str(solve_token(_load_pa(args.a), args.k))


def cmd_contains(args, log):
    rep = containment_report(_load_pa(args.a), _load_pa(args.b), assume_hd=args.assume_hd)
    log(f"parity game: {rep.vertices} vertices, {rep.priorities} priorities; "
        f"Zielonka tree: {rep.leaves} leaves, height {rep.height}")
    return _yes(rep.contained)


def cmd_member(args, log):
    a = _load_pa(args.a)
    w = automata.UPWord(_symbols(a, args.u), _symbols(a, args.v))
    return _yes(automata.member_up(a, w))


def cmd_good(args, log):
    return _yes(check_good(_load_game(args.file, 2)))


def cmd_gen(args, log):
    if args.kind == "2d-from-dnf":
        if not args.o:
            raise ValidationError("gen 2d-from-dnf needs -o <g.pg>")
        g = hardness.dnf_to_game(hardness.parse_dnf(_read(args.file)))
        _write(args.o, games.emit_game(g))
        return f"wrote {args.o}"
    if not (args.out_d and args.out_h):
        raise ValidationError("gen sim-from-2d needs --out-d and --out-h")
    d, h = hardness.game_to_automata(_load_game(args.file, 2))
    _write(args.out_d, automata.emit_automaton(d))
    _write(args.out_h, automata.emit_automaton(h))
    return f"wrote {args.out_d} {args.out_h}"


def cmd_ztree(args, log):
    if args.d < 0:
        raise ValidationError("--d must be nonnegative")
    leaves, height = zielonka_shape(build_zielonka(containment_condition(args.d)))
    return f"leaves={leaves} height={height}"


def build_parser():
    p = argparse.ArgumentParser(prog="hdgames", description=__doc__.splitlines()[0])
    p.add_argument("--verbose", action="store_true", help="diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a parity or 2-D parity game")
    s.add_argument("kind", choices=["parity", "2d"])
    s.add_argument("file")
    s.add_argument("--method", choices=["recursive", "brute", "enum", "muller"])
    s.add_argument("--limit", type=int, default=BRUTE_LIMIT)
    s.set_defaults(run=cmd_solve)

    s = sub.add_parser("sim", help="does A simulate B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--method", choices=["enum", "muller"], default="muller")
    s.set_defaults(run=cmd_sim)

    s = sub.add_parser("hd", help="history-determinism given a deterministic equivalent")
    s.add_argument("h")
    s.add_argument("--det", required=True)
    s.add_argument("--sample", type=int, default=0)
    s.set_defaults(run=cmd_hd)

    s = sub.add_parser("token", help="winner of the k-token game")
    s.add_argument("a")
    s.add_argument("--k", type=int, choices=[1, 2], required=True)
    s.set_defaults(run=cmd_token)

    s = sub.add_parser("contains", help="L(A) ⊆ L(B) for history-deterministic B")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--assume-hd", action="store_true")
    s.set_defaults(run=cmd_contains)

    s = sub.add_parser("member", help="membership of u v^omega")
    s.add_argument("a")
    s.add_argument("--u", default="-")
    s.add_argument("--v", required=True)
    s.set_defaults(run=cmd_member)

    s = sub.add_parser("good", help="is a 2-D game good")
    s.add_argument("file")
    s.set_defaults(run=cmd_good)

    s = sub.add_parser("gen", help="instance generators")
    s.add_argument("kind", choices=["2d-from-dnf", "sim-from-2d"])
    s.add_argument("file")
    s.add_argument("-o")
    s.add_argument("--out-d")
    s.add_argument("--out-h")
    s.set_defaults(run=cmd_gen)

    s = sub.add_parser("ztree", help="Zielonka tree of the containment condition")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(run=cmd_ztree)
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE

    def log(msg):
        if args.verbose:
            print(msg, file=stderr)

    try:
        value = args.run(args, log)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    print(f"result: {value}", file=stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
