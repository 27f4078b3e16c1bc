"""
Command-line frontend.

    dualgarside nf -n 3 "a(2,1) a(3,2) a(2,1)"
    dualgarside eq -n 3 "a(3,2) a(2,1)" "a(2,1) a(3,1)"
    dualgarside certify -n 3 "a(3,2) a(2,1) a(3,1)" > cert.txt
    dualgarside verify cert.txt

Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Sequence

from .baskets import (
    Basket,
    DeltaBasket,
    DeltaFormError,
    Espalier,
    basket_to_braid,
    braid_to_basket,
    classify_bandword,
    positive_artin_to_delta_form,
)
from .braid import BraidWord, format_word, parse_word
from .errors import BraidError, BudgetExhausted
from .fibering import (
    DEFAULT_BREADTH,
    DEFAULT_DEPTH,
    FiberednessCertificate,
    add_fibering_crossings,
    fiberedness_certificate,
    find_delta_subword,
    verify_certificate,
    yn_bandword,
    yn_delta_criterion,
)
from .garside import normal_form, parse_normal_form, words_equal
from .invariants import alexander_polynomial, bennequin_genus_bound, closure_summary, monic_obstruction
from .render import render

DEFAULT_CYCLING_CAP = 1000

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _budget(flag: int | None, env: str, default: int) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {env} must be an integer, got {raw!r}")


def _word(args, text: str) -> BraidWord:
    return parse_word(text, args.strands)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# verbs; each returns (exit code, output text)


def cmd_nf(args, inputs):
    nf = normal_form(_word(args, inputs[0]))
    if args.word:
        return EXIT_OK, format_word(nf.to_word())
    return EXIT_OK, str(nf)


def cmd_eq(args, inputs):
    if len(inputs) != 2:
        raise UsageError("eq takes exactly two braids")
    if args.nf:
        if args.strands is None:
            raise UsageError("eq --nf needs -n")
        u, v = (parse_normal_form(x, args.strands).to_word() for x in inputs)
    else:
        u, v = (_word(args, x) for x in inputs)
    return EXIT_OK, "EQUAL" if words_equal(u, v) else "NOT EQUAL"


def cmd_certify(args, inputs):
    word = _word(args, inputs[0])
    cert = fiberedness_certificate(word)
    if cert is None:
        return EXIT_OK, f"NOT-APPLICABLE infimum {normal_form(word).delta_power}"
    return EXIT_OK, cert.to_text().rstrip("\n")


def cmd_verify(args, inputs):
    cert = FiberednessCertificate.from_text(_read(inputs[0]))
    if verify_certificate(cert):
        return EXIT_OK, "VALID"
    return EXIT_DOMAIN, "INVALID"


def cmd_genus(args, inputs):
    word = _word(args, inputs[0])
    summary = closure_summary(word).to_text().rstrip("\n")
    claim = bennequin_genus_bound(word).is_minimal_genus_claim
    return EXIT_OK, f"{summary}\nminimal_genus_claim: {str(claim).lower()}"


def cmd_alex(args, inputs):
    word = _word(args, inputs[0])
    out = str(alexander_polynomial(word))
    if args.monic:
        out += f"\n{monic_obstruction(word).value}"
    return EXIT_OK, out


def cmd_yn_check(args, inputs):
    if args.strands is None:
        raise UsageError("yn-check needs -n")
    try:
        r = [int(v) for v in " ".join(inputs).replace(",", " ").split()]
    except ValueError:
        raise UsageError("yn-check takes a sequence of integers")
    w = yn_delta_criterion(r, args.strands)
    if w is None:
        lines = ["ABSENT"]
    else:
        q = " ".join(f"{i}:{w.Q[i]}" for i in sorted(w.Q))
        lines = [f"WITNESS k={w.k} L={w.L} P={w.P} U={w.U} Q={q}"]
    if args.search:
        search = find_delta_subword(yn_bandword(r, args.strands), args.depth, args.breadth)
        lines.append("SEARCH found" if search.found else "SEARCH absent-exhaustive")
    return EXIT_OK, "\n".join(lines)


def cmd_deltaize(args, inputs):
    word = _word(args, inputs[0])
    try:
        res = positive_artin_to_delta_form(word, args.cycling_cap, args.depth, args.breadth)
    except DeltaFormError as exc:
        return EXIT_DOMAIN, f"FAILED {exc}\n{exc.diagnostics}"
    return EXIT_OK, f"{format_word(res.word)}\ninfimum: {res.infimum}\nstage: {res.stage}"


def cmd_to_basket(args, inputs):
    return EXIT_OK, braid_to_basket(_word(args, inputs[0])).to_text().rstrip("\n")


def cmd_from_basket(args, inputs):
    text = _read(inputs[0])
    head = next((ln.split()[0] for ln in text.splitlines() if ln.strip()), "")
    if head == "basket":
        word = basket_to_braid(Basket.from_text(text))
    elif head == "plumbing":
        word = DeltaBasket.from_text(text).word()
    else:
        raise BraidError("expected a basket or plumbing file")
    return EXIT_OK, format_word(word)


def cmd_add_crossings(args, inputs):
    word = _word(args, inputs[0])
    res, added = add_fibering_crossings(word)
    gens = " ".join(str(g) for g in added) or "-"
    return EXIT_OK, f"{format_word(res)}\nadded: {gens}"


def cmd_classify(args, inputs):
    T = Espalier.from_text(_read(args.espalier))
    c = classify_bandword(_word(args, inputs[0]), T)
    return EXIT_OK, "\n".join(
        f"{k}: {str(v).lower()}" for k, v in vars(c).items()
    )


def cmd_render(args, inputs):
    if args.basket:
        text = _read(args.basket)
        head = next((ln.split()[0] for ln in text.splitlines() if ln.strip()), "")
        word = (
            basket_to_braid(Basket.from_text(text))
            if head == "basket"
            else DeltaBasket.from_text(text).word()
        )
    else:
        if not inputs:
            raise UsageError("render needs a word or --basket")
        word = _word(args, inputs[0])
    svg = render(word, args.mode)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        return EXIT_OK, ""
    return EXIT_OK, svg.rstrip("\n")


VERBS: dict[str, tuple[Callable, str]] = {
    "nf": (cmd_nf, "dual Garside normal form"),
    "eq": (cmd_eq, "decide whether two braids are equal"),
    "certify": (cmd_certify, "fiberedness certificate for infimum >= 1"),
    "verify": (cmd_verify, "re-check a certificate file"),
    "genus": (cmd_genus, "closure and Bennequin surface statistics"),
    "alex": (cmd_alex, "Alexander polynomial of the closure"),
    "yn-check": (cmd_yn_check, "δ-containment witness for a Y_n bandword"),
    "deltaize": (cmd_deltaize, "conjugate a positive Artin braid to contain δ"),
    "to-basket": (cmd_to_basket, "plumbing data of a braid with infimum >= 1"),
    "from-basket": (cmd_from_basket, "braid from a basket or plumbing file"),
    "add-crossings": (cmd_add_crossings, "add crossings to reach infimum >= 1"),
    "classify": (cmd_classify, "classify a word against an espalier"),
    "render": (cmd_render, "SVG circle or fence drawing"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--strands", type=int, help="number of strands")
    common.add_argument("--depth", type=int, help=f"search depth budget (env DEPTH, default {DEFAULT_DEPTH})")
    common.add_argument("--breadth", type=int, help=f"search breadth budget (env BREADTH, default {DEFAULT_BREADTH})")
    common.add_argument("--cycling-cap", type=int, help=f"cycling iterations (env CYCLING_CAP, default {DEFAULT_CYCLING_CAP})")
    common.add_argument("--batch", metavar="FILE", help="read one input per line from FILE ('-' for stdin)")

    parser = argparse.ArgumentParser(prog="dualgarside", description="Dual Garside braid toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for name, (_, help_text) in VERBS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("inputs", nargs="*")
        if name == "nf":
            p.add_argument("--word", action="store_true", help="print the normal form as a band word")
        if name == "eq":
            p.add_argument("--nf", action="store_true", help="inputs are normal forms")
        if name == "alex":
            p.add_argument("--monic", action="store_true", help="also report the monic obstruction")
        if name == "yn-check":
            p.add_argument("--search", action="store_true", help="also search the bandword for δ")
        if name == "classify":
            p.add_argument("--espalier", required=True, metavar="FILE")
        if name == "render":
            p.add_argument("--mode", choices=("circle", "fence"), default="circle")
            p.add_argument("--basket", metavar="FILE")
            p.add_argument("-o", "--output", metavar="FILE")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = VERBS[args.verb][0]
    try:
        args.depth = _budget(args.depth, "DEPTH", DEFAULT_DEPTH)
        args.breadth = _budget(args.breadth, "BREADTH", DEFAULT_BREADTH)
        args.cycling_cap = _budget(args.cycling_cap, "CYCLING_CAP", DEFAULT_CYCLING_CAP)
        if args.batch:
            jobs = [[ln.strip()] for ln in _read(args.batch).splitlines() if ln.strip()]
        else:
            jobs = [args.inputs]
        if not args.batch and not args.inputs and not (args.verb == "render" and args.basket):
            raise UsageError(f"{args.verb} needs an input")
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    code = EXIT_OK
    for job in jobs:
        try:
            rc, text = handler(args, job)
        except UsageError as exc:
            print(f"usage error: {exc}", file=err)
            return EXIT_USAGE
        except BudgetExhausted as exc:
            print(f"budget exhausted: {exc}", file=err)
            rc, text = EXIT_BUDGET, ""
        except (BraidError, OSError) as exc:
            print(f"error: {exc}", file=err)
            rc, text = EXIT_DOMAIN, ""
        if text:
            print(text, file=out)
        code = max(code, rc)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
