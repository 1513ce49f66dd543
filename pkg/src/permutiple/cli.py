"""Command-line front end.

Exit codes: 0 success, 1 domain "no" (not a permutiple, empty witness list,
conjecture counterexample found), 2 usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cf import (
    ContinuedFraction,
    canonicalize,
    convergents,
    evaluate,
    format_cf,
    format_rational,
    from_rational,
    parse_rational,
    tails,
)
from .classify import (
    NotAPermutipleError,
    Permutation,
    Witness,
    classify,
    find_witnesses,
    format_permutation,
)
from .concat import concat_witness, palindromic_concat
from .constructors import (
    PerfectParameters,
    enumerate_three_digit_reverse,
    perfect_cyclic,
    perfect_from_parameters,
    perfect_reverse,
    three_digit_reverse,
    two_digit,
)
from .search import (
    CONJECTURE_IDS,
    SearchConfig,
    check_conjectures,
    exhaustive_search,
    export,
    witness_record,
)
from .surd import (
    QuadraticSurd,
    asymptotic_continuant_gap,
    infinite_perfect_stream,
    is_reduced,
    periodic_expansion,
    surd_multiplier,
    verify_surd_permutiple,
)


def _witness_line(w: Witness) -> str:
    parts = [
        f"{format_cf(w.cf)} = {w.k} * {format_cf(w.permuted)}",
        f"sigma {format_permutation(w.sigma)}",
        f"value {format_rational(w.value)}",
        f"flags {','.join(w.flags.true_names()) or '-'}",
    ]
    if not w.cf.is_canonical:
        parts.append("non-canonical")
    return " | ".join(parts)


def _emit_witness(w: Witness, as_json: bool) -> None:
    if as_json:
        print(json.dumps(witness_record(w), separators=(",", ":")))
    else:
        print(_witness_line(w))


def _default_jobs() -> int:
    return int(os.environ.get("PERMUTIPLE_JOBS", "1"))


def _cmd_eval(args) -> int:
    if args.rational:
        cf = from_rational(parse_rational(args.rational))
        print(format_cf(cf))
        return 0
    cf = ContinuedFraction.parse(args.cf)
    if args.canonical:
        cf = canonicalize(cf)
        print(format_cf(cf))
        return 0
    if args.json:
        value = evaluate(cf)
        record = {
            "digits": format_cf(cf),
            "value": {"p": str(value.numerator), "q": str(value.denominator)},
        }
        if args.convergents:
            record["convergents"] = [[str(p), str(q)] for p, q in convergents(cf)]
        if args.tails:
            record["tails"] = [format_rational(g) for g in tails(cf)]
        print(json.dumps(record, separators=(",", ":")))
        return 0
    print(format_rational(evaluate(cf)))
    if args.convergents:
        print(" ".join(f"{p}/{q}" for p, q in convergents(cf)))
    if args.tails:
        print(" ".join(format_rational(g) for g in tails(cf)))
    return 0


def _cmd_classify(args) -> int:
    cf = ContinuedFraction.parse(args.cf)
    sigma = Permutation.parse(args.sigma)
    witness = classify(cf, sigma, args.k, allow_noncanonical=args.allow_noncanonical)
    _emit_witness(witness, args.json)
    return 0


def _cmd_witnesses(args) -> int:
    cf = ContinuedFraction.parse(args.cf)
    found = find_witnesses(
        cf, allow_noncanonical=args.allow_noncanonical, all_sigmas=args.all_sigmas
    )
    for w in found:
        _emit_witness(w, args.json)
    if not found:
        print("no witnesses")
        return 1
    return 0


def _length_from_args(args, default):
    if args.len is not None:
        return args.len
    if args.len_min is not None or args.len_max is not None:
        low = args.len_min if args.len_min is not None else 2
        high = args.len_max if args.len_max is not None else low
        return (low, high)
    return default


def _cmd_search(args) -> int:
    length = _length_from_args(args, None)
    if length is None:
        raise ValueError("give --len or --len-min/--len-max")
    config = SearchConfig(
        length=length,
        max_digit=args.max_digit,
        k_min=args.k_min,
        k_max=args.k_max,
        canonical_only=not args.include_noncanonical,
        workers=args.jobs,
        dedupe=not args.all_sigmas,
    )
    witnesses = list(exhaustive_search(config))
    export(witnesses, args.format, args.out)
    print(f"{len(witnesses)} witnesses", file=sys.stderr)
    return 0


def _cmd_conjecture(args) -> int:
    if args.id in ("c1", "c4"):
        length = _length_from_args(args, 4)
        max_digit = args.max_digit if args.max_digit is not None else 20
    else:
        length = _length_from_args(args, (2, 5))
        max_digit = args.max_digit if args.max_digit is not None else 12
    config = SearchConfig(
        length=length,
        max_digit=max_digit,
        k_min=args.k_min,
        k_max=args.k_max,
        workers=args.jobs,
    )
    lengths = config.lengths()
    bounds = (
        f"lengths {lengths[0]}..{lengths[-1]}, digits <= {config.max_digit}"
        if len(lengths) > 1
        else f"length {lengths[0]}, digits <= {config.max_digit}"
    )
    report = check_conjectures(exhaustive_search(config), [args.id], bounds=bounds)[args.id]
    if args.json:
        print(
            json.dumps(
                {
                    "conjecture": report.conjecture,
                    "bounds": report.bounds,
                    "examined": report.examined,
                    "counterexamples": [witness_record(w) for w in report.counterexamples],
                    "wall_time": round(report.wall_time, 3),
                },
                separators=(",", ":"),
            )
        )
    else:
        print(report.summary())
        for w in report.counterexamples:
            print(_witness_line(w))
    return 0 if report.holds_within_bounds else 1


def _cmd_enumerate(args) -> int:
    family = args.family
    if family == "two-digit":
        witnesses = [two_digit(args.k, args.s)]
    elif family == "three-digit-reverse":
        if args.a0 is not None:
            one = three_digit_reverse(args.k, args.a0)
            if one is None:
                print(f"no 3-digit reverse multiple with k={args.k}, a0={args.a0}")
                return 1
            witnesses = [one]
        elif args.a0_max is not None:
            witnesses = enumerate_three_digit_reverse(args.k, args.a0_max)
        else:
            raise ValueError("give --a0 or --a0-max")
    elif family == "perfect":
        params = PerfectParameters(
            sigma=Permutation.parse(args.sigma),
            k=args.k,
            orbit_params=_parse_int_list(args.params),
        )
        witnesses = [perfect_from_parameters(params)]
    elif family == "perfect-reverse":
        witnesses = [perfect_reverse(args.k, _parse_int_list(args.params))]
    elif family == "perfect-cyclic":
        witnesses = [perfect_cyclic(args.k, args.length, args.ell, _parse_int_list(args.params))]
    else:  # argparse choices make this unreachable
        raise ValueError(f"unknown family {family!r}")
    for w in witnesses:
        _emit_witness(w, args.json)
    return 0


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in "".join(text.split()).split(","))


def _cmd_concat(args) -> int:
    if args.palindrome:
        if args.k is None or not args.cf:
            raise ValueError("palindromic mode needs --k and one or more --cf")
        pieces = []
        for text in args.cf:
            cf = ContinuedFraction.parse(text)
            pieces.append(
                classify(cf, Permutation.reversal(len(cf)), args.k, allow_noncanonical=True)
            )
        witness = palindromic_concat(pieces, args.k)
    else:
        if not (args.cf1 and args.sigma1 and args.cf2 and args.sigma2):
            raise ValueError("give --cf1/--sigma1 and --cf2/--sigma2, or use --palindrome")
        w1 = classify(
            ContinuedFraction.parse(args.cf1),
            Permutation.parse(args.sigma1),
            allow_noncanonical=True,
        )
        w2 = classify(
            ContinuedFraction.parse(args.cf2),
            Permutation.parse(args.sigma2),
            allow_noncanonical=True,
        )
        witness = concat_witness(w1, w2)
    _emit_witness(witness, args.json)
    return 0


def _parse_stream_params(expr: str):
    if expr.startswith("const:"):
        value = int(expr.split(":", 1)[1])
        return lambda i: value
    if expr.startswith("pow:"):
        base = int(expr.split(":", 1)[1])
        return lambda i: base**i
    return _parse_int_list(expr)


def _cmd_surd(args) -> int:
    stream_mode = args.k is not None or args.params is not None
    probe_mode = args.a is not None or args.b is not None or args.c is not None
    if stream_mode and probe_mode:
        raise ValueError("give either --a/--b/--c or --k/--params, not both")
    if stream_mode:
        if args.k is None or args.params is None:
            raise ValueError("stream mode needs both --k and --params")
        stream = infinite_perfect_stream(args.k, _parse_stream_params(args.params))
        digits = stream.prefix(args.digits)
        permuted = stream.permuted_prefix(args.digits)
        if args.json:
            record = {
                "k": args.k,
                "digits": format_cf(ContinuedFraction(digits)),
                "permuted": format_cf(ContinuedFraction(permuted)),
            }
            if args.gaps:
                record["gaps"] = [str(g) for g in asymptotic_continuant_gap(stream, args.gaps)]
            print(json.dumps(record, separators=(",", ":")))
        else:
            print(f"digits {format_cf(ContinuedFraction(digits))}")
            print(f"permuted {format_cf(ContinuedFraction(permuted))}")
            if args.gaps:
                gaps = asymptotic_continuant_gap(stream, args.gaps)
                print("gaps " + ",".join(str(g) for g in gaps))
        return 0
    if args.a is None or args.b is None or args.c is None:
        raise ValueError("probe mode needs --a, --b and --c")
    surd = QuadraticSurd(args.a, args.b, args.c)
    k = surd_multiplier(surd)
    preperiod, period = periodic_expansion(surd)
    if args.json:
        record = {
            "surd": str(surd),
            "k": k,
            "reduced": is_reduced(surd),
            "preperiod": list(preperiod),
            "period": list(period),
        }
        if k is not None:
            report = verify_surd_permutiple(surd, args.depth)
            record["digits"] = list(report.digits)
            record["scaled_digits"] = list(report.scaled_digits)
            record["alignment"] = report.alignment
            record["multiset_agree"] = report.multiset_agree
            record["verdict"] = report.verdict
        print(json.dumps(record, separators=(",", ":")))
        return 0 if k is not None else 1
    print(f"surd {surd}")
    print(f"reduced {str(is_reduced(surd)).lower()}")
    print("preperiod " + (",".join(map(str, preperiod)) or "-"))
    print("period " + ",".join(map(str, period)))
    if k is None:
        print("multiplier (b-a^2)/c is not an integer >= 2")
        return 1
    print(f"k {k}")
    report = verify_surd_permutiple(surd, args.depth)
    print("digits " + ",".join(map(str, report.digits)))
    print("scaled " + ",".join(map(str, report.scaled_digits)))
    agreement = "agree" if report.multiset_agree else "differ"
    print(f"probe {report.verdict} | alignment {report.alignment or '-'} | multisets {agreement}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permutiple",
        description="Exact continued-fraction permutiple toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a digit string exactly")
    p.add_argument("--cf", help="digit string a0;a1,...,an")
    p.add_argument("--rational", help="value p/q to expand into digits")
    p.add_argument("--convergents", action="store_true")
    p.add_argument("--tails", action="store_true")
    p.add_argument("--canonical", action="store_true", help="print the canonical form")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("classify", help="verify and classify a (cf, sigma[, k]) triple")
    p.add_argument("--cf", required=True)
    p.add_argument("--sigma", required=True, help="image list s0,s1,...,sn")
    p.add_argument("--k", type=int)
    p.add_argument("--allow-noncanonical", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("witnesses", help="all witnesses of a digit string")
    p.add_argument("--cf", required=True)
    p.add_argument("--all-sigmas", action="store_true")
    p.add_argument("--allow-noncanonical", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_witnesses)

    p = sub.add_parser("search", help="exhaustive search within digit bounds")
    p.add_argument("--len", type=int)
    p.add_argument("--len-min", type=int)
    p.add_argument("--len-max", type=int)
    p.add_argument("--max-digit", type=int, required=True)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--out", default="-")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--all-sigmas", action="store_true", help="one witness per permutation")
    p.add_argument("--include-noncanonical", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("conjecture", help="scan a conjecture, reporting counterexamples")
    p.add_argument("id", choices=CONJECTURE_IDS)
    p.add_argument("--len", type=int)
    p.add_argument("--len-min", type=int)
    p.add_argument("--len-max", type=int)
    p.add_argument("--max-digit", type=int)
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("enumerate", help="closed-form permutiple families")
    fam = p.add_subparsers(dest="family", required=True)

    f = fam.add_parser("two-digit")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_enumerate)

    f = fam.add_parser("three-digit-reverse")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--a0", type=int)
    f.add_argument("--a0-max", type=int)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_enumerate)

    f = fam.add_parser("perfect")
    f.add_argument("--sigma", required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--params", required=True, help="one positive integer per cycle")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_enumerate)

    f = fam.add_parser("perfect-reverse")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--params", required=True, help="s0,s1,... for the first half")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_enumerate)

    f = fam.add_parser("perfect-cyclic")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--length", type=int, required=True)
    f.add_argument("--ell", type=int, required=True)
    f.add_argument("--params", required=True, help="one positive integer per rotation orbit")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("concat", help="concatenate witnesses")
    p.add_argument("--cf1")
    p.add_argument("--sigma1")
    p.add_argument("--cf2")
    p.add_argument("--sigma2")
    p.add_argument("--palindrome", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--cf", action="append", help="repeatable in palindromic mode")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_concat)

    p = sub.add_parser("surd", help="quadratic surd probe or perfect stream")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--k", type=int, help="stream mode: multiplier")
    p.add_argument("--params", help="stream mode: const:<v>, pow:<base>, or a comma list")
    p.add_argument("--digits", type=int, default=20)
    p.add_argument("--gaps", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_surd)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotAPermutipleError as exc:
        print(f"not a permutiple: {exc}")
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
