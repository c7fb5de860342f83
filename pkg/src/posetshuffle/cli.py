"""Command-line front end.

Subcommands: spectrum, survey, mix, sample, nshape, diameter, scan.
Poset input is inline JSON (--poset), a JSON file (--file), or a family
string (--family), one of antichain:n, chain:n, nshape:n,k,
sumchains:a,b,...

Exit codes: 0 success, 1 bad input, 2 violated bound or failed check,
3 resource cap (long runs need --long-running).

Reports are JSON unless --format csv; every written file records the tool
version, the seed (when any randomness was used), and the tolerance.
Files are written atomically. Commands that need randomness draw a seed
and print it when --seed is absent, so any run can be replayed.
"""

import argparse
import json
import os
import secrets
import sys
import tempfile

from . import __version__
from .chains import lazy_adjacent_matrix, random_to_random_matrix
from .errors import (
    NoConvergence,
    PosetShuffleError,
    TrivialPoset,
)
from .extensions import enumerate_extensions, format_word
from .mixing import (
    diameter,
    exact_mixing_time,
    sample_batch,
    scaling_experiment,
)
from .poset import (
    antichain,
    chain,
    n_shape_triple,
    poset_from_json_dict,
    sum_of_chains,
)
from .spectral import conjecture_check, rank_one_certificate
from .survey import (
    DEFAULT_MAX,
    SURVEY_MAX,
    monotonicity_scan,
    survey_csv_lines,
    verify_all,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_RESOURCE = 3

SCAN_QUICK_MAX = 5


class _InputError(Exception):
    pass


def _parse_family(text):
    name, _, argstr = text.partition(":")
    try:
        args = [int(x) for x in argstr.split(",")] if argstr else []
    except ValueError:
        raise _InputError(f"family arguments must be integers: {text!r}")
    if name == "antichain" and len(args) == 1:
        return antichain(args[0])
    if name == "chain" and len(args) == 1:
        return chain(args[0])
    if name == "nshape" and len(args) == 2:
        return n_shape_triple(args[0], args[1])[1]
    if name == "sumchains" and args:
        return sum_of_chains(args)
    raise _InputError(
        f"unknown family {text!r}; use antichain:n, chain:n, nshape:n,k "
        "or sumchains:a,b,..."
    )


def _load_poset(args):
    sources = [s for s in (args.poset, args.file, args.family) if s is not None]
    if len(sources) != 1:
        raise _InputError("give exactly one of --poset, --file, --family")
    if args.family is not None:
        return _parse_family(args.family)
    if args.poset is not None:
        text = args.poset
    else:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _InputError(f"cannot read {args.file}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"poset JSON does not parse: {exc}")
    if not isinstance(doc, dict):
        raise _InputError("poset JSON must be an object with n and covers")
    return poset_from_json_dict(doc)


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _stamp(doc, seed=None, tol=None):
    head = {"tool": "posetshuffle", "version": __version__}
    if seed is not None:
        head["seed"] = seed
    if tol is not None:
        head["tol"] = tol
    head.update(doc)
    return head


def _csv_stamp(seed=None, tol=None):
    line = f"# posetshuffle {__version__}"
    if seed is not None:
        line += f" seed={seed}"
    if tol is not None:
        line += f" tol={tol!r}"
    return line


def _emit_json(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)
        print(f"wrote {out}")


def _emit_csv(lines, out):
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)
        print(f"wrote {out}")


def _ensure_seed(args):
    if args.seed is None:
        args.seed = secrets.randbits(62)
        print(f"seed: {args.seed}")
    return args.seed


def _cmd_spectrum(args):
    p = _load_poset(args)
    try:
        rep = conjecture_check(p, tol=args.tol)
    except TrivialPoset:
        print(
            f"poset on {p.n} elements has a single linear extension; "
            "nothing to check"
        )
        return EXIT_OK
    doc = _stamp(rep.to_json_dict(), tol=args.tol)
    _emit_json(doc, args.out)
    verdict = "holds" if rep.satisfies_bound else "VIOLATED"
    print(
        f"n={rep.n} extensions={rep.num_extensions} "
        f"lambda2={rep.lambda2:.12g} bound={float(rep.bound):.12g} "
        f"tight={rep.is_tight} -> bound {verdict}"
    )
    return EXIT_OK if rep.satisfies_bound else EXIT_VIOLATION


def _cmd_survey(args):
    if not (2 <= args.nmax <= SURVEY_MAX):
        raise _InputError(f"--nmax must lie in 2..{SURVEY_MAX}")
    if args.nmax > DEFAULT_MAX and not args.long_running:
        print(
            f"a size-{args.nmax} survey is long-running; "
            "pass --long-running to confirm"
        )
        return EXIT_RESOURCE
    out = args.out or f"survey-n{args.nmax}.jsonl"
    seen = [0]

    def progress(rec):
        seen[0] += 1
        if seen[0] % 100 == 0:
            print(f"  {seen[0]} classes done (n={rec.n})", file=sys.stderr)

    summary, records = verify_all(
        args.nmax, args.tol, out_path=out, resume=True, progress=progress
    )
    print(f"wrote {out}")
    if args.format == "csv":
        stem, _ = os.path.splitext(out)
        _emit_csv(
            [_csv_stamp(tol=args.tol)] + survey_csv_lines(records),
            stem + ".csv",
        )
    print(
        f"classes={summary.total_classes} checked={summary.checked_classes} "
        f"bound_violations={len(summary.bound_violations)} "
        f"negative={len(summary.negative_violations)} "
        f"tightness_mismatches={len(summary.tightness_mismatches)}"
    )
    if not summary.clean:
        for covers in summary.bound_violations:
            rec = next(r for r in records if r.covers == covers)
            print(
                "BOUND VIOLATION "
                + json.dumps({"n": rec.n, "covers": [list(c) for c in covers],
                              "lambda2": rec.lambda2,
                              "bound": float(rec.bound)})
            )
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_mix(args):
    if args.nmax is not None:
        return _cmd_mix_scaling(args)
    p = _load_poset(args)
    eps = args.epsilon if args.epsilon is not None else 0.25
    ext = enumerate_extensions(p)
    if len(ext) == 1:
        doc = _stamp(
            {
                "poset": p.to_json_dict(),
                "epsilon": eps,
                "note": "single extension, already mixed",
                "shuffle": {"t_mix": 0},
            },
            tol=args.tol,
        )
        _emit_json(doc, args.out)
        return EXIT_OK
    rep = exact_mixing_time(random_to_random_matrix(p, ext), eps, tol=args.tol)
    lazy = exact_mixing_time(lazy_adjacent_matrix(p, ext), eps, tol=args.tol)
    doc = _stamp(
        {
            "poset": p.to_json_dict(),
            "epsilon": eps,
            "shuffle": rep.to_json_dict(),
            "lazy_adjacent": lazy.to_json_dict(),
            "per_step_work_ratio": p.n,
        },
        tol=args.tol,
    )
    _emit_json(doc, args.out)
    print(
        f"t_mix(shuffle)={rep.t_mix} in [{rep.lower_bound:.3f}, "
        f"{rep.upper_bound:.3f}]  t_mix(lazy adjacent)={lazy.t_mix}"
    )
    return EXIT_OK


def _cmd_mix_scaling(args):
    seed = _ensure_seed(args)
    eps = args.epsilon if args.epsilon is not None else 0.1
    if not (2 <= args.nmax <= 9):
        raise _InputError("--nmax must lie in 2..9 for the growth run")
    if args.nmax >= 9 and not args.long_running:
        print("size 9 is long-running; pass --long-running to confirm")
        return EXIT_RESOURCE
    n_from = 5 if args.nmax >= 5 else 2
    report = scaling_experiment(
        n_from, args.nmax, posets_per_n=args.count, epsilon=eps, seed=seed
    )
    if args.format == "json":
        _emit_json(_stamp(report.to_json_dict(), seed=seed), args.out)
    else:
        out = args.out or "scaling.csv"
        stem, suffix = os.path.splitext(out)
        _emit_csv(
            [_csv_stamp(seed=seed)] + report.detail_csv_lines(), out
        )
        _emit_csv(
            [_csv_stamp(seed=seed)] + report.summary_csv_lines(),
            stem + "-summary" + (suffix or ".csv"),
        )
    print(
        f"means={ {n: round(v, 3) for n, v in sorted(report.means.items())} } "
        f"residual n log n={report.residual_nlogn:.4f} "
        f"vs n^2 log n={report.residual_n2logn:.4f}"
    )
    return EXIT_OK


def _cmd_sample(args):
    p = _load_poset(args)
    seed = _ensure_seed(args)
    keep = args.format == "csv"
    batch = sample_batch(p, args.count, seed, keep_words=keep)
    if args.format == "csv":
        lines = [_csv_stamp(seed=seed), "word"]
        lines += [format_word(w) for w in batch.words]
        _emit_csv(lines, args.out)
    else:
        doc = _stamp(
            {"poset": p.to_json_dict(), **batch.to_json_dict()}, seed=seed
        )
        _emit_json(doc, args.out)
    print(
        f"{batch.count} samples, burn-in {batch.burn_in}, "
        f"chi-square p={batch.p_value:.4f}"
    )
    return EXIT_OK


def _cmd_nshape(args):
    if args.n is None or args.k is None:
        raise _InputError("nshape needs --n and --k")
    cert = rank_one_certificate(args.n, args.k)
    _emit_json(_stamp(cert.to_json_dict(), tol=args.tol), args.out)
    tau = cert.tau
    print(
        f"n={cert.n} k={cert.k} tau={tau.numerator}/{tau.denominator} "
        f"verified={cert.verified}"
    )
    return EXIT_OK if cert.verified else EXIT_VIOLATION


def _cmd_diameter(args):
    p = _load_poset(args)
    ext = enumerate_extensions(p)
    d = diameter(p, ext)
    doc = _stamp(
        {
            "poset": p.to_json_dict(),
            "num_extensions": len(ext),
            "diameter": d,
            "upper_bound": p.n,
        }
    )
    _emit_json(doc, args.out)
    print(f"diameter={d} (at most {p.n})")
    return EXIT_OK


def _cmd_scan(args):
    if not (2 <= args.nmax <= SURVEY_MAX):
        raise _InputError(f"--nmax must lie in 2..{SURVEY_MAX}")
    if args.nmax > SCAN_QUICK_MAX and not args.long_running:
        print(
            f"scanning size {args.nmax} tests inclusions over every "
            "relabeling; pass --long-running to confirm"
        )
        return EXIT_RESOURCE
    reports = [monotonicity_scan(n, args.tol) for n in range(2, args.nmax + 1)]
    doc = _stamp(
        {"n_max": args.nmax, "scans": [r.to_json_dict() for r in reports]},
        tol=args.tol,
    )
    _emit_json(doc, args.out)
    for r in reports:
        print(
            f"n={r.n}: {len(r.counterexamples)} reversal pairs, "
            f"{r.pairs_up_to_duality} up to duality, "
            f"duality-closed={r.duality_closed}"
        )
        if r.n == 5 and r.pairs_up_to_duality != 1:
            print(
                "  review: expected exactly one pair up to duality at n=5, "
                f"found {r.pairs_up_to_duality}"
            )
    return EXIT_OK


def _add_poset_flags(sub):
    sub.add_argument("--poset", help="inline poset JSON {n, covers}")
    sub.add_argument("--file", help="path to a poset JSON file")
    sub.add_argument(
        "--family",
        help="antichain:n | chain:n | nshape:n,k | sumchains:a,b,...",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="posetshuffle",
        description="Exact spectra, mixing times and samplers for the "
        "position shuffle on linear extensions.",
    )
    ap.add_argument(
        "--version", action="version", version=f"posetshuffle {__version__}"
    )
    subs = ap.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="eigenvalue bound check")
    _add_poset_flags(sp)
    sp.set_defaults(fn=_cmd_spectrum)

    sv = subs.add_parser("survey", help="bound check over all classes")
    sv.add_argument("--nmax", type=int, default=DEFAULT_MAX)
    sv.set_defaults(fn=_cmd_survey)

    mx = subs.add_parser(
        "mix", help="mixing report, or the growth experiment with --nmax"
    )
    _add_poset_flags(mx)
    mx.add_argument("--nmax", type=int, default=None)
    mx.add_argument("--count", type=int, default=100)
    mx.set_defaults(fn=_cmd_mix)

    sm = subs.add_parser("sample", help="draw near-uniform extensions")
    _add_poset_flags(sm)
    sm.add_argument("--count", type=int, default=1000)
    sm.set_defaults(fn=_cmd_sample)

    ns = subs.add_parser("nshape", help="rank-one correction certificate")
    ns.add_argument("--n", type=int)
    ns.add_argument("--k", type=int)
    ns.set_defaults(fn=_cmd_nshape)

    dm = subs.add_parser("diameter", help="move-graph diameter")
    _add_poset_flags(dm)
    dm.set_defaults(fn=_cmd_diameter)

    sc = subs.add_parser("scan", help="hunt eigenvalue order reversals")
    sc.add_argument("--nmax", type=int, default=SCAN_QUICK_MAX)
    sc.set_defaults(fn=_cmd_scan)

    for sub in (sp, sv, mx, sm, ns, dm, sc):
        sub.add_argument("--tol", type=float, default=1e-9)
        sub.add_argument("--epsilon", type=float, default=None)
        sub.add_argument("--seed", type=int, default=None)
        sub.add_argument("--format", choices=("json", "csv"), default="json")
        sub.add_argument("--out", default=None)
        sub.add_argument("--long-running", action="store_true")

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.tol <= 0:
        print("tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.epsilon is not None and not (0 < args.epsilon < 1):
        print("epsilon must sit strictly between 0 and 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoConvergence as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PosetShuffleError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"violated invariant: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
