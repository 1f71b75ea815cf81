"""Command-line driver for the numerical experiments.

Usage::

    siegel-pw run plancherel --n 1 --a 1 --seed 7 --out results/
    siegel-pw --experiment sinc-closed-form
    siegel-pw run pw-frame --schema
    siegel-pw list

Parameters come from the defaults, then a ``--config`` file of
``key = value`` lines, then command-line flags (flags win). Each run writes
``<out>/<experiment>.csv`` and ``<out>/<experiment>.summary.txt`` and prints
the one-line summary. Exit status: 0 pass, 1 fail, 2 bad usage.
"""

import argparse
import csv
import io
import os
import sys
import tempfile

from .experiments import DEFAULTS, EXPERIMENTS, SCHEMAS, run_experiment

# flag name -> (config key, type)
PARAM_FLAGS = {
    "n": ("n", int),
    "a": ("a", float),
    "b": ("b", float),
    "s": ("s", float),
    "N": ("N", int),
    "Q": ("Q", int),
    "R-z": ("R_z", float),
    "K-t": ("K_t", int),
    "levels": ("levels", int),
}


class UsageError(Exception):
    pass


def parse_value(text):
    text = text.strip()
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def read_config(path):
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = parse_value(value)
    return out


def validate(params):
    checks = [
        ("n", lambda v: isinstance(v, int) and 1 <= v <= 3, "an integer in 1..3"),
        ("a", lambda v: v > 0, "positive"),
        ("b", lambda v: v > 0, "positive"),
        ("N", lambda v: isinstance(v, int) and v >= 2, "an integer >= 2"),
        ("Q", lambda v: isinstance(v, int) and v >= 4, "an integer >= 4"),
        ("R_z", lambda v: v > 0, "positive"),
        ("K_t", lambda v: isinstance(v, int) and v >= 1, "a positive integer"),
        ("levels", lambda v: isinstance(v, int) and 0 <= v <= 20, "an integer in 0..20"),
        ("seed", lambda v: isinstance(v, int) and 0 <= v < 2 ** 64, "an unsigned 64-bit integer"),
    ]
    for key, ok, what in checks:
        if key in params and params[key] is not None:
            try:
                good = ok(params[key])
            except TypeError:
                good = False
            if not good:
                raise UsageError(f"parameter {key}={params[key]!r} must be {what}")
    s, n = params.get("s"), params.get("n", 1)
    if s is not None and not 0 <= s < n + 1:
        raise UsageError(f"smoothness s={s} must lie in [0, n+1)")


def build_parser():
    p = argparse.ArgumentParser(
        prog="siegel-pw",
        description="Run Paley-Wiener / Fock sampling experiments and write CSV output.",
    )
    p.add_argument("words", nargs="*", help="'run NAME', 'NAME' or 'list'")
    p.add_argument("--experiment", help="experiment name (alternative to 'run NAME')")
    p.add_argument("--config", help="flat key = value parameter file")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--seed", type=int, help="random seed (u64)")
    p.add_argument("--schema", action="store_true", help="print the CSV columns and exit")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="extra experiment parameter, may repeat")
    for flag, (key, typ) in PARAM_FLAGS.items():
        p.add_argument(f"--{flag}", dest=key, type=typ, default=None)
    return p


def _experiment_name(args):
    words = list(args.words)
    if words[:1] == ["run"]:
        words = words[1:]
    if args.experiment:
        if words and words != [args.experiment]:
            raise UsageError("experiment given twice with different names")
        return args.experiment
    if len(words) != 1:
        raise UsageError("expected exactly one experiment name")
    return words[0]


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return repr(v)
    if hasattr(v, "item"):
        return _fmt(v.item())
    return str(v)


def result_csv(res):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(res.header)
    for row in res.rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.words == ["list"]:
            for name in EXPERIMENTS:
                print(name)
            return 0
        name = _experiment_name(args)
        if name not in EXPERIMENTS:
            raise UsageError(f"unknown experiment {name!r}; choose from: {', '.join(EXPERIMENTS)}")
        if args.schema:
            print(",".join(SCHEMAS[name]))
            return 0
        params = read_config(args.config) if args.config else {}
        for item in args.set:
            if "=" not in item:
                raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
            k, v = item.split("=", 1)
            params[k.strip().replace("-", "_")] = parse_value(v)
        for _, (key, _) in PARAM_FLAGS.items():
            val = getattr(args, key)
            if val is not None:
                params[key] = val
        if args.seed is not None:
            params["seed"] = args.seed
        params.setdefault("seed", DEFAULTS["seed"])
        validate(params)
        os.makedirs(args.out, exist_ok=True)
    except (UsageError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        res = run_experiment(name, **params)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_atomic(os.path.join(args.out, f"{name}.csv"), result_csv(res))
    _write_atomic(os.path.join(args.out, f"{name}.summary.txt"), res.summary() + "\n")
    print(res.summary())
    return 0 if res.passed else 1


if __name__ == "__main__":
    sys.exit(main())
