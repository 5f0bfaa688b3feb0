"""Command-line front end.

Subcommands::

    gw1 taut --i-count N --c "c1,c2,..." --tilde-c M
    gw1 theta --m M --c "c1,c2,..." [--method closed|recursive]
    gw1 diff --input FILE [--theorem 1|2|red] [--assume-zero] [--output text|json]
    gw1 hypersurface --n N --max-degree D [--emit KIND] [--output text|json|csv]
                     [--emit-intermediates] [--figure FILE.png]
    gw1 selftest

Exact rationals are always printed as "p/q" strings, never as decimals.
Exit codes: 1 for usage problems, 2 for input validation failures, 3 for
internal-consistency failures (selftest, identity violations, regression
mismatches).  Output is deterministic for fixed flags.

Setting the environment variable ``GW1_REGRESSION_STORE`` to a file path
pins hypersurface outputs: the first run for a given flag fingerprint is
recorded (atomically, write-then-rename), later runs must reproduce it
byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .difference import (
    ETA,
    ETA_TILDE,
    MissingEntryError,
    ValidationError,
    diff_descendant_free,
    diff_thm1,
    diff_thm2,
    eta_from_tilde,
    load_problem_table,
)
from .hypersurface import ConsistencyError, GenusOneTables, HypersurfaceConfig, genus_one_tables
from .rational import rat_to_str
from .selftest import run_selftest
from .taut import bracket
from .theta import theta_closed, theta_recursive

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_CONSISTENCY = 3

REGRESSION_STORE_ENV = "GW1_REGRESSION_STORE"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: {message}", EXIT_USAGE)


def _parse_exponents(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise CliError(f"bad exponent list {text!r}: {exc}", EXIT_VALIDATION)


# ---------------------------------------------------------------------------
# regression store


class RegressionStore:
    """Pins command outputs keyed by a flag fingerprint; writes are atomic."""

    def __init__(self, path: str):
        self.path = path

    def _load(self) -> dict:
        if not os.path.exists(self.path):
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"regression store {self.path} is unreadable: {exc}",
                           EXIT_CONSISTENCY)

    def check(self, fingerprint: str, output: str) -> str:
        """Record on first sight; afterwards demand byte identity.

        Returns "recorded" or "matched"; raises CliError on drift.
        """
        pins = self._load()
        if fingerprint in pins:
            if pins[fingerprint] != output:
                raise CliError(
                    f"regression mismatch for {fingerprint!r} against {self.path}",
                    EXIT_CONSISTENCY)
            return "matched"
        pins[fingerprint] = output
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gw1-pins-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(pins, fh, indent=1, sort_keys=True)
                fh.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return "recorded"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_taut(args) -> str:
    if args.i_count < 0:
        raise CliError("--i-count must be nonnegative", EXIT_VALIDATION)
    value = bracket(args.i_count, _parse_exponents(args.c), args.tilde_c)
    return rat_to_str(value)


def _cmd_theta(args) -> str:
    exponents = _parse_exponents(args.c)
    try:
        if args.method == "closed":
            value = theta_closed(args.m, exponents)
        else:
            value = theta_recursive(args.m, exponents)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    if value is None:
        return "inapplicable"
    return rat_to_str(value)


def _format_provenance(provenance) -> list:
    lines = []
    for m, J, coeff, part in provenance:
        jtext = "{" + ",".join(str(j) for j in J) + "}"
        lines.append(f"  m={m} J={jtext} coefficient={rat_to_str(coeff)} "
                     f"entry-sum={rat_to_str(part)}")
    return lines


def _cmd_diff(args) -> str:
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc}", EXIT_VALIDATION)
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.input} is not valid JSON: {exc}", EXIT_VALIDATION)
    try:
        problem, table = load_problem_table(obj)
        provenance = []
        notes = [f"m-sum truncated at m_max={table.m_max}"]
        if args.theorem == "1":
            if table.flavor == ETA_TILDE:
                table = eta_from_tilde(problem, table, args.assume_zero)
                notes.append("input was eta_tilde; applied the change of basis")
            value = diff_thm1(problem, table, args.assume_zero, provenance)
        elif args.theorem == "2":
            if table.flavor != ETA_TILDE:
                raise ValidationError("theorem 2 needs an eta_tilde table")
            value = diff_thm2(problem, table, args.assume_zero, provenance)
        else:
            value = diff_descendant_free(problem, table, args.assume_zero, provenance)
    except MissingEntryError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    except ValidationError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    if args.output == "json":
        return json.dumps({
            "value": rat_to_str(value),
            "theorem": args.theorem,
            "m_max": table.m_max,
            "notes": notes,
            "contributions": [
                {"m": m, "J": list(J), "coefficient": rat_to_str(coeff),
                 "entry_sum": rat_to_str(part)}
                for m, J, coeff, part in provenance
            ],
        }, indent=1, sort_keys=True)
    lines = [rat_to_str(value)]
    for note in notes:
        lines.append(f"# {note}")
    lines.append("# contributions (nonzero coefficients):")
    lines.extend(_format_provenance(provenance))
    return "\n".join(lines)


_EMIT_KINDS = ("standard", "reduced", "difference")


def _emitted(args) -> tuple:
    return _EMIT_KINDS if args.emit == "all" else (args.emit,)


def _hypersurface_text(tables: GenusOneTables, kinds) -> str:
    lines = ["d\t" + "\t".join(kinds)]
    for d in range(1, tables.config.qorder + 1):
        row = [str(d)]
        for kind in kinds:
            row.append(rat_to_str(getattr(tables, kind)[d - 1]))
        lines.append("\t".join(row))
    return "\n".join(lines)


def _hypersurface_csv(tables: GenusOneTables, kinds) -> str:
    lines = ["d," + ",".join(kinds)]
    for d in range(1, tables.config.qorder + 1):
        row = [str(d)]
        for kind in kinds:
            row.append(rat_to_str(getattr(tables, kind)[d - 1]))
        lines.append(",".join(row))
    return "\n".join(lines)


def _hypersurface_json(tables: GenusOneTables, kinds, intermediates: bool) -> str:
    obj = {
        "n": tables.config.n,
        "max_degree": tables.config.qorder,
        "series": {
            kind: {str(d): rat_to_str(getattr(tables, kind)[d - 1])
                   for d in range(1, tables.config.qorder + 1)}
            for kind in kinds
        },
    }
    if intermediates:
        mirror = tables.mirror
        obj["intermediates"] = {
            "T_minus_t": mirror.T_minus_t.to_json_obj(),
            "Qchange": mirror.Qchange.to_json_obj(),
            "Ipp": [s.to_json_obj() for s in mirror.Ipp],
            "Z": [s.to_json_obj() for s in mirror.Z],
            "DlnRbar": {str(p): s.to_json_obj()
                        for p, s in sorted(mirror.DlnRbar.items())},
        }
    return json.dumps(obj, indent=1, sort_keys=True)


def _render_figure(tables: GenusOneTables, kinds, path: str):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    degrees = range(1, tables.config.qorder + 1)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for kind in kinds:
        values = [abs(float(v)) for v in getattr(tables, kind)]
        xs = [d for d, v in zip(degrees, values) if v > 0]
        ys = [v for v in values if v > 0]
        if xs:
            ax.semilogy(xs, ys, marker="o", label=kind)
    ax.set_xlabel("degree d")
    ax.set_ylabel("|invariant| (float view of exact value)")
    ax.set_title(f"genus-one invariants, degree-{tables.config.n} hypersurface")
    if ax.lines:
        ax.legend()
    else:
        ax.text(0.5, 0.5, "all values zero", ha="center", va="center",
                transform=ax.transAxes)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_hypersurface(args) -> str:
    try:
        config = HypersurfaceConfig(n=args.n, qorder=args.max_degree)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_VALIDATION)
    if args.emit_intermediates and args.output != "json":
        raise CliError("--emit-intermediates needs --output json", EXIT_USAGE)
    try:
        tables = genus_one_tables(config)
    except ConsistencyError as exc:
        raise CliError(str(exc), EXIT_CONSISTENCY)
    kinds = _emitted(args)
    if args.output == "json":
        out = _hypersurface_json(tables, kinds, args.emit_intermediates)
    elif args.output == "csv":
        out = _hypersurface_csv(tables, kinds)
    else:
        out = _hypersurface_text(tables, kinds)
    store_path = os.environ.get(REGRESSION_STORE_ENV)
    if store_path:
        fingerprint = (f"hypersurface n={args.n} max-degree={args.max_degree} "
                       f"emit={args.emit} output={args.output} "
                       f"intermediates={args.emit_intermediates}")
        status = RegressionStore(store_path).check(fingerprint, out)
        print(f"# regression store: {status}", file=sys.stderr)
    if args.figure:
        _render_figure(tables, kinds, args.figure)
    return out


def _cmd_selftest(_args) -> str:
    results = run_selftest()
    lines = [f"PASS {name}" if ok else f"FAIL {name}: {detail}"
             for name, ok, detail in results]
    failed = sum(1 for _, ok, _ in results if not ok)
    lines.append(f"{'OK' if not failed else 'FAILED'}: "
                 f"{len(results) - failed} passed, {failed} failed")
    if failed:
        raise CliError("\n".join(lines), EXIT_CONSISTENCY)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gw1", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("taut", help="blowup intersection number")
    p.add_argument("--i-count", type=int, required=True)
    p.add_argument("--c", default="", help="comma-separated exponents, may be empty")
    p.add_argument("--tilde-c", type=int, required=True)
    p.set_defaults(handler=_cmd_taut)

    p = sub.add_parser("theta", help="difference-formula coefficient")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", default="", help="comma-separated exponents, may be empty")
    p.add_argument("--method", choices=("closed", "recursive"), default="closed")
    p.set_defaults(handler=_cmd_theta)

    p = sub.add_parser("diff", help="standard-minus-reduced evaluation from a table")
    p.add_argument("--input", required=True, help="JSON problem-plus-table file")
    p.add_argument("--theorem", choices=("1", "2", "red"), default="2")
    p.add_argument("--assume-zero", action="store_true",
                   help="treat missing table entries as zero")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_diff)

    p = sub.add_parser("hypersurface", help="genus-one invariants of a degree-n hypersurface")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--emit", choices=_EMIT_KINDS + ("all",), default="all")
    p.add_argument("--output", choices=("text", "json", "csv"), default="text")
    p.add_argument("--emit-intermediates", action="store_true",
                   help="include mirror-map and series intermediates (json only)")
    p.add_argument("--figure", metavar="FILE",
                   help="also render the emitted tables to an image file")
    p.set_defaults(handler=_cmd_hypersurface)

    p = sub.add_parser("selftest", help="run all invariant suites at desk scale")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "handler", None):
            parser.print_usage(sys.stderr)
            print("gw1: a subcommand is required", file=sys.stderr)
            return EXIT_USAGE
        print(args.handler(args))
        return EXIT_OK
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
