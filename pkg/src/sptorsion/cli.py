"""Command-line interface: ``sptorsion classify | construct | orbits | verify | selftest``."""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback

from . import __version__
from .errors import DomainError, SearchExhausted, UsageError, VerificationError
from .integers import ZInv, require_odd_prime

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message format uniform
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ring_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    sp.add_argument("--n", type=int, required=True, help="nonzero integer; primes dividing it are inverted")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sptorsion", description="p-torsion conjugacy classes in Sp(p-1, Z[1/n]).")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", help="count classes and list their invariants")
    _ring_args(sp)
    sp.add_argument("--class-number", type=int, default=None, help="ideal class number, required for p >= 23")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identity)")

    sp = sub.add_parser("construct", help="build the matrix of one class")
    _ring_args(sp)
    sp.add_argument("--class", dest="bits", required=True, help="class vector as a 0/1 string")
    sp.add_argument("--out", default=None, help="write the matrix file here instead of stdout")

    sp = sub.add_parser("orbits", help="stabilizers and orbit orders under Galois twisting")
    _ring_args(sp)
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("verify", help="check a matrix file and report its class")
    _ring_args(sp)
    sp.add_argument("--matrix", required=True, help="matrix file (JSON)")

    sp = sub.add_parser("selftest", help="run the acceptance battery")
    sp.add_argument("--max-p", type=int, default=7)
    sp.add_argument("--oracle-height", type=int, default=6)
    return ap


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# -- commands ----------------------------------------------------------------------

def classify_report(p: int, n: int, class_number: int | None = None) -> dict:
    from .pairs import count_classes, nc_quotient, enumerate_classes
    from .splitting import split_summary
    from .sunits import SUPPORTED_PRIMES, norm_index, norm_quotient
    from .symplectic import centralizer_structure

    require_odd_prime(p)
    ring = ZInv(n)
    summary = split_summary(p, n)
    count = count_classes(p, n, class_number)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "inputs": {"p": p, "n": n, "radical": ring.n, "class_number": class_number},
        "split": summary.to_json(),
        "counts": {"count": count, "formula_index": 2 ** ((p - 1) // 2 + summary.tau)},
        "classes": None,
        "centralizer": None,
    }
    if p not in SUPPORTED_PRIMES:
        return report
    ni = norm_index(p, n)
    report["counts"].update(constructive_index=ni.constructive_value, agree=ni.agree)
    report["quotient_basis"] = norm_quotient(p, n).labels()
    rows = []
    for c in enumerate_classes(p, n):
        q = nc_quotient(c)
        rows.append({**c.to_json(), "j": q.j, "stabilizer": list(q.stabilizer)})
    report["classes"] = rows
    report["centralizer"] = centralizer_structure(p, n)
    return report


def _classify_text(r: dict) -> str:
    s = r["split"]
    out = [
        f"p = {r['inputs']['p']}, n = {r['inputs']['n']} (radical {r['inputs']['radical']})",
        f"tau = {s['tau']}, sigma = {s['sigma']}, p | n: {s['p_divides_n']}",
    ]
    for rec in s["records"]:
        out.append(f"  q = {rec['q']}: f = {rec['f']}, {rec['kind']}, {rec['count']} real prime(s)")
    c = r["counts"]
    line = f"classes: {c['count']}  (index 2^((p-1)/2+tau) = {c['formula_index']}"
    if "constructive_index" in c:
        line += f", constructive {c['constructive_index']}"
    out.append(line + ")")
    if r["classes"] is not None:
        out.append("basis: " + " ".join(r["quotient_basis"]))
        for row in r["classes"]:
            bits = "".join(map(str, row["vector"]))
            out.append(f"  [{bits}] j = {row['j']}  stabilizer {row['stabilizer']}")
    if r["centralizer"] is not None:
        z = r["centralizer"]
        out.append(
            f"centralizer: Z/{z['torsion']} x Z^{z['rank_first_principles']}"
            f"  (sigma+ = {z['rank_formula']}, {'agrees' if z['agree'] else 'DISAGREES'})"
        )
    if "timing_seconds" in r:
        out.append(f"time: {r['timing_seconds']:.3f}s")
    return "\n".join(out)


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    report = classify_report(args.p, args.n, args.class_number)
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    print(_dump(report) if args.format == "json" else _classify_text(report))
    return EXIT_OK


def cmd_construct(args) -> int:
    from .pairs import class_from_vector, parse_bits
    from .symplectic import matrix_from_pair, write_matrix

    c = class_from_vector(args.p, args.n, parse_bits(args.bits))
    m = matrix_from_pair(c)
    if args.out:
        write_matrix(m, args.out)
        print(f"wrote {args.out}")
    else:
        print(_dump(m.to_json()))
    return EXIT_OK


def cmd_orbits(args) -> int:
    from .pairs import orbit_report

    r = orbit_report(args.p, args.n)
    if args.format == "json":
        print(_dump({"schema_version": SCHEMA_VERSION, **r}))
    else:
        for row in r["classes"]:
            bits = "".join(map(str, row["vector"]))
            print(f"[{bits}] j = {row['j']}  stabilizer {row['stabilizer']}")
        print(f"odd j covered: {r['odd_divisors_covered']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .symplectic import invariant_of_matrix, read_matrix, verify

    m = read_matrix(args.matrix)
    if (m.p, m.n) != (args.p, ZInv(args.n).n):
        raise UsageError(f"matrix file is for p={m.p}, n={m.n}, not p={args.p}, n={ZInv(args.n).n}")
    checks = verify(m)
    report = {"schema_version": SCHEMA_VERSION, "command": "verify", "checks": checks, "class": None}
    if all(checks.values()):
        report["class"] = invariant_of_matrix(m).to_json()
    print(_dump(report))
    return EXIT_OK if all(checks.values()) else EXIT_DOMAIN


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    if args.max_p < 3 or args.oracle_height < 1:
        raise UsageError("--max-p must be >= 3 and --oracle-height >= 1")
    results = run_all(args.max_p, args.oracle_height)
    for r in results:
        print(r.line(), flush=True)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_INTERNAL


COMMANDS = {
    "classify": cmd_classify,
    "construct": cmd_construct,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (VerificationError, SearchExhausted) as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
