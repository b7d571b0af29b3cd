"""The acceptance battery, shared by ``sptorsion selftest`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .pairs import count_classes, enumerate_classes, galois_twist, nc_quotient, odd_divisors
from .splitting import split_summary
from .sunits import SUPPORTED_PRIMES, norm_index, norm_kernel, norm_quotient, s_unit_basis
from .symplectic import centralizer_structure, invariant_of_matrix, matrix_from_pair, verify

GRID_P = (3, 5, 7, 11, 13)
GRID_N = (1, 2, 3, 5, 6, 7, 10, 14, 15, 21, 35)
ORACLE_N = (1, 2, 3, 6)
ORACLE_LISTED = {1: 2, 2: 4, 3: 4, 6: 8}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"[{status}] criterion {self.number}: {self.title} | {self.detail} | {self.seconds:.1f}s{budget}"


def _timed(number: int, title: str, limit: float | None, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # a crash is a failure with a diagnostic, not a traceback
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        ok, detail = False, detail + f"; exceeded time limit {limit}s"
    return CriterionResult(number, title, ok, detail, dt, limit)


def _ps(max_p: int, ps=GRID_P) -> list[int]:
    return [p for p in ps if p <= max_p]


def criterion_1(max_p: int = 13) -> CriterionResult:
    def body():
        bad = []
        checked = 0
        for p in _ps(max_p):
            for n in GRID_N:
                ni = norm_index(p, n)
                size = len(enumerate_classes(p, n))
                cc = count_classes(p, n)
                checked += 1
                if not (ni.formula_value == ni.constructive_value == size == cc):
                    bad.append((p, n, ni.formula_value, ni.constructive_value, size, cc))
        return not bad, f"{checked} (p, n) pairs, mismatches: {bad or 'none'}"

    return _timed(1, "count formula two-path agreement", 120, body)


def criterion_2(height: int = 6) -> CriterionResult:
    from .oracle import oracle_report

    def body():
        observed, ok = {}, True
        for n in ORACLE_N:
            r = oracle_report(n, height)
            observed[n] = r["invariant_classes_observed"]
            ok &= r["invariant_classes_observed"] == r["predicted_count"] == count_classes(3, n)
            ok &= r["unsound_witnesses"] == 0
            # every observed class is hit by the constructed representative
            for v in r["observed_vectors"]:
                c = enumerate_classes(3, n).classes[int("".join(map(str, v)), 2)]
                ok &= invariant_of_matrix(matrix_from_pair(c)) == c
        predicted = {n: count_classes(3, n) for n in ORACLE_N}
        listed = ", ".join(str(ORACLE_LISTED[n]) for n in ORACLE_N)
        detail = f"height {height}: observed {observed}, formula {predicted}; originally listed values {listed}"
        return ok, detail

    return _timed(2, "oracle validation at p = 3", 60, body)


def _construction_grid(max_p: int):
    for p in _ps(max_p, (3, 5, 7)):
        for n in sorted({1, 2, 7, p, 2 * p}):
            for c in enumerate_classes(p, n):
                yield p, n, c


def criterion_3(max_p: int = 7) -> CriterionResult:
    def body():
        bad, count = [], 0
        for p, n, c in _construction_grid(max_p):
            checks = verify(matrix_from_pair(c))
            count += 1
            if not all(checks.values()):
                bad.append((p, n, c.bits(), checks))
        return not bad, f"{count} matrices verified, failures: {bad or 'none'}"

    return _timed(3, "construction soundness", 120, body)


def criterion_4(max_p: int = 7) -> CriterionResult:
    def body():
        bad, count = [], 0
        for p, n, c in _construction_grid(max_p):
            m = matrix_from_pair(c)
            if invariant_of_matrix(m) != c:
                bad.append((p, n, c.bits(), "round trip"))
            power = m
            for l in range(1, p):
                k = pow(l, -1, p)
                if invariant_of_matrix(power) != galois_twist(c, k):
                    bad.append((p, n, c.bits(), f"power {l}"))
                power = power @ m
            count += 1
        return not bad, f"{count} classes, all powers checked, failures: {bad or 'none'}"

    return _timed(4, "bijection round trip", None, body)


def criterion_5(max_p: int = 13) -> CriterionResult:
    def body():
        ok, parts = True, []
        for p in _ps(max_p, (5, 7, 13)):
            js = [nc_quotient(c).j for c in enumerate_classes(p, p)]
            seen = sorted(set(js))
            ok &= all(j % 2 == 1 and (p - 1) % j == 0 for j in js)
            if p == 5:
                ok &= seen == [1]
            else:
                ok &= 3 in seen and 1 in seen
            ok &= set(odd_divisors(p - 1)) <= set(seen)
            parts.append(f"p={p}: j values {seen}")
        return ok, "; ".join(parts)

    return _timed(5, "normalizer quotient orders", 60, body)


def criterion_6(max_p: int = 19) -> CriterionResult:
    def body():
        bad, count = [], 0
        for p in [q for q in SUPPORTED_PRIMES if q <= max_p]:
            for n in sorted(set(GRID_N) | {p}):
                for c in enumerate_classes(p, n):
                    count += 1
                    if galois_twist(c, p - 1) == c:
                        bad.append((p, n, c.bits()))
        return not bad, f"{count} classes twisted by conjugation, fixed: {bad or 'none'}"

    return _timed(6, "conjugation twist moves every class", None, body)


def criterion_7(max_p: int = 19) -> CriterionResult:
    def body():
        ok, notes = True, []
        ps = [q for q in SUPPORTED_PRIMES if q <= max_p]
        for p in ps:
            ok &= norm_kernel(p, 1).torsion_order == 2 * p
            for n in sorted(set(GRID_N) | {p, 3 * p}):
                cs = centralizer_structure(p, n)
                nk = norm_kernel(p, n)
                ok &= all(w * w.conj() == 1 for w in nk.generators)
                ok &= isinstance(cs["agree"], bool)
                if n % p:
                    ok &= cs["rank_first_principles"] == split_summary(p, n).sigma == cs["rank_formula"]
                elif not cs["agree"]:
                    notes.append(f"({p},{n}): kernel rank {cs['rank_first_principles']} vs sigma+1 = {cs['rank_formula']}")
        return ok, "torsion 2p for n = 1; flagged: " + ("; ".join(notes) or "none")

    return _timed(7, "centralizer structure", 30, body)


def criterion_8(max_p: int = 13, samples: int = 100, seed: int = 20240) -> CriterionResult:
    def body():
        rng = random.Random(seed)
        bad, count = [], 0
        for p in _ps(max_p):
            for n in GRID_N:
                full = s_unit_basis(p, n, "full")
                for _ in range(samples):
                    t = rng.randrange(full.torsion_order)
                    exps = [rng.randint(-2, 2) for _ in full.free]
                    d = full.decompose(full.element(t, exps))
                    if (d.torsion, list(d.exponents)) != (t, exps):
                        bad.append((p, n, "decompose"))
                nq = norm_quotient(p, n)
                real = nq.real
                for _ in range(samples):
                    u = real.element(rng.randrange(2), [rng.randint(-2, 2) for _ in real.free])
                    v = real.element(rng.randrange(2), [rng.randint(-2, 2) for _ in real.free])
                    lhs = nq.vector(u * v)
                    rhs = tuple(a ^ b for a, b in zip(nq.vector(u), nq.vector(v)))
                    if lhs != rhs:
                        bad.append((p, n, "homomorphism"))
                count += 1
        return not bad, f"{count} (p, n) pairs x {samples} samples, failures: {bad[:5] or 'none'}"

    return _timed(8, "unit machinery", 60, body)


def run_all(max_p: int = 19, oracle_height: int = 6) -> list[CriterionResult]:
    return [
        criterion_1(min(max_p, 13)),
        criterion_2(oracle_height),
        criterion_3(min(max_p, 7)),
        criterion_4(min(max_p, 7)),
        criterion_5(min(max_p, 13)),
        criterion_6(max_p),
        criterion_7(max_p),
        criterion_8(min(max_p, 13)),
    ]
