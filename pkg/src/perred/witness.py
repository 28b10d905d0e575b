"""Witness primes and running-minimum scans of the periodic-point ratio.

For a prime q the ratio is ``(r(q-1, d) + r(q+1, d)) / (2q)``, the leading
term of the periodic proportion of ``T_d`` on F_q.  Degree-one primes of a
number field with root-of-unity order ``m_K`` are modelled by rational
primes ``q = 1 (mod m_K)``.  Congruence systems force ``q - 1`` and
``q + 1`` to absorb high powers of the primes of ``d``, which drives the
ratio down toward the classified liminf.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .classify import chebyshev_case
from .numtheory import _sieve_segment, coprime_part, crt_solve, factorize, is_prime, prime_stream, valuation

DEFAULT_EXPONENT = 4
MAX_MODULUS = 10**8


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceSystem:
    d: int
    m_K: int
    case_id: int
    congruences: Tuple[Tuple[int, int], ...]
    solution: Optional[Tuple[int, int]]

    @property
    def solvable(self) -> bool:
        return self.solution is not None


@dataclass(frozen=True)
class ScanRecord:
    q: int
    r_minus: int
    r_plus: int
    ratio: Fraction
    running_min: Fraction
    running_min_text: str = field(compare=False, default="")

    @property
    def ratio_text(self) -> str:
        """Unreduced ``(r_minus + r_plus)/(2q)``."""
        return f"{self.r_minus + self.r_plus}/{2 * self.q}"


def _lcm(cong) -> int:
    return math.lcm(*(n for _, n in cong))


def build_witness_system(
    d: int,
    m_K: int,
    exponents: Optional[Dict[int, int]] = None,
    case: Optional[int] = None,
) -> CongruenceSystem:
    """Congruences ``x = 1 (mod m_K)`` plus prime-power conditions for ``(d, m_K)``.

    Cases 5 and 8 get ``x = 1 (mod p1^m1)`` and ``x = -1 (mod p2^m2)``;
    the ``-1`` prime is 2 when ``v_2(m_K) = 1`` and 2 divides ``d``,
    otherwise the smallest prime of ``d`` not dividing ``m_K``.  Other
    cases get ``x = 1 (mod p^m)`` for each prime named in ``exponents``
    (default: the smallest prime of ``d``).  Unspecified exponents default
    to 4, lowered while the combined modulus exceeds 10**8.
    """
    case_id = chebyshev_case(d, m_K)
    if case is not None and case != case_id:
        raise WitnessError(f"(d={d}, m_K={m_K}) falls in case {case_id}, not case {case}")
    primes = factorize(d).primes
    exps = dict(exponents or {})
    stray = set(exps) - set(primes)
    if stray:
        raise WitnessError(f"exponents given for primes {sorted(stray)} not dividing d={d}")

    if case_id in (5, 8):
        if 2 in primes and valuation(m_K, 2) == 1:
            p2 = 2
        else:
            p2 = min(q for q in primes if m_K % q)
        p1 = min(q for q in primes if q != p2)
        roles = [(p1, 1, valuation(m_K, p1)), (p2, -1, max(1, valuation(m_K, p2)))]
    else:
        chosen = sorted(exps) if exps else [primes[0]]
        floor = valuation(m_K, 2) if case_id == 10 else 1
        roles = [(q, 1, max(1, floor)) for q in chosen]

    chosen_exps = {}
    for q, _, least in roles:
        if q in exps:
            if exps[q] < least:
                raise WitnessError(f"exponent for {q} must be at least {least}")
            chosen_exps[q] = exps[q]
        else:
            chosen_exps[q] = max(DEFAULT_EXPONENT, least)
    auto = [q for q, _, _ in roles if q not in exps]
    least_of = {q: least for q, _, least in roles}

    def congruences():
        return [(1, m_K)] + [(res, q ** chosen_exps[q]) for q, res, _ in roles]

    while _lcm(congruences()) > MAX_MODULUS:
        shrinkable = [q for q in auto if chosen_exps[q] > least_of[q]]
        if not shrinkable:
            break
        big = max(shrinkable, key=lambda q: q ** chosen_exps[q])
        chosen_exps[big] -= 1

    cong = tuple(congruences())
    return CongruenceSystem(d, m_K, case_id, cong, crt_solve(cong))


def make_record(q: int, d: int, running_min: Optional[Fraction], running_text: str) -> ScanRecord:
    rm, rp = coprime_part(q - 1, d), coprime_part(q + 1, d)
    ratio = Fraction(rm + rp, 2 * q)
    if running_min is None or ratio < running_min:
        running_min, running_text = ratio, f"{rm + rp}/{2 * q}"
    return ScanRecord(q, rm, rp, ratio, running_min, running_text)


def recheck(system: CongruenceSystem, q: int) -> bool:
    """Independent check that ``n_i | (q - a_i)`` for every congruence."""
    return all((q - a) % n == 0 for a, n in system.congruences)


@dataclass
class WitnessResult:
    records: List[ScanRecord]
    complete: bool


def find_witness_primes(
    system: CongruenceSystem,
    count: int,
    limit: int,
    max_ratio: Optional[Fraction] = None,
) -> WitnessResult:
    """First ``count`` primes ``<= limit`` solving ``system``.

    With ``max_ratio`` only primes whose ratio is below it are kept.
    ``complete`` is False when fewer than ``count`` were found.
    """
    if not system.solvable:
        raise WitnessError(f"congruence system {system.congruences} has no solution")
    x, M = system.solution
    records: List[ScanRecord] = []
    best, text = None, ""
    for q in prime_stream(3, x, M, limit):
        if not recheck(system, q):
            raise AssertionError(f"{q} fails the congruence recheck")
        rec = make_record(q, system.d, best, text)
        if max_ratio is not None and not rec.ratio < max_ratio:
            continue
        best, text = rec.running_min, rec.running_min_text
        records.append(rec)
        if len(records) >= count:
            break
    return WitnessResult(records, len(records) >= count)


# -- scans ----------------------------------------------------------------

_CHUNK = 1 << 18


def _vec_coprime_part(a: np.ndarray, b: int) -> np.ndarray:
    if b >= 1 << 62:
        return np.array([coprime_part(int(v), b) for v in a.tolist()], dtype=object)
    a = a.copy()
    g = np.gcd(a, b)
    while np.any(g > 1):
        a //= g
        g = np.gcd(a, g)
    return a


def scan_primes(lo: int, hi: int, m_K: int, unrestricted: bool, prime_squares: bool = False) -> np.ndarray:
    """Scanned norms in ``[lo, hi)``: odd primes ``= 1 (mod m_K)``.

    With ``prime_squares`` the squares of odd primes are included too.
    """
    ps = _sieve_segment(max(lo, 3), hi)
    ps = ps[ps % 2 == 1]
    if prime_squares:
        roots = _sieve_segment(math.isqrt(max(lo, 9) - 1) + 1, math.isqrt(hi - 1) + 1)
        sq = roots[roots % 2 == 1] ** 2
        ps = np.sort(np.concatenate([ps, sq[(sq >= lo) & (sq < hi)]]))
    if not unrestricted:
        ps = ps[ps % m_K == 1]
    return ps


def _scan_chunk(args) -> Tuple[List[int], List[int], List[int]]:
    lo, hi, d, m_K, unrestricted, squares = args
    ps = scan_primes(lo, hi, m_K, unrestricted, squares)
    rm = _vec_coprime_part(ps - 1, d)
    rp = _vec_coprime_part(ps + 1, d)
    return ps.tolist(), [int(v) for v in rm], [int(v) for v in rp]


def _chunks(start: int, limit: int):
    lo = start
    while lo <= limit:
        hi = min(lo + _CHUNK, limit + 1)
        yield lo, hi
        lo = hi


def scan_records(
    d: int,
    m_K: int,
    limit: int,
    jobs: int = 1,
    start: int = 3,
    running_min: Optional[Fraction] = None,
    running_text: str = "",
    unrestricted: bool = False,
    prime_squares: bool = False,
) -> Iterator[ScanRecord]:
    """:class:`ScanRecord` for every scanned norm in ``[start, limit]``, ascending.

    Chunks may be computed by ``jobs`` worker processes; records are merged
    in order so the stream does not depend on ``jobs``.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if not unrestricted and (m_K < 1 or m_K % 2):
        raise ValueError(f"m_K must be a positive even integer, got {m_K}")
    tasks = [(lo, hi, d, m_K, unrestricted, prime_squares) for lo, hi in _chunks(start, limit)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_scan_chunk, tasks)
            yield from _merge(results, running_min, running_text)
    else:
        yield from _merge(map(_scan_chunk, tasks), running_min, running_text)


def _merge(results, best, text) -> Iterator[ScanRecord]:
    for qs, rms, rps in results:
        for q, rm, rp in zip(qs, rms, rps):
            ratio = Fraction(rm + rp, 2 * q)
            if best is None or ratio < best:
                best, text = ratio, f"{rm + rp}/{2 * q}"
            yield ScanRecord(q, rm, rp, ratio, best, text)


def liminf_scan(
    d: int,
    m_K: int,
    limit: int,
    emit: Optional[Callable[[ScanRecord], None]] = None,
    jobs: int = 1,
    unrestricted: bool = False,
    prime_squares: bool = False,
) -> Optional[Fraction]:
    """Running minimum of the ratio over scanned primes up to ``limit``."""
    best = None
    for rec in scan_records(d, m_K, limit, jobs=jobs, unrestricted=unrestricted, prime_squares=prime_squares):
        best = rec.running_min
        if emit is not None:
            emit(rec)
    return best


# -- checkpoint -----------------------------------------------------------

@dataclass(frozen=True)
class Checkpoint:
    last_q: int
    running_min: str
    rows: int

    def dump(self) -> str:
        return f"last_q={self.last_q}\nrunning_min={self.running_min}\nrows={self.rows}\n"

    @classmethod
    def parse(cls, text: str) -> "Checkpoint":
        kv = {}
        for line in text.splitlines():
            if line.strip():
                k, _, v = line.partition("=")
                kv[k.strip()] = v.strip()
        try:
            Fraction(kv["running_min"])
            return cls(int(kv["last_q"]), kv["running_min"], int(kv["rows"]))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed checkpoint: {exc}") from exc

    def save(self, path: Path) -> None:
        tmp = Path(str(path) + ".tmp")
        tmp.write_text(self.dump())
        tmp.replace(path)

    @classmethod
    def load(cls, path: Path) -> "Checkpoint":
        return cls.parse(Path(path).read_text())
