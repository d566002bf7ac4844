# path: src/infrastructure/dirichlet.py
# description: Simultaneous Diophantine Approximation Engine v1.0.
#
# ARCHITECTURAL ROLE (Infrastructure Adapter):
# Implements the 'ApproximationEnginePort'. Finds the smallest q >= 1 with
# ||q a|| < 1/m for every value a of every group, by scanning q upwards.
# The pigeonhole argument bounds the scan by prod m^|S|; any common
# multiple of the denominators succeeds with distance 0, so the scan also
# stops at their lcm.
#
# Every probe is integer arithmetic: for a = n/d in lowest terms,
#   ||q a|| < 1/m   <=>   m * min(r, d - r) < d   with r = q n mod d.
#
# CONCURRENCY:
# With more than one worker the q axis is cut into consecutive chunks and
# handed out in rounds; the first round holding any success returns its
# smallest q, so the answer is the same as the inline scan.

import logging
import math
from fractions import Fraction
from functools import reduce
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.domain.exact_numeric import Rat, as_rat, fractional_part, nearest_int_distance
from src.domain.exceptions import PreconditionViolation, TheoremViolation
from src.domain.ports import ApproxGroup, ApproximationEnginePort, ApproxRequest, ApproxResult, ApproxVerdict
from src.infrastructure.settings import Settings, load_settings

logger = logging.getLogger(__name__)

# (numerator, denominator, m) with denominator > 1
Constraint = Tuple[int, int, int]


def _check_m(m: int) -> int:
    m = int(m)
    if m < 2:
        raise PreconditionViolation("tolerance denominator must be at least 2", key="error_tolerance", m=m)
    return m


def _constraints(groups: Sequence[ApproxGroup]) -> List[Constraint]:
    """One constraint per non-integer value, keeping the strictest m when a value repeats."""
    strictest: Dict[Rat, int] = {}
    for group in groups:
        for value in group.values:
            if value.denominator == 1:
                continue
            strictest[value] = max(strictest.get(value, 0), group.m)
    return [(v.numerator, v.denominator, m) for v, m in sorted(strictest.items())]


def _satisfies(q: int, constraints: Sequence[Constraint]) -> bool:
    for n, d, m in constraints:
        r = (q * n) % d
        if m * min(r, d - r) >= d:
            return False
    return True


def _scan_range(constraints: Sequence[Constraint], start: int, stop: int) -> Optional[int]:
    """First q in [start, stop) meeting every constraint."""
    for q in range(start, stop):
        if _satisfies(q, constraints):
            return q
    return None


def _distances(groups: Sequence[ApproxGroup], q: int) -> Dict[Rat, Rat]:
    return {value: nearest_int_distance(q * value) for group in groups for value in group.values}


def pigeonhole_bound(groups: Sequence[ApproxGroup]) -> int:
    return math.prod(group.m ** len(group.values) for group in groups)


def verify_approx(values: Iterable[Rat], n: int, q: int) -> ApproxVerdict:
    """Exact re-check of ||q a|| < 1/n for every value."""
    if q < 1:
        raise PreconditionViolation("q must be a positive integer", key="error_non_positive_q", q=q)
    threshold = Fraction(1, n)
    distances = {as_rat(a): nearest_int_distance(q * as_rat(a)) for a in values}
    return ApproxVerdict(ok=all(d < threshold for d in distances.values()), distances=distances)


def pigeonhole_witness(values: Iterable[Rat], n: int) -> Tuple[int, int]:
    """
    Two multiples M1 < M2 <= n^k whose fractional-part vectors share a cell
    of the 1/n grid; q = M2 - M1 then meets every ||q a|| < 1/n.
    """
    n = _check_m(n)
    rats = sorted({as_rat(a) for a in values})
    seen: Dict[Tuple[int, ...], int] = {}
    for multiple in range(n ** len(rats) + 1):
        cell = tuple(math.floor(n * fractional_part(multiple * a)) for a in rats)
        if cell in seen:
            return seen[cell], multiple
        seen[cell] = multiple
    raise TheoremViolation("pigeonhole collision not found", values=[str(a) for a in rats], n=n)


class DirichletEngine(ApproximationEnginePort):
    """Minimal-q scan with an optional process-pool partition."""

    def __init__(self, settings: Optional[Settings] = None):
        self._settings = settings or load_settings()

    def dirichlet(self, values: Iterable[Rat], n: int) -> ApproxResult:
        group = ApproxGroup(frozenset(as_rat(v) for v in values), _check_m(n))
        return self.dirichlet_varied(ApproxRequest((group,)))

    def dirichlet_varied(self, request: ApproxRequest) -> ApproxResult:
        for group in request.groups:
            _check_m(group.m)
        bound = pigeonhole_bound(request.groups)
        constraints = _constraints(request.groups)
        period = reduce(math.lcm, (d for _, d, _ in constraints), 1)
        horizon = min(bound, period)

        q = self._scan(constraints, horizon)
        if q is None:
            raise TheoremViolation(
                "no q within the pigeonhole bound",
                bound=bound,
                groups=[[sorted(str(v) for v in g.values), g.m] for g in request.groups],
            )
        logger.info(
            "DIRICHLET_SYS: groups=%d values=%d q=%d bound=%d horizon=%d",
            len(request.groups),
            len(constraints),
            q,
            bound,
            horizon,
        )
        return ApproxResult(q=q, bound=bound, distances=_distances(request.groups, q), probes=q)

    def _scan(self, constraints: Sequence[Constraint], horizon: int) -> Optional[int]:
        workers = self._settings.dirichlet_workers
        chunk = self._settings.dirichlet_chunk
        if workers <= 1 or horizon <= chunk:
            return _scan_range(constraints, 1, horizon + 1)

        start = 1
        with Pool(processes=workers) as pool:
            while start <= horizon:
                ranges = []
                for _ in range(workers):
                    if start > horizon:
                        break
                    stop = min(start + chunk, horizon + 1)
                    ranges.append((start, stop))
                    start = stop
                hits = pool.starmap(_scan_range, [(constraints, lo, hi) for lo, hi in ranges])
                found = [q for q in hits if q is not None]
                if found:
                    return min(found)
        return None


def dirichlet(values: Iterable[Rat], n: int, settings: Optional[Settings] = None) -> ApproxResult:
    return DirichletEngine(settings).dirichlet(values, n)


def dirichlet_varied(request: ApproxRequest, settings: Optional[Settings] = None) -> ApproxResult:
    return DirichletEngine(settings).dirichlet_varied(request)
