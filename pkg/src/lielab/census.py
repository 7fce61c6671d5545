"""Exhaustive census of 3-dimensional bracket tables over F_p.

A table is nine scalars: ``[b1,b2] = a``, ``[b1,b3] = b``, ``[b2,b3] = d``.
Table number ``N`` in ``[0, p^9)`` has base-p digits
``a0 a1 a2 b0 b1 b2 d0 d1 d2`` (least significant first).  With one basis
triple, Jacobi reduces to the vector identity

    (d1 + b0) a + (d2 - a0) b - (b2 + a1) d = 0,

which is evaluated with numpy over whole index ranges.  Survivors are rebuilt
as LieRings (re-verifying Jacobi), tested for simplicity and recognized.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .analysis import recognize_sl2
from .errors import BudgetError, ExcludedCharacteristicError
from .fields import GF, is_prime
from .linalg import charpoly, poly_roots
from .ring import LieRing
from .structure import center, derived_subring, is_simple

__all__ = ["CensusResult", "census_dim3", "jacobi_mask", "table_from_index", "ring_from_table",
           "MAX_TABLES", "CHUNK"]

MAX_TABLES = 10**8
CHUNK = 1 << 20


@dataclass
class CensusResult:
    field: dict
    dimension: int
    total_tables: int
    jacobi_count: int
    simple_count: int
    recognized_sl2_count: int
    unrecognized: list = dc_field(default_factory=list)
    perfect_centerless_count: int = 0
    spectrum_ok_count: int = 0
    recognition_skipped: bool = False
    jobs: int = 1
    seed: int = 0
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "dimension": self.dimension,
            "total_tables": self.total_tables,
            "jacobi_count": self.jacobi_count,
            "simple_count": self.simple_count,
            "recognized_sl2_count": self.recognized_sl2_count,
            "unrecognized": self.unrecognized,
            "perfect_centerless_count": self.perfect_centerless_count,
            "spectrum_ok_count": self.spectrum_ok_count,
            "recognition_skipped": self.recognition_skipped,
            "jobs": self.jobs,
            "seed": self.seed,
        }


def _digits(idx: np.ndarray, p: int) -> np.ndarray:
    out = np.empty((9, idx.size), dtype=np.int64)
    rest = idx.copy()
    for k in range(9):
        rest, out[k] = np.divmod(rest, p)
    return out


def jacobi_mask(start: int, stop: int, p: int) -> np.ndarray:
    """Boolean mask over table numbers ``start..stop-1``: True where Jacobi holds."""
    idx = np.arange(start, stop, dtype=np.int64)
    a0, a1, a2, b0, b1, b2, d0, d1, d2 = _digits(idx, p)
    s, t, u = (d1 + b0) % p, (d2 - a0) % p, (b2 + a1) % p
    ok = np.ones(idx.size, dtype=bool)
    for ak, bk, dk in ((a0, b0, d0), (a1, b1, d1), (a2, b2, d2)):
        ok &= (s * ak + t * bk - u * dk) % p == 0
    return ok


def table_from_index(n: int, p: int) -> list[list[int]]:
    digits = []
    for _ in range(9):
        n, r = divmod(n, p)
        digits.append(r)
    return [digits[0:3], digits[3:6], digits[6:9]]


def ring_from_table(table, p: int, *, check: bool = True) -> LieRing:
    a, b, d = table
    return LieRing(GF(p), 3, {(0, 1): a, (0, 2): b, (1, 2): d}, check=check)


def _process_range(args) -> dict:
    start, stop, p, recognize, seed = args
    counts = {"jacobi": 0, "simple": 0, "recognized": 0, "perfect_centerless": 0, "spectrum_ok": 0,
              "unrecognized": []}
    F = GF(p)
    weights = {F.zero, F.from_int(2), F.from_int(-2)}
    for lo in range(start, stop, CHUNK):
        hi = min(stop, lo + CHUNK)
        hits = np.flatnonzero(jacobi_mask(lo, hi, p)) + lo
        counts["jacobi"] += int(hits.size)
        for n in hits.tolist():
            table = table_from_index(n, p)
            L = ring_from_table(table, p)  # re-verifies Jacobi independently of the mask
            if not is_simple(L):
                continue
            counts["simple"] += 1
            if derived_subring(L, check=False).is_full() and center(L).is_zero():
                counts["perfect_centerless"] += 1
            if not recognize:
                continue
            rep = recognize_sl2(L, seed=seed)
            if rep.recognized:
                counts["recognized"] += 1
                # after rescaling h has spectrum exactly {0, 2, -2}
                if set(poly_roots(F, charpoly(L.ad(rep.triple.h)))) == weights:
                    counts["spectrum_ok"] += 1
            else:
                counts["unrecognized"].append({"index": n, "table": table, "verdict": rep.verdict,
                                               "reason": rep.failure_reason})
    return counts


def census_dim3(p: int = 5, *, dim: int = 3, jobs: int = 1, seed: int = 0, max_tables: int = MAX_TABLES,
                explore: bool = False, index_range: tuple[int, int] | None = None) -> CensusResult:
    """Enumerate every bracket table on a 3-dimensional F_p-space.

    ``explore=True`` admits p in {2, 3} (no recognition is attempted there).
    ``index_range`` restricts the scan to a slice of table numbers (for tests).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n_free = dim * dim * (dim - 1) // 2
    total = p**n_free
    if dim != 3 or total > max_tables:
        raise BudgetError(f"census of dimension {dim} over F_{p} has {p}^{n_free} tables: "
                          f"out of desk-scale budget (limit {max_tables})")
    recognize = p > 3
    if not recognize and not explore:
        raise ExcludedCharacteristicError("characteristic 2 and 3 are excluded (use explore=True to count anyway)")
    start, stop = index_range if index_range is not None else (0, total)
    t0 = time.perf_counter()
    jobs = max(1, int(jobs))
    bounds = np.linspace(start, stop, min(jobs * 4, max(1, stop - start)) + 1).astype(np.int64).tolist() if jobs > 1 else [start, stop]
    tasks = [(lo, hi, p, recognize, seed) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_process_range, tasks))
    else:
        parts = [_process_range(t) for t in tasks]
    unrec = sorted((u for part in parts for u in part["unrecognized"]), key=lambda u: u["index"])
    res = CensusResult(
        field=GF(p).descriptor(),
        dimension=dim,
        total_tables=stop - start,
        jacobi_count=sum(part["jacobi"] for part in parts),
        simple_count=sum(part["simple"] for part in parts),
        recognized_sl2_count=sum(part["recognized"] for part in parts),
        unrecognized=unrec,
        perfect_centerless_count=sum(part["perfect_centerless"] for part in parts),
        spectrum_ok_count=sum(part["spectrum_ok"] for part in parts),
        recognition_skipped=not recognize,
        jobs=jobs,
        seed=seed,
        seconds=time.perf_counter() - t0,
    )
    if recognize:
        assert res.recognized_sl2_count + len(res.unrecognized) == res.simple_count
    return res
