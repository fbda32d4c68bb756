"""Point counts of non-generating tuples in (A_n, *) over finite fields.

Exhaustive runs walk every r-tuple in mixed-radix order (first entry most
significant) in fixed-size index chunks; sampled runs draw fixed-size
blocks, each from its own Philox stream keyed by (seed, block).  Chunk
results merge by addition, so the report does not depend on the number of
workers or on the order in which chunks finish.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

import numpy as np
from scipy.stats import binomtest

from . import __version__
from ._kernel import FieldTables, scan_range, scan_samples
from .exactmath import BudgetExceeded, Matrix, field_of_order
from .unitary import TheoryViolation, classify, dims, make_model, witness_classes
from .unitary.classify import serialize_tuple

__all__ = ["CensusReport", "run_exhaustive", "run_sampled", "exponent_fit", "FitResult",
           "DEFAULT_BUDGET", "default_budget", "class_labels", "decode_index"]

SCHEMA_VERSION = 1
DEFAULT_BUDGET = 10**8
CHUNK = 1 << 18
BLOCK = 1 << 16


def default_budget() -> int:
    return int(os.environ.get("UNITGEN_BUDGET", DEFAULT_BUDGET))


def class_labels(n: int) -> list[str]:
    labels = []
    for i in range(1, n):
        labels += [f"X{i}_rational", f"X{i}_geometric"]
    return labels + ["Y", "Yprime", "multi"]


@dataclass
class CensusReport:
    n: int
    r: int
    q: int
    mode: str
    samples: int | None
    seed: int | None
    total: int
    nongen: int
    classes: dict | None
    frequency: float
    wilson95: list
    exponent: float | None
    predicted_dim: int
    c_A: int
    scaled_frequency: float
    elapsed: float = 0.0
    workers: int = 1
    schema_version: int = SCHEMA_VERSION
    version: str = __version__

    def to_dict(self) -> dict:
        return asdict(self)

    def content(self) -> dict:
        """Everything except timing and pool size (the determinism contract)."""
        d = self.to_dict()
        d.pop("elapsed")
        d.pop("workers")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CensusReport":
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _summary(n, r, q, mode, samples, seed, total, nongen, classes, elapsed, workers):
    rec = dims(n, r)
    freq = nongen / total if total else 0.0
    ci = binomtest(nongen, total).proportion_ci(0.95, method="wilson") if total else None
    return CensusReport(
        n=n, r=r, q=q, mode=mode, samples=samples, seed=seed, total=total, nongen=nongen,
        classes=classes, frequency=freq,
        wilson95=[float(ci.low), float(ci.high)] if ci is not None else [0.0, 1.0],
        exponent=math.log(nongen, q) if nongen else None,
        predicted_dim=rec.dim_Z, c_A=rec.c_A,
        scaled_frequency=freq * q ** rec.c_A,
        elapsed=elapsed, workers=workers,
    )


def decode_index(index: int, n: int, r: int, q: int) -> np.ndarray:
    """Digit codes of the tuple with the given enumeration index."""
    D = 2 * r * n * n
    digits = np.zeros(D, dtype=np.int64)
    for d in range(D - 1, -1, -1):
        index, digits[d] = divmod(index, q)
    return digits


def _pairs_from_codes(codes, n, r, F):
    m = n * n
    elems = F.elements()
    out = []
    for t in range(r):
        chunk = codes[2 * t * m:(2 * t + 2) * m]
        a = Matrix(F, elems[chunk[:m]].reshape(n, n))
        b = Matrix(F, elems[chunk[m:]].reshape(n, n))
        out.append((a, b))
    return out


def _classify_rows(rows, n, r, q, max_ext=None) -> Counter:
    """All-witness classification of non-generating code rows."""
    F = field_of_order(q)
    model = make_model(n, F)
    tally = Counter()
    for codes in rows:
        pairs = _pairs_from_codes(codes, n, r, F)
        ws = classify(model, pairs, all_witnesses=True, max_ext=max_ext)
        labels = witness_classes(ws)
        if not labels:
            raise TheoryViolation("kernel reports a non-generating tuple the exact closure "
                                  "says generates", {"tuple": serialize_tuple(model, pairs)})
        tally.update(labels)
        if len({lab.split("_")[0] for lab in labels}) > 1:
            tally["multi"] += 1
    return tally


def _exhaustive_chunk(args):
    n, r, q, start, stop, do_classify, max_ext = args
    F = field_of_order(q)
    tables = FieldTables(F)
    flags = np.zeros(stop - start, dtype=np.int8)
    count = int(scan_range(start, stop, n, r, q, *tables.args(), flags))
    classes = None
    if do_classify:
        rows = [decode_index(start + int(i), n, r, q) for i in np.nonzero(flags)[0]]
        classes = dict(_classify_rows(rows, n, r, q, max_ext))
    return start, stop, count, classes


def _sample_codes(seed: int, block: int, size: int, D: int, q: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))
    return rng.integers(0, q, size=(size, D), dtype=np.int64)


def _sampled_block(args):
    n, r, q, seed, block, take, do_classify, max_ext = args
    F = field_of_order(q)
    tables = FieldTables(F)
    D = 2 * r * n * n
    codes = _sample_codes(seed, block, BLOCK, D, q)[:take]
    flags = np.zeros(take, dtype=np.int8)
    count = int(scan_samples(codes, n, r, *tables.args(), flags))
    classes = None
    if do_classify:
        classes = dict(_classify_rows(codes[flags == 1], n, r, q, max_ext))
    return block, take, count, classes


def _run_jobs(func, jobs, workers, on_result):
    if workers <= 1:
        for job in jobs:
            on_result(func(job))
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for res in pool.map(func, jobs):
            on_result(res)


def _merge(total: Counter, part: dict | None):
    if part:
        total.update(part)


def _load_checkpoint(path, params):
    if path is None or not Path(path).exists():
        return {}
    data = json.loads(Path(path).read_text())
    if data.get("params") != params:
        raise ValueError(f"checkpoint {path} belongs to a different run")
    return {int(k): v for k, v in data["done"].items()}


def _save_checkpoint(path, params, done):
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps({"params": params, "done": {str(k): v for k, v in done.items()}}))
    os.replace(tmp, path)


def run_exhaustive(n: int, r: int, q: int, classify: bool = False, workers: int = 1,
                   budget: int | None = None, checkpoint=None, max_ext: int | None = None,
                   chunk: int = CHUNK) -> CensusReport:
    """Exact count of non-generating r-tuples over F_q."""
    field_of_order(q)  # validates q
    budget = default_budget() if budget is None else budget
    total = q ** (2 * r * n * n)
    if total > budget:
        raise BudgetExceeded(total, budget, f"exhaustive census (n={n}, r={r}, q={q}); "
                             "use the sampled mode")
    t0 = time.perf_counter()
    params = {"mode": "exhaustive", "n": n, "r": r, "q": q, "classify": classify, "chunk": chunk}
    done = _load_checkpoint(checkpoint, params)
    jobs = [(n, r, q, s, min(s + chunk, total), classify, max_ext)
            for s in range(0, total, chunk) if s not in done]

    def on_result(res):
        start, stop, count, classes = res
        done[start] = {"stop": stop, "nongen": count, "classes": classes}
        if checkpoint is not None:
            _save_checkpoint(checkpoint, params, done)

    _run_jobs(_exhaustive_chunk, jobs, workers, on_result)
    nongen = sum(v["nongen"] for v in done.values())
    classes = None
    if classify:
        tally = Counter({lab: 0 for lab in class_labels(n)})
        for v in done.values():
            _merge(tally, v["classes"])
        classes = dict(sorted(tally.items()))
    return _summary(n, r, q, "exhaustive", None, None, total, nongen, classes,
                    time.perf_counter() - t0, workers)


def run_sampled(n: int, r: int, q: int, samples: int, seed: int = 0, classify: bool = False,
                workers: int = 1, max_ext: int | None = None) -> CensusReport:
    """Non-generation frequency on uniform random tuples.

    Sample i comes from block i // BLOCK, whose stream depends only on
    (seed, block), so results do not depend on the worker count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    field_of_order(q)
    t0 = time.perf_counter()
    jobs = []
    for block, start in enumerate(range(0, samples, BLOCK)):
        jobs.append((n, r, q, seed, block, min(BLOCK, samples - start), classify, max_ext))
    nongen = 0
    tally = Counter({lab: 0 for lab in class_labels(n)}) if classify else None

    def on_result(res):
        nonlocal nongen
        _, _, count, classes = res
        nongen += count
        if classify:
            _merge(tally, classes)

    _run_jobs(_sampled_block, jobs, workers, on_result)
    classes = dict(sorted(tally.items())) if classify else None
    return _summary(n, r, q, "sampled", samples, seed, samples, nongen, classes,
                    time.perf_counter() - t0, workers)


@dataclass
class FitResult:
    slope: float
    intercept: float
    predicted: int
    qs: list = dc_field(default_factory=list)


def exponent_fit(reports) -> FitResult:
    """Least-squares slope of log N(q) against log q."""
    reports = list(reports)
    if len(reports) < 2:
        raise ValueError("exponent fit needs at least two reports")
    if any(rep.mode != "exhaustive" for rep in reports):
        raise ValueError("exponent fit needs exhaustive reports only")
    if len({(rep.n, rep.r) for rep in reports}) != 1:
        raise ValueError("exponent fit needs a single (n, r)")
    if any(rep.nongen == 0 for rep in reports):
        raise ValueError("a report has no non-generating tuples")
    x = np.log([rep.q for rep in reports])
    y = np.log([rep.nongen for rep in reports])
    slope, intercept = np.polyfit(x, y, 1)
    return FitResult(float(slope), float(intercept), reports[0].predicted_dim,
                     [rep.q for rep in reports])
