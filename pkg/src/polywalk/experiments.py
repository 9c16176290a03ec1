"""Monte Carlo trials of the walk and the path-length bound report.

A batch runs :func:`~polywalk.shadow.find_path` repeatedly with consecutive
seeds and records the observed path lengths.  The report compares the mean
against the guarantee 8 m n^2 / delta^2 carried by the flatness parameter of
the constraint matrix (for integral matrices also against the weaker ceiling
obtained from the sub-determinant certificate), plus the breadth-first-search
distance as a lower bound where enumeration is affordable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import CapExceeded, MissingDelta, RetriesExhausted
from .flatness import delta_A, subdet_report
from .polytope import Instance
from .shadow import find_path

CSV_COLUMNS = ("instance_id", "m", "n", "delta", "trials", "mean", "stderr",
               "bound", "ratio", "bfs_lower")


@dataclass(frozen=True)
class TrialBatch:
    """Raw outcomes of repeated walks on one instance."""

    instance_id: str
    n_trials: int
    base_seed: int
    lengths: tuple[int, ...]
    retries: tuple[int, ...]
    failures: tuple[str, ...]


@dataclass(frozen=True)
class BoundReport:
    """Mean path length against its guarantee, with context for emission.

    ``bound_integral_ceiling`` is the sub-determinant form (integral
    instances only); ``bfs_lower`` is the exact graph distance when the
    enumeration cap allowed computing it.  Statistics are None for an empty
    batch.
    """

    instance_id: str
    m: int
    n: int
    delta: float
    trials: int
    mean_length: float | None
    std_err: float | None
    bound_8mn2_over_delta2: float
    bound_integral_ceiling: float | None
    bfs_lower: int | None
    ratio_mean_to_bound: float | None


def run_batch(inst: Instance, x1, x2, n_trials: int, base_seed: int) -> TrialBatch:
    """Walk n_trials times with seeds base_seed, base_seed+1, ...

    Failed trials (all retries exhausted) are recorded by their failure
    reasons and excluded from the lengths; the batch itself never aborts.
    """
    if n_trials < 0:
        raise ValueError("trial count must be nonnegative")
    lengths: list[int] = []
    retries: list[int] = []
    failures: list[str] = []
    for t in range(n_trials):
        try:
            path = find_path(inst, x1, x2, base_seed + t)
        except RetriesExhausted as exc:
            failures.append(";".join(exc.reasons))
            continue
        lengths.append(path.length)
        retries.append(path.retries)
    return TrialBatch(instance_id=inst.name, n_trials=n_trials,
                      base_seed=int(base_seed), lengths=tuple(lengths),
                      retries=tuple(retries), failures=tuple(failures))


def bound_report(batch: TrialBatch, inst: Instance, *, delta: float | None = None,
                 bfs_lower: int | None = None) -> BoundReport:
    """Build the comparison report for a finished batch.

    ``delta`` may pass a precomputed flatness value; otherwise it is computed
    here (:class:`MissingDelta` when the basis enumeration cap refuses).
    ``bfs_lower`` is forwarded verbatim, absent when not supplied.
    """
    if delta is None:
        try:
            delta = delta_A(inst).delta
        except CapExceeded as exc:
            raise MissingDelta(
                f"flatness of {inst.name} not supplied and not computable: {exc}"
            ) from exc
    m, n = inst.m, inst.n
    bound = 8.0 * m * n * n / (delta * delta)
    ceiling = None
    if inst.integral and inst.int_A is not None:
        sub = subdet_report(inst.int_A)
        ceiling = 8.0 * m * n * n * sub.bound_on_inv_delta ** 2
    k = len(batch.lengths)
    if k == 0:
        return BoundReport(instance_id=batch.instance_id, m=m, n=n,
                           delta=float(delta), trials=0, mean_length=None,
                           std_err=None, bound_8mn2_over_delta2=bound,
                           bound_integral_ceiling=ceiling, bfs_lower=bfs_lower,
                           ratio_mean_to_bound=None)
    mean = sum(batch.lengths) / k
    if k > 1:
        variance = sum((v - mean) ** 2 for v in batch.lengths) / (k - 1)
        stderr = math.sqrt(variance / k)
    else:
        stderr = 0.0
    return BoundReport(instance_id=batch.instance_id, m=m, n=n,
                       delta=float(delta), trials=k, mean_length=mean,
                       std_err=stderr, bound_8mn2_over_delta2=bound,
                       bound_integral_ceiling=ceiling, bfs_lower=bfs_lower,
                       ratio_mean_to_bound=mean / bound)


def emit(report: BoundReport, fmt: str = "json") -> str:
    """Render a report as a stable CSV table or JSON object.

    The CSV column order is pinned (see ``CSV_COLUMNS``); absent statistics
    become empty cells.  The JSON object mirrors the report fields, dropping
    the optional ones when absent, and round-trips through ``json.loads``.
    """
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerow([
            report.instance_id, report.m, report.n, repr(report.delta),
            report.trials,
            "" if report.mean_length is None else repr(report.mean_length),
            "" if report.std_err is None else repr(report.std_err),
            repr(report.bound_8mn2_over_delta2),
            "" if report.ratio_mean_to_bound is None else repr(report.ratio_mean_to_bound),
            "" if report.bfs_lower is None else report.bfs_lower,
        ])
        return buf.getvalue()
    if fmt == "json":
        payload: dict = {
            "instance_id": report.instance_id,
            "m": report.m,
            "n": report.n,
            "delta": report.delta,
            "trials": report.trials,
            "mean_length": report.mean_length,
            "std_err": report.std_err,
            "bound_8mn2_over_delta2": report.bound_8mn2_over_delta2,
            "ratio_mean_to_bound": report.ratio_mean_to_bound,
        }
        if report.bound_integral_ceiling is not None:
            payload["bound_integral_ceiling"] = report.bound_integral_ceiling
        if report.bfs_lower is not None:
            payload["bfs_lower"] = report.bfs_lower
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def report_from_json(text: str) -> BoundReport:
    """Rebuild a report from its JSON emission (the round-trip reader)."""
    data = json.loads(text)
    return BoundReport(
        instance_id=data["instance_id"], m=data["m"], n=data["n"],
        delta=data["delta"], trials=data["trials"],
        mean_length=data["mean_length"], std_err=data["std_err"],
        bound_8mn2_over_delta2=data["bound_8mn2_over_delta2"],
        bound_integral_ceiling=data.get("bound_integral_ceiling"),
        bfs_lower=data.get("bfs_lower"),
        ratio_mean_to_bound=data["ratio_mean_to_bound"])
