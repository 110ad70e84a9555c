"""Resumable, parallel scans over the L-sequences: prime hunts on structured
index families, twin searches, square-divisor sweeps, and congruence audits.

Every scan is driven by a ScanSpec and produces a ScanReport whose records
are deterministic functions of the spec and seed: the same spec yields the
same records regardless of worker count or interruption points.  Progress
can be journaled to an append-only checkpoint file (one JSON object per
line) and picked up later with resume().
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, fields
from typing import IO, Any

from . import __version__
from .arith import (
    DEFAULT_EXTRA_ROUNDS,
    DETERMINISTIC_LIMIT,
    is_prime,
    multiplicative_order,
    sieve_primes,
)
from .lfamily import LFamily, builtin_congruence_rules, eval_exact, residue

__all__ = [
    "CHECKPOINT_FORMAT",
    "SCAN_KINDS",
    "ResumeError",
    "ScanSpec",
    "ScanRecord",
    "ScanReport",
    "engine_fingerprint",
    "run_scan",
    "resume",
    "scan_l2_prime_exponents",
    "scan_l2_pow2",
    "scan_l3_pow2",
    "scan_l3_mixed",
    "scan_l1_pow3",
    "scan_l4_twins",
    "scan_square_divisors",
    "scan_congruence_audit",
]

CHECKPOINT_FORMAT = 1

SCAN_KINDS = (
    "l2_prime_exponent",
    "l2_pow2",
    "l3_pow2",
    "l3_mixed",
    "l1_pow3",
    "l4_twins",
    "square_divisors",
    "congruence_audit",
)

_PRIMEISH = ("prime", "probable_prime")


class ResumeError(Exception):
    """A checkpoint cannot be resumed (mismatched spec, engine, or content)."""


@dataclass(frozen=True)
class ScanSpec:
    """Full parameterization of one scan; embedded verbatim in its report."""

    kind: str
    family: str | None = None
    n_max: int | None = None
    p_max: int | None = None
    m_max: int | None = None
    k_max: int | None = None
    extra_rounds: int = DEFAULT_EXTRA_ROUNDS
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in SCAN_KINDS:
            raise ValueError(f"unknown scan kind {self.kind!r}")
        if self.family is not None:
            LFamily.parse(self.family)
        if self.extra_rounds < 0:
            raise ValueError(f"extra_rounds must be >= 0, got {self.extra_rounds}")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ScanSpec":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ResumeError(f"unknown spec fields {sorted(unknown)}")
        try:
            return cls(**data)
        except (TypeError, ValueError) as exc:
            raise ResumeError(f"invalid spec in checkpoint: {exc}") from exc

    def canonical(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def sha256(self) -> str:
        return hashlib.sha256(self.canonical().encode("ascii")).hexdigest()


def engine_fingerprint(spec: ScanSpec) -> dict[str, Any]:
    """Engine identity and thresholds that a checkpoint must match to resume."""
    return {
        "engine": "lseq",
        "version": __version__,
        "format": CHECKPOINT_FORMAT,
        "deterministic_limit": DETERMINISTIC_LIMIT,
        "extra_rounds": spec.extra_rounds,
        "seed": spec.seed,
    }


@dataclass(frozen=True)
class ScanRecord:
    """Outcome for one candidate.  elapsed_ms is informational only and is
    excluded from the canonical report serialization."""

    index: tuple[int, ...]
    verdict: str
    detail: dict[str, Any]
    elapsed_ms: int


@dataclass(frozen=True)
class ScanReport:
    spec: ScanSpec
    fingerprint: dict[str, Any]
    records: list[ScanRecord]
    completed_through: int
    total: int

    @property
    def complete(self) -> bool:
        return self.completed_through == self.total

    def canonical_bytes(self) -> bytes:
        """Deterministic serialization: identical for identical spec + seed,
        independent of worker count, interruptions, and wall time."""
        payload = {
            "format": CHECKPOINT_FORMAT,
            "spec": self.spec.to_dict(),
            "fingerprint": self.fingerprint,
            "total": self.total,
            "completed_through": self.completed_through,
            "records": [
                {
                    "pos": pos,
                    "index": list(rec.index),
                    "verdict": rec.verdict,
                    "detail": rec.detail,
                }
                for pos, rec in enumerate(self.records)
            ],
        }
        return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")

    def prime_indices(self) -> list[Any]:
        """Candidates classified prime or probable_prime (scalar for
        one-dimensional scans, tuple otherwise)."""
        out = []
        for rec in self.records:
            if rec.verdict in _PRIMEISH:
                out.append(rec.index[0] if len(rec.index) == 1 else tuple(rec.index))
        return out

    def twin_pairs(self) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """(true twin pairs, unit-flagged pairs) from an l4_twins scan."""
        twins = [(r.index[0], r.index[0] + 1) for r in self.records if r.verdict == "twin"]
        flagged = [(r.index[0], r.index[0] + 1) for r in self.records if r.verdict == "unit_twin"]
        return twins, flagged

    def square_hits(self) -> list[tuple[int, int, int]]:
        """(index, prime, exponent) triples from a square_divisors scan,
        ordered by prime then index."""
        out = []
        for rec in self.records:
            if "hits" in rec.detail:
                p = rec.index[0]
                for n, e in rec.detail["hits"]:
                    out.append((n, p, e))
        return out


def _require(spec: ScanSpec, field_name: str, minimum: int) -> int:
    value = getattr(spec, field_name)
    if value is None or value < minimum:
        raise ValueError(
            f"scan kind {spec.kind!r} requires {field_name} >= {minimum}, got {value}"
        )
    return value


def _candidates(spec: ScanSpec) -> list[tuple[int, ...]]:
    """Deterministic, index-sorted candidate list for a spec."""
    kind = spec.kind
    if kind == "l2_prime_exponent":
        p_max = _require(spec, "p_max", 2)
        return [(p,) for p in sieve_primes(p_max)]
    if kind == "l2_pow2":
        n_max = _require(spec, "n_max", 1)
        return [(n,) for n in range(1, n_max + 1)]
    if kind == "l3_pow2":
        n_max = _require(spec, "n_max", 0)
        return [(n,) for n in range(0, n_max + 1)]
    if kind == "l3_mixed":
        m_max = _require(spec, "m_max", 1)
        n_max = _require(spec, "n_max", 1)
        return [(m, n) for m in range(1, m_max + 1) for n in range(1, n_max + 1)]
    if kind == "l1_pow3":
        k_max = _require(spec, "k_max", 0)
        return [(k,) for k in range(0, k_max + 1)]
    if kind == "l4_twins":
        n_max = _require(spec, "n_max", 2)
        return [(n,) for n in range(1, n_max)]
    if kind == "square_divisors":
        if spec.family is None:
            raise ValueError("square_divisors scan requires a family")
        _require(spec, "n_max", 1)
        p_max = _require(spec, "p_max", 3)
        return [(p,) for p in sieve_primes(p_max) if p != 2]
    if kind == "congruence_audit":
        _require(spec, "n_max", 1)
        families = [LFamily.parse(spec.family)] if spec.family else list(LFamily)
        out = []
        for fam_pos, fam in enumerate(LFamily):
            if fam not in families:
                continue
            for rule_pos in range(len(builtin_congruence_rules(fam))):
                out.append((fam_pos + 1, rule_pos))
        return out
    raise AssertionError(f"unhandled kind {kind!r}")


def _candidate_seed(spec: ScanSpec, label: tuple[int, ...]) -> int:
    text = f"{spec.seed}|{spec.kind}|" + "|".join(map(str, label))
    return int.from_bytes(hashlib.sha256(text.encode("ascii")).digest()[:8], "big")


def _classify(spec: ScanSpec, family: LFamily, n: int, label: tuple[int, ...]) -> dict[str, Any]:
    verdict = is_prime(
        eval_exact(family, n),
        extra_rounds=spec.extra_rounds,
        seed=_candidate_seed(spec, label),
    )
    return {
        "classification": verdict.classification,
        "evidence": verdict.evidence,
        "rounds": verdict.rounds,
    }


def _evaluate(spec: ScanSpec, index: tuple[int, ...]) -> tuple[str, dict[str, Any]]:
    """Pure candidate evaluation; the only inputs are spec and index."""
    kind = spec.kind
    if kind == "l2_prime_exponent":
        result = _classify(spec, LFamily.L2, index[0], index)
        return result.pop("classification"), {"sequence_index": index[0], **result}
    if kind == "l2_pow2":
        n = 2 ** index[0]
        result = _classify(spec, LFamily.L2, n, index)
        return result.pop("classification"), {"sequence_index": n, **result}
    if kind == "l3_pow2":
        n = 2 ** index[0]
        result = _classify(spec, LFamily.L3, n, index)
        return result.pop("classification"), {"sequence_index": n, **result}
    if kind == "l3_mixed":
        n = 3 ** index[0] * 2 ** index[1]
        result = _classify(spec, LFamily.L3, n, index)
        return result.pop("classification"), {"sequence_index": n, **result}
    if kind == "l1_pow3":
        n = 3 ** index[0]
        result = _classify(spec, LFamily.L1, n, index)
        return result.pop("classification"), {"sequence_index": n, **result}
    if kind == "l4_twins":
        n = index[0]
        left = _classify(spec, LFamily.L4, n, (n, 0))
        right = _classify(spec, LFamily.L4, n + 1, (n, 1))
        sides = {left["classification"], right["classification"]}
        if sides <= set(_PRIMEISH):
            verdict = "twin"
        elif "unit" in sides and (sides - {"unit"}) <= set(_PRIMEISH):
            verdict = "unit_twin"
        else:
            verdict = "not_twin"
        return verdict, {"left": left, "right": right}
    if kind == "square_divisors":
        return _evaluate_square(spec, index[0])
    if kind == "congruence_audit":
        fam = list(LFamily)[index[0] - 1]
        rule = builtin_congruence_rules(fam)[index[1]]
        violation = rule.first_violation(spec.n_max)
        detail = {
            "family": fam.name,
            "modulus": rule.modulus,
            "step": rule.step,
            "offsets": list(rule.offsets),
            "description": rule.description,
            "n_max": spec.n_max,
            "first_violation": violation,
        }
        return ("holds" if violation is None else "violated"), detail
    raise AssertionError(f"unhandled kind {kind!r}")


def _evaluate_square(spec: ScanSpec, p: int) -> tuple[str, dict[str, Any]]:
    """Find every index n <= n_max with p^e | value, e >= 2, for one prime p.

    Divisibility by p repeats with period ord_p(2) in the index, so only the
    residue classes where p divides at all are swept for higher powers.
    """
    family = LFamily.parse(spec.family)
    order = multiplicative_order(2, p).order
    roots = [l for l in range(1, order + 1) if residue(family, l, p) == 0]
    hits = []
    for root in roots:
        for n in range(root, spec.n_max + 1, order):
            e = 1
            while residue(family, n, p ** (e + 1)) == 0:
                e += 1
            if e >= 2:
                hits.append([n, e])
    hits.sort()
    return ("hits" if hits else "none"), {"order": order, "roots": roots, "hits": hits}


def _worker(spec_dict: dict[str, Any], pos: int, index: list[int]) -> tuple[int, str, dict[str, Any], int]:
    spec = ScanSpec(**spec_dict)
    start = time.perf_counter()
    verdict, detail = _evaluate(spec, tuple(index))
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return pos, verdict, detail, elapsed_ms


class _CheckpointWriter:
    """Append-only journal: header, then record/cursor lines per candidate."""

    def __init__(self, path: str, fsync: bool = False):
        self._handle: IO[str] = open(path, "a", encoding="ascii")
        self._fsync = fsync

    def _emit(self, obj: dict[str, Any]) -> None:
        self._handle.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")
        self._handle.flush()
        if self._fsync:
            os.fsync(self._handle.fileno())

    def header(self, spec: ScanSpec) -> None:
        self._emit(
            {
                "type": "header",
                "format": CHECKPOINT_FORMAT,
                "spec": spec.to_dict(),
                "spec_sha256": spec.sha256(),
                "fingerprint": engine_fingerprint(spec),
            }
        )

    def record(self, pos: int, rec: ScanRecord) -> None:
        self._emit(
            {
                "type": "record",
                "pos": pos,
                "index": list(rec.index),
                "verdict": rec.verdict,
                "detail": rec.detail,
                "elapsed_ms": rec.elapsed_ms,
            }
        )
        self._emit({"type": "cursor", "completed_through": pos + 1})

    def close(self) -> None:
        self._handle.close()


def _effective_jobs(jobs: int | None) -> int:
    if jobs is not None:
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        return jobs
    env = os.environ.get("LSEQ_JOBS")
    if env:
        try:
            parsed = int(env)
        except ValueError:
            raise ValueError(f"LSEQ_JOBS must be an integer, got {env!r}") from None
        if parsed < 1:
            raise ValueError(f"LSEQ_JOBS must be >= 1, got {parsed}")
        return parsed
    return 1


def _execute(
    spec: ScanSpec,
    candidates: list[tuple[int, ...]],
    done: list[ScanRecord],
    jobs: int,
    limit: int | None,
    writer: _CheckpointWriter | None,
) -> ScanReport:
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    start = len(done)
    end = len(candidates) if limit is None else min(len(candidates), start + limit)
    records = list(done)
    try:
        if jobs <= 1 or end - start <= 1:
            for pos in range(start, end):
                began = time.perf_counter()
                verdict, detail = _evaluate(spec, candidates[pos])
                elapsed_ms = int((time.perf_counter() - began) * 1000)
                rec = ScanRecord(candidates[pos], verdict, detail, elapsed_ms)
                records.append(rec)
                if writer:
                    writer.record(pos, rec)
        else:
            spec_dict = spec.to_dict()
            pending: dict[int, ScanRecord] = {}
            next_pos = start
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [
                    pool.submit(_worker, spec_dict, pos, list(candidates[pos]))
                    for pos in range(start, end)
                ]
                for future in as_completed(futures):
                    pos, verdict, detail, elapsed_ms = future.result()
                    pending[pos] = ScanRecord(candidates[pos], verdict, detail, elapsed_ms)
                    # Single writer: emit strictly in candidate order.
                    while next_pos in pending:
                        rec = pending.pop(next_pos)
                        records.append(rec)
                        if writer:
                            writer.record(next_pos, rec)
                        next_pos += 1
    finally:
        if writer:
            writer.close()
    return ScanReport(
        spec=spec,
        fingerprint=engine_fingerprint(spec),
        records=records,
        completed_through=len(records),
        total=len(candidates),
    )


def run_scan(
    spec: ScanSpec,
    *,
    jobs: int | None = None,
    checkpoint_path: str | None = None,
    limit: int | None = None,
    fsync: bool = False,
) -> ScanReport:
    """Run a scan from the beginning, optionally journaling to a checkpoint.

    limit caps how many candidates are evaluated in this call (the report is
    then incomplete but resumable); jobs > 1 fans candidates out to worker
    processes without changing any output content.
    """
    candidates = _candidates(spec)
    writer = None
    if checkpoint_path is not None:
        if os.path.exists(checkpoint_path) and os.path.getsize(checkpoint_path) > 0:
            raise ValueError(
                f"checkpoint {checkpoint_path!r} already exists; use resume()"
            )
        writer = _CheckpointWriter(checkpoint_path, fsync=fsync)
        writer.header(spec)
    return _execute(spec, candidates, [], _effective_jobs(jobs), limit, writer)


def _read_checkpoint(path: str) -> tuple[dict[str, Any], list[ScanRecord]]:
    try:
        with open(path, encoding="ascii") as handle:
            raw = handle.read()
    except OSError as exc:
        raise ResumeError(f"cannot read checkpoint {path!r}: {exc}") from exc
    entries: list[dict[str, Any]] = []
    for line in raw.split("\n"):
        if not line:
            continue
        try:
            entries.append(json.loads(line))
        except json.JSONDecodeError:
            # A torn final line from an interrupted write is discarded; the
            # journal remains valid up to the last complete line.
            break
    if not entries or entries[0].get("type") != "header":
        raise ResumeError(f"{path!r} does not start with a checkpoint header")
    header = entries[0]
    by_pos: dict[int, ScanRecord] = {}
    for entry in entries[1:]:
        if entry.get("type") != "record":
            continue
        by_pos[entry["pos"]] = ScanRecord(
            index=tuple(entry["index"]),
            verdict=entry["verdict"],
            detail=entry["detail"],
            elapsed_ms=entry["elapsed_ms"],
        )
    records = []
    pos = 0
    while pos in by_pos:
        records.append(by_pos[pos])
        pos += 1
    return header, records


def resume(
    report_path: str,
    *,
    jobs: int | None = None,
    limit: int | None = None,
    fsync: bool = False,
) -> ScanReport:
    """Continue a checkpointed scan to completion (or by ``limit`` more
    candidates).  Refuses to run when the stored spec hash or the engine
    fingerprint does not match what this engine would recompute; a finished
    scan is returned unchanged."""
    header, records = _read_checkpoint(report_path)
    if header.get("format") != CHECKPOINT_FORMAT:
        raise ResumeError(
            f"checkpoint format {header.get('format')!r} is not {CHECKPOINT_FORMAT}"
        )
    spec = ScanSpec.from_dict(header["spec"])
    if header.get("spec_sha256") != spec.sha256():
        raise ResumeError("stored spec hash does not match the stored spec")
    if header.get("fingerprint") != engine_fingerprint(spec):
        raise ResumeError("engine fingerprint changed; refusing to mix results")
    candidates = _candidates(spec)
    if len(records) > len(candidates):
        raise ResumeError("checkpoint has more records than candidates")
    for pos, rec in enumerate(records):
        if rec.index != candidates[pos]:
            raise ResumeError(
                f"record {pos} index {rec.index} does not match candidate {candidates[pos]}"
            )
    writer = _CheckpointWriter(report_path, fsync=fsync) if len(records) < len(candidates) else None
    return _execute(spec, candidates, records, _effective_jobs(jobs), limit, writer)


def scan_l2_prime_exponents(p_max: int, **kwargs: Any) -> ScanReport:
    """Classify the L2 value at every prime index p <= p_max."""
    return _run_convenience(ScanSpec(kind="l2_prime_exponent", p_max=p_max, **_spec_kwargs(kwargs)), kwargs)


def scan_l2_pow2(n_max: int, **kwargs: Any) -> ScanReport:
    """Classify the L2 value at indices 2^n for 1 <= n <= n_max."""
    return _run_convenience(ScanSpec(kind="l2_pow2", n_max=n_max, **_spec_kwargs(kwargs)), kwargs)


def scan_l3_pow2(n_max: int, **kwargs: Any) -> ScanReport:
    """Classify the L3 value at indices 2^n for 0 <= n <= n_max."""
    return _run_convenience(ScanSpec(kind="l3_pow2", n_max=n_max, **_spec_kwargs(kwargs)), kwargs)


def scan_l3_mixed(m_max: int, n_max: int, **kwargs: Any) -> ScanReport:
    """Classify the L3 value at indices 3^m * 2^n over the (m, n) grid."""
    return _run_convenience(
        ScanSpec(kind="l3_mixed", m_max=m_max, n_max=n_max, **_spec_kwargs(kwargs)), kwargs
    )


def scan_l1_pow3(k_max: int, **kwargs: Any) -> ScanReport:
    """Classify the L1 value at indices 3^k for 0 <= k <= k_max (the only
    indices where L1 can be prime)."""
    return _run_convenience(ScanSpec(kind="l1_pow3", k_max=k_max, **_spec_kwargs(kwargs)), kwargs)


def scan_l4_twins(n_max: int, **kwargs: Any) -> ScanReport:
    """Find all n < n_max with L4(n) and L4(n+1) both prime; the pair
    starting at the unit L4(1) = 1 is flagged separately."""
    return _run_convenience(ScanSpec(kind="l4_twins", n_max=n_max, **_spec_kwargs(kwargs)), kwargs)


def scan_square_divisors(family: LFamily | str, n_max: int, p_max: int, **kwargs: Any) -> ScanReport:
    """Report every (n, p, e) with p^e dividing the value at n, e >= 2, over
    odd primes p <= p_max and indices n <= n_max."""
    name = family.name if isinstance(family, LFamily) else LFamily.parse(family).name
    return _run_convenience(
        ScanSpec(kind="square_divisors", family=name, n_max=n_max, p_max=p_max, **_spec_kwargs(kwargs)),
        kwargs,
    )


def scan_congruence_audit(n_max: int, family: LFamily | str | None = None, **kwargs: Any) -> ScanReport:
    """Check every builtin congruence rule over its covered indices <= n_max."""
    name = None
    if family is not None:
        name = family.name if isinstance(family, LFamily) else LFamily.parse(family).name
    return _run_convenience(
        ScanSpec(kind="congruence_audit", family=name, n_max=n_max, **_spec_kwargs(kwargs)), kwargs
    )


_SPEC_KEYS = ("seed", "extra_rounds")
_RUN_KEYS = ("jobs", "checkpoint_path", "limit", "fsync")


def _spec_kwargs(kwargs: dict[str, Any]) -> dict[str, Any]:
    unknown = set(kwargs) - set(_SPEC_KEYS) - set(_RUN_KEYS)
    if unknown:
        raise TypeError(f"unexpected keyword arguments {sorted(unknown)}")
    return {key: kwargs[key] for key in _SPEC_KEYS if key in kwargs}


def _run_convenience(spec: ScanSpec, kwargs: dict[str, Any]) -> ScanReport:
    run = {key: kwargs[key] for key in _RUN_KEYS if key in kwargs}
    return run_scan(spec, **run)
