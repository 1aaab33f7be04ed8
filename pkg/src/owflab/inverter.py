"""Brute-force inversion oracles and the forward/inverse cost experiment.

brute_invert enumerates candidate payloads for a target instance, holding
the system part fixed (the functions never alter it), and forward-checks
each candidate.  The default candidate stream is all bit strings of the
payload's length in lexicographic order; experiments narrow it to the
well-formed encodings of a machine's inputs, which shrinks the space from
2^N to 2^n without changing soundness (every reported preimage is
forward-verified).
"""

from __future__ import annotations

import csv
import io
import itertools
import random
import time
from dataclasses import dataclass

from .coding import CodingError
from .pcp import PAPER_POLICY, ptf
from .semithue import (
    DeterminismPolicy,
    InstanceParseError,
    LOOKAHEAD8,
    RewriteSystem,
    parse_instance,
    serialize_instance,
    staf,
)
from .stcompile import MARKER, compile_semithue
from .tiling import TilingError, parse_tiling_instance, serialize_tiling_instance, tiling_f


@dataclass(frozen=True)
class Found:
    preimage: str
    attempts: int


@dataclass(frozen=True)
class NotFound:
    attempts: int


@dataclass(frozen=True)
class LimitExceeded:
    attempts: int


def _bit_strings(n: int):
    if n == 0:
        yield ""
        return
    for k in range(1 << n):
        yield format(k, f"0{n}b")


def evaluate(f_kind: str, w: str, policy: DeterminismPolicy | None = None) -> str:
    if f_kind == "staf":
        return staf(w, policy or LOOKAHEAD8)
    if f_kind == "ptf":
        return ptf(w, policy or PAPER_POLICY)
    if f_kind == "tiling":
        return tiling_f(w)
    raise ValueError(f"unknown function kind {f_kind!r}")


def brute_invert(f_kind: str, target: str,
                 policy: DeterminismPolicy | None = None,
                 limit: int = 1 << 20, candidates=None):
    """Search for x' with f(serialize(system, x')) = target.

    Unparseable targets are identity points (f(target) = target), so their
    unique preimage is the target itself.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if f_kind == "tiling":
        try:
            ts, row = parse_tiling_instance(target)
        except TilingError:
            return Found(target, 0)
        if candidates is None:
            candidates = (list(r) for r in itertools.product(
                range(len(ts.symbols)), repeat=len(row)))
        rebuild = lambda cand: serialize_tiling_instance(ts, cand)
    else:
        try:
            sys, y = parse_instance(target)
        except InstanceParseError:
            return Found(target, 0)
        if candidates is None:
            candidates = _bit_strings(len(y))
        rebuild = lambda cand: serialize_instance(sys, cand)
    attempts = 0
    for cand in candidates:
        if attempts >= limit:
            return LimitExceeded(attempts)
        attempts += 1
        try:
            w = rebuild(cand)
        except (InstanceParseError, TilingError, CodingError, ValueError):
            continue
        if evaluate(f_kind, w, policy) == target:
            return Found(w, attempts)
    return NotFound(attempts)


def backward_search(sys: RewriteSystem, y: str, budget: int,
                    max_nodes: int = 100_000):
    """All strings reaching y within `budget` reversed rewrite steps
    (matching a rule's right side, substituting its left side), capped at
    max_nodes distinct strings."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    seen = {y}
    frontier = [y]
    for _ in range(budget):
        nxt = []
        for w in frontier:
            for g, h in sys.rules:
                start = 0
                while True:
                    p = w.find(h, start)
                    if p < 0:
                        break
                    anc = w[:p] + g + w[p + len(h):]
                    if anc not in seen:
                        if len(seen) >= max_nodes:
                            return seen
                        seen.add(anc)
                        nxt.append(anc)
                    start = p + 1
        if not nxt:
            break
        frontier = nxt
    return seen


# --- machine-targeted inversion helpers -----------------------------------

def staf_payload(comp, x: str) -> str:
    """The raw initial string code(s)·x·code($) without the block check:
    undecomposable x stalls the closure at step 0, making the instance a
    fixed point of staf, which keeps every bit string usable as a target."""
    t = comp.table
    return t.code(comp.machine.start) + x + t.code(MARKER)


def staf_target(comp, x: str, policy: DeterminismPolicy = LOOKAHEAD8) -> str:
    return staf(serialize_instance(comp.system, staf_payload(comp, x)), policy)


def invert_staf_target(comp, target: str,
                       policy: DeterminismPolicy = LOOKAHEAD8,
                       limit: int = 1 << 20):
    """brute_invert over the 2ⁿ well-formed payload encodings."""
    sys, y = parse_instance(target)
    n = len(y) - 2 * comp.table.code_len
    if n < 1:
        return NotFound(0)
    cands = (staf_payload(comp, x) for x in _bit_strings(n))
    return brute_invert("staf", target, policy, limit, cands)


@dataclass(frozen=True)
class ExperimentRow:
    kind: str
    machine: str
    n: int
    seed: int
    forward_us: float
    attempts: int
    found: bool
    identity_rate: float
    policy: str


def _experiment_case(machine, n: int, x: str, policy: DeterminismPolicy,
                     limit: int):
    comp = compile_semithue(machine, n)
    t0 = time.perf_counter()
    target = staf_target(comp, x, policy)
    forward_us = (time.perf_counter() - t0) * 1e6
    out = invert_staf_target(comp, target, policy, limit)
    return forward_us, getattr(out, "attempts", 0), isinstance(out, Found)


def owf_experiment(machine, name: str, ns, targets_per_n: int, seed: int,
                   policy: DeterminismPolicy = LOOKAHEAD8,
                   limit: int = 1 << 22, identity_samples: int = 200,
                   jobs: int = 1):
    """Forward/inverse cost measurement for the rewrite-system function.

    For each n: sample targets from random inputs, time one forward
    evaluation, invert each target, and measure the identity rate of staf
    on random sampled instances (shared across n).  jobs > 1 spreads the
    per-target work over processes; rows keep their sequential order.
    """
    from .sampler import DefaultUniform, make_rng, sample_sts_instance
    from .semithue import serialize_instance as ser

    rng = random.Random(seed)
    d = DefaultUniform(max_int=64, max_len=32, seed=seed)
    srng = make_rng(d)
    ident = 0
    for _ in range(identity_samples):
        s = sample_sts_instance(d, srng)
        w = ser(s.system, s.payload)
        if staf(w, policy) == w:
            ident += 1
    identity_rate = ident / identity_samples if identity_samples else 0.0

    cases = [(n, format(rng.getrandbits(n), f"0{n}b"))
             for n in ns for _ in range(targets_per_n)]
    if jobs > 1:
        import concurrent.futures as cf
        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(
                _experiment_case,
                itertools.repeat(machine), (n for n, _ in cases),
                (x for _, x in cases), itertools.repeat(policy),
                itertools.repeat(limit)))
    else:
        results = [_experiment_case(machine, n, x, policy, limit)
                   for n, x in cases]
    return [
        ExperimentRow(
            kind="staf", machine=name, n=n, seed=seed,
            forward_us=forward_us, attempts=attempts, found=found,
            identity_rate=identity_rate,
            policy=f"{policy.mode}:{policy.depth}",
        )
        for (n, _), (forward_us, attempts, found) in zip(cases, results)
    ]


CSV_COLUMNS = ["kind", "machine", "n", "seed", "forward_us", "attempts",
               "found", "identity_rate", "policy"]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: getattr(r, c) for c in CSV_COLUMNS})
    return buf.getvalue()
