"""Brute-force enumeration over S_n with exact verification of the image
counts of the iterated stack-sorting map.

Everything here is exact integer arithmetic.  Enumeration is the scaling
limit: the default bound is n <= 10 (3.63M permutations); 11 and 12 are
allowed behind an explicit `max_n` with the hard cap at 12.  Work splits
into shards defined by fixed leading entries, enumerated in lexicographic
order; shard results merge by set union, so counts are independent of the
shard layout and of scheduling.
"""

from __future__ import annotations

import heapq
import itertools
import math
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Sequence

from .constructions import zeta
from .errors import InvalidPermutationError, ResourceBoundError
from .patterns import descent_tops_are_lr_maxima
from .perm import Perm, identity, is_standard, tail_length

DEFAULT_MAX_N = 10
HARD_MAX_N = 12


def _resolve_bound(max_n: int | None) -> int:
    bound = DEFAULT_MAX_N if max_n is None else max_n
    if bound > HARD_MAX_N:
        raise ResourceBoundError(
            f"enumeration bound {bound} exceeds the hard cap {HARD_MAX_N}")
    return bound


def _require_within(n: int, max_n: int | None) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    bound = _resolve_bound(max_n)
    if n > bound:
        raise ResourceBoundError(
            f"n = {n} exceeds the enumeration bound {bound} "
            f"(raise max_n; hard cap {HARD_MAX_N})")


# ---------------------------------------------------------------------------
# Bell numbers

@dataclass(frozen=True)
class BellTable:
    """Bell numbers B_0..B_k from the triangle recurrence: each row starts
    with the previous row's last element and accumulates it leftward."""

    values: tuple[int, ...]

    @classmethod
    def up_to(cls, k: int) -> "BellTable":
        return cls(values=tuple(bell_numbers(k)))


def bell_numbers(k: int) -> list[int]:
    """B_0..B_k by the Bell triangle, exact ints."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    values = [1]
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        values.append(row[0])
    return values


def bell(k: int) -> int:
    """The k-th Bell number."""
    return bell_numbers(k)[-1]


def load_bell_fixture() -> list[int]:
    """Bell numbers from the bundled OEIS A000110 snapshot (one value per
    line, B_0 first)."""
    text = resources.files("stacksortlab").joinpath("data/a000110.txt").read_text()
    return [int(line) for line in text.split() if line]


def catalan(n: int) -> int:
    """The n-th Catalan number C(2n, n) / (n + 1), exactly."""
    return math.comb(2 * n, n) // (n + 1)


def west_zeilberger_count(n: int) -> int:
    """2 C(3n, n) / ((n+1)(2n+1)): the closed-form count of permutations in
    S_n sorted by two passes."""
    num = 2 * math.comb(3 * n, n)
    den = (n + 1) * (2 * n + 1)
    q, rem = divmod(num, den)
    assert rem == 0, (n, num, den)
    return q


# ---------------------------------------------------------------------------
# Image enumeration

@dataclass(frozen=True)
class ImageReport:
    """Exact result of enumerating the image of the t-fold sorting map over
    S_n.  `elements` is retained only on request; `count` always equals the
    deduplicated image size regardless of shard layout."""

    n: int
    t: int
    count: int
    elements: frozenset[Perm] | None
    shards: int
    wall_time: float

    def as_record(self) -> dict:
        rec: dict = {
            "n": self.n, "t": self.t, "count": self.count,
            "elements": None, "shards": self.shards,
            "wall_time": self.wall_time,
        }
        if self.elements is not None:
            rec["elements"] = [" ".join(map(str, p)) for p in sorted(self.elements)]
        return rec


@dataclass(frozen=True)
class VerificationReport:
    """One executable claim checked against brute force.  `passed` holds
    exactly when expected == observed (and every auxiliary set-level check
    listed in `parameters` succeeded)."""

    claim: str
    parameters: dict
    expected: int
    observed: int
    passed: bool

    def as_record(self) -> dict:
        return {
            "claim": self.claim, "parameters": dict(self.parameters),
            "expected": self.expected, "observed": self.observed,
            "pass": self.passed,
        }


def _shard_prefixes(n: int, shards: int) -> list[list[Perm]]:
    """Deterministic work split: fix leading entries, deepening until there
    are at least `shards` prefix blocks; block i goes to bucket i mod
    shards.  One bucket holding the empty prefix means a full scan."""
    if shards < 1:
        raise ValueError("shards must be >= 1")
    depth = 0
    blocks = 1
    while blocks < shards and depth < n:
        depth += 1
        blocks *= n - depth + 1
    prefixes = list(itertools.permutations(range(1, n + 1), depth))
    buckets: list[list[Perm]] = [[] for _ in range(min(shards, len(prefixes)))]
    for i, pre in enumerate(prefixes):
        buckets[i % len(buckets)].append(pre)
    return buckets


def _image_shard(task: tuple[int, int, list[Perm]]) -> set[bytes]:
    """Byte-packed images of the t-fold map over all permutations of [n]
    extending the given prefixes (one byte per entry, so n <= 16)."""
    n, t, prefixes = task
    ident = list(range(1, n + 1))
    seen: set[bytes] = set()
    add = seen.add
    permutations = itertools.permutations
    for prefix in prefixes:
        rest = [v for v in ident if v not in prefix]
        for tail in permutations(rest):
            w: Sequence[int] = prefix + tail
            for _ in range(t):
                if w == ident:
                    break
                out: list[int] = []
                ap = out.append
                stack: list[int] = []
                push = stack.append
                pop = stack.pop
                for x in w:
                    while stack and stack[-1] < x:
                        ap(pop())
                    push(x)
                while stack:
                    ap(pop())
                w = out
            add(bytes(w))
    return seen


def _image_shard_spill(task: tuple[int, int, list[Perm], str]) -> str:
    """Like `_image_shard`, but writes the sorted packed records to a file
    in `spill_dir` and returns its path (count-only streaming mode)."""
    n, t, prefixes, spill_dir = task
    codes = sorted(_image_shard((n, t, prefixes)))
    fd, path = tempfile.mkstemp(suffix=".shard", dir=spill_dir)
    with os.fdopen(fd, "wb") as fh:
        for code in codes:
            fh.write(code)
    return path


def _read_spill(path: str, width: int) -> Iterator[bytes]:
    with open(path, "rb") as fh:
        while True:
            rec = fh.read(width)
            if not rec:
                return
            yield rec


def _merge_spill_count(paths: list[str], width: int) -> int:
    count = 0
    prev = None
    for rec in heapq.merge(*(_read_spill(p, width) for p in paths)):
        if rec != prev:
            count += 1
            prev = rec
    return count


def image_of_iterate(
    n: int,
    t: int,
    keep_elements: bool = False,
    shards: int = 1,
    max_n: int | None = None,
    spill: bool = False,
) -> ImageReport:
    """Exact image of the t-fold sorting map over all n! permutations.

    `shards` splits the scan into that many independent tasks (run on a
    process pool when more than one); the merged count never depends on the
    split.  With `spill` set and elements not kept, shards stream sorted
    records through temporary files instead of merging sets in memory.
    """
    _require_within(n, max_n)
    if t < 0:
        raise ValueError("t must be nonnegative")
    start = time.perf_counter()
    if t == 0 and not keep_elements and not spill:
        # the 0-fold image is all of S_n; nothing to enumerate for a count
        return ImageReport(n=n, t=t, count=math.factorial(n), elements=None,
                           shards=shards, wall_time=time.perf_counter() - start)
    buckets = _shard_prefixes(n, shards)
    use_spill = spill and not keep_elements and n >= 1
    if use_spill:
        with tempfile.TemporaryDirectory(prefix="stacksort-spill-") as spill_dir:
            tasks = [(n, t, b, spill_dir) for b in buckets]
            if len(buckets) == 1:
                paths = [_image_shard_spill(tasks[0])]
            else:
                with ProcessPoolExecutor(
                        max_workers=min(len(buckets), os.cpu_count() or 1)) as pool:
                    paths = list(pool.map(_image_shard_spill, tasks))
            count = _merge_spill_count(paths, width=n)
        return ImageReport(n=n, t=t, count=count, elements=None,
                           shards=shards, wall_time=time.perf_counter() - start)
    tasks = [(n, t, b) for b in buckets]
    if len(buckets) == 1:
        sets = [_image_shard(tasks[0])]
    else:
        with ProcessPoolExecutor(
                max_workers=min(len(buckets), os.cpu_count() or 1)) as pool:
            sets = list(pool.map(_image_shard, tasks))
    union: set[bytes] = set().union(*sets)
    elements = frozenset(tuple(code) for code in union) if keep_elements else None
    return ImageReport(n=n, t=t, count=len(union), elements=elements,
                       shards=shards, wall_time=time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Membership characterization

def characterize_membership_rule(
    p: Sequence[int], t: int, max_n: int | None = None,
) -> tuple[bool, str]:
    """Decide membership of p in the image of the t-fold map over S_n and
    report which rule decided.

    With m = n - t: for n >= 2m-2 the tail-length/avoidance test decides
    ("thm1"); for n = 2m-3 the same test plus the zeta family decides
    ("thm2-characterized" / "thm2-zeta"); otherwise brute force within the
    enumeration bound ("oracle-fallback", with the exact shortcuts t = 0,
    image = everything, and t >= n-1, image = the identity alone).
    """
    p = tuple(p)
    if not is_standard(p):
        raise InvalidPermutationError(
            f"membership needs a permutation of [n], got {p}")
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = len(p)
    m = n - t
    if m >= 1 and n >= 2 * m - 2:
        ok = tail_length(p) >= t and descent_tops_are_lr_maxima(p)
        return ok, "thm1"
    if m >= 3 and n == 2 * m - 3:
        if tail_length(p) >= t and descent_tops_are_lr_maxima(p):
            return True, "thm2-characterized"
        if any(p == zeta(ell, m) for ell in range(3, m + 1)):
            return True, "thm2-zeta"
        return False, "thm2-characterized"
    if t == 0:
        return True, "oracle-fallback"
    if t >= n - 1:
        return p == identity(n), "oracle-fallback"
    try:
        _require_within(n, max_n)
    except ResourceBoundError:
        raise ResourceBoundError(
            f"membership for n = {n}, t = {t} is outside the characterized "
            f"regimes and over the enumeration bound: undecidable at this "
            f"scale") from None
    report = image_of_iterate(n, t, keep_elements=True, max_n=max_n)
    assert report.elements is not None
    return p in report.elements, "oracle-fallback"


def characterize_membership(p: Sequence[int], t: int,
                            max_n: int | None = None) -> bool:
    """Boolean-only form of `characterize_membership_rule`."""
    return characterize_membership_rule(p, t, max_n=max_n)[0]


# ---------------------------------------------------------------------------
# Verification suites

def _standard_perms(n: int) -> Iterator[Perm]:
    return itertools.permutations(range(1, n + 1))


def _predicted_image(n: int, t: int) -> frozenset[Perm]:
    """The characterized set {p in S_n : tail length >= t, avoider}."""
    fixed_tail = tuple(range(n - t + 1, n + 1))
    out = set()
    for p in _standard_perms(n):
        if t and p[n - t:] != fixed_tail:
            continue
        if descent_tops_are_lr_maxima(p):
            out.add(p)
    return frozenset(out)


def verify_theorem1(m: int, n: int, shards: int = 1,
                    max_n: int | None = None) -> VerificationReport:
    """Check |image of the (n-m)-fold map over S_n| = B_m for n >= 2m-2,
    including element-by-element equality with the characterized set."""
    if m < 1 or n < m or n < 2 * m - 2:
        raise ValueError(f"needs 1 <= m <= n and n >= 2m-2, got m={m}, n={n}")
    report = image_of_iterate(n, n - m, keep_elements=True, shards=shards,
                              max_n=max_n)
    assert report.elements is not None
    predicted = _predicted_image(n, n - m)
    expected = bell(m)
    observed = report.count
    set_equal = report.elements == predicted
    return VerificationReport(
        claim="theorem1",
        parameters={"m": m, "n": n, "set_equal": set_equal},
        expected=expected, observed=observed,
        passed=(expected == observed) and set_equal)


def verify_theorem2(m: int, shards: int = 1,
                    max_n: int | None = None) -> VerificationReport:
    """Check |image of the (m-3)-fold map over S_{2m-3}| = B_m + m - 2,
    with the image equal to the characterized set plus exactly the zeta
    family (which are precisely the image elements containing the barred
    pattern)."""
    if m < 3:
        raise ValueError(f"needs m >= 3, got m={m}")
    n = 2 * m - 3
    report = image_of_iterate(n, m - 3, keep_elements=True, shards=shards,
                              max_n=max_n)
    assert report.elements is not None
    characterized = _predicted_image(n, m - 3)
    zetas = frozenset(zeta(ell, m) for ell in range(3, m + 1))
    set_equal = report.elements == characterized | zetas
    containers = frozenset(p for p in report.elements
                           if not descent_tops_are_lr_maxima(p))
    zeta_exact = containers == zetas
    expected = bell(m) + m - 2
    observed = report.count
    return VerificationReport(
        claim="theorem2",
        parameters={"m": m, "n": n, "set_equal": set_equal,
                    "zeta_exact": zeta_exact},
        expected=expected, observed=observed,
        passed=(expected == observed) and set_equal and zeta_exact)


def verify_prop2(m: int, n_max: int, shards: int = 1,
                 max_n: int | None = None) -> VerificationReport:
    """Check that |image of the (n-m)-fold map over S_n| is nonincreasing
    in n, and at least B_m + m - 2 for m <= n <= 2m-3.  expected/observed
    are the number of checks made/passed; the count chain rides along in
    parameters."""
    if m < 1 or n_max < m:
        raise ValueError(f"needs 1 <= m <= n_max, got m={m}, n_max={n_max}")
    counts = [image_of_iterate(n, n - m, shards=shards, max_n=max_n).count
              for n in range(m, n_max + 1)]
    checks = 0
    passed = 0
    for i in range(len(counts) - 1):
        checks += 1
        passed += counts[i] >= counts[i + 1]
    floor = bell(m) + m - 2
    for i, n in enumerate(range(m, n_max + 1)):
        if m <= n <= 2 * m - 3:
            checks += 1
            passed += counts[i] >= floor
    return VerificationReport(
        claim="prop2",
        parameters={"m": m, "n_max": n_max, "counts": counts},
        expected=checks, observed=passed, passed=(checks == passed))


def count_avoiders(n: int, max_n: int | None = None) -> int:
    """|{p in S_n avoiding the barred pattern}| by scan (fast check)."""
    _require_within(n, max_n)
    return sum(1 for p in _standard_perms(n) if descent_tops_are_lr_maxima(p))


def count_t_stack_sortable(n: int, t: int, max_n: int | None = None) -> int:
    """Brute-force count of p in S_n fully sorted by t passes."""
    _require_within(n, max_n)
    if t < 0:
        raise ValueError("t must be nonnegative")
    ident = identity(n)
    count = 0
    for p in _standard_perms(n):
        w: Sequence[int] = p
        for _ in range(t):
            if w == ident:
                break
            out: list[int] = []
            ap = out.append
            stack: list[int] = []
            push = stack.append
            pop = stack.pop
            for x in w:
                while stack and stack[-1] < x:
                    ap(pop())
                push(x)
            while stack:
                ap(pop())
            w = tuple(out)
        if w == ident:
            count += 1
    return count


def verify_thm3_count(n: int, max_n: int | None = None) -> VerificationReport:
    """Check that barred-pattern avoiders of [n] are counted by B_n."""
    observed = count_avoiders(n, max_n=max_n)
    expected = bell(n)
    return VerificationReport(
        claim="thm3_count", parameters={"n": n},
        expected=expected, observed=observed, passed=expected == observed)


def verify_catalan(n: int, max_n: int | None = None) -> VerificationReport:
    """Check the 1-pass-sortable count against the Catalan number."""
    observed = count_t_stack_sortable(n, 1, max_n=max_n)
    expected = catalan(n)
    return VerificationReport(
        claim="catalan", parameters={"n": n},
        expected=expected, observed=observed, passed=expected == observed)


def verify_west_zeilberger(n: int, max_n: int | None = None) -> VerificationReport:
    """Check the 2-pass-sortable count against the closed formula."""
    observed = count_t_stack_sortable(n, 2, max_n=max_n)
    expected = west_zeilberger_count(n)
    return VerificationReport(
        claim="west_zeilberger", parameters={"n": n},
        expected=expected, observed=observed, passed=expected == observed)


def verify_all(max_n: int, shards: int = 1) -> list[VerificationReport]:
    """Every verification claim instantiated over all parameters that fit
    within the bound."""
    _resolve_bound(max_n)
    reports: list[VerificationReport] = []
    m = 1
    while max(m, 2 * m - 2) <= max_n:
        for n in range(max(m, 2 * m - 2), max_n + 1):
            reports.append(verify_theorem1(m, n, shards=shards, max_n=max_n))
        m += 1
    m = 3
    while 2 * m - 3 <= max_n:
        reports.append(verify_theorem2(m, shards=shards, max_n=max_n))
        m += 1
    for m in range(1, min(4, max_n) + 1):
        reports.append(verify_prop2(m, max_n, shards=shards, max_n=max_n))
    for n in range(1, max_n + 1):
        reports.append(verify_thm3_count(n, max_n=max_n))
    for n in range(1, max_n + 1):
        reports.append(verify_catalan(n, max_n=max_n))
    for n in range(1, max_n + 1):
        reports.append(verify_west_zeilberger(n, max_n=max_n))
    return reports


def explore_open(m: int, shards: int = 1,
                 max_n: int | None = None) -> list[ImageReport]:
    """Image sizes of the (n-m)-fold map for m <= n <= 2m-2: the window the
    characterizations leave open in the middle.

    Endpoints are pinned (m! and B_m, with the n = 2m-3 entry at
    B_m + m - 2); interior values are reported as computed, never asserted
    against a closed form.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    _require_within(max(m, 2 * m - 2), max_n)
    rows = [image_of_iterate(n, n - m, shards=shards, max_n=max_n)
            for n in range(m, 2 * m - 1)]
    if rows:
        if rows[0].count != math.factorial(m):
            raise AssertionError(
                f"first explore entry must be m! = {math.factorial(m)}, "
                f"got {rows[0].count}")
        if rows[-1].count != bell(m):
            raise AssertionError(
                f"last explore entry must be B_m = {bell(m)}, "
                f"got {rows[-1].count}")
        if m >= 3 and rows[m - 3].count != bell(m) + m - 2:
            raise AssertionError(
                f"entry at n = 2m-3 must be B_m + m - 2 = {bell(m) + m - 2}, "
                f"got {rows[m - 3].count}")
    return rows
