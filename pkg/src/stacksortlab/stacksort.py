"""West's stack-sorting map: one-pass machine, recursive definition,
iterated application, and replayable traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm import Perm, format_permutation, is_increasing


def stack_sort(p: Sequence[int]) -> Perm:
    """One pass of the sorting stack (the production implementation).

    The next input entry is pushed whenever the stack is empty or the entry
    is smaller than the stack top; otherwise the top pops to the output.
    Entries are distinct, so the machine never has to break a tie.

    >>> stack_sort((4, 1, 6, 2))
    (1, 4, 2, 6)
    >>> stack_sort(())
    ()
    """
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        # an entry lands only on a larger one (distinctness rules out ties)
        assert not stack or stack[-1] > x
        stack.append(x)
    while stack:
        out.append(stack.pop())
    return tuple(out)


def stack_sort_recursive(p: Sequence[int]) -> Perm:
    """The same map through s(L m R) = s(L) s(R) m, m the maximum entry.

    Kept as an independent implementation for differential testing against
    `stack_sort`; quadratic and perfectly happy to stay that way.

    >>> stack_sort_recursive((5, 2, 7, 3, 6, 1, 4))
    (2, 5, 3, 1, 4, 6, 7)
    """
    p = tuple(p)
    if not p:
        return ()
    i = p.index(max(p))
    return stack_sort_recursive(p[:i]) + stack_sort_recursive(p[i + 1:]) + (p[i],)


def stack_sort_iterate(p: Sequence[int], t: int) -> Perm:
    """t-fold application of the map; t = 0 is the identity map.

    Increasing permutations are fixed points, so iteration stops as soon as
    one is reached.
    """
    if t < 0:
        raise ValueError("iteration count must be nonnegative")
    q = tuple(p)
    for _ in range(t):
        if is_increasing(q):
            break
        q = stack_sort(q)
    return q


def is_t_stack_sortable(p: Sequence[int], t: int) -> bool:
    """True when t passes of the map fully sort p."""
    return is_increasing(stack_sort_iterate(p, t))


@dataclass(frozen=True)
class StackTrace:
    """Push/pop transcript of a single sorting pass.

    Exactly n pushes (in input order) and n pops (spelling the output);
    at every moment the live stack decreases from bottom to top.
    """

    events: tuple[tuple[str, int], ...]
    output: Perm


def trace_stack_sort(p: Sequence[int]) -> StackTrace:
    """Replayable event record of `stack_sort`.

    >>> trace_stack_sort((2, 1)).events
    (('push', 2), ('push', 1), ('pop', 1), ('pop', 2))
    """
    events: list[tuple[str, int]] = []
    out: list[int] = []
    stack: list[int] = []
    for x in p:
        while stack and stack[-1] < x:
            v = stack.pop()
            events.append(("pop", v))
            out.append(v)
        stack.append(x)
        events.append(("push", x))
    while stack:
        v = stack.pop()
        events.append(("pop", v))
        out.append(v)
    return StackTrace(events=tuple(events), output=tuple(out))


def format_trace(trace: StackTrace, compact: bool = False) -> str:
    """One `push <v>` / `pop <v>` line per event, terminated by an
    `output <perm>` line."""
    lines = [f"{kind} {value}" for kind, value in trace.events]
    lines.append(f"output {format_permutation(trace.output, compact=compact)}")
    return "\n".join(lines)
