"""Shared helpers for exhaustive small-case checks."""

import itertools
from typing import Iterator


def perms(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of [n] in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def set_partitions(n: int) -> Iterator[list[set[int]]]:
    """All set partitions of [n], built independently of the package: each
    element either joins an existing block or opens a new one."""
    if n == 0:
        yield []
        return
    for smaller in set_partitions(n - 1):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] | {n}] + smaller[i + 1:]
        yield smaller + [{n}]
