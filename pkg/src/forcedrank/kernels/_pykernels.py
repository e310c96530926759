"""Reference kernels in numpy / pure Python.

These define the semantics the compiled kernels must reproduce exactly.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np


def team_extremes(values: np.ndarray, keys: np.ndarray, labels: int) -> tuple[np.ndarray, np.ndarray]:
    """Column positions of the ``labels`` lowest and highest members of each row.

    Rows are ordered by value, then by tie-break key, then by column (stable).
    ``low[:, 0]`` is each row's minimum; ``high[:, -1]`` its maximum.
    """
    order = np.lexsort((keys, values), axis=-1)
    return order[:, :labels].astype(np.intp), order[:, order.shape[1] - labels:].astype(np.intp)


def partition_correct_sums(bottom: np.ndarray, top: np.ndarray, team_size: int, labels: int) -> tuple[int, int, int]:
    """Enumerate every partition of ``len(bottom)`` items into unordered teams.

    Items must carry distinct talents; ``bottom`` / ``top`` flag ground-truth
    tails. A team holding ``m`` bottom-tail members terminates ``min(labels, m)``
    of them correctly, since its lowest members are exactly its tail members.

    Returns ``(partitions, total correct terminations, total correct promotions)``
    summed over all partitions.
    """
    bottom = [int(b) for b in bottom]
    top = [int(t) for t in top]
    n = len(bottom)
    if n % team_size:
        raise ValueError("item count must be a multiple of team_size")
    count = term = prom = 0

    def recurse(remaining: tuple[int, ...], t_acc: int, p_acc: int) -> None:
        nonlocal count, term, prom
        if not remaining:
            count += 1
            term += t_acc
            prom += p_acc
            return
        anchor, rest = remaining[0], remaining[1:]
        for mates in combinations(range(len(rest)), team_size - 1):
            members = (anchor,) + tuple(rest[j] for j in mates)
            nb = sum(bottom[i] for i in members)
            nt = sum(top[i] for i in members)
            chosen = set(mates)
            left = tuple(x for j, x in enumerate(rest) if j not in chosen)
            recurse(left, t_acc + min(labels, nb), p_acc + min(labels, nt))

    recurse(tuple(range(n)), 0, 0)
    return count, term, prom
