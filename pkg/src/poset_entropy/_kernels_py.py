"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

import itertools


def downset_count(pred: list[int], n: int) -> int:
    # only reachable down-sets are stored, so this also works past n = 20
    if n == 0:
        return 1
    full = (1 << n) - 1
    layer = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for m, c in layer.items():
            for i in range(n):
                bit = 1 << i
                if not m & bit and pred[i] & m == pred[i]:
                    nxt[m | bit] = nxt.get(m | bit, 0) + c
        layer = nxt
    return layer.get(full, 0)


def bruteforce_count(pred: list[int], n: int) -> int:
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        seen = 0
        for x in perm:
            if pred[x] & seen != pred[x]:
                break
            seen |= 1 << x
        else:
            total += 1
    return total


def canonical_code(pred: list[int], n: int) -> int:
    total_bits = n * (n - 1) // 2
    best = [None]
    order: list[int] = []

    def dfs(placed: int, code: int, bitpos: int) -> None:
        depth = len(order)
        if depth == n:
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        for x in range(n):
            if placed >> x & 1 or pred[x] & placed != pred[x]:
                continue
            c = code
            for y in order:
                c = c << 1 | (pred[x] >> y & 1)
            nb = bitpos - depth
            if best[0] is not None and best[0] >> nb < c:
                continue
            order.append(x)
            dfs(placed | 1 << x, c, nb)
            order.pop()

    dfs(0, 0, total_bits)
    return best[0]
