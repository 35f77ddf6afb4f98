"""Design rules for shuffling permutations.

A shuffle order on N pieces is a bijection of {1..N} written as the tuple
(pi(1), ..., pi(N)): after the segment is cut into pieces 1..N, output
slot k receives input piece pi(k).

Orders that provably rearrange poorly are screened out by four rules:
reducible orders (a prefix of pieces only shuffles within itself),
rotations (cyclic shifts, including the identity), orders that keep the
first or last piece in place, and orders that leave a block of 2..N-2
consecutive interior pieces untouched (meaningful for N > 3 only).
"""

from __future__ import annotations

import itertools

Perm = tuple[int, ...]

#: Rule names as reported by :func:`violations`.
REDUCIBLE = "reducible"
ROTATION = "rotation"
FIXED_ENDPOINT = "fixed-endpoint"
FIXED_BLOCK = "fixed-consecutive-block"


def as_permutation(perm) -> Perm:
    """Coerce to a tuple of ints and check it is a bijection of {1..N}."""
    p = tuple(int(v) for v in perm)
    if not p or sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {perm!r}")
    return p


def is_irreducible(perm) -> bool:
    """False when some proper prefix maps onto itself.

    If {pi(1..k)} = {1..k} for k < N the order splits into independent
    sub-shuffles that never exchange material across the split.
    """
    p = as_permutation(perm)
    top = 0
    for k, v in enumerate(p[:-1], start=1):
        top = max(top, v)
        if top == k:
            return False
    return True


def is_rotation(perm) -> bool:
    """True for cyclic shifts pi(k) = ((k-1+s) mod N) + 1; identity is s=0."""
    p = as_permutation(perm)
    n = len(p)
    s = p[0] - 1
    return all(p[k] == (k + s) % n + 1 for k in range(n))


def has_fixed_endpoint(perm) -> bool:
    """True when the first or the last piece stays in place."""
    p = as_permutation(perm)
    return p[0] == 1 or p[-1] == len(p)


def has_fixed_consecutive_block(perm) -> bool:
    """True when a block of 2..N-2 consecutive pieces stays in place (N > 3).

    A fixed block of length >= 2 always contains an adjacent fixed pair,
    and for N > 3 a pair already fits the 2..N-2 window, so the check
    reduces to scanning for two neighboring fixed points.
    """
    p = as_permutation(perm)
    n = len(p)
    if n <= 3:
        return False
    return any(p[i] == i + 1 and p[i + 1] == i + 2 for i in range(n - 1))


def violations(perm) -> tuple[str, ...]:
    """Names of every rule the order breaks; empty tuple when allowed."""
    p = as_permutation(perm)
    broken = []
    if not is_irreducible(p):
        broken.append(REDUCIBLE)
    if is_rotation(p):
        broken.append(ROTATION)
    if has_fixed_endpoint(p):
        broken.append(FIXED_ENDPOINT)
    if has_fixed_consecutive_block(p):
        broken.append(FIXED_BLOCK)
    return tuple(broken)


def is_allowed(perm) -> bool:
    """True when the order passes all four design rules."""
    return not violations(perm)


def enumerate_allowed(n: int) -> list[Perm]:
    """All allowed orders of {1..n}, in lexicographic order.

    The fixed ordering keeps ensemble averages reproducible run to run.
    """
    if not 2 <= n <= 9:
        raise ValueError(f"piece count must be in 2..9, got {n}")
    return [p for p in itertools.permutations(range(1, n + 1)) if is_allowed(p)]
