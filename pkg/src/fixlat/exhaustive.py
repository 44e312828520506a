"""Brute-force oracles by full element enumeration.

Everything here is deliberately independent of the stabilizer-chain
machinery: elements come from product closure of the generators, and all
derived quantities are computed by direct filtering over that table.
These functions back the cross-checks for orders, membership,
stabilizers, fixed-point closures and tuple-orbit counts.
"""

from __future__ import annotations

from itertools import permutations
from math import factorial

import numpy as np

from .errors import CapacityError, ValidationError

ORDER_CAP = 1_000_000


def enumerate_elements(degree: int, gens, cap: int = ORDER_CAP) -> np.ndarray:
    """All elements of <gens> as lex-sorted rows of an (order, degree) array."""
    ident = np.arange(degree, dtype=np.int32)
    if not gens:
        return ident.reshape(1, degree)
    gen_arrays = [np.asarray(g, dtype=np.int32) for g in gens]
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident.reshape(1, degree)
    while frontier.shape[0]:
        images = [g[frontier] for g in gen_arrays]
        new = []
        for block in images:
            for row in block:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(row)
        if len(seen) > cap:
            raise CapacityError(
                f"group order exceeds exhaustive cap {cap}",
                cap_name="order", partial=len(seen))
        if not new:
            break
        frontier = np.stack(new)
        rows.extend(new)
    table = np.stack(rows)
    order = np.lexsort(table.T[::-1])
    return table[order]


def contains(elements: np.ndarray, images) -> bool:
    row = np.asarray(images, dtype=np.int32)
    return bool((elements == row).all(axis=1).any())


def stabilizer_rows(elements: np.ndarray, points) -> np.ndarray:
    """Rows fixing every listed point."""
    pts = list(points)
    if not pts:
        return elements
    sel = np.ones(elements.shape[0], dtype=bool)
    for x in pts:
        sel &= elements[:, x] == x
    return elements[sel]


def fixed_points(rows: np.ndarray) -> tuple[int, ...]:
    """Points fixed by every row."""
    degree = rows.shape[1]
    ident = np.arange(degree, dtype=rows.dtype)
    if rows.shape[0] == 0:
        return tuple(range(degree))
    return tuple(int(x) for x in np.flatnonzero((rows == ident).all(axis=0)))


def fixset_closure(elements: np.ndarray, points) -> tuple[int, ...]:
    """Fixed points of the pointwise stabilizer, by direct filtering."""
    return fixed_points(stabilizer_rows(elements, points))


def tuple_orbit_count(elements: np.ndarray, k: int) -> int:
    """Orbit count on distinct k-tuples via the orbit-counting lemma.

    Averages the number of fixed distinct k-tuples over the group: an
    element with f fixed points fixes f(f-1)...(f-k+1) such tuples.
    """
    order, degree = elements.shape
    if k > degree:
        raise ValidationError("tuple length exceeds degree")
    ident = np.arange(degree, dtype=elements.dtype)
    fix_counts = (elements == ident).sum(axis=1).astype(object)
    total = 0
    for f in fix_counts:
        term = 1
        for i in range(k):
            term *= f - i
        total += term
    assert total % order == 0
    return int(total // order)


def lattice_automorphism_count(leq: np.ndarray, cap_size: int = 10) -> int:
    """Order-automorphisms of a poset by filtering all |L|! permutations."""
    n = leq.shape[0]
    if n > cap_size:
        raise CapacityError(
            f"brute-force automorphism scan capped at {cap_size} elements",
            cap_name="brute_lattice")
    count = 0
    for p in permutations(range(n)):
        idx = np.array(p)
        if np.array_equal(leq[np.ix_(idx, idx)], leq):
            count += 1
    return count


def symmetric_order(n: int) -> int:
    return factorial(n)
