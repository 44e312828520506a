"""Finite permutation groups given by generators.

Orders, membership and pointwise stabilizers come from deterministic
stabilizer chains; stabilizers of several points are computed by walking
a cached tower of one-point stabilizers, so repeated closure queries
share work. Orbit counts on k-tuple spaces go through the array kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from ._chain import StabilizerChain
from .errors import CapacityError, PreconditionError, ValidationError
from .perm import Permutation, mask_from_points, points_from_mask

DEGREE_CAP = 4096
TUPLE_SPACE_CAP = 5_000_000
EXHAUSTIVE_ORDER_CAP = 1_000_000


class PermutationGroup:
    """Subgroup of Sym(n) generated by explicit permutations.

    Instances are immutable in every observable way; internal caches only
    memoize derived data. Equality of groups is mathematical (mutual
    membership of generators), never equality of generator lists.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        if degree < 1:
            raise ValidationError("degree must be at least 1")
        if degree > DEGREE_CAP:
            raise CapacityError(
                f"degree {degree} exceeds cap {DEGREE_CAP}", cap_name="degree")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValidationError(
                    f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self._gen_tuples = tuple(g.images for g in gens)
        self._chain: Optional[StabilizerChain] = None
        self._stab_gens_cache: dict[tuple[int, ...], tuple] = {(): self._gen_tuples}
        self._stab_group_cache: dict[tuple[int, ...], "PermutationGroup"] = {}
        self._closure_cache: dict[int, int] = {}

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[str]) -> "PermutationGroup":
        return cls(degree, [Permutation.from_cycles(c, degree) for c in cycles])

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls(degree, [])

    @classmethod
    def symmetric(cls, n: int) -> "PermutationGroup":
        if n == 1:
            return cls.trivial(1)
        swap = [1, 0] + list(range(2, n))
        cycle = list(range(1, n)) + [0]
        return cls(n, [Permutation(swap), Permutation(cycle)])

    @classmethod
    def alternating(cls, n: int) -> "PermutationGroup":
        if n < 3:
            return cls.trivial(n)
        gens = [Permutation.from_cycles("(0 1 2)", n)]
        if n > 3:
            if n % 2:
                gens.append(Permutation(list(range(1, n)) + [0]))
            else:
                gens.append(Permutation([0] + list(range(2, n)) + [1]))
        return cls(n, gens)

    @classmethod
    def cyclic(cls, n: int) -> "PermutationGroup":
        return cls(n, [Permutation(list(range(1, n)) + [0])]) if n > 1 else cls.trivial(1)

    @classmethod
    def dihedral(cls, n: int) -> "PermutationGroup":
        """Symmetries of a regular n-gon on vertices 0..n-1."""
        rot = Permutation([(i + 1) % n for i in range(n)])
        flip = Permutation([(-i) % n for i in range(n)])
        return cls(n, [rot, flip])

    # -- chain plumbing -------------------------------------------------------

    def _base_chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self._gen_tuples)
        return self._chain

    def _stabilizer_gen_tuples(self, points: tuple[int, ...]) -> tuple:
        """Generators of the pointwise stabilizer of a sorted point tuple."""
        cached = self._stab_gens_cache.get(points)
        if cached is not None:
            return cached
        prev = self._stabilizer_gen_tuples(points[:-1])
        x = points[-1]
        if all(g[x] == x for g in prev):
            result = prev
        elif not prev:
            result = ()
        else:
            chain = StabilizerChain(self.degree, prev, base_prefix=(x,))
            result = tuple(chain.stabilizer_generators(1))
        self._stab_gens_cache[points] = result
        return result

    # -- fundamental operations ----------------------------------------------

    def order(self) -> int:
        return self._base_chain().order()

    def contains(self, p: Permutation) -> bool:
        if not isinstance(p, Permutation):
            p = Permutation(p)
        if p.degree != self.degree:
            raise ValidationError(
                f"permutation degree {p.degree} != group degree {self.degree}")
        return self._base_chain().contains(p.images)

    def equals(self, other: "PermutationGroup") -> bool:
        """Same subgroup of Sym(degree), tested by mutual membership."""
        if self.degree != other.degree:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return (self.degree == other.degree
                and all(other.contains(g) for g in self.generators))

    def orbit(self, x: int) -> tuple[int, ...]:
        if not (0 <= x < self.degree):
            raise ValidationError(f"point {x} out of range 0..{self.degree - 1}")
        seen = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for g in self._gen_tuples:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return tuple(sorted(seen))

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        done = set()
        out = []
        for x in range(self.degree):
            if x not in done:
                orb = self.orbit(x)
                done.update(orb)
                out.append(orb)
        return tuple(out)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermutationGroup":
        """Largest subgroup fixing every listed point individually."""
        mask = mask_from_points(points, self.degree)
        pts = points_from_mask(mask)
        group = self._stab_group_cache.get(pts)
        if group is None:
            gens = self._stabilizer_gen_tuples(pts)
            group = PermutationGroup(self.degree, [Permutation(g) for g in gens])
            self._stab_group_cache[pts] = group
        return group

    # -- orbit counting on tuple spaces ---------------------------------------

    def tuple_orbit_count(self, k: int, space_cap: int = TUPLE_SPACE_CAP) -> int:
        """Number of orbits on k-tuples of pairwise distinct points."""
        n = self.degree
        if k < 1:
            raise ValidationError("tuple length must be positive")
        if k > n:
            return 0
        if k == 1:
            return len(self.orbits())
        if n**k > space_cap:
            raise CapacityError(
                f"tuple space {n}^{k} exceeds cap {space_cap}",
                cap_name="tuple_space")
        if not self._gen_tuples:
            from math import perm as _nperm
            return _nperm(n, k)
        perms = np.array(self._gen_tuples, dtype=np.int64)
        labels, active = _kernels.tuple_orbit_labels(perms, k)
        return int(np.unique(labels[active]).size)

    def transitivity_degree(self, k_max: int,
                            space_cap: int = TUPLE_SPACE_CAP) -> int:
        """Largest k <= k_max with a single orbit on distinct k-tuples."""
        if k_max < 1:
            raise ValidationError("k_max must be at least 1")
        best = 0
        for k in range(1, min(k_max, self.degree) + 1):
            if self.tuple_orbit_count(k, space_cap) != 1:
                break
            best = k
        return best

    # -- primitivity -----------------------------------------------------------

    def _finest_blocks_merging(self, a: int, b: int) -> tuple[tuple[int, ...], ...]:
        """Finest invariant partition with a and b in one block (union-find)."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = [(a, b)]
        ra, rb = find(a), find(b)
        parent[max(ra, rb)] = min(ra, rb)
        while queue:
            x, y = queue.pop()
            for g in self._gen_tuples:
                rx, ry = find(g[x]), find(g[y])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
                    queue.append((g[x], g[y]))
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return tuple(sorted(tuple(sorted(v)) for v in groups.values()))

    def primitivity(self) -> "PrimitivityResult":
        """Primitivity test; an imprimitive action yields a block-system witness.

        The witness is the lexicographically least partition among the
        refinement-minimal non-trivial invariant ones.
        """
        if not self.is_transitive():
            raise PreconditionError("primitivity is defined for transitive actions")
        if self.degree <= 2:
            return PrimitivityResult(True, None)
        candidates = set()
        for b in range(1, self.degree):
            blocks = self._finest_blocks_merging(0, b)
            if 1 < len(blocks) < self.degree:
                candidates.add(blocks)
        if not candidates:
            return PrimitivityResult(True, None)

        def refines(p, q):
            cover = {}
            for bi, blk in enumerate(q):
                for x in blk:
                    cover[x] = bi
            return all(len({cover[x] for x in blk}) == 1 for blk in p)

        minimal = [p for p in candidates
                   if not any(q != p and refines(q, p) for q in candidates)]
        return PrimitivityResult(False, min(minimal))

    # -- exhaustive enumeration -------------------------------------------------

    def elements_array(self, cap: int = EXHAUSTIVE_ORDER_CAP) -> np.ndarray:
        """All group elements as a lex-sorted (order, degree) array.

        Product-closure enumeration, independent of the stabilizer chain;
        this is the oracle side of the order/membership cross-checks.
        """
        from .exhaustive import enumerate_elements
        return enumerate_elements(self.degree, self._gen_tuples, cap=cap)

    def elements(self, cap: int = EXHAUSTIVE_ORDER_CAP) -> list[Permutation]:
        return [Permutation(row) for row in self.elements_array(cap).tolist()]

    def __repr__(self) -> str:
        return (f"PermutationGroup(degree={self.degree}, "
                f"generators={len(self.generators)})")


@dataclass(frozen=True)
class PrimitivityResult:
    primitive: bool
    block_system: Optional[tuple[tuple[int, ...], ...]]


@dataclass(frozen=True)
class GroupAction:
    """A permutation group together with display labels for the points."""

    group: PermutationGroup
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != self.group.degree:
            raise ValidationError(
                f"{len(self.labels)} labels for degree {self.group.degree}")

    @classmethod
    def unlabeled(cls, group: PermutationGroup) -> "GroupAction":
        return cls(group, tuple(str(i) for i in range(group.degree)))


def group_from_generators(degree: int, gens: Iterable) -> PermutationGroup:
    """Build and verify a group from raw image lists, Permutations or cycle strings."""
    parsed = []
    for g in gens:
        if isinstance(g, Permutation):
            parsed.append(g)
        elif isinstance(g, str):
            parsed.append(Permutation.from_cycles(g, degree))
        else:
            parsed.append(Permutation(g))
    return PermutationGroup(degree, parsed)
