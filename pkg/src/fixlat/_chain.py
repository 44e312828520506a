"""Deterministic stabilizer chains (Schreier-Sims).

The chain is built with a fixed strategy so that repeated runs produce
identical bases, transversals and strong generators:

* the caller may prescribe a base prefix (used to read off pointwise
  stabilizers directly);
* whenever the base must grow, the smallest point moved by the offending
  residue is appended;
* orbits are explored breadth-first with generators in list order.

Permutations are raw image tuples here; composition is apply-left-then-right.
"""

from __future__ import annotations

from collections import deque


def compose(p, q):
    """Apply p, then q."""
    return tuple(map(q.__getitem__, p))


def inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def min_moved(p):
    for i, j in enumerate(p):
        if i != j:
            return i
    return None


def sims_filter(degree, gens):
    """Reduce a generating list without changing the generated group.

    Keeps a table indexed by (smallest moved point, its image); each new
    generator is divided by table entries until it either finds an empty
    slot or vanishes. The table holds at most n(n-1)/2 entries and in
    practice stays small. Deterministic for a fixed input order.
    """
    ident = tuple(range(degree))
    table = {}
    inv_table = {}
    for g in gens:
        g = tuple(g)
        while g != ident:
            u = min_moved(g)
            v = g[u]
            slot = table.get((u, v))
            if slot is None:
                table[(u, v)] = g
                inv_table[(u, v)] = inverse(g)
                break
            g = compose(g, inv_table[(u, v)])
    return list(table.values())


class StabilizerChain:
    """Base / strong-generating-set index for a finite permutation group."""

    def __init__(self, degree, generators, base_prefix=()):
        self.degree = degree
        ident = tuple(range(degree))
        self._ident = ident
        gens = []
        seen = set()
        for g in generators:
            g = tuple(g)
            if g != ident and g not in seen:
                seen.add(g)
                gens.append(g)
        base = list(dict.fromkeys(base_prefix))
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(min_moved(g))
        self.base = base
        # level_gens[i]: strong generators fixing base[:i] pointwise
        self.level_gens = [
            [g for g in gens if all(g[b] == b for b in base[:i])]
            for i in range(len(base))
        ]
        self.transversals = [None] * len(base)
        self.inv_transversals = [None] * len(base)
        for i in range(len(base)):
            self._rebuild_transversal(i)
        self._schreier_sims()

    def _rebuild_transversal(self, i):
        b = self.base[i]
        gens = self.level_gens[i]
        tr = {b: self._ident}
        queue = deque([b])
        while queue:
            y = queue.popleft()
            uy = tr[y]
            for g in gens:
                z = g[y]
                if z not in tr:
                    tr[z] = compose(uy, g)
                    queue.append(z)
        self.transversals[i] = tr
        self.inv_transversals[i] = {y: inverse(u) for y, u in tr.items()}

    def _strip(self, h, start=0):
        """Sift h through levels >= start; (None, _) means h is in that subgroup."""
        for l in range(start, len(self.base)):
            y = h[self.base[l]]
            if y == self.base[l]:
                continue
            inv_tr = self.inv_transversals[l]
            if y not in inv_tr:
                return h, l + 1
            h = compose(h, inv_tr[y])
        if h == self._ident:
            return None, len(self.base) + 1
        return h, len(self.base) + 1

    def _schreier_sims(self):
        base = self.base
        lgens = self.level_gens
        i = len(base) - 1
        while i >= 0:
            restart = False
            tr = self.transversals[i]
            inv_tr = self.inv_transversals[i]
            for beta in sorted(tr):
                u_beta = tr[beta]
                for g in lgens[i]:
                    sg = compose(compose(u_beta, g), inv_tr[g[beta]])
                    if sg == self._ident:
                        continue
                    h, j = self._strip(sg, i + 1)
                    if h is None:
                        continue
                    if j == len(base) + 1:
                        base.append(min_moved(h))
                        lgens.append([])
                        self.transversals.append(None)
                        self.inv_transversals.append(None)
                        j = len(base)
                    for l in range(i + 1, j):
                        lgens[l].append(h)
                        self._rebuild_transversal(l)
                    i = j - 1
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        n = 1
        for tr in self.transversals:
            n *= len(tr)
        return n

    def contains(self, p) -> bool:
        h, _ = self._strip(tuple(p))
        return h is None

    def stabilizer_generators(self, depth: int):
        """Generators of the subgroup fixing base[:depth] pointwise."""
        if depth >= len(self.base):
            return []
        return sims_filter(self.degree, self.level_gens[depth])
