"""Finite abstract simplicial complexes and their chain complexes.

Simplices are stored as sorted tuples of vertex indices; boundary signs
come from the induced ordering, so homology is independent of the input
labelling. Chain complexes live over Z or F_p and homology is computed
through the sparse normal forms in :mod:`smallmodel.normalform`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .normalform import DEFAULT_BIT_BOUND, invariant_factors, rank_mod_p


class ComplexError(ValueError):
    pass


def _check_ring(ring):
    if ring == "Z":
        return ring
    if isinstance(ring, int) and ring >= 2 and all(ring % d for d in range(2, int(ring**0.5) + 1)):
        return ring
    raise ComplexError(f"ring must be 'Z' or a prime, got {ring!r}")


class SimplicialComplex:
    """Downward-closed set system on an ordered finite vertex set."""

    def __init__(self, vertices, facets):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError("duplicate vertex labels")
        index = {v: i for i, v in enumerate(self.vertices)}
        fsets = []
        for f in facets:
            fs = frozenset(index[v] if v in index else self._missing(v) for v in f)
            if not fs:
                raise ComplexError("empty facet")
            fsets.append(fs)
        # drop facets contained in others
        maximal = [f for f in fsets if not any(f < g for g in fsets)]
        self.facets = frozenset(maximal)
        if not self.facets:
            raise ComplexError("complex has no facets (empty complex rejected)")
        # downward closure, per dimension
        seen = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                for sub in itertools.combinations(sorted(f), k):
                    seen.add(sub)
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for s in seen:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._simplices = {d: sorted(ss) for d, ss in sorted(by_dim.items())}
        self._index = {
            d: {s: i for i, s in enumerate(ss)} for d, ss in self._simplices.items()
        }
        self._vindex = index

    @staticmethod
    def _missing(v):
        raise ComplexError(f"facet vertex {v!r} not declared")

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._simplices)

    def simplices(self, d: int) -> list[tuple[int, ...]]:
        """Sorted d-simplices as tuples of vertex indices."""
        return self._simplices.get(d, [])

    def all_simplices(self):
        for d in sorted(self._simplices):
            yield from self._simplices[d]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._simplices.get(d, [])) for d in range(self.dim + 1))

    def has_simplex(self, s) -> bool:
        t = tuple(sorted(s))
        return self._index.get(len(t) - 1, {}).get(t) is not None

    def simplex_indices(self, labels) -> tuple[int, ...]:
        """Translate a simplex given by vertex labels to index form."""
        try:
            t = tuple(sorted(self._vindex[v] for v in labels))
        except KeyError as e:
            raise ComplexError(f"unknown vertex {e.args[0]!r}") from None
        if not self.has_simplex(t):
            raise ComplexError(f"{tuple(labels)} is not a simplex")
        return t

    def is_flag(self) -> bool:
        """True iff every clique of the 1-skeleton spans a simplex."""
        edges = {e for e in self.simplices(1)}
        adj = {i: set() for i, _ in enumerate(self.vertices) if (i,) in self._index.get(0, {})}
        for a, b in edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)

        verts = sorted(adj)

        def extend(clique, candidates):
            if len(clique) >= 3 and not self.has_simplex(clique):
                return False
            for v in candidates:
                if all(v in adj[u] for u in clique):
                    if not extend(clique + [v], [w for w in candidates if w > v]):
                        return False
            return True

        return extend([], verts)

    # -- subcomplexes --------------------------------------------------

    def _from_index_facets(self, facets_idx):
        labels = [[self.vertices[i] for i in f] for f in facets_idx]
        used = sorted({i for f in facets_idx for i in f})
        return SimplicialComplex([self.vertices[i] for i in used], labels)

    def link(self, sigma) -> "SimplicialComplex":
        """Lk(sigma): faces disjoint from sigma whose union with it is a face."""
        s = set(self._need(sigma))
        facets = []
        for f in self.facets:
            if s <= f and f - s:
                facets.append(sorted(f - s))
        if not facets:
            raise ComplexError("link is empty")
        return self._from_index_facets(facets)

    def delta_sigma(self, sigma) -> "SimplicialComplex":
        """Union of the closed simplices containing sigma."""
        s = set(self._need(sigma))
        facets = [sorted(f) for f in self.facets if s <= f]
        return self._from_index_facets(facets)

    def neighborhood(self, sigma) -> "SimplicialComplex":
        """N(sigma): union of the closed simplices meeting sigma."""
        s = set(self._need(sigma))
        facets = [sorted(f) for f in self.facets if s & f]
        return self._from_index_facets(facets)

    def _need(self, sigma):
        t = tuple(sorted(sigma))
        if not self.has_simplex(t):
            raise ComplexError(f"{sigma} is not a simplex")
        return t

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        va = [("a", v) for v in self.vertices]
        vb = [("b", v) for v in other.vertices]
        facets = []
        for f in self.facets:
            for g in other.facets:
                facets.append(
                    [("a", self.vertices[i]) for i in f]
                    + [("b", other.vertices[j]) for j in g]
                )
        return SimplicialComplex(va + vb, facets)

    def relabel(self, mapping) -> "SimplicialComplex":
        verts = [mapping[v] for v in self.vertices]
        facets = [[mapping[self.vertices[i]] for i in f] for f in self.facets]
        return SimplicialComplex(sorted(verts), facets)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "facets": [sorted(str(self.vertices[i]) for i in f) for f in sorted(self.facets, key=sorted)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(data["vertices"], data["facets"])

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.facets == other.facets
        )

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, f={self.f_vector()})"


def downward_closure(vertices, facets) -> SimplicialComplex:
    return SimplicialComplex(vertices, facets)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyTable:
    """Per-degree free rank and invariant-factor torsion."""

    reduced: bool
    ring: object
    entries: tuple  # ((degree, rank, (torsion, ...)), ...)

    def rank(self, k: int) -> int:
        for d, r, _ in self.entries:
            if d == k:
                return r
        return 0

    def torsion(self, k: int) -> tuple:
        for d, _, t in self.entries:
            if d == k:
                return t
        return ()

    def nonzero_degrees(self):
        return [d for d, r, t in self.entries if r or t]

    def is_trivial(self) -> bool:
        return not self.nonzero_degrees()

    def euler_characteristic(self) -> int:
        chi = sum((-1) ** d * r for d, r, _ in self.entries)
        return chi

    def to_json(self):
        return [
            {"degree": d, "rank": r, "torsion": list(t)}
            for d, r, t in self.entries
            if r or t
        ]

    def same_groups(self, other: "HomologyTable") -> bool:
        mine = {(d, r, t) for d, r, t in self.entries if r or t}
        theirs = {(d, r, t) for d, r, t in other.entries if r or t}
        return mine == theirs


class ChainComplex:
    """Graded free modules over Z or F_p with sparse boundary columns.

    ``boundaries[k]`` is a list (one per degree-k basis cell) of sparse
    columns {index of (k-1)-cell: coefficient}. Degrees run 0..top; a
    reduced complex carries an augmentation from degree 0 to a rank-1
    degree -1.
    """

    def __init__(self, ring, ranks, boundaries, augmented=False, check=True):
        self.ring = _check_ring(ring)
        self.ranks = list(ranks)
        self.boundaries = {k: cols for k, cols in boundaries.items()}
        self.augmented = augmented
        if check:
            self.check_shapes()
            self.check_dd_zero()

    def rank(self, k):
        if k == -1:
            return 1 if self.augmented else 0
        if 0 <= k < len(self.ranks):
            return self.ranks[k]
        return 0

    @property
    def top(self):
        return len(self.ranks) - 1

    def check_shapes(self):
        for k, cols in self.boundaries.items():
            if len(cols) != self.rank(k):
                raise ComplexError(f"boundary {k} has {len(cols)} columns, rank {self.rank(k)}")
            below = self.rank(k - 1)
            for col in cols:
                if any(not (0 <= i < below) for i in col):
                    raise ComplexError(f"boundary {k} hits indices outside degree {k-1}")

    def check_dd_zero(self):
        mod = None if self.ring == "Z" else self.ring
        for k in sorted(self.boundaries):
            lower = self.boundaries.get(k - 1)
            if lower is None:
                continue
            for col in self.boundaries[k]:
                acc: dict[int, int] = {}
                for i, v in col.items():
                    for i2, v2 in lower[i].items():
                        acc[i2] = acc.get(i2, 0) + v * v2
                for v in acc.values():
                    if (v % mod) if mod else v:
                        raise ComplexError("boundary composition is nonzero")

    def boundary_columns(self, k):
        return self.boundaries.get(k, [{} for _ in range(self.rank(k))])

    def homology(self, bit_bound: int = DEFAULT_BIT_BOUND) -> HomologyTable:
        lowest = -1 if self.augmented else 0
        degrees = range(lowest, self.top + 1)
        if self.ring == "Z":
            facs = {}
            for k in degrees:
                cols = self.boundaries.get(k)
                facs[k] = invariant_factors(cols, bit_bound) if cols else []
            entries = []
            for k in degrees:
                r = self.rank(k) - len(facs.get(k, [])) - len(facs.get(k + 1, []))
                tors = tuple(f for f in facs.get(k + 1, []) if f > 1)
                entries.append((k, r, tors))
        else:
            p = self.ring
            rk = {}
            for k in degrees:
                cols = self.boundaries.get(k)
                rk[k] = rank_mod_p(cols, p) if cols else 0
            entries = []
            for k in degrees:
                r = self.rank(k) - rk.get(k, 0) - rk.get(k + 1, 0)
                entries.append((k, r, ()))
        return HomologyTable(self.augmented, self.ring, tuple(entries))


def chain_complex(K: SimplicialComplex, ring="Z", reduced=False) -> ChainComplex:
    ring = _check_ring(ring)
    ranks = [len(K.simplices(d)) for d in range(K.dim + 1)]
    boundaries = {}
    for d in range(1, K.dim + 1):
        idx = {s: i for i, s in enumerate(K.simplices(d - 1))}
        cols = []
        for s in K.simplices(d):
            col = {}
            for j in range(len(s)):
                face = s[:j] + s[j + 1 :]
                col[idx[face]] = (-1) ** j
            cols.append(col)
        boundaries[d] = cols
    if reduced:
        boundaries[0] = [{0: 1} for _ in K.simplices(0)]
    return ChainComplex(ring, ranks, boundaries, augmented=reduced, check=False)


def homology(K: SimplicialComplex, ring="Z", reduced=True,
             bit_bound: int = DEFAULT_BIT_BOUND) -> HomologyTable:
    """Simplicial homology of K over Z or F_p (reduced by default)."""
    return chain_complex(K, ring, reduced=reduced).homology(bit_bound)


def tensor_total(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Total complex of the tensor double complex, with the usual sign twist."""
    if A.ring != B.ring:
        raise ComplexError("ring mismatch in tensor product")
    if A.augmented or B.augmented:
        raise ComplexError("tensor of augmented complexes not supported")
    top = A.top + B.top
    cells = {}   # degree -> list of (i, a, j, b)
    index = {}   # (i, a, j, b) -> position
    for n in range(top + 1):
        cl = []
        for i in range(min(n, A.top) + 1):
            j = n - i
            if j > B.top:
                continue
            for a in range(A.rank(i)):
                for b in range(B.rank(j)):
                    index[(i, a, j, b)] = len(cl)
                    cl.append((i, a, j, b))
        cells[n] = cl
    ranks = [len(cells[n]) for n in range(top + 1)]
    boundaries = {}
    for n in range(1, top + 1):
        cols = []
        for (i, a, j, b) in cells[n]:
            col = {}
            if i > 0:
                for a2, v in A.boundary_columns(i)[a].items():
                    col[index[(i - 1, a2, j, b)]] = v
            if j > 0:
                sign = (-1) ** i
                for b2, v in B.boundary_columns(j)[b].items():
                    key = index[(i, a, j - 1, b2)]
                    col[key] = col.get(key, 0) + sign * v
            cols.append({k: v for k, v in col.items() if v})
        boundaries[n] = cols
    return ChainComplex(A.ring, ranks, boundaries, check=True)
