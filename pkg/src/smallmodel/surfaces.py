"""Multicurves on closed surfaces via their cut graphs.

A system of disjoint, pairwise non-homotopic essential curves on a
closed genus-g surface is recorded by its topological type: the pieces
of the cut surface (genus, punctures, boundary components) joined along
curve edges. Stabilizer homological dimensions come from the virtual
dimension formulas for mapping class groups of the pieces, summed over
pieces; cutting rules and the pants anchor (a maximal system has free
abelian twist stabilizer of rank 3g-3) pin the bookkeeping down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .smallness import Hdim, Orbit, OrbitComplex, PairEntry


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceType:
    """Connected surface: genus, punctures, boundary components."""

    g: int
    r: int
    s: int

    def __post_init__(self):
        if self.g < 0 or self.r < 0 or self.s < 0:
            raise SurfaceError("negative surface data")

    @property
    def in_formula_range(self) -> bool:
        return 2 * self.g + self.s + self.r > 2


def harer_dim(t: SurfaceType) -> int:
    """Virtual homological dimension of the mapping class group of t."""
    if not t.in_formula_range:
        raise SurfaceError(f"{t} outside the dimension formula range (need 2g+s+r>2)")
    if t.r == 0 and t.s == 0:
        return 4 * t.g - 5
    if t.g == 0:
        return (2 * t.r + t.s) - 3
    return 4 * t.g - 4 + (2 * t.r + t.s)


def cut_curve(t: SurfaceType, kind, parts=None) -> list[SurfaceType]:
    """Cut along one curve: nonseparating drops the genus and adds a
    puncture and a boundary component; separating splits the data, the
    first side receiving the puncture and the second the boundary."""
    if kind == "nonseparating":
        if t.g < 1:
            raise SurfaceError("nonseparating cut needs genus >= 1")
        out = [SurfaceType(t.g - 1, t.r + 1, t.s + 1)]
    elif kind == "separating":
        g1, r1, s1 = parts
        g2, r2, s2 = t.g - g1, t.r - r1, t.s - s1
        if min(g1, r1, s1, g2, r2, s2) < 0:
            raise SurfaceError("invalid separating partition")
        out = [SurfaceType(g1, r1 + 1, s1), SurfaceType(g2, r2, s2 + 1)]
    else:
        raise SurfaceError(f"unknown cut kind {kind!r}")
    for piece in out:
        if not piece.in_formula_range:
            raise SurfaceError(f"cut produces out-of-range piece {piece}")
    return out


@dataclass(frozen=True)
class CutSurfaceGraph:
    """Topological type of a multicurve on a closed surface.

    pieces[i] is the genus of piece i; curve_edges are (a, b, side) with
    side 0 meaning piece a receives the puncture and b the boundary
    component (1 the other way round). Loops (a == b) give piece a both.
    """

    closed_genus: int
    piece_genera: tuple
    curve_edges: tuple  # ((a, b, side), ...)

    def __post_init__(self):
        v = len(self.piece_genera)
        if v == 0:
            raise SurfaceError("no pieces")
        for a, b, side in self.curve_edges:
            if not (0 <= a < v and 0 <= b < v) or side not in (0, 1):
                raise SurfaceError("bad curve edge")
        # connectivity
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for a, b, _ in self.curve_edges:
                for y in ((b,) if a == x else ()) + ((a,) if b == x else ()):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        if len(seen) != v:
            raise SurfaceError("cut graph is not connected")
        b1 = len(self.curve_edges) - v + 1
        if sum(self.piece_genera) + b1 != self.closed_genus:
            raise SurfaceError("piece genera and graph cycles do not add up to the genus")
        if len(self.curve_edges) > max(3 * self.closed_genus - 3, 0):
            raise SurfaceError("more curves than a maximal system allows")
        for i, t in enumerate(self.piece_types()):
            if not t.in_formula_range:
                raise SurfaceError(f"piece {i} = {t} is not an essential-cut piece")

    @property
    def num_curves(self):
        return len(self.curve_edges)

    def piece_types(self) -> list[SurfaceType]:
        v = len(self.piece_genera)
        r = [0] * v
        s = [0] * v
        for a, b, side in self.curve_edges:
            if side == 0:
                r[a] += 1
                s[b] += 1
            else:
                r[b] += 1
                s[a] += 1
        return [SurfaceType(g, r[i], s[i]) for i, g in enumerate(self.piece_genera)]

    def flip_side(self, edge_index: int) -> "CutSurfaceGraph":
        edges = list(self.curve_edges)
        a, b, side = edges[edge_index]
        edges[edge_index] = (a, b, 1 - side)
        return CutSurfaceGraph(self.closed_genus, self.piece_genera, tuple(edges))

    def remove_curve(self, edge_index: int) -> "CutSurfaceGraph":
        """Reglue along one curve: merge the two pieces (or close up a
        handle when the curve bounds the same piece on both sides)."""
        a, b, _ = self.curve_edges[edge_index]
        rest = [e for i, e in enumerate(self.curve_edges) if i != edge_index]
        genera = list(self.piece_genera)
        if a == b:
            genera[a] += 1
            remap = list(range(len(genera)))
        else:
            lo, hi = sorted((a, b))
            genera[lo] += genera[hi]
            del genera[hi]
            remap = [i - 1 if i > hi else (lo if i == hi else i) for i in range(len(self.piece_genera))]
        edges = tuple((remap[x], remap[y], side) for x, y, side in rest)
        return CutSurfaceGraph(self.closed_genus, tuple(genera), edges)

    def to_json(self):
        return {
            "closed_genus": self.closed_genus,
            "pieces": [{"genus": g, "punctures": t.r, "boundary": t.s}
                       for g, t in zip(self.piece_genera, self.piece_types())],
            "curve_edges": [list(e) for e in self.curve_edges],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            int(data["closed_genus"]),
            tuple(int(p["genus"]) for p in data["pieces"]),
            tuple(tuple(e) for e in data["curve_edges"]),
        )


def multicurve_stab_hdim(G: CutSurfaceGraph) -> int:
    """Homological dimension of the (pointwise) multicurve stabilizer:
    sum of the piece dimensions."""
    return sum(harer_dim(t) for t in G.piece_types())


# ---------------------------------------------------------------------------
# Enumeration of topological types.


def _iso_key(genera, mult):
    loops = {i: mult.get((i, i), 0) for i in range(len(genera))}
    deg = {i: 0 for i in range(len(genera))}
    for (i, j), k in mult.items():
        if i == j:
            deg[i] += 2 * k
        else:
            deg[i] += k
            deg[j] += k
    profile = sorted((genera[i], deg[i], loops[i]) for i in range(len(genera)))
    return (len(genera), tuple(profile), tuple(sorted(mult.values())))


def _vertex_type_multisets(g, k, v):
    """Multisets of (genus, degree) for v pieces: degrees sum to 2k,
    genera sum to g - (k - v + 1), genus-0 pieces need degree >= 3."""
    genus_total = g - (k - v + 1)
    if genus_total < 0:
        return
    results = []

    def rec(slots_left, deg_left, gen_left, min_pair, acc):
        if slots_left == 0:
            if deg_left == 0 and gen_left == 0:
                results.append(tuple(acc))
            return
        for gen in range(min_pair[0], gen_left + 1):
            dmin = 3 if gen == 0 else 1
            dstart = max(dmin, min_pair[1] if gen == min_pair[0] else dmin)
            for d in range(dstart, deg_left - (slots_left - 1) + 1):
                # remaining slots need at least 1 degree each
                rec(slots_left - 1, deg_left - d, gen_left - gen, (gen, d), acc + [(gen, d)])

    rec(v, 2 * k, genus_total, (0, 3), [])
    return results


def _multigraphs_with_degrees(degrees, genera=None):
    """Loop-allowing multigraphs on labelled vertices with the given
    degree sequence, as multiplicity dicts {(i,j): k} with i <= j.

    Vertices sharing (degree, genus) are interchangeable, so the search
    prunes any partial matrix that a transposition of two completed
    same-class vertices would make lexicographically larger: the lex-max
    representative of every isomorphism class survives, which keeps the
    enumeration complete while collapsing most relabellings. Survivors
    still need an isomorphism dedupe."""
    v = len(degrees)
    cls = [(degrees[i], genera[i] if genera is not None else 0) for i in range(v)]
    grid = [[0] * v for _ in range(v)]  # symmetric, loops on the diagonal
    out = []

    def prefix_ok(i):
        # no same-class transposition of completed vertices beats the prefix
        for a in range(i + 1):
            for b in range(a + 1, i + 1):
                if cls[a] != cls[b]:
                    continue
                swap = list(range(v))
                swap[a], swap[b] = b, a
                verdict = 0
                for r in range(i + 1):
                    row_s = grid[swap[r]]
                    row_o = grid[r]
                    for c in range(v):
                        d = row_s[swap[c]] - row_o[c]
                        if d:
                            verdict = d
                            break
                    if verdict:
                        break
                if verdict > 0:
                    return False
        return True

    def rec(i, rem, mult):
        if i == v:
            if all(x == 0 for x in rem):
                out.append(dict(mult))
            return

        # distribute rem[i] over a loop at i and pairs (i, j > i)
        def pairs(j, left):
            if left == 0:
                if prefix_ok(i):
                    rec(i + 1, rem, mult)
                return
            if j == v:
                return
            cap = min(left, rem[j])
            for m in range(cap + 1):
                if m:
                    mult[(i, j)] = m
                    rem[j] -= m
                    grid[i][j] = grid[j][i] = m
                pairs(j + 1, left - m)
                if m:
                    del mult[(i, j)]
                    rem[j] += m
                    grid[i][j] = grid[j][i] = 0

        saved = rem[i]
        rem[i] = 0
        for loop in range(saved // 2 + 1):
            if loop:
                mult[(i, i)] = loop
                grid[i][i] = loop
            pairs(i + 1, saved - 2 * loop)
            if loop:
                del mult[(i, i)]
                grid[i][i] = 0
        rem[i] = saved

    rec(0, list(degrees), {})
    return out


def _connected(v, mult):
    if v == 1:
        return True
    adj = {i: set() for i in range(v)}
    for (i, j), k in mult.items():
        if i != j and k:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == v


def _weighted_nx(genera, mult):
    """Simple graph encoding of the multigraph: multiplicities as edge
    weights, loop counts folded into the node label. Used both for the
    refinement hash and for isomorphism testing."""
    g = nx.Graph()
    for i, gen in enumerate(genera):
        g.add_node(i, label=(gen, mult.get((i, i), 0)))
    for (i, j), k in mult.items():
        if i != j:
            g.add_edge(i, j, w=k)
    return g


def _dedupe(raw):
    """Group (genera, mult) pairs by a refinement hash, then decide the
    few remaining collisions by exact isomorphism."""
    buckets = {}
    for genera, mult in raw:
        g1 = _weighted_nx(genera, mult)
        h = nx.weisfeiler_lehman_graph_hash(g1, edge_attr="w", node_attr="label",
                                            iterations=3)
        buckets.setdefault((_iso_key(genera, mult), h), []).append((genera, mult, g1))
    reps = []
    for key in sorted(buckets):
        found = []
        for genera, mult, g1 in buckets[key]:
            new = True
            for _, _, g2 in found:
                matcher = nxiso.GraphMatcher(
                    g1, g2,
                    node_match=nxiso.categorical_node_match("label", None),
                    edge_match=nxiso.categorical_edge_match("w", None),
                )
                if matcher.is_isomorphic():
                    new = False
                    break
            if new:
                found.append((genera, mult, g1))
        reps.extend((genera, mult) for genera, mult, _ in found)
    return reps


def _to_cut_graph(g, genera, mult):
    edges = []
    for (i, j), k in sorted(mult.items()):
        for _ in range(k):
            edges.append((i, j, 0))
    return CutSurfaceGraph(g, tuple(genera), tuple(edges))


def enumerate_multicurves(g: int, k: int) -> list[CutSurfaceGraph]:
    """All topological types of k-curve systems on the closed genus-g
    surface, up to homeomorphism, with a canonical side assignment."""
    if g < 2:
        raise SurfaceError("need genus >= 2")
    if not (1 <= k <= 3 * g - 3):
        raise SurfaceError(f"need 1 <= k <= {3 * g - 3}")
    raw = []
    for v in range(max(1, k + 1 - g), k + 2):
        for types in _vertex_type_multisets(g, k, v) or []:
            genera = [t[0] for t in types]
            degrees = [t[1] for t in types]
            for mult in _multigraphs_with_degrees(degrees, genera):
                if _connected(v, mult):
                    raw.append((tuple(genera), mult))
    reps = _dedupe(raw)
    graphs = [_to_cut_graph(g, genera, mult) for genera, mult in reps]
    graphs.sort(key=lambda cg: (len(cg.piece_genera), cg.piece_genera, cg.curve_edges))
    return graphs


def enumerate_multicurves_by_matching(g: int, k: int) -> int:
    """Independent count of the same types by pairing half-edges
    (configuration-model construction); exponential, small inputs only."""
    if g < 2 or not (1 <= k <= 3 * g - 3):
        raise SurfaceError("out of range")
    raw = []
    for v in range(max(1, k + 1 - g), k + 2):
        for types in _vertex_type_multisets(g, k, v) or []:
            genera = [t[0] for t in types]
            degrees = [t[1] for t in types]
            half = []
            for i, d in enumerate(degrees):
                half.extend([i] * d)

            def match(remaining, mult):
                if not remaining:
                    if _connected(len(genera), mult):
                        raw.append((tuple(genera), dict(mult)))
                    return
                a = remaining[0]
                rest = remaining[1:]
                for idx in range(len(rest)):
                    b = rest[idx]
                    key = (min(half[a], half[b]), max(half[a], half[b]))
                    mult[key] = mult.get(key, 0) + 1
                    match(rest[:idx] + rest[idx + 1:], mult)
                    mult[key] -= 1
                    if not mult[key]:
                        del mult[key]

            match(list(range(len(half))), {})
    return len(_dedupe(raw))


# ---------------------------------------------------------------------------
# The stabilizer-dimension sweep and the certificate for the complex of
# curve systems.


def max_hdim_by_size(g: int) -> dict:
    """Largest stabilizer dimension over all types with a given number of
    curves."""
    table = {}
    for k in range(1, 3 * g - 2):
        table[k] = max(multicurve_stab_hdim(cg) for cg in enumerate_multicurves(g, k))
    return table


def lemma_smallstabilizers_sweep(g: int) -> dict:
    """Exhaustive check of hdim(Stab(A u B)) + |A| - 1 + |B| - 1 < 6g - 7.

    Exact branch: every type and every split of its curves into two
    nonempty parts. Bound branch: the counting argument for parts that
    intersect, hdim <= hdim(Stab(B)) - |A|, swept over all sizes and all
    types of B (with the maximal-system case |B| = 3g - 3 called out)."""
    if g < 2:
        raise SurfaceError("need genus >= 2")
    bound = 6 * g - 7
    kmax = 3 * g - 3
    exact_rows = []
    max_lhs = None
    witness = None
    ok = True
    for c in range(2, kmax + 1):
        for t_idx, cg in enumerate(enumerate_multicurves(g, c)):
            h = multicurve_stab_hdim(cg)
            for a in range(1, c):
                b = c - a
                lhs = h + (a - 1) + (b - 1)
                row_ok = lhs < bound
                ok = ok and row_ok
                if max_lhs is None or lhs > max_lhs:
                    max_lhs = lhs
                    witness = {"curves": c, "type_index": t_idx, "split": [a, b],
                               "hdim": h, "lhs": lhs}
                if not row_ok:
                    exact_rows.append({"curves": c, "type_index": t_idx,
                                       "split": [a, b], "lhs": lhs, "ok": False})
    bound_rows = []
    hmax = max_hdim_by_size(g)
    for b in range(1, kmax + 1):
        for t_idx, cg in enumerate(enumerate_multicurves(g, b)):
            hb = multicurve_stab_hdim(cg)
            for a in range(1, kmax + 1):
                est = max(0, hb - a)
                lhs = est + (a - 1) + (b - 1)
                row_ok = lhs < bound
                ok = ok and row_ok
                if b == kmax and hb != kmax:
                    # maximal systems are pants decompositions: twist lattice
                    ok = False
                    bound_rows.append({"B_curves": b, "type_index": t_idx,
                                       "error": "maximal system hdim != 3g-3"})
                if not row_ok:
                    bound_rows.append({"B_curves": b, "A_curves": a,
                                       "type_index": t_idx, "lhs": lhs, "ok": False})
    return {
        "genus": g,
        "bound": bound,
        "passed": ok,
        "max_exact_lhs": max_lhs,
        "max_exact_witness": witness,
        "exact_failures": exact_rows,
        "bound_failures": bound_rows,
        "max_hdim_by_size": hmax,
    }


def curve_complex_certificate(g: int) -> OrbitComplex:
    """Package the sweep as an orbit certificate: one orbit per
    topological type (dimension = curves - 1, exact hdim) and, for each
    orbit pair, an upper bound on the stabilizer intersection dimension
    covering both the disjoint-union and the intersecting configurations."""
    if g not in (2, 3):
        raise SurfaceError("certificate generator is size-guarded to genus 2 and 3")
    kmax = 3 * g - 3
    orbits = []
    size_of = {}
    hdim_of = {}
    for c in range(1, kmax + 1):
        for idx, cg in enumerate(enumerate_multicurves(g, c)):
            label = f"c{c}t{idx}"
            h = multicurve_stab_hdim(cg)
            orbits.append(Orbit(label, c - 1, Hdim(h)))
            size_of[label] = c
            hdim_of[label] = h
    hmax = max_hdim_by_size(g)
    pairs = {}
    labels = [o.label for o in orbits]
    for i, la in enumerate(labels):
        for lb in labels[i:]:
            a, b = size_of[la], size_of[lb]
            candidates = [0, hmax.get(a + b, -1) if a + b <= kmax else -1,
                          hdim_of[lb] - a, hdim_of[la] - b]
            entry = PairEntry(la, lb, True, Hdim(max(candidates), exact=False))
            pairs[entry.key()] = entry
    return OrbitComplex(
        boundary_dim=6 * g - 7,
        orbits=orbits,
        pairs=pairs,
        complete=True,
        provenance=f"curve system types, genus {g}",
    )


def pants_decompositions(g: int) -> list[CutSurfaceGraph]:
    return enumerate_multicurves(g, 3 * g - 3)
