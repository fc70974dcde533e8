"""Flags of rational subspaces: stabilizer dimensions by exact linear
algebra, forced-zero counting for permuted coordinate flags, the
semidirect splitting dimension calculus, induced flags and the
codimension-chain inequality, plus a finite-field building generator.

All stabilizer and orbit dimensions here are Lie-algebra dimensions of
linear-algebraic matrix groups, computed as nullspace dimensions of
exact-rational constraint systems. The coordinate-flag combinatorics
(forced zero patterns) provide an independent route for cross-checks.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import ratlin
from .complexes import SimplicialComplex
from .ratlin import mat, rank, rref, sparse_rank


class FlagError(ValueError):
    pass


@dataclass(frozen=True)
class RationalFlag:
    """Strictly increasing chain of proper nonzero subspaces of Q^m.

    Subspaces are canonical reduced-echelon basis matrices, so two equal
    flags compare equal as values. The empty flag (no subspaces) is
    allowed and plays the role of the trivial simplex conventions."""

    m: int
    subspaces: tuple  # tuple of canonical rref basis matrices

    @classmethod
    def make(cls, m: int, subspaces) -> "RationalFlag":
        canon = []
        for sub in subspaces:
            basis = rref(mat(sub))
            if not basis:
                raise FlagError("zero subspace in flag")
            if len(basis[0]) != m:
                raise FlagError("subspace vectors must have length m")
            canon.append(basis)
        dims = [len(b) for b in canon]
        if any(d >= m for d in dims):
            raise FlagError("flag subspaces must be proper")
        for a, b in zip(canon, canon[1:]):
            if len(a) >= len(b):
                raise FlagError("flag dimensions must strictly increase")
            if ratlin.rank(b + a) != len(b):
                raise FlagError("flag subspaces must be nested")
        return cls(m, tuple(canon))

    @property
    def length(self) -> int:
        return len(self.subspaces)

    def dims(self) -> tuple:
        return tuple(len(b) for b in self.subspaces)

    def padded(self):
        """Subspace chain with 0 and Q^m attached as conventions."""
        full = rref([[Fraction(int(i == j)) for j in range(self.m)] for i in range(self.m)])
        return ((),) + self.subspaces + (full,)

    def disjoint_from(self, other: "RationalFlag") -> bool:
        return not (set(self.subspaces) & set(other.subspaces))

    def to_json(self):
        return {
            "m": self.m,
            "subspaces": [[[str(x) for x in row] for row in b] for b in self.subspaces],
        }

    @classmethod
    def from_json(cls, data):
        return cls.make(int(data["m"]), data["subspaces"])


def coordinate_flag(m: int, sets) -> RationalFlag:
    """Flag of coordinate subspaces spanned by the given nested index sets
    (0-based)."""
    subs = []
    for s in sets:
        subs.append([[Fraction(int(j == i)) for j in range(m)] for i in sorted(s)])
    return RationalFlag.make(m, subs)


@dataclass(frozen=True)
class CoordinateFlagSpec:
    """A standard flag (prefix subspaces of the given sizes) moved by a
    permutation w of {0,...,m-1}."""

    m: int
    dims: tuple
    w: tuple

    def __post_init__(self):
        if not self.dims or list(self.dims) != sorted(set(self.dims)):
            raise FlagError("dims must be a nonempty sorted set")
        if not all(1 <= d <= self.m - 1 for d in self.dims):
            raise FlagError("dims must lie in 1..m-1")
        if sorted(self.w) != list(range(self.m)):
            raise FlagError("w must be a permutation of 0..m-1")

    def moved_sets(self):
        return [frozenset(self.w[i] for i in range(d)) for d in self.dims]

    def fixed_levels(self):
        return [
            k for k, (d, s) in enumerate(zip(self.dims, self.moved_sets()))
            if s == frozenset(range(d))
        ]


def forced_zero_count(spec: CoordinateFlagSpec) -> int:
    """Number of above-diagonal matrix positions identically zero on the
    stabilizer of the moved flag. Requires that no flag element is fixed
    by the permutation; the count is then at least the flag length."""
    fixed = spec.fixed_levels()
    if fixed:
        raise FlagError(f"permutation fixes flag element at level {fixed[0]}")
    moved = spec.moved_sets()
    count = 0
    for i in range(spec.m):
        for j in range(i + 1, spec.m):
            if any(j in s and i not in s for s in moved):
                count += 1
    return count


# ---------------------------------------------------------------------------
# Stabilizer dimensions by exact nullspace computations.


@functools.lru_cache(maxsize=None)
def _stab_constraint_rows(flag: RationalFlag):
    """Sparse rows over the m*m matrix entries cutting out the stabilizer
    algebra {A : A V <= V for every flag subspace}."""
    m = flag.m
    rows = []
    for basis in flag.subspaces:
        ann = ratlin.nullspace(basis, m)
        for b in basis:
            for u in ann:
                row = {}
                for i, ui in enumerate(u):
                    if ui == 0:
                        continue
                    for j, bj in enumerate(b):
                        if bj == 0:
                            continue
                        row[i * m + j] = row.get(i * m + j, Fraction(0)) + ui * bj
                rows.append(row)
    return rows


def stab_dim(flag: RationalFlag) -> int:
    """Dimension of the matrix algebra preserving every flag subspace."""
    return flag.m * flag.m - sparse_rank(_stab_constraint_rows(flag))


def stab_pair_dim(e: RationalFlag, f: RationalFlag) -> int:
    if e.m != f.m:
        raise FlagError("ambient dimensions differ")
    rows = _stab_constraint_rows(e) + _stab_constraint_rows(f)
    return e.m * e.m - sparse_rank(rows)


def orbit_codim(e: RationalFlag, f: RationalFlag) -> int:
    """dim Stab(E) - dim(Stab(E) & Stab(F)): the orbit dimension bound."""
    return stab_dim(e) - stab_pair_dim(e, f)


@dataclass(frozen=True)
class SplitDims:
    """Dimension bookkeeping of the semidirect splitting of a flag
    stabilizer into its unipotent radical and block-diagonal part."""

    graded_dims: tuple
    dim_n: int
    dim_levi: int
    dim_stab: int


def split_dims(flag: RationalFlag, cross_check: bool = True) -> SplitDims:
    dims = [0] + [len(b) for b in flag.subspaces] + [flag.m]
    graded = tuple(b - a for a, b in zip(dims, dims[1:]))
    dim_n = sum(
        graded[i] * graded[j]
        for i in range(len(graded))
        for j in range(i + 1, len(graded))
    )
    dim_levi = sum(d * d for d in graded)
    total = dim_n + dim_levi
    if cross_check and total != stab_dim(flag):
        raise FlagError("splitting dimensions disagree with the nullspace computation")
    return SplitDims(graded, dim_n, dim_levi, total)


# ---------------------------------------------------------------------------
# Induced flags in the graded pieces, the inert subflag, the codimension
# chain.


def _induced_pieces(e: RationalFlag, f: RationalFlag):
    """For each graded level i return the chain of intermediate spaces
    (E_{i+1} & F_j) + E_i, deduplicated, with trivial and full levels
    dropped. Spaces are represented inside Q^m."""
    m = e.m
    padded = e.padded()
    out = []
    for i in range(len(padded) - 1):
        lo, hi = padded[i], padded[i + 1]
        chain = []
        for fj in f.subspaces:
            inter = ratlin.intersection(hi, fj, m) if fj else ()
            w = ratlin.sum_space(inter, lo)
            if len(w) == len(lo) or len(w) == len(hi):
                continue  # trivial or full in the graded piece
            if w not in chain:
                chain.append(w)
        chain.sort(key=len)
        out.append(chain)
    return out


def induced_flags(e: RationalFlag, f: RationalFlag):
    """Induced chains per graded piece and their lengths."""
    if e.m != f.m:
        raise FlagError("ambient dimensions differ")
    pieces = _induced_pieces(e, f)
    return pieces, [len(c) for c in pieces]


def f0_subflag(e: RationalFlag, f: RationalFlag) -> RationalFlag:
    """Subflag of F whose members induce only trivial or full images in
    every graded piece of E."""
    if not e.disjoint_from(f):
        raise FlagError("flags share a subspace")
    m = e.m
    padded = e.padded()
    keep = []
    for fj in f.subspaces:
        inert = True
        for i in range(len(padded) - 1):
            lo, hi = padded[i], padded[i + 1]
            inter = ratlin.intersection(hi, fj, m)
            w = ratlin.sum_space(inter, lo)
            if len(w) != len(lo) and len(w) != len(hi):
                inert = False
                break
        if inert:
            keep.append(fj)
    return RationalFlag(m, tuple(keep))


@functools.lru_cache(maxsize=None)
def _nilpotent_constraint_rows(e: RationalFlag):
    """Sparse rows cutting out {A : A E_{i+1} <= E_i} (the strictly
    block-upper algebra of the flag)."""
    m = e.m
    padded = e.padded()
    rows = []
    for i in range(len(padded) - 1):
        lo, hi = padded[i], padded[i + 1]
        ann = ratlin.nullspace(lo, m) if lo else tuple(
            tuple(Fraction(int(a == b)) for b in range(m)) for a in range(m)
        )
        for b in hi:
            for u in ann:
                row = {}
                for ii, ui in enumerate(u):
                    if ui == 0:
                        continue
                    for j, bj in enumerate(b):
                        if bj == 0:
                            continue
                        row[ii * m + j] = row.get(ii * m + j, Fraction(0)) + ui * bj
                rows.append(row)
    return rows


@dataclass
class SlmReport:
    m: int
    length_e: int
    length_f: int
    dim_n_quotient: int        # dim N / (Stab(F) & N)
    induced_lengths: list
    length_f0: int
    codim: int
    codim_bound: int           # length(E) + length(F) + 1
    codim_ok: bool
    dim_gk: int                # dim(G/K) = m(m+1)/2 - codim
    lhs: int                   # dim(G/K) + |sigma| + |tau|
    rhs: int                   # m(m+1)/2 - 3
    inequality_ok: bool
    chain_ok: bool             # both intermediate >= steps hold
    counting_identity: bool    # length(F0) + sum L(i) == length(F); see note

    def to_json(self):
        return self.__dict__.copy()


def slm_inequality(e: RationalFlag, f: RationalFlag) -> SlmReport:
    """Assemble the codimension chain for a disjoint pair of nonempty
    flags and verify the final stabilizer-dimension inequality."""
    if e.m != f.m:
        raise FlagError("ambient dimensions differ")
    if not e.subspaces or not f.subspaces:
        raise FlagError("both flags must be nonempty")
    if not e.disjoint_from(f):
        raise FlagError("flags share a subspace")
    m = e.m
    sd = split_dims(e)
    nil_rows = _nilpotent_constraint_rows(e)
    dim_nil_stabf = m * m - sparse_rank(nil_rows + _stab_constraint_rows(f))
    dim_n_quot = sd.dim_n - dim_nil_stabf
    pieces, lengths = induced_flags(e, f)
    f0 = f0_subflag(e, f)
    codim = dim_n_quot + sum(1 + L for L in lengths)
    bound = e.length + f.length + 1
    # intermediate chain steps: the inert subflag bounds the N-quotient
    # (the orbit-codimension corollary), and the quotient together with
    # the induced lengths accounts for all of F
    step_orbit = dim_n_quot >= f0.length
    step_count = dim_n_quot + sum(lengths) >= f.length
    # A member of F can induce in a graded piece the same proper subspace
    # as another member, so the naive count length(F0) + sum L(i) can fall
    # short of length(F); it is reported but not required.
    counting_identity = f0.length + sum(lengths) == f.length
    sym = m * (m + 1) // 2
    dim_gk = sym - codim
    lhs = dim_gk + (e.length - 1) + (f.length - 1)
    rhs = sym - 3
    return SlmReport(
        m=m,
        length_e=e.length,
        length_f=f.length,
        dim_n_quotient=dim_n_quot,
        induced_lengths=lengths,
        length_f0=f0.length,
        codim=codim,
        codim_bound=bound,
        codim_ok=codim >= bound,
        dim_gk=dim_gk,
        lhs=lhs,
        rhs=rhs,
        inequality_ok=lhs <= rhs,
        chain_ok=step_orbit and step_count,
        counting_identity=counting_identity,
    )


# ---------------------------------------------------------------------------
# Coordinate-flag enumeration (exhaustive sweeps) and random rational flags.


def subset_chains(m: int):
    """All chains of nonempty proper subsets of {0..m-1}, as tuples of
    frozensets, shortest-first within a deterministic order."""
    subsets = []
    for r in range(1, m):
        for combo in itertools.combinations(range(m), r):
            subsets.append(frozenset(combo))

    chains = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for s in subsets:
            if len(s) > len(last) and last < s:
                extend(chain + [s])

    for s in subsets:
        extend([s])
    return chains


def prefix_chains(m: int):
    """Chains of prefix subsets {0..d-1}: representatives of all chains
    up to simultaneous permutation of the coordinates."""
    out = []
    for r in range(1, m):
        for dims in itertools.combinations(range(1, m), r):
            out.append(tuple(frozenset(range(d)) for d in dims))
    return out


def random_flag(m: int, dims, rng: random.Random) -> RationalFlag:
    """Random flag with the given dimension profile; small-height entries,
    regenerated on degeneracy."""
    while True:
        rows = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(m)]
            for _ in range(m)
        ]
        if rank(rows) != m:
            continue
        subs = [rows[:d] for d in dims]
        try:
            return RationalFlag.make(m, subs)
        except FlagError:
            continue


def random_disjoint_pair(m: int, rng: random.Random):
    while True:
        r1 = rng.randint(1, m - 1)
        r2 = rng.randint(1, m - 1)
        d1 = sorted(rng.sample(range(1, m), r1))
        d2 = sorted(rng.sample(range(1, m), r2))
        e = random_flag(m, d1, rng)
        f = random_flag(m, d2, rng)
        if e.disjoint_from(f):
            return e, f


# ---------------------------------------------------------------------------
# Finite-field building generator.


def _gf_rref(rows, p):
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [x * inv % p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] % p:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])


def gf_subspaces(m: int, q: int, d: int):
    """Canonical echelon bases of the d-dimensional subspaces of F_q^m."""
    out = []
    for pivots in itertools.combinations(range(m), d):
        free_pos = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, m):
                if c not in pivots:
                    free_pos.append((r, c))
        for values in itertools.product(range(q), repeat=len(free_pos)):
            rows = [[0] * m for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_pos, values):
                rows[r][c] = v
            out.append(tuple(tuple(row) for row in rows))
    return out


def _gf_contains(small, big, p):
    stacked = _gf_rref(list(big) + list(small), p)
    return len(stacked) == len(big)


def finite_building(m: int, q: int, max_m: int = 4, max_q: int = 3) -> SimplicialComplex:
    """Order complex of the proper nonzero subspaces of F_q^m: vertices
    are subspaces, simplices are containment chains. Size-guarded."""
    if not (3 <= m <= max_m) or not (2 <= q <= max_q):
        raise FlagError(f"size guard: need 3 <= m <= {max_m}, 2 <= q <= {max_q}")
    by_dim = {d: gf_subspaces(m, q, d) for d in range(1, m)}
    labels = {}
    for d, subs in by_dim.items():
        for i, s in enumerate(subs):
            labels[s] = f"d{d}s{i}"
    # maximal chains: one subspace of every dimension, nested
    succ = {}
    for d in range(1, m - 1):
        for s in by_dim[d]:
            succ[s] = [t for t in by_dim[d + 1] if _gf_contains(s, t, q)]
    chains = []

    def grow(chain):
        if len(chain) == m - 1:
            chains.append([labels[s] for s in chain])
            return
        for t in succ[chain[-1]]:
            grow(chain + [t])

    for s in by_dim[1]:
        grow([s])
    vertices = [labels[s] for d in range(1, m) for s in by_dim[d]]
    return SimplicialComplex(vertices, chains)


def complete_flag_count(m: int, q: int) -> int:
    """Number of complete flags in F_q^m: product of q-bracket integers."""
    total = 1
    for k in range(2, m + 1):
        total *= (q**k - 1) // (q - 1)
    return total
