"""Stabilizer-dimension certificates for group actions on flag complexes.

A complex acted on by a group is encoded as orbit data: one record per
simplex orbit carrying the homological dimension of a stabilizer, plus a
pair table carrying, for each pair of orbits that admits a disjoint
representative pair, the homological dimension of the intersection of
the two stabilizers. The two checks are

    (single)  hdim(Stab(s)) + dim(s)            <= boundary_dim
    (pair)    hdim(Stab(s) & Stab(t)) + dim(s) + dim(t) < boundary_dim

and a passing pair sweep yields a page-one vanishing certificate for the
double-complex bookkeeping in total degrees >= boundary_dim.

Homological dimensions are inputs (caller-supplied or generator-derived),
never computed here; entries may be exact values or upper bounds, and a
pass obtained from upper bounds is still a pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import HomologyTable

VERIFIED = "verified"
VIOLATION = "counterexample"
INCONCLUSIVE = "inconclusive"

OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "INCONCLUSIVE"


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Hdim:
    """A homological dimension: exact value or an upper bound '<= value'."""

    value: int
    exact: bool = True

    def __post_init__(self):
        if self.value < 0:
            raise CertificateError("hdim must be nonnegative")

    def __str__(self):
        return str(self.value) if self.exact else f"<={self.value}"

    @classmethod
    def parse(cls, raw):
        if isinstance(raw, int):
            return cls(raw, True)
        s = str(raw).strip()
        if s.startswith("<="):
            return cls(int(s[2:]), False)
        return cls(int(s), True)

    def to_json(self):
        return self.value if self.exact else f"<={self.value}"


@dataclass(frozen=True)
class Orbit:
    label: str
    dim: int
    hdim: Hdim


@dataclass(frozen=True)
class PairEntry:
    a: str
    b: str
    disjoint: bool          # do the two orbits admit a disjoint representative pair
    hdim: Hdim | None = None  # required when disjoint

    def key(self):
        return tuple(sorted((self.a, self.b)))


@dataclass
class OrbitComplex:
    """Orbit-and-stabilizer certificate data for a group action."""

    boundary_dim: int
    orbits: list
    pairs: dict = field(default_factory=dict)  # key() -> PairEntry
    complete: bool = False
    provenance: str = ""

    def __post_init__(self):
        labels = [o.label for o in self.orbits]
        if len(set(labels)) != len(labels):
            raise CertificateError("duplicate orbit labels")

    def orbit(self, label):
        for o in self.orbits:
            if o.label == label:
                return o
        raise CertificateError(f"unknown orbit {label!r}")

    def pair_entries(self):
        return [self.pairs[k] for k in sorted(self.pairs)]

    def to_json(self):
        return {
            "boundary_dim": self.boundary_dim,
            "orbits": [
                {"label": o.label, "dim": o.dim, "hdim": o.hdim.to_json()}
                for o in self.orbits
            ],
            "pairs": [
                {
                    "a": e.a,
                    "b": e.b,
                    "disjoint": e.disjoint,
                    **({"hdim": e.hdim.to_json()} if e.hdim is not None else {}),
                }
                for e in self.pair_entries()
            ],
            "complete": self.complete,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data):
        orbits = [
            Orbit(o["label"], int(o["dim"]), Hdim.parse(o["hdim"]))
            for o in data["orbits"]
        ]
        pairs = {}
        for e in data.get("pairs", []):
            entry = PairEntry(
                e["a"],
                e["b"],
                bool(e["disjoint"]),
                Hdim.parse(e["hdim"]) if "hdim" in e else None,
            )
            pairs[entry.key()] = entry
        return cls(
            boundary_dim=int(data["boundary_dim"]),
            orbits=orbits,
            pairs=pairs,
            complete=bool(data.get("complete", False)),
            provenance=data.get("provenance", ""),
        )


@dataclass
class SmallnessReport:
    status: str                     # verified / counterexample / inconclusive
    single_rows: list
    pair_rows: list
    min_slack: int | None = None
    max_slack: int | None = None
    equality_orbits: list = field(default_factory=list)
    witness: dict | None = None
    reason: str = ""

    @property
    def is_small(self):
        return self.status == VERIFIED

    def to_json(self):
        return {
            "status": self.status,
            "single": self.single_rows,
            "pairs": self.pair_rows,
            "min_slack": self.min_slack,
            "max_slack": self.max_slack,
            "equality_orbits": self.equality_orbits,
            "witness": self.witness,
            "reason": self.reason,
        }


def check_small(X: OrbitComplex) -> SmallnessReport:
    """Run the single and pair stabilizer-dimension checks.

    An incomplete pair table can only ever yield 'inconclusive', never a
    silent pass. An upper-bound hdim that satisfies an inequality proves
    it; one that violates it proves nothing either way.
    """
    n = X.boundary_dim
    single_rows, pair_rows = [], []
    witness = None
    inconclusive_reason = ""
    if not X.complete:
        inconclusive_reason = "pair table not declared complete"

    slacks = []
    equality = []
    for o in X.orbits:
        lhs = o.hdim.value + o.dim
        ok = lhs <= n
        single_rows.append(
            {"orbit": o.label, "hdim": str(o.hdim), "dim": o.dim, "lhs": lhs,
             "bound": n, "ok": ok}
        )
        if not ok:
            if o.hdim.exact:
                witness = witness or {"kind": "single", "orbit": o.label, "lhs": lhs}
            else:
                inconclusive_reason = inconclusive_reason or (
                    f"upper bound on orbit {o.label} does not settle the single check"
                )
        else:
            slacks.append(n - lhs)
            if lhs == n and o.hdim.exact:
                equality.append(o.label)

    seen_pairs = set()
    for e in X.pair_entries():
        seen_pairs.add(e.key())
        if not e.disjoint:
            pair_rows.append({"pair": list(e.key()), "disjoint": False, "ok": True})
            continue
        if e.hdim is None:
            inconclusive_reason = inconclusive_reason or (
                f"pair {e.key()} marked disjoint but carries no hdim"
            )
            continue
        da, db = X.orbit(e.a).dim, X.orbit(e.b).dim
        lhs = e.hdim.value + da + db
        ok = lhs < n
        pair_rows.append(
            {"pair": list(e.key()), "disjoint": True, "hdim": str(e.hdim),
             "lhs": lhs, "bound": n, "ok": ok}
        )
        if not ok:
            if e.hdim.exact:
                witness = witness or {"kind": "pair", "pair": list(e.key()), "lhs": lhs}
            else:
                inconclusive_reason = inconclusive_reason or (
                    f"upper bound on pair {e.key()} does not settle the pair check"
                )
        else:
            slacks.append(n - 1 - lhs)

    if X.complete:
        labels = [o.label for o in X.orbits]
        for i, a in enumerate(labels):
            for b in labels[i:]:
                if tuple(sorted((a, b))) not in seen_pairs:
                    inconclusive_reason = (
                        f"pair table declared complete but pair ({a},{b}) is missing"
                    )

    if witness is not None:
        status = VIOLATION
    elif inconclusive_reason:
        status = INCONCLUSIVE
    else:
        status = VERIFIED
    return SmallnessReport(
        status=status,
        single_rows=single_rows,
        pair_rows=pair_rows,
        min_slack=min(slacks) if slacks else None,
        max_slack=max(slacks) if slacks else None,
        equality_orbits=equality,
        witness=witness,
        reason=inconclusive_reason,
    )


@dataclass
class VanishingCertificate:
    status: str
    rows: list
    certified_total_degree: int | None
    failing_bidegree: tuple | None = None
    reason: str = ""

    def to_json(self):
        return {
            "status": self.status,
            "rows": self.rows,
            "certified_total_degree": self.certified_total_degree,
            "failing_bidegree": self.failing_bidegree,
            "reason": self.reason,
        }


def vanishing_certificate(X: OrbitComplex) -> VanishingCertificate:
    """Page-one vanishing table for total degrees >= boundary_dim.

    For a first-factor orbit of dimension i, the contribution of a
    disjoint orbit pair dies above column hdim + dim(tau); the pair check
    in the rearranged form hdim + dim(tau) < boundary_dim - i certifies
    every bidegree (i, j) with i + j >= boundary_dim.
    """
    base = check_small(X)
    if base.status == VIOLATION:
        # name a bidegree that cannot be certified
        w = base.witness
        if w and w["kind"] == "pair":
            a, b = w["pair"]
            oa, ob = X.orbit(a), X.orbit(b)
            e = X.pairs[tuple(sorted((a, b)))]
            fail = (oa.dim, e.hdim.value + ob.dim)
        else:
            o = X.orbit(w["orbit"])
            fail = (o.dim, o.hdim.value)
        return VanishingCertificate(VIOLATION, [], None, failing_bidegree=fail,
                                    reason="stabilizer-dimension check failed")
    if base.status == INCONCLUSIVE:
        return VanishingCertificate(INCONCLUSIVE, [], None, reason=base.reason)

    n = X.boundary_dim
    rows = []
    for e in X.pair_entries():
        if not e.disjoint:
            continue
        for sigma, tau in ((e.a, e.b), (e.b, e.a)):
            i = X.orbit(sigma).dim
            t = X.orbit(tau).dim
            rows.append(
                {
                    "sigma_orbit": sigma,
                    "tau_orbit": tau,
                    "i": i,
                    "hdim": str(e.hdim),
                    "tau_dim": t,
                    "lhs": e.hdim.value + t,
                    "rhs": n - i,
                    "ok": e.hdim.value + t < n - i,
                }
            )
    ok = all(r["ok"] for r in rows)
    status = VERIFIED if ok else VIOLATION
    return VanishingCertificate(status, rows, n if ok else None)


# ---------------------------------------------------------------------------
# Generator: join of infinite discrete sets acted on by a power of the
# rank-two free group (boundary model for a product of one-holed tori).


def generate_join_model(d: int) -> OrbitComplex:
    """Orbit certificate for the d-fold join of infinite discrete sets.

    One orbit per nonempty subset S of factors (a simplex picks a point
    in each chosen factor). A point stabilizer in its own factor is an
    infinite cyclic commutator conjugate (hdim 1); an untouched free
    factor contributes hdim 1; distinct commutator conjugates intersect
    trivially, so a disjoint pair loses one per shared factor.
    """
    if d < 2:
        raise CertificateError("join model needs at least two factors")
    subsets = []
    for mask in range(1, 1 << d):
        subsets.append(frozenset(i for i in range(d) if mask >> i & 1))
    subsets.sort(key=lambda s: (len(s), sorted(s)))

    def label(S):
        return "f" + "".join(str(i + 1) for i in sorted(S))

    orbits = [Orbit(label(S), len(S) - 1, Hdim(d)) for S in subsets]
    pairs = {}
    for i, S in enumerate(subsets):
        for T in subsets[i:]:
            e = PairEntry(label(S), label(T), True, Hdim(d - len(S & T)))
            pairs[e.key()] = e
    return OrbitComplex(
        boundary_dim=2 * d - 1,
        orbits=orbits,
        pairs=pairs,
        complete=True,
        provenance=f"join model, {d} factors",
    )


# ---------------------------------------------------------------------------
# Homology-support test for simply connected fillings.


@dataclass(frozen=True)
class HomologySupportProblem:
    """Support data for the simply-connected-filling test.

    n is the filling dimension (the boundary has dimension n-1), q-1 the
    dimension of the spheres generating the homology of the universal
    cover, and boundary_homology the integral homology of the boundary.
    """

    n: int
    q: int
    boundary_homology: HomologyTable

    def __post_init__(self):
        if not (1 <= self.q <= self.n):
            raise CertificateError("need 1 <= q <= n")


def simply_connected_obstruction(P: HomologySupportProblem) -> dict:
    """OBSTRUCTED when the boundary homology has torsion anywhere or a
    nonzero group outside {0, q-1, n-q, n-1}; otherwise inconclusive."""
    allowed = {0, P.q - 1, P.n - P.q, P.n - 1}
    for deg, rank, torsion in P.boundary_homology.entries:
        if torsion:
            return {
                "verdict": OBSTRUCTED,
                "reason": f"torsion {list(torsion)} in degree {deg}",
                "allowed_degrees": sorted(allowed),
            }
        if rank and deg not in allowed:
            return {
                "verdict": OBSTRUCTED,
                "reason": f"nonzero homology of rank {rank} in degree {deg}",
                "allowed_degrees": sorted(allowed),
            }
    return {"verdict": NOT_OBSTRUCTED, "reason": "support and torsion tests passed",
            "allowed_degrees": sorted(allowed)}


def parity_obstruction(n: int, q: int, chi_zero: bool) -> dict:
    """Euler-characteristic parity test with d = n - q.

    A vanishing Euler characteristic forces odd-degree homology when
    q-1, d and d+q-1 are all even, which the support test forbids."""
    d = n - q
    evens = {"q-1": (q - 1) % 2 == 0, "d": d % 2 == 0, "d+q-1": (d + q - 1) % 2 == 0}
    if chi_zero and all(evens.values()):
        return {"verdict": OBSTRUCTED, "d": d, "parities": evens,
                "reason": "chi=0 forces odd-degree homology outside the allowed support"}
    return {"verdict": NOT_OBSTRUCTED, "d": d, "parities": evens,
            "reason": "parity test not decisive"}
