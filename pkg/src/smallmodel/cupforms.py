"""Cup-product obstructions to compressible fillings, over exact rationals.

Two criteria for a closed oriented boundary. When the relevant rational
cohomology is spanned by a single class omega, any nonvanishing top power
already obstructs. When H^2 is two dimensional on a 6-manifold, a
compressible filling is equivalent to a graded-algebra surjection onto
Q[beta]/beta^3, which reduces to a rational-square condition on the
triple intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

OBSTRUCTED = "OBSTRUCTED"
SATISFIABLE = "SATISFIABLE"
INCONCLUSIVE = "INCONCLUSIVE"


class FormError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RankOneRing:
    """One-generator pairing data: omega in degree k with ∫ omega^m."""

    k: int
    m: int
    top_value: Fraction

    def __post_init__(self):
        if self.k < 1:
            raise FormError("generator degree must be positive")
        if self.m <= 1:
            raise FormError("need m > 1")
        object.__setattr__(self, "top_value", _frac(self.top_value))


def rank_one_obstruction(R: RankOneRing) -> dict:
    """A compressible filling would force omega^m = 0; a nonzero top
    pairing rules it out."""
    status = OBSTRUCTED if R.top_value != 0 else INCONCLUSIVE
    return {"status": status, "k": R.k, "m": R.m, "top_value": str(R.top_value)}


def projective_space_ring(n: int) -> RankOneRing:
    """The degree-2 generator of complex projective n-space."""
    return RankOneRing(k=2, m=n, top_value=Fraction(1))


@dataclass(frozen=True)
class TripleForm:
    """Symmetric triple intersection numbers ∫ e_a e_b e_c on a basis
    (e1 = omega, e2) of the rational H^2 of a closed oriented 6-manifold,
    with omega normalized so that c111 = ∫ omega^3 = 1."""

    c111: Fraction
    c112: Fraction
    c122: Fraction
    c222: Fraction

    def __post_init__(self):
        for name in ("c111", "c112", "c122", "c222"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.c111 != 1:
            raise FormError("omega must be normalized: c111 = 1")

    def coefficient(self, a: int, b: int, c: int) -> Fraction:
        key = "c" + "".join(str(i) for i in sorted((a, b, c)))
        return getattr(self, key)

    def triple(self, u, v, w) -> Fraction:
        """Trilinear evaluation on coefficient vectors in the (e1, e2) basis."""
        total = Fraction(0)
        for a in (1, 2):
            for b in (1, 2):
                for c in (1, 2):
                    total += (self.coefficient(a, b, c)
                              * _frac(u[a - 1]) * _frac(v[b - 1]) * _frac(w[c - 1]))
        return total

    def to_json(self):
        return {"c111": str(self.c111), "c112": str(self.c112),
                "c122": str(self.c122), "c222": str(self.c222)}

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(data["c111"]), Fraction(data["c112"]),
                   Fraction(data["c122"]), Fraction(data["c222"]))


def rational_is_square(r) -> bool:
    """True iff r is the square of a rational: r >= 0 and the reduced
    numerator and denominator are both perfect squares."""
    r = _frac(r)
    if r < 0:
        return False
    n, d = r.numerator, r.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(r) -> Fraction:
    r = _frac(r)
    if not rational_is_square(r):
        raise FormError(f"{r} is not a rational square")
    return Fraction(isqrt(r.numerator), isqrt(r.denominator))


def _rational_cubic_roots(a3, a2, a1, a0):
    """All rational roots of a3 t^3 + a2 t^2 + a1 t + a0 = 0 (not
    identically zero), by the rational root theorem after clearing
    denominators."""
    coeffs = [_frac(c) for c in (a3, a2, a1, a0)]
    if all(c == 0 for c in coeffs):
        raise FormError("zero cubic")
    from math import lcm

    scale = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    lead, const = ints[0], ints[-1]
    if const == 0:
        roots = {Fraction(0)}
        # divide out t and recurse on the remaining coefficients
        rest = ints[:-1]
        if len(rest) > 1:
            pad = [0] * (4 - len(rest)) + rest
            roots |= set(_rational_cubic_roots(*pad))
        return sorted(roots)

    def divisors(n):
        n = abs(n)
        out = set()
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.add(i)
                out.add(n // i)
            i += 1
        return out

    roots = set()
    for p in divisors(const):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in ints:
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def find_betas(T: TripleForm) -> list:
    """Projective candidates beta with beta^3 = 0 and beta^2 != 0, as
    coefficient pairs in the (e1, e2) basis.

    beta = e1 + t e2 for rational roots t of the cubic
    1 + 3 c112 t + 3 c122 t^2 + c222 t^3, and beta = e2 when c222 = 0.
    A candidate survives only if beta^2 pairs nontrivially against
    (omega, beta)."""
    candidates = []
    for t in _rational_cubic_roots(T.c222, 3 * T.c122, 3 * T.c112, Fraction(1)):
        candidates.append((Fraction(1), t))
    if T.c222 == 0:
        candidates.append((Fraction(0), Fraction(1)))
    kept = []
    for beta in candidates:
        omega = (Fraction(1), Fraction(0))
        if T.triple(omega, beta, beta) != 0 or T.triple(beta, beta, beta) != 0:
            kept.append(beta)
    return kept


@dataclass(frozen=True)
class SurjectionWitness:
    """Data of a graded-algebra surjection onto Q[beta]/beta^3: phi(omega)
    = s beta with s = x s^2 + y."""

    beta: tuple
    s: Fraction
    x: Fraction
    y: Fraction

    def to_json(self):
        return {"beta": [str(b) for b in self.beta], "s": str(self.s),
                "x": str(self.x), "y": str(self.y)}


def verify_witness(T: TripleForm, w: SurjectionWitness) -> list:
    """Re-evaluate every witness relation from the form; returns the
    list of violated relations (empty when the witness is exact)."""
    omega = (Fraction(1), Fraction(0))
    bad = []
    if T.triple(w.beta, w.beta, w.beta) != 0:
        bad.append("beta^3 != 0")
    if T.triple(omega, w.beta, w.beta) == 0 and T.triple(w.beta, w.beta, w.beta) == 0:
        bad.append("beta^2 = 0")
    wb2 = T.triple(omega, w.beta, w.beta)
    w2b = T.triple(omega, omega, w.beta)
    if w2b == 0 or wb2 == 0:
        bad.append("degenerate pairing")
        return bad
    if w.x != wb2 / w2b:
        bad.append("x != int(omega beta^2)/int(omega^2 beta)")
    if w.y != w2b / wb2 - T.c111 / w2b:
        bad.append("y mismatch")
    if w.s != w.x * w.s ** 2 + w.y:
        bad.append("s != x s^2 + y")
    if (2 * w.x * w.s - 1) ** 2 != 1 - 4 * w.x * w.y:
        bad.append("(2xs-1)^2 != 1-4xy")
    if w.s == 0:
        bad.append("s = 0")
    return bad


@dataclass
class B2Verdict:
    status: str
    witness: SurjectionWitness | None = None
    notes: list = field(default_factory=list)
    zero_s_roots: list = field(default_factory=list)

    def to_json(self):
        out = {"status": self.status, "notes": list(self.notes),
               "zero_s_roots": [[str(b) for b in beta] for beta in self.zero_s_roots]}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def compression_criterion_b2(T: TripleForm) -> B2Verdict:
    """Sweep the candidate betas; SATISFIABLE with an exact witness when
    some beta admits a rational s != 0 with s = x s^2 + y, OBSTRUCTED
    when none does. Degenerate pairings are noted, never guessed around."""
    notes = []
    zero_s = []
    betas = find_betas(T)
    if not betas:
        notes.append("no rational beta with beta^3=0 and beta^2!=0")
    omega = (Fraction(1), Fraction(0))
    for beta in betas:
        w2b = T.triple(omega, omega, beta)
        wb2 = T.triple(omega, beta, beta)
        if w2b == 0 or wb2 == 0:
            notes.append(f"beta={beta}: degenerate pairing "
                         f"(int omega^2 beta = {w2b}, int omega beta^2 = {wb2})")
            continue
        x = wb2 / w2b
        y = w2b / wb2 - T.c111 / w2b
        disc = 1 - 4 * x * y
        if not rational_is_square(disc):
            notes.append(f"beta={beta}: 1-4xy = {disc} is not a rational square")
            continue
        root = rational_sqrt(disc)
        found_zero = False
        for s in ((1 + root) / (2 * x), (1 - root) / (2 * x)):
            if s == 0:
                found_zero = True
                continue
            witness = SurjectionWitness(beta=beta, s=s, x=x, y=y)
            bad = verify_witness(T, witness)
            if bad:
                raise FormError(f"witness failed re-verification: {bad}")
            return B2Verdict(SATISFIABLE, witness, notes, zero_s)
        if found_zero:
            zero_s.append(beta)
            notes.append(f"beta={beta}: only s=0 solves s=xs^2+y "
                         "(phi(omega)=0, not accepted as a surjection)")
    return B2Verdict(OBSTRUCTED, None, notes, zero_s)
