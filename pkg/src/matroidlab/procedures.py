"""Constructive density procedures and prime-power arithmetic.

These are the executable forms of the constructive arguments the census
machinery leans on: extracting a dense subset skew to a given set, descending
to a dense round restriction, the round/dense dichotomy at a prime-power
threshold, and building a long line from a long-line restriction plus a
projective plane.  Every hypothesis that can be computed is validated up
front; the procedures refuse rather than return unwarranted answers, and the
postconditions are re-verified before returning (a failure there is a bug,
surfaced as InternalContradiction, never a silent wrong answer).

All density comparisons are exact: thresholds are Fractions, counts are ints.
"""

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .bitset import bits, lowest
from .certificates import ContractionLine
from .core import Matroid
from .errors import (InternalContradiction, NoFreeElement, NoSuchFlat,
                     NotPrimePower, PreconditionFailed)
from .field import is_prime_power
from .geometry import geometric_series_sum, is_projective_geometry, theta
from .minors import ABSENT, FOUND, has_u2n_minor

# -- prime powers ------------------------------------------------------------

_pp_list: list = []
_pp_limit = 0


def prime_powers_up_to(limit: int) -> list:
    """Sorted prime powers <= limit (cached, grows monotonically)."""
    global _pp_list, _pp_limit
    if limit > _pp_limit:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        powers = []
        for p in range(2, limit + 1):
            if sieve[p]:
                for m in range(p * p, limit + 1, p):
                    sieve[m] = 0
                v = p
                while v <= limit:
                    powers.append(v)
                    v *= p
        powers.sort()
        _pp_list = powers
        _pp_limit = limit
    idx = bisect_right(_pp_list, limit)
    return _pp_list[:idx]


def largest_prime_power_leq(l: int) -> int:
    if l < 2:
        raise PreconditionFailed(f"need l >= 2, got {l}")
    pps = prime_powers_up_to(max(l, 64))
    return pps[bisect_right(pps, l) - 1]


def gap_check(l: int) -> bool:
    """Whether l < 2q for q the largest prime power <= l.

    This always holds (there is a power of two in (l/2, l]), but the check
    computes it rather than assuming it.
    """
    return l < 2 * largest_prime_power_leq(l)


# -- parameter objects --------------------------------------------------------


@dataclass(frozen=True)
class DensityTarget:
    """Parameters for the skew dense-subset extraction.

    `lam` is the density coefficient (exact rational), `q` the density base,
    `l` caps the point count of lines in minors (the ambient matroid is
    assumed to have no (l+2)-point-line minor; that assumption is the one
    hypothesis not checked here, though a violation observed mid-run is
    reported), and `k` bounds the local connectivity that may be spent.
    """

    lam: Fraction
    q: int
    l: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise PreconditionFailed(f"lam must be positive, got {self.lam}")
        if not self.q >= 2:
            raise PreconditionFailed(f"need q >= 2, got {self.q}")
        if not self.l >= self.q:
            raise PreconditionFailed(f"need l >= q, got l={self.l}, q={self.q}")
        if self.k < 0:
            raise PreconditionFailed(f"need k >= 0, got {self.k}")


@dataclass(frozen=True)
class GrowthPolicy:
    """A target point count f(k) per rank k, for the round-restriction descent.

    values[k-1] = f(k).  Integer tables must satisfy f(k) >= 2 f(k-1) - 1;
    non-integer (exact rational) tables must satisfy f(k) >= 2 f(k-1): the
    descent's counting argument uses the slack differently in the two cases,
    and these are exactly the conditions under which a qualifying side of a
    split always exists.  f(1) >= 1 either way.
    """

    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise PreconditionFailed("empty growth table")
        if vals[0] < 1:
            raise PreconditionFailed(f"f(1) must be >= 1, got {vals[0]}")
        integral = all(v.denominator == 1 for v in vals)
        for k in range(2, len(vals) + 1):
            prev, cur = vals[k - 2], vals[k - 1]
            if integral:
                if cur < 2 * prev - 1:
                    raise PreconditionFailed(
                        f"integer table needs f({k}) >= 2 f({k - 1}) - 1")
            elif cur < 2 * prev:
                raise PreconditionFailed(
                    f"rational table needs f({k}) >= 2 f({k - 1})")

    @classmethod
    def from_table(cls, values) -> "GrowthPolicy":
        return cls(tuple(values))

    @classmethod
    def theta_halving(cls, q: int, s: int) -> "GrowthPolicy":
        """f(k) = (q/2)^(s-k) * theta(q, k) for k = 1..s, exact rationals.

        For q >= 4 this more than doubles at each step, so it is a valid
        policy whose rank-s value is exactly theta(q, s).
        """
        if q < 4:
            raise PreconditionFailed(f"need q >= 4, got {q}")
        half = Fraction(q, 2)
        return cls(tuple(half ** (s - k) * theta(q, k) for k in range(1, s + 1)))

    def value(self, k: int) -> Fraction:
        if not 1 <= k <= len(self.values):
            raise PreconditionFailed(f"growth table covers ranks 1..{len(self.values)}")
        return self.values[k - 1]

    @property
    def top_rank(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class DensityThreshold:
    """Caller-supplied stand-in for the density-to-geometry threshold.

    The underlying integer-valued threshold function is external to this
    library and no values for it are published; anything needing one takes
    it from here and is disabled while unset.
    """

    alpha: Fraction | None = None
    provenance: str = "unset"

    def __post_init__(self):
        if self.alpha is not None:
            object.__setattr__(self, "alpha", Fraction(self.alpha))
            if self.alpha < 1:
                raise PreconditionFailed("alpha must be >= 1 when set")

    @property
    def enabled(self) -> bool:
        return self.alpha is not None


# -- skew dense subset ---------------------------------------------------------


def _greedy_shrink(m: Matroid, subset: int, lam: Fraction, q: int) -> int:
    """Drop least-index points while the density bound survives."""
    while True:
        for cls in m.points(subset):
            smaller = subset & ~cls
            if m.epsilon(smaller) > lam * q ** m.rank(smaller):
                subset = smaller
                break
        else:
            return subset


def _flat_avoiding(m: Matroid, e: int, target_rank: int) -> int:
    """Closure of the lexicographically first independent set of the given
    rank whose closure avoids the non-loop e."""
    ebit = 1 << e
    indep = 0
    for _ in range(target_rank):
        blocked = m.closure(indep | ebit)
        candidates = m.live & ~blocked
        if not candidates:
            raise NoSuchFlat(f"no rank-{target_rank} flat avoids element {e}")
        indep |= 1 << lowest(candidates)
    flat = m.closure(indep)
    if ebit & flat:
        raise InternalContradiction("constructed flat contains the avoided element")
    return flat


def _skew_to_element(m: Matroid, subset: int, e: int, lam: Fraction,
                     q: int, l: int) -> int:
    """Shrink `subset` until it is skew to the single non-loop element e,
    keeping more than (lam / l) * q^rank points.

    One majority step through the hyperplanes over a corank-2 flat; if the
    hyperplane through e is itself still dense at its own rank, descend into
    it first (rank strictly drops, so this terminates).
    """
    ebit = 1 << e
    while True:
        if m.is_skew(subset, ebit):
            return subset
        subset = _greedy_shrink(m, subset, lam, q)
        scope = m.restrict(subset | ebit)
        r0 = scope.rank_full
        if r0 < 2:
            raise NoSuchFlat(
                "dense set has rank < 2 but is not skew to the element; "
                "inputs cannot satisfy the density hypothesis")
        w = _flat_avoiding(scope, e, r0 - 2)
        quotient = scope.contract(w)
        classes = quotient.points()
        m_count = len(classes) - 1
        if m_count > l:
            raise PreconditionFailed(
                f"found a rank-2 quotient with {m_count + 1} points; the ambient "
                f"matroid has an ({m_count + 1})-point-line minor, violating the "
                f"no-({l + 2})-point-line assumption")
        h_through_e = None
        rivals = []
        for cls in classes:
            flat = scope.closure(w | (1 << lowest(cls)))
            if cls & ebit:
                h_through_e = flat
            else:
                rivals.append(flat)
        if h_through_e is None:
            raise InternalContradiction("element vanished from its own quotient")
        inside = subset & h_through_e
        if scope.epsilon(inside) > lam * q ** scope.rank(inside):
            subset = inside  # still dense at its own rank: recurse into it
            continue
        best = None
        for flat in rivals:
            count = scope.epsilon(flat & subset)
            if best is None or count > best[0]:
                best = (count, flat)
        if best is None:
            raise InternalContradiction("no hyperplane avoids the element")
        result = subset & best[1]
        if not scope.is_skew(result, ebit):
            raise InternalContradiction("majority pick is not skew to the element")
        if not scope.epsilon(result) > (lam / l) * q ** scope.rank(result):
            raise InternalContradiction("majority pick misses the density bound")
        return result


def skew_dense_subset(matroid: Matroid, a: int, b: int,
                      target: DensityTarget) -> int:
    """A subset of `a` skew to `b`, keeping more than
    lam * l^-k * q^rank points.

    Mirrors the inductive argument: repeatedly contract elements of `b`
    outside the closure of the current set (these contractions change none
    of the relevant ranks or point counts), then spend one connectivity unit
    making the set skew to a single element of `b`.  The ambient matroid is
    restricted to the working set plus that element for the single-element
    step.  The returned set's skewness and density are re-verified against
    the original matroid.
    """
    if a & ~matroid.live or b & ~matroid.live:
        raise PreconditionFailed("sets extend outside the ground set")
    if a & b:
        raise PreconditionFailed("sets must be disjoint")
    lam, q, l, k = target.lam, target.q, target.l, target.k
    conn = matroid.local_connectivity(a, b)
    if conn > k:
        raise PreconditionFailed(f"local connectivity {conn} exceeds the budget {k}")
    eps_a = matroid.epsilon(a)
    r_a = matroid.rank(a)
    if not eps_a > lam * q ** r_a:
        raise PreconditionFailed(
            f"density hypothesis fails: {eps_a} <= {lam} * {q}^{r_a} "
            f"= {lam * q ** r_a}")

    current: Matroid = matroid
    sub = a
    rest = b
    lam_now = lam
    spent = 0
    while True:
        # contract the part of b lying outside the closure of the current set
        while True:
            cl = current.closure(sub)
            outside = rest & ~cl
            picked = None
            for e in bits(outside):
                if current.rank(1 << e) == 1:
                    picked = e
                    break
            if picked is None:
                break
            current = current.contract(1 << picked)
            rest &= ~(1 << picked)
        if current.local_connectivity(sub, rest) == 0:
            break
        if spent >= k:
            raise InternalContradiction(
                "connectivity did not drop within its budget")
        e = next(e for e in bits(rest) if current.rank(1 << e) == 1)
        sub = _skew_to_element(current, sub, e, lam_now, q, l)
        lam_now = lam_now / l
        spent += 1

    floor = lam * Fraction(1, l ** k) * q ** matroid.rank(sub)
    if not matroid.is_skew(sub, b):
        raise InternalContradiction("result is not skew to b in the original matroid")
    if not matroid.epsilon(sub) > floor:
        raise InternalContradiction("result misses the density floor")
    return sub


# -- round restriction descent --------------------------------------------------


def round_restriction(matroid: Matroid, policy: GrowthPolicy) -> int:
    """A subset whose restriction is round and keeps at least f(rank) points.

    If the current restriction is not round, split it along the two-cell
    witness; at least one side meets its own target (otherwise the two
    sides' deficits would add up to fewer points than the whole has, a
    contradiction given the policy's growth condition).  Prefer the side
    with more points, breaking ties toward the smaller least index.
    """
    r = matroid.rank_full
    if r < 1:
        raise PreconditionFailed("need rank >= 1")
    if policy.top_rank < r:
        raise PreconditionFailed(
            f"growth table covers ranks up to {policy.top_rank}, matroid has rank {r}")
    if matroid.epsilon() < policy.value(r):
        raise PreconditionFailed(
            f"point count {matroid.epsilon()} is below f({r}) = {policy.value(r)}")
    subset = matroid.live
    current: Matroid = matroid
    while True:
        if current.is_round():
            return subset
        part = current.non_round_partition()
        best = None
        for side in (part.part_a, part.part_b):
            r_side = current.rank(side)
            eps_side = current.epsilon(side)
            if r_side >= 1 and eps_side >= policy.value(r_side):
                key = (eps_side, -lowest(side))
                if best is None or key > best[0]:
                    best = (key, side)
        if best is None:
            raise InternalContradiction(
                "neither side of a non-round split meets its growth target; "
                "the policy validation should have made this impossible")
        subset = best[1]
        current = matroid.restrict(subset)


@dataclass(frozen=True)
class RoundDenseOutcome:
    """Result of the round/dense dichotomy.

    kind is one of "already-round", "round-dense" (a round restriction of
    rank >= t strictly denser than theta(q, rank)), or "density-witness"
    (a round restriction of rank < t so dense it certifies a
    (q^2+2)-point-line minor via the classical point-count bound).
    """

    kind: str
    subset: int
    claims: dict


def _witness_claims(sub: Matroid, q: int) -> dict:
    """Verify and describe a density witness: eps > (q^2 rank)-series."""
    rn = sub.rank_full
    en = sub.epsilon()
    bound = geometric_series_sum(q * q, rn)
    if not en > bound:
        raise InternalContradiction(
            f"witness bound fails: {en} <= theta({q * q},{rn}) = {bound}")
    return {"rank": rn, "points": en, "theta_q2": bound,
            "line_points_certified": q * q + 2}


def round_dense_restriction(matroid: Matroid, q: int, t: int,
                            confirm_minor: bool | None = None) -> RoundDenseOutcome:
    """Either a dense round restriction of rank >= t, or a density witness
    for a (q^2+2)-point-line minor; round inputs return "already-round".

    Preconditions: q a prime power >= 4, t >= 1, rank >= 3t, and at least
    theta(q, rank) points.  The descent policy is f(k) = (q/2)^(s-k) theta(q, k)
    with s the full rank, in exact rationals.
    """
    if not is_prime_power(q):
        raise NotPrimePower(f"{q} is not a prime power")
    if q < 4:
        raise PreconditionFailed(f"need q >= 4, got {q}")
    if t < 1:
        raise PreconditionFailed(f"need t >= 1, got {t}")
    s = matroid.rank_full
    if s < 3 * t:
        raise PreconditionFailed(f"need rank >= 3t = {3 * t}, got {s}")
    eps = matroid.epsilon()
    need = theta(q, s)
    if eps < need:
        raise PreconditionFailed(f"need at least theta({q},{s}) = {need} points, got {eps}")
    if matroid.is_round():
        return RoundDenseOutcome("already-round", matroid.live, {"rank": s, "points": eps})
    policy = GrowthPolicy.theta_halving(q, s)
    subset = round_restriction(matroid, policy)
    sub = matroid.restrict(subset)
    rn = sub.rank_full
    en = sub.epsilon()
    if rn >= t:
        bound = theta(q, rn)
        if not en > bound:
            raise InternalContradiction(
                f"round restriction not strictly dense: {en} <= {bound}")
        return RoundDenseOutcome("round-dense", subset,
                                 {"rank": rn, "points": en, "theta_q": bound})
    claims = _witness_claims(sub, q)
    if confirm_minor is None:
        confirm_minor = matroid.size <= 10
    if confirm_minor:
        outcome = has_u2n_minor(matroid, q * q + 2)
        claims["confirmed"] = outcome.status
        if outcome.status == FOUND:
            claims["certificate"] = outcome.certificate
        elif outcome.status == ABSENT:
            raise InternalContradiction(
                "density witness contradicts exhaustive line-minor search")
    return RoundDenseOutcome("density-witness", subset, claims)


# -- long line from a line and a plane --------------------------------------------


def line_from_line_and_plane(matroid: Matroid, line: int, plane: int, q: int,
                             validate_round: bool = True) -> ContractionLine:
    """Contract down to a rank-2 flat carrying at least q^2 + 1 points.

    Hypotheses (validated): the matroid is round; the restriction to `line`
    is a (q+2)-point line (rank 2, simple); the restriction to `plane` is a
    rank-3 projective plane of order q.  While the rank exceeds 3, some
    element lies outside the spans of both named sets (else those spans
    would give a two-cell low-rank split, contradicting roundness); contract
    it.  At rank 3, contract an element of the long line not parallel into
    the plane: the plane is modular, so that element lies on at most one
    long line, and the contraction merges at most one full plane line into
    a point, leaving at least q^2 + 1 points on the resulting rank-2 flat.
    """
    if not is_prime_power(q):
        raise NotPrimePower(f"{q} is not a prime power")
    for name, mask in (("line", line), ("plane", plane)):
        if mask & ~matroid.live:
            raise PreconditionFailed(f"{name} extends outside the ground set")
    sub_line = matroid.restrict(line)
    if sub_line.rank_full != 2 or not sub_line.is_simple() or sub_line.size != q + 2:
        raise PreconditionFailed(
            f"line restriction must be a simple rank-2 set of {q + 2} elements")
    sub_plane = matroid.restrict(plane)
    if sub_plane.rank_full != 3 or not sub_plane.is_simple():
        raise PreconditionFailed("plane restriction must be simple of rank 3")
    report = is_projective_geometry(sub_plane)
    if report.order != q:
        raise PreconditionFailed(
            f"plane restriction is not a projective plane of order {q}: "
            f"{report.failure}")
    if validate_round and not matroid.is_round():
        raise PreconditionFailed("matroid is not round")

    contracted = 0
    current: Matroid = matroid
    while current.rank_full > 3:
        span_l = current.closure(line)
        span_p = current.closure(plane)
        free = current.live & ~(span_l | span_p)
        if not free:
            recheck = current.is_round()
            raise NoFreeElement(
                "no element avoids both spans at rank "
                f"{current.rank_full}; roundness recheck: {recheck}")
        e = lowest(free)
        contracted |= 1 << e
        current = matroid.minor(contract=contracted)

    # rank 3: pick an element of the long line whose point misses the plane
    banned = 0
    for cls in current.points(plane):
        banned |= current.closure(cls & -cls)
    candidates = line & current.live & ~banned
    pick = None
    for e in bits(candidates):
        if current.rank(1 << e) == 1:
            pick = e
            break
    if pick is None:
        for e in bits(current.live & ~banned & ~plane):
            if current.rank(1 << e) == 1:
                pick = e
                break
    if pick is None:
        raise NoFreeElement("no element lies outside the plane's parallel closure")
    contracted |= 1 << pick
    final = matroid.minor(contract=contracted)
    flat = final.closure(plane)
    pts = final.epsilon(flat)
    if final.rank(flat) != 2:
        raise InternalContradiction("plane did not contract to a rank-2 flat")
    if pts < q * q + 1:
        raise InternalContradiction(
            f"contracted line has {pts} points, below {q * q + 1}")
    return ContractionLine(contracted, flat, pts)
