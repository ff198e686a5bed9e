"""Minor detection: longest line in a minor, small-target embeddings, and
projective-geometry restrictions.

Searches contract point representatives only (parallel elements give the
same minor) and skip any contraction whose closure has been seen before
(equal closures give minors with identical point structure).  Budgets make
exhaustion explicit: a search that runs out of nodes reports `unknown`,
never a silent "no".
"""

from dataclasses import dataclass

from .bitset import bits, lowest, mask_of
from .certificates import ContractionLine, MinorEmbedding
from .core import ExplicitMatroid, Matroid
from .errors import (BudgetExceeded, PreconditionFailed, RankTooSmall,
                     TargetTooLarge)
from .geometry import is_projective_geometry, pg, theta

FOUND = "found"
ABSENT = "absent"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class MinorSearchBudget:
    """Limits for minor searches.

    `max_nodes` bounds expanded search states; `max_depth` bounds the
    contraction depth.  With `exhaustive` set (the default) the limits are
    ignored and the search runs to completion, guaranteeing exactness; with
    it cleared, hitting a limit is reported as an inexact or unknown
    outcome, never as a silent "no".
    """

    max_depth: int | None = None
    max_nodes: int | None = None
    exhaustive: bool = True

    def node_cap(self) -> int | None:
        return None if self.exhaustive else self.max_nodes

    def depth_cap(self) -> int | None:
        return None if self.exhaustive else self.max_depth


DEFAULT_BUDGET = MinorSearchBudget()


def bounded_budget(max_nodes: int | None = None,
                   max_depth: int | None = None) -> MinorSearchBudget:
    """A budget whose limits actually apply."""
    return MinorSearchBudget(max_depth=max_depth, max_nodes=max_nodes,
                             exhaustive=False)


@dataclass
class LineMinorResult:
    points: int
    certificate: ContractionLine | None
    exact: bool
    nodes: int

    def require_exact(self) -> "LineMinorResult":
        """This result, or BudgetExceeded if the search was cut short."""
        if not self.exact:
            raise BudgetExceeded(
                f"search stopped after {self.nodes} nodes with best {self.points}")
        return self


@dataclass
class MinorOutcome:
    status: str  # found / absent / unknown
    certificate: object = None
    nodes: int = 0

    def require_decided(self) -> "MinorOutcome":
        """This outcome, or BudgetExceeded if it is unknown."""
        if self.status == UNKNOWN:
            raise BudgetExceeded(f"search undecided after {self.nodes} nodes")
        return self


def _best_line(minor: Matroid, stop_at: int | None = None):
    """(max point count on a rank-2 flat, that flat) for a rank>=2 minor."""
    classes = minor.points()
    reps = [lowest(c) for c in classes]
    if minor.rank_full == 2:
        return len(classes), minor.live  # the whole ground set is the line
    best = 0
    best_flat = None
    seen = set()
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            pair = (1 << a) | (1 << b)
            flat = minor.closure(pair)
            if flat in seen:
                continue
            seen.add(flat)
            count = sum(1 for c in classes if c & flat)
            if count > best:
                best = count
                best_flat = flat
                if stop_at is not None and best >= stop_at:
                    return best, best_flat
    return best, best_flat


def max_line_minor(matroid: Matroid, budget: MinorSearchBudget = DEFAULT_BUDGET,
                   stop_at: int | None = None) -> LineMinorResult:
    """Largest point count of a line in any minor of `matroid`.

    DFS over independent contraction sets built from point representatives,
    pruning repeated closures.  `stop_at` ends the search early once a line
    that large is found (the result is then exact as a lower bound >= stop_at).
    """
    r = matroid.rank_full
    if r < 2:
        raise RankTooSmall(f"need rank >= 2, got {r}")
    max_depth = r - 2
    depth_cap = budget.depth_cap()
    if depth_cap is not None:
        max_depth = min(max_depth, depth_cap)
    node_cap = budget.node_cap()
    full_depth = max_depth == r - 2
    nodes = 0
    truncated = False
    best = 0
    best_cert = None
    visited = {matroid.closure(0)}
    stack = [(0, 0)]  # (contraction mask, depth)
    while stack:
        contract, depth = stack.pop()
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            truncated = True
            break
        minor = matroid.minor(contract=contract) if contract else matroid
        count, flat = _best_line(minor, stop_at)
        if count > best:
            best = count
            best_cert = ContractionLine(contract, flat, count)
            if stop_at is not None and best >= stop_at:
                return LineMinorResult(best, best_cert, True, nodes)
        if depth < max_depth and minor.rank_full >= 3:
            children = []
            for c in minor.points():
                e = lowest(c)
                sub = contract | (1 << e)
                closed = matroid.closure(sub)
                if closed in visited:
                    continue
                visited.add(closed)
                children.append((sub, depth + 1))
            stack.extend(reversed(children))
    exact = full_depth and not truncated
    return LineMinorResult(best, best_cert, exact, nodes)


def has_u2n_minor(matroid: Matroid, npoints: int,
                  budget: MinorSearchBudget = DEFAULT_BUDGET) -> MinorOutcome:
    """Does `matroid` have an `npoints`-point line as a minor?"""
    if npoints < 3:
        raise PreconditionFailed(f"need npoints >= 3, got {npoints}")
    if matroid.rank_full < 2:
        return MinorOutcome(ABSENT)
    res = max_line_minor(matroid, budget, stop_at=npoints)
    if res.points >= npoints:
        return MinorOutcome(FOUND, res.certificate, res.nodes)
    if res.exact:
        return MinorOutcome(ABSENT, None, res.nodes)
    return MinorOutcome(UNKNOWN, None, res.nodes)


class _Nodes:
    __slots__ = ("count", "cap")

    def __init__(self, cap):
        self.count = 0
        self.cap = cap

    def tick(self) -> bool:
        self.count += 1
        return self.cap is not None and self.count > self.cap


def _try_embed(minor: Matroid, target: Matroid, nodes: _Nodes):
    """Backtracking injection of target elements onto point representatives
    of `minor`, preserving the rank of every subset of the mapped prefix.
    Returns the mapping (base elements, in target element order) or None;
    raises _OutOfNodes when the budget runs out."""
    telems = list(bits(target.live))
    k = len(telems)
    reps = [lowest(c) for c in minor.points()]
    if len(reps) < k:
        return None
    trank = [0] * (1 << k)
    for s in range(1, 1 << k):
        trank[s] = target.rank(_spread(s, telems))
    mapping: list[int] = []
    used = set()

    def consistent() -> bool:
        j = len(mapping) - 1
        jbit = 1 << j
        for s in range(1 << j):
            full = s | jbit
            if minor.rank(_spread_map(full, mapping)) != trank[full]:
                return False
        return True

    def bt() -> bool:
        if nodes.tick():
            raise _OutOfNodes
        if len(mapping) == k:
            return True
        for v in reps:
            if v in used:
                continue
            mapping.append(v)
            used.add(v)
            if consistent() and bt():
                return True
            used.discard(v)
            mapping.pop()
        return False

    return tuple(mapping) if bt() else None


class _OutOfNodes(Exception):
    pass


def _spread(s: int, elems: list) -> int:
    out = 0
    i = 0
    while s:
        if s & 1:
            out |= 1 << elems[i]
        s >>= 1
        i += 1
    return out


def _spread_map(s: int, mapping: list) -> int:
    out = 0
    i = 0
    while s:
        if s & 1:
            out |= 1 << mapping[i]
        s >>= 1
        i += 1
    return out


def minor_isomorphic(matroid: Matroid, target: ExplicitMatroid,
                     budget: MinorSearchBudget = DEFAULT_BUDGET,
                     target_name: str = "") -> MinorOutcome:
    """Search for a minor of `matroid` isomorphic to a tiny simple target.

    Enumerates independent contraction sets (closure-deduplicated), then
    backtracks a rank-preserving bijection onto point representatives.
    """
    if target.size > 9:
        raise TargetTooLarge(f"target has {target.size} elements, cap is 9")
    if not target.is_simple():
        raise PreconditionFailed("target must be simple")
    max_c = matroid.rank_full - target.rank_full
    if max_c < 0:
        return MinorOutcome(ABSENT)
    nodes = _Nodes(budget.node_cap())
    visited = {matroid.closure(0)}
    stack = [0]
    try:
        while stack:
            contract = stack.pop()
            if nodes.tick():
                raise _OutOfNodes
            minor = matroid.minor(contract=contract) if contract else matroid
            found = _try_embed(minor, target, nodes)
            if found is not None:
                image = mask_of(found)
                delete = minor.live & ~image
                cert = MinorEmbedding(contract, delete, found, target_name)
                return MinorOutcome(FOUND, cert, nodes.count)
            depth = matroid.rank(contract)
            if depth < max_c:
                children = []
                for c in minor.points():
                    e = lowest(c)
                    sub = contract | (1 << e)
                    closed = matroid.closure(sub)
                    if closed in visited:
                        continue
                    visited.add(closed)
                    children.append(sub)
                stack.extend(reversed(children))
    except _OutOfNodes:
        return MinorOutcome(UNKNOWN, None, nodes.count)
    return MinorOutcome(ABSENT, None, nodes.count)


PG_EMBED_LIMIT = 13


def find_pg_restriction(matroid: Matroid, m: int, q: int,
                        embed_limit: int = PG_EMBED_LIMIT) -> int | None:
    """A point set S with M|S isomorphic to PG(m-1, q), or None.

    Scans rank-m flats in enumeration order.  A flat whose point count is
    exactly theta(q, m) is tested directly with the recognizer; a denser
    flat is searched for an embedded copy by backtracking, provided
    theta(q, m) <= embed_limit (beyond that only the direct test runs, so
    a None answer is exhaustive only up to that bound; rank-3 hits carry
    the projective-plane caveat of the recognizer).
    """
    if m < 3:
        raise PreconditionFailed(f"need m >= 3, got {m}")
    want = theta(q, m)
    if m > matroid.rank_full:
        return None
    for flat in matroid.flats_of_rank(m):
        sub = matroid.restrict(flat)
        reps = sub.representatives()
        npts = sub.epsilon()
        if npts < want:
            continue
        if npts == want:
            report = is_projective_geometry(sub.simplify())
            if report.order == q:
                return reps
            continue
        if want > embed_limit:
            continue
        simple = matroid.restrict(reps)
        found = _try_embed(simple, pg(m, q), _Nodes(None))
        if found is not None:
            return mask_of(found)
    return None


def find_pg_minor(matroid: Matroid, m: int, q: int,
                  budget: MinorSearchBudget = DEFAULT_BUDGET,
                  embed_limit: int = PG_EMBED_LIMIT) -> MinorOutcome:
    """Contract-then-look-for-a-restriction search for a PG(m-1, q)-minor.

    Exhaustive over contraction closures by default, subject to the same
    embedding size bound as find_pg_restriction.
    """
    nodes = _Nodes(budget.node_cap())
    visited = {matroid.closure(0)}
    stack = [0]
    max_c = matroid.rank_full - m
    if max_c < 0:
        return MinorOutcome(ABSENT)
    while stack:
        contract = stack.pop()
        if nodes.tick():
            return MinorOutcome(UNKNOWN, None, nodes.count)
        minor = matroid.minor(contract=contract) if contract else matroid
        hit = find_pg_restriction(minor, m, q, embed_limit)
        if hit is not None:
            return MinorOutcome(FOUND, {"contract": contract, "restriction": hit},
                                nodes.count)
        if matroid.rank(contract) < max_c:
            children = []
            for c in minor.points():
                e = lowest(c)
                sub = contract | (1 << e)
                closed = matroid.closure(sub)
                if closed in visited:
                    continue
                visited.add(closed)
                children.append(sub)
            stack.extend(reversed(children))
    return MinorOutcome(ABSENT, None, nodes.count)
