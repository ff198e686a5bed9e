"""Rank oracles and the primitives built on them.

All matroids share one integer index space: `live` is the mask of usable
element indices and every subset argument is a mask over it.  Views
(minors, restrictions) keep the parent's indexing, so sets never need
translating and certificates built inside a search replay against the root
matroid unchanged.

Loops are allowed everywhere; point counting ignores them, since
contraction creates loops and the point count is insensitive to them.
"""

from .bitset import bits, check_ground_size, lowest, mask_of, popcount
from .certificates import HyperplanePairCover, Partition
from .errors import (OutOfRange, OverlapError, PreconditionFailed, RankZero,
                     SizeLimit)


class Matroid:
    """Base rank oracle.  Subclasses set `n`, `live` and `_rank_impl`.

    `n` is the width of the index space; `live` the mask of actual elements
    (for top-level matroids simply (1 << n) - 1).  Instances are immutable
    after construction; internal caches only ever go from unset to a final
    value, so concurrent readers always observe a consistent result.
    """

    def _init_ground(self, n: int, live: int):
        check_ground_size(n)
        self.n = n
        self.live = live
        self._rank_full = None
        self._points = None
        self._roundness = None

    # -- rank ------------------------------------------------------------

    def _rank_impl(self, subset: int) -> int:
        raise NotImplementedError

    def rank(self, subset: int) -> int:
        if subset & ~self.live:
            raise OutOfRange(f"subset 0x{subset:x} has bits outside the ground set")
        return self._rank_impl(subset)

    @property
    def rank_full(self) -> int:
        if self._rank_full is None:
            self._rank_full = self._rank_impl(self.live)
        return self._rank_full

    @property
    def size(self) -> int:
        """Number of elements (loops included)."""
        return popcount(self.live)

    # -- closure and flats -------------------------------------------------

    def closure(self, subset: int) -> int:
        """Elements whose addition does not raise the rank of `subset`."""
        r0 = self.rank(subset)
        out = subset
        rest = self.live & ~subset
        for e in bits(rest):
            if self._rank_impl(subset | (1 << e)) == r0:
                out |= 1 << e
        return out

    def loops(self) -> int:
        return self.closure(0)

    def flats_of_rank(self, k: int) -> list:
        """All rank-k flats, by breadth-first closure extension, sorted
        ascending as masks within each rank level."""
        if k < 0 or k > self.rank_full:
            raise OutOfRange(f"no flats of rank {k} in a rank-{self.rank_full} matroid")
        level = [self.closure(0)]
        for _ in range(k):
            found = set()
            for flat in level:
                for e in bits(self.live & ~flat):
                    found.add(self.closure(flat | (1 << e)))
            level = sorted(found)
        return level

    # -- points ------------------------------------------------------------

    def points(self, within: int | None = None) -> list:
        """Parallel classes of non-loops (rank-1 flats minus loops), as masks,
        ordered by least element."""
        if within is None:
            if self._points is None:
                self._points = self._points_impl(self.live)
            return self._points
        if within & ~self.live:
            raise OutOfRange("subset has bits outside the ground set")
        return self._points_impl(within)

    def _points_impl(self, within: int) -> list:
        classes = []
        reps = []
        for e in bits(within):
            eb = 1 << e
            if self._rank_impl(eb) == 0:
                continue
            for i, rep in enumerate(reps):
                if self._rank_impl(rep | eb) == 1:
                    classes[i] |= eb
                    break
            else:
                reps.append(eb)
                classes.append(eb)
        return classes

    def epsilon(self, within: int | None = None) -> int:
        """Number of points, of the whole matroid or of the restriction to
        `within`."""
        return len(self.points(within))

    def representatives(self, within: int | None = None) -> int:
        """Mask of the least-index element of each point class."""
        return mask_of(lowest(c) for c in self.points(within))

    def is_simple(self) -> bool:
        pts = self.points()
        return popcount(self.live) == len(pts) and all(popcount(c) == 1 for c in pts)

    def lines(self, min_points: int = 2) -> list:
        """Rank-2 flats carrying at least `min_points` points."""
        if min_points < 2:
            raise PreconditionFailed("a line has at least 2 points")
        if self.rank_full < 2:
            return []
        return [f for f in self.flats_of_rank(2) if self.epsilon(f) >= min_points]

    # -- connectivity --------------------------------------------------------

    def local_connectivity(self, a: int, b: int) -> int:
        return self.rank(a) + self.rank(b) - self.rank(a | b)

    def is_skew(self, a: int, b: int) -> bool:
        return self.local_connectivity(a, b) == 0

    # -- minors ----------------------------------------------------------------

    def minor(self, contract: int = 0, delete: int = 0) -> "MinorView":
        if contract & delete:
            raise OverlapError("contract and delete sets overlap")
        if (contract | delete) & ~self.live:
            raise OutOfRange("minor sets have bits outside the ground set")
        return MinorView(self, contract, delete)

    def contract(self, contract: int) -> "MinorView":
        return self.minor(contract=contract)

    def delete(self, delete: int) -> "MinorView":
        return self.minor(delete=delete)

    def restrict(self, keep: int) -> "MinorView":
        if keep & ~self.live:
            raise OutOfRange("restriction has bits outside the ground set")
        return MinorView(self, 0, self.live & ~keep)

    def simplify(self) -> "MinorView":
        """Restriction keeping the least-index representative of each point."""
        return self.restrict(self.representatives())

    # -- roundness ---------------------------------------------------------------

    def roundness(self):
        """Decide whether the ground set splits into two sets of rank < r(M).

        Equivalent to asking for two rank-(r-1) flats covering the ground
        set: the closures of the two cells of any such split are proper
        flats, and a proper flat extends to a rank-(r-1) flat by adding
        elements while the rank stays below r; conversely a covering pair
        (H1, H2) yields the split (H1, E - H1) with both ranks below r.
        The search grows two closed cells, branching on the first element
        not yet covered; a cell that would reach full rank is pruned.
        """
        if self._roundness is not None:
            return self._roundness
        r = self.rank_full
        if r == 0:
            raise RankZero("roundness is undefined at rank 0")
        live = self.live
        visited = set()

        def grow(cell: int, e: int) -> int | None:
            cand = cell | (1 << e)
            if self.rank(cand) >= r:
                return None
            return self.closure(cand)

        def search(side_a: int, side_b: int):
            uncovered = live & ~(side_a | side_b)
            if not uncovered:
                return side_a, side_b
            key = (side_a, side_b) if side_a <= side_b else (side_b, side_a)
            if key in visited:
                return None
            visited.add(key)
            e = lowest(uncovered)
            for cell, other, flip in ((side_a, side_b, False), (side_b, side_a, True)):
                grown = grow(cell, e)
                if grown is None:
                    continue
                found = search(grown, other) if not flip else search(other, grown)
                if found:
                    return found
            return None

        loops = self.closure(0)
        first = live & ~loops
        if not first:
            # cannot happen at rank >= 1
            raise RankZero("no non-loop elements")
        # the first non-loop goes to side A; sides are symmetric
        start = self.closure(1 << lowest(first))
        hit = search(start, loops) if self.rank(start) < r else None
        if hit is None:
            self._roundness = (True, None)
        else:
            h1 = self._extend_to_hyperplane(hit[0])
            h2 = self._extend_to_hyperplane(hit[1])
            self._roundness = (False, HyperplanePairCover(h1, h2))
        return self._roundness

    def _extend_to_hyperplane(self, flat: int) -> int:
        r = self.rank_full
        while self.rank(flat) < r - 1:
            for e in bits(self.live & ~flat):
                if self.rank(flat | (1 << e)) < r:
                    flat = self.closure(flat | (1 << e))
                    break
        return flat

    def is_round(self) -> bool:
        return self.roundness()[0]

    def non_round_partition(self) -> Partition | None:
        """The hyperplane-pair witness as a two-cell split, or None if round."""
        ok, cover = self.roundness()
        if ok:
            return None
        return Partition(cover.hyperplane_a, self.live & ~cover.hyperplane_a)


class UniformMatroid(Matroid):
    """U_{r,n}: every subset of at most r elements is independent."""

    def __init__(self, r: int, n: int):
        if not 0 <= r <= n:
            raise PreconditionFailed(f"need 0 <= r <= n, got r={r}, n={n}")
        self._init_ground(n, (1 << n) - 1)
        self.r = r

    def _rank_impl(self, subset: int) -> int:
        c = popcount(subset)
        return c if c < self.r else self.r

    def __repr__(self):
        return f"UniformMatroid({self.r}, {self.n})"


class LinearMatroid(Matroid):
    """Columns of a matrix over GF(q); rank = column rank by elimination.

    Rank queries are cached per subset mask; views share the cache through
    the root.  Over GF(2) columns are packed into ints and reduced by xor.
    """

    def __init__(self, fieldspec, columns):
        columns = tuple(tuple(c) for c in columns)
        self._init_ground(len(columns), (1 << len(columns)) - 1)
        self.field = fieldspec
        self.columns = columns
        self.nrows = len(columns[0]) if columns else 0
        q = fieldspec.q
        for j, col in enumerate(columns):
            if len(col) != self.nrows:
                raise PreconditionFailed(f"column {j} has wrong height")
            if any(not 0 <= a < q for a in col):
                raise OutOfRange(f"column {j} has entries outside 0..{q - 1}")
        self._cache = {0: 0}
        if q == 2:
            self._packed = tuple(sum(1 << i for i, a in enumerate(col) if a)
                                 for col in columns)
        else:
            self._packed = None

    def _rank_impl(self, subset: int) -> int:
        got = self._cache.get(subset)
        if got is not None:
            return got
        if self._packed is not None:
            rank = self._rank_gf2(subset)
        else:
            rank = self._rank_tables(subset)
        self._cache[subset] = rank
        return rank

    def _rank_gf2(self, subset: int) -> int:
        basis = []
        packed = self._packed
        s = subset
        while s:
            low = s & -s
            s ^= low
            v = packed[low.bit_length() - 1]
            for b in basis:
                w = v ^ b
                if w < v:
                    v = w
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        return len(basis)

    def _rank_tables(self, subset: int) -> int:
        f = self.field
        q = f.q
        add = f.add_flat
        mul = f.mul_flat
        neg = f.neg
        inv = f.inv
        nrows = self.nrows
        basis = []  # (pivot row, column normalized to pivot entry 1)
        s = subset
        while s:
            low = s & -s
            s ^= low
            v = list(self.columns[low.bit_length() - 1])
            for pivot, u in basis:
                c = v[pivot]
                if c:
                    cn = neg[c]
                    for i in range(pivot, nrows):
                        ui = u[i]
                        if ui:
                            v[i] = add[v[i] * q + mul[cn * q + ui]]
            for i in range(nrows):
                if v[i]:
                    iv = inv[v[i]]
                    if iv != 1:
                        for j in range(i, nrows):
                            v[j] = mul[iv * q + v[j]]
                    basis.append((i, v))
                    basis.sort()
                    break
        return len(basis)

    def _points_impl(self, within: int) -> list:
        # a column's point class is determined by its scale-normalized form
        f = self.field
        classes = {}
        order = []
        for e in bits(within):
            col = self.columns[e]
            lead = next((a for a in col if a), 0)
            if lead == 0:
                continue  # zero column, a loop
            iv = f.inv[lead]
            norm = col if iv == 1 else tuple(f.mul(iv, a) for a in col)
            if norm in classes:
                classes[norm] |= 1 << e
            else:
                classes[norm] = 1 << e
                order.append(norm)
        return [classes[k] for k in order]

    def __repr__(self):
        return f"LinearMatroid(GF({self.field.q}), {self.nrows}x{self.n})"


class ExplicitMatroid(Matroid):
    """Full rank table indexed by subset mask; the brute-force substrate.

    The rank axioms are verified at construction: exhaustively through the
    local exchange conditions for n <= 12, by seeded random sampling of the
    same conditions above that.
    """

    MAX_N = 20
    EXHAUSTIVE_N = 12

    def __init__(self, n: int, table, verify: bool = True):
        if n > self.MAX_N:
            raise SizeLimit(f"explicit tables are capped at {self.MAX_N} elements")
        self._init_ground(n, (1 << n) - 1)
        self.table = tuple(table)
        if len(self.table) != 1 << n:
            raise PreconditionFailed("rank table has wrong length")
        if verify:
            self._verify_axioms()

    def _verify_axioms(self):
        t = self.table
        n = self.n
        if t[0] != 0:
            raise PreconditionFailed("rank of the empty set is not 0")
        full = 1 << n
        if n <= self.EXHAUSTIVE_N:
            subsets = range(full)
        else:
            import random

            rng = random.Random(0xA5)
            subsets = (rng.randrange(full) for _ in range(10_000))
        for x in subsets:
            rx = t[x]
            if not 0 <= rx <= popcount(x):
                raise PreconditionFailed(f"rank out of bounds at 0x{x:x}")
            free = [e for e in range(n) if not x >> e & 1]
            for i, e in enumerate(free):
                re = t[x | 1 << e]
                if not rx <= re <= rx + 1:
                    raise PreconditionFailed(f"unit-increase fails at 0x{x:x}+{e}")
                for fz in free[i + 1:]:
                    if re + t[x | 1 << fz] < t[x | 1 << e | 1 << fz] + rx:
                        raise PreconditionFailed(
                            f"submodularity fails at 0x{x:x} with {e},{fz}")

    def _rank_impl(self, subset: int) -> int:
        return self.table[subset]

    @classmethod
    def from_matroid(cls, m: Matroid, verify: bool = False) -> "ExplicitMatroid":
        """Copy of `m` with elements renumbered 0..size-1 (live order)."""
        elems = list(bits(m.live))
        n = len(elems)
        if n > cls.MAX_N:
            raise SizeLimit(f"cannot tabulate {n} elements")
        expand = [1 << e for e in elems]
        table = [0] * (1 << n)
        for x in range(1, 1 << n):
            table[x] = m.rank(_expand_mask(x, expand))
        return cls(n, table, verify=verify)

    def __repr__(self):
        return f"ExplicitMatroid(n={self.n}, r={self.rank_full})"


def _expand_mask(x: int, expand: list) -> int:
    out = 0
    i = 0
    while x:
        if x & 1:
            out |= expand[i]
        x >>= 1
        i += 1
    return out


class MinorView(Matroid):
    """M / contract \\ delete over the parent's index space.

    Nested views flatten, so contracting C1 and then C2 is literally the
    view with contract set C1 | C2; rank(X) = r_root(X | C) - r_root(C).
    """

    def __init__(self, base: Matroid, contract: int, delete: int):
        if isinstance(base, MinorView):
            contract |= base.contracted
            delete |= base.deleted
            base = base.base
        self.base = base
        self.contracted = contract
        self.deleted = delete
        self._init_ground(base.n, base.live & ~contract & ~delete)
        self._rank_contract = base.rank(contract)

    def _rank_impl(self, subset: int) -> int:
        return self.base._rank_impl(subset | self.contracted) - self._rank_contract

    def __repr__(self):
        return (f"MinorView(base={self.base!r}, contract=0x{self.contracted:x}, "
                f"delete=0x{self.deleted:x})")


class DirectSum(Matroid):
    """Blocks laid out on consecutive index ranges; ranks add per block."""

    def __init__(self, components):
        components = list(components)
        if not components:
            raise PreconditionFailed("direct sum needs at least one component")
        self.components = components
        offsets = []
        live = 0
        n = 0
        for comp in components:
            offsets.append(n)
            live |= comp.live << n
            n += comp.n
        self.offsets = offsets
        self._init_ground(n, live)

    def _rank_impl(self, subset: int) -> int:
        total = 0
        for comp, off in zip(self.components, self.offsets):
            part = (subset >> off) & ((1 << comp.n) - 1)
            if part:
                total += comp._rank_impl(part)
        return total

    def block_mask(self, index: int) -> int:
        comp = self.components[index]
        return comp.live << self.offsets[index]

    def __repr__(self):
        return f"DirectSum({self.components!r})"
