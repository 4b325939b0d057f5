"""Exact piecewise-linear convex analysis on finite weighted point sets.

A :class:`ValuedWeightConfig` is a finite list of integer weights
``w_i`` in Z^r, each carrying a value ``y_i`` (a rational, or ``inf``
for a vanishing coordinate).  Two functions on R^r are attached to it:

* the point function ``W(w) = min {y_i : w_i = w}``, and
* its lower convex envelope ``lower_hull_value``, the bottom of the
  convex hull of the points ``(w_i, y_i)``.

Both have the same convex conjugate ``max_i <w_i, v> - y_i``.  All
polyhedra are handled exactly through :class:`Polytope`, which keeps a
half-space description and computes vertices on demand.  Dimensions are
at most 3 in practice, though nothing here depends on it except cost.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from . import lp
from .errors import DomainError, ParseError
from .linalg import dot, nullspace, rank, solve_square, vec
from .valued_field import INF, ExtendedRational, format_rational, parse_rational

__all__ = [
    "Location",
    "Polytope",
    "ValuedWeightConfig",
    "conjugate_eval",
    "convex_hull",
    "lower_hull_value",
    "polytope_query",
    "polytope_vertices",
    "recession_cone_trivial",
    "subdiff_zero",
    "sublevel_polytope",
    "weight_polytopes",
]


# ---------------------------------------------------------------------------
# configurations

@dataclass(frozen=True, init=False)
class ValuedWeightConfig:
    """Integer weights with rational (or infinite) values.

    Duplicate weights are merged keeping the smallest value, and entries
    are stored sorted by weight so that equal configurations compare equal.
    """

    rank: int
    entries: tuple

    def __init__(self, rank: int, entries: Iterable):
        if rank < 1:
            raise DomainError(f"rank must be positive, got {rank}")
        merged: dict = {}
        for w, y in entries:
            w = tuple(int(c) for c in w)
            if len(w) != rank:
                raise DomainError(f"weight {w} does not have length {rank}")
            y = y if y is INF else Fraction(y)
            merged[w] = min(merged.get(w, INF), y)
        if not any(y is not INF for y in merged.values()):
            raise DomainError("configuration has no entry with a finite value")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def _trusted(cls, rank: int, entries: tuple) -> "ValuedWeightConfig":
        """Skip validation: ``entries`` are already merged and sorted by weight."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "entries", entries)
        return obj

    @property
    def finite_entries(self) -> tuple:
        return tuple((w, y) for w, y in self.entries if y is not INF)

    @property
    def weights(self) -> tuple:
        return tuple(w for w, _ in self.finite_entries)

    @property
    def min_value(self) -> Fraction:
        return min(y for _, y in self.finite_entries)

    @property
    def normalized(self) -> bool:
        """True when the smallest finite value is exactly 0."""
        return self.min_value == 0

    def shifted(self, c) -> "ValuedWeightConfig":
        """Add the constant ``c`` to every finite value."""
        c = Fraction(c)
        return ValuedWeightConfig._trusted(self.rank, tuple((w, y if y is INF else y + c) for w, y in self.entries))

    def to_text(self) -> str:
        lines = [f"rank {self.rank}"]
        for w, y in self.entries:
            lines.append(" ".join(str(c) for c in w) + " : " + format_rational(y))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ValuedWeightConfig":
        """Parse ``rank r`` followed by lines ``w_1 ... w_r : y``."""
        rank_ = None
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if rank_ is None:
                parts = line.split()
                if len(parts) != 2 or parts[0] != "rank" or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise ParseError(f"line {lineno}: expected header 'rank r', got {raw!r}")
                rank_ = int(parts[1])
                continue
            if line.count(":") != 1:
                raise ParseError(f"line {lineno}: expected 'w_1 ... w_r : y', got {raw!r}")
            lhs, rhs = line.split(":")
            try:
                w = tuple(int(c) for c in lhs.split())
            except ValueError:
                raise ParseError(f"line {lineno}: weights must be integers in {raw!r}") from None
            if len(w) != rank_:
                raise ParseError(f"line {lineno}: expected {rank_} weight coordinates, got {len(w)}")
            try:
                y = parse_rational(rhs)
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
            if y != INF and not isinstance(y, Fraction):
                raise ParseError(f"line {lineno}: value must be a rational or inf")
            entries.append((w, y))
        if rank_ is None:
            raise ParseError("empty configuration: missing 'rank r' header")
        if not entries:
            raise ParseError("configuration has no entries")
        try:
            return cls(rank_, entries)
        except DomainError as exc:
            raise ParseError(str(exc)) from None


def _check_dim(config: ValuedWeightConfig, v: Sequence) -> tuple:
    v = vec(v)
    if len(v) != config.rank:
        raise DomainError(f"dimension mismatch: vector of length {len(v)} for rank {config.rank}")
    return v


# ---------------------------------------------------------------------------
# polytopes

class Location(str, enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"

    def __str__(self):
        return self.value


def _primitive(normal: Sequence[Fraction], offset: Fraction) -> tuple:
    """Scale a half-space so the normal is a primitive integer vector."""
    scale = reduce(lcm, (c.denominator for c in normal), 1)
    ints = [int(c * scale) for c in normal]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    return tuple(Fraction(c // g) for c in ints), offset * scale / g


@dataclass(frozen=True, eq=False, init=False)
class Polytope:
    """Convex polyhedron ``{v : <a, v> <= b for (a, b) in halfspaces}`` in Q^dim."""

    dim: int
    halfspaces: tuple = field(default=())

    def __init__(self, dim: int, halfspaces: Iterable = ()):
        best: dict = {}
        infeasible = False
        for a, b in halfspaces:
            a = vec(a)
            b = Fraction(b)
            if len(a) != dim:
                raise DomainError(f"half-space normal of length {len(a)} in dimension {dim}")
            if not any(a):
                infeasible |= b < 0
                continue
            a, b = _primitive(a, b)
            best[a] = min(best.get(a, b), b)
        hs = sorted(best.items())
        if infeasible:
            hs = [(tuple(Fraction(0) for _ in range(dim)), Fraction(-1))]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "halfspaces", tuple(hs))

    # -- constructors --------------------------------------------------------

    @classmethod
    def whole(cls, dim: int) -> "Polytope":
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> "Polytope":
        return cls(dim, [((0,) * dim, -1)])

    @classmethod
    def point(cls, v: Sequence) -> "Polytope":
        v = vec(v)
        hs = []
        for j in range(len(v)):
            e = [0] * len(v)
            e[j] = 1
            hs.append((e, v[j]))
            hs.append(([-c for c in e], -v[j]))
        return cls(len(v), hs)

    # -- membership ----------------------------------------------------------

    def _check(self, v) -> tuple:
        v = vec(v)
        if len(v) != self.dim:
            raise DomainError(f"dimension mismatch: point of length {len(v)} in dimension {self.dim}")
        return v

    def query(self, v: Sequence) -> Location:
        """Classify ``v`` against the half-spaces (interior is ambient interior)."""
        v = self._check(v)
        tight = False
        for a, b in self.halfspaces:
            s = dot(a, v)
            if s > b:
                return Location.OUTSIDE
            tight |= s == b
        return Location.BOUNDARY if tight else Location.INTERIOR

    def __contains__(self, v) -> bool:
        return self.query(v) is not Location.OUTSIDE

    def contains(self, v: Sequence) -> bool:
        return v in self

    # -- LP-backed queries ---------------------------------------------------

    def _lp(self, c: Sequence) -> lp.LPResult:
        return lp.linprog(
            [-x for x in vec(c)],
            [a for a, _ in self.halfspaces],
            [b for _, b in self.halfspaces],
            free=True,
        )

    def maximize(self, c: Sequence) -> ExtendedRational | None:
        """``max <c, v>`` over the polytope; ``None`` when empty, ``inf`` when unbounded."""
        res = self._lp(c)
        if res.status == lp.INFEASIBLE:
            return None
        if res.status == lp.UNBOUNDED:
            return INF
        return -res.value

    @cached_property
    def is_empty(self) -> bool:
        if all(b >= 0 for _, b in self.halfspaces):
            return False  # the origin is feasible
        return self.maximize((0,) * self.dim) is None

    @cached_property
    def is_bounded(self) -> bool:
        """True when empty or when no linear functional is unbounded above.

        It suffices to test ``e_1, ..., e_r`` and ``-(e_1 + ... + e_r)``:
        these positively span R^r, so any nonzero recession direction has
        a positive product with one of them.
        """
        if self.is_empty:
            return True
        directions = [[int(i == j) for i in range(self.dim)] for j in range(self.dim)]
        directions.append([-1] * self.dim)
        return all(self.maximize(e) is not INF for e in directions)

    def recession_cone_trivial(self) -> bool:
        """Whether ``{d : <a, d> <= 0 for every half-space}`` is ``{0}``."""
        cone = Polytope(self.dim, [(a, 0) for a, _ in self.halfspaces])
        return cone.is_bounded

    def issubset(self, other: "Polytope") -> bool:
        if self.dim != other.dim:
            raise DomainError("dimension mismatch")
        if self.is_empty:
            return True
        for a, b in other.halfspaces:
            m = self.maximize(a)
            if m is INF or m > b:
                return False
        return True

    def same_set(self, other: "Polytope") -> bool:
        return self.issubset(other) and other.issubset(self)

    def relative_interior_contains(self, v: Sequence) -> bool:
        """Membership in the relative interior (interior within the affine hull)."""
        v = self._check(v)
        if v not in self:
            return False
        for a, b in self.halfspaces:
            if dot(a, v) == b:
                low = self.maximize([-x for x in a])
                if low is INF or -low != b:
                    return False
        return True

    def minimized(self) -> "Polytope":
        """Drop half-spaces implied by the others."""
        if self.is_empty:
            return Polytope.empty(self.dim)
        kept = list(self.halfspaces)
        for h in list(self.halfspaces):
            rest = Polytope(self.dim, [k for k in kept if k != h])
            m = rest.maximize(h[0])
            if m is not INF and m <= h[1]:
                kept.remove(h)
        return Polytope(self.dim, kept)

    def negated(self) -> "Polytope":
        """The point reflection ``-P``."""
        return Polytope(self.dim, [(tuple(-c for c in a), b) for a, b in self.halfspaces])

    # -- vertices ------------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple:
        """Vertices in lexicographic order; raises for unbounded polyhedra."""
        if self.is_empty:
            return ()
        if not self.is_bounded:
            raise DomainError("vertex enumeration of an unbounded polyhedron")
        found = set()
        for combo in itertools.combinations(self.halfspaces, self.dim):
            x = solve_square([a for a, _ in combo], [b for _, b in combo])
            if x is not None and x in self:
                found.add(x)
        if self.dim == 0:
            found.add(())
        return tuple(sorted(found))

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"polytope dim {self.dim}", f"halfspaces {len(self.halfspaces)}"]
        for a, b in self.halfspaces:
            lines.append("  " + " ".join(format_rational(c) for c in a) + " <= " + format_rational(b))
        if self.is_empty:
            lines.append("vertices 0 (empty)")
        elif not self.is_bounded:
            lines.append("vertices none (unbounded)")
        else:
            lines.append(f"vertices {len(self.vertices)}")
            for v in self.vertices:
                lines.append("  (" + ", ".join(format_rational(c) for c in v) + ")")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Polytope":
        """Parse the block written by :meth:`to_text` (vertices are recomputed)."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        try:
            head = lines[0].split()
            if head[:2] != ["polytope", "dim"]:
                raise ValueError
            dim = int(head[2])
            count = int(lines[1].split()[1])
            hs = []
            for ln in lines[2 : 2 + count]:
                lhs, rhs = ln.split("<=")
                hs.append(([parse_rational(c) for c in lhs.split()], parse_rational(rhs)))
        except (IndexError, ValueError) as exc:
            raise ParseError(f"malformed polytope block: {exc}") from None
        return cls(dim, hs)

    def __str__(self):
        return self.to_text()


def _integer_normal(diffs: list) -> tuple | None:
    """A primitive integer normal to ``dim - 1`` integer difference vectors in Z^dim (dim <= 3)."""
    if len(diffs) == 0:
        n = (1,)
    elif len(diffs) == 1:
        (a, b), = diffs
        n = (b, -a)
    else:
        (a1, a2, a3), (b1, b2, b3) = diffs
        n = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    g = reduce(gcd, (abs(c) for c in n), 0)
    if g == 0:
        return None
    for c in n:
        if c:
            # sign convention: first nonzero entry positive
            g = g if c > 0 else -g
            break
    return tuple(c // g for c in n)


def _full_hull(pts: list, dim: int) -> Polytope:
    """Facets of a full-dimensional hull in dimension <= 3, in integer arithmetic."""
    scale = reduce(lcm, (c.denominator for p in pts for c in p), 1)
    ipts = [tuple(int(c * scale) for c in p) for p in pts]
    facets = {}
    seen = set()
    for combo in itertools.combinations(range(len(ipts)), dim):
        p0 = ipts[combo[0]]
        n = _integer_normal([tuple(a - b for a, b in zip(ipts[k], p0)) for k in combo[1:]])
        if n is None:
            continue
        b = sum(x * y for x, y in zip(n, p0))
        if (n, b) in seen:
            continue
        seen.add((n, b))
        above = below = False
        for q in ipts:
            s = sum(x * y for x, y in zip(n, q))
            above |= s > b
            below |= s < b
            if above and below:
                break
        if not above:
            facets[n] = b
        elif not below:
            facets[tuple(-c for c in n)] = -b
    hs = [(tuple(Fraction(c) for c in n), Fraction(b, scale)) for n, b in facets.items()]
    hull = Polytope(dim, hs)
    verts = []
    for p, q in zip(pts, ipts):
        tight = [n for n, b in facets.items() if sum(x * y for x, y in zip(n, q)) == b]
        if len(tight) >= dim and rank(tight, dim) == dim:
            verts.append(p)
    object.__setattr__(hull, "vertices", tuple(sorted(verts)))
    return hull


def convex_hull(points: Iterable[Sequence], dim: int) -> Polytope:
    """Half-space description of the convex hull of finitely many points.

    Lower-dimensional hulls are described by pairs of opposite half-spaces
    for the affine hull plus facet inequalities inside it.
    """
    pts = sorted({vec(p) for p in points})
    if any(len(p) != dim for p in pts):
        raise DomainError("dimension mismatch in convex_hull")
    if not pts:
        return Polytope.empty(dim)
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    span = rank(diffs, dim) if diffs else 0
    if span == dim and dim <= 3:
        hull = _full_hull(pts, dim)
    else:
        normals = nullspace(diffs, dim) if diffs else nullspace([], dim)
        hs = []
        for n in normals:
            b = dot(n, p0)
            hs.append((n, b))
            hs.append((tuple(-c for c in n), -b))
        if span > 0:
            for combo in itertools.combinations(pts, span):
                s0 = combo[0]
                rows = list(normals) + [tuple(a - b for a, b in zip(s, s0)) for s in combo[1:]]
                ns = nullspace(rows, dim)
                if len(ns) != 1:
                    continue
                a = ns[0]
                b = dot(a, s0)
                sides = {(dot(a, p) > b) - (dot(a, p) < b) for p in pts}
                if 1 not in sides:
                    hs.append((a, b))
                elif -1 not in sides:
                    hs.append((tuple(-c for c in a), -b))
        hull = Polytope(dim, hs)
    object.__setattr__(hull, "is_empty", False)
    object.__setattr__(hull, "is_bounded", True)
    return hull


# ---------------------------------------------------------------------------
# operations on configurations

def lower_hull_value(config: ValuedWeightConfig, w: Sequence) -> ExtendedRational:
    """Bottom of the convex hull of ``{(w_i, y_i)}`` above ``w``; ``inf`` outside the weight hull.

    Solved as the LP ``min sum l_i y_i`` with ``l >= 0``, ``sum l_i = 1`` and
    ``sum l_i w_i = w``.
    """
    w = _check_dim(config, w)
    ents = config.finite_entries
    a_eq = [[wi[j] for wi, _ in ents] for j in range(config.rank)]
    a_eq.append([1] * len(ents))
    res = lp.linprog([y for _, y in ents], a_eq=a_eq, b_eq=list(w) + [1])
    if res.status == lp.INFEASIBLE:
        return INF
    return res.value


def conjugate_eval(config: ValuedWeightConfig, v: Sequence) -> Fraction:
    """Convex conjugate ``max_i <w_i, v> - y_i`` over finite entries."""
    v = _check_dim(config, v)
    return max(sum(wj * vj for wj, vj in zip(w, v)) - y for w, y in config.finite_entries)


def subdiff_zero(config: ValuedWeightConfig) -> Polytope:
    """Subdifferential at 0 of the lower hull function.

    Equal to ``{v : <w_i, v> <= y_i - lower_hull_value(0)}``.  Raises
    :class:`DomainError` when 0 is outside the weight hull.
    """
    base = lower_hull_value(config, (0,) * config.rank)
    if base is INF:
        raise DomainError("0 lies outside the weight hull; the subdifferential at 0 is empty")
    return Polytope(config.rank, [(w, y - base) for w, y in config.finite_entries])


def weight_polytopes(config: ValuedWeightConfig) -> tuple[Polytope, Polytope]:
    """``(conv{w_i : y_i < inf}, conv{w_i : y_i = 0})`` of a normalized config."""
    if not config.normalized:
        raise DomainError("weight_polytopes needs a normalized configuration (minimum value 0)")
    full = convex_hull(config.weights, config.rank)
    special = convex_hull([w for w, y in config.finite_entries if y == 0], config.rank)
    return full, special


def polytope_query(p: Polytope, v: Sequence) -> Location:
    """``outside``, ``boundary`` or ``interior`` (ambient interior)."""
    return p.query(v)


def polytope_vertices(p: Polytope) -> list:
    return list(p.vertices)


def sublevel_polytope(config: ValuedWeightConfig, u) -> Polytope:
    """``{v : max_i <w_i, -v> - y_i <= u}``, a sublevel set of the apartment function."""
    u = Fraction(u)
    return Polytope(config.rank, [(tuple(-c for c in w), u + y) for w, y in config.finite_entries])


def recession_cone_trivial(config: ValuedWeightConfig) -> bool:
    """Whether ``{v : <w_i, v> >= 0 for all finite entries}`` is just ``{0}``."""
    return sublevel_polytope(config, 0).recession_cone_trivial()
