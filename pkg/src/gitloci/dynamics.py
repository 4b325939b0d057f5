"""Degree-d endomorphisms of projective n-space and their conjugation loci.

A map is stored at lift level: the coefficient ``c[i, a]`` multiplies the
monomial ``x^a`` in the ``i``-th coordinate form.  The group acts by

    g . phi := g^{-1} o phi o g,

so the diagonal torus ``diag(t_0, ..., t_n)`` scales ``c[i, a]`` by
``t^(a - e_i)``.  Apartment coordinates are ``v = (ord t_1, ..., ord t_n)``
with ``t_0 = (t_1 ... t_n)^{-1}``, and the full weight ``a - e_i`` is reduced
to ``(w_1 - w_0, ..., w_n - w_0)`` accordingly.

Because the action composes as ``(gh) . phi = h . (g . phi)``, a group
element ``g`` stands for the coset ``g G(O_K)``: ``ord_res(phi, g)`` is
unchanged when ``g`` is multiplied on the right by an integral unimodular
matrix.  The apartment through ``h`` consists of the points ``h * torus(v)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .apartment import ReductionClass, apartment_min_locus, normalize_config
from .convex import Polytope, ValuedWeightConfig
from .errors import DomainError, ParseError
from .linalg import vec
from .valued_field import INF, FieldElement, as_element, format_rational

__all__ = [
    "GroupElement",
    "HesseVerdict",
    "ProjEndomorphism",
    "WeightSlot",
    "conjugate_map",
    "conjugation_weights",
    "determinant",
    "dim_count",
    "divergence_contraction",
    "format_form",
    "hesse_classify",
    "hesse_map",
    "map_config",
    "min_res_locus",
    "multi_indices",
    "ord_res",
    "raw_map_config",
    "substitute",
    "sylvester_resultant",
]

ZERO = FieldElement.constant(0)
ONE = FieldElement.constant(1)


def multi_indices(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in ``n + 1`` variables, lexicographically descending."""
    if n == 0:
        return [(d,)]
    return [(k,) + rest for k in range(d, -1, -1) for rest in multi_indices(n - 1, d - k)]


def dim_count(n: int, d: int) -> int:
    """Number of coefficients ``(n + 1) * C(n + d, d)`` of a degree-``d`` map of P^n."""
    if n < 1 or d < 1:
        raise DomainError(f"dim_count needs n >= 1 and d >= 1, got n={n}, d={d}")
    return (n + 1) * math.comb(n + d, d)


# ---------------------------------------------------------------------------
# homogeneous forms as {exponent tuple: FieldElement}

Form = dict


def _add_into(out: Form, form: Mapping, scale: FieldElement | None = None) -> None:
    for a, c in form.items():
        term = c if scale is None else c * scale
        s = out.get(a, ZERO) + term
        if s.is_zero():
            out.pop(a, None)
        else:
            out[a] = s


def _mul(f: Mapping, g: Mapping) -> Form:
    out: Form = {}
    for a, c in f.items():
        for b, e in g.items():
            _add_into(out, {tuple(x + y for x, y in zip(a, b)): c * e})
    return out


def substitute(form: Mapping, g: "GroupElement") -> Form:
    """The form ``x -> form(g x)``."""
    size = g.size
    linear = [
        {tuple(int(k == j) for k in range(size)): g.matrix[i][j] for j in range(size) if not g.matrix[i][j].is_zero()}
        for i in range(size)
    ]
    powers: dict = {}

    def power(i: int, k: int) -> Form:
        if (i, k) not in powers:
            powers[(i, k)] = {(0,) * size: ONE} if k == 0 else _mul(power(i, k - 1), linear[i])
        return powers[(i, k)]

    out: Form = {}
    for a, c in form.items():
        term: Form = {(0,) * size: c}
        for i, k in enumerate(a):
            if k:
                term = _mul(term, power(i, k))
        _add_into(out, term)
    return out


def format_form(form: Mapping, size: int | None = None) -> str:
    """Readable text such as ``x0^4 + (t^(-3))*x0^2*x1*x2``."""
    if not form:
        return "0"
    pieces = []
    for a in sorted(form, reverse=True):
        c = form[a]
        mono = "*".join(f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(a) if k)
        text = str(c)
        if not mono:
            pieces.append(f"({text})" if (len(c.num) > 1 or c.den != ((0, 1),)) else text)
        elif c == ONE:
            pieces.append(mono)
        elif c == -ONE:
            pieces.append(f"-{mono}")
        elif c.is_constant():
            pieces.append(f"{text}*{mono}")
        else:
            pieces.append(f"({text})*{mono}")
    return " + ".join(pieces).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# group elements

def determinant(rows: Sequence[Sequence[FieldElement]]) -> FieldElement:
    """Determinant over the field.

    Each row is first multiplied by its distinct denominators so that all
    entries are Laurent polynomials; fraction-free (Bareiss) elimination
    then only performs exact divisions, which keeps the gcd work in the
    field arithmetic trivial.
    """
    m = []
    scale = ONE
    for r in rows:
        dens = {x.den for x in r if x.den != ((Fraction(0), Fraction(1)),)}
        d = ONE
        for den in sorted(dens):
            d = d * FieldElement._raw(den, ((Fraction(0), Fraction(1)),))
        m.append([x * d for x in r] if dens else list(r))
        scale = scale * d
    n = len(m)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        p = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if p is None:
            return ZERO
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row = m[i]
            lead = row[k]
            for j in range(k + 1, n):
                val = row[j] * pivot
                if not lead.is_zero() and not m[k][j].is_zero():
                    val = val - lead * m[k][j]
                row[j] = val if prev == ONE else val / prev
            row[k] = ZERO
        prev = pivot
    det = m[n - 1][n - 1] / scale
    return -det if sign < 0 else det


@dataclass(frozen=True, init=False)
class GroupElement:
    """Invertible ``(n+1) x (n+1)`` matrix over the valued field."""

    matrix: tuple
    label: str | None

    def __init__(self, matrix: Iterable[Iterable], label: str | None = None):
        rows = tuple(tuple(as_element(x) for x in row) for row in matrix)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DomainError("group element must be a non-empty square matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "label", label)
        if self.det.is_zero():
            raise DomainError("singular matrix is not a group element")

    @property
    def size(self) -> int:
        return len(self.matrix)

    @cached_property
    def det(self) -> FieldElement:
        return determinant(self.matrix)

    @property
    def special(self) -> bool:
        return self.det == ONE

    @classmethod
    def identity(cls, size: int) -> "GroupElement":
        return cls([[ONE if i == j else ZERO for j in range(size)] for i in range(size)], label="e")

    @classmethod
    def torus(cls, v: Sequence) -> "GroupElement":
        """``diag(t_0, t_1, ..., t_n)`` with ``t_j = t^(v_j)`` and ``t_0 = (t_1...t_n)^{-1}``."""
        v = vec(v)
        exps = (-sum(v, Fraction(0)),) + v
        size = len(exps)
        return cls(
            [[FieldElement.monomial(1, exps[i]) if i == j else ZERO for j in range(size)] for i in range(size)],
            label="torus(" + ",".join(format_rational(x) for x in v) + ")",
        )

    def inverse(self) -> "GroupElement":
        n = self.size
        m = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.matrix)]
        for c in range(n):
            p = next(i for i in range(c, n) if not m[i][c].is_zero())
            m[c], m[p] = m[p], m[c]
            inv = m[c][c].inverse()
            m[c] = [x * inv for x in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return GroupElement([row[n:] for row in m])

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        n = self.size
        if other.size != n:
            raise DomainError("size mismatch in group product")
        prod = [
            [sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), ZERO) for j in range(n)]
            for i in range(n)
        ]
        return GroupElement(prod)

    def to_text(self) -> str:
        return "\n".join(", ".join(str(x) for x in row) for row in self.matrix) + "\n"

    @classmethod
    def from_text(cls, text: str, size: int | None = None) -> "GroupElement":
        """Row-major entries separated by newlines, commas or semicolons."""
        entries = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0]
            for piece in line.replace(";", ",").split(","):
                if piece.strip():
                    entries.append(piece.strip())
        k = math.isqrt(len(entries))
        if not entries or k * k != len(entries) or (size is not None and k != size):
            want = f"{size * size} " if size else "a square number of "
            raise ParseError(f"group element needs {want}entries, got {len(entries)}")
        elems = [as_element(e) for e in entries]
        try:
            return cls([elems[i * k : (i + 1) * k] for i in range(k)])
        except DomainError as exc:
            raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# endomorphisms

@dataclass(frozen=True, init=False)
class ProjEndomorphism:
    """Lift of a degree-``d`` self-map of P^n given by ``n + 1`` coordinate forms."""

    n: int
    d: int
    coeffs: tuple

    def __init__(self, n: int, d: int, coeffs: Mapping):
        if n < 1 or d < 1:
            raise DomainError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
        clean = {}
        for (i, a), c in coeffs.items():
            a = tuple(int(x) for x in a)
            if not 0 <= i <= n or len(a) != n + 1 or sum(a) != d or min(a) < 0:
                raise DomainError(f"invalid coefficient slot ({i}, {a}) for n={n}, d={d}")
            c = as_element(c)
            if not c.is_zero():
                clean[(i, a)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "coeffs", tuple(sorted(clean.items(), key=lambda kv: (kv[0][0], tuple(-x for x in kv[0][1])))))

    @classmethod
    def from_forms(cls, forms: Sequence[Mapping], d: int) -> "ProjEndomorphism":
        return cls(len(forms) - 1, d, {(i, a): c for i, f in enumerate(forms) for a, c in f.items()})

    @cached_property
    def _table(self) -> dict:
        return dict(self.coeffs)

    def coefficient(self, i: int, a: Sequence[int]) -> FieldElement:
        return self._table.get((i, tuple(a)), ZERO)

    def slots(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(i, a) for i in range(self.n + 1) for a in multi_indices(self.n, self.d)]

    def component(self, i: int) -> Form:
        return {a: c for (j, a), c in self.coeffs if j == i}

    def components(self) -> list[Form]:
        return [self.component(i) for i in range(self.n + 1)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        return "[" + " : ".join(format_form(f) for f in self.components()) + "]"

    def to_text(self) -> str:
        lines = [f"{self.n} {self.d}"]
        for (i, a), c in self.coeffs:
            lines.append(f"{i} : " + " ".join(str(x) for x in a) + f" : {c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ProjEndomorphism":
        """Parse the header ``n d`` and lines ``i : a_0 ... a_n : <element>``."""
        header = None
        coeffs: dict = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                parts = line.split()
                if len(parts) != 2 or not all(p.isdigit() for p in parts):
                    raise ParseError(f"line {lineno}: expected header 'n d', got {raw!r}")
                header = (int(parts[0]), int(parts[1]))
                continue
            parts = line.split(":")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'i : a_0 ... a_n : element', got {raw!r}")
            try:
                i = int(parts[0])
                a = tuple(int(x) for x in parts[1].split())
            except ValueError:
                raise ParseError(f"line {lineno}: component index and exponents must be integers") from None
            n, d = header
            if not 0 <= i <= n or len(a) != n + 1 or sum(a) != d or min(a) < 0:
                raise ParseError(f"line {lineno}: slot ({i}, {a}) invalid for n={n}, d={d}")
            if (i, a) in coeffs:
                raise ParseError(f"line {lineno}: duplicate coefficient slot ({i}, {a})")
            try:
                coeffs[(i, a)] = as_element(parts[2])
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        if header is None:
            raise ParseError("empty map file: missing header 'n d'")
        try:
            return cls(header[0], header[1], coeffs)
        except DomainError as exc:
            raise ParseError(str(exc)) from None


class WeightSlot(NamedTuple):
    slot: tuple
    full: tuple
    reduced: tuple


def conjugation_weights(n: int, d: int) -> list[WeightSlot]:
    """Torus weight ``a - e_i`` of every coefficient slot, full and reduced."""
    out = []
    for i in range(n + 1):
        for a in multi_indices(n, d):
            full = tuple(a[k] - (k == i) for k in range(n + 1))
            out.append(WeightSlot((i, a), full, tuple(full[k] - full[0] for k in range(1, n + 1))))
    return out


def conjugate_map(phi: ProjEndomorphism, g: GroupElement) -> ProjEndomorphism:
    """``g^{-1} o phi o g`` expanded and collected, without projective rescaling."""
    if g.size != phi.n + 1:
        raise DomainError(f"group element of size {g.size} for a map of P^{phi.n}")
    ginv = g.inverse()
    pulled = [substitute(f, g) for f in phi.components()]
    forms = []
    for i in range(phi.n + 1):
        out: Form = {}
        for j in range(phi.n + 1):
            if not ginv.matrix[i][j].is_zero():
                _add_into(out, pulled[j], ginv.matrix[i][j])
        forms.append(out)
    return ProjEndomorphism.from_forms(forms, phi.d)


def raw_map_config(phi: ProjEndomorphism) -> ValuedWeightConfig:
    """Reduced weights paired with coefficient valuations, before normalization."""
    if phi.is_zero():
        raise DomainError("the zero map has no weight configuration")
    return ValuedWeightConfig(
        phi.n,
        [
            (s.reduced, phi.coefficient(*s.slot).ord())
            for s in conjugation_weights(phi.n, phi.d)
            if not phi.coefficient(*s.slot).is_zero()
        ],
    )


def map_config(phi: ProjEndomorphism) -> ValuedWeightConfig:
    """Normalized valued weight configuration of the map on the standard apartment."""
    config, _ = normalize_config(raw_map_config(phi))
    return config


# ---------------------------------------------------------------------------
# resultants

def sylvester_resultant(f: Sequence, g: Sequence) -> FieldElement:
    """Resultant of two binary forms of the same degree ``d``.

    Forms are given by ``d + 1`` coefficients, starting with ``x^d`` and
    ending with ``y^d``; the result is the determinant of the ``2d x 2d``
    Sylvester matrix.
    """
    f = [as_element(c) for c in f]
    g = [as_element(c) for c in g]
    if len(f) != len(g):
        raise DomainError(f"degree mismatch: forms of degree {len(f) - 1} and {len(g) - 1}")
    d = len(f) - 1
    if d < 1:
        raise DomainError("resultant needs forms of degree at least 1")
    size = 2 * d
    rows = []
    for coeffs in (f, g):
        for shift in range(d):
            rows.append([ZERO] * shift + coeffs + [ZERO] * (size - shift - d - 1))
    return determinant(rows)


def _binary(form: Mapping, d: int) -> list[FieldElement]:
    return [form.get((d - k, k), ZERO) for k in range(d + 1)]


def map_resultant(phi: ProjEndomorphism) -> FieldElement:
    if phi.n != 1:
        raise DomainError("resultants are implemented for maps of P^1 only")
    return sylvester_resultant(_binary(phi.component(0), phi.d), _binary(phi.component(1), phi.d))


def ord_res(phi: ProjEndomorphism, g: GroupElement | None = None):
    """``ord Res(psi) - 2d * min ord c(psi)`` for ``psi = g . phi``; ``inf`` if Res vanishes."""
    if phi.n != 1:
        raise DomainError("ord_res is implemented for maps of P^1 only")
    psi = phi if g is None else conjugate_map(phi, g)
    res = map_resultant(psi)
    if res.is_zero():
        return INF
    return res.ord() - 2 * phi.d * min(c.ord() for _, c in psi.coeffs)


def min_res_locus(phi: ProjEndomorphism) -> Polytope:
    """Minimum locus of ``ord_res`` on the standard apartment of P^1 maps."""
    if phi.n != 1:
        raise DomainError("min_res_locus is implemented for maps of P^1 only")
    if phi.is_zero() or map_resultant(phi).is_zero():
        raise DomainError("the resultant vanishes: the map is degenerate")
    return apartment_min_locus(map_config(phi))


# ---------------------------------------------------------------------------
# contraction and the Hesse family

def divergence_contraction(phi: ProjEndomorphism) -> Form:
    """``sum_i d(phi_i)/d(x_i)``, a form of degree ``d - 1``."""
    out: Form = {}
    for (i, a), c in phi.coeffs:
        if a[i]:
            b = tuple(x - (k == i) for k, x in enumerate(a))
            _add_into(out, {b: c * a[i]})
    return out


def hesse_map(alpha) -> ProjEndomorphism:
    """``[x0^4 + a x0^2 x1 x2 : x1^4 + a x0 x1^2 x2 : x2^4 + a x0 x1 x2^2]``."""
    alpha = as_element(alpha)
    coeffs = {}
    for i in range(3):
        pure = tuple(4 if k == i else 0 for k in range(3))
        mixed = tuple(2 if k == i else 1 for k in range(3))
        coeffs[(i, pure)] = ONE
        coeffs[(i, mixed)] = alpha
    return ProjEndomorphism(2, 4, coeffs)


@dataclass(frozen=True)
class HesseVerdict:
    reduction: ReductionClass | None
    certified: bool
    note: str

    def __str__(self):
        tag = self.reduction.value if self.reduction else "uncertified"
        return f"{tag}: {self.note}"


_HESSE_BOUNDARY = (Fraction(-1), Fraction(-8))


def hesse_classify(alpha) -> HesseVerdict:
    """Reduction type of the quartic Hesse-type map with parameter ``alpha``.

    Negative valuation reduces the cubic part to the triangle ``x0 x1 x2``
    (semistable, not stable).  Otherwise the reduced cubic is a Hesse
    cubic; it is smooth unless ``residue(alpha)^3`` hits the singular
    value.  That value is -1 or -8 depending on how the cubic component is
    scaled, so both are reported as uncertified.
    """
    alpha = as_element(alpha)
    if alpha.ord() < 0:
        return HesseVerdict(ReductionClass.SEMISTABLE_NOT_STABLE, True, "reduction is the triangle of coordinate lines")
    cube = alpha.residue() ** 3
    if cube in _HESSE_BOUNDARY:
        return HesseVerdict(
            None,
            False,
            f"boundary case: residue cube {format_rational(cube)} makes one normalization of the reduced cubic singular",
        )
    return HesseVerdict(ReductionClass.STABLE, True, "reduced cubic is a smooth Hesse cubic")
