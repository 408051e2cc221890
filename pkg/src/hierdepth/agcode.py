"""Evaluation codes from section spaces on the line and the plane.

A code is built from one section basis per bundle summand and a list of
rational evaluation points. Each point contributes a block of r coordinates
(one per summand); the codeword of a message is the list of section values
at every point, so the block layout mirrors the bundle fibers.

Evaluation at a point uses its normalized representative, first nonzero
coordinate scaled to one. Points of an exceptional locus upstairs are
modeled by evaluating at the blown-down point itself; when every section
vanishes there by construction the corresponding blocks are identically
zero, and contracting those blocks is the code-level shadow of running the
bundle through the blowdown. Contraction keeps the dimension and the exact
minimum distance while shortening the length, so the normalized distance
improves by the ratio of the lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import gf
from .errors import (
    DistanceUnknown,
    DuplicatePoint,
    EmptyCode,
    EmptyMessageSpace,
)
from .gf import Field, FMatrix

DEFAULT_BUDGET = 10**7

_SPACES = {"P1": 2, "P2": 3}


class _Infeasible:
    """Sentinel: enumeration would exceed the codeword budget."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infeasible"


INFEASIBLE = _Infeasible()


def monomial_exponents(degree: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree-d monomials, in a fixed order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if nvars == 2:
        return tuple((a, degree - a) for a in range(degree, -1, -1))
    if nvars == 3:
        out = []
        for a in range(degree, -1, -1):
            for b in range(degree - a, -1, -1):
                out.append((a, b, degree - a - b))
        return tuple(out)
    raise ValueError("only 2 or 3 variables are supported")


def normalize_point(coords, p: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is one."""
    Field(p)
    pt = tuple(int(c) % p for c in coords)
    for c in pt:
        if c:
            inv = pow(c, p - 2, p)
            return tuple((x * inv) % p for x in pt)
    raise ValueError("all-zero coordinates do not define a point")


def all_rational_points(space: str, p: int) -> list[tuple[int, ...]]:
    """Every rational point of the space, normalized, in a fixed order."""
    if space not in _SPACES:
        raise ValueError(f"unknown space {space!r}")
    Field(p)
    if space == "P1":
        return [(1, t) for t in range(p)] + [(0, 1)]
    pts = [(1, b, c) for b in range(p) for c in range(p)]
    pts += [(0, 1, c) for c in range(p)]
    pts.append((0, 0, 1))
    return pts


@dataclass(frozen=True)
class VanishingCondition:
    """Vanishing to order at least `order` at a projective point."""

    point: tuple[int, ...]
    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("vanishing order must be at least 1")
        object.__setattr__(self, "point", tuple(int(c) for c in self.point))


@dataclass(frozen=True)
class SectionBasis:
    """Echelon basis of a space of degree-d forms, rows over the monomials."""

    space: str
    degree: int
    p: int
    basis: FMatrix

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return monomial_exponents(self.degree, _SPACES[self.space])


def _derivative_multi_indices(nvars_affine: int, order: int):
    if nvars_affine == 1:
        return [(i,) for i in range(order)]
    return [(i, j) for i in range(order) for j in range(order - i)]


def _condition_rows(degree, space, cond: VanishingCondition, p):
    """Divided-power derivative functionals of order below cond.order.

    The point is normalized, the chart with coordinate one is
    dehomogenized away, and each functional evaluates a Hasse derivative
    of the dehomogenized form at the remaining affine coordinates. In
    small characteristic the binomial factors implement divided powers,
    so order-o vanishing is characterized correctly even when o exceeds p.
    """
    nvars = _SPACES[space]
    pt = normalize_point(cond.point, p)
    chart = next(i for i, c in enumerate(pt) if c)
    affine_vars = [v for v in range(nvars) if v != chart]
    coords = [pt[v] for v in affine_vars]
    monos = monomial_exponents(degree, nvars)
    rows = []
    for multi in _derivative_multi_indices(len(affine_vars), cond.order):
        row = []
        for expo in monos:
            f = [expo[v] for v in affine_vars]
            val = 1
            for e, i, a in zip(f, multi, coords):
                if e < i:
                    val = 0
                    break
                val = (val * (comb(e, i) % p) * pow(a, e - i, p)) % p
            row.append(val)
        rows.append(row)
    return rows


def vanishing_basis(degree: int, conditions, space: str,
                    p: int) -> SectionBasis:
    """Basis of the degree-d forms meeting all vanishing conditions.

    The dimension is the count of degree-d monomials minus the number of
    independent condition functionals.
    """
    if space not in _SPACES:
        raise ValueError(f"unknown space {space!r}")
    Field(p)
    monos = monomial_exponents(degree, _SPACES[space])
    rows = []
    for cond in conditions:
        rows.extend(_condition_rows(degree, space, cond, p))
    if not rows:
        basis = FMatrix.identity(p, len(monos))
    else:
        basis = gf.kernel_basis(FMatrix(p, rows, cols=len(monos)))
    return SectionBasis(space=space, degree=degree, p=p, basis=basis)


def _monomial_values(basis: SectionBasis, pt) -> np.ndarray:
    vals = []
    for expo in basis.monomials:
        v = 1
        for c, e in zip(pt, expo):
            v = (v * pow(int(c), e, basis.p)) % basis.p
        vals.append(v)
    return np.array(vals, dtype=np.int64)


def evaluate_basis(basis: SectionBasis, pt) -> np.ndarray:
    """Values of every basis form at a normalized point."""
    pt = normalize_point(pt, basis.p)
    return (basis.basis.array @ _monomial_values(basis, pt)) % basis.p


@dataclass
class LinearCode:
    """Block evaluation code with r coordinates per point."""

    p: int
    r: int
    points: tuple[tuple[int, ...], ...]
    generator: FMatrix
    k: int
    message_dim: int
    d_min: int | None = field(default=None)

    @property
    def num_points(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.r * len(self.points)


def build_code(bases, points, p: int, exceptional=()) -> LinearCode:
    """Evaluate one section basis per summand at the given points.

    Regular points must be pairwise distinct after normalization; the
    optional exceptional list is appended without that check, so a
    blown-down point may appear several times, once per upstairs point
    it models. The reported dimension k is the generator rank, which can
    fall below the message dimension when evaluation is degenerate; both
    are kept.
    """
    bases = list(bases)
    if not bases:
        raise ValueError("need at least one section basis")
    space = bases[0].space
    for b in bases:
        if b.p != p:
            raise ValueError("section basis over a different field")
        if b.space != space:
            raise ValueError("section bases on different spaces")
    Field(p)
    regular = [normalize_point(pt, p) for pt in points]
    seen = set()
    for pt in regular:
        if pt in seen:
            raise DuplicatePoint(f"repeated evaluation point {pt}")
        seen.add(pt)
    extra = [normalize_point(pt, p) for pt in exceptional]
    allpts = regular + extra
    message_dim = sum(b.dim for b in bases)
    if message_dim == 0:
        raise EmptyMessageSpace("no sections to evaluate")
    r = len(bases)
    width = r * len(allpts)
    rows = np.zeros((message_dim, width), dtype=np.int64)
    row = 0
    for i, b in enumerate(bases):
        values = np.stack(
            [(b.basis.array @ _monomial_values(b, pt)) % p for pt in allpts],
            axis=1,
        )  # dim x points
        rows[row:row + b.dim, i::r] = values
        row += b.dim
    generator = FMatrix(p, rows, cols=width)
    return LinearCode(
        p=p,
        r=r,
        points=tuple(allpts),
        generator=generator,
        k=gf.rank(generator),
        message_dim=message_dim,
    )


def _projective_class_count(p: int, k: int) -> int:
    return (p**k - 1) // (p - 1)


def min_distance(code: LinearCode, budget: int = DEFAULT_BUDGET):
    """Exact minimum weight by projective enumeration of the message space.

    Scaling a message scales the codeword, so one representative per
    projective class suffices: messages whose first nonzero entry is one,
    (p**k - 1) / (p - 1) of them over an echelon generator of rank k.
    Returns INFEASIBLE without enumerating when the class count exceeds
    the budget; otherwise caches the result on the code.
    """
    if code.k < 1:
        raise EmptyCode("code has no nonzero codeword")
    if code.d_min is not None:
        return code.d_min
    p = code.p
    reduced = gf.rref(code.generator).array  # k x n, independent rows
    k = reduced.shape[0]
    if _projective_class_count(p, k) > budget:
        return INFEASIBLE
    best = code.n
    chunk = 1 << 13
    for lead in range(k):
        tail = k - lead - 1
        total = p**tail
        tail_rows = reduced[lead + 1:]
        lead_word = reduced[lead]
        powers = p ** np.arange(tail - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            idx = np.arange(start, stop, dtype=np.int64)
            if tail:
                digits = (idx[:, None] // powers) % p
                words = (digits @ tail_rows + lead_word) % p
            else:
                words = lead_word[None, :] % p
            weights = np.count_nonzero(words, axis=1)
            low = int(weights.min())
            if low < best:
                best = low
    code.d_min = best
    return best


@dataclass(frozen=True)
class ContractionReport:
    zero_blocks: tuple[int, ...]
    n_points_before: int
    n_points_after: int
    k: int
    d_min_before: int | None
    delta_before: Fraction | None
    delta_after: Fraction | None
    empty_code: bool


def zero_block_contract(code: LinearCode):
    """Drop every point block on which all codewords vanish.

    Deleting identically zero coordinates changes no weight, so the
    dimension and the minimum distance survive while the length falls to
    r times the remaining point count. The contracted code is returned
    with its distance unset so callers can recompute it independently;
    the report carries the normalized-distance comparison when the input
    distance was already known.
    """
    r = code.r
    arr = code.generator.array
    zero = tuple(
        j for j in range(code.num_points)
        if not arr[:, j * r:(j + 1) * r].any()
    )
    keep = [j for j in range(code.num_points) if j not in set(zero)]
    cols = [j * r + i for j in keep for i in range(r)]
    contracted = LinearCode(
        p=code.p,
        r=r,
        points=tuple(code.points[j] for j in keep),
        generator=FMatrix(code.p, arr[:, cols], cols=len(cols)),
        k=code.k,  # zero columns carry no rank
        message_dim=code.message_dim,
    )
    delta_before = delta_after = None
    if code.d_min is not None and keep:
        delta_before = Fraction(code.d_min, code.n)
        delta_after = Fraction(code.d_min, r * len(keep))
    report = ContractionReport(
        zero_blocks=zero,
        n_points_before=code.num_points,
        n_points_after=len(keep),
        k=code.k,
        d_min_before=code.d_min,
        delta_before=delta_before,
        delta_after=delta_after,
        empty_code=not keep,
    )
    return contracted, report


def normalized_distance(code: LinearCode) -> Fraction:
    """Exact ratio d_min / n. Requires the distance to be computed."""
    if code.d_min is None:
        raise DistanceUnknown("compute min_distance first")
    return Fraction(code.d_min, code.n)


@dataclass(frozen=True)
class ComparisonReport:
    n_points_before: int
    n_points_after: int
    zero_blocks: tuple[int, ...]
    k: int
    d_min: int
    delta_before: Fraction
    delta_after: Fraction
    ratio: Fraction
    improved: bool


def mmp_compare(code: LinearCode, budget: int = DEFAULT_BUDGET):
    """Contract zero blocks and compare normalized distances exactly.

    The distance is enumerated once on the contracted code; the original
    shares it because only zero coordinates were removed. The improvement
    ratio equals the length ratio before over after, which exceeds one
    precisely when some block was contracted. Returns INFEASIBLE when the
    enumeration does not fit the budget.
    """
    contracted, report = zero_block_contract(code)
    if report.empty_code or code.k < 1:
        raise EmptyCode("nothing left after contraction")
    d = min_distance(contracted, budget)
    if d is INFEASIBLE:
        return INFEASIBLE
    if code.d_min is None:
        code.d_min = d  # inherited: removed coordinates were zero
    n_before = code.num_points
    n_after = report.n_points_after
    delta_before = Fraction(d, code.r * n_before)
    delta_after = Fraction(d, code.r * n_after)
    ratio = delta_after / delta_before
    assert ratio == Fraction(n_before, n_after)
    return ComparisonReport(
        n_points_before=n_before,
        n_points_after=n_after,
        zero_blocks=report.zero_blocks,
        k=code.k,
        d_min=d,
        delta_before=delta_before,
        delta_after=delta_after,
        ratio=ratio,
        improved=bool(report.zero_blocks),
    )


def append_zero_blocks(code: LinearCode, points) -> LinearCode:
    """Lengthen the code by identically zero blocks at the given points.

    Used to model extra evaluation slots that no section reaches. The
    distance is left unset on the result.
    """
    extra = [normalize_point(pt, code.p) for pt in points]
    arr = code.generator.array
    pad = np.zeros((arr.shape[0], code.r * len(extra)), dtype=np.int64)
    return LinearCode(
        p=code.p,
        r=code.r,
        points=code.points + tuple(extra),
        generator=FMatrix(
            code.p, np.hstack([arr, pad]), cols=arr.shape[1] + pad.shape[1]
        ),
        k=code.k,
        message_dim=code.message_dim,
    )


def permute_points(code: LinearCode, perm) -> LinearCode:
    """Reorder point blocks; block j of the result is block perm[j].

    A coordinate relabeling, so the cached distance carries over.
    """
    perm = [int(j) for j in perm]
    if sorted(perm) != list(range(code.num_points)):
        raise ValueError("perm must be a permutation of the point indices")
    arr = code.generator.array
    cols = [j * code.r + i for j in perm for i in range(code.r)]
    return LinearCode(
        p=code.p,
        r=code.r,
        points=tuple(code.points[j] for j in perm),
        generator=FMatrix(code.p, arr[:, cols], cols=len(cols)),
        k=code.k,
        message_dim=code.message_dim,
        d_min=code.d_min,
    )
