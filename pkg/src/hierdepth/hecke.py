"""Elementary transforms of split bundles on the projective line over F_p.

A split bundle O(d_1) + ... + O(d_r) is modeled through a section space:
the summand of degree d contributes the polynomials of degree at most d,
stored as d + 1 coefficients (none when d < 0), concatenated into one flat
coordinate vector. A subsheaf obtained from rank-one skyscraper transforms
is represented by the subspace of sections it contains, kept in canonical
echelon form, together with a determinant-degree ledger.

An elementary transform at a rational point q with covector phi replaces
the subspace by the kernel of the functional s -> phi . s(q). Evaluation
at the point at infinity [1:0] reads the top coefficient of each block.
The transform is refused as vacuous when the functional already vanishes
on the whole subspace, since then no colength-one modification happens.

When the plain section space is too thin to carry all requested steps
(negative degrees contribute nothing), the filtration builder shifts every
summand by a uniform twist. Transform kernels commute with twisting, and
depth is invariant under it, so the ledger still tracks the untwisted
determinant degree. The stored truncation cap bounds the twisted degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .depth import HierFiltration
from .errors import (
    BadTruncation,
    NegativeM,
    NotEnoughPoints,
    OverlappingSupport,
    VacuousTransform,
)
from .gf import Field, FMatrix
from .picard import Lattice


@dataclass(frozen=True)
class RationalPoint:
    """Point of the projective line: an element of F_p, or infinity [1:0]."""

    coord: int | None = None

    @classmethod
    def affine(cls, value: int) -> "RationalPoint":
        return cls(int(value))

    @classmethod
    def infinity(cls) -> "RationalPoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.coord is None

    def label(self) -> str:
        return "inf" if self.is_infinity else str(self.coord)

    def __repr__(self) -> str:
        return f"RationalPoint({self.label()})"


INFINITY = RationalPoint.infinity()


def enumerate_points(p: int) -> list[RationalPoint]:
    """The p + 1 rational points in the fixed order 0, 1, ..., p-1, inf."""
    Field(p)
    return [RationalPoint.affine(v) for v in range(p)] + [INFINITY]


@dataclass(frozen=True)
class PointFunctional:
    """Rank-one evaluation condition: a point and a fiber covector."""

    point: RationalPoint
    covector: tuple[int, ...]

    def __post_init__(self):
        cov = tuple(int(c) for c in self.covector)
        if not any(cov):
            raise ValueError("covector must be nonzero")
        object.__setattr__(self, "covector", cov)


@dataclass(frozen=True)
class SubsheafModel:
    """Subspace model of a subsheaf of a split bundle on the line.

    degrees holds the untwisted summand degrees; twist is the uniform
    shift applied to every block in the stored coordinates; cap bounds
    the shifted degrees; det_degree ledgers the untwisted determinant
    degree, dropping by one per transform.
    """

    degrees: tuple[int, ...]
    twist: int
    cap: int
    p: int
    basis: FMatrix
    det_degree: int

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def block_widths(self) -> tuple[int, ...]:
        return tuple(max(d + self.twist + 1, 0) for d in self.degrees)

    @property
    def block_offsets(self) -> tuple[int, ...]:
        offsets = []
        total = 0
        for w in self.block_widths:
            offsets.append(total)
            total += w
        return tuple(offsets)

    @property
    def total_width(self) -> int:
        return sum(self.block_widths)


def _model(degrees, twist, cap, p, basis, det_degree) -> SubsheafModel:
    return SubsheafModel(
        degrees=tuple(int(d) for d in degrees),
        twist=int(twist),
        cap=int(cap),
        p=int(p),
        basis=basis,
        det_degree=int(det_degree),
    )


def full_sections(degrees, cap: int, p: int) -> SubsheafModel:
    """Model holding every section of O(d_1) + ... + O(d_r).

    The dimension is the sum of d_i + 1 over nonnegative degrees; summands
    of negative degree contribute zero-width blocks. The cap must be at
    least max(0, max(d_i)).
    """
    Field(p)
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("need at least one summand degree")
    if cap < max(0, max(degrees)):
        raise BadTruncation(
            f"cap {cap} below max degree {max(0, max(degrees))}"
        )
    width = sum(max(d + 1, 0) for d in degrees)
    basis = FMatrix.identity(p, width)
    return _model(degrees, 0, cap, p, basis, sum(degrees))


def _functional_row(m: SubsheafModel, phi: PointFunctional) -> np.ndarray:
    if len(phi.covector) != m.rank:
        raise ValueError(
            f"covector length {len(phi.covector)} does not match rank {m.rank}"
        )
    row = np.zeros(m.total_width, dtype=np.int64)
    widths = m.block_widths
    offsets = m.block_offsets
    for i, (w, off) in enumerate(zip(widths, offsets)):
        c = phi.covector[i] % m.p
        if w == 0 or c == 0:
            continue
        if phi.point.is_infinity:
            row[off + w - 1] = c
        else:
            q = phi.point.coord % m.p
            val = 1
            for k in range(w):
                row[off + k] = (c * val) % m.p
                val = (val * q) % m.p
    return row


def apply_transform(m: SubsheafModel, phi: PointFunctional) -> SubsheafModel:
    """Kernel of the evaluation functional inside the current subspace.

    Drops the subspace dimension and the determinant ledger by exactly
    one. Raises VacuousTransform when the functional vanishes on the
    whole subspace.
    """
    row = _functional_row(m, phi)
    values = (m.basis.array @ row) % m.p
    if not values.any():
        raise VacuousTransform(
            f"functional at {phi.point.label()} vanishes on the subspace"
        )
    new_basis = gf.subspace_kernel(m.basis, row.reshape(1, -1))
    return _model(m.degrees, m.twist, m.cap, m.p, new_basis, m.det_degree - 1)


@dataclass(frozen=True)
class CommuteReport:
    """Outcome of comparing transform routes against the joint kernel."""

    dim_start: int
    dim_v12: int
    dim_v21: int
    dim_joint: int
    equal: bool
    v12: FMatrix
    v21: FMatrix
    joint: FMatrix


def _joint_kernel(m: SubsheafModel, f1, f2) -> FMatrix:
    rows = np.stack([_functional_row(m, f1), _functional_row(m, f2)])
    return gf.subspace_kernel(m.basis, rows)


def _three_routes(m, f1, f2) -> CommuteReport:
    v12 = apply_transform(apply_transform(m, f1), f2).basis
    v21 = apply_transform(apply_transform(m, f2), f1).basis
    joint = _joint_kernel(m, f1, f2)
    equal = v12 == v21 == joint
    return CommuteReport(
        dim_start=m.dim,
        dim_v12=v12.rows,
        dim_v21=v21.rows,
        dim_joint=joint.rows,
        equal=equal,
        v12=v12,
        v21=v21,
        joint=joint,
    )


def commute_check(m: SubsheafModel, f1: PointFunctional,
                  f2: PointFunctional) -> CommuteReport:
    """Both transform orders against the joint kernel, for distinct points.

    With disjoint supports all three canonical bases coincide; the report
    records the dimensions and the comparison. Equal points are refused,
    and a vacuous second step propagates as VacuousTransform.
    """
    if f1.point == f2.point:
        raise OverlappingSupport(
            "transform points coincide; use probe_overlap"
        )
    return _three_routes(m, f1, f2)


def probe_overlap(m: SubsheafModel, f1: PointFunctional,
                  f2: PointFunctional) -> CommuteReport:
    """Same comparison at one shared point. No equality is guaranteed.

    The report simply states whether the routes happen to agree for these
    covectors. Distinct points belong to commute_check instead.
    """
    if f1.point != f2.point:
        raise ValueError("points differ; use commute_check")
    return _three_routes(m, f1, f2)


def _choose_twist(degrees, steps: int) -> int:
    twist = 0
    while sum(max(d + twist + 1, 0) for d in degrees) < steps:
        twist += 1
    return twist


def build_curve_filtration(degrees, lambda0_degree: int, p: int):
    """Maximal-depth chain of skyscraper transforms at distinct points.

    With M = sum(degrees) - lambda0_degree, performs M transforms at the
    points 0, 1, ..., taken in the fixed enumeration order, choosing at
    each step the first standard-basis covector that is not vacuous on
    the current subspace. Returns the determinant-level filtration (read
    bottom-up) together with the model chain from the full section space
    down to the final subsheaf.

    Raises NegativeM when the budget is negative and NotEnoughPoints when
    M exceeds the p + 1 rational points.
    """
    Field(p)
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("need at least one summand degree")
    steps = sum(degrees) - int(lambda0_degree)
    if steps < 0:
        raise NegativeM(f"degree budget {steps} is negative")
    if steps > p + 1:
        raise NotEnoughPoints(
            f"{steps} transforms need {steps} distinct points; only "
            f"{p + 1} available over F_{p}"
        )
    twist = _choose_twist(degrees, steps)
    cap = sum(abs(d) for d in degrees) + steps + 1
    width = sum(max(d + twist + 1, 0) for d in degrees)
    start = _model(
        degrees, twist, cap, p, FMatrix.identity(p, width), sum(degrees)
    )
    chain = [start]
    points = enumerate_points(p)
    current = start
    for j in range(steps):
        q = points[j]
        chosen = None
        for i in range(len(degrees)):
            cov = [0] * len(degrees)
            cov[i] = 1
            phi = PointFunctional(q, tuple(cov))
            values = (current.basis.array @ _functional_row(current, phi)) % p
            if values.any():
                chosen = phi
                break
        if chosen is None:  # cannot happen while dim > 0
            raise VacuousTransform(
                f"no usable covector at point {q.label()}"
            )
        current = apply_transform(current, chosen)
        chain.append(current)
    curve = Lattice.curve()
    filtration = HierFiltration(
        lambda0=curve.divisor(int(lambda0_degree)),
        increments=tuple(curve.divisor(1) for _ in range(steps)),
        bundle_rank=len(degrees),
    )
    return filtration, chain
