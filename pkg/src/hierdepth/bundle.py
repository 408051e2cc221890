"""Split vector bundles as ordered sums of line-bundle classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LatticeMismatch
from .picard import DivisorClass, Lattice, LatticeKind, intersect, parse_class


@dataclass(frozen=True)
class HNProfile:
    """Slope profile of a split bundle on a curve.

    groups lists (degree, multiplicity) pairs with strictly decreasing
    degree; multiplicities are positive and sum to the rank.
    """

    groups: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.groups)

    @property
    def slopes(self) -> tuple[int, ...]:
        return tuple(g[0] for g in self.groups)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(g[1] for g in self.groups)


@dataclass(frozen=True)
class SplitBundle:
    """Direct sum of line bundles, recorded by their divisor classes."""

    summands: tuple[DivisorClass, ...]

    def __post_init__(self):
        if not self.summands:
            raise ValueError("a split bundle needs at least one summand")
        object.__setattr__(self, "summands", tuple(self.summands))
        first = self.summands[0].lattice
        for s in self.summands[1:]:
            if s.lattice != first:
                raise LatticeMismatch("summands live in different lattices")

    @property
    def lattice(self) -> Lattice:
        return self.summands[0].lattice

    @property
    def rank(self) -> int:
        return len(self.summands)

    def det(self) -> DivisorClass:
        total = self.summands[0]
        for s in self.summands[1:]:
            total = total + s
        return total

    def twist(self, c: DivisorClass) -> "SplitBundle":
        """Tensor by a line bundle: shift every summand by c."""
        return SplitBundle(tuple(s + c for s in self.summands))

    def slope(self, polarization: DivisorClass) -> Fraction:
        """Exact slope: det paired with the polarization, over the rank."""
        if polarization.lattice != self.lattice:
            raise LatticeMismatch("polarization is in a different lattice")
        return Fraction(intersect(self.det(), polarization), self.rank)

    def hn_profile(self) -> HNProfile:
        """Group summand degrees by value, decreasing. Curve bundles only.

        For a split bundle on a curve the filtration by degree is the
        slope-canonical one, so the group count is the number of distinct
        summand degrees.
        """
        if self.lattice.kind is not LatticeKind.CURVE:
            raise LatticeMismatch("hn_profile is defined for curve bundles")
        degrees = [s.coeffs[0] for s in self.summands]
        groups = []
        for d in sorted(set(degrees), reverse=True):
            groups.append((d, degrees.count(d)))
        return HNProfile(tuple(groups))

    def __repr__(self) -> str:
        inner = "+".join(f"O({s.notation()})" for s in self.summands)
        return f"SplitBundle({inner})"


def parse_bundle(text: str, lattice: Lattice) -> SplitBundle:
    """Parse 'O(3)+O(1)+O(0)' style notation on the given lattice.

    Each summand is O(expr) where expr is divisor-class notation; bare
    integers are allowed on rank-one lattices.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty bundle expression")
    parts = []
    depth = 0
    current = []
    for ch in compact:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "+" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    summands = []
    for part in parts:
        if not (part.startswith("O(") and part.endswith(")")):
            raise ValueError(f"bad bundle summand {part!r} in {text!r}")
        summands.append(parse_class(part[2:-1], lattice))
    return SplitBundle(tuple(summands))
