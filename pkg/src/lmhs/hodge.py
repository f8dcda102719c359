"""Hodge-Deligne diagram algebra and the N-string model of limiting MHS.

A diagram is a finitely supported table (p, q) -> multiplicity.  A limiting
mixed Hodge structure in cohomological degree k is encoded as a multiset of
N-strings: Jordan strings of the nilpotent monodromy logarithm, centered by
the monodromy weight filtration (top position (p, q) with p + q = k + l - 1),
each labeled by a root-of-unity eigenvalue ζ_d^a of the finite semisimple
part of the monodromy.  Multiplicities count complex dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cyclo import primitive_exponents


class DiagramUnderflow(ValueError):
    """Entrywise subtraction went negative; the fixture is inconsistent."""


class InvalidString(ValueError):
    pass


@dataclass(frozen=True)
class HodgeDeligneDiagram:
    entries: tuple = ()  # sorted tuple of ((p, q), multiplicity), multiplicities > 0

    @staticmethod
    def from_dict(table) -> "HodgeDeligneDiagram":
        clean = {}
        for (p, q), m in dict(table).items():
            if m < 0:
                raise ValueError(f"negative multiplicity at ({p},{q})")
            if m:
                clean[(int(p), int(q))] = clean.get((int(p), int(q)), 0) + int(m)
        return HodgeDeligneDiagram(tuple(sorted(clean.items())))

    @staticmethod
    def empty() -> "HodgeDeligneDiagram":
        return HodgeDeligneDiagram(())

    @staticmethod
    def pure(p: int, q: int, mult: int = 1) -> "HodgeDeligneDiagram":
        return HodgeDeligneDiagram.from_dict({(p, q): mult})

    @staticmethod
    def tate(m: int, mult: int = 1) -> "HodgeDeligneDiagram":
        """Diagram of Q(-m)^mult, a single entry at (m, m)."""
        return HodgeDeligneDiagram.pure(m, m, mult)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def mult(self, p: int, q: int) -> int:
        return self.as_dict().get((p, q), 0)

    @property
    def mass(self) -> int:
        return sum(m for _, m in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "HodgeDeligneDiagram") -> "HodgeDeligneDiagram":
        table = self.as_dict()
        for pq, m in other.entries:
            table[pq] = table.get(pq, 0) + m
        return HodgeDeligneDiagram.from_dict(table)

    def __sub__(self, other: "HodgeDeligneDiagram") -> "HodgeDeligneDiagram":
        table = self.as_dict()
        for pq, m in other.entries:
            new = table.get(pq, 0) - m
            if new < 0:
                raise DiagramUnderflow(f"subtraction underflow at {pq}")
            table[pq] = new
        return HodgeDeligneDiagram.from_dict(table)

    def __le__(self, other: "HodgeDeligneDiagram") -> bool:
        table = other.as_dict()
        return all(m <= table.get(pq, 0) for pq, m in self.entries)

    def twist(self, m: int) -> "HodgeDeligneDiagram":
        """Tate twist by Q(-m): every entry moves from (p, q) to (p+m, q+m)."""
        return HodgeDeligneDiagram.from_dict({(p + m, q + m): k for (p, q), k in self.entries})

    def dual(self) -> "HodgeDeligneDiagram":
        return HodgeDeligneDiagram.from_dict({(-p, -q): k for (p, q), k in self.entries})

    def grF(self, p0: int) -> int:
        """Dimension of the p0-graded piece of the Hodge filtration."""
        return sum(m for (p, _), m in self.entries if p == p0)

    def weight_dims(self) -> dict:
        out: dict = {}
        for (p, q), m in self.entries:
            out[p + q] = out.get(p + q, 0) + m
        return out

    def weight_cut(self, wmax: int) -> "HodgeDeligneDiagram":
        """Entries of weight p + q <= wmax."""
        return HodgeDeligneDiagram.from_dict(
            {pq: m for pq, m in self.entries if pq[0] + pq[1] <= wmax}
        )

    def __str__(self) -> str:
        if not self.entries:
            return "(empty)"
        return " + ".join(f"{m}*({p},{q})" for (p, q), m in self.entries)


def diagram_sum(diagrams) -> HodgeDeligneDiagram:
    out = HodgeDeligneDiagram.empty()
    for d in diagrams:
        out = out + d
    return out


@dataclass(frozen=True)
class NString:
    """One Jordan string of N with a root-of-unity eigenvalue label.

    Occupies positions (p - j, q - j) for j = 0..length-1; the eigenvalue of
    the finite semisimple monodromy part on the string is ζ_order^exponent.
    """

    top: tuple  # (p, q)
    length: int = 1
    order: int = 1
    exponent: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        if self.length < 1:
            raise InvalidString("string length must be >= 1")
        if self.multiplicity < 1:
            raise InvalidString("string multiplicity must be >= 1")
        if self.order < 1:
            raise InvalidString("eigenvalue order must be >= 1")
        if not (0 <= self.exponent < self.order):
            raise InvalidString("eigenvalue exponent out of range")
        if self.order == 1 and self.exponent != 0:
            raise InvalidString("order 1 forces exponent 0")
        if self.order > 1 and gcd(self.exponent, self.order) != 1:
            raise InvalidString("eigenvalue exponent must be primitive for its order")

    @property
    def bottom(self) -> tuple:
        p, q = self.top
        return (p - self.length + 1, q - self.length + 1)

    @property
    def dimension(self) -> int:
        return self.length * self.multiplicity

    def positions(self):
        p, q = self.top
        return [(p - j, q - j) for j in range(self.length)]

    def sort_key(self):
        return (self.order, self.length, self.top[0], self.top[1], self.exponent)


@dataclass(frozen=True)
class LmhsSpec:
    """A limiting MHS in one cohomological degree, as a multiset of N-strings."""

    degree: int
    strings: tuple = field(default_factory=tuple)

    def __post_init__(self):
        strings = tuple(sorted(self.strings, key=NString.sort_key))
        object.__setattr__(self, "strings", strings)
        for s in strings:
            p, q = s.top
            if p + q != self.degree + s.length - 1:
                raise InvalidString(
                    f"string with top ({p},{q}) and length {s.length} is not centered "
                    f"for degree {self.degree}"
                )

    @staticmethod
    def empty(degree: int) -> "LmhsSpec":
        return LmhsSpec(degree, ())

    @property
    def dimension(self) -> int:
        return sum(s.dimension for s in self.strings)

    def unipotent_strings(self):
        return [s for s in self.strings if s.order == 1]

    def max_order(self) -> int:
        return max((s.order for s in self.strings), default=1)


def diagram(spec: LmhsSpec) -> HodgeDeligneDiagram:
    table: dict = {}
    for s in spec.strings:
        for pos in s.positions():
            table[pos] = table.get(pos, 0) + s.multiplicity
    return HodgeDeligneDiagram.from_dict(table)


def ker_T_minus_I(spec: LmhsSpec) -> HodgeDeligneDiagram:
    """Monodromy invariants: the bottom position of each unipotent string."""
    table: dict = {}
    for s in spec.unipotent_strings():
        table[s.bottom] = table.get(s.bottom, 0) + s.multiplicity
    return HodgeDeligneDiagram.from_dict(table)


def coker_T_minus_I(spec: LmhsSpec) -> HodgeDeligneDiagram:
    """Monodromy coinvariants, untwisted: the top position of each unipotent
    string.  Callers apply the Tate twist demanded by the sequences themselves,
    so the twist is applied at exactly one site."""
    table: dict = {}
    for s in spec.unipotent_strings():
        table[s.top] = table.get(s.top, 0) + s.multiplicity
    return HodgeDeligneDiagram.from_dict(table)


def ker_Tss_minus_I(spec: LmhsSpec) -> HodgeDeligneDiagram:
    """Invariants of the finite semisimple part: all positions of unipotent strings."""
    table: dict = {}
    for s in spec.unipotent_strings():
        for pos in s.positions():
            table[pos] = table.get(pos, 0) + s.multiplicity
    return HodgeDeligneDiagram.from_dict(table)


def galois_balance_warnings(spec: LmhsSpec) -> list:
    """Rationality linter.

    A local system defined over Q forces each primitive exponent of a given
    eigenvalue order to carry the same total multiplicity for each string
    shape (order, length); complex conjugation additionally pairs a class at
    (p, q) with exponent a with one at (q, p) with exponent -a.  Violations
    are returned as human-readable warnings, not errors.
    """
    warnings = []
    by_shape: dict = {}
    by_slot: dict = {}
    for s in spec.strings:
        if s.order == 1:
            continue
        shape = (s.order, s.length)
        by_shape.setdefault(shape, {})
        by_shape[shape][s.exponent] = by_shape[shape].get(s.exponent, 0) + s.multiplicity
        slot = (s.top, s.order, s.length)
        by_slot[slot] = by_slot.get(slot, {})
        by_slot[slot][s.exponent] = by_slot[slot].get(s.exponent, 0) + s.multiplicity
    for (d, length), table in sorted(by_shape.items()):
        counts = {a: table.get(a, 0) for a in primitive_exponents(d)}
        if len(set(counts.values())) > 1:
            warnings.append(
                f"order-{d} strings of length {length} are not Galois balanced: {counts}"
            )
    for ((p, q), d, length), table in sorted(by_slot.items()):
        for a, m in sorted(table.items()):
            conj = by_slot.get(((q, p), d, length), {}).get((-a) % d, 0)
            if conj != m:
                warnings.append(
                    f"conjugation symmetry fails for order-{d} length-{length} strings: "
                    f"({p},{q}) exponent {a} has multiplicity {m} but "
                    f"({q},{p}) exponent {(-a) % d} has {conj}"
                )
    return warnings
