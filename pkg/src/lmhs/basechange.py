"""Cyclic base change on limiting MHS data and finite-quotient invariants.

Base change of exponent kappa raises the monodromy to its kappa-th power:
eigenvalue orders drop from d to d / gcd(d, kappa) while string lengths,
positions and multiplicities are unchanged (rescaling the nilpotent logarithm
does not move any of the filtration dimensions the diagram layer consumes).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from . import hodge
from .cyclo import totient
from .degeneration import DegenerationFixture, DegreeData, Flags, InconsistentFixture
from .hodge import HodgeDeligneDiagram, LmhsSpec, NString


def base_change_lmhs(spec: LmhsSpec, kappa: int) -> LmhsSpec:
    """Limit MHS after pulling back by t -> t^kappa."""
    if kappa < 1:
        raise ValueError("base change exponent must be >= 1")
    strings = []
    for s in spec.strings:
        g = gcd(s.order, kappa)
        d_new = s.order // g
        a_new = (s.exponent * (kappa // g)) % d_new if d_new > 1 else 0
        strings.append(NString(s.top, s.length, d_new, a_new, s.multiplicity))
    return LmhsSpec(spec.degree, tuple(strings))


def invariant_gap(spec: LmhsSpec, kappa: int) -> HodgeDeligneDiagram:
    """Diagram of new monodromy invariants created by the base change:
    ker(T^kappa - I) / ker(T - I)."""
    after = hodge.ker_T_minus_I(base_change_lmhs(spec, kappa))
    before = hodge.ker_T_minus_I(spec)
    return after - before


@dataclass(frozen=True)
class CyclotomicMultiset:
    """Multiplicities of rational monodromy blocks: order d occurs m_d times,
    each block of rational dimension totient(d)."""

    table: tuple = ()  # sorted ((d, m_d), ...) with m_d > 0

    @staticmethod
    def from_dict(table) -> "CyclotomicMultiset":
        clean = {}
        for d, m in dict(table).items():
            if d < 1 or m < 0:
                raise ValueError("orders must be >= 1 and multiplicities >= 0")
            if m:
                clean[int(d)] = clean.get(int(d), 0) + int(m)
        return CyclotomicMultiset(tuple(sorted(clean.items())))

    def as_dict(self) -> dict:
        return dict(self.table)

    def dimension(self) -> int:
        return sum(m * totient(d) for d, m in self.table)

    def is_zero(self) -> bool:
        return not self.table


def expand_refinement(n_table: CyclotomicMultiset, kappa: int) -> CyclotomicMultiset:
    """Push a kappa-th-root multiset forward: an order-l block becomes
    totient(l)/totient(l') copies of order l' = l/gcd(l, kappa)."""
    out: dict = {}
    for ell, n in n_table.table:
        k = ell // gcd(ell, kappa)
        out[k] = out.get(k, 0) + n * (totient(ell) // totient(k))
    return CyclotomicMultiset.from_dict(out)


def cyclotomic_refinement(m: CyclotomicMultiset, kappa: int) -> list:
    """All kappa-th-root multisets consistent with the given one.

    A root block of order l contributes totient(l)/totient(l/gcd(l,kappa))
    blocks of order k = l/gcd(l,kappa), so candidates for each target order k
    satisfy l = k*gcd(l,kappa) <= k*kappa; the search over each target order
    is independent and exhaustive over that finite range.  An empty list
    signals that no consistent root exists.  Results in lexicographic order.
    """
    if kappa < 1:
        raise ValueError("base change exponent must be >= 1")
    target = m.as_dict()
    per_order_solutions = []
    for k, m_k in sorted(target.items()):
        candidates = []
        for ell in range(1, k * kappa + 1):
            if ell // gcd(ell, kappa) == k:
                candidates.append((ell, totient(ell) // totient(k)))
        solutions = []

        def search(idx: int, remaining: int, chosen: tuple):
            if idx == len(candidates):
                if remaining == 0:
                    solutions.append(chosen)
                return
            ell, weight = candidates[idx]
            for count in range(remaining // weight + 1):
                search(idx + 1, remaining - count * weight, chosen + ((ell, count),))

        search(0, m_k, ())
        if not solutions:
            return []
        per_order_solutions.append(solutions)
    results = []
    for combo in product(*per_order_solutions):
        table: dict = {}
        for partial in combo:
            for ell, count in partial:
                if count:
                    table[ell] = table.get(ell, 0) + count
        results.append(CyclotomicMultiset.from_dict(table))
    unique = sorted(set(results), key=lambda c: c.table)
    for candidate in unique:
        assert expand_refinement(candidate, kappa) == m
    return unique


def spec_cyclotomic_multiset(spec: LmhsSpec) -> CyclotomicMultiset:
    """Monodromy orders on ker(N), grouped into rational blocks."""
    table: dict = {}
    for s in spec.strings:
        table[s.order] = table.get(s.order, 0) + s.multiplicity
    blocks = {}
    for d, total in table.items():
        f = totient(d)
        if total % f:
            raise ValueError(
                f"order-{d} multiplicity {total} is not a multiple of totient({d}); "
                "the spec is not defined over Q"
            )
        blocks[d] = total // f
    return CyclotomicMultiset.from_dict(blocks)


@dataclass(frozen=True)
class GIsotypicData:
    """Descent data for a cyclic quotient of a degeneration.

    Carries the order of the group, the trivial-isotypic part of each
    special-fiber diagram, and the root string data of the quotient monodromy
    (one choice among the consistent cyclotomic refinements); per-position
    multiplicities alone cannot recover the weights of the quotient's
    coinvariants, which its own Clemens-Schmid check needs.
    """

    group_order: int
    special_fiber_trivial: tuple = ()  # ((k, diagram), ...)
    quotient_lmhs: tuple = ()  # ((k, LmhsSpec), ...)
    quotient_flags: Flags | None = None

    def trivial_part(self, k: int) -> HodgeDeligneDiagram | None:
        for kk, d in self.special_fiber_trivial:
            if kk == k:
                return d
        return None

    def lmhs(self, k: int) -> LmhsSpec | None:
        for kk, s in self.quotient_lmhs:
            if kk == k:
                return s
        return None


def quotient_invariants(fixture: DegenerationFixture, iso: GIsotypicData) -> DegenerationFixture:
    """Fixture of the quotient family: special-fiber diagrams are replaced by
    their trivial-isotypic parts and the limit data by the chosen root.

    Consistency required: each trivial part embeds in the cover's diagram,
    and base-changing each quotient limit spec by the group order returns the
    cover's.  Running the Clemens-Schmid checks on the result is part of the
    contract whenever the quotient's total space is flagged smooth.
    """
    table = {}
    for k, data in fixture.degrees:
        trivial = iso.trivial_part(k)
        if trivial is None:
            trivial = data.special_fiber
        elif not trivial <= data.special_fiber:
            raise InconsistentFixture(
                f"trivial-isotypic part exceeds the cover's diagram in degree {k}"
            )
        spec = iso.lmhs(k)
        if spec is None:
            spec = fixture.lmhs(k)
        elif base_change_lmhs(spec, iso.group_order) != fixture.lmhs(k):
            raise InconsistentFixture(
                f"quotient limit spec in degree {k} does not base-change to the cover's"
            )
        table[k] = DegreeData(
            special_fiber=trivial,
            lmhs=spec,
            phantom=data.phantom,
            vanishing=data.vanishing,
        )
    flags = iso.quotient_flags if iso.quotient_flags is not None else fixture.flags
    return DegenerationFixture.from_dict(fixture.n, table, flags)
