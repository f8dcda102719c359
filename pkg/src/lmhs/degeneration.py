"""One-parameter degeneration bookkeeping.

A fixture bundles, per cohomological degree, the Hodge-Deligne diagram of the
special fiber, the limiting MHS as an N-string spec, and optional phantom and
vanishing diagrams, together with geometric flags.  The checks verify, at the
level of Hodge-Deligne numbers, the four-term Clemens-Schmid sequence, the
vanishing cycle sequence, support ranges for isolated singular loci, frontier
Hodge-number identities gated by the singularity class of the special fiber,
hard Lefschetz pairing of phantoms, the Euler-Poincare rank formula, the
Shioda-style assembly over a complete base curve, and Milnor numbers of tails.

Exactness of a sequence of MHS is equivalent to vanishing of the alternating
sum of each (p, q) multiplicity (morphisms of MHS are strict), so diagrams are
the verification currency throughout; no maps are modeled.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import hodge
from .hodge import DiagramUnderflow, HodgeDeligneDiagram, LmhsSpec
from .reports import Report

SINGULARITY_CLASSES = ("none", "duBois", "slc", "rational", "logTerminal")
# classes with du Bois special fiber (licenses the F^0 frontier identity)
_DU_BOIS = ("duBois", "slc", "rational", "logTerminal")
# classes with rational singularities (licenses the F^1 identity)
_RATIONAL = ("rational", "logTerminal")

SOLVE_POSITIONS = ("coinvariants", "homology", "special_fiber", "invariants", "vanishing", "phantom")


class InconsistentFixture(ValueError):
    pass


class UnderdeterminedSolve(ValueError):
    pass


@dataclass(frozen=True)
class DegreeData:
    special_fiber: HodgeDeligneDiagram = HodgeDeligneDiagram.empty()
    lmhs: LmhsSpec | None = None
    phantom: HodgeDeligneDiagram | None = None
    vanishing: HodgeDeligneDiagram | None = None
    intersection: HodgeDeligneDiagram | None = None  # reserved IH slot, bookkeeping only


@dataclass(frozen=True)
class Flags:
    total_space_smooth: bool = True
    total_space_lci: bool = False
    special_fiber_reduced: bool = True
    d_sing: int = 0
    singularity_class: str = "none"

    def __post_init__(self):
        if self.singularity_class not in SINGULARITY_CLASSES:
            raise ValueError(f"unknown singularity class {self.singularity_class!r}")


@dataclass(frozen=True)
class DegenerationFixture:
    n: int  # relative dimension
    degrees: tuple = ()  # sorted tuple of (k, DegreeData)
    flags: Flags = field(default_factory=Flags)

    @staticmethod
    def from_dict(n: int, table, flags: Flags = Flags()) -> "DegenerationFixture":
        items = []
        for k, data in sorted(dict(table).items()):
            if data.lmhs is not None and data.lmhs.degree != k:
                raise InconsistentFixture(
                    f"limit spec in degree slot {k} is labeled degree {data.lmhs.degree}"
                )
            items.append((int(k), data))
        return DegenerationFixture(n, tuple(items), flags)

    def degree(self, k: int) -> DegreeData:
        for kk, data in self.degrees:
            if kk == k:
                return data
        return DegreeData()

    def present_degrees(self) -> list:
        return [k for k, _ in self.degrees]

    def special_fiber(self, k: int) -> HodgeDeligneDiagram:
        if k < 0 or k > 2 * self.n:
            return HodgeDeligneDiagram.empty()
        return self.degree(k).special_fiber

    def lmhs(self, k: int) -> LmhsSpec:
        spec = self.degree(k).lmhs
        return spec if spec is not None else LmhsSpec.empty(k)

    def phantom(self, k: int) -> HodgeDeligneDiagram:
        d = self.degree(k).phantom
        return d if d is not None else HodgeDeligneDiagram.empty()

    def phantom_known(self, k: int) -> bool:
        return self.degree(k).phantom is not None

    def replace_degree(self, k: int, data: DegreeData) -> "DegenerationFixture":
        table = dict(self.degrees)
        table[k] = data
        return DegenerationFixture.from_dict(self.n, table, self.flags)


def homology_term(fixture: DegenerationFixture, k: int) -> HodgeDeligneDiagram:
    """Rational homology of the compact special fiber in the degree paired
    with k, as a cohomology diagram: twist(dual(H^(2n-k+2)), n+1)."""
    return fixture.special_fiber(2 * fixture.n - k + 2).dual().twist(fixture.n + 1)


def _cs_terms(fixture: DegenerationFixture, k: int):
    coinv = hodge.coker_T_minus_I(fixture.lmhs(k - 2)).twist(1)
    homol = homology_term(fixture, k)
    sf = fixture.special_fiber(k)
    inv = hodge.ker_T_minus_I(fixture.lmhs(k))
    return coinv, homol, sf, inv


def check_cs(fixture: DegenerationFixture, k: int) -> Report:
    """Clemens-Schmid at degree k, for smooth total space:
    0 -> coinvariants(-1) -> homology -> special fiber -> invariants -> 0.
    """
    report = Report()
    loc = f"k={k}"
    if not fixture.flags.total_space_smooth:
        report.skip("cs-exactness", loc, "total space not flagged smooth")
        return report
    coinv, homol, sf, inv = _cs_terms(fixture, k)
    positions = set()
    for d in (coinv, homol, sf, inv):
        positions.update(pq for pq, _ in d.entries)
    bad = sorted(
        pq
        for pq in positions
        if coinv.mult(*pq) - homol.mult(*pq) + sf.mult(*pq) - inv.mult(*pq) != 0
    )
    report.add(
        "cs-exactness",
        loc,
        not bad,
        "" if not bad else f"alternating sum nonzero at (p,q)={bad[0]}",
    )
    inj_bad = sorted(pq for pq in positions if coinv.mult(*pq) > homol.mult(*pq))
    report.add(
        "cs-first-map-injective",
        loc,
        not inj_bad,
        "" if not inj_bad else f"coinvariants exceed homology at (p,q)={inj_bad[0]}",
    )
    surj_bad = sorted(pq for pq in positions if inv.mult(*pq) > sf.mult(*pq))
    report.add(
        "cs-last-map-surjective",
        loc,
        not surj_bad,
        "" if not surj_bad else f"invariants exceed special fiber at (p,q)={surj_bad[0]}",
    )
    if not inj_bad:
        gy_image = homol - coinv
        impure = sorted(
            pq
            for pq, m in gy_image.entries
            if m and not (pq[0] + pq[1] == k and 1 <= pq[0] <= k - 1 and 1 <= pq[1] <= k - 1)
        )
        report.add(
            "cs-gysin-image-pure",
            loc,
            not impure,
            "" if not impure else f"phantom class off weight-k level<=k-2 locus at (p,q)={impure[0]}",
        )
    return report


def vanishing_cohomology(fixture: DegenerationFixture, k: int) -> HodgeDeligneDiagram:
    """Limit modulo invariants plus the next phantom:
    H_van^k = H_lim^k / ker(T - I)  +  H_ph^(k+1)."""
    spec = fixture.lmhs(k)
    try:
        quotient = hodge.diagram(spec) - hodge.ker_T_minus_I(spec)
    except DiagramUnderflow as exc:
        raise InconsistentFixture(f"invariants exceed the limit diagram in degree {k}: {exc}")
    return quotient + fixture.phantom(k + 1)


def check_support_range(fixture: DegenerationFixture) -> Report:
    """Vanishing cohomology is confined to degrees within d_sing of the middle;
    for isolated singular locus the special fiber matches the limit away from
    the middle degrees."""
    report = Report()
    if not (fixture.flags.total_space_smooth or fixture.flags.total_space_lci):
        report.skip("support-range", "all degrees", "total space neither smooth nor lci")
        return report
    n, ds = fixture.n, fixture.flags.d_sing
    lo, hi = n - ds, n + ds
    for k in range(0, 2 * n + 2):
        van = vanishing_cohomology(fixture, k)
        if lo <= k <= hi:
            continue
        report.add(
            "support-range",
            f"k={k}",
            van.is_zero(),
            "" if van.is_zero() else f"vanishing mass {van.mass} outside [{lo},{hi}]",
        )
    if ds == 0:
        for k in range(0, 2 * n + 1):
            if k in (n, n + 1):
                continue
            same = fixture.special_fiber(k) == hodge.diagram(fixture.lmhs(k))
            report.add(
                "isolated-degreewise-isomorphism",
                f"k={k}",
                same,
                "" if same else "special fiber differs from limit outside middle degrees",
            )
    return report


def solve_unknown(fixture: DegenerationFixture, k: int, position: str) -> HodgeDeligneDiagram:
    """Solve one slot of the Clemens-Schmid or vanishing cycle sequence from
    the others, per (p, q).  Returns the diagram in the slot (twists included);
    raises if no non-negative solution exists."""
    if position not in SOLVE_POSITIONS:
        raise ValueError(f"unknown position {position!r}; expected one of {SOLVE_POSITIONS}")
    coinv, homol, sf, inv = _cs_terms(fixture, k)
    try:
        if position == "special_fiber":
            return homol + inv - coinv
        if position == "homology":
            return coinv + sf - inv
        if position == "coinvariants":
            return homol + inv - sf
        if position == "invariants":
            return coinv + sf - homol
        if position == "phantom":
            # ker(sp) = im(gy), read off the head of the four-term sequence
            return homol - coinv
        # vanishing: 0 -> ph^k -> H^k(X0) -> H^k_lim -> H^k_van -> ph^(k+1) -> 0
        if fixture.degree(k).lmhs is None:
            raise UnderdeterminedSolve(f"no limit MHS supplied in degree {k}")
        limit = hodge.diagram(fixture.lmhs(k))
        return fixture.phantom(k) + limit + fixture.phantom(k + 1) - sf
    except DiagramUnderflow as exc:
        raise InconsistentFixture(f"no non-negative solution for {position} at k={k}: {exc}")


def check_frontier(fixture: DegenerationFixture) -> Report:
    """Frontier Hodge-number identities licensed by the fixture flags.

    Smooth total space: F^0-graded and below-weight-k pieces of the special
    fiber match the monodromy invariants.  A du Bois (in particular slc)
    reduced special fiber: F^0-graded pieces of the special fiber, the full
    limit, and the finite-monodromy invariants all agree.  Log terminal: the
    limit has no frontier entries below weight k.  Rational singularities with
    smooth total space: the F^1-graded pieces match on finite-monodromy
    invariants.
    """
    report = Report()
    flags = fixture.flags
    classes_du_bois = flags.singularity_class in _DU_BOIS
    classes_rational = flags.singularity_class in _RATIONAL
    for k, data in fixture.degrees:
        loc = f"k={k}"
        sf = data.special_fiber
        spec = fixture.lmhs(k)
        limit = hodge.diagram(spec)
        inv = hodge.ker_T_minus_I(spec)
        ss_inv = hodge.ker_Tss_minus_I(spec)
        if flags.total_space_smooth:
            ok = sf.grF(0) == inv.grF(0)
            report.add("frontier-smooth-grF0", loc, ok,
                       "" if ok else f"grF0: special fiber {sf.grF(0)} vs invariants {inv.grF(0)}")
            ok = sf.weight_cut(k - 1) == inv.weight_cut(k - 1)
            report.add("frontier-smooth-low-weight", loc, ok,
                       "" if ok else "weight<k parts of special fiber and invariants differ")
        if classes_du_bois and flags.special_fiber_reduced:
            a, b, c = sf.grF(0), limit.grF(0), ss_inv.grF(0)
            ok = a == b == c
            report.add("frontier-slc-grF0", loc, ok,
                       "" if ok else f"grF0: special fiber {a}, limit {b}, finite-invariants {c}")
        elif flags.singularity_class == "slc" and not flags.special_fiber_reduced:
            report.skip("frontier-slc-grF0", loc, "special fiber not reduced")
        if flags.singularity_class == "logTerminal":
            bad = sorted(
                pq for pq, m in limit.entries
                if m and pq[0] * pq[1] == 0 and pq[0] + pq[1] < k
            )
            report.add("frontier-log-terminal-weight", loc, not bad,
                       "" if not bad else f"frontier entry below weight {k} at (p,q)={bad[0]}")
        if classes_rational and flags.total_space_smooth:
            a, b = sf.grF(1), ss_inv.grF(1)
            report.add("frontier-rational-grF1", loc, a == b,
                       "" if a == b else f"grF1: special fiber {a} vs finite-invariants {b}")
    return report


def phantom_hard_lefschetz(fixture: DegenerationFixture) -> Report:
    """Hard Lefschetz pairing of phantom degrees: ph^(n-k+1) = ph^(n+k+1)(k)."""
    report = Report()
    n = fixture.n
    for k in range(1, n + 2):
        low, high = n - k + 1, n + k + 1
        left = fixture.phantom(low)
        right = fixture.phantom(high).twist(k)
        if left.is_zero() and right.is_zero():
            continue
        ok = left == right
        report.add(
            "phantom-hard-lefschetz",
            f"degrees ({low},{high})",
            ok,
            "" if ok else f"{left} vs twisted {right}",
        )
    if not report.results:
        report.add("phantom-hard-lefschetz", "all pairs", True, "vacuous")
    return report


# ---------------------------------------------------------------------------
# global formulas


@dataclass(frozen=True)
class LocalSystemData:
    """Rank data of a polarized local system on a punctured base curve."""

    euler_characteristic: int  # chi of the full base curve
    h1: int  # first Betti number of the base curve
    rank: int  # generic rank
    fixed_rank: int = 0
    local_drops: tuple = ()  # per singular point, rank of V / V^T

    def __post_init__(self):
        if self.rank < 0 or self.fixed_rank < 0 or self.fixed_rank > self.rank:
            raise ValueError("fixed part must satisfy 0 <= fixed <= rank")
        if any(d < 0 or d > self.rank for d in self.local_drops):
            raise ValueError("local drops must lie between 0 and the generic rank")


def euler_poincare_rank(data: LocalSystemData) -> int:
    """Rank of the parabolic (intersection) H^1 of a local system on a curve:
    sum of local coinvariant ranks, minus chi times the variable rank, plus
    h^1 times the fixed rank."""
    variable = data.rank - data.fixed_rank
    value = (
        sum(data.local_drops)
        - data.euler_characteristic * variable
        + data.h1 * data.fixed_rank
    )
    if value < 0:
        raise ValueError(f"Euler-Poincare rank came out negative ({value}); invalid data")
    return value


def shioda_assemble(h0_upper: int, ih1: int, phantom_total: int, h0_lower: int) -> dict:
    """Dimension table of total cohomology over a complete base curve:
    sections of the higher weight piece, parabolic H^1, phantom classes from
    singular fibers, and the compactly supported piece."""
    blocks = {
        "h0_upper": h0_upper,
        "ih1": ih1,
        "phantom": phantom_total,
        "h0_lower": h0_lower,
    }
    if any(v < 0 for v in blocks.values()):
        raise ValueError("Shioda blocks must be non-negative")
    blocks["total"] = h0_upper + ih1 + phantom_total + h0_lower
    return blocks


@dataclass(frozen=True)
class TailStrata:
    """Stratification data of the tail in a stable replacement of an isolated
    singularity: open Euler characteristics of the exceptional components and,
    optionally, diagrams of closed strata for the subquotient bound."""

    n: int
    chi_open: tuple  # chi of each open exceptional component
    exceptional_diagrams: tuple = ()  # ((k, diagram of H^(n-k) of codim-k closed strata), ...)
    ambient_diagrams: tuple = ()  # ((k, diagram of H^(n-k) of codim-k strata incl. main component), ...)

    def __post_init__(self):
        if not self.chi_open:
            raise ValueError("tail needs at least one exceptional component")


def milnor_number(strata: TailStrata) -> int:
    """(-1)^n * (sum of open Euler characteristics - 1)."""
    return (-1) ** strata.n * (sum(strata.chi_open) - 1)


def tail_bound_check(strata: TailStrata, van: HodgeDeligneDiagram, n: int) -> Report:
    """The vanishing cohomology diagram is bounded, entrywise, by closed
    exceptional strata plus ambient strata tensored with the reduced
    cohomology of projective spaces (twists 1..k at depth k)."""
    report = Report()
    bound = HodgeDeligneDiagram.empty()
    for k, diag in strata.exceptional_diagrams:
        bound = bound + diag
    for k, diag in strata.ambient_diagrams:
        for twist in range(1, k + 1):
            bound = bound + diag.twist(twist)
    if not strata.exceptional_diagrams and not strata.ambient_diagrams:
        report.add("tail-subquotient-bound", f"n={n}", van.is_zero(),
                   "" if van.is_zero() else "no strata data but nonzero vanishing cohomology")
        return report
    excess = sorted(pq for pq, m in van.entries if m > bound.mult(*pq))
    report.add(
        "tail-subquotient-bound",
        f"n={n}",
        not excess,
        "" if not excess else f"vanishing cohomology exceeds the strata bound at (p,q)={excess[0]}",
    )
    return report


def acampo_consistency(fixture: DegenerationFixture, strata: TailStrata) -> Report:
    """For an isolated singular point, the Milnor number equals the mass of
    the middle vanishing cohomology."""
    report = Report()
    mu = milnor_number(strata)
    mass = vanishing_cohomology(fixture, fixture.n).mass
    report.add(
        "milnor-vanishing-mass",
        f"k={fixture.n}",
        mu == mass,
        "" if mu == mass else f"milnor number {mu} vs vanishing mass {mass}",
    )
    return report


def check_all(fixture: DegenerationFixture) -> Report:
    """Every degeneration check that the flags license, in a fixed order."""
    report = Report()
    for k in range(0, 2 * fixture.n + 2):
        report.extend(check_cs(fixture, k))
    report.extend(check_support_range(fixture))
    report.extend(check_frontier(fixture))
    report.extend(phantom_hard_lefschetz(fixture))
    return report
