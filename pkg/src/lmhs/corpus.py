"""Shipped fixture corpus.

Each builder returns a FixtureFile; the JSON files under lmhs/data are the
serialized forms and tests keep the two in sync.  Numeric content comes from
classical sources: Kodaira fiber types of elliptic surfaces, K3 degenerations
acquiring a simple elliptic (x^2+y^3+z^6) or N16 (x^5+y^5+z^2) point, the
E12 (x^2+y^3+z^7) tail, a rank-2 local system pulled back to an elliptic
curve family with G2 monodromy, and two 2-parameter Calabi-Yau families near
a large complex structure point.
"""
from __future__ import annotations

from fractions import Fraction

from . import quiver
from .degeneration import DegenerationFixture, DegreeData, Flags, LocalSystemData, TailStrata
from .fixtures import (
    FixtureFile,
    LocalSystemFixture,
    PolydiskFixture,
    TailFixture,
)
from .hodge import HodgeDeligneDiagram as D
from .hodge import LmhsSpec, NString
from .polydisk import MultiLmhs, StrataInput, StratumData
from .ratlin import RationalMatrix


def _spec(k, *strings) -> LmhsSpec:
    return LmhsSpec(k, tuple(strings))


def _elliptic_surface_fixture(name, note, h1_strings, m_components, reduced, sclass="none"):
    """Elliptic surface over a disk: n = 1, fiber with m_components components."""
    phantom2 = D.tate(1, m_components - 1) if m_components > 1 else None
    h1_spec = _spec(1, *h1_strings)
    from . import hodge

    h1_x0 = hodge.ker_T_minus_I(h1_spec)
    fixture = DegenerationFixture.from_dict(
        1,
        {
            0: DegreeData(D.pure(0, 0), _spec(0, NString((0, 0), 1, 1, 0, 1))),
            1: DegreeData(h1_x0, h1_spec),
            2: DegreeData(
                D.tate(1, m_components),
                _spec(2, NString((1, 1), 1, 1, 0, 1)),
                phantom=phantom2,
            ),
        },
        Flags(
            total_space_smooth=True,
            special_fiber_reduced=reduced,
            d_sing=0,
            singularity_class=sclass,
        ),
    )
    return FixtureFile("degeneration", name, note, fixture)


def kodaira_i1() -> FixtureFile:
    return _elliptic_surface_fixture(
        "kodaira-I1",
        "nodal elliptic fiber; unipotent monodromy with one Jordan string of length 2",
        [NString((1, 1), 2, 1, 0, 1)],
        m_components=1,
        reduced=True,
        sclass="slc",
    )


def kodaira_i6star() -> FixtureFile:
    return _elliptic_surface_fixture(
        "kodaira-I6star",
        "I6* fiber, 11 components; order-2 eigenvalue on a length-2 string",
        [NString((1, 1), 2, 2, 1, 1)],
        m_components=11,
        reduced=False,
    )


def kodaira_ii() -> FixtureFile:
    return _elliptic_surface_fixture(
        "kodaira-II",
        "cuspidal fiber; finite monodromy of order 6",
        [NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 1)],
        m_components=1,
        reduced=True,
    )


def kodaira_ivstar() -> FixtureFile:
    return _elliptic_surface_fixture(
        "kodaira-IVstar",
        "IV* fiber, 7 components; finite monodromy of order 3",
        [NString((1, 0), 1, 3, 1, 1), NString((0, 1), 1, 3, 2, 1)],
        m_components=7,
        reduced=False,
    )


def k3_e8tilde_lmhs2() -> LmhsSpec:
    """Degree-2 limit of a K3 family acquiring one x^2+y^3+z^6 point.

    Two unipotent length-2 strings carry the type II weight structure; the
    ten Milnor classes split as eight eigenvalue lines of orders 2, 3, 6
    (the local spectrum of the singularity) plus the tops of the two strings.
    """
    return _spec(
        2,
        NString((2, 1), 2, 1, 0, 1),
        NString((1, 2), 2, 1, 0, 1),
        NString((1, 1), 1, 1, 0, 10),
        NString((1, 1), 1, 2, 1, 2),
        NString((1, 1), 1, 3, 1, 2),
        NString((1, 1), 1, 3, 2, 2),
        NString((1, 1), 1, 6, 1, 1),
        NString((1, 1), 1, 6, 5, 1),
    )


def k3_e8tilde() -> FixtureFile:
    from . import hodge

    lmhs2 = k3_e8tilde_lmhs2()
    fixture = DegenerationFixture.from_dict(
        2,
        {
            0: DegreeData(D.pure(0, 0), _spec(0, NString((0, 0), 1, 1, 0, 1))),
            1: DegreeData(D.empty(), LmhsSpec.empty(1)),
            2: DegreeData(hodge.ker_T_minus_I(lmhs2), lmhs2),
            3: DegreeData(D.empty(), LmhsSpec.empty(3)),
            4: DegreeData(D.tate(2, 1), _spec(4, NString((2, 2), 1, 1, 0, 1))),
        },
        Flags(True, False, True, 0, "duBois"),
    )
    return FixtureFile(
        "degeneration",
        "k3-E8tilde",
        "K3 family with one simple elliptic point x^2+y^3+z^6; du Bois special fiber, "
        "no phantom cohomology",
        fixture,
    )


def n16() -> FixtureFile:
    """K3 family with one x^5+y^5+z^2 point; the special fiber is not du Bois,
    and the frontier check for the (wrongly) claimed slc class must fail: the
    limit has a frontier (0,2) class the special fiber cannot see."""
    lmhs2 = _spec(
        2,
        NString((2, 0), 1, 10, 9, 1),
        NString((0, 2), 1, 10, 1, 1),
        NString((1, 1), 1, 10, 1, 2),
        NString((1, 1), 1, 10, 3, 3),
        NString((1, 1), 1, 10, 7, 3),
        NString((1, 1), 1, 10, 9, 2),
        NString((1, 1), 1, 2, 1, 4),
        NString((1, 1), 1, 1, 0, 6),
    )
    fixture = DegenerationFixture.from_dict(
        2,
        {
            0: DegreeData(D.pure(0, 0), _spec(0, NString((0, 0), 1, 1, 0, 1))),
            1: DegreeData(D.empty(), LmhsSpec.empty(1)),
            2: DegreeData(D.tate(1, 6), lmhs2),
            3: DegreeData(D.empty(), LmhsSpec.empty(3)),
            4: DegreeData(D.tate(2, 1), _spec(4, NString((2, 2), 1, 1, 0, 1))),
        },
        Flags(True, False, True, 0, "slc"),
    )
    return FixtureFile(
        "degeneration",
        "n16",
        "K3 family with one N16 point x^5+y^5+z^2 and the slc class claimed on purpose; "
        "the F^0 frontier identity fails by exactly one class",
        fixture,
    )


def e12_tail() -> FixtureFile:
    """Stable replacement of an x^2+y^3+z^7 point: one K3 tail component and
    nine toric ones; vanishing cohomology (1,10,1) and Milnor number 12."""
    strata = TailStrata(
        2,
        (13,) + (0,) * 9,
        exceptional_diagrams=(
            (0, D.from_dict({(2, 0): 1, (1, 1): 38, (0, 2): 1})),
            (1, D.empty()),
            (2, D.from_dict({(0, 0): 9})),
        ),
        ambient_diagrams=((1, D.empty()), (2, D.from_dict({(0, 0): 12}))),
    )
    van = D.from_dict({(2, 0): 1, (1, 1): 10, (0, 2): 1})
    return FixtureFile(
        "tail_strata",
        "e12-tail",
        "tail strata of an E12 point; open Euler characteristics 13 and nine zeros",
        TailFixture(strata, van),
    )


def katz_family() -> FixtureFile:
    """Rank-2 local system on an elliptic curve minus seven points, each local
    monodromy dropping the rank by one; parabolic H^1 of rank 7."""
    data = LocalSystemData(0, 2, 2, 0, (1, 1, 1, 1, 1, 1, 1))
    return FixtureFile(
        "local_system",
        "katz-family",
        "pullback local system computing the transcendental H^2 of a surface family "
        "with G2 monodromy",
        LocalSystemFixture(data, None),
    )


def k3_elliptic_surface() -> FixtureFile:
    """Elliptic K3 with singular fibers 2 I1 + I6* + II + IV*: local coinvariant
    ranks 1,1,2,2,2 over a rational base, and Shioda blocks 1 + 4 + 16 + 1."""
    data = LocalSystemData(2, 0, 2, 0, (1, 1, 2, 2, 2))
    return FixtureFile(
        "local_system",
        "k3-elliptic-surface",
        "weight-1 local system of an elliptic K3 with fibers 2 I1 + I6* + II + IV*",
        LocalSystemFixture(data, (1, 4, 16, 1)),
    )


def rational_elliptic_ih2() -> FixtureFile:
    """Extremal rational elliptic surface blown down to a simple elliptic point:
    middle intersection cohomology assembles as 1 + (0 + 8) + 1 = 10."""
    data = LocalSystemData(2, 0, 2, 2, ())
    return FixtureFile(
        "local_system",
        "rational-elliptic-ih2",
        "graded middle intersection cohomology of an extremal rational elliptic surface",
        LocalSystemFixture(data, (1, 0, 8, 1)),
    )


# --------------------------------------------------------------------------
# quiver corpus


def quiver_skyscraper() -> FixtureFile:
    return FixtureFile(
        "quiver",
        "quiver-skyscraper",
        "one-dimensional vanishing cycles supported at the origin",
        quiver.block("D", 0),
    )


def quiver_i1_semistable() -> FixtureFile:
    return FixtureFile(
        "quiver",
        "quiver-I1-semistable",
        "intermediate extension of a rank-2 unipotent local system (nodal degeneration)",
        quiver.block("C", 2),
    )


def e8tilde_basechange_quiver() -> FixtureFile:
    """After pulling back a cuspidal elliptic family by t -> t^6 the constant
    sheaf stays perverse but no longer splits: two extension-by-zero lines."""
    return FixtureFile(
        "quiver",
        "E8tilde-basechange-quiver",
        "non-split perverse sheaf from a sixfold base change of a cuspidal family",
        quiver.direct_sum(quiver.block("B", 1), quiver.block("B", 1)),
    )


def quiver_zoo() -> FixtureFile:
    """C(2) + D(0) + E(1, order 6) in a shuffled basis; decomposable."""
    rep = quiver.direct_sum(quiver.block("C", 2), quiver.block("D", 0), quiver.block("E", 1, 6))
    p = RationalMatrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [1, 0, 1, 2], [0, 0, 0, 1]])
    q = RationalMatrix.from_rows([[1, 0, 2, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]])
    return FixtureFile(
        "quiver",
        "quiver-zoo",
        "direct sum of an intermediate extension, a skyscraper and an order-6 "
        "eigenvalue block, written in a shuffled basis",
        quiver.conjugate(rep, p, q),
    )


# --------------------------------------------------------------------------
# polydisk corpus


def _unipotent_ss(r: int, n: int):
    return tuple(tuple((0, 1) for _ in range(r)) for _ in range(n))


def ex19a() -> FixtureFile:
    """Two-parameter elliptic curve family: nodal on both axes with equal
    logarithms, two-component fiber at the origin."""
    labels1 = ((1, 1), (0, 0))
    n = RationalMatrix.from_rows([[0, 0], [1, 0]])
    h1 = MultiLmhs(2, labels1, _unipotent_ss(2, 2), (n, n))
    h0 = MultiLmhs(2, ((0, 0),), _unipotent_ss(2, 1), (RationalMatrix.zeros(1, 1),) * 2)
    h2 = MultiLmhs(2, ((1, 1),), _unipotent_ss(2, 1), (RationalMatrix.zeros(1, 1),) * 2)
    strata = StrataInput(
        2,
        (
            ((), StratumData(limit=((0, h0), (1, h1), (2, h2)))),
            ((1,), StratumData(invariants=((0, D.empty()), (1, D.empty()), (2, D.empty())))),
            ((2,), StratumData(invariants=((0, D.empty()), (1, D.empty()), (2, D.empty())))),
        ),
    )
    return FixtureFile(
        "polydisk",
        "ex19a",
        "two-parameter nodal elliptic family; central fiber gains one extra fiber class",
        PolydiskFixture(2, strata, ((1, D.pure(0, 0)), (2, D.tate(1, 1)))),
    )


def _kunneth_multilmhs(specs_by_degree, degree):
    """Exterior product of two one-parameter string models, degree part."""
    # basis: pairs (i, j) with i + j = degree; logs act on one factor each
    from .polydisk import lmhs_to_multi

    factors = []
    for i in range(degree + 1):
        j = degree - i
        if i in specs_by_degree and j in specs_by_degree:
            factors.append((lmhs_to_multi(specs_by_degree[i]), lmhs_to_multi(specs_by_degree[j])))
    labels = []
    ss = []
    blocks = []
    for a, b in factors:
        for ia in range(a.dim):
            for ib in range(b.dim):
                pa, qa = a.labels[ia]
                pb, qb = b.labels[ib]
                labels.append((pa + pb, qa + qb))
                ss.append(((0, 1), (0, 1)))
        blocks.append((a, b))
    total = len(labels)
    log1 = [[Fraction(0)] * total for _ in range(total)]
    log2 = [[Fraction(0)] * total for _ in range(total)]
    offset = 0
    for a, b in blocks:
        for ia in range(a.dim):
            for ib in range(b.dim):
                col = offset + ia * b.dim + ib
                for ra in range(a.dim):
                    x = a.logs[0].entries[ra][ia]
                    if x:
                        log1[offset + ra * b.dim + ib][col] = x
                for rb in range(b.dim):
                    x = b.logs[0].entries[rb][ib]
                    if x:
                        log2[offset + ia * b.dim + rb][col] = x
        offset += a.dim * b.dim

    def mk(rows):
        return RationalMatrix.from_rows(rows) if total else RationalMatrix.zeros(0, 0)

    return MultiLmhs(2, tuple(labels), tuple(ss), (mk(log1), mk(log2)))


def ex19b() -> FixtureFile:
    """Exterior square of a two-component (I2) semistable elliptic degeneration."""
    i2 = _spec(1, NString((1, 1), 2, 1, 0, 1))
    h0 = _spec(0, NString((0, 0), 1, 1, 0, 1))
    h2 = _spec(2, NString((1, 1), 1, 1, 0, 1))
    specs = {0: h0, 1: i2, 2: h2}
    limits = tuple((m, _kunneth_multilmhs(specs, m)) for m in range(5))
    axis_invariants = (
        (0, D.empty()),
        (1, D.empty()),
        (2, D.tate(1, 1)),
        (3, D.tate(1, 1)),
        (4, D.tate(2, 1)),
    )
    corner = tuple(
        (m, D.tate(2, 1) if m == 4 else D.empty()) for m in range(5)
    )
    strata = StrataInput(
        2,
        (
            ((), StratumData(limit=limits)),
            ((1,), StratumData(invariants=axis_invariants)),
            ((2,), StratumData(invariants=axis_invariants)),
            ((1, 2), StratumData(invariants=corner)),
        ),
    )
    return FixtureFile(
        "polydisk",
        "ex19b",
        "product of two I2 elliptic degenerations; cells rebuild the cohomology of "
        "the product of nodal fibers",
        PolydiskFixture(2, strata, ()),
    )


def _cy3_fixture(name, note, m11):
    """Two-parameter h^{2,1} = 2 Calabi-Yau threefold family with Hodge-Tate
    limit at the origin; m11 parametrizes the off-diagonal mixing of the two
    level-2 strings, giving the two large complex structure models."""
    labels3 = ((3, 3), (2, 2), (2, 2), (1, 1), (1, 1), (0, 0))
    a, b, c, d = m11
    n0 = RationalMatrix.from_rows(
        [
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
        ]
    )
    n1 = RationalMatrix.from_rows(
        [
            [0, 0, 0, 0, 0, 0],
            [a, 0, 0, 0, 0, 0],
            [c, 0, 0, 0, 0, 0],
            [0, a, b, 0, 0, 0],
            [0, c, d, 0, 0, 0],
            [0, 0, 0, a, b, 0],
        ]
    )
    n2 = n0 - n1
    h3 = MultiLmhs(2, labels3, _unipotent_ss(2, 6), (n1, n2))
    zero = RationalMatrix.zeros
    h_m = {
        0: MultiLmhs(2, ((0, 0),), _unipotent_ss(2, 1), (zero(1, 1), zero(1, 1))),
        2: MultiLmhs(2, ((1, 1),) * 2, _unipotent_ss(2, 2), (zero(2, 2), zero(2, 2))),
        3: h3,
        4: MultiLmhs(2, ((2, 2),) * 2, _unipotent_ss(2, 2), (zero(2, 2), zero(2, 2))),
    }
    zero_diag = tuple((m, D.empty()) for m in range(7))
    strata = StrataInput(
        2,
        (
            ((), StratumData(limit=tuple(sorted(h_m.items())))),
            ((1,), StratumData(invariants=zero_diag)),
            ((2,), StratumData(invariants=zero_diag)),
            ((1, 2), StratumData(invariants=zero_diag)),
        ),
    )
    expected = ((3, D.pure(0, 0)), (4, D.tate(2, 2)))
    return FixtureFile("polydisk", name, note, PolydiskFixture(2, strata, expected))


def ex19c_first() -> FixtureFile:
    return _cy3_fixture(
        "ex19c-first",
        "two-parameter Calabi-Yau threefold family, first large complex structure "
        "model: middle Koszul complex C^6 -> C^3+C^4 -> C^2 with ranks 5 and 2 and "
        "vanishing local IH^1",
        (Fraction(1), Fraction(1), Fraction(1), Fraction(1)),
    )


def ex19c_second() -> FixtureFile:
    return _cy3_fixture(
        "ex19c-second",
        "second large complex structure model: middle Koszul complex "
        "C^6 -> C^4+C^4 -> C^2 with ranks 5 and 2 and one Tate class in local IH^1",
        (Fraction(1), Fraction(1), Fraction(-1, 3), Fraction(1)),
    )


BUILDERS = {
    "kodaira-I1": kodaira_i1,
    "kodaira-I6star": kodaira_i6star,
    "kodaira-II": kodaira_ii,
    "kodaira-IVstar": kodaira_ivstar,
    "k3-E8tilde": k3_e8tilde,
    "n16": n16,
    "e12-tail": e12_tail,
    "katz-family": katz_family,
    "k3-elliptic-surface": k3_elliptic_surface,
    "rational-elliptic-ih2": rational_elliptic_ih2,
    "quiver-skyscraper": quiver_skyscraper,
    "quiver-I1-semistable": quiver_i1_semistable,
    "E8tilde-basechange-quiver": e8tilde_basechange_quiver,
    "quiver-zoo": quiver_zoo,
    "ex19a": ex19a,
    "ex19b": ex19b,
    "ex19c-first": ex19c_first,
    "ex19c-second": ex19c_second,
}


def build(name: str) -> FixtureFile:
    return BUILDERS[name]()


def build_all() -> dict:
    return {name: builder() for name, builder in BUILDERS.items()}
