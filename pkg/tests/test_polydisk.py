import random
from fractions import Fraction

import pytest

from lmhs import corpus, hodge, polydisk
from lmhs.hodge import HodgeDeligneDiagram as D
from lmhs.polydisk import (
    MultiLmhs,
    ih_decomposition,
    ih_local,
    koszul_complex,
    lmhs_to_multi,
    polydisk_cs,
)
from lmhs.ratlin import RationalMatrix
from tests_helpers import random_balanced_spec


def random_multi(rng, r=2, max_strings=3):
    """Random commuting graded pair built from monomial-module data: two
    shift actions on a random staircase of bidegree cells."""
    cells = set()
    for _ in range(rng.randint(1, 4)):
        a = rng.randint(0, 2)
        b = rng.randint(0, 2)
        cells.add((a, b))
    # close downward so the shifts stay inside
    cells = {(a, b) for (a, b) in cells for _ in [0]}
    closed = set()
    for a, b in cells:
        for x in range(a + 1):
            for y in range(b + 1):
                closed.add((x, y))
    basis = sorted(closed)
    index = {c: i for i, c in enumerate(basis)}
    n = len(basis)
    labels = tuple((a + b, a + b) for a, b in basis)
    ss = tuple(tuple((0, 1) for _ in range(r)) for _ in range(n))
    logs = []
    for axis in range(2):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for a, b in basis:
            src = index[(a, b)]
            dst = (a - 1, b) if axis == 0 else (a, b - 1)
            if dst in index:
                rows[index[dst]][src] = Fraction(1)
        logs.append(RationalMatrix.from_rows(rows))
    return MultiLmhs(2, labels, ss, tuple(logs))


def test_single_parameter_complex_shape():
    h = lmhs_to_multi(random_balanced_spec(random.Random(1), k=2))
    kc = koszul_complex(h, ())
    assert len(kc.term_dims()) == 2
    d0 = kc.differentials[0]
    assert (d0.rows, d0.cols) == (kc.term_dims()[1], kc.term_dims()[0])


def test_all_logs_zero():
    h = MultiLmhs(
        2,
        ((1, 1), (0, 0)),
        (((0, 1), (0, 1)),) * 2,
        (RationalMatrix.zeros(2, 2), RationalMatrix.zeros(2, 2)),
    )
    kc = koszul_complex(h, ())
    assert kc.term_dims() == (2, 0, 0)
    assert ih_local(h, (), 0) == D.from_dict({(1, 1): 1, (0, 0): 1})
    assert ih_local(h, (), 1).is_zero()


def test_differentials_square_to_zero_randomized():
    rng = random.Random(13)
    for _ in range(15):
        h = random_multi(rng)
        kc = koszul_complex(h, ())
        for a, b in zip(kc.differentials, kc.differentials[1:]):
            assert (b @ a).is_zero()


def test_euler_characteristic_of_full_koszul_vanishes():
    # with full copies instead of images the alternating sum is 0; with image
    # terms the alternating sum equals the alternating sum of cohomology,
    # which per bidegree matches the rank ladder
    rng = random.Random(19)
    for _ in range(10):
        h = random_multi(rng)
        kc = koszul_complex(h, ())
        dims = kc.term_dims()
        euler = sum((-1) ** i * d for i, d in enumerate(dims))
        coh = sum(
            (-1) ** ell * ih_local(h, (), ell).mass for ell in range(len(dims))
        )
        assert euler == coh


def test_vanishing_beyond_top_slot():
    rng = random.Random(23)
    for _ in range(10):
        h = random_multi(rng)
        for I, top in (((), 1), ((1,), 0), ((2,), 0), ((1, 2), 0)):
            for ell in range(top + 1, top + 3):
                assert ih_local(h, I, ell).is_zero()


def test_r1_matches_string_invariants():
    rng = random.Random(29)
    for _ in range(25):
        spec = random_balanced_spec(rng)
        h = lmhs_to_multi(spec)
        assert ih_local(h, (), 0) == hodge.ker_T_minus_I(spec)


def test_noncommuting_logs_rejected():
    n1 = RationalMatrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    n2 = RationalMatrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]])
    labels = ((1, 1), (0, 0), (0, 0))
    h = MultiLmhs(2, labels, (((0, 1), (0, 1)),) * 3, (n1, n2))
    problems = h.validate()
    assert any("commute" in p for p in problems)
    with pytest.raises(ValueError):
        koszul_complex(h, ())


def test_two_parameter_elliptic_example():
    fx = corpus.build("ex19a").payload
    h1 = fx.open_limit(1)
    assert ih_local(h1, (), 0) == D.pure(0, 0)
    assert ih_local(h1, (), 1) == D.tate(1, 1)
    dec = ih_decomposition(2, fx.strata, 2)
    assert dec.total() == D.tate(1, 2)


def test_kunneth_oracle_for_product_family():
    fx = corpus.build("ex19b").payload
    nodal = {0: D.pure(0, 0), 1: D.pure(0, 0), 2: D.tate(1, 2)}
    for m in range(5):
        want = D.empty()
        for i in range(m + 1):
            j = m - i
            if i in nodal and j in nodal:
                for (p1, q1), m1 in nodal[i].entries:
                    for (p2, q2), m2 in nodal[j].entries:
                        want = want + D.pure(p1 + p2, q1 + q2, m1 * m2)
        dec = ih_decomposition(m, fx.strata, 2)
        assert dec.total() == want, m
        assert dec.filtrations_ok()


def test_cy3_families():
    first = corpus.build("ex19c-first").payload
    second = corpus.build("ex19c-second").payload
    kc1 = koszul_complex(first.open_limit(3), ())
    assert kc1.term_dims() == (6, 7, 2)
    assert kc1.ranks() == (5, 2)
    assert ih_local(first.open_limit(3), (), 1).is_zero()
    kc2 = koszul_complex(second.open_limit(3), ())
    assert kc2.term_dims() == (6, 8, 2)
    assert kc2.ranks() == (5, 2)
    assert ih_local(second.open_limit(3), (), 1) == D.tate(2, 1)


def test_polydisk_cs_reports():
    for name in ("ex19c-first", "ex19c-second"):
        fx = corpus.build(name).payload
        for m, inv in fx.invariants:
            dec = ih_decomposition(m, fx.strata, 2)
            report = polydisk_cs(m, dec, inv)
            assert report.ok, (name, m, [r.line() for r in report.failures()])
    # m = 4 for the second family: the middle contains the extra local class
    second = corpus.build("ex19c-second").payload
    dec = ih_decomposition(4, second.strata, 2)
    assert dec.cell(0, 1) == D.tate(2, 1)


def test_r1_cs_consistency_with_one_parameter_tail():
    # with r = 1, the quotient by positive slots is trivial and the sequence
    # is the tail of the one-parameter four-term sequence
    spec = corpus.build("kodaira-I6star").payload.lmhs(1)
    h = lmhs_to_multi(spec)
    from lmhs.polydisk import StrataInput, StratumData

    strata = StrataInput(
        1,
        (
            ((), StratumData(limit=((1, h),))),
            ((1,), StratumData(invariants=((1, D.empty()),))),
        ),
    )
    dec = ih_decomposition(1, strata, 1)
    report = polydisk_cs(1, dec, hodge.ker_T_minus_I(spec))
    assert report.ok


def test_mixed_eigenvalue_filtering():
    # one invariant basis line and one order-2 line: the finite group
    # invariants drop the latter
    labels = ((1, 1), (1, 1))
    ss = (((0, 1), (0, 1)), ((1, 2), (0, 1)))
    zero = RationalMatrix.zeros(2, 2)
    h = MultiLmhs(2, labels, ss, (zero, zero))
    assert ih_local(h, (), 0) == D.pure(1, 1)
    # within the first coordinate hyperplane only the second monodromy counts
    assert ih_local(h, (1,), 0) == D.pure(1, 1, 2)
