import random
from math import gcd

import pytest

from lmhs import basechange as bc, corpus, degeneration as dg, hodge
from lmhs.basechange import CyclotomicMultiset, GIsotypicData
from lmhs.degeneration import InconsistentFixture
from lmhs.hodge import HodgeDeligneDiagram as D
from lmhs.hodge import LmhsSpec, NString

II = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 1)))


def test_base_change_trivializes_matching_orders():
    after = bc.base_change_lmhs(II, 6)
    assert all(s.order == 1 for s in after.strings)
    assert hodge.diagram(after) == hodge.diagram(II)
    assert [s.length for s in after.strings] == [s.length for s in II.strings]


def test_base_change_identity_and_coprime():
    assert bc.base_change_lmhs(II, 1) == II
    i6 = LmhsSpec(1, (NString((1, 1), 2, 2, 1, 1),))
    assert bc.base_change_lmhs(i6, 3) == i6


def test_base_change_composes():
    rng = random.Random(7)
    from tests_helpers import random_balanced_spec

    for _ in range(20):
        spec = random_balanced_spec(rng)
        k1, k2 = rng.randint(1, 6), rng.randint(1, 6)
        assert bc.base_change_lmhs(spec, k1 * k2) == bc.base_change_lmhs(
            bc.base_change_lmhs(spec, k1), k2
        )


def test_invariant_gap_examples():
    assert bc.invariant_gap(II, 6) == D.from_dict({(1, 0): 1, (0, 1): 1})
    unipotent = LmhsSpec(1, (NString((1, 1), 2, 1, 0, 1),))
    assert bc.invariant_gap(unipotent, 12).is_zero()
    k3 = corpus.k3_e8tilde_lmhs2()
    assert bc.invariant_gap(k3, 6) == D.tate(1, 8)


def test_invariant_gap_vanishes_iff_no_dividing_order():
    rng = random.Random(9)
    from tests_helpers import random_balanced_spec

    for _ in range(25):
        spec = random_balanced_spec(rng)
        kappa = rng.randint(1, 6)
        gap = bc.invariant_gap(spec, kappa)
        has_divider = any(
            s.order > 1 and s.order // gcd(s.order, kappa) == 1 for s in spec.strings
        )
        assert gap.is_zero() == (not has_divider)


def test_refinement_forced_case():
    m = CyclotomicMultiset.from_dict({2: 4})
    result = bc.cyclotomic_refinement(m, 2)
    assert len(result) == 1 and result[0].as_dict() == {4: 2}


def test_refinement_identity_exponent():
    m = CyclotomicMultiset.from_dict({1: 5})
    result = bc.cyclotomic_refinement(m, 1)
    assert len(result) == 1 and result[0] == m


def test_refinement_empty_when_indivisible():
    assert bc.cyclotomic_refinement(CyclotomicMultiset.from_dict({2: 3}), 2) == []


def test_refinement_round_trip_and_order():
    m = CyclotomicMultiset.from_dict({1: 4, 3: 3})
    results = bc.cyclotomic_refinement(m, 3)
    assert results, "expected at least one consistent root"
    for cand in results:
        assert bc.expand_refinement(cand, 3) == m
    tables = [r.table for r in results]
    assert tables == sorted(tables)


def test_quotient_trivial_group():
    fx = corpus.build("k3-E8tilde").payload
    iso = GIsotypicData(1)
    assert bc.quotient_invariants(fx, iso) == fx


def test_quotient_recovers_e8tilde_from_cover():
    # the cover: base change by t -> t^6, same special fiber, unipotent limit
    fx = corpus.build("k3-E8tilde").payload
    cover_degrees = {}
    for k, data in fx.degrees:
        cover_degrees[k] = type(data)(
            special_fiber=data.special_fiber,
            lmhs=bc.base_change_lmhs(fx.lmhs(k), 6),
            phantom=data.phantom,
            vanishing=data.vanishing,
        )
    from lmhs.degeneration import DegenerationFixture, Flags

    cover = DegenerationFixture.from_dict(
        2, cover_degrees, Flags(total_space_smooth=False)
    )
    # the cover's own Clemens-Schmid fails: new invariants have no preimage
    forced = DegenerationFixture.from_dict(2, cover_degrees, fx.flags)
    assert not dg.check_cs(forced, 2).ok
    iso = GIsotypicData(
        6,
        special_fiber_trivial=tuple((k, data.special_fiber) for k, data in fx.degrees),
        quotient_lmhs=tuple((k, fx.lmhs(k)) for k, _ in fx.degrees),
        quotient_flags=fx.flags,
    )
    quotient = bc.quotient_invariants(cover, iso)
    assert quotient == fx
    # invariants drop by the invariant gap, 8 classes at (1, 1)
    drop = hodge.ker_T_minus_I(cover.lmhs(2)) - hodge.ker_T_minus_I(quotient.lmhs(2))
    assert drop == D.tate(1, 8)
    # local invariant cycle property descends: surjectivity holds downstairs
    report = dg.check_cs(quotient, 2)
    assert report.ok


def test_quotient_sign_action_zeroes_position():
    from lmhs.degeneration import DegenerationFixture, DegreeData, Flags

    spec = LmhsSpec(1, (NString((1, 0), 1, 1, 0, 1), NString((0, 1), 1, 1, 0, 1)))
    fx = DegenerationFixture.from_dict(
        1, {1: DegreeData(hodge.diagram(spec), spec)}, Flags(total_space_smooth=False)
    )
    iso = GIsotypicData(2, special_fiber_trivial=((1, D.empty()),), quotient_lmhs=((1, spec),))
    quotient = bc.quotient_invariants(fx, iso)
    assert quotient.special_fiber(1).is_zero()


def test_quotient_rejects_oversized_isotypic_part():
    fx = corpus.build("kodaira-I1").payload
    iso = GIsotypicData(2, special_fiber_trivial=((1, D.pure(0, 0, 5)),))
    with pytest.raises(InconsistentFixture):
        bc.quotient_invariants(fx, iso)


def test_spec_cyclotomic_multiset():
    ms = bc.spec_cyclotomic_multiset(II)
    assert ms.as_dict() == {6: 1}
    k3 = corpus.k3_e8tilde_lmhs2()
    assert bc.spec_cyclotomic_multiset(k3).as_dict() == {1: 12, 2: 2, 3: 2, 6: 1}
