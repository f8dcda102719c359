import random
from collections import Counter

import pytest

from lmhs import hodge, quiver
from lmhs.hodge import HodgeDeligneDiagram as D
from lmhs.hodge import LmhsSpec, NString
from lmhs.quiver import DiskQuiverRep, IndecompSummand
from lmhs.ratlin import RationalMatrix

S = IndecompSummand


def summand_pool(rng, budget=8):
    """Random multiset of blocks with total (psi + phi) dimension <= budget;
    A and B are always added as dual pairs so the result is self-dual."""
    out = []
    total = 0
    while True:
        kind = rng.choice(["C", "C", "D", "E", "AB"])
        if kind == "AB":
            i = rng.randint(1, 2)
            cand = [S("A", i), S("B", i)]
        elif kind == "E":
            i = rng.randint(1, 2)
            d = rng.choice([2, 3, 4, 6])
            cand = [S("E", i, d)]
        else:
            i = rng.randint(0 if kind == "D" else 1, 3)
            cand = [S(kind, i)]
        cost = sum(sum(s.dims) for s in cand)
        if total + cost > budget:
            return out
        out.extend(cand)
        total += cost


def test_validate_examples():
    assert quiver.validate(quiver.zero_rep()) == []
    one = RationalMatrix.identity(1)
    ok = DiskQuiverRep(1, 1, one, one, one, RationalMatrix.zeros(1, 1))
    assert quiver.validate(ok) == []
    bad = DiskQuiverRep(1, 1, one, one, one, one)
    violations = quiver.validate(bad)
    assert any("var∘can != N" in v for v in violations)


def test_validate_names_intertwining_failures():
    t6 = RationalMatrix.from_rows([[0, -1], [1, 1]])
    rep = DiskQuiverRep(
        2, 2, t6, RationalMatrix.identity(2), RationalMatrix.identity(2), RationalMatrix.zeros(2, 2)
    )
    assert any("intertwine" in v for v in quiver.validate(rep))


def test_decomposes_examples():
    assert quiver.decomposes(quiver.block("C", 2))  # nodal semistable model
    bb = quiver.direct_sum(quiver.block("B", 1), quiver.block("B", 1))
    assert not quiver.decomposes(bb)  # non-split base-changed cuspidal family
    assert quiver.decomposes(quiver.block("D", 0))


def test_stalk_costalk_examples():
    assert quiver.stalk(quiver.block("D", 0)) == (0, 1)
    assert quiver.costalk(quiver.block("D", 0)) == (1, 0)
    assert quiver.stalk(quiver.block("C", 2)) == (1, 0)
    e = quiver.block("E", 1, 3)
    assert quiver.stalk(e) == (0, 0) and quiver.costalk(e) == (0, 0)


def test_stalk_costalk_additive(seeded_rng=random.Random(17)):
    for _ in range(20):
        parts = summand_pool(seeded_rng)
        if not parts:
            continue
        reps = [quiver.block(s.family, s.size, s.order) for s in parts]
        whole = quiver.shuffled(quiver.direct_sum(*reps), seeded_rng)
        stalks = [quiver.stalk(r) for r in reps]
        costalks = [quiver.costalk(r) for r in reps]
        assert quiver.stalk(whole) == tuple(map(sum, zip(*stalks)))
        assert quiver.costalk(whole) == tuple(map(sum, zip(*costalks)))


def test_cs_sequence_examples():
    good = quiver.direct_sum(quiver.block("C", 2), quiver.block("D", 0), quiver.block("D", 0))
    assert quiver.cs_sequence(good).exact
    bb = quiver.direct_sum(quiver.block("B", 1), quiver.block("B", 1))
    report = quiver.cs_sequence(bb)
    assert not report.exact
    assert any(not slot.ok for slot in report.slots)
    assert quiver.cs_sequence(quiver.zero_rep()).exact


def test_local_invariant_cycle_examples():
    # can injective with N = 0 on a nonzero space: ker can = 0 but ker N = psi
    assert not quiver.local_invariant_cycle(quiver.block("B", 1))
    assert quiver.local_invariant_cycle(quiver.block("C", 2))
    # full direct image from the punctured disk satisfies the property
    assert quiver.local_invariant_cycle(quiver.block("A", 2))


def test_lic_matches_allowed_families():
    rng = random.Random(23)
    for _ in range(25):
        parts = summand_pool(rng)
        if not parts:
            continue
        rep = quiver.shuffled(quiver.from_summands(parts), rng)
        allowed = all(
            s.family in ("A", "C", "E") or (s.family == "D" and s.size == 0) for s in parts
        )
        assert quiver.local_invariant_cycle(rep) == allowed


def test_dualize():
    sky = quiver.block("D", 0)
    assert quiver.decompose_indecomposables(quiver.dualize(sky)) == Counter({S("D", 0): 1})
    a2 = quiver.block("A", 2)
    assert quiver.decompose_indecomposables(quiver.dualize(a2)) == Counter({S("B", 2): 1})
    b1 = quiver.block("B", 1)
    assert quiver.decompose_indecomposables(quiver.dualize(b1)) == Counter({S("A", 1): 1})


def test_dualize_involution_on_summands():
    rng = random.Random(29)
    for _ in range(15):
        parts = summand_pool(rng)
        if not parts:
            continue
        rep = quiver.shuffled(quiver.from_summands(parts), rng)
        double = quiver.dualize(quiver.dualize(rep))
        assert quiver.validate(double) == []
        assert (double.psi_dim, double.phi_dim) == (rep.psi_dim, rep.phi_dim)
        assert quiver.decompose_indecomposables(double) == Counter(parts)


def test_dualize_swaps_a_b_fixes_cde():
    rng = random.Random(31)
    parts = [S("A", 2), S("C", 2), S("D", 1), S("E", 1, 4)]
    rep = quiver.shuffled(quiver.from_summands(parts), rng)
    dual = quiver.decompose_indecomposables(quiver.dualize(rep))
    assert dual == Counter([S("B", 2), S("C", 2), S("D", 1), S("E", 1, 4)])


def test_decompose_examples():
    assert quiver.decompose_indecomposables(quiver.block("D", 0)) == Counter({S("D", 0): 1})
    bb = quiver.direct_sum(quiver.block("B", 1), quiver.block("B", 1))
    assert quiver.decompose_indecomposables(bb) == Counter({S("B", 1): 2})
    rng = random.Random(37)
    parts = [S("C", 2), S("D", 0), S("E", 1, 6)]
    rep = quiver.shuffled(quiver.from_summands(parts), rng)
    assert quiver.decompose_indecomposables(rep) == Counter(parts)


def test_decomposes_iff_summands_allowed():
    rng = random.Random(41)
    for _ in range(25):
        parts = summand_pool(rng)
        if not parts:
            continue
        rep = quiver.shuffled(quiver.from_summands(parts), rng)
        allowed = all(
            s.family in ("C", "E") or (s.family == "D" and s.size == 0) for s in parts
        )
        assert quiver.decomposes(rep) == allowed


def test_theorem_equivalence_examples():
    good = quiver.direct_sum(quiver.block("C", 2), quiver.block("C", 2), quiver.block("D", 0))
    report = quiver.theorem_a4_check(good)
    assert report.decomposes and report.cs_exact and report.local_invariant_cycle
    pair = quiver.direct_sum(quiver.block("B", 2), quiver.block("A", 2))
    report = quiver.theorem_a4_check(pair)
    assert not (report.decomposes or report.cs_exact or report.local_invariant_cycle)
    zero = quiver.theorem_a4_check(quiver.zero_rep())
    assert zero.decomposes and zero.cs_exact and zero.local_invariant_cycle


def test_theorem_check_requires_self_duality():
    with pytest.raises(ValueError, match="self-dual"):
        quiver.theorem_a4_check(quiver.block("A", 1))


def test_realize_examples():
    i1 = LmhsSpec(1, (NString((1, 1), 2, 1, 0, 1),))
    assert quiver.decompose_indecomposables(quiver.realize(i1)) == Counter({S("C", 2): 1})
    ii = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 1)))
    # the two conjugate eigenvalue lines form one rational block of dimension 2
    rep = quiver.realize(ii)
    assert quiver.decompose_indecomposables(rep) == Counter({S("E", 1, 6): 1})
    assert rep.psi_dim == ii.dimension == 2
    phantom = quiver.realize(LmhsSpec.empty(2), D.tate(1, 8))
    assert quiver.decompose_indecomposables(phantom) == Counter({S("D", 0): 8})
    assert quiver.decomposes(quiver.realize(i1)) and quiver.decomposes(phantom)


def test_realize_rejects_unbalanced_spec():
    lone = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 1, 0, 1)))
    with pytest.raises(ValueError, match="realize over Q"):
        quiver.realize(lone)


def test_realize_invariants_match_stalks():
    rng = random.Random(43)
    for _ in range(20):
        spec = random_spec(rng)
        phantom = D.tate(1, rng.randint(0, 3))
        rep = quiver.realize(spec, phantom)
        assert quiver.validate(rep) == []
        assert quiver.stalk(rep)[0] == hodge.ker_T_minus_I(spec).mass
        assert quiver.costalk(rep)[1] == hodge.coker_T_minus_I(spec).mass
        assert quiver.stalk(rep)[1] == phantom.mass
        assert quiver.decomposes(rep)


def random_spec(rng, k=None):
    """Galois-balanced random string spec (complete eigenvalue orbits)."""
    from lmhs.cyclo import primitive_exponents

    k = rng.randint(0, 3) if k is None else k
    strings = []
    for _ in range(rng.randint(1, 3)):
        length = rng.randint(1, 3)
        d = rng.choice([1, 1, 2, 3, 4, 6])
        p = rng.randint(0, k + length - 1)
        q = k + length - 1 - p
        mult = rng.randint(1, 2)
        for a in primitive_exponents(d):
            strings.append(NString((p, q), length, d, a, mult))
    return LmhsSpec(k, tuple(strings))


def test_non_unipotent_junk_in_phi_is_rejected():
    # an order-3 eigenvalue block on phi alone is not a perverse sheaf
    t3 = RationalMatrix.from_rows([[0, -1], [1, -1]])
    rep = DiskQuiverRep(
        0, 2, RationalMatrix.zeros(0, 0), t3, RationalMatrix.zeros(2, 0), RationalMatrix.zeros(0, 2)
    )
    assert any("isotypic" in v for v in quiver.validate(rep))


def test_unipotent_phi_junk_with_wrong_monodromy_is_rejected():
    # skyscraper with a nontrivial unipotent Jordan block: can∘var != N on phi
    j = RationalMatrix.from_rows([[1, 1], [0, 1]])
    rep = DiskQuiverRep(
        0, 2, RationalMatrix.zeros(0, 0), j, RationalMatrix.zeros(2, 0), RationalMatrix.zeros(0, 2)
    )
    assert any("can∘var != N" in v for v in quiver.validate(rep))
