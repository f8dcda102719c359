import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmhs import hodge
from lmhs.hodge import (
    DiagramUnderflow,
    HodgeDeligneDiagram as D,
    InvalidString,
    LmhsSpec,
    NString,
)

I1 = LmhsSpec(1, (NString((1, 1), 2, 1, 0, 1),))
II = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 1)))


def weight_dims_from_partition(partition, k):
    """Independent oracle: graded dimensions of the monodromy weight filtration
    of a nilpotent with the given Jordan sizes, centered at k."""
    out = {}
    for size in partition:
        for j in range(size):
            w = k + size - 1 - 2 * j
            out[w] = out.get(w, 0) + 1
    return out


def test_diagram_nodal_fiber_matches_weight_filtration_oracle():
    # one Jordan string of length 2 centered at k = 1
    assert hodge.diagram(I1).as_dict() == {(1, 1): 1, (0, 0): 1}
    assert hodge.diagram(I1).weight_dims() == weight_dims_from_partition((2,), 1)


def test_diagram_cuspidal_fiber():
    assert hodge.diagram(II).as_dict() == {(1, 0): 1, (0, 1): 1}


def test_diagram_empty():
    assert hodge.diagram(LmhsSpec.empty(3)).is_zero()


def test_diagram_mass_is_total_dimension():
    spec = LmhsSpec(
        2,
        (
            NString((2, 1), 2, 1, 0, 3),
            NString((1, 1), 1, 4, 1, 2),
            NString((1, 1), 1, 4, 3, 2),
        ),
    )
    assert hodge.diagram(spec).mass == spec.dimension == 10


def test_string_centering_enforced():
    with pytest.raises(InvalidString):
        LmhsSpec(1, (NString((1, 1), 1, 1, 0, 1),))  # p+q = 2 != 1
    with pytest.raises(InvalidString):
        NString((1, 1), 1, 6, 2, 1)  # exponent not coprime to order
    with pytest.raises(InvalidString):
        NString((1, 1), 0, 1, 0, 1)


def test_twist():
    assert D.pure(0, 0).twist(1) == D.pure(1, 1)
    d = D.from_dict({(1, 0): 2, (0, 1): 2})
    assert d.twist(0) == d


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(0, 5), max_size=5
    ),
    st.integers(-3, 3),
)
def test_twist_round_trip(table, a):
    d = D.from_dict(table)
    assert d.twist(a).twist(-a) == d


def test_dual():
    assert D.pure(1, 1).dual() == D.pure(-1, -1)
    d = D.from_dict({(2, 0): 1, (1, 1): 3})
    assert d.dual().dual() == d
    # dual then twist by n + 1 with n = 1
    d2 = D.from_dict({(0, 0): 1, (1, 1): 1})
    assert d2.dual().twist(2) == D.from_dict({(2, 2): 1, (1, 1): 1})


def test_add_subtract():
    d = D.from_dict({(1, 1): 3})
    assert d + D.empty() == d
    assert d - d == D.empty()
    assert d - D.pure(1, 1) == D.from_dict({(1, 1): 2})
    with pytest.raises(DiagramUnderflow):
        D.pure(0, 0) - D.pure(1, 1)


def test_invariants_and_coinvariants():
    assert hodge.ker_T_minus_I(I1) == D.pure(0, 0)
    assert hodge.coker_T_minus_I(I1) == D.pure(1, 1)
    assert hodge.ker_T_minus_I(II).is_zero()
    assert hodge.coker_T_minus_I(II).is_zero()
    trivial = LmhsSpec(1, (NString((1, 0), 1, 1, 0, 1), NString((0, 1), 1, 1, 0, 1)))
    full = hodge.diagram(trivial)
    assert hodge.ker_T_minus_I(trivial) == full
    assert hodge.coker_T_minus_I(trivial) == full


def test_invariant_masses_count_unipotent_strings():
    spec = LmhsSpec(
        2,
        (
            NString((2, 2), 3, 1, 0, 2),
            NString((1, 1), 1, 3, 1, 1),
            NString((1, 1), 1, 3, 2, 1),
        ),
    )
    assert hodge.ker_T_minus_I(spec).mass == 2
    assert hodge.coker_T_minus_I(spec).mass == 2


def test_finite_part_invariants():
    assert hodge.ker_Tss_minus_I(I1) == D.from_dict({(1, 1): 1, (0, 0): 1})
    assert hodge.ker_Tss_minus_I(II).is_zero()
    mixed = LmhsSpec(
        1,
        (
            NString((1, 0), 1, 1, 0, 1),
            NString((0, 1), 1, 3, 1, 1),
            NString((1, 0), 1, 3, 2, 1),
        ),
    )
    assert hodge.ker_Tss_minus_I(mixed) == D.pure(1, 0)


def test_grF():
    assert D.from_dict({(1, 0): 1, (0, 1): 1}).grF(0) == 1
    assert D.empty().grF(5) == 0
    k3 = D.from_dict({(2, 0): 1, (1, 1): 20, (0, 2): 1})
    assert k3.grF(0) == 1 and k3.grF(1) == 20 and k3.grF(2) == 1


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_weight_symmetry_of_centered_specs(data):
    k = data.draw(st.integers(0, 4))
    strings = []
    for _ in range(data.draw(st.integers(1, 4))):
        length = data.draw(st.integers(1, 3))
        p = data.draw(st.integers(0, k + length - 1))
        q = k + length - 1 - p
        strings.append(NString((p, q), length, 1, 0, data.draw(st.integers(1, 2))))
    spec = LmhsSpec(k, tuple(strings))
    dims = hodge.diagram(spec).weight_dims()
    for w, m in dims.items():
        assert dims.get(2 * k - w, 0) == m


def test_galois_balance_linter():
    assert hodge.galois_balance_warnings(II) == []
    lopsided = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 2)))
    warnings = hodge.galois_balance_warnings(lopsided)
    assert warnings and "not Galois balanced" in warnings[0]
    asym = LmhsSpec(
        2, (NString((2, 0), 1, 5, 1, 1), NString((0, 2), 1, 5, 4, 1),
            NString((1, 1), 1, 5, 2, 1), NString((1, 1), 1, 5, 3, 1))
    )
    # balanced totals but fine conjugation symmetry as well
    assert hodge.galois_balance_warnings(asym) == []
    broken = LmhsSpec(
        2, (NString((2, 0), 1, 5, 1, 1), NString((1, 1), 1, 5, 4, 1),
            NString((1, 1), 1, 5, 2, 1), NString((1, 1), 1, 5, 3, 1))
    )
    assert any("conjugation" in w for w in hodge.galois_balance_warnings(broken))


def test_canonical_string_order():
    a = LmhsSpec(1, (NString((1, 0), 1, 6, 1, 1), NString((0, 1), 1, 6, 5, 1)))
    b = LmhsSpec(1, (NString((0, 1), 1, 6, 5, 1), NString((1, 0), 1, 6, 1, 1)))
    assert a == b
