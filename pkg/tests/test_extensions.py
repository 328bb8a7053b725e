"""Abelian extensions: construction from cocycle pairs, sections,
shear isomorphisms, and the two classification routines."""

import pytest

from diffcoh.catalog import cyclic, inverse_map
from diffcoh.exactness import InternalCheckError
from diffcoh.extensions import (
    AbelianExtension,
    all_sections,
    are_isomorphic,
    canonical_section,
    classify_extensions,
    classify_semidirect_difference_ops,
    cocycle_from_section,
    extension_from_cocycle,
    rep_from_section,
    SectionMap,
)
from diffcoh.group_cohomology import (
    BudgetExceededError,
    CochainPair,
    GroupCochain,
    NotACocycleError,
    delta,
    zero_cochain,
)
from diffcoh.groups import DifferenceGroup, DifferenceRep, semidirect_product
from diffcoh.linalg import Matrix
from diffcoh.scalars import PrimeField, Rationals

F2 = PrimeField(2)
F3 = PrimeField(3)


def z3_rep(t=2):
    c3 = cyclic(3)
    dg = DifferenceGroup(c3, inverse_map(c3))
    theta = [Matrix.identity(F3, 1)] * 3
    return DifferenceRep(dg, theta, Matrix.from_rows(F3, [[t]]))


def z2_rep():
    c2 = cyclic(2)
    dg = DifferenceGroup(c2, [0, 1])
    theta = [Matrix.identity(F2, 1)] * 2
    return DifferenceRep(dg, theta, Matrix.zeros(F2, 1, 1))


def zero_pair(rep):
    group = rep.dg.group
    return CochainPair(
        zero_cochain(group, rep.field, rep.dim, 2),
        zero_cochain(group, rep.field, rep.dim, 1),
    )


def carry_pair(rep):
    """The mod-3 carry 2-cocycle with the beta making it operator
    compatible; the total group is cyclic of order nine."""
    group = rep.dg.group
    alpha = GroupCochain(
        group, F3, 1, 2, {(1, 2): (1,), (2, 1): (1,), (2, 2): (1,)}
    )
    beta = GroupCochain(group, F3, 1, 1, {(2,): (1,)})
    return CochainPair(alpha, beta)


def test_zero_pair_reproduces_the_semidirect_product():
    rep = z3_rep()
    ext = extension_from_cocycle(rep, zero_pair(rep))
    sd = semidirect_product(rep.dg, rep)
    assert ext.total.group.table == sd.group.table
    assert list(ext.total.d) == list(sd.d)


def test_carry_extension_is_cyclic_of_order_nine():
    rep = z3_rep()
    ext = extension_from_cocycle(rep, carry_pair(rep))
    total = ext.total.group
    assert total.order == 9
    assert sorted(total.element_order(g) for g in total.elements) == [
        1, 3, 3, 9, 9, 9, 9, 9, 9,
    ]
    # the split extension stays elementary abelian
    split = extension_from_cocycle(rep, zero_pair(rep))
    assert sorted(
        split.total.group.element_order(g) for g in split.total.group.elements
    ) == [1, 3, 3, 3, 3, 3, 3, 3, 3]


def test_index_split_round_trip():
    rep = z3_rep()
    ext = extension_from_cocycle(rep, zero_pair(rep))
    for idx in ext.total.group.elements:
        g, u = ext.split(idx)
        assert ext.index(g, u) == idx
        assert ext.project(idx) == g
    assert ext.inject((F3.from_int(2),)) == ext.index(0, (2,))


def test_rejects_a_non_associative_alpha():
    rep = z3_rep()
    group = rep.dg.group
    alpha = GroupCochain(group, F3, 1, 2, {(1, 1): (1,)})
    beta = zero_cochain(group, F3, 1, 1)
    with pytest.raises(NotACocycleError) as exc:
        extension_from_cocycle(rep, CochainPair(alpha, beta))
    assert len(exc.value.witness) == 3


def test_rejects_an_operator_incompatible_beta():
    rep = z3_rep()
    pair = CochainPair(carry_pair(rep).alpha, zero_cochain(rep.dg.group, F3, 1, 1))
    with pytest.raises(NotACocycleError) as exc:
        extension_from_cocycle(rep, pair)
    assert len(exc.value.witness) == 2


def test_degree_and_field_guards():
    rep = z3_rep()
    group = rep.dg.group
    deg3 = CochainPair(
        zero_cochain(group, F3, 1, 3), zero_cochain(group, F3, 1, 2)
    )
    with pytest.raises(ValueError):
        AbelianExtension(rep, deg3)
    ql = Rationals()
    dg = DifferenceGroup(cyclic(3), inverse_map(cyclic(3)))
    qrep = DifferenceRep(
        dg, [Matrix.identity(ql, 1)] * 3, Matrix.from_rows(ql, [[-1]])
    )
    with pytest.raises(ValueError):
        AbelianExtension(qrep, zero_pair(qrep))
    with pytest.raises(ValueError):
        classify_extensions(qrep)
    with pytest.raises(ValueError):
        classify_semidirect_difference_ops(qrep)


def test_canonical_section_recovers_the_defining_pair():
    rep = z3_rep()
    pair = carry_pair(rep)
    ext = extension_from_cocycle(rep, pair)
    back = cocycle_from_section(ext, canonical_section(ext))
    assert back.alpha == pair.alpha
    assert back.beta == pair.beta


def test_every_section_shifts_the_pair_by_a_coboundary():
    rep = z3_rep()
    pair = carry_pair(rep)
    ext = extension_from_cocycle(rep, pair)
    sections = all_sections(ext)
    assert len(sections) == 9
    group = rep.dg.group
    for section in sections:
        offsets = {
            (g,): ext.split(section(g))[1]
            for g in group.elements
            if g != group.identity
        }
        eta = GroupCochain(group, F3, 1, 1, offsets)
        shift = delta(rep, CochainPair(eta, None))
        got = cocycle_from_section(ext, section)
        assert got.alpha == pair.alpha + shift.alpha
        assert got.beta == pair.beta + shift.beta


def test_rep_from_section_reproduces_theta():
    rep = z3_rep()
    ext = extension_from_cocycle(rep, carry_pair(rep))
    for section in all_sections(ext):
        assert rep_from_section(ext, section) == rep.theta


def test_section_validation():
    rep = z3_rep()
    ext = extension_from_cocycle(rep, zero_pair(rep))
    with pytest.raises(ValueError):
        SectionMap(ext, [0, 3])
    with pytest.raises(ValueError):
        SectionMap(ext, [0, 0, 6])  # value at a projects to e
    with pytest.raises(ValueError):
        SectionMap(ext, [1, 3, 6])  # identity must lift to the identity
    other = extension_from_cocycle(rep, carry_pair(rep))
    with pytest.raises(ValueError):
        cocycle_from_section(ext, canonical_section(other))


def test_shear_isomorphism_found_for_cohomologous_pairs():
    rep = z3_rep()
    pair = carry_pair(rep)
    group = rep.dg.group
    eta = GroupCochain(group, F3, 1, 1, {(1,): (1,), (2,): (2,)})
    shift = delta(rep, CochainPair(eta, None))
    shifted = CochainPair(pair.alpha + shift.alpha, pair.beta + shift.beta)
    e1 = extension_from_cocycle(rep, pair)
    e2 = extension_from_cocycle(rep, shifted)
    shear = are_isomorphic(e1, e2)
    assert shear is not None
    # and the split extension is genuinely different
    e0 = extension_from_cocycle(rep, zero_pair(rep))
    assert are_isomorphic(e0, e1) is None


def test_isomorphism_search_guards():
    rep = z3_rep()
    e1 = extension_from_cocycle(rep, zero_pair(rep))
    e2 = extension_from_cocycle(rep, carry_pair(rep))
    with pytest.raises(BudgetExceededError):
        are_isomorphic(e1, e2, budget=3)
    other_base = z3_rep()
    e3 = extension_from_cocycle(other_base, zero_pair(other_base))
    with pytest.raises(ValueError):
        are_isomorphic(e1, e3)
    rep_plus = DifferenceRep(rep.dg, list(rep.theta), Matrix.from_rows(F3, [[1]]))
    e4 = extension_from_cocycle(rep_plus, zero_pair(rep_plus))
    with pytest.raises(ValueError):
        are_isomorphic(e1, e4)


def test_classification_of_z3_extensions():
    cls = classify_extensions(z3_rep())
    assert cls.cocycle_count == 27
    assert cls.coboundary_count == 3
    assert cls.class_count == 9
    assert cls.class_count_by_cosets == 9
    assert cls.h2_pair_dim == 2
    assert cls.expected_from_cohomology == 9
    assert cls.consistent
    assert len(cls.classes) == 9
    assert sum(c.size for c in cls.classes) == 27
    assert all(c.representative.degree == 2 for c in cls.classes)


def test_classification_of_z2_extensions():
    cls = classify_extensions(z2_rep())
    assert cls.cocycle_count == 2
    assert cls.coboundary_count == 2
    assert cls.class_count == 1
    assert cls.h2_pair_dim == 0
    assert cls.consistent


def test_classification_budget():
    with pytest.raises(BudgetExceededError):
        classify_extensions(z3_rep(), budget=10)


def test_semidirect_operator_classification_both_signs():
    minus = classify_semidirect_difference_ops(z3_rep(2))
    assert minus.z_dim == 1
    assert minus.connecting_rank == 0
    assert minus.count_by_rank == 3
    assert minus.count_by_census == 3
    assert minus.direct_valid_count == 3
    assert minus.direct_class_count == 3
    assert minus.total_order == 9
    assert minus.consistent

    plus = classify_semidirect_difference_ops(z3_rep(1))
    assert plus.z_dim == 1
    assert plus.connecting_rank == 1
    assert plus.count_by_rank == 1
    assert plus.count_by_census == 1
    assert plus.direct_valid_count == 3
    assert plus.direct_class_count == 1
    assert plus.consistent


def test_semidirect_classification_respects_the_direct_limit():
    out = classify_semidirect_difference_ops(z3_rep(), direct_limit=8)
    assert out.direct_valid_count is None
    assert out.direct_class_count is None
    assert out.notes and "skipped" in out.notes[0]
    assert out.consistent
    with pytest.raises(BudgetExceededError):
        classify_semidirect_difference_ops(z3_rep(), budget=2)
