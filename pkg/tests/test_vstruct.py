import dataclasses

import pytest

from encat.core import (
    WitnessError,
    pair_id,
    structural_equal,
)
from encat.monoidal import self_cylinder, self_path, self_vstructure
from encat.vcat import underlying_category
from encat.vmodule import induced_vstructure
from encat.vstruct import (
    CylinderAssignment,
    associated_vcategory,
    check_cylinder,
    check_path,
    check_vstructure,
    cylinder_unique_iso,
    dualize_path,
    induced_tensor_bifunctor,
    opposite_vstructure,
)


def mutate_comp(vs, key, value):
    comp = dict(vs.comp)
    comp[key] = value
    return dataclasses.replace(vs, comp=comp)


def mutate_hom_mor(vs, key, value):
    table = dict(vs.homFunctor.onMorphisms)
    table[pair_id(*key)] = value
    return dataclasses.replace(
        vs, homFunctor=dataclasses.replace(vs.homFunctor, onMorphisms=table))


def two_object_vstructure(cyc3):
    """The hom structure carried by the two-object point-enriched category."""
    from tests.test_vcat import two_object_cyc_vcat

    _cat, vs = underlying_category(two_object_cyc_vcat(cyc3))
    return vs


def test_self_vstructures_pass(bool_m, trop3, cyc3, poset_cm):
    for m in (bool_m, trop3, cyc3):
        assert check_vstructure(self_vstructure(m)) == []
    assert check_vstructure(induced_vstructure(poset_cm.tensorClosed)) == []


def test_internal_composition_mutation_posetal_redirect(trop3):
    vs = self_vstructure(trop3)
    bad = mutate_comp(vs, ("0", "1", "2"), "id:0")
    laws = {r.law for r in check_vstructure(bad)}
    assert "vstructure.assoc" in laws


def test_internal_composition_mutation_parallel(cyc3):
    vs = two_object_vstructure(cyc3)
    assert check_vstructure(vs) == []
    bad = mutate_comp(vs, ("P", "Q", "P"), "1")
    reports = check_vstructure(bad)
    assoc = [r for r in reports if r.law == "vstructure.assoc"]
    assert assoc and any(r.lhs != r.rhs and r.lhs is not None for r in assoc)


def test_action_condition_mutations(cyc3):
    vs = self_vstructure(cyc3)
    bad_cov = mutate_hom_mor(vs, ("0", "1"), "2")
    assert "vstructure.left-action" in {r.law for r in check_vstructure(bad_cov)}
    bad_con = mutate_hom_mor(vs, ("1", "0"), "2")
    assert "vstructure.right-action" in {r.law for r in check_vstructure(bad_con)}


def test_associated_vcategory_units(cyc3):
    vs = self_vstructure(cyc3)
    vc = associated_vcategory(vs)
    assert vc.unit["*"] == "0"


def test_cylinder_checks_and_mutation(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vs = self_vstructure(m)
        assert check_cylinder(vs, self_cylinder(m)) == []
    vs = self_vstructure(cyc3)
    cyl = self_cylinder(cyc3)
    alpha = dict(cyl.alpha)
    alpha[("*", "*")] = "1"
    bad = dataclasses.replace(cyl, alpha=alpha)
    reports = check_cylinder(vs, bad)
    assert [r.law for r in reports] == ["cylinder.cp1-1"]
    assert reports[0].site == ("*", "*", "*")


def test_path_checks_and_mutation(bool_m, cyc3):
    for m in (bool_m, cyc3):
        vs = self_vstructure(m)
        assert check_path(vs, None, self_path(m)) == []
    vs = self_vstructure(cyc3)
    pth = self_path(cyc3)
    beta = dict(pth.beta)
    beta[("*", "*")] = "1"
    bad = dataclasses.replace(pth, beta=beta)
    reports = check_path(vs, None, bad)
    assert "path.cp2-1-25" in {r.law for r in reports}


def test_path_agrees_with_reversed_cylinder(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vs = self_vstructure(m)
        pth = self_path(m)
        dual = dualize_path(pth)
        assert check_cylinder(opposite_vstructure(vs), dual) == []


def test_opposite_vstructure_involution(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vs = self_vstructure(m)
        ovs = opposite_vstructure(vs)
        assert check_vstructure(ovs) == []
        assert structural_equal(opposite_vstructure(ovs), vs)
    vs3 = self_vstructure(cyc3)
    assert structural_equal(opposite_vstructure(vs3), vs3)  # abelian


def test_cylinder_unique_iso_identity(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vs = self_vstructure(m)
        cyl = self_cylinder(m)
        for k in m.base.objects:
            for x in m.base.objects:
                f = cylinder_unique_iso(vs, cyl, cyl, k, x)
                assert f == m.base.id_(cyl.tensor_obj[(k, x)])


def test_cylinder_unique_iso_conjugated_copy(cyc3):
    # transport the chosen cylinder along the automorphism with label 1
    vs = self_vstructure(cyc3)
    cyl = self_cylinder(cyc3)
    h = "1"
    alpha = {("*", "*"): cyc3.base.compose(
        cyl.alpha[("*", "*")], vs.hom_mor(cyc3.base.id_("*"), h))}
    phibar = {("*", "*", "*"): cyc3.base.compose(
        vs.hom_mor(h, cyc3.base.id_("*")), cyl.phibar[("*", "*", "*")])}
    other = CylinderAssignment(tensor_obj=dict(cyl.tensor_obj),
                               alpha=alpha, phibar=phibar)
    assert check_cylinder(vs, other) == []
    assert cylinder_unique_iso(vs, cyl, other, "*", "*") == h
    # exhaustive count is exactly one
    candidates = [g for g in cyc3.base.hom("*", "*")
                  if cyc3.base.compose(cyl.alpha[("*", "*")],
                                       vs.hom_mor("0", g)) == alpha[("*", "*")]]
    assert candidates == [h]


def test_induced_tensor_bifunctor_values(bool_m, trop3):
    vs = self_vstructure(bool_m)
    fn = induced_tensor_bifunctor(vs, self_cylinder(bool_m))
    assert fn.mor(pair_id("id:1", "id:1")) == "id:1"
    assert fn.mor(pair_id("m01", "id:1")) == "m01"

    vs3 = self_vstructure(trop3)
    fn3 = induced_tensor_bifunctor(vs3, self_cylinder(trop3))
    assert fn3.mor(pair_id("m:2:1", "id:1")) == "id:2"


def test_induced_tensor_witness_uniqueness(trop3):
    vs = self_vstructure(trop3)
    cyl = self_cylinder(trop3)
    s = vs.baseS
    base = trop3.base
    for u in base.mor_ids():
        for x in s.objects:
            k, l = base.src(u), base.dst(u)
            element = base.compose(u, cyl.alpha[(l, x)])
            witnesses = [h for h in s.hom(cyl.tensor_obj[(k, x)], cyl.tensor_obj[(l, x)])
                         if base.compose(cyl.alpha[(k, x)],
                                         vs.hom_mor(s.id_(x), h)) == element]
            assert len(witnesses) == 1


def test_invalid_cylinder_is_a_witness_error(cyc3):
    vs = self_vstructure(cyc3)
    cyl = self_cylinder(cyc3)
    alpha = dict(cyl.alpha)
    alpha[("*", "*")] = "1"
    broken = dataclasses.replace(cyl, alpha=alpha)
    with pytest.raises(WitnessError):
        # the adjunct transport and the defining square now disagree
        induced_tensor_bifunctor(vs, broken)
