import dataclasses

from encat.core import structural_equal, validate_category
from encat.monoidal import self_vstructure, varpi
from encat.vcat import (
    VCategoryData,
    VNatData,
    check_vcategory,
    check_vfunctor,
    check_vnat,
    check_vnat_into_V,
    element_id,
    hom_vfunctor,
    identity_vfunctor,
    opposite_vcategory,
    self_enriched,
    underlying_category,
)
from encat.vstruct import associated_vcategory, check_vstructure


def two_object_cyc_vcat(cyc3) -> VCategoryData:
    """Two objects, every hom object the single point, zero composition."""
    objs = ("P", "Q")
    return VCategoryData(
        baseV=cyc3,
        objects=objs,
        homObj={(a, b): "*" for a in objs for b in objs},
        comp={(a, b, c): "0" for a in objs for b in objs for c in objs},
        unit={a: "0" for a in objs})


def test_self_enriched_categories_are_valid(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        assert check_vcategory(self_enriched(m)) == []
        assert check_vcategory(associated_vcategory(self_vstructure(m))) == []


def test_unit_mutation(cyc3):
    vc = self_enriched(cyc3)
    bad = dataclasses.replace(vc, unit={"*": "1"})
    laws = {r.law for r in check_vcategory(bad)}
    assert "vcat.unit" in laws


def test_assoc_mutation_needs_two_objects(cyc3):
    vc = two_object_cyc_vcat(cyc3)
    assert check_vcategory(vc) == []
    comp = dict(vc.comp)
    comp[("P", "Q", "P")] = "1"
    bad = dataclasses.replace(vc, comp=comp)
    reports = check_vcategory(bad)
    assoc = [r for r in reports if r.law == "vcat.assoc"]
    assert assoc and all(r.lhs != r.rhs for r in assoc)
    assert "vcat.unit" not in {r.law for r in reports}


def test_underlying_of_posetal_self_recovers_order(bool_m):
    vc = self_enriched(bool_m)
    cat, vs = underlying_category(vc)
    assert validate_category(cat) == []
    assert check_vstructure(vs) == []
    # hom(a, b) is inhabited exactly when the implication object is the unit
    for a in bool_m.base.objects:
        for b in bool_m.base.objects:
            inhabited = len(cat.hom(a, b)) > 0
            assert inhabited == (bool_m.hom_obj(a, b) == "1")


def test_underlying_of_modular_self_is_the_group_again(cyc3):
    vc = self_enriched(cyc3)
    cat, _vs = underlying_category(vc)
    assert len(cat.hom("*", "*")) == 3
    # oracle: composing witnesses adds their labels modulo 3
    for i in range(3):
        for j in range(3):
            f = element_id("*", "*", str(i))
            g = element_id("*", "*", str(j))
            assert cat.then(f, g) == element_id("*", "*", str((i + j) % 3))


def test_one_object_unit_bookkeeping(bool_m):
    vc = VCategoryData(
        baseV=bool_m, objects=("p",),
        homObj={("p", "p"): "1"},
        comp={("p", "p", "p"): "id:1"},
        unit={"p": "id:1"})
    assert check_vcategory(vc) == []
    cat, _ = underlying_category(vc)
    assert len(cat.hom("p", "p")) == len(bool_m.base.hom("1", "1"))


def test_roundtrip_underlying_then_associated(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vc = associated_vcategory(self_vstructure(m))
        _cat, vs2 = underlying_category(vc)
        assert structural_equal(associated_vcategory(vs2), vc)


def test_identity_vfunctor_and_hom_vfunctor(bool_m, trop3, cyc3):
    for m in (bool_m, trop3, cyc3):
        vc = associated_vcategory(self_vstructure(m))
        assert check_vfunctor(identity_vfunctor(vc)) == []
        for a in vc.objects:
            assert check_vfunctor(hom_vfunctor(vc, a)) == []


def test_hom_vfunctor_values(bool_m, trop3, cyc3):
    assert hom_vfunctor(self_enriched(cyc3), "*").onHom[("*", "*")] == "0"
    # hom(0, -) sends b to the implication 0 => b, always the unit
    fn = hom_vfunctor(self_enriched(bool_m), "0")
    assert fn.onObjects == {"0": "1", "1": "1"}
    fn3 = hom_vfunctor(self_enriched(trop3), "1")
    assert fn3.onObjects == {b: str(max(int(b) - 1, 0)) for b in trop3.base.objects}


def test_vnat_unit_family_is_natural(bool_m, cyc3):
    for m in (bool_m, cyc3):
        vc = associated_vcategory(self_vstructure(m))
        ident = identity_vfunctor(vc)
        nt = VNatData(source=ident, target=ident,
                      components=dict(vc.unit))
        assert check_vnat(nt) == []


def test_vnat_mutation_on_two_object_instance(cyc3):
    vc = two_object_cyc_vcat(cyc3)
    ident = identity_vfunctor(vc)
    nt = VNatData(source=ident, target=ident,
                  components={"P": "0", "Q": "1"})
    reports = check_vnat(nt)
    assert {r.law for r in reports} == {"vnat.square"}


def test_vnat_into_base_oracle_equivalence(cyc3):
    vc = two_object_cyc_vcat(cyc3)
    s_fn = hom_vfunctor(vc, "P")
    good = VNatData(source=s_fn, target=s_fn,
                    components={a: varpi(cyc3, "0") for a in vc.objects})
    assert check_vnat_into_V(good) == []
    bad = VNatData(source=s_fn, target=s_fn,
                   components={"P": "1", "Q": "0"})
    reports = check_vnat_into_V(bad)  # both routes must flag, no engine bug
    laws = {r.law for r in reports}
    assert "vnat.square" in laws and "vnat.hom-square" in laws


def test_opposite_vcategory(bool_m, cyc3):
    vc3 = associated_vcategory(self_vstructure(cyc3))
    assert structural_equal(opposite_vcategory(vc3), vc3)  # one object, abelian

    two = VCategoryData(
        baseV=bool_m, objects=("P", "Q"),
        homObj={("P", "P"): "1", ("P", "Q"): "1", ("Q", "P"): "0", ("Q", "Q"): "1"},
        comp={(a, b, c): _bool_arrow(bool_m, a, b, c)
              for a in ("P", "Q") for b in ("P", "Q") for c in ("P", "Q")},
        unit={"P": "id:1", "Q": "id:1"})
    assert check_vcategory(two) == []
    op = opposite_vcategory(two)
    assert check_vcategory(op) == []
    assert op.homObj[("Q", "P")] == "1" and op.homObj[("P", "Q")] == "0"
    assert structural_equal(opposite_vcategory(op), two)


def _bool_arrow(bool_m, a, b, c):
    hom = {("P", "P"): "1", ("P", "Q"): "1", ("Q", "P"): "0", ("Q", "Q"): "1"}
    src = bool_m.tobj(hom[(b, c)], hom[(a, b)])
    return bool_m.base.hom(src, hom[(a, c)])[0]
