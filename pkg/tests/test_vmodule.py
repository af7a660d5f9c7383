import dataclasses

import pytest

from encat.core import (
    FinCategory,
    FunctorData,
    WitnessError,
    pair_id,
    product_category,
    structural_equal,
    validate_category,
)
from encat.monoidal import internal_pi_bar, self_vstructure
from encat.vmodule import (
    VModuleData,
    check_closed_bimodule,
    check_closed_module,
    check_tensor_closed,
    check_vmodule,
    dual_module,
    dual_tensorclosed,
    dualize_to_comodule,
    enriched_action,
    induced_vstructure,
    module_eta_eps,
    module_phibar,
)
from encat.vstruct import check_vstructure
from encat.equiv import bimodule_completion
from encat.instances import build_trop, module_self_tensorclosed


def tower_module() -> VModuleData:
    """Three stacked objects with modular-label homs, acted on by the capped
    quantale through index shifts; the action forgets the acting morphism's
    label, which makes the associator mutable in a detectable way."""
    v = build_trop(3)
    objects = tuple(f"s{i}" for i in range(3))

    def mor(i: int, j: int, z: int) -> str:
        return f"g:{i}:{j}:{z}"

    morphisms = []
    for i in range(3):
        for j in range(3):
            if i >= j:
                morphisms.extend((mor(i, j, z), f"s{i}", f"s{j}") for z in range(3))
    identity = {f"s{i}": mor(i, i, 0) for i in range(3)}
    comp = {}
    for (f, fs, fd) in morphisms:
        for (g, gs, gd) in morphisms:
            if fd != gs:
                continue
            i, z1 = int(fs[1]), int(f.rsplit(":", 1)[1])
            k, z2 = int(gd[1]), int(g.rsplit(":", 1)[1])
            comp[(f, g)] = mor(i, k, (z1 + z2) % 3)
    s = FinCategory(objects, tuple(sorted(morphisms)), identity, comp)
    assert validate_category(s) == []

    def shift(k: str, i: str) -> str:
        return f"s{min(int(i[1]) + int(k), 2)}"

    on_objects = {pair_id(k, x): shift(k, x)
                  for k in v.base.objects for x in objects}
    on_morphisms = {}
    for u in v.base.mor_ids():
        for w in s.mor_ids():
            i, j = s.src(w), s.dst(w)
            z = int(w.rsplit(":", 1)[1])
            src = shift(v.base.src(u), i)
            dst = shift(v.base.dst(u), j)
            on_morphisms[pair_id(u, w)] = mor(int(src[1]), int(dst[1]), z)
    action = FunctorData(product_category(v.base, s), s, on_objects, on_morphisms)
    assoc = {(k, l, x): s.id_(shift(k, shift(l, x)))
             for k in v.base.objects for l in v.base.objects for x in objects}
    lunit = {x: s.id_(x) for x in objects}
    return VModuleData(baseV=v, baseS=s, action=action, assoc=assoc, lunit=lunit)


def test_module_checks_pass(poset_cm, self_trop3, self_cyc3):
    for cm in (poset_cm, self_trop3, self_cyc3):
        assert check_vmodule(cm.tensorClosed.module) == []
        assert check_tensor_closed(cm.tensorClosed) == []
        assert check_closed_module(cm) == []


def test_tower_module_is_valid_and_assoc_mutable():
    mod = tower_module()
    assert check_vmodule(mod) == []
    assoc = dict(mod.assoc)
    assoc[("1", "1", "s0")] = "g:2:2:1"
    bad = dataclasses.replace(mod, assoc=assoc)
    reports = check_vmodule(bad)
    failures = [r for r in reports if r.law == "module.assoc"]
    assert failures, "the pentagon-shaped axiom must fail with real composites"
    assert any(r.lhs is not None and r.rhs is not None and r.lhs != r.rhs
               for r in failures)
    assert ("1", "1", "1", "s0") in {r.site for r in failures}


def test_module_unit_mutation(self_cyc3):
    mod = self_cyc3.tensorClosed.module
    lunit = dict(mod.lunit)
    lunit["*"] = "1"
    bad = dataclasses.replace(mod, lunit=lunit)
    laws = {r.law for r in check_vmodule(bad)}
    assert "module.unit" in laws


def test_posetal_assoc_redirect(poset_cm):
    mod = poset_cm.tensorClosed.module
    assoc = dict(mod.assoc)
    assoc[("0", "1", "x")] = "id:top"
    bad = dataclasses.replace(mod, assoc=assoc)
    reports = check_vmodule(bad)
    laws = {r.law for r in reports}
    assert "module.assoc" in laws
    sites = {r.site for r in reports if r.law == "module.assoc"}
    assert any("x" in site for site in sites)


def test_adjunction_table_mutation(self_cyc3):
    cm = self_cyc3
    psi = {k: dict(t) for k, t in cm.psi.items()}
    psi[("*", "*", "*")]["1"] = "0"
    bad = dataclasses.replace(cm, psi=psi)
    reports = check_closed_module(bad)
    assert "moduleclosed.naturality" in {r.law for r in reports}


def test_eta_eps(poset_cm, self_cyc3):
    eta, eps = module_eta_eps(self_cyc3.tensorClosed, "*", "*", "*")
    assert (eta, eps) == ("0", "0")
    # the counit of the posetal module always exists and lands correctly
    tc = poset_cm.tensorClosed
    s = tc.module.baseS
    for x in s.objects:
        for y in s.objects:
            _eta, eps = module_eta_eps(tc, "0", x, y)
            assert s.src(eps) == tc.module.act_obj(tc.hom_obj(x, y), x)
            assert s.dst(eps) == y


def test_induced_vstructure(poset_cm, trop3, self_trop3, self_cyc3):
    assert check_vstructure(induced_vstructure(poset_cm.tensorClosed)) == []
    assert structural_equal(induced_vstructure(self_trop3.tensorClosed),
                            self_vstructure(trop3))
    ivs = induced_vstructure(self_cyc3.tensorClosed)
    assert ivs.comp[("*", "*", "*")] == "0"


def test_enriched_action_examples(poset_cm, self_cyc3):
    ea = enriched_action(poset_cm.tensorClosed)
    assert ea.components[("0", "1", "x")] == "id:1"
    ea3 = enriched_action(self_cyc3.tensorClosed)
    assert set(ea3.components.values()) == {"0"}


def test_module_phibar_examples(poset_cm, self_trop3, self_cyc3):
    assert module_phibar(self_trop3.tensorClosed, "1", "1", "2") == "id:0"
    assert module_phibar(self_cyc3.tensorClosed, "*", "*", "*") == "0"
    assert module_phibar(poset_cm.tensorClosed, "0", "x", "y") == "id:1"


def test_module_phibar_matches_internal_transpose_on_self(trop3):
    tc = module_self_tensorclosed(trop3)
    for k in trop3.base.objects:
        for x in trop3.base.objects:
            for y in trop3.base.objects:
                assert module_phibar(tc, k, x, y) == internal_pi_bar(trop3, k, x, y)


def test_module_phibar_inverse_absent_is_witness_error(poset_cm):
    tc = poset_cm.tensorClosed
    table = dict(tc.homFunctor.onObjects)
    table[pair_id("x", "y")] = "1"  # x and y are incomparable: not closed
    broken = dataclasses.replace(
        tc, homFunctor=dataclasses.replace(tc.homFunctor, onObjects=table))
    with pytest.raises(WitnessError):
        module_phibar(broken, "1", "x", "y", verify=False)


def test_dualize_roundtrip_and_dual_module(poset_cm):
    bm = bimodule_completion(poset_cm)
    dm = dual_module(bm)
    assert check_vmodule(dm) == []
    assert structural_equal(dualize_to_comodule(dualize_to_comodule(dm)), dm)
    # cotensor facts: the false coordinate cotensors to the top
    assert poset_cm.cot_obj("0", "x") == "top"
    assert dual_tensorclosed(bm).hom_obj("x", "y") == \
        poset_cm.tensorClosed.hom_obj("y", "x")


def test_bimodule_checks(poset_cm, self_trop3, self_cyc3):
    for cm in (poset_cm, self_trop3, self_cyc3):
        bm = bimodule_completion(cm)
        assert check_closed_bimodule(bm) == []


def test_bimodule_mutations(self_cyc3, poset_cm):
    bm = bimodule_completion(self_cyc3)

    assoc = dict(bm.comodAssoc)
    assoc[("*", "*", "*")] = "1"
    bad = dataclasses.replace(bm, comodAssoc=assoc)
    reports = check_closed_bimodule(bad)
    laws = {r.law for r in reports}
    assert "bimodule.cp2-8-2" in laws
    two = [r for r in reports if r.law == "bimodule.cp2-8-2"]
    assert any(r.lhs is not None and r.rhs is not None for r in two)

    lunit = dict(bm.comodLunit)
    lunit["*"] = "1"
    bad = dataclasses.replace(bm, comodLunit=lunit)
    assert "bimodule.cp2-8-3" in {r.law for r in check_closed_bimodule(bad)}

    psi = {k: dict(t) for k, t in bm.closedModule.psi.items()}
    psi[("*", "*", "*")]["0"] = "1"
    bad = dataclasses.replace(
        bm, closedModule=dataclasses.replace(bm.closedModule, psi=psi))
    assert "bimodule.cp2-8-1" in {r.law for r in check_closed_bimodule(bad)}

    pbm = bimodule_completion(poset_cm)
    assoc = dict(pbm.comodAssoc)
    assoc[("0", "1", "x")] = "id:bot"
    bad = dataclasses.replace(pbm, comodAssoc=assoc)
    assert "comodule.assoc" in {r.law for r in check_closed_bimodule(bad)}

    lunit = dict(pbm.comodLunit)
    lunit["x"] = "id:top"
    bad = dataclasses.replace(pbm, comodLunit=lunit)
    assert "comodule.unit" in {r.law for r in check_closed_bimodule(bad)}
