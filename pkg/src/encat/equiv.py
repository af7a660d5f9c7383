"""The constructive correspondences between cylinder structures, tensor
assignments on the associated enriched category, and tensor-closed modules,
plus the completion of a closed module to a closed bimodule.

Every construction is deterministic, and the inverse direction reproduces the
input as an exact table equality; the round-trip helpers check precisely
that.  Yoneda-style extractions (the module associator, the module unitor,
the comodule structure) evaluate a natural family at the identity and then
verify by brute force that the extracted morphism induces the whole family.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    EngineBugError,
    Mor,
    Obj,
    WitnessError,
    structural_equal,
)
from .monoidal import transpose_pi_inv, varpi_inv
from .vcat import TensoredData
from .vmodule import (
    ClosedBimoduleData,
    ClosedVModuleData,
    TensorClosedModuleData,
    VModuleData,
    _unit_transport,
    _assoc_transport,
    induced_vstructure,
    module_phibar,
)
from .vstruct import (
    CylinderAssignment,
    PathAssignment,
    VStructureData,
    associated_vcategory,
    induced_tensor_bifunctor,
)


@dataclass(frozen=True)
class CorrespondenceBundle:
    """Both sides of a correspondence run, with a note saying which direction
    produced which side."""

    vstructure: VStructureData
    cylinder: CylinderAssignment
    module: TensorClosedModuleData | ClosedVModuleData | ClosedBimoduleData
    path: PathAssignment | None = None
    provenance: str = ""


def cylinder_to_tensored(vs: VStructureData, cyl: CylinderAssignment) -> TensoredData:
    """Read a cylinder assignment as a tensor assignment on the associated
    enriched category; the adjunct family and the objects carry over."""
    return TensoredData(
        vcat=associated_vcategory(vs),
        tensorObj=dict(cyl.tensor_obj),
        phibar=dict(cyl.phibar))


def tensored_to_cylinder(vcat_data, td: TensoredData) -> CylinderAssignment:
    """Recover the coevaluation elements from the adjunct family and the
    enriched units."""
    m = vcat_data.baseV
    base = m.base
    alpha = {}
    for (k, x), kx in td.tensorObj.items():
        t = base.compose(vcat_data.j(kx), td.phibar[(k, x, kx)])
        alpha[(k, x)] = varpi_inv(m, t, k, vcat_data.hom(x, kx))
    return CylinderAssignment(tensor_obj=dict(td.tensorObj), alpha=alpha,
                              phibar=dict(td.phibar))


def module_to_cylinder(tc: TensorClosedModuleData
                       ) -> tuple[VStructureData, CylinderAssignment]:
    """From a tensor-closed module to its hom structure with cylinder: the
    action provides the objects, the adjunction units the coevaluations, and
    the internal adjuncts the isomorphism family."""
    mod = tc.module
    m = mod.baseV
    m.require_closed()
    s = mod.baseS
    vs = induced_vstructure(tc)
    tensor_obj = {}
    alpha = {}
    phibar = {}
    for k in m.base.objects:
        for x in s.objects:
            kx = mod.act_obj(k, x)
            tensor_obj[(k, x)] = kx
            alpha[(k, x)] = tc.phi_of(k, x, kx, s.id_(kx))
            for y in s.objects:
                phibar[(k, x, y)] = module_phibar(tc, k, x, y)
    return vs, CylinderAssignment(tensor_obj=tensor_obj, alpha=alpha, phibar=phibar)


def _module_phi_tables(vs: VStructureData, cyl: CylinderAssignment) -> dict:
    """The adjunction bijections of the module induced by a cylinder, computed
    along the element-composition route and cross-checked against the
    adjunct-transport route."""
    m = vs.baseV
    base = m.base
    s = vs.baseS
    phi: dict = {}
    for (k, x), kx in cyl.tensor_obj.items():
        for y in s.objects:
            table = {}
            for f in s.hom(kx, y):
                composed = base.compose(
                    m.inv(m.l(k)),
                    m.tmor(vs.phi_of(kx, y, f), cyl.alpha[(k, x)]),
                    vs.b(x, kx, y))
                transported = varpi_inv(
                    m,
                    base.compose(vs.phi_of(kx, y, f), cyl.phibar[(k, x, y)]),
                    k, vs.hom_obj(x, y))
                if composed != transported:
                    raise EngineBugError(
                        f"derived law failed: the two adjunction routes differ "
                        f"at ({k!r}, {x!r}, {y!r}, {f!r})")
                table[f] = composed
            phi[(k, x, y)] = table
    return phi


def _yoneda_unique_post(s, src: Obj, dst: Obj, family, what: str) -> Mor:
    """The unique h : src -> dst with family(Y, g) = h . g for all probes
    g : Y -> src."""
    candidates = []
    for h in s.hom(src, dst):
        if all(s.then(g, h) == family(y, g)
               for y in s.objects for g in s.hom(y, src)):
            candidates.append(h)
    if len(candidates) != 1:
        raise WitnessError(
            f"{what}: {len(candidates)} witnesses representing the family",
            count=len(candidates))
    return candidates[0]


def _yoneda_unique_pre(s, src: Obj, dst: Obj, family, what: str) -> Mor:
    """The unique h : src -> dst with family(Y, g) = g . h for all probes
    g : dst -> Y."""
    candidates = []
    for h in s.hom(src, dst):
        if all(s.then(h, g) == family(y, g)
               for y in s.objects for g in s.hom(dst, y)):
            candidates.append(h)
    if len(candidates) != 1:
        raise WitnessError(
            f"{what}: {len(candidates)} witnesses representing the family",
            count=len(candidates))
    return candidates[0]


def cylinder_to_module(vs: VStructureData,
                       cyl: CylinderAssignment) -> TensorClosedModuleData:
    """From a cylinder to a tensor-closed module: the induced action, the
    element-route adjunction tables, and structure isomorphisms extracted by
    representing the transported hom families."""
    m = vs.baseV
    m.require_closed()
    base = m.base
    s = vs.baseS
    action = induced_tensor_bifunctor(vs, cyl)
    phi = _module_phi_tables(vs, cyl)

    def phi_inv(k: Obj, x: Obj, y: Obj, t: Mor) -> Mor:
        found = sorted(f for f, w in phi[(k, x, y)].items() if w == t)
        if len(found) != 1:
            raise WitnessError(
                f"induced adjunction at ({k!r}, {x!r}, {y!r}) has {len(found)} "
                f"preimages of {t!r}", count=len(found))
        return found[0]

    assoc = {}
    for k in base.objects:
        for l in base.objects:
            for x in s.objects:
                kl = m.tobj(k, l)
                lx = cyl.tensor_obj[(l, x)]
                klx = cyl.tensor_obj[(kl, x)]
                k_lx = cyl.tensor_obj[(k, lx)]

                def family(y: Obj, g: Mor, k=k, l=l, x=x, kl=kl, lx=lx) -> Mor:
                    t = base.compose(phi[(k, lx, y)][g], cyl.phibar[(l, x, y)])
                    return phi_inv(kl, x, y,
                                   transpose_pi_inv(m, t, l, vs.hom_obj(x, y)))

                assoc[(k, l, x)] = _yoneda_unique_pre(
                    s, klx, k_lx, family,
                    f"module associator at ({k!r}, {l!r}, {x!r})")

    lunit = {}
    for x in s.objects:
        ix = cyl.tensor_obj[(m.unit, x)]

        def lfamily(y: Obj, g: Mor, x=x) -> Mor:
            return phi_inv(m.unit, x, y, vs.phi_of(x, y, g))

        lunit[x] = _yoneda_unique_pre(
            s, ix, x, lfamily, f"module unitor at {x!r}")

    module = VModuleData(baseV=m, baseS=s, action=action, assoc=assoc, lunit=lunit)
    return TensorClosedModuleData(module=module, homFunctor=vs.homFunctor, phi=phi)


def roundtrip_module_cylinder(tc: TensorClosedModuleData) -> bool:
    """module -> (structure, cylinder) -> module reproduces the tables."""
    vs, cyl = module_to_cylinder(tc)
    return structural_equal(cylinder_to_module(vs, cyl), tc)


def roundtrip_cylinder_module(vs: VStructureData, cyl: CylinderAssignment) -> bool:
    """(structure, cylinder) -> module -> (structure, cylinder) reproduces
    the tables."""
    back = module_to_cylinder(cylinder_to_module(vs, cyl))
    return structural_equal(back, (vs, cyl))


def bimodule_completion(cm: ClosedVModuleData, sym=None) -> ClosedBimoduleData:
    """Extend a closed module to the unique closed bimodule: the comodule
    structure morphisms are extracted by representing the adjoint-transport
    families, with brute-force uniqueness at every site."""
    tc = cm.tensorClosed
    m = tc.module.baseV
    sym = sym or m.require_symmetry()
    m.require_closed()
    base = m.base
    s = tc.module.baseS

    placeholder = ClosedBimoduleData(closedModule=cm, comodAssoc={}, comodLunit={})
    comod_assoc = {}
    for k in base.objects:
        for l in base.objects:
            for x in s.objects:
                src = cm.cot_obj(k, cm.cot_obj(l, x))
                dst = cm.cot_obj(m.tobj(k, l), x)
                comod_assoc[(k, l, x)] = _yoneda_unique_post(
                    s, src, dst,
                    lambda y, g, k=k, l=l, x=x:
                        _assoc_transport(placeholder, sym, k, l, x, y, g),
                    f"comodule associator at ({k!r}, {l!r}, {x!r})")
    comod_lunit = {}
    for x in s.objects:
        comod_lunit[x] = _yoneda_unique_post(
            s, x, cm.cot_obj(m.unit, x),
            lambda y, g, x=x: _unit_transport(placeholder, x, y, g),
            f"comodule unitor at {x!r}")
    return ClosedBimoduleData(closedModule=cm, comodAssoc=comod_assoc,
                              comodLunit=comod_lunit)
