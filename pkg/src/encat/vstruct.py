"""Categories carrying hom objects in a monoidal base, together with cylinder
and path assignments and the bifunctor they induce.

A cylinder assignment fixes one cylinder per (K, X) even though the data is
only determined up to unique isomorphism; every downstream construction uses
the fixed choice so that round trips are exact table equalities.  The
uniqueness operation documents the remaining freedom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    CheckReport,
    EngineBugError,
    FinCategory,
    FunctorData,
    MissingTableError,
    Mor,
    Obj,
    morphism_inverse,
    opposite_category,
    pair_id,
    product_category,
    sort_reports,
    validate_functor,
    WitnessError,
)
from .monoidal import (
    MonoidalData,
    SymmetryData,
    _guarded,
    _law,
    hom_on_morphisms,
    varpi,
)


@dataclass(frozen=True)
class VStructureData:
    """An ordinary category with hom objects, internal composition and the
    element correspondence between its hom-sets and global elements."""

    baseS: FinCategory
    baseV: MonoidalData
    homFunctor: FunctorData
    comp: Mapping[tuple[Obj, Obj, Obj], Mor]
    phi: Mapping[tuple[Obj, Obj], Mapping[Mor, Mor]]

    def hom_obj(self, x: Obj, y: Obj) -> Obj:
        try:
            return self.homFunctor.onObjects[pair_id(x, y)]
        except KeyError:
            raise MissingTableError(f"hom object table missing ({x!r}, {y!r})") from None

    def hom_mor(self, f: Mor, g: Mor) -> Mor:
        """The hom functor on a pair (f used contravariantly, g covariantly)."""
        try:
            return self.homFunctor.onMorphisms[pair_id(f, g)]
        except KeyError:
            raise MissingTableError(f"hom functor table missing ({f!r}, {g!r})") from None

    def b(self, x: Obj, y: Obj, z: Obj) -> Mor:
        try:
            return self.comp[(x, y, z)]
        except KeyError:
            raise MissingTableError(f"internal composition missing ({x!r}, {y!r}, {z!r})") from None

    def phi_of(self, x: Obj, y: Obj, f: Mor) -> Mor:
        try:
            return self.phi[(x, y)][f]
        except KeyError:
            raise MissingTableError(f"element table missing ({x!r}, {y!r}, {f!r})") from None

    def phi_inv(self, x: Obj, y: Obj, t: Mor) -> Mor:
        table = self.phi.get((x, y), {})
        found = sorted(f for f, w in table.items() if w == t)
        if len(found) != 1:
            raise WitnessError(
                f"element correspondence at ({x!r}, {y!r}) has {len(found)} "
                f"preimages of {t!r}", count=len(found))
        return found[0]


@dataclass(frozen=True)
class CylinderAssignment:
    """Per (K, X): the object K (x) X, the coevaluation-like element alpha and
    the hom-adjunct isomorphism family phibar."""

    tensor_obj: Mapping[tuple[Obj, Obj], Obj]
    alpha: Mapping[tuple[Obj, Obj], Mor]
    phibar: Mapping[tuple[Obj, Obj, Obj], Mor]


@dataclass(frozen=True)
class PathAssignment:
    """The dual assignment: cotensor objects, beta and psibar."""

    path_obj: Mapping[tuple[Obj, Obj], Obj]
    beta: Mapping[tuple[Obj, Obj], Mor]
    psibar: Mapping[tuple[Obj, Obj, Obj], Mor]


def check_vstructure(vs: VStructureData) -> list[CheckReport]:
    """Functoriality of the hom tables, bijectivity and naturality of the
    element correspondence, internal associativity, and the two laws tying
    the hom functor's morphism action to the internal composition."""
    m = vs.baseV
    base = m.base
    s = vs.baseS
    reports: list[CheckReport] = []

    reports.extend(validate_functor(vs.homFunctor, tag="vstructure.functor"))

    for x in s.objects:
        for y in s.objects:
            for z in s.objects:
                bv = vs.b(x, y, z)
                if not (base.has_mor(bv)
                        and base.src(bv) == m.tobj(vs.hom_obj(y, z), vs.hom_obj(x, y))
                        and base.dst(bv) == vs.hom_obj(x, z)):
                    reports.append(CheckReport("vstructure.shape", (x, y, z), witness_count=0))

    for x in s.objects:
        for y in s.objects:
            table = vs.phi.get((x, y))
            if table is None:
                raise MissingTableError(f"element table missing ({x!r}, {y!r})")
            dom = s.hom(x, y)
            cod = base.hom(m.unit, vs.hom_obj(x, y))
            if sorted(table) != sorted(dom):
                reports.append(CheckReport("vstructure.phi-bijection", (x, y),
                                           witness_count=len(table),
                                           note="domain mismatch"))
                continue
            images = [table[f] for f in dom]
            if len(set(images)) != len(images) or set(images) != set(cod):
                reports.append(CheckReport("vstructure.phi-bijection", (x, y),
                                           witness_count=len(set(images)),
                                           note=f"image size {len(set(images))}, "
                                                f"element count {len(cod)}"))

    # naturality of the element correspondence in both arguments
    for f in s.mor_ids():
        x, y = s.src(f), s.dst(f)
        for h in s.mor_ids():
            if s.src(h) == y:  # post-composition
                _law(reports, "vstructure.phi-natural", (f, h),
                     _guarded(lambda: vs.phi_of(x, s.dst(h), s.then(f, h))),
                     _guarded(lambda: base.compose(
                         vs.phi_of(x, y, f), vs.hom_mor(s.id_(x), h))))
            if s.dst(h) == x:  # pre-composition
                _law(reports, "vstructure.phi-natural", (h, f),
                     _guarded(lambda: vs.phi_of(s.src(h), y, s.then(h, f))),
                     _guarded(lambda: base.compose(
                         vs.phi_of(x, y, f), vs.hom_mor(h, s.id_(y)))))

    for x in s.objects:
        for y in s.objects:
            for z in s.objects:
                for w in s.objects:
                    _law(reports, "vstructure.assoc", (x, y, z, w),
                         _guarded(lambda: base.compose(
                             m.tmor(vs.b(y, z, w), base.id_(vs.hom_obj(x, y))),
                             vs.b(x, y, w))),
                         _guarded(lambda: base.compose(
                             m.a(vs.hom_obj(z, w), vs.hom_obj(y, z), vs.hom_obj(x, y)),
                             m.tmor(base.id_(vs.hom_obj(z, w)), vs.b(x, y, z)),
                             vs.b(x, z, w))))

    # contravariant action: hom(f, Z) must be composition with the element of f
    for f in s.mor_ids():
        x, y = s.src(f), s.dst(f)
        for z in s.objects:
            _law(reports, "vstructure.right-action", (f, z),
                 _guarded(lambda: vs.hom_mor(f, s.id_(z))),
                 _guarded(lambda: base.compose(
                     m.inv(m.r(vs.hom_obj(y, z))),
                     m.tmor(base.id_(vs.hom_obj(y, z)), vs.phi_of(x, y, f)),
                     vs.b(x, y, z))))
    # covariant action: hom(X, g) likewise, with the element on the left
    for g in s.mor_ids():
        y, z = s.src(g), s.dst(g)
        for x in s.objects:
            _law(reports, "vstructure.left-action", (x, g),
                 _guarded(lambda: vs.hom_mor(s.id_(x), g)),
                 _guarded(lambda: base.compose(
                     m.inv(m.l(vs.hom_obj(x, y))),
                     m.tmor(vs.phi_of(y, z, g), base.id_(vs.hom_obj(x, y))),
                     vs.b(x, y, z))))
    return sort_reports(reports)


def associated_vcategory(vs: VStructureData):
    """Reread the structure as an enriched category; units are the elements of
    the identities."""
    from .vcat import VCategoryData

    return VCategoryData(
        baseV=vs.baseV,
        objects=tuple(vs.baseS.objects),
        homObj={(a, b): vs.hom_obj(a, b)
                for a in vs.baseS.objects for b in vs.baseS.objects},
        comp=dict(vs.comp),
        unit={a: vs.phi_of(a, a, vs.baseS.id_(a)) for a in vs.baseS.objects})


def check_cylinder(vs: VStructureData, cyl: CylinderAssignment) -> list[CheckReport]:
    """Isomorphy of the adjunct family and its compatibility square with the
    coevaluation elements, at every (K, X, Y)."""
    m = vs.baseV
    m.require_closed()
    base = m.base
    s = vs.baseS
    reports: list[CheckReport] = []

    for k in base.objects:
        for x in s.objects:
            kx = cyl.tensor_obj.get((k, x))
            if kx is None or not s.has_obj(kx):
                raise MissingTableError(f"cylinder object missing/undeclared at ({k!r}, {x!r})")
            al = cyl.alpha.get((k, x))
            if al is None:
                raise MissingTableError(f"cylinder alpha missing at ({k!r}, {x!r})")
            if not (base.has_mor(al) and base.src(al) == k
                    and base.dst(al) == vs.hom_obj(x, kx)):
                reports.append(CheckReport("cylinder.shape", (k, x, al), witness_count=0))
            for y in s.objects:
                pb = cyl.phibar.get((k, x, y))
                if pb is None:
                    raise MissingTableError(f"cylinder phibar missing at ({k!r}, {x!r}, {y!r})")
                ok = (base.has_mor(pb)
                      and base.src(pb) == vs.hom_obj(kx, y)
                      and base.dst(pb) == m.hom_obj(k, vs.hom_obj(x, y)))
                if not ok:
                    reports.append(CheckReport("cylinder.shape", (k, x, y, pb), witness_count=0))
                elif morphism_inverse(base, pb) is None:
                    reports.append(CheckReport("cylinder.phibar-iso", (k, x, y), witness_count=0))

    for (k, x), kx in sorted(cyl.tensor_obj.items()):
        for y in s.objects:
            _law(reports, "cylinder.cp1-1", (k, x, y),
                 _guarded(lambda: base.compose(
                     m.tmor(base.id_(vs.hom_obj(kx, y)), cyl.alpha[(k, x)]),
                     vs.b(x, kx, y))),
                 _guarded(lambda: base.compose(
                     m.tmor(cyl.phibar[(k, x, y)], base.id_(k)),
                     m.ev(k, vs.hom_obj(x, y)))))
    reports = sort_reports(reports)
    if not reports and not check_vstructure(vs):
        _derived_cylinder(vs, cyl)
    return reports


def _derived_cylinder(vs: VStructureData, cyl: CylinderAssignment) -> None:
    """Adjunct transport of elements agrees with the coevaluation route."""
    m = vs.baseV
    base = m.base
    s = vs.baseS
    for (k, x), kx in cyl.tensor_obj.items():
        for y in s.objects:
            for f in s.hom(kx, y):
                lhs = base.compose(vs.phi_of(kx, y, f), cyl.phibar[(k, x, y)])
                rhs = varpi(m, base.compose(cyl.alpha[(k, x)], vs.hom_mor(s.id_(x), f)))
                if lhs != rhs:
                    raise EngineBugError(
                        f"derived law failed: element transport at ({k!r}, {x!r}, {y!r}, {f!r})")


def dualize_path(pth: PathAssignment) -> CylinderAssignment:
    """A path assignment is exactly a cylinder assignment for the reversed
    structure; this is the evident re-indexing."""
    return CylinderAssignment(tensor_obj=dict(pth.path_obj),
                              alpha=dict(pth.beta),
                              phibar=dict(pth.psibar))


def check_path(vs: VStructureData, sym: SymmetryData | None,
               pth: PathAssignment) -> list[CheckReport]:
    """The dual compatibility square, cross-checked against the cylinder
    checker on the reversed structure; the two must agree."""
    m = vs.baseV
    sym = sym or m.require_symmetry()
    m.require_closed()
    base = m.base
    s = vs.baseS
    reports: list[CheckReport] = []

    for k in base.objects:
        for x in s.objects:
            kx = pth.path_obj.get((k, x))
            if kx is None or not s.has_obj(kx):
                raise MissingTableError(f"path object missing/undeclared at ({k!r}, {x!r})")
            be = pth.beta.get((k, x))
            if be is None:
                raise MissingTableError(f"path beta missing at ({k!r}, {x!r})")
            if not (base.has_mor(be) and base.src(be) == k
                    and base.dst(be) == vs.hom_obj(kx, x)):
                reports.append(CheckReport("path.shape", (k, x, be), witness_count=0))
            for y in s.objects:
                pb = pth.psibar.get((k, x, y))
                if pb is None:
                    raise MissingTableError(f"path psibar missing at ({k!r}, {x!r}, {y!r})")
                ok = (base.has_mor(pb)
                      and base.src(pb) == vs.hom_obj(y, kx)
                      and base.dst(pb) == m.hom_obj(k, vs.hom_obj(y, x)))
                if not ok:
                    reports.append(CheckReport("path.shape", (k, x, y, pb), witness_count=0))
                elif morphism_inverse(base, pb) is None:
                    reports.append(CheckReport("path.psibar-iso", (k, x, y), witness_count=0))

    for (k, x), kx in sorted(pth.path_obj.items()):
        for y in s.objects:
            _law(reports, "path.cp2-1-25", (k, x, y),
                 _guarded(lambda: base.compose(
                     m.tmor(base.id_(vs.hom_obj(y, kx)), pth.beta[(k, x)]),
                     sym.braid[(vs.hom_obj(y, kx), vs.hom_obj(kx, x))],
                     vs.b(y, kx, x))),
                 _guarded(lambda: base.compose(
                     m.tmor(pth.psibar[(k, x, y)], base.id_(k)),
                     m.ev(k, vs.hom_obj(y, x)))))
    reports = sort_reports(reports)

    dual = _guarded(lambda: check_cylinder(opposite_vstructure(vs, sym), dualize_path(pth)))
    if dual is not None and bool(dual) != bool(reports):
        raise EngineBugError(
            "oracle disagreement: the path checker and the cylinder checker on "
            "the reversed structure disagree")
    return reports


def opposite_vstructure(vs: VStructureData, sym: SymmetryData | None = None) -> VStructureData:
    """The same hom data read over the reversed category; the braiding reorders
    the internal composition and the element tables swap their indices."""
    m = vs.baseV
    sym = sym or m.require_symmetry()
    base = m.base
    s = vs.baseS
    s_op = opposite_category(s)

    src_prod = product_category(opposite_category(s_op), s_op)
    on_objects = {pair_id(x, y): vs.hom_obj(y, x) for x in s.objects for y in s.objects}
    on_morphisms = {pair_id(u, v): vs.hom_mor(v, u)
                    for u in s.mor_ids() for v in s.mor_ids()}
    comp = {}
    for x in s.objects:
        for y in s.objects:
            for z in s.objects:
                comp[(x, y, z)] = base.compose(
                    sym.braid[(vs.hom_obj(z, y), vs.hom_obj(y, x))],
                    vs.b(z, y, x))
    phi = {(x, y): dict(vs.phi[(y, x)]) for x in s.objects for y in s.objects}
    return VStructureData(baseS=s_op, baseV=m,
                          homFunctor=FunctorData(src_prod, base, on_objects, on_morphisms),
                          comp=comp, phi=phi)


def _alpha_transport(vs: VStructureData, cyl: CylinderAssignment,
                     k: Obj, x: Obj, target: Obj, element: Mor) -> Mor:
    """Recover the morphism K (x) X -> target whose coevaluation composite is
    the given element K -> hom(X, target), through the adjunct family."""
    m = vs.baseV
    kx = cyl.tensor_obj[(k, x)]
    t = varpi(m, element)
    t2 = m.base.compose(t, m.inv(cyl.phibar[(k, x, target)]))
    return vs.phi_inv(kx, target, t2)


def cylinder_unique_iso(vs: VStructureData, cyl_a: CylinderAssignment,
                        cyl_b: CylinderAssignment, k: Obj, x: Obj) -> Mor:
    """The unique isomorphism between two chosen cylinders at (K, X).

    Computed by element transport through the first cylinder's adjunct family
    and verified unique by exhaustive search.
    """
    m = vs.baseV
    base = m.base
    s = vs.baseS
    kx_a = cyl_a.tensor_obj[(k, x)]
    kx_b = cyl_b.tensor_obj[(k, x)]
    alpha_b = cyl_b.alpha[(k, x)]

    f = _alpha_transport(vs, cyl_a, k, x, kx_b, alpha_b)

    witnesses = [h for h in s.hom(kx_a, kx_b)
                 if base.compose(cyl_a.alpha[(k, x)], vs.hom_mor(s.id_(x), h)) == alpha_b]
    if len(witnesses) != 1:
        raise WitnessError(
            f"cylinder comparison at ({k!r}, {x!r}) has {len(witnesses)} witnesses",
            count=len(witnesses))
    if witnesses[0] != f:
        raise EngineBugError("derived law failed: cylinder-iso transport disagrees "
                             "with the exhaustive search")
    if morphism_inverse(s, f) is None:
        raise WitnessError(f"cylinder comparison morphism {f!r} is not invertible", count=0)
    return f


def induced_tensor_bifunctor(vs: VStructureData, cyl: CylinderAssignment) -> FunctorData:
    """The action bifunctor forced by a cylinder assignment.

    Each partial application is computed by element transport and verified to
    be the unique morphism making the defining square commute; the two partial
    routes of a general pair must agree.
    """
    m = vs.baseV
    base = m.base
    s = vs.baseS

    def u_tensor(u: Mor, x: Obj) -> Mor:
        k, l = base.src(u), base.dst(u)
        element = base.compose(u, cyl.alpha[(l, x)])
        f = _alpha_transport(vs, cyl, k, x, cyl.tensor_obj[(l, x)], element)
        witnesses = [h for h in s.hom(cyl.tensor_obj[(k, x)], cyl.tensor_obj[(l, x)])
                     if base.compose(cyl.alpha[(k, x)], vs.hom_mor(s.id_(x), h)) == element]
        if witnesses != [f]:
            raise WitnessError(
                f"action of {u!r} on {x!r} has {len(witnesses)} witnesses",
                count=len(witnesses))
        return f

    def k_tensor(k: Obj, v: Mor) -> Mor:
        x, y = s.src(v), s.dst(v)
        ky = cyl.tensor_obj[(k, y)]
        element = base.compose(cyl.alpha[(k, y)], vs.hom_mor(v, s.id_(ky)))
        f = _alpha_transport(vs, cyl, k, x, ky, element)
        witnesses = [h for h in s.hom(cyl.tensor_obj[(k, x)], ky)
                     if base.compose(cyl.alpha[(k, x)], vs.hom_mor(s.id_(x), h)) == element]
        if witnesses != [f]:
            raise WitnessError(
                f"action of {k!r} on {v!r} has {len(witnesses)} witnesses",
                count=len(witnesses))
        return f

    on_objects = {pair_id(k, x): kx for (k, x), kx in cyl.tensor_obj.items()}
    on_morphisms = {}
    for u in base.mor_ids():
        for v in s.mor_ids():
            k, l = base.src(u), base.dst(u)
            x, y = s.src(v), s.dst(v)
            first = s.compose(k_tensor(k, v), u_tensor(u, y))
            second = s.compose(u_tensor(u, x), k_tensor(l, v))
            if first != second:
                raise WitnessError(
                    f"action interchange failed at ({u!r}, {v!r})", count=2)
            on_morphisms[pair_id(u, v)] = first

    fn = FunctorData(product_category(base, s), s, on_objects, on_morphisms)
    bad = validate_functor(fn, tag="action")
    if bad:
        raise WitnessError(f"induced action is not a functor: {bad[0]}", count=0)
    _check_phibar_naturality(vs, cyl, fn)
    return fn


def _check_phibar_naturality(vs: VStructureData, cyl: CylinderAssignment,
                             action: FunctorData) -> None:
    """The adjunct family is natural in all three arguments once the action
    exists; failure signals an invalid cylinder."""
    m = vs.baseV
    base = m.base
    s = vs.baseS

    def fail(which: str, site: tuple) -> None:
        raise WitnessError(f"adjunct family not natural in {which} at {site!r}", count=0)

    for u in base.mor_ids():
        k, l = base.src(u), base.dst(u)
        for x in s.objects:
            ux = action.mor(pair_id(u, s.id_(x)))
            for y in s.objects:
                lhs = base.compose(vs.hom_mor(ux, s.id_(y)), cyl.phibar[(k, x, y)])
                rhs = base.compose(cyl.phibar[(l, x, y)],
                                   hom_on_morphisms(m, u, base.id_(vs.hom_obj(x, y))))
                if lhs != rhs:
                    fail("the tensor variable", (u, x, y))
    for v in s.mor_ids():
        w, x = s.src(v), s.dst(v)
        for k in base.objects:
            kv = action.mor(pair_id(base.id_(k), v))
            for y in s.objects:
                lhs = base.compose(vs.hom_mor(kv, s.id_(y)), cyl.phibar[(k, w, y)])
                rhs = base.compose(cyl.phibar[(k, x, y)],
                                   hom_on_morphisms(m, base.id_(k), vs.hom_mor(v, s.id_(y))))
                if lhs != rhs:
                    fail("the source variable", (v, k, y))
    for w in s.mor_ids():
        y, z = s.src(w), s.dst(w)
        for (k, x), kx in cyl.tensor_obj.items():
            lhs = base.compose(vs.hom_mor(s.id_(kx), w), cyl.phibar[(k, x, z)])
            rhs = base.compose(cyl.phibar[(k, x, y)],
                               hom_on_morphisms(m, base.id_(k), vs.hom_mor(s.id_(x), w)))
            if lhs != rhs:
                fail("the target variable", (w, k, x))
