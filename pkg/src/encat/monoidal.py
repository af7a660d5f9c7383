"""Monoidal, symmetric and closed structure on a finite category.

The closed structure is given by the hom-object table and the evaluation
family only; the transpose is recovered by exhaustive search with a
uniqueness check, so the search doubles as validation of the adjunction.

Derived laws (the unit-coincidence law, the unitor/associator compatibility
triangle, the evaluation squares, the double-transpose characterization) are
consequences of the axioms.  Checkers evaluate them only after the axioms
pass, and raise :class:`EngineBugError` on failure: disagreement there means
the evaluator is wrong, not the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    CapabilityError,
    CheckReport,
    EngineBugError,
    FinCategory,
    FunctorData,
    MissingTableError,
    Mor,
    Obj,
    WitnessError,
    morphism_inverse,
    opposite_category,
    pair_id,
    product_category,
    sort_reports,
    validate_functor,
)


@dataclass(frozen=True)
class SymmetryData:
    """The braiding components c[(X, Y)] : X (x) Y -> Y (x) X."""

    braid: Mapping[tuple[Obj, Obj], Mor]


@dataclass(frozen=True)
class ClosedData:
    """Internal homs: hom_obj[(Y, Z)] and the evaluations ev[(Y, Z)]."""

    hom_obj: Mapping[tuple[Obj, Obj], Obj]
    ev: Mapping[tuple[Obj, Obj], Mor]


@dataclass(frozen=True)
class MonoidalData:
    """Tensor tables, unit and structure isomorphisms on a finite category.

    ``symmetry`` and ``closed`` are optional capabilities; operations that
    need them raise :class:`CapabilityError` when they are absent.
    """

    base: FinCategory
    tensor_obj: Mapping[tuple[Obj, Obj], Obj]
    tensor_mor: Mapping[tuple[Mor, Mor], Mor]
    unit: Obj
    assoc: Mapping[tuple[Obj, Obj, Obj], Mor]
    lunit: Mapping[Obj, Mor]
    runit: Mapping[Obj, Mor]
    symmetry: SymmetryData | None = None
    closed: ClosedData | None = None

    def tobj(self, x: Obj, y: Obj) -> Obj:
        try:
            return self.tensor_obj[(x, y)]
        except KeyError:
            raise MissingTableError(f"tensor object table missing ({x!r}, {y!r})") from None

    def tmor(self, f: Mor, g: Mor) -> Mor:
        try:
            return self.tensor_mor[(f, g)]
        except KeyError:
            raise MissingTableError(f"tensor morphism table missing ({f!r}, {g!r})") from None

    def a(self, x: Obj, y: Obj, z: Obj) -> Mor:
        try:
            return self.assoc[(x, y, z)]
        except KeyError:
            raise MissingTableError(f"associator table missing ({x!r}, {y!r}, {z!r})") from None

    def l(self, x: Obj) -> Mor:
        try:
            return self.lunit[x]
        except KeyError:
            raise MissingTableError(f"left unitor table missing {x!r}") from None

    def r(self, x: Obj) -> Mor:
        try:
            return self.runit[x]
        except KeyError:
            raise MissingTableError(f"right unitor table missing {x!r}") from None

    def inv(self, f: Mor) -> Mor:
        g = morphism_inverse(self.base, f)
        if g is None:
            raise WitnessError(f"structure morphism {f!r} is not invertible", count=0)
        return g

    def require_closed(self) -> ClosedData:
        if self.closed is None:
            raise CapabilityError("operation requires a closed monoidal category")
        return self.closed

    def require_symmetry(self) -> SymmetryData:
        if self.symmetry is None:
            raise CapabilityError("operation requires a symmetric monoidal category")
        return self.symmetry

    def hom_obj(self, y: Obj, z: Obj) -> Obj:
        try:
            return self.require_closed().hom_obj[(y, z)]
        except KeyError:
            raise MissingTableError(f"hom object table missing ({y!r}, {z!r})") from None

    def ev(self, y: Obj, z: Obj) -> Mor:
        try:
            return self.require_closed().ev[(y, z)]
        except KeyError:
            raise MissingTableError(f"evaluation table missing ({y!r}, {z!r})") from None

    def braid(self, x: Obj, y: Obj) -> Mor:
        try:
            return self.require_symmetry().braid[(x, y)]
        except KeyError:
            raise MissingTableError(f"braiding table missing ({x!r}, {y!r})") from None


def _guarded(fn):
    """Evaluate a composite; ``None`` when a component is missing/ill-shaped."""
    from .core import EncatError

    try:
        return fn()
    except EncatError:
        return None


def _law(reports: list[CheckReport], law: str, site: tuple[str, ...],
         lhs: Mor | None, rhs: Mor | None, note: str = "") -> None:
    """Record a failed diagram: unequal composites or an undefined side."""
    if lhs is None or rhs is None:
        reports.append(CheckReport(law, site, witness_count=0,
                                   note=note or "composite undefined"))
    elif lhs != rhs:
        reports.append(CheckReport(law, site, lhs=lhs, rhs=rhs, note=note))


def check_monoidal(m: MonoidalData) -> list[CheckReport]:
    """Bifunctoriality, naturality, isomorphism and coherence of (tensor, a, l, r).

    Raises :class:`MissingTableError` when a structure table is partial, and
    :class:`EngineBugError` if a derived law fails on an input whose axioms
    all hold.
    """
    base = m.base
    reports: list[CheckReport] = []
    objs = base.objects
    mors = base.mor_ids()

    for x in objs:
        for y in objs:
            m.tobj(x, y)
        m.l(x), m.r(x)
        for y in objs:
            for z in objs:
                m.a(x, y, z)
    for f in mors:
        for g in mors:
            m.tmor(f, g)

    # tensor is a bifunctor
    for f in mors:
        for g in mors:
            fg = m.tmor(f, g)
            if not base.has_mor(fg):
                raise MalformedReferenceError(
                    f"tensor maps ({f!r}, {g!r}) to undeclared morphism {fg!r}")
            if (base.src(fg) != m.tobj(base.src(f), base.src(g))
                    or base.dst(fg) != m.tobj(base.dst(f), base.dst(g))):
                reports.append(CheckReport("tensor.shape", (f, g), witness_count=0))
    for x in objs:
        for y in objs:
            _law(reports, "tensor.identity", (x, y),
                 _guarded(lambda: m.tmor(base.id_(x), base.id_(y))),
                 base.id_(m.tobj(x, y)))
    for (f, g), h in base.comp.items():
        for (f2, g2), h2 in base.comp.items():
            _law(reports, "tensor.interchange", (f, f2, g, g2),
                 _guarded(lambda: m.tmor(h, h2)),
                 _guarded(lambda: base.compose(m.tmor(f, f2), m.tmor(g, g2))))

    # associator: shape, isomorphism, naturality
    for x in objs:
        for y in objs:
            for z in objs:
                av = m.a(x, y, z)
                want_s = m.tobj(m.tobj(x, y), z)
                want_d = m.tobj(x, m.tobj(y, z))
                if base.src(av) != want_s or base.dst(av) != want_d:
                    reports.append(CheckReport("assoc.shape", (x, y, z), witness_count=0))
                elif morphism_inverse(base, av) is None:
                    reports.append(CheckReport("assoc.iso", (x, y, z), witness_count=0))
    for f in mors:
        for g in mors:
            for h in mors:
                _law(reports, "assoc.natural", (f, g, h),
                     _guarded(lambda: base.compose(
                         m.tmor(m.tmor(f, g), h),
                         m.a(base.dst(f), base.dst(g), base.dst(h)))),
                     _guarded(lambda: base.compose(
                         m.a(base.src(f), base.src(g), base.src(h)),
                         m.tmor(f, m.tmor(g, h)))))

    # unitors: shape, isomorphism, naturality
    for x in objs:
        lv, rv = m.l(x), m.r(x)
        if base.src(lv) != m.tobj(m.unit, x) or base.dst(lv) != x:
            reports.append(CheckReport("lunit.shape", (x,), witness_count=0))
        elif morphism_inverse(base, lv) is None:
            reports.append(CheckReport("lunit.iso", (x,), witness_count=0))
        if base.src(rv) != m.tobj(x, m.unit) or base.dst(rv) != x:
            reports.append(CheckReport("runit.shape", (x,), witness_count=0))
        elif morphism_inverse(base, rv) is None:
            reports.append(CheckReport("runit.iso", (x,), witness_count=0))
    for f in mors:
        _law(reports, "lunit.natural", (f,),
             _guarded(lambda: base.compose(m.tmor(base.id_(m.unit), f), m.l(base.dst(f)))),
             _guarded(lambda: base.compose(m.l(base.src(f)), f)))
        _law(reports, "runit.natural", (f,),
             _guarded(lambda: base.compose(m.tmor(f, base.id_(m.unit)), m.r(base.dst(f)))),
             _guarded(lambda: base.compose(m.r(base.src(f)), f)))

    # the two coherence axioms
    for w in objs:
        for x in objs:
            for y in objs:
                for z in objs:
                    _law(reports, "pentagon", (w, x, y, z),
                         _guarded(lambda: base.compose(
                             m.a(m.tobj(w, x), y, z), m.a(w, x, m.tobj(y, z)))),
                         _guarded(lambda: base.compose(
                             m.tmor(m.a(w, x, y), base.id_(z)),
                             m.a(w, m.tobj(x, y), z),
                             m.tmor(base.id_(w), m.a(x, y, z)))))
    for x in objs:
        for y in objs:
            _law(reports, "triangle", (x, y),
                 _guarded(lambda: base.compose(
                     m.a(x, m.unit, y), m.tmor(base.id_(x), m.l(y)))),
                 _guarded(lambda: m.tmor(m.r(x), base.id_(y))))

    reports = sort_reports(reports)
    if not reports:
        _derived_monoidal(m)
    return reports


def _derived_monoidal(m: MonoidalData) -> None:
    base = m.base
    if m.l(m.unit) != m.r(m.unit):
        raise EngineBugError(
            f"derived law failed: unitors at the unit differ "
            f"({m.l(m.unit)!r} vs {m.r(m.unit)!r})")
    for x in base.objects:
        for y in base.objects:
            lhs = base.compose(m.a(m.unit, x, y), m.l(m.tobj(x, y)))
            rhs = m.tmor(m.l(x), base.id_(y))
            if lhs != rhs:
                raise EngineBugError(
                    f"derived law failed: left-unitor triangle at ({x!r}, {y!r})")


def check_symmetry(m: MonoidalData, s: SymmetryData | None = None) -> list[CheckReport]:
    """Naturality plus the three braiding axioms."""
    s = s or m.require_symmetry()
    base = m.base
    reports: list[CheckReport] = []
    objs = base.objects
    for x in objs:
        for y in objs:
            c = s.braid.get((x, y))
            if c is None:
                raise MissingTableError(f"braiding table missing ({x!r}, {y!r})")
            if base.src(c) != m.tobj(x, y) or base.dst(c) != m.tobj(y, x):
                reports.append(CheckReport("symmetry.shape", (x, y), witness_count=0))
    for f in base.mor_ids():
        for g in base.mor_ids():
            _law(reports, "symmetry.natural", (f, g),
                 _guarded(lambda: base.compose(
                     m.tmor(f, g), s.braid[(base.dst(f), base.dst(g))])),
                 _guarded(lambda: base.compose(
                     s.braid[(base.src(f), base.src(g))], m.tmor(g, f))))
    for x in objs:
        for y in objs:
            _law(reports, "symmetry.invol", (x, y),
                 _guarded(lambda: base.compose(s.braid[(x, y)], s.braid[(y, x)])),
                 base.id_(m.tobj(x, y)))
    for x in objs:
        for y in objs:
            for z in objs:
                _law(reports, "symmetry.hexagon", (x, y, z),
                     _guarded(lambda: base.compose(
                         m.a(x, y, z),
                         s.braid[(x, m.tobj(y, z))],
                         m.a(y, z, x))),
                     _guarded(lambda: base.compose(
                         m.tmor(s.braid[(x, y)], base.id_(z)),
                         m.a(y, x, z),
                         m.tmor(base.id_(y), s.braid[(x, z)]))))
    for x in objs:
        _law(reports, "symmetry.unit", (x,),
             _guarded(lambda: base.compose(s.braid[(m.unit, x)], m.r(x))),
             m.l(x))
    return sort_reports(reports)


def _transpose_forward(m: MonoidalData, g: Mor, y: Obj, z: Obj) -> Mor:
    """The map g |-> ev . (g (x) 1_y), inverse of the transpose."""
    return m.base.compose(m.tmor(g, m.base.id_(y)), m.ev(y, z))


def transpose_pi_inv(m: MonoidalData, g: Mor, y: Obj, z: Obj) -> Mor:
    """Un-transpose g : X -> hom(Y, Z) into X (x) Y -> Z."""
    m.require_closed()
    return _transpose_forward(m, g, y, z)


def transpose_pi(m: MonoidalData, f: Mor, x: Obj, y: Obj) -> Mor:
    """Transpose f : X (x) Y -> Z into the unique g : X -> hom(Y, Z).

    Found by exhaustive search over the hom-set in lexicographic order; zero
    or several witnesses raise :class:`WitnessError` (the closed data is then
    invalid).
    """
    m.require_closed()
    base = m.base
    z = base.dst(f)
    candidates = [g for g in base.hom(x, m.hom_obj(y, z))
                  if _guarded(lambda: _transpose_forward(m, g, y, z)) == f]
    if len(candidates) != 1:
        raise WitnessError(
            f"transpose of {f!r} at ({x!r}, {y!r}, {z!r}) has "
            f"{len(candidates)} witnesses", count=len(candidates))
    return candidates[0]


def check_closed(m: MonoidalData, cl: ClosedData | None = None) -> list[CheckReport]:
    """Bijectivity of the transpose at every (X, Y, Z), plus its naturality."""
    cl = cl or m.require_closed()
    if cl is not m.closed:
        m = MonoidalData(m.base, m.tensor_obj, m.tensor_mor, m.unit, m.assoc,
                         m.lunit, m.runit, m.symmetry, cl)
    base = m.base
    reports: list[CheckReport] = []
    objs = base.objects

    ev_ok: dict[tuple[Obj, Obj], bool] = {}
    for y in objs:
        for z in objs:
            h = m.hom_obj(y, z)
            if not base.has_obj(h):
                raise MissingTableError(f"hom object ({y!r},{z!r}) -> undeclared {h!r}")
            e = m.ev(y, z)
            ok = base.has_mor(e) and base.src(e) == m.tobj(h, y) and base.dst(e) == z
            ev_ok[(y, z)] = ok
            if not ok:
                reports.append(CheckReport("closed.shape", (y, z), witness_count=0))

    for x in objs:
        for y in objs:
            for z in objs:
                dom = base.hom(x, m.hom_obj(y, z))
                cod = base.hom(m.tobj(x, y), z)
                if not ev_ok[(y, z)]:
                    if len(dom) != len(cod):
                        reports.append(CheckReport(
                            "closed.bijection", (x, y, z), witness_count=len(dom),
                            note=f"{len(dom)} transposes for {len(cod)} morphisms"))
                    continue
                images = [_transpose_forward(m, g, y, z) for g in dom]
                if len(set(images)) != len(images) or set(images) != set(cod):
                    reports.append(CheckReport(
                        "closed.bijection", (x, y, z), witness_count=len(set(images)),
                        note=f"image size {len(set(images))}, hom-set size {len(cod)}"))

    if reports:
        return sort_reports(reports)

    # naturality of the transpose in X and Z (redundant given bijectivity,
    # kept as an explicit check of the adjunction contract)
    for y in objs:
        for z in objs:
            for h in base.mor_ids():  # h : X' -> X
                x, xp = base.dst(h), base.src(h)
                for g in base.hom(x, m.hom_obj(y, z)):
                    lhs = _transpose_forward(m, base.compose(h, g), y, z)
                    rhs = base.compose(m.tmor(h, base.id_(y)),
                                       _transpose_forward(m, g, y, z))
                    _law(reports, "closed.pi-natural", (y, z, h, g), lhs, rhs)
            for k in base.mor_ids():  # k : Z -> Z'
                if base.src(k) != z:
                    continue
                hom_k = transpose_pi(m, base.compose(m.ev(y, z), k), m.hom_obj(y, z), y)
                for x in objs:
                    for g in base.hom(x, m.hom_obj(y, z)):
                        lhs = _transpose_forward(m, base.compose(g, hom_k), y, base.dst(k))
                        rhs = base.compose(_transpose_forward(m, g, y, z), k)
                        _law(reports, "closed.pi-natural", (y, z, k, g), lhs, rhs)

    reports = sort_reports(reports)
    if not reports:
        _derived_closed(m)
    return reports


def _derived_closed(m: MonoidalData) -> None:
    base = m.base
    objs = base.objects
    # transpose and un-transpose are mutually inverse
    for x in objs:
        for y in objs:
            for z in objs:
                for g in base.hom(x, m.hom_obj(y, z)):
                    if transpose_pi(m, _transpose_forward(m, g, y, z), x, y) != g:
                        raise EngineBugError("transpose round trip failed")
    # evaluation square: ev . (1 (x) f) = ev . (hom(f, Z) (x) 1)
    for f in base.mor_ids():
        xp, x = base.src(f), base.dst(f)
        for z in objs:
            lhs = base.compose(m.tmor(base.id_(m.hom_obj(x, z)), f), m.ev(x, z))
            rhs = base.compose(
                m.tmor(hom_on_morphisms(m, f, base.id_(z)), base.id_(xp)), m.ev(xp, z))
            if lhs != rhs:
                raise EngineBugError(
                    f"derived law failed: evaluation square at ({f!r}, {z!r})")
    # transposing around the right unitor lands in the unit coordinate
    for f in base.mor_ids():
        x, y = base.src(f), base.dst(f)
        lhs = transpose_pi(m, base.compose(m.r(x), f), x, m.unit)
        rhs = base.compose(f, iota(m, y))
        if lhs != rhs:
            raise EngineBugError(f"derived law failed: unit-coordinate square at {f!r}")
    # the double transpose commutes with the global-element correspondence
    for x in objs:
        for y in objs:
            for z in objs:
                pb = internal_pi_bar(m, x, y, z)
                for h in base.hom(m.tobj(x, y), z):
                    lhs = base.compose(varpi(m, h, m.tobj(x, y), z), pb)
                    rhs = varpi(m, transpose_pi(m, h, x, y), x, m.hom_obj(y, z))
                    if lhs != rhs:
                        raise EngineBugError(
                            f"derived law failed: double-transpose square at "
                            f"({x!r}, {y!r}, {z!r}, {h!r})")


def hom_on_morphisms(m: MonoidalData, f: Mor, h: Mor) -> Mor:
    """The hom bifunctor on morphisms: hom(f, h) for f : X' -> X, h : Z -> Z'."""
    m.require_closed()
    base = m.base
    xp, x = base.src(f), base.dst(f)
    z, zp = base.src(h), base.dst(h)
    composite = base.compose(
        m.tmor(base.id_(m.hom_obj(x, z)), f), m.ev(x, z), h)
    return transpose_pi(m, composite, m.hom_obj(x, z), xp)


def hom_functor(m: MonoidalData) -> FunctorData:
    """The hom bifunctor as explicit tables on opposite(base) x base."""
    m.require_closed()
    base = m.base
    src = product_category(opposite_category(base), base)
    on_objects = {pair_id(y, z): m.hom_obj(y, z)
                  for y in base.objects for z in base.objects}
    on_morphisms = {pair_id(f, h): hom_on_morphisms(m, f, h)
                    for f in base.mor_ids() for h in base.mor_ids()}
    fn = FunctorData(src, base, on_objects, on_morphisms)
    bad = validate_functor(fn, tag="functor")
    if bad:
        raise EngineBugError(f"derived law failed: hom bifunctor invalid: {bad[0]}")
    return fn


def internal_composition_b(m: MonoidalData, x: Obj, y: Obj, z: Obj) -> Mor:
    """Internal composition hom(Y,Z) (x) hom(X,Y) -> hom(X,Z)."""
    m.require_closed()
    base = m.base
    hyz, hxy = m.hom_obj(y, z), m.hom_obj(x, y)
    composite = base.compose(
        m.a(hyz, hxy, x),
        m.tmor(base.id_(hyz), m.ev(x, y)),
        m.ev(y, z))
    return transpose_pi(m, composite, m.tobj(hyz, hxy), x)


def varpi(m: MonoidalData, f: Mor, x: Obj | None = None, y: Obj | None = None) -> Mor:
    """The global-element correspondence: Hom(X, Y) -> Hom(I, hom(X, Y))."""
    m.require_closed()
    base = m.base
    x = base.src(f) if x is None else x
    y = base.dst(f) if y is None else y
    return transpose_pi(m, base.compose(m.l(x), f), m.unit, x)


def varpi_inv(m: MonoidalData, t: Mor, x: Obj, y: Obj) -> Mor:
    """Inverse of :func:`varpi`: recover f : X -> Y from I -> hom(X, Y)."""
    m.require_closed()
    base = m.base
    return base.compose(m.inv(m.l(x)), transpose_pi_inv(m, t, x, y))


def internal_pi_bar(m: MonoidalData, x: Obj, y: Obj, z: Obj) -> Mor:
    """Internal transpose hom(X (x) Y, Z) -> hom(X, hom(Y, Z)).

    Computed as the double transpose of evaluation around the associator and
    then verified against its universal characterization over every object;
    a mismatch is an engine bug.
    """
    m.require_closed()
    base = m.base
    xy = m.tobj(x, y)
    h0 = m.hom_obj(xy, z)
    composite = base.compose(m.a(h0, x, y), m.ev(xy, z))
    inner = transpose_pi(m, composite, m.tobj(h0, x), y)
    outer = transpose_pi(m, inner, h0, x)
    # characterization: for every W and f : W (x) (X (x) Y) -> Z the double
    # transpose of f . a equals pi(f) post-composed with the internal transpose
    for w in base.objects:
        for f in base.hom(m.tobj(w, xy), z):
            lhs = transpose_pi(
                m, transpose_pi(m, base.compose(m.a(w, x, y), f), m.tobj(w, x), y), w, x)
            rhs = base.compose(transpose_pi(m, f, w, xy), outer)
            if lhs != rhs:
                raise EngineBugError(
                    f"derived law failed: internal transpose characterization at "
                    f"({x!r}, {y!r}, {z!r}, W={w!r}, {f!r})")
    return outer


def iota(m: MonoidalData, x: Obj) -> Mor:
    """The unit-coordinate isomorphism X -> hom(I, X)."""
    m.require_closed()
    base = m.base
    out = transpose_pi(m, m.r(x), x, m.unit)
    for f in base.mor_ids():
        if base.dst(f) != x:
            continue
        lhs = transpose_pi(m, base.compose(m.r(base.src(f)), f), base.src(f), m.unit)
        rhs = base.compose(f, out)
        if lhs != rhs:
            raise EngineBugError(f"derived law failed: unit-coordinate square at {f!r}")
    return out


def self_vstructure(m: MonoidalData):
    """Package the internal structure of a closed monoidal category as an
    enriched-hom structure of the category over itself."""
    from .vstruct import VStructureData

    m.require_closed()
    base = m.base
    comp = {(x, y, z): internal_composition_b(m, x, y, z)
            for x in base.objects for y in base.objects for z in base.objects}
    phi = {(x, y): {f: varpi(m, f) for f in base.hom(x, y)}
           for x in base.objects for y in base.objects}
    return VStructureData(baseS=base, baseV=m, homFunctor=hom_functor(m),
                          comp=comp, phi=phi)


def self_cylinder(m: MonoidalData):
    """The tautological cylinder of a closed monoidal category over itself."""
    from .vstruct import CylinderAssignment

    m.require_closed()
    base = m.base
    tensor_obj = {}
    alpha = {}
    phibar = {}
    for k in base.objects:
        for x in base.objects:
            kx = m.tobj(k, x)
            tensor_obj[(k, x)] = kx
            alpha[(k, x)] = transpose_pi(m, base.id_(kx), k, x)
            for y in base.objects:
                phibar[(k, x, y)] = internal_pi_bar(m, k, x, y)
    return CylinderAssignment(tensor_obj=tensor_obj, alpha=alpha, phibar=phibar)


def self_path(m: MonoidalData, s: SymmetryData | None = None):
    """The tautological path structure; needs symmetry as well as closedness."""
    from .vstruct import PathAssignment

    s = s or m.require_symmetry()
    m.require_closed()
    base = m.base
    path_obj = {}
    beta = {}
    psibar = {}
    for k in base.objects:
        for x in base.objects:
            kx = m.hom_obj(k, x)
            path_obj[(k, x)] = kx
            beta[(k, x)] = transpose_pi(
                m, base.compose(s.braid[(k, kx)], m.ev(k, x)), k, kx)
            for y in base.objects:
                psibar[(k, x, y)] = base.compose(
                    m.inv(internal_pi_bar(m, y, k, x)),
                    hom_on_morphisms(m, s.braid[(k, y)], base.id_(x)),
                    internal_pi_bar(m, k, y, x))
    return PathAssignment(path_obj=path_obj, beta=beta, psibar=psibar)
