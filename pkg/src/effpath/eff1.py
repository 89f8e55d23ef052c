"""The two-dimensional layer: objects carry 2-cells between parallel 1-cells
together with coherence codes, morphisms track all three levels, and the
path-category structure (fibrations, path objects, homotopies, truncations,
classification) is rebuilt one dimension up.

The same intersection semantics as the groupoid layer applies throughout: a
single code serving several cells that share a visible input must output a
value accepted by every one of them, so over finite carriers every existence
question reduces to finite intersections.  NO verdicts come only from
definitive finite emptiness; fuel or budget exhaustion yields UNKNOWN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .pca import (
    DEFAULT_FUEL, apply, cantor_unpair, const_code, tabulate, tuple_encode,
)
from .core import (
    Decision, EffMorphism, EffObject, NO, SynthesisFailed, UNKNOWN, Verdict,
    YES, _intersect_all, _pick, _run, check_morphism as check_morphism0,
    check_object as check_object0, compose as compose0,
    identity as identity0, invalid, make_object,
    synthesize_morphism as synthesize_morphism0, unknown, valid,
)
from .path import (
    DEFAULT_BUDGET, Homotopy as Homotopy0, NotTrivial, _zero_map_candidates,
    check_homotopy as check_homotopy0, homotopic_decide as homotopic_decide0,
    is_equivalence_decide as is_equivalence_decide0,
    terminal_object as terminal_object0,
)
from .constructions import VirtualObject, _verdict_status
from .classify import (
    DEFAULT_DEPTH_BUDGET, HlevelVerdict, NotNormalized, REFUTED, VERIFIED,
)


# --- objects ----------------------------------------------------------------

@dataclass
class Eff1Object:
    """A finite carrier with realizers, 1-cells, 2-cells between parallel
    1-cells, and twelve structure codes.

    ``hom`` maps (a, b) to the set of 1-cells; ``hom2`` maps (a, b, p, q)
    with parallel p, q in hom(a, b) to the set of 2-cells p => q.
    """
    cells: tuple
    realizer: dict
    hom: dict
    hom2: dict
    unit1: int       # alpha a |-> identity 1-cell of a
    inv1: int        # <alpha a, alpha b, p> |-> p^-1
    comp1: int       # <alpha a, alpha b, alpha c, p, r> |-> r . p
    coh_lunit: int   # <alpha a, alpha b, p> |-> 2-cell  1_b . p  =>  p
    coh_runit: int   # <alpha a, alpha b, p> |-> 2-cell  p . 1_a  =>  p
    coh_linv: int    # <alpha a, alpha b, p> |-> 2-cell  p^-1 . p  =>  1_a
    coh_rinv: int    # <alpha a, alpha b, p> |-> 2-cell  p . p^-1  =>  1_b
    coh_assoc: int   # <.., p, r, s> |-> 2-cell  (s.r).p  =>  s.(r.p)
    id2: int         # <alpha a, alpha b, p> |-> identity 2-cell of p
    vcomp: int       # <.., p, r, s, n, m> |-> m *1 n : p => s
    inv2: int        # <.., p, r, n> |-> n^-1 : r => p
    hcomp: int       # <.., p, r, p', r', n, m> |-> m *0 n
    name: str = ""

    def hom_of(self, a, b):
        return self.hom.get((a, b), frozenset())

    def hom2_of(self, a, b, p, q):
        return self.hom2.get((a, b, p, q), frozenset())

    def realizer_image(self):
        return sorted(set(self.realizer.values()))

    def cells_with_realizer(self, n):
        return [a for a in self.cells if self.realizer[a] == n]

    def __repr__(self):
        return f"Eff1Object({self.name or hex(id(self))}, " \
               f"{len(self.cells)} cells)"


def _memo(A, key, code, t, fuel):
    # structure codes are deterministic tables: cache their values per
    # object so repeated reads don't re-run the machine
    cache = getattr(A, "_value_cache", None)
    if cache is None:
        cache = A._value_cache = {}
    k = (key, t)
    if k not in cache:
        cache[k] = apply(code, t, fuel=fuel)
    return cache[k]


def _u(A, a, fuel: int = DEFAULT_FUEL) -> int:
    return _memo(A, "u", A.unit1, A.realizer[a], fuel)


def _inv(A, a, b, p, fuel: int = DEFAULT_FUEL) -> int:
    return _memo(A, "i", A.inv1,
                 tuple_encode(A.realizer[a], A.realizer[b], p), fuel)


def _comp(A, a, b, c, p, r, fuel: int = DEFAULT_FUEL) -> int:
    """The composite r . p for p: a -> b, r: b -> c."""
    return _memo(A, "c", A.comp1,
                 tuple_encode(A.realizer[a], A.realizer[b], A.realizer[c],
                              p, r), fuel)


def _id2(A, a, b, p, fuel: int = DEFAULT_FUEL) -> int:
    return _memo(A, "2", A.id2,
                 tuple_encode(A.realizer[a], A.realizer[b], p), fuel)


def _dec2(e):
    return cantor_unpair(e)


def _dec3(e):
    a, rest = cantor_unpair(e)
    b, c = cantor_unpair(rest)
    return a, b, c


def synthesize_object1_codes(cells, realizer, hom, hom2,
                             unit=None, inv=None, comp=None):
    """All twelve structure codes as tables, by per-visible-input
    intersection.  Explicit value functions may be supplied for the 1-level
    structure (a composition law the minimal pick would not find); their
    values are still checked for uniformity and membership.
    """
    def hom_of(a, b):
        return hom.get((a, b), frozenset())

    def hom2_of(a, b, p, q):
        return hom2.get((a, b, p, q), frozenset())

    def settle(groups, label):
        out = {}
        for t, entries in groups.items():
            overrides = {v for _, v in entries if v is not None}
            if len(overrides) > 1:
                raise SynthesisFailed(f"{label}: override not uniform at {t}")
            inter = _intersect_all(tset for tset, _ in entries)
            if overrides:
                v = overrides.pop()
                if v not in inter:
                    raise SynthesisFailed(
                        f"{label}: override value {v} rejected at {t}")
                out[t] = v
            else:
                if not inter:
                    raise SynthesisFailed(f"{label}: empty at input {t}")
                out[t] = _pick(inter)
        return out

    g = {}
    for a in cells:
        g.setdefault(realizer[a], []).append(
            (hom_of(a, a), unit(a) if unit else None))
    unit_t = settle(g, "unit")

    def uval(a):
        return unit_t[realizer[a]]

    g = {}
    for a, b in itertools.product(cells, repeat=2):
        for p in hom_of(a, b):
            t = tuple_encode(realizer[a], realizer[b], p)
            g.setdefault(t, []).append(
                (hom_of(b, a), inv(a, b, p) if inv else None))
    inv_t = settle(g, "inverse")

    def ival(a, b, p):
        return inv_t[tuple_encode(realizer[a], realizer[b], p)]

    g = {}
    for a, b, c in itertools.product(cells, repeat=3):
        for p in hom_of(a, b):
            for r in hom_of(b, c):
                t = tuple_encode(realizer[a], realizer[b], realizer[c], p, r)
                g.setdefault(t, []).append(
                    (hom_of(a, c), comp(a, b, c, p, r) if comp else None))
    comp_t = settle(g, "composition")

    def cval(a, b, c, p, r):
        return comp_t[tuple_encode(realizer[a], realizer[b], realizer[c],
                                   p, r)]

    lu, ru, li, ri, ii = {}, {}, {}, {}, {}
    for a, b in itertools.product(cells, repeat=2):
        for p in hom_of(a, b):
            t = tuple_encode(realizer[a], realizer[b], p)
            lu.setdefault(t, []).append(
                (hom2_of(a, b, cval(a, b, b, p, uval(b)), p), None))
            ru.setdefault(t, []).append(
                (hom2_of(a, b, cval(a, a, b, uval(a), p), p), None))
            li.setdefault(t, []).append(
                (hom2_of(a, a, cval(a, b, a, p, ival(a, b, p)), uval(a)),
                 None))
            ri.setdefault(t, []).append(
                (hom2_of(b, b, cval(b, a, b, ival(a, b, p), p), uval(b)),
                 None))
            ii.setdefault(t, []).append((hom2_of(a, b, p, p), None))
    lunit_t = settle(lu, "left unit coherence")
    runit_t = settle(ru, "right unit coherence")
    linv_t = settle(li, "left inverse coherence")
    rinv_t = settle(ri, "right inverse coherence")
    id2_t = settle(ii, "2-identity")

    g = {}
    for a, b in itertools.product(cells, repeat=2):
        for c, d in itertools.product(cells, repeat=2):
            for p in hom_of(a, b):
                for r in hom_of(b, c):
                    for s in hom_of(c, d):
                        t = tuple_encode(realizer[a], realizer[b],
                                         realizer[c], realizer[d], p, r, s)
                        lhs = cval(a, c, d, cval(a, b, c, p, r), s)
                        rhs = cval(a, b, d, p, cval(b, c, d, r, s))
                        g.setdefault(t, []).append(
                            (hom2_of(a, d, lhs, rhs), None))
    assoc_t = settle(g, "associativity coherence")

    g = {}
    for a, b in itertools.product(cells, repeat=2):
        h1 = hom_of(a, b)
        for p, r, s in itertools.product(sorted(h1), repeat=3):
            for n in hom2_of(a, b, p, r):
                for m in hom2_of(a, b, r, s):
                    t = tuple_encode(realizer[a], realizer[b], p, r, s, n, m)
                    g.setdefault(t, []).append((hom2_of(a, b, p, s), None))
    vcomp_t = settle(g, "vertical composition")

    g = {}
    for a, b in itertools.product(cells, repeat=2):
        for p, r in itertools.product(sorted(hom_of(a, b)), repeat=2):
            for n in hom2_of(a, b, p, r):
                t = tuple_encode(realizer[a], realizer[b], p, r, n)
                g.setdefault(t, []).append((hom2_of(a, b, r, p), None))
    inv2_t = settle(g, "2-inverse")

    g = {}
    for a, b, c in itertools.product(cells, repeat=3):
        for p, r in itertools.product(sorted(hom_of(a, b)), repeat=2):
            for p2, r2 in itertools.product(sorted(hom_of(b, c)), repeat=2):
                for n in hom2_of(a, b, p, r):
                    for m in hom2_of(b, c, p2, r2):
                        t = tuple_encode(realizer[a], realizer[b],
                                         realizer[c], p, r, p2, r2, n, m)
                        g.setdefault(t, []).append(
                            (hom2_of(a, c, cval(a, b, c, p, p2),
                                     cval(a, b, c, r, r2)), None))
    hcomp_t = settle(g, "horizontal composition")

    return tuple(tabulate(t) for t in (
        unit_t, inv_t, comp_t, lunit_t, runit_t, linv_t, rinv_t, assoc_t,
        id2_t, vcomp_t, inv2_t, hcomp_t))


def make_object1(cells, realizer, hom, hom2, name: str = "",
                 unit=None, inv=None, comp=None) -> Eff1Object:
    cells = tuple(cells)
    full_hom = {(a, b): frozenset(hom.get((a, b), frozenset()))
                for a in cells for b in cells}
    full_hom2 = {}
    for (a, b), h in full_hom.items():
        for p, q in itertools.product(sorted(h), repeat=2):
            full_hom2[(a, b, p, q)] = frozenset(
                hom2.get((a, b, p, q), frozenset()))
    codes = synthesize_object1_codes(cells, realizer, full_hom, full_hom2,
                                     unit=unit, inv=inv, comp=comp)
    return Eff1Object(cells, dict(realizer), full_hom, full_hom2, *codes,
                      name=name)


def check_object1(obj: Eff1Object, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Exhaustively run every structure code on every instance."""
    A = obj

    def ck(code, t, target, label):
        status, v = _run(code, t, fuel)
        if status == "fuel":
            return unknown(f"{label}: fuel exhausted at {t}")
        if status == "div":
            return invalid(f"{label}: diverges at {t}")
        if v not in target:
            return invalid(f"{label}: value {v} outside target at {t}")
        return None

    for a in A.cells:
        bad = ck(A.unit1, A.realizer[a], A.hom_of(a, a), "unit")
        if bad is not None:
            return bad
    for a, b in itertools.product(A.cells, repeat=2):
        ra, rb = A.realizer[a], A.realizer[b]
        for p in A.hom_of(a, b):
            bad = ck(A.inv1, tuple_encode(ra, rb, p), A.hom_of(b, a),
                     "inverse")
            if bad is not None:
                return bad
    for a, b, c in itertools.product(A.cells, repeat=3):
        for p in A.hom_of(a, b):
            for r in A.hom_of(b, c):
                t = tuple_encode(A.realizer[a], A.realizer[b], A.realizer[c],
                                 p, r)
                bad = ck(A.comp1, t, A.hom_of(a, c), "composition")
                if bad is not None:
                    return bad
    # level-one structure converges from here on
    for a, b in itertools.product(A.cells, repeat=2):
        ra, rb = A.realizer[a], A.realizer[b]
        for p in A.hom_of(a, b):
            t = tuple_encode(ra, rb, p)
            ua, ub = _u(A, a, fuel), _u(A, b, fuel)
            pi = _inv(A, a, b, p, fuel)
            for code, target, label in (
                    (A.coh_lunit, A.hom2_of(a, b, _comp(A, a, b, b, p, ub,
                                                        fuel), p),
                     "left unit coherence"),
                    (A.coh_runit, A.hom2_of(a, b, _comp(A, a, a, b, ua, p,
                                                        fuel), p),
                     "right unit coherence"),
                    (A.coh_linv, A.hom2_of(a, a, _comp(A, a, b, a, p, pi,
                                                       fuel), ua),
                     "left inverse coherence"),
                    (A.coh_rinv, A.hom2_of(b, b, _comp(A, b, a, b, pi, p,
                                                       fuel), ub),
                     "right inverse coherence"),
                    (A.id2, A.hom2_of(a, b, p, p), "2-identity")):
                bad = ck(code, t, target, label)
                if bad is not None:
                    return bad
    for a, b in itertools.product(A.cells, repeat=2):
        for c, d in itertools.product(A.cells, repeat=2):
            for p in A.hom_of(a, b):
                for r in A.hom_of(b, c):
                    for s in A.hom_of(c, d):
                        t = tuple_encode(A.realizer[a], A.realizer[b],
                                         A.realizer[c], A.realizer[d],
                                         p, r, s)
                        lhs = _comp(A, a, c, d, _comp(A, a, b, c, p, r, fuel),
                                    s, fuel)
                        rhs = _comp(A, a, b, d, p,
                                    _comp(A, b, c, d, r, s, fuel), fuel)
                        bad = ck(A.coh_assoc, t, A.hom2_of(a, d, lhs, rhs),
                                 "associativity coherence")
                        if bad is not None:
                            return bad
    for a, b in itertools.product(A.cells, repeat=2):
        ra, rb = A.realizer[a], A.realizer[b]
        h1 = sorted(A.hom_of(a, b))
        for p, r, s in itertools.product(h1, repeat=3):
            for n in A.hom2_of(a, b, p, r):
                for m in A.hom2_of(a, b, r, s):
                    bad = ck(A.vcomp, tuple_encode(ra, rb, p, r, s, n, m),
                             A.hom2_of(a, b, p, s), "vertical composition")
                    if bad is not None:
                        return bad
        for p, r in itertools.product(h1, repeat=2):
            for n in A.hom2_of(a, b, p, r):
                bad = ck(A.inv2, tuple_encode(ra, rb, p, r, n),
                         A.hom2_of(a, b, r, p), "2-inverse")
                if bad is not None:
                    return bad
    for a, b, c in itertools.product(A.cells, repeat=3):
        for p, r in itertools.product(sorted(A.hom_of(a, b)), repeat=2):
            for p2, r2 in itertools.product(sorted(A.hom_of(b, c)), repeat=2):
                for n in A.hom2_of(a, b, p, r):
                    for m in A.hom2_of(b, c, p2, r2):
                        t = tuple_encode(A.realizer[a], A.realizer[b],
                                         A.realizer[c], p, r, p2, r2, n, m)
                        bad = ck(A.hcomp, t,
                                 A.hom2_of(a, c, _comp(A, a, b, c, p, p2,
                                                       fuel),
                                           _comp(A, a, b, c, r, r2, fuel)),
                                 "horizontal composition")
                        if bad is not None:
                            return bad
    return valid()


# --- morphisms --------------------------------------------------------------

@dataclass
class Eff1Morphism:
    """A tracked map at all three levels.

    ``one_map`` maps (b, b') to {1-cell: value}; ``two_map`` maps
    (b, b', p, r) to {2-cell: value}.  The functoriality codes witness that
    identities and composites are preserved up to 2-cells; they are not part
    of the identity of the morphism.
    """
    dom: Eff1Object
    cod: Eff1Object
    zero_map: dict
    one_map: dict
    two_map: dict
    tracking0: int
    tracking1: int   # <beta b, beta b', p> |-> f(p)
    tracking2: int   # <beta b, beta b', p, r, n> |-> f(n)
    funct_id: int    # beta b |-> 2-cell  f(1_b) => 1_{f b}
    funct_comp: int  # <beta b1, beta b2, beta b3, p, r> |-> f(r.p) => fr.fp
    name: str = ""

    def __repr__(self):
        return f"Eff1Morphism({self.name or hex(id(self))})"


def _funct_tables(dom: Eff1Object, cod: Eff1Object, zero, one,
                  fuel: int = DEFAULT_FUEL):
    """Tables for the two functoriality codes, or None if some finite
    intersection is empty."""
    fid_groups, fcomp_groups = {}, {}
    for b in dom.cells:
        fb = zero[b]
        img = one[(b, b)][_u(dom, b, fuel)]
        fid_groups.setdefault(dom.realizer[b], []).append(
            cod.hom2_of(fb, fb, img, _u(cod, fb, fuel)))
    for b1, b2, b3 in itertools.product(dom.cells, repeat=3):
        for p in dom.hom_of(b1, b2):
            for r in dom.hom_of(b2, b3):
                t = tuple_encode(dom.realizer[b1], dom.realizer[b2],
                                 dom.realizer[b3], p, r)
                img = one[(b1, b3)][_comp(dom, b1, b2, b3, p, r, fuel)]
                cimg = _comp(cod, zero[b1], zero[b2], zero[b3],
                             one[(b1, b2)][p], one[(b2, b3)][r], fuel)
                fcomp_groups.setdefault(t, []).append(
                    cod.hom2_of(zero[b1], zero[b3], img, cimg))
    out = []
    for groups in (fid_groups, fcomp_groups):
        table = {}
        for t, targets in groups.items():
            inter = _intersect_all(targets)
            if not inter:
                return None
            table[t] = _pick(inter)
        out.append(table)
    return out[0], out[1]


def _build_morphism1(dom: Eff1Object, cod: Eff1Object, zero, one, two,
                     name: str = "",
                     fuel: int = DEFAULT_FUEL) -> Eff1Morphism | None:
    """Assemble a morphism from explicit value maps.  Returns None when the
    values are not uniform per visible input, land outside the codomain, or
    admit no functoriality 2-cells."""
    t0, t1, t2 = {}, {}, {}
    for b in dom.cells:
        fb = zero.get(b)
        if fb not in cod.cells:
            return None
        want = cod.realizer[fb]
        if t0.setdefault(dom.realizer[b], want) != want:
            return None
    try:
        for b, b2 in itertools.product(dom.cells, repeat=2):
            cod_h = cod.hom_of(zero[b], zero[b2])
            for p in dom.hom_of(b, b2):
                v = one[(b, b2)][p]
                if v not in cod_h:
                    return None
                t = tuple_encode(dom.realizer[b], dom.realizer[b2], p)
                if t1.setdefault(t, v) != v:
                    return None
        for b, b2 in itertools.product(dom.cells, repeat=2):
            for p, r in itertools.product(sorted(dom.hom_of(b, b2)),
                                          repeat=2):
                cod_h2 = cod.hom2_of(zero[b], zero[b2],
                                     one[(b, b2)][p], one[(b, b2)][r])
                for n in dom.hom2_of(b, b2, p, r):
                    v = two[(b, b2, p, r)][n]
                    if v not in cod_h2:
                        return None
                    t = tuple_encode(dom.realizer[b], dom.realizer[b2],
                                     p, r, n)
                    if t2.setdefault(t, v) != v:
                        return None
    except KeyError:
        return None
    ft = _funct_tables(dom, cod, zero, one, fuel)
    if ft is None:
        return None
    fid_t, fcomp_t = ft
    return Eff1Morphism(dom, cod, dict(zero),
                        {k: dict(v) for k, v in one.items()},
                        {k: dict(v) for k, v in two.items()},
                        tabulate(t0), tabulate(t1), tabulate(t2),
                        tabulate(fid_t), tabulate(fcomp_t), name=name)


def _one_groups(dom: Eff1Object, cod: Eff1Object, zero_map: dict):
    groups = {}
    for b, b2 in itertools.product(dom.cells, repeat=2):
        for p in dom.hom_of(b, b2):
            t = tuple_encode(dom.realizer[b], dom.realizer[b2], p)
            groups.setdefault(t, []).append(
                (b, b2, p, cod.hom_of(zero_map[b], zero_map[b2])))
    return groups


def _extend_two(dom: Eff1Object, cod: Eff1Object, zero_map: dict, one):
    """2-level values by per-visible-input intersection, given the 1-level
    choices; None if some intersection is empty."""
    groups = {}
    for b, b2 in itertools.product(dom.cells, repeat=2):
        for p, r in itertools.product(sorted(dom.hom_of(b, b2)), repeat=2):
            for n in dom.hom2_of(b, b2, p, r):
                t = tuple_encode(dom.realizer[b], dom.realizer[b2], p, r, n)
                groups.setdefault(t, []).append(
                    (b, b2, p, r, n,
                     cod.hom2_of(zero_map[b], zero_map[b2],
                                 one[(b, b2)][p], one[(b, b2)][r])))
    two = {(b, b2, p, r): {}
           for b in dom.cells for b2 in dom.cells
           for p in dom.hom_of(b, b2) for r in dom.hom_of(b, b2)}
    for t, entries in groups.items():
        inter = _intersect_all(h for *_, h in entries)
        if not inter:
            return None
        v = _pick(inter)
        for b, b2, p, r, n, _ in entries:
            two[(b, b2, p, r)][n] = v
    return two


def synthesize_morphism1(dom: Eff1Object, cod: Eff1Object, zero_map: dict,
                         name: str = "",
                         fuel: int = DEFAULT_FUEL) -> Eff1Morphism | None:
    """Extend a cell map to a fully tracked morphism, choosing 1- and
    2-level values by per-visible-input intersection."""
    groups = _one_groups(dom, cod, zero_map)
    one = {(b, b2): {} for b in dom.cells for b2 in dom.cells}
    for t, entries in groups.items():
        inter = _intersect_all(h for *_, h in entries)
        if not inter:
            return None
        v = _pick(inter)
        for b, b2, p, _ in entries:
            one[(b, b2)][p] = v
    two = _extend_two(dom, cod, zero_map, one)
    if two is None:
        return None
    return _build_morphism1(dom, cod, zero_map, one, two, name, fuel)


def morphism_candidates1(dom: Eff1Object, cod: Eff1Object, zero_map: dict,
                         name: str = "", fuel: int = DEFAULT_FUEL,
                         limit: int = 512, truncated: list | None = None):
    """All tracked extensions of a cell map, enumerating the finitely many
    uniform 1-level choices (bounded by ``limit`` combinations; if the
    bound cuts the enumeration a marker is appended to ``truncated``, so a
    caller can degrade a definitive NO to UNKNOWN)."""
    groups = sorted(_one_groups(dom, cod, zero_map).items())
    options = []
    for _t, entries in groups:
        inter = _intersect_all(h for *_, h in entries)
        if not inter:
            return
        options.append(sorted(inter))
    tried = 0
    for combo in itertools.product(*options):
        tried += 1
        if tried > limit:
            if truncated is not None:
                truncated.append(True)
            return
        one = {(b, b2): {} for b in dom.cells for b2 in dom.cells}
        for (_t, entries), v in zip(groups, combo):
            for b, b2, p, _ in entries:
                one[(b, b2)][p] = v
        two = _extend_two(dom, cod, zero_map, one)
        if two is None:
            continue
        m = _build_morphism1(dom, cod, zero_map, one, two, name, fuel)
        if m is not None:
            yield m


def identity_like1(dom: Eff1Object, cod: Eff1Object, name: str = "",
                   fuel: int = DEFAULT_FUEL) -> Eff1Morphism | None:
    """For objects on the same carrier: the morphism fixing cells and
    1-cells, with 2-level values by intersection."""
    if dom.cells != cod.cells:
        return None
    one = {}
    for b, b2 in itertools.product(dom.cells, repeat=2):
        if not dom.hom_of(b, b2) <= cod.hom_of(b, b2):
            return None
        one[(b, b2)] = {p: p for p in dom.hom_of(b, b2)}
    two = _extend_two(dom, cod, {b: b for b in dom.cells}, one)
    if two is None:
        return None
    return _build_morphism1(dom, cod, {b: b for b in dom.cells}, one, two,
                            name, fuel)


def check_morphism1(f: Eff1Morphism, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Verify all five tracking/functoriality conditions exhaustively."""
    dom, cod = f.dom, f.cod

    def ck(code, t, want, label):
        status, v = _run(code, t, fuel)
        if status == "fuel":
            return unknown(f"{label}: fuel exhausted at {t}")
        if status == "div":
            return invalid(f"{label}: diverges at {t}")
        if (v != want) if not isinstance(want, frozenset) else \
                (v not in want):
            return invalid(f"{label}: value {v} wrong at {t}")
        return None

    for b in dom.cells:
        fb = f.zero_map.get(b)
        if fb not in cod.cells:
            return invalid(f"cell image of {b} missing")
        bad = ck(f.tracking0, dom.realizer[b], cod.realizer[fb],
                 "0-tracking")
        if bad is not None:
            return bad
    for b, b2 in itertools.product(dom.cells, repeat=2):
        for p in dom.hom_of(b, b2):
            v = f.one_map[(b, b2)].get(p)
            if v not in cod.hom_of(f.zero_map[b], f.zero_map[b2]):
                return invalid(f"1-cell image of {p} at ({b},{b2}) invalid")
            bad = ck(f.tracking1,
                     tuple_encode(dom.realizer[b], dom.realizer[b2], p), v,
                     "1-tracking")
            if bad is not None:
                return bad
    for b, b2 in itertools.product(dom.cells, repeat=2):
        for p, r in itertools.product(sorted(dom.hom_of(b, b2)), repeat=2):
            for n in dom.hom2_of(b, b2, p, r):
                v = f.two_map[(b, b2, p, r)].get(n)
                if v not in cod.hom2_of(f.zero_map[b], f.zero_map[b2],
                                        f.one_map[(b, b2)][p],
                                        f.one_map[(b, b2)][r]):
                    return invalid(f"2-cell image of {n} invalid")
                bad = ck(f.tracking2,
                         tuple_encode(dom.realizer[b], dom.realizer[b2],
                                      p, r, n), v, "2-tracking")
                if bad is not None:
                    return bad
    for b in dom.cells:
        fb = f.zero_map[b]
        target = cod.hom2_of(fb, fb, f.one_map[(b, b)][_u(dom, b, fuel)],
                             _u(cod, fb, fuel))
        bad = ck(f.funct_id, dom.realizer[b], target, "identity preservation")
        if bad is not None:
            return bad
    for b1, b2, b3 in itertools.product(dom.cells, repeat=3):
        for p in dom.hom_of(b1, b2):
            for r in dom.hom_of(b2, b3):
                t = tuple_encode(dom.realizer[b1], dom.realizer[b2],
                                 dom.realizer[b3], p, r)
                img = f.one_map[(b1, b3)][_comp(dom, b1, b2, b3, p, r, fuel)]
                cimg = _comp(cod, f.zero_map[b1], f.zero_map[b2],
                             f.zero_map[b3], f.one_map[(b1, b2)][p],
                             f.one_map[(b2, b3)][r], fuel)
                target = cod.hom2_of(f.zero_map[b1], f.zero_map[b3],
                                     img, cimg)
                bad = ck(f.funct_comp, t, target, "composite preservation")
                if bad is not None:
                    return bad
    return valid()


def identity1(obj: Eff1Object, fuel: int = DEFAULT_FUEL) -> Eff1Morphism:
    one = {(a, b): {p: p for p in obj.hom_of(a, b)}
           for a in obj.cells for b in obj.cells}
    two = {(a, b, p, r): {n: n for n in obj.hom2_of(a, b, p, r)}
           for a in obj.cells for b in obj.cells
           for p in obj.hom_of(a, b) for r in obj.hom_of(a, b)}
    m = _build_morphism1(obj, obj, {a: a for a in obj.cells}, one, two,
                         name=f"id_{obj.name}", fuel=fuel)
    assert m is not None
    return m


def compose1(g: Eff1Morphism, f: Eff1Morphism, name: str = "",
             fuel: int = DEFAULT_FUEL) -> Eff1Morphism:
    """Value-level composite; the functoriality 2-cells are re-synthesized
    (they always exist for a composite of valid morphisms over finite data
    and are not part of the identity of the morphism)."""
    zero = {b: g.zero_map[f.zero_map[b]] for b in f.dom.cells}
    one, two = {}, {}
    for (b, b2), table in f.one_map.items():
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        one[(b, b2)] = {p: g.one_map[(fb, fb2)][v] for p, v in table.items()}
    for (b, b2, p, r), table in f.two_map.items():
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        fp, fr = f.one_map[(b, b2)][p], f.one_map[(b, b2)][r]
        two[(b, b2, p, r)] = {n: g.two_map[(fb, fb2, fp, fr)][v]
                              for n, v in table.items()}
    m = _build_morphism1(f.dom, g.cod, zero, one, two,
                         name=name or f"{g.name}.{f.name}", fuel=fuel)
    assert m is not None
    return m


def _synthesize_over(p: Eff1Morphism, q: Eff1Morphism, zero: dict,
                     name: str = "",
                     fuel: int = DEFAULT_FUEL) -> Eff1Morphism | None:
    """A morphism s: dom(q) -> dom(p) over the common codomain, with the
    given cell map and p . s = q strictly at every level."""
    X, E = q.dom, p.dom
    groups = {}
    for x, x2 in itertools.product(X.cells, repeat=2):
        ex, ex2 = zero[x], zero[x2]
        for pi in X.hom_of(x, x2):
            t = tuple_encode(X.realizer[x], X.realizer[x2], pi)
            want = q.one_map[(x, x2)][pi]
            sols = frozenset(s for s in E.hom_of(ex, ex2)
                             if p.one_map[(ex, ex2)][s] == want)
            groups.setdefault(t, []).append((x, x2, pi, sols))
    one = {(x, x2): {} for x in X.cells for x2 in X.cells}
    for t, entries in groups.items():
        inter = _intersect_all(h for *_, h in entries)
        if not inter:
            return None
        v = _pick(inter)
        for x, x2, pi, _ in entries:
            one[(x, x2)][pi] = v
    groups = {}
    for x, x2 in itertools.product(X.cells, repeat=2):
        ex, ex2 = zero[x], zero[x2]
        for pi, rho in itertools.product(sorted(X.hom_of(x, x2)), repeat=2):
            spi, srho = one[(x, x2)][pi], one[(x, x2)][rho]
            for n in X.hom2_of(x, x2, pi, rho):
                t = tuple_encode(X.realizer[x], X.realizer[x2], pi, rho, n)
                want = q.two_map[(x, x2, pi, rho)][n]
                sols = frozenset(
                    m for m in E.hom2_of(ex, ex2, spi, srho)
                    if p.two_map[(ex, ex2, spi, srho)][m] == want)
                groups.setdefault(t, []).append((x, x2, pi, rho, n, sols))
    two = {(x, x2, pi, rho): {}
           for x in X.cells for x2 in X.cells
           for pi in X.hom_of(x, x2) for rho in X.hom_of(x, x2)}
    for t, entries in groups.items():
        inter = _intersect_all(h for *_, h in entries)
        if not inter:
            return None
        v = _pick(inter)
        for x, x2, pi, rho, n, _ in entries:
            two[(x, x2, pi, rho)][n] = v
    return _build_morphism1(X, E, zero, one, two, name, fuel)


# --- embedding the groupoid layer -------------------------------------------

def inflate(obj: EffObject, name: str = "") -> Eff1Object:
    """Embed a groupoid-level object: one 2-cell (coded 0) between every
    pair of parallel 1-cells, and every 2-level structure code constant 0."""
    hom2 = {}
    for (a, b), h in obj.hom.items():
        for p, q in itertools.product(sorted(h), repeat=2):
            hom2[(a, b, p, q)] = frozenset({0})
    z = const_code(0)
    return Eff1Object(tuple(obj.cells), dict(obj.realizer),
                      {k: frozenset(v) for k, v in obj.hom.items()}, hom2,
                      obj.unit_code, obj.inv_code, obj.comp_code,
                      z, z, z, z, z, z, z, z, z,
                      name=name or obj.name)


def inflate_morphism(f: EffMorphism, dom1: Eff1Object | None = None,
                     cod1: Eff1Object | None = None,
                     name: str = "") -> Eff1Morphism:
    dom1 = dom1 if dom1 is not None else inflate(f.dom)
    cod1 = cod1 if cod1 is not None else inflate(f.cod)
    two = {}
    for (b, b2), table in f.one_map.items():
        for p, r in itertools.product(sorted(table), repeat=2):
            two[(b, b2, p, r)] = {0: 0}
    z = const_code(0)
    return Eff1Morphism(dom1, cod1, dict(f.zero_map),
                        {k: dict(v) for k, v in f.one_map.items()}, two,
                        f.tracking0, f.tracking1, z, z, z,
                        name=name or f.name)


def terminal_object1() -> Eff1Object:
    return inflate(terminal_object0(), name="1")


def terminal_map1(obj: Eff1Object, name: str = "") -> Eff1Morphism:
    m = synthesize_morphism1(obj, terminal_object1(),
                             {a: "*" for a in obj.cells},
                             name=name or f"{obj.name}->1")
    assert m is not None
    return m


def point1(A: Eff1Object, a, name: str = "",
           fuel: int = DEFAULT_FUEL) -> Eff1Morphism:
    """The point 1 -> A at cell a."""
    T = terminal_object1()
    ua = _u(A, a, fuel)
    one = {("*", "*"): {0: ua}}
    two = {("*", "*", 0, 0): {0: _id2(A, a, a, ua, fuel)}}
    m = _build_morphism1(T, A, {"*": a}, one, two,
                         name=name or f"pt_{a}", fuel=fuel)
    assert m is not None
    return m


# --- fibrations -------------------------------------------------------------

@dataclass
class Fibration1Witness:
    """Codes for the three lifting conditions of a fibration f: B -> A.

    (1) lift0/lift1: <beta b, alpha a, p> with p in A(fb, a) name a cell
        b' (by realizer) and a 1-cell b -> b' over p.
    (2) lift1p/lift2: <beta b, beta b', r, p', n> with r in B(b, b'),
        p' in A(fb, fb') and n: f(r) => p' produce r' over p' and a 2-cell
        m: r => r' with f(m) = n.
    (3) lift2p: <beta b, beta b', p, r, m, n> with m in B2(p, r) and
        n: f(p) => f(r) produces m' in B2(p, r) with f(m') = n.
    """
    lift0: int
    lift1: int
    lift1p: int
    lift2: int
    lift2p: int


def _cond1_instances1(f: Eff1Morphism):
    for b in f.dom.cells:
        for a in f.cod.cells:
            for p in f.cod.hom_of(f.zero_map[b], a):
                yield b, a, p


def _cond1_solutions1(f: Eff1Morphism, b, a, p):
    B = f.dom
    return frozenset(
        (B.realizer[b2], rho)
        for b2 in B.cells if f.zero_map[b2] == a
        for rho in B.hom_of(b, b2)
        if f.one_map[(b, b2)][rho] == p)


def _cond2_instances1(f: Eff1Morphism):
    A, B = f.cod, f.dom
    for b, b2 in itertools.product(B.cells, repeat=2):
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        for rho in B.hom_of(b, b2):
            fr = f.one_map[(b, b2)][rho]
            for p2 in A.hom_of(fb, fb2):
                for n in A.hom2_of(fb, fb2, fr, p2):
                    yield b, b2, rho, p2, n


def _cond2_solutions1(f: Eff1Morphism, b, b2, rho, p2, n):
    B = f.dom
    out = set()
    for rho2 in B.hom_of(b, b2):
        if f.one_map[(b, b2)][rho2] != p2:
            continue
        for m in B.hom2_of(b, b2, rho, rho2):
            if f.two_map[(b, b2, rho, rho2)][m] == n:
                out.add((rho2, m))
    return frozenset(out)


def _cond3_instances1(f: Eff1Morphism):
    A, B = f.cod, f.dom
    for b, b2 in itertools.product(B.cells, repeat=2):
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        for p, r in itertools.product(sorted(B.hom_of(b, b2)), repeat=2):
            if not B.hom2_of(b, b2, p, r):
                continue
            m = min(B.hom2_of(b, b2, p, r))
            fp, fr = f.one_map[(b, b2)][p], f.one_map[(b, b2)][r]
            for n in A.hom2_of(fb, fb2, fp, fr):
                yield b, b2, p, r, m, n


def _cond3_solutions1(f: Eff1Morphism, b, b2, p, r, n):
    B = f.dom
    return frozenset(m2 for m2 in B.hom2_of(b, b2, p, r)
                     if f.two_map[(b, b2, p, r)][m2] == n)


def synthesize_fibration1_witness(
        f: Eff1Morphism,
        fuel: int = DEFAULT_FUEL) -> Fibration1Witness | None:
    B = f.dom
    groups = {}
    for b, a, p in _cond1_instances1(f):
        t = tuple_encode(B.realizer[b], f.cod.realizer[a], p)
        groups.setdefault(t, []).append(_cond1_solutions1(f, b, a, p))
    l0, l1 = {}, {}
    for t, sols in groups.items():
        inter = _intersect_all(sols)
        if not inter:
            return None
        m, rho = _pick(inter)
        l0[t], l1[t] = m, rho
    groups = {}
    for b, b2, rho, p2, n in _cond2_instances1(f):
        t = tuple_encode(B.realizer[b], B.realizer[b2], rho, p2, n)
        groups.setdefault(t, []).append(
            _cond2_solutions1(f, b, b2, rho, p2, n))
    l1p, l2 = {}, {}
    for t, sols in groups.items():
        inter = _intersect_all(sols)
        if not inter:
            return None
        rho2, m = _pick(inter)
        l1p[t], l2[t] = rho2, m
    groups = {}
    for b, b2, p, r, m, n in _cond3_instances1(f):
        t = tuple_encode(B.realizer[b], B.realizer[b2], p, r, m, n)
        groups.setdefault(t, []).append(_cond3_solutions1(f, b, b2, p, r, n))
    l2p = {}
    for t, sols in groups.items():
        inter = _intersect_all(sols)
        if not inter:
            return None
        l2p[t] = _pick(inter)
    return Fibration1Witness(tabulate(l0), tabulate(l1), tabulate(l1p),
                             tabulate(l2), tabulate(l2p))


def check_fibration1(f: Eff1Morphism, w: Fibration1Witness,
                     fuel: int = DEFAULT_FUEL) -> Verdict:
    B = f.dom

    def run(code, t, label):
        status, v = _run(code, t, fuel)
        if status == "fuel":
            return unknown(f"{label}: fuel exhausted at {t}"), None
        if status == "div":
            return invalid(f"{label}: diverges at {t}"), None
        return None, v

    for b, a, p in _cond1_instances1(f):
        t = tuple_encode(B.realizer[b], f.cod.realizer[a], p)
        bad, m = run(w.lift0, t, "lift (1) cell")
        if bad is not None:
            return bad
        bad, rho = run(w.lift1, t, "lift (1) path")
        if bad is not None:
            return bad
        if (m, rho) not in _cond1_solutions1(f, b, a, p):
            return invalid(f"lift (1) wrong at {(b, a, p)}")
    for b, b2, rho, p2, n in _cond2_instances1(f):
        t = tuple_encode(B.realizer[b], B.realizer[b2], rho, p2, n)
        bad, rho2 = run(w.lift1p, t, "lift (2) path")
        if bad is not None:
            return bad
        bad, m = run(w.lift2, t, "lift (2) 2-cell")
        if bad is not None:
            return bad
        if (rho2, m) not in _cond2_solutions1(f, b, b2, rho, p2, n):
            return invalid(f"lift (2) wrong at {(b, b2, rho, p2, n)}")
    for b, b2, p, r, m, n in _cond3_instances1(f):
        t = tuple_encode(B.realizer[b], B.realizer[b2], p, r, m, n)
        bad, m2 = run(w.lift2p, t, "lift (3)")
        if bad is not None:
            return bad
        if m2 not in _cond3_solutions1(f, b, b2, p, r, n):
            return invalid(f"lift (3) wrong at {(b, b2, p, r, n)}")
    return valid()


def fibration1_decide(f: Eff1Morphism) -> Decision:
    w = synthesize_fibration1_witness(f)
    if w is None:
        return Decision(NO, reason="some lifting intersection is empty")
    return Decision(YES, witness=w)


def check1(x, w=None, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Dispatch: object, morphism, or (morphism, witness) fibration."""
    if isinstance(x, Eff1Object):
        return check_object1(x, fuel)
    if isinstance(x, Eff1Morphism):
        if w is not None:
            return check_fibration1(x, w, fuel)
        return check_morphism1(x, fuel)
    raise TypeError(f"cannot check {type(x).__name__}")


# --- finite limits ----------------------------------------------------------

def product1(A: Eff1Object, B: Eff1Object, name: str = "",
             fuel: int = DEFAULT_FUEL):
    """Binary product with componentwise structure.  Returns
    (object, first projection, second projection)."""
    cells = [(a, b) for a in A.cells for b in B.cells]
    realizer = {(a, b): tuple_encode(A.realizer[a], B.realizer[b])
                for (a, b) in cells}
    hom, hom2 = {}, {}
    for x, y in itertools.product(cells, repeat=2):
        h = frozenset(tuple_encode(m, n)
                      for m in A.hom_of(x[0], y[0])
                      for n in B.hom_of(x[1], y[1]))
        hom[(x, y)] = h
        for e, e2 in itertools.product(sorted(h), repeat=2):
            m, n = _dec2(e)
            m2, n2 = _dec2(e2)
            hom2[(x, y, e, e2)] = frozenset(
                tuple_encode(p, q)
                for p in A.hom2_of(x[0], y[0], m, m2)
                for q in B.hom2_of(x[1], y[1], n, n2))

    def unit(x):
        return tuple_encode(_u(A, x[0], fuel), _u(B, x[1], fuel))

    def inv(x, y, e):
        m, n = _dec2(e)
        return tuple_encode(_inv(A, x[0], y[0], m, fuel),
                            _inv(B, x[1], y[1], n, fuel))

    def comp(x, y, z, e, e2):
        m, n = _dec2(e)
        m2, n2 = _dec2(e2)
        return tuple_encode(_comp(A, x[0], y[0], z[0], m, m2, fuel),
                            _comp(B, x[1], y[1], z[1], n, n2, fuel))

    obj = make_object1(cells, realizer, hom, hom2,
                       name=name or f"{A.name}x{B.name}",
                       unit=unit, inv=inv, comp=comp)
    p1 = _projection1(obj, A, 0, fuel)
    p2 = _projection1(obj, B, 1, fuel)
    return obj, p1, p2


def _projection1(pair_obj: Eff1Object, target: Eff1Object, idx: int,
                 fuel: int = DEFAULT_FUEL) -> Eff1Morphism:
    """Componentwise projection from an object whose cells are pairs and
    whose 1- and 2-cells are encoded pairs."""
    zero = {x: x[idx] for x in pair_obj.cells}
    one = {(x, y): {e: _dec2(e)[idx] for e in pair_obj.hom_of(x, y)}
           for x in pair_obj.cells for y in pair_obj.cells}
    two = {(x, y, e, e2): {n: _dec2(n)[idx]
                           for n in pair_obj.hom2_of(x, y, e, e2)}
           for x in pair_obj.cells for y in pair_obj.cells
           for e in pair_obj.hom_of(x, y) for e2 in pair_obj.hom_of(x, y)}
    m = _build_morphism1(pair_obj, target, zero, one, two,
                         name=f"pr{idx}", fuel=fuel)
    assert m is not None
    return m


@dataclass
class Pullback1Bundle:
    obj: Eff1Object
    to_g_dom: Eff1Morphism  # projection D -> C (along which f was pulled)
    to_f_dom: Eff1Morphism  # projection D -> B
    witness: Fibration1Witness | None  # for to_g_dom


def pullback1(f: Eff1Morphism, g: Eff1Morphism, name: str = "",
              want_witness: bool = True,
              fuel: int = DEFAULT_FUEL) -> Pullback1Bundle:
    """Pullback of the fibration f: B -> A along g: C -> A: pairs with
    equal base image at all three levels."""
    B, A, C = f.dom, f.cod, g.dom
    cells = [(c, b) for c in C.cells for b in B.cells
             if g.zero_map[c] == f.zero_map[b]]
    realizer = {(c, b): tuple_encode(C.realizer[c], B.realizer[b])
                for (c, b) in cells}
    hom, hom2 = {}, {}
    for x, y in itertools.product(cells, repeat=2):
        (c, b), (c2, b2) = x, y
        h = frozenset(
            tuple_encode(p, r)
            for p in C.hom_of(c, c2) for r in B.hom_of(b, b2)
            if g.one_map[(c, c2)][p] == f.one_map[(b, b2)][r])
        hom[(x, y)] = h
        for e, e2 in itertools.product(sorted(h), repeat=2):
            p, r = _dec2(e)
            p2, r2 = _dec2(e2)
            hom2[(x, y, e, e2)] = frozenset(
                tuple_encode(n, m)
                for n in C.hom2_of(c, c2, p, p2)
                for m in B.hom2_of(b, b2, r, r2)
                if g.two_map[(c, c2, p, p2)][n] ==
                f.two_map[(b, b2, r, r2)][m])

    def unit(x):
        return tuple_encode(_u(C, x[0], fuel), _u(B, x[1], fuel))

    def inv(x, y, e):
        p, r = _dec2(e)
        return tuple_encode(_inv(C, x[0], y[0], p, fuel),
                            _inv(B, x[1], y[1], r, fuel))

    def comp(x, y, z, e, e2):
        p, r = _dec2(e)
        p2, r2 = _dec2(e2)
        return tuple_encode(_comp(C, x[0], y[0], z[0], p, p2, fuel),
                            _comp(B, x[1], y[1], z[1], r, r2, fuel))

    obj = make_object1(cells, realizer, hom, hom2,
                       name=name or f"{C.name}x_{A.name}{B.name}",
                       unit=unit, inv=inv, comp=comp)
    p1 = _projection1(obj, C, 0, fuel)
    p2 = _projection1(obj, B, 1, fuel)
    w = synthesize_fibration1_witness(p1, fuel) if want_witness else None
    return Pullback1Bundle(obj, p1, p2, w)


def mediate1(pb: Pullback1Bundle, h: Eff1Morphism, k: Eff1Morphism,
             name: str = "") -> Eff1Morphism | None:
    """The cell-level mediating map X -> D with projections h and k."""
    zero = {x: (h.zero_map[x], k.zero_map[x]) for x in h.dom.cells}
    return synthesize_morphism1(h.dom, pb.obj, zero, name=name)


# --- path objects -----------------------------------------------------------

@dataclass
class Path1Bundle:
    obj: Eff1Object          # PA
    r: Eff1Morphism          # A -> PA
    st: Eff1Morphism         # PA -> A x A (or B x_A B fibrewise)
    base: Eff1Object
    witness: Fibration1Witness | None  # for st


def _square_filler(A: Eff1Object, a, a2, mu, fuel: int = DEFAULT_FUEL):
    """The canonical 2-cell  mu . 1_a  =>  1_{a2} . mu  from coherence."""
    t = tuple_encode(A.realizer[a], A.realizer[a2], mu)
    ru = apply(A.coh_runit, t, fuel=fuel)   # mu . 1_a => mu
    lu = apply(A.coh_lunit, t, fuel=fuel)   # 1_{a2} . mu => mu
    lhs = _comp(A, a, a, a2, _u(A, a, fuel), mu, fuel)
    rhs = _comp(A, a, a2, a2, mu, _u(A, a2, fuel), fuel)
    li = apply(A.inv2, tuple_encode(A.realizer[a], A.realizer[a2],
                                    rhs, mu, lu), fuel=fuel)  # mu => rhs
    return apply(A.vcomp, tuple_encode(A.realizer[a], A.realizer[a2],
                                       lhs, mu, rhs, ru, li), fuel=fuel)


def _path_cells_hom(A: Eff1Object, cells, fuel, one_filter=None,
                    two_filter=None):
    hom, hom2 = {}, {}
    for x, y in itertools.product(cells, repeat=2):
        (a, b, rho), (a2, b2, rho2) = x, y
        ent = set()
        for mu in A.hom_of(a, a2):
            for nu in A.hom_of(b, b2):
                if one_filter is not None and \
                        not one_filter(x, y, mu, nu):
                    continue
                lhs = _comp(A, a, b, b2, rho, nu, fuel)    # nu . rho
                rhs = _comp(A, a, a2, b2, mu, rho2, fuel)  # rho2 . mu
                for n in A.hom2_of(a, b2, lhs, rhs):
                    ent.add(tuple_encode(mu, nu, n))
        hom[(x, y)] = frozenset(ent)
        for e, e2 in itertools.product(sorted(hom[(x, y)]), repeat=2):
            mu, nu, _n = _dec3(e)
            mu2, nu2, _n2 = _dec3(e2)
            hom2[(x, y, e, e2)] = frozenset(
                tuple_encode(p, q)
                for p in A.hom2_of(a, a2, mu, mu2)
                for q in A.hom2_of(b, b2, nu, nu2)
                if two_filter is None or two_filter(x, y, p, q))
    return hom, hom2


def _path_bundle(A: Eff1Object, cells, base, base_pair, name, fuel,
                 one_filter=None, two_filter=None,
                 want_witness=True) -> Path1Bundle:
    realizer = {x: tuple_encode(A.realizer[x[0]], A.realizer[x[1]], x[2])
                for x in cells}
    hom, hom2 = _path_cells_hom(A, cells, fuel, one_filter, two_filter)

    def unit(x):
        a, b, _rho = x
        ua, ub = _u(A, a, fuel), _u(A, b, fuel)
        # filler of the square  1_b . rho  =>  rho . 1_a
        t_lhs = _comp(A, x[0], x[1], x[1], x[2], ub, fuel)
        t_rhs = _comp(A, x[0], x[0], x[1], ua, x[2], fuel)
        tr = tuple_encode(A.realizer[a], A.realizer[b], x[2])
        lu = apply(A.coh_lunit, tr, fuel=fuel)  # 1_b . rho => rho
        ru = apply(A.coh_runit, tr, fuel=fuel)  # rho . 1_a => rho
        ri = apply(A.inv2, tuple_encode(A.realizer[a], A.realizer[b],
                                        t_rhs, x[2], ru), fuel=fuel)
        n = apply(A.vcomp, tuple_encode(A.realizer[a], A.realizer[b],
                                        t_lhs, x[2], t_rhs, lu, ri),
                  fuel=fuel)
        return tuple_encode(ua, ub, n)

    def inv(x, y, e):
        # invert componentwise; the filler of the reversed square is picked
        # minimally from its (by definition non-empty for valid input) set
        mu, nu, n = _dec3(e)
        mi = _inv(A, x[0], y[0], mu, fuel)
        ni = _inv(A, x[1], y[1], nu, fuel)
        lhs = _comp(A, y[0], y[1], x[1], y[2], ni, fuel)
        rhs = _comp(A, y[0], x[0], x[1], mi, x[2], fuel)
        fillers = A.hom2_of(y[0], x[1], lhs, rhs)
        if not fillers:
            raise SynthesisFailed(f"no filler for the inverse of {e}")
        return tuple_encode(mi, ni, min(fillers))

    def comp(x, y, z, e, e2):
        mu, nu, n = _dec3(e)
        mu2, nu2, n2 = _dec3(e2)
        mc = _comp(A, x[0], y[0], z[0], mu, mu2, fuel)
        nc = _comp(A, x[1], y[1], z[1], nu, nu2, fuel)
        lhs = _comp(A, x[0], x[1], z[1], x[2], nc, fuel)
        rhs = _comp(A, x[0], z[0], z[1], mc, z[2], fuel)
        fillers = A.hom2_of(x[0], z[1], lhs, rhs)
        if not fillers:
            raise SynthesisFailed(f"no filler for the composite of "
                                  f"{e}, {e2}")
        return tuple_encode(mc, nc, min(fillers))

    obj = make_object1(cells, realizer, hom, hom2, name=name,
                       unit=unit, inv=inv, comp=comp)

    refl = {a: (a, a, _u(A, a, fuel)) for a in A.cells}
    r = _build_reflexivity(A, obj, refl, fuel)
    st = _build_st(obj, base, base_pair, fuel)
    w = synthesize_fibration1_witness(st, fuel) if want_witness else None
    return Path1Bundle(obj, r, st, base, w)


def _build_reflexivity(A: Eff1Object, pobj: Eff1Object, refl,
                       fuel) -> Eff1Morphism:
    one = {(b, b2): {} for b in A.cells for b2 in A.cells}
    for a, a2 in itertools.product(A.cells, repeat=2):
        for mu in A.hom_of(a, a2):
            n = _square_filler(A, a, a2, mu, fuel)
            one[(a, a2)][mu] = tuple_encode(mu, mu, n)
    two = {(a, a2, p, r_): {}
           for a in A.cells for a2 in A.cells
           for p in A.hom_of(a, a2) for r_ in A.hom_of(a, a2)}
    for a, a2 in itertools.product(A.cells, repeat=2):
        for p, r_ in itertools.product(sorted(A.hom_of(a, a2)), repeat=2):
            for m in A.hom2_of(a, a2, p, r_):
                two[(a, a2, p, r_)][m] = tuple_encode(m, m)
    m = _build_morphism1(A, pobj, dict(refl), one, two,
                         name=f"r_{A.name}", fuel=fuel)
    assert m is not None
    return m


def _build_st(pobj: Eff1Object, base: Eff1Object, base_pair,
              fuel) -> Eff1Morphism:
    """Endpoint projection; base_pair maps a path cell to the base cell."""
    zero = {x: base_pair(x) for x in pobj.cells}
    one = {(x, y): {e: tuple_encode(*_dec3(e)[:2])
                    for e in pobj.hom_of(x, y)}
           for x in pobj.cells for y in pobj.cells}
    two = {(x, y, e, e2): {n: n for n in pobj.hom2_of(x, y, e, e2)}
           for x in pobj.cells for y in pobj.cells
           for e in pobj.hom_of(x, y) for e2 in pobj.hom_of(x, y)}
    m = _build_morphism1(pobj, base, zero, one, two, name="(s,t)", fuel=fuel)
    assert m is not None
    return m


def path_object1(A: Eff1Object, fuel: int = DEFAULT_FUEL,
                 want_witness: bool = True) -> Path1Bundle:
    """Cells (a, b, rho); 1-cells <mu, nu, n> with n a 2-cell filling the
    square; 2-cells pairs of 2-cells between the respective components."""
    cells = [(a, b, rho) for a in A.cells for b in A.cells
             for rho in sorted(A.hom_of(a, b))]
    base, _p1, _p2 = product1(A, A, fuel=fuel)
    return _path_bundle(A, cells, base, lambda x: (x[0], x[1]),
                        f"P{A.name}", fuel, want_witness=want_witness)


def fib_path_object1(f: Eff1Morphism, fuel: int = DEFAULT_FUEL,
                     want_witness: bool = True) -> Path1Bundle:
    """Fibrewise paths of a fibration f: B -> A: cells over a single base
    cell, 1- and 2-cells with equal f-image componentwise."""
    B = f.dom
    cells = [(b, b2, rho) for b in B.cells for b2 in B.cells
             if f.zero_map[b] == f.zero_map[b2]
             for rho in sorted(B.hom_of(b, b2))]
    base = pullback1(f, f, want_witness=False, fuel=fuel).obj

    def one_filter(x, y, mu, nu):
        return f.one_map[(x[0], y[0])][mu] == f.one_map[(x[1], y[1])][nu]

    def two_filter(x, y, p, q):
        # the two component 2-cells must have equal f-image
        return _two_image(f, (x[0], y[0]), p) == \
            _two_image(f, (x[1], y[1]), q)

    return _path_bundle(B, cells, base, lambda x: (x[0], x[1]),
                        f"P_{f.name}", fuel, one_filter=one_filter,
                        two_filter=two_filter, want_witness=want_witness)


def _two_image(f: Eff1Morphism, pair, n):
    """f-image of a 2-cell given only its code (the endpoints are recovered
    by searching the finitely many parallel pairs)."""
    b, b2 = pair
    for p in f.dom.hom_of(b, b2):
        for r_ in f.dom.hom_of(b, b2):
            if n in f.dom.hom2_of(b, b2, p, r_):
                return f.two_map[(b, b2, p, r_)][n]
    return None


# --- homotopies -------------------------------------------------------------

@dataclass
class Homotopy1:
    """h1: beta b |-> 1-cell f(b) -> g(b); h2: <beta b, beta b', p> |->
    2-cell  h1(b') . f(p)  =>  g(p) . h1(b)."""
    h1: int
    h2: int


def check_homotopy1(f: Eff1Morphism, g: Eff1Morphism, H: Homotopy1,
                    fuel: int = DEFAULT_FUEL) -> Verdict:
    A, B = f.cod, f.dom
    for b in B.cells:
        status, v = _run(H.h1, B.realizer[b], fuel)
        if status == "fuel":
            return unknown(f"homotopy 1-cell at {b}")
        if status == "div":
            return invalid(f"homotopy diverges at {b}")
        if v not in A.hom_of(f.zero_map[b], g.zero_map[b]):
            return invalid(f"homotopy 1-cell {v} invalid at {b}")
    for b, b2 in itertools.product(B.cells, repeat=2):
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        gb, gb2 = g.zero_map[b], g.zero_map[b2]
        hb = apply(H.h1, B.realizer[b], fuel=fuel)
        hb2 = apply(H.h1, B.realizer[b2], fuel=fuel)
        for p in B.hom_of(b, b2):
            lhs = _comp(A, fb, fb2, gb2, f.one_map[(b, b2)][p], hb2, fuel)
            rhs = _comp(A, fb, gb, gb2, hb, g.one_map[(b, b2)][p], fuel)
            t = tuple_encode(B.realizer[b], B.realizer[b2], p)
            status, v = _run(H.h2, t, fuel)
            if status == "fuel":
                return unknown(f"homotopy filler at {(b, b2, p)}")
            if status == "div":
                return invalid(f"homotopy filler diverges at {(b, b2, p)}")
            if v not in A.hom2_of(fb, gb2, lhs, rhs):
                return invalid(f"homotopy filler {v} invalid "
                               f"at {(b, b2, p)}")
    return valid()


def homotopy1_from_h1(f: Eff1Morphism, g: Eff1Morphism, h1_values: dict,
                      fuel: int = DEFAULT_FUEL) -> Homotopy1 | None:
    """Extend per-realizer connecting 1-cells to a full homotopy by
    synthesizing the square fillers; None if some filler set is empty."""
    A, B = f.cod, f.dom
    for n in B.realizer_image():
        for b in B.cells_with_realizer(n):
            if h1_values[n] not in A.hom_of(f.zero_map[b], g.zero_map[b]):
                return None
    groups = {}
    for b, b2 in itertools.product(B.cells, repeat=2):
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        gb, gb2 = g.zero_map[b], g.zero_map[b2]
        hb = h1_values[B.realizer[b]]
        hb2 = h1_values[B.realizer[b2]]
        for p in B.hom_of(b, b2):
            lhs = _comp(A, fb, fb2, gb2, f.one_map[(b, b2)][p], hb2, fuel)
            rhs = _comp(A, fb, gb, gb2, hb, g.one_map[(b, b2)][p], fuel)
            t = tuple_encode(B.realizer[b], B.realizer[b2], p)
            groups.setdefault(t, []).append(A.hom2_of(fb, gb2, lhs, rhs))
    h2 = {}
    for t, targets in groups.items():
        inter = _intersect_all(targets)
        if not inter:
            return None
        h2[t] = _pick(inter)
    return Homotopy1(tabulate(h1_values), tabulate(h2))


def homotopic1_decide(f: Eff1Morphism, g: Eff1Morphism,
                      fuel: int = DEFAULT_FUEL,
                      budget: int = DEFAULT_BUDGET) -> Decision:
    """Decide existence of a homotopy f ~ g: level-1 choices by
    intersection per visible realizer, then a bounded search over the
    finitely many choices for fillers."""
    A, B = f.cod, f.dom
    reals = B.realizer_image()
    options = []
    for n in reals:
        inter = _intersect_all(A.hom_of(f.zero_map[b], g.zero_map[b])
                               for b in B.cells_with_realizer(n))
        if not inter:
            return Decision(NO,
                            reason=f"no connecting 1-cell at realizer {n}")
        options.append(sorted(inter))
    tried = 0
    for combo in itertools.product(*options):
        tried += 1
        if tried > budget:
            return Decision(UNKNOWN, reason="filler search budget exhausted")
        H = homotopy1_from_h1(f, g, dict(zip(reals, combo)), fuel)
        if H is not None:
            return Decision(YES, witness=H)
    return Decision(NO, reason="no level-1 choice admits square fillers")


def fibrewise_homotopic1_decide(f: Eff1Morphism, g: Eff1Morphism,
                                p: Eff1Morphism,
                                fuel: int = DEFAULT_FUEL) -> Decision:
    """Homotopy over the base of p (requires pf = pg on cells; fibrewise
    paths then reduce to the plain criterion)."""
    for b in f.dom.cells:
        if p.zero_map[f.zero_map[b]] != p.zero_map[g.zero_map[b]]:
            return Decision(NO, reason=f"pf and pg differ at {b}")
    return homotopic1_decide(f, g, fuel)


def two_homotopic_decide(f: Eff1Morphism, g: Eff1Morphism,
                         H: Homotopy1, K: Homotopy1,
                         fuel: int = DEFAULT_FUEL) -> Decision:
    """Decide existence of a modification H ~ K: a uniform 2-cell between
    the connecting 1-cells at every cell."""
    A, B = f.cod, f.dom
    table = {}
    for n in B.realizer_image():
        hv = apply(H.h1, n, fuel=fuel)
        kv = apply(K.h1, n, fuel=fuel)
        inter = _intersect_all(
            A.hom2_of(f.zero_map[b], g.zero_map[b], hv, kv)
            for b in B.cells_with_realizer(n))
        if not inter:
            return Decision(NO, reason=f"no 2-cell {hv} => {kv} "
                                       f"at realizer {n}")
        table[n] = _pick(inter)
    return Decision(YES, witness=tabulate(table))


def identity_homotopy1(f: Eff1Morphism,
                       fuel: int = DEFAULT_FUEL) -> Homotopy1:
    vals = {}
    for b in f.dom.cells:
        vals[f.dom.realizer[b]] = _u(f.cod, f.zero_map[b], fuel)
    H = homotopy1_from_h1(f, f, vals, fuel)
    assert H is not None
    return H


# --- equivalences -----------------------------------------------------------

@dataclass
class Equivalence1Witness:
    inverse: Eff1Morphism
    eta: Homotopy1  # 1 ~ g f on the domain
    eps: Homotopy1  # f g ~ 1 on the codomain


def is_equivalence1_decide(f: Eff1Morphism, fuel: int = DEFAULT_FUEL,
                           budget: int = DEFAULT_BUDGET,
                           first_candidates=()) -> Decision:
    B, A = f.dom, f.cod
    idA, idB = identity1(A, fuel), identity1(B, fuel)

    def flt(a, b):
        # a necessary condition for eps: f(g(a)) must connect to a
        return bool(A.hom_of(f.zero_map[b], a))

    tried, seen, truncated = 0, set(), []
    for zero in itertools.chain(
            iter(first_candidates), _zero_map_candidates(A, B, flt)):
        key = tuple(zero[a] for a in A.cells)
        if key in seen:
            continue
        seen.add(key)
        for g in morphism_candidates1(A, B, zero, name=f"{f.name}^-1",
                                      fuel=fuel, truncated=truncated):
            tried += 1
            if tried > budget:
                return Decision(UNKNOWN, reason="inverse search budget")
            eps = homotopic1_decide(compose1(f, g, fuel=fuel), idA, fuel)
            if eps.status != YES:
                continue
            eta = homotopic1_decide(idB, compose1(g, f, fuel=fuel), fuel)
            if eta.status != YES:
                continue
            return Decision(YES, witness=Equivalence1Witness(
                g, eta.witness, eps.witness))
        tried += 1
        if tried > budget:
            return Decision(UNKNOWN, reason="inverse search budget")
    if truncated:
        return Decision(UNKNOWN, reason="candidate enumeration truncated")
    return Decision(NO, reason="no tracked inverse with both homotopies")


@dataclass
class AdjustedEquivalence:
    """The unit eta' = eta^-1_{gfa} . g(eps^-1_{fa}) . eta_a of an
    adjusted equivalence, with the triangle modifications."""
    eta_prime: Homotopy1
    M: Decision  # eps_f . f(eta') ~ 1_f  (tabulated 2-cells)
    N: Decision  # g(eps) . eta'_g ~ 1_g


def adjequiv(f: Eff1Morphism, g: Eff1Morphism, eta: Homotopy1,
             eps: Homotopy1, fuel: int = DEFAULT_FUEL) -> AdjustedEquivalence:
    """Adjust the unit of an equivalence (f, g, eta, eps) so that both
    triangle laws hold up to modifications."""
    A, B = f.dom, f.cod
    vals = {}
    for a in A.cells:
        na = A.realizer[a]
        e = apply(eta.h1, na, fuel=fuel)                       # a -> gfa
        fa = f.zero_map[a]
        gfa = g.zero_map[fa]
        ev = apply(eps.h1, A.realizer[gfa], fuel=fuel)         # fgfa -> fa
        fgfa = f.zero_map[gfa]
        ei = _inv(B, fgfa, fa, ev, fuel)                       # fa -> fgfa
        gei = g.one_map[(fa, fgfa)][ei]                        # gfa -> gfgfa
        gfgfa = g.zero_map[fgfa]
        e2 = apply(eta.h1, A.realizer[gfa], fuel=fuel)         # gfa -> gfgfa
        e2i = _inv(A, gfa, gfgfa, e2, fuel)                    # gfgfa -> gfa
        c1 = _comp(A, a, gfa, gfgfa, e, gei, fuel)
        v = _comp(A, a, gfgfa, gfa, c1, e2i, fuel)
        prev = vals.setdefault(na, v)
        assert prev == v, "adjusted unit not uniform"
    gf = compose1(g, f, fuel=fuel)
    H = homotopy1_from_h1(identity1(A, fuel), gf, vals, fuel)
    assert H is not None, "adjusted unit admits no fillers"

    m_table, m_reason = {}, ""
    for na in sorted({A.realizer[a] for a in A.cells}):
        targets = []
        for a in A.cells:
            if A.realizer[a] != na:
                continue
            fa = f.zero_map[a]
            gfa = g.zero_map[fa]
            fgfa = f.zero_map[gfa]
            fe = f.one_map[(a, gfa)][vals[na]]                 # fa -> fgfa
            ev = apply(eps.h1, A.realizer[gfa], fuel=fuel)     # fgfa -> fa
            comp_v = _comp(B, fa, fgfa, fa, fe, ev, fuel)
            targets.append(B.hom2_of(fa, fa, comp_v, _u(B, fa, fuel)))
        inter = _intersect_all(targets)
        if not inter:
            m_table, m_reason = None, f"first triangle fails at {na}"
            break
        m_table[na] = _pick(inter)
    M = Decision(YES, witness=tabulate(m_table)) if m_table is not None \
        else Decision(NO, reason=m_reason)

    n_table, n_reason = {}, ""
    for nb in B.realizer_image():
        targets = []
        for b in B.cells:
            if B.realizer[b] != nb:
                continue
            gb = g.zero_map[b]
            fgb = f.zero_map[gb]
            gfgb = g.zero_map[fgb]
            e2 = vals[A.realizer[gb]]                          # gb -> gfgb
            ev = apply(eps.h1, B.realizer[b], fuel=fuel)       # fgb -> b
            gev = g.one_map[(fgb, b)][ev]                      # gfgb -> gb
            comp_v = _comp(A, gb, gfgb, gb, e2, gev, fuel)
            targets.append(A.hom2_of(gb, gb, comp_v, _u(A, gb, fuel)))
        inter = _intersect_all(targets)
        if not inter:
            n_table, n_reason = None, f"second triangle fails at {nb}"
            break
        n_table[nb] = _pick(inter)
    N = Decision(YES, witness=tabulate(n_table)) if n_table is not None \
        else Decision(NO, reason=n_reason)
    return AdjustedEquivalence(H, M, N)


# --- trivial fibrations -----------------------------------------------------

def trivial1_decide(f: Eff1Morphism, fuel: int = DEFAULT_FUEL,
                    budget: int = DEFAULT_BUDGET) -> Decision:
    """Is f a trivial fibration: a strict section s with 1 ~ s f?"""
    B, A = f.dom, f.cod
    idA, idB = identity1(A, fuel), identity1(B, fuel)
    tried = 0
    for zero in _zero_map_candidates(
            A, B, cell_filter=lambda a, b: f.zero_map[b] == a):
        tried += 1
        if tried > budget:
            return Decision(UNKNOWN, reason="section search budget")
        s = _synthesize_over(f, idA, zero, name=f"sect_{f.name}", fuel=fuel)
        if s is None:
            continue
        eta = homotopic1_decide(idB, compose1(s, f, fuel=fuel), fuel)
        if eta.status != YES:
            continue
        return Decision(YES, witness=Equivalence1Witness(
            s, eta.witness, identity_homotopy1(idA, fuel)))
    return Decision(NO, reason="no strict section with a homotopy")


@dataclass
class Section1:
    section: Eff1Morphism
    tau: dict        # a -> lifted 1-cell g(a) -> s(a) over eps_a
    H: Homotopy1     # 1_B ~ s f
    M: int           # tabulated 2-cells witnessing f(H) ~ 1_f


def trivial1_section(f: Eff1Morphism, w: Fibration1Witness,
                     eq: Equivalence1Witness | None = None,
                     fuel: int = DEFAULT_FUEL) -> Section1:
    """Build a strict section of a fibration that is an equivalence, by
    lifting the counit along the fibration structure; raises NotTrivial if
    any step definitively fails."""
    B, A = f.dom, f.cod
    if eq is None:
        d = is_equivalence1_decide(f, fuel)
        if d.status != YES:
            raise NotTrivial(d.reason or "not an equivalence")
        eq = d.witness
    g = eq.inverse
    zero, tau = {}, {}
    for a in A.cells:
        ga = g.zero_map[a]
        ev = apply(eq.eps.h1, A.realizer[a], fuel=fuel)  # f(ga) -> a
        t = tuple_encode(B.realizer[ga], A.realizer[a], ev)
        m = apply(w.lift0, t, fuel=fuel)
        rho = apply(w.lift1, t, fuel=fuel)
        target = None
        for b2 in B.cells:
            if f.zero_map[b2] == a and B.realizer[b2] == m and \
                    rho in B.hom_of(ga, b2) and \
                    f.one_map[(ga, b2)][rho] == ev:
                target = b2
                break
        if target is None:
            raise NotTrivial(f"lift of the counit names no cell at {a}")
        zero[a], tau[a] = target, rho
    s = _synthesize_over(f, identity1(A, fuel), zero,
                         name=f"sect_{f.name}", fuel=fuel)
    if s is None:
        raise NotTrivial("section cell map admits no strict trackings")
    vals = {}
    for b in B.cells:
        nb = B.realizer[b]
        e = apply(eq.eta.h1, nb, fuel=fuel)              # b -> gfb
        fb = f.zero_map[b]
        gfb = g.zero_map[fb]
        v = _comp(B, b, gfb, zero[fb], e, tau[fb], fuel)
        prev = vals.setdefault(nb, v)
        if prev != v:
            raise NotTrivial("homotopy to the section is not uniform")
    H = homotopy1_from_h1(identity1(B, fuel), compose1(s, f, fuel=fuel),
                          vals, fuel)
    if H is None:
        raise NotTrivial("no square fillers for the section homotopy")
    table = {}
    for nb in B.realizer_image():
        targets = []
        for b in B.cells_with_realizer(nb):
            fb = f.zero_map[b]
            sfb = zero[fb]
            fh = f.one_map[(b, sfb)][vals[nb]]           # fb -> fb
            targets.append(A.hom2_of(fb, fb, fh, _u(A, fb, fuel)))
        inter = _intersect_all(targets)
        if not inter:
            raise NotTrivial(f"f(H) is not 2-trivial at realizer {nb}")
        table[nb] = _pick(inter)
    return Section1(s, tau, H, tabulate(table))


# --- exponentials and homotopy pullbacks ------------------------------------

def _morphism_realizer1(m: Eff1Morphism) -> int:
    return tuple_encode(m.tracking0, m.tracking1, m.tracking2)


@dataclass
class HomExponential1:
    dom: Eff1Object   # B (the exponent)
    cod: Eff1Object   # A
    virtual: VirtualObject


def hexp1(A: Eff1Object, B: Eff1Object) -> HomExponential1:
    """The exponential A^B: members are tracked morphisms B -> A realized
    by their three tracking codes (the functoriality terms are property,
    not structure); 1-cells are coded homotopies <h1, h2>."""

    def contains(m, fuel=DEFAULT_FUEL):
        if not isinstance(m, Eff1Morphism) or m.dom is not B or \
                m.cod is not A:
            return NO
        return _verdict_status(check_morphism1(m, fuel))

    def realizer_of(m):
        return _morphism_realizer1(m)

    def hom_status(m1, m2, n, fuel=DEFAULT_FUEL):
        h1, h2 = cantor_unpair(n)
        return _verdict_status(check_homotopy1(m1, m2, Homotopy1(h1, h2),
                                               fuel))

    virt = VirtualObject(f"{A.name}^{B.name}", contains, realizer_of,
                         hom_status)
    return HomExponential1(B, A, virt)


def hexp1_two_status(f, g, H: Homotopy1, K: Homotopy1, n: int,
                     fuel: int = DEFAULT_FUEL) -> str:
    """Membership of a coded modification between two 1-cells of the
    exponential: a table of 2-cells between the connecting 1-cells."""
    A, B = f.cod, f.dom
    for b in B.cells:
        nb = B.realizer[b]
        status, v = _run(n, nb, fuel)
        if status == "fuel":
            return UNKNOWN
        if status == "div":
            return NO
        hv = apply(H.h1, nb, fuel=fuel)
        kv = apply(K.h1, nb, fuel=fuel)
        if v not in A.hom2_of(f.zero_map[b], g.zero_map[b], hv, kv):
            return NO
    return YES


def enumerate_members1(exp: HomExponential1,
                       budget: int = DEFAULT_BUDGET) -> list[Eff1Morphism]:
    out, tried = [], 0
    for zero in _zero_map_candidates(exp.dom, exp.cod):
        tried += 1
        if tried > budget:
            break
        m = synthesize_morphism1(exp.dom, exp.cod, zero)
        if m is not None:
            out.append(m)
    return out


@dataclass
class JExponential1:
    base: Eff1Object
    obj: Eff1Object        # A^J
    diag: Eff1Morphism     # A -> A^J
    ev0: Eff1Morphism      # A^J -> A
    ev1: Eff1Morphism      # A^J -> A


def hexp_J1(A: Eff1Object, fuel: int = DEFAULT_FUEL) -> JExponential1:
    """The exponential by the walking pair: cells are pairs with equal
    realizer; a 1-cell is a common 1-cell with square fillers against the
    identities on both components; a 2-cell is a common 2-cell."""
    cells = [(a0, a1) for a0 in A.cells for a1 in A.cells
             if A.realizer[a0] == A.realizer[a1]]
    realizer = {x: A.realizer[x[0]] for x in cells}
    hom, hom2, fill = {}, {}, {}
    for x, y in itertools.product(cells, repeat=2):
        ent = set()
        for mu in A.hom_of(x[0], y[0]) & A.hom_of(x[1], y[1]):
            fillers = None
            for s, t in ((x[0], y[0]), (x[1], y[1])):
                lhs = _comp(A, s, s, t, _u(A, s, fuel), mu, fuel)
                rhs = _comp(A, s, t, t, mu, _u(A, t, fuel), fuel)
                fs = A.hom2_of(s, t, lhs, rhs)
                fillers = set(fs) if fillers is None else fillers & set(fs)
            for n in fillers:
                ent.add(tuple_encode(mu, n))
            if fillers:
                fill[(x, y, mu)] = min(fillers)
        hom[(x, y)] = frozenset(ent)
        for e, e2 in itertools.product(sorted(hom[(x, y)]), repeat=2):
            mu, _n = _dec2(e)
            mu2, _n2 = _dec2(e2)
            hom2[(x, y, e, e2)] = frozenset(
                frozenset(A.hom2_of(x[0], y[0], mu, mu2)) &
                frozenset(A.hom2_of(x[1], y[1], mu, mu2)))
    def with_fill(x, y, mu, label):
        if (x, y, mu) not in fill:
            raise SynthesisFailed(f"{label}: no common filler for {mu}")
        return tuple_encode(mu, fill[(x, y, mu)])

    obj = make_object1(
        cells, realizer, hom, hom2, name=f"{A.name}^J",
        unit=lambda x: with_fill(x, x, _u(A, x[0], fuel), "unit"),
        inv=lambda x, y, e: with_fill(
            y, x, _inv(A, x[0], y[0], _dec2(e)[0], fuel), "inverse"),
        comp=lambda x, y, z, e, e2: with_fill(
            x, z, _comp(A, x[0], y[0], z[0], _dec2(e)[0], _dec2(e2)[0],
                        fuel), "composition"))

    diag_zero = {a: (a, a) for a in A.cells}
    one = {(a, a2): {} for a in A.cells for a2 in A.cells}
    for a, a2 in itertools.product(A.cells, repeat=2):
        for mu in A.hom_of(a, a2):
            one[(a, a2)][mu] = tuple_encode(
                mu, fill[(diag_zero[a], diag_zero[a2], mu)])
    two = {(a, a2, p, r_): {n: n for n in A.hom2_of(a, a2, p, r_)}
           for a in A.cells for a2 in A.cells
           for p in A.hom_of(a, a2) for r_ in A.hom_of(a, a2)}
    diag = _build_morphism1(A, obj, diag_zero, one, two,
                            name=f"diag_{A.name}", fuel=fuel)
    assert diag is not None
    evs = []
    for idx in (0, 1):
        zero = {x: x[idx] for x in cells}
        one = {(x, y): {e: _dec2(e)[0] for e in obj.hom_of(x, y)}
               for x in cells for y in cells}
        two = {(x, y, e, e2): {n: n for n in obj.hom2_of(x, y, e, e2)}
               for x in cells for y in cells
               for e in obj.hom_of(x, y) for e2 in obj.hom_of(x, y)}
        ev = _build_morphism1(obj, A, zero, one, two, name=f"ev{idx}",
                              fuel=fuel)
        assert ev is not None
        evs.append(ev)
    return JExponential1(A, obj, diag, evs[0], evs[1])


def hexp_J1_morphism(f: Eff1Morphism, expB: JExponential1 | None = None,
                     expA: JExponential1 | None = None) -> Eff1Morphism:
    expB = expB or hexp_J1(f.dom)
    expA = expA or hexp_J1(f.cod)
    m = synthesize_morphism1(
        expB.obj, expA.obj,
        {(b0, b1): (f.zero_map[b0], f.zero_map[b1])
         for (b0, b1) in expB.obj.cells},
        name=f"{f.name}^J")
    assert m is not None
    return m


def homotopy_pullback1_check(f: Eff1Morphism, g: Eff1Morphism,
                             h: Eff1Morphism, k: Eff1Morphism,
                             fuel: int = DEFAULT_FUEL) -> Decision:
    """Is the strictly commuting square (h: D -> C, k: D -> B over f, g) a
    homotopy pullback: the mediating map to the strict pullback is an
    equivalence."""
    for d in h.dom.cells:
        if g.zero_map[h.zero_map[d]] != f.zero_map[k.zero_map[d]]:
            raise ValueError(f"square does not commute at {d}")
    pb = pullback1(f, g, want_witness=False, fuel=fuel)
    med = mediate1(pb, h, k)
    if med is None:
        return Decision(NO, reason="no tracked mediating morphism")
    return is_equivalence1_decide(med, fuel)


def freyd_square1_check(f: Eff1Morphism,
                        fuel: int = DEFAULT_FUEL) -> Decision:
    """The diagonal square of f: B -> A into the J-exponentials is a
    homotopy pullback exactly when f is discrete."""
    expB, expA = hexp_J1(f.dom, fuel), hexp_J1(f.cod, fuel)
    fj = hexp_J1_morphism(f, expB, expA)
    return homotopy_pullback1_check(fj, expA.diag, f, expB.diag, fuel)


# --- dependent products -----------------------------------------------------

@dataclass
class Pi1Bundle:
    f: Eff1Morphism
    g: Eff1Morphism
    obj: Eff1Object
    proj: Eff1Morphism
    sections: dict   # (a, skey) -> strict section of g over the fibre at a
    fibres: dict     # a -> Eff1Object
    incl: dict       # a -> inclusion fibre -> dom(f)
    ev_domain: Pullback1Bundle
    ev: Eff1Morphism
    virtual: VirtualObject


def _section_key1(s: Eff1Morphism):
    return tuple(sorted(s.zero_map.items(), key=repr))


def pi_type1(f: Eff1Morphism, w: Fibration1Witness, g: Eff1Morphism,
             fuel: int = DEFAULT_FUEL) -> Pi1Bundle:
    """The dependent product of g: C -> B along the fibration f: B -> A.

    Cells are pairs (a, section-of-g-over-the-fibre-at-a); 1-cells over a
    base 1-cell are the canonical homotopies between the two transported
    sections; 2-cells are base 2-cells with pointwise tables.
    """
    A, B, C = f.cod, f.dom, g.dom
    fg = compose1(f, g, fuel=fuel)
    wfg = synthesize_fibration1_witness(fg, fuel)
    assert wfg is not None

    fibres, incls = {}, {}
    for a in A.cells:
        pb = pullback1(f, point1(A, a, fuel=fuel), want_witness=False,
                       fuel=fuel)
        fibres[a], incls[a] = pb.obj, pb.to_f_dom

    def lift_cell(E, p, wE, c, a2, pi):
        t = tuple_encode(E.realizer[c], A.realizer[a2], pi)
        m = apply(wE.lift0, t, fuel=fuel)
        rho = apply(wE.lift1, t, fuel=fuel)
        for c2 in E.cells:
            if p.zero_map[c2] == a2 and E.realizer[c2] == m and \
                    rho in E.hom_of(c, c2) and \
                    p.one_map[(c, c2)][rho] == pi:
                return c2
        raise SynthesisFailed(f"lift names no cell over {a2}")

    sections = {}
    for a in A.cells:
        fib, inc = fibres[a], incls[a]
        for zero in _zero_map_candidates(
                fib, C,
                cell_filter=lambda x, c, _i=inc:
                g.zero_map[c] == _i.zero_map[x]):
            s = _synthesize_over(g, inc, zero, fuel=fuel)
            if s is not None:
                sections.setdefault((a, _section_key1(s)), s)

    cells = sorted(sections, key=repr)
    realizer = {k: tuple_encode(A.realizer[k[0]],
                                sections[k].tracking0,
                                sections[k].tracking1,
                                sections[k].tracking2)
                for k in cells}

    transB, transC = {}, {}
    for a in A.cells:
        for a2 in A.cells:
            for pi in A.hom_of(a, a2):
                zero = {}
                for x in fibres[a].cells:
                    b2 = lift_cell(B, f, w, x[1], a2, pi)
                    zero[x] = ("*", b2)
                tm = synthesize_morphism1(fibres[a], fibres[a2], zero,
                                          fuel=fuel)
                assert tm is not None
                transB[(a, a2, pi)] = tm
                transC[(a, a2, pi)] = {
                    c: lift_cell(C, fg, wfg, c, a2, pi)
                    for c in C.cells if fg.zero_map[c] == a}

    hom, hwit = {}, {}
    for k1, k2 in itertools.product(cells, repeat=2):
        (a, _), (a2, _) = k1, k2
        s1, s2 = sections[k1], sections[k2]
        ent = set()
        for pi in A.hom_of(a, a2):
            lzero = {x: transC[(a, a2, pi)][s1.zero_map[x]]
                     for x in fibres[a].cells}
            rzero = {x: s2.zero_map[transB[(a, a2, pi)].zero_map[x]]
                     for x in fibres[a].cells}
            lm = synthesize_morphism1(fibres[a], C, lzero, fuel=fuel)
            rm = synthesize_morphism1(fibres[a], C, rzero, fuel=fuel)
            if lm is None or rm is None:
                continue
            d = homotopic1_decide(lm, rm, fuel)
            if d.status == YES:
                e = tuple_encode(pi, tuple_encode(d.witness.h1,
                                                  d.witness.h2))
                ent.add(e)
                hwit[(k1, k2, pi)] = (lm, rm, d.witness)
        hom[(k1, k2)] = frozenset(ent)
    hom2 = {}
    for (k1, k2), h in hom.items():
        fib = fibres[k1[0]]
        for e, e2 in itertools.product(sorted(h), repeat=2):
            pi, _ = _dec2(e)
            pi2, _ = _dec2(e2)
            lm, rm, H = hwit[(k1, k2, pi)]
            lm2, rm2, H2 = hwit[(k1, k2, pi2)]
            ent = set()
            same_ends = (lm.zero_map == lm2.zero_map and
                         rm.zero_map == rm2.zero_map)
            table = None
            if same_ends:
                table = {}
                for n_f in fib.realizer_image():
                    inter = _intersect_all(
                        C.hom2_of(lm.zero_map[x], rm.zero_map[x],
                                  apply(H.h1, n_f, fuel=fuel),
                                  apply(H2.h1, n_f, fuel=fuel))
                        for x in fib.cells_with_realizer(n_f))
                    if not inter:
                        table = None
                        break
                    table[n_f] = _pick(inter)
            if table is not None:
                m_code = tabulate(table)
                for n in A.hom2_of(k1[0], k2[0], pi, pi2):
                    ent.add(tuple_encode(n, m_code))
            hom2[(k1, k2, e, e2)] = frozenset(ent)
    obj = make_object1(cells, realizer, hom, hom2,
                       name=f"Pi_{f.name}({g.name})")

    proj_one = {(k1, k2): {e: _dec2(e)[0] for e in obj.hom_of(k1, k2)}
                for k1 in cells for k2 in cells}
    proj_two = {(k1, k2, e, e2): {n: _dec2(n)[0]
                                  for n in obj.hom2_of(k1, k2, e, e2)}
                for k1 in cells for k2 in cells
                for e in obj.hom_of(k1, k2) for e2 in obj.hom_of(k1, k2)}
    proj = _build_morphism1(obj, A, {k: k[0] for k in cells},
                            proj_one, proj_two, name="Pi->base", fuel=fuel)
    assert proj is not None

    ev_domain = pullback1(f, proj, want_witness=False, fuel=fuel)
    ev_zero = {(k, b): sections[k].zero_map[("*", b)]
               for (k, b) in ev_domain.obj.cells}
    ev = synthesize_morphism1(ev_domain.obj, C, ev_zero, name="ev",
                              fuel=fuel)
    assert ev is not None

    def contains(member, fuel=DEFAULT_FUEL):
        a, s = member
        if a not in A.cells or not isinstance(s, Eff1Morphism):
            return NO
        fib, inc = fibres[a], incls[a]
        if s.dom is not fib and s.dom.cells != fib.cells:
            return NO
        for x in fib.cells:
            if g.zero_map[s.zero_map[x]] != inc.zero_map[x]:
                return NO
        return _verdict_status(check_morphism1(s, fuel))

    def realizer_of(member):
        a, s = member
        return tuple_encode(A.realizer[a], s.tracking0, s.tracking1,
                            s.tracking2)

    def hom_status(m1, m2, n, fuel=DEFAULT_FUEL):
        k1 = (m1[0], _section_key1(m1[1]))
        k2 = (m2[0], _section_key1(m2[1]))
        return YES if n in obj.hom.get((k1, k2), frozenset()) else NO

    virt = VirtualObject(obj.name, contains, realizer_of, hom_status,
                         finite_fiber=lambda a: fibres[a])
    return Pi1Bundle(f, g, obj, proj, sections, fibres, incls,
                     ev_domain, ev, virt)


def pi_transpose1(pi: Pi1Bundle, h: Eff1Morphism, pbW: Pullback1Bundle,
                  m: Eff1Morphism, name: str = "") -> Eff1Morphism | None:
    """Transpose a morphism W x_A B -> C over the base to W -> Pi."""
    W = h.dom
    zero = {}
    for wc in W.cells:
        a = h.zero_map[wc]
        skey = tuple(sorted(
            ((("*", b), m.zero_map[(w2, b)])
             for (w2, b) in pbW.obj.cells if w2 == wc), key=repr))
        key = (a, skey)
        if key not in pi.sections:
            return None
        zero[wc] = key
    return synthesize_morphism1(W, pi.obj, zero, name=name)


def pi_transpose1_round_trip(pi: Pi1Bundle, h: Eff1Morphism,
                             pbW: Pullback1Bundle, m: Eff1Morphism,
                             M: Eff1Morphism,
                             fuel: int = DEFAULT_FUEL) -> Decision:
    """ev . (M x 1) against m, fibrewise over g."""
    lift_zero = {(wc, b): (M.zero_map[wc], b)
                 for (wc, b) in pbW.obj.cells}
    lift = synthesize_morphism1(pbW.obj, pi.ev_domain.obj, lift_zero,
                                fuel=fuel)
    if lift is None:
        return Decision(NO, reason="no tracked comparison over the base")
    return fibrewise_homotopic1_decide(compose1(pi.ev, lift, fuel=fuel),
                                       m, pi.g, fuel)


# --- truncations and hlevels ------------------------------------------------

@dataclass
class Truncation1Bundle:
    g: Eff1Morphism   # B -> C
    h: Eff1Morphism   # C -> A  (the truncated fibration)
    witness: Fibration1Witness | None


def truncate1(f: Eff1Morphism, n: int,
              fuel: int = DEFAULT_FUEL) -> Truncation1Bundle:
    """The n-truncation of f for n in {-1, 0}: same carrier, hom-sets
    replaced by the base's at the levels above n."""
    assert n in (-1, 0), "only (-1)- and 0-truncation are materialized"
    B, A = f.dom, f.cod
    fz = f.zero_map
    pairs = list(itertools.product(B.cells, repeat=2))
    if n == -1:
        hom = {(b, b2): A.hom_of(fz[b], fz[b2]) for b, b2 in pairs}
        hom2 = {(b, b2, p, q): A.hom2_of(fz[b], fz[b2], p, q)
                for b, b2 in pairs
                for p in hom[(b, b2)] for q in hom[(b, b2)]}
        C = make_object1(
            B.cells, B.realizer, hom, hom2, name=f"prop_{B.name}",
            unit=lambda b: _u(A, fz[b], fuel),
            inv=lambda b, b2, p: _inv(A, fz[b], fz[b2], p, fuel),
            comp=lambda b, b2, b3, p, r:
                _comp(A, fz[b], fz[b2], fz[b3], p, r, fuel))
        g_one = {(b, b2): {p: f.one_map[(b, b2)][p]
                           for p in B.hom_of(b, b2)} for b, b2 in pairs}
        g_two = {(b, b2, p, r): {m: f.two_map[(b, b2, p, r)][m]
                                 for m in B.hom2_of(b, b2, p, r)}
                 for b, b2 in pairs
                 for p in B.hom_of(b, b2) for r in B.hom_of(b, b2)}
        h_one = {(b, b2): {p: p for p in C.hom_of(b, b2)}
                 for b, b2 in pairs}
        h_two = {(b, b2, p, q): {m: m for m in C.hom2_of(b, b2, p, q)}
                 for b, b2 in pairs
                 for p in C.hom_of(b, b2) for q in C.hom_of(b, b2)}
    else:
        hom = {(b, b2): B.hom_of(b, b2) for b, b2 in pairs}
        hom2 = {(b, b2, p, q): A.hom2_of(fz[b], fz[b2],
                                         f.one_map[(b, b2)][p],
                                         f.one_map[(b, b2)][q])
                for b, b2 in pairs
                for p in hom[(b, b2)] for q in hom[(b, b2)]}
        C = make_object1(
            B.cells, B.realizer, hom, hom2, name=f"set_{B.name}",
            unit=lambda b: _u(B, b, fuel),
            inv=lambda b, b2, p: _inv(B, b, b2, p, fuel),
            comp=lambda b, b2, b3, p, r: _comp(B, b, b2, b3, p, r, fuel))
        g_one = {(b, b2): {p: p for p in B.hom_of(b, b2)}
                 for b, b2 in pairs}
        g_two = {(b, b2, p, r): {m: f.two_map[(b, b2, p, r)][m]
                                 for m in B.hom2_of(b, b2, p, r)}
                 for b, b2 in pairs
                 for p in B.hom_of(b, b2) for r in B.hom_of(b, b2)}
        h_one = {(b, b2): {p: f.one_map[(b, b2)][p]
                           for p in C.hom_of(b, b2)} for b, b2 in pairs}
        h_two = {(b, b2, p, q): {m: m for m in C.hom2_of(b, b2, p, q)}
                 for b, b2 in pairs
                 for p in C.hom_of(b, b2) for q in C.hom_of(b, b2)}
    g = _build_morphism1(B, C, {b: b for b in B.cells}, g_one, g_two,
                         name=f"trunc{n}_{f.name}", fuel=fuel)
    h = _build_morphism1(C, A, {b: fz[b] for b in B.cells}, h_one, h_two,
                         name=f"{f.name}@{n}", fuel=fuel)
    assert g is not None and h is not None
    return Truncation1Bundle(g, h, synthesize_fibration1_witness(h, fuel))


def truncation1_compare(tr: Truncation1Bundle, g2: Eff1Morphism,
                        h2: Eff1Morphism, fuel: int = DEFAULT_FUEL):
    """Compare with another factorisation g2/h2 through the universal
    cell-level map, fibrewise over h2."""
    d = synthesize_morphism1(tr.g.cod, h2.dom,
                             {b: g2.zero_map[b] for b in tr.g.cod.cells},
                             fuel=fuel)
    if d is None:
        return None, Decision(NO, reason="no comparison morphism")
    law = fibrewise_homotopic1_decide(compose1(d, tr.g, fuel=fuel), g2,
                                      h2, fuel)
    return d, law


def _identity_equivalence1(g: Eff1Morphism, fuel: int = DEFAULT_FUEL,
                           budget: int = DEFAULT_BUDGET) -> Decision:
    """Decide whether g (with equal carriers) is an equivalence, trying the
    identity cell map first."""
    B, C = g.dom, g.cod
    for d0 in (identity_like1(C, B, fuel=fuel),
               synthesize_morphism1(C, B, {c: c for c in C.cells},
                                    fuel=fuel)):
        if d0 is None:
            continue
        e1 = homotopic1_decide(identity1(B, fuel),
                               compose1(d0, g, fuel=fuel), fuel)
        e2 = homotopic1_decide(compose1(g, d0, fuel=fuel),
                               identity1(C, fuel), fuel)
        if e1.status == YES and e2.status == YES:
            return Decision(YES, witness=Equivalence1Witness(
                d0, e1.witness, e2.witness))
    return is_equivalence1_decide(g, fuel, budget)


def hlevel1_check(f: Eff1Morphism, n: int, fuel: int = DEFAULT_FUEL,
                  depth_budget: int = DEFAULT_DEPTH_BUDGET) -> HlevelVerdict:
    """Is f a fibration of n-types?  Level -2 is triviality; levels -1 and
    0 are decided through the truncation (f has hlevel n exactly when the
    comparison into its n-truncation is an equivalence); level n+1 recurses
    once on the fibrewise path object."""
    if n < -2:
        raise ValueError("levels start at -2")
    if n == -2:
        d = trivial1_decide(f, fuel)
        status = {YES: VERIFIED, NO: REFUTED, UNKNOWN: UNKNOWN}[d.status]
        return HlevelVerdict(n, status, reason=d.reason)
    if n in (-1, 0):
        tr = truncate1(f, n, fuel)
        d = _identity_equivalence1(tr.g, fuel)
        status = {YES: VERIFIED, NO: REFUTED, UNKNOWN: UNKNOWN}[d.status]
        return HlevelVerdict(n, status, reason=d.reason)
    bundle = fib_path_object1(f, fuel, want_witness=False)
    if len(bundle.obj.cells) > depth_budget:
        return HlevelVerdict(
            n, UNKNOWN,
            reason=f"path object has {len(bundle.obj.cells)} cells")
    sub = hlevel1_check(bundle.st, n - 1, fuel, depth_budget)
    return HlevelVerdict(n, sub.status, [bundle] + sub.chain, sub.reason)


# --- discreteness -----------------------------------------------------------

def is_standard_discrete1(f: Eff1Morphism) -> bool:
    """At most one cell per (fibre, realizer) pair."""
    seen = {}
    for b in f.dom.cells:
        k = (f.zero_map[b], f.dom.realizer[b])
        if seen.setdefault(k, b) != b:
            return False
    return True


@dataclass
class PhiPsi:
    """phi: realizer |-> vertical 1-cell between any two cells of the same
    fibre sharing it; psi: <n, m, p> |-> 2-cell filling the naturality
    square of phi against any 1-cell p."""
    phi: int
    psi: int


def _realizer_twins(f: Eff1Morphism):
    B = f.dom
    for b0, b1 in itertools.product(B.cells, repeat=2):
        if f.zero_map[b0] == f.zero_map[b1] and \
                B.realizer[b0] == B.realizer[b1]:
            yield b0, b1


def discrete1_phi_psi(f: Eff1Morphism,
                      fuel: int = DEFAULT_FUEL) -> Decision:
    """The computable-transport criterion for discreteness."""
    B, A = f.dom, f.cod
    for b0, b1 in itertools.product(B.cells, repeat=2):
        h = sorted(B.hom_of(b0, b1))
        for p, q in itertools.combinations(h, 2):
            if f.one_map[(b0, b1)][p] == f.one_map[(b0, b1)][q] \
                    and not B.hom2_of(b0, b1, p, q):
                return Decision(
                    NO, reason=f"parallel lifts {p}, {q} from {b0} to {b1} "
                               "are not two-connected")
    groups = {}
    for b0, b1 in _realizer_twins(f):
        a = f.zero_map[b0]
        ua = _u(A, a, fuel)
        sols = frozenset(p for p in B.hom_of(b0, b1)
                         if f.one_map[(b0, b1)][p] == ua)
        groups.setdefault(B.realizer[b0], []).append(sols)
    phi_t = {}
    for t, targets in groups.items():
        inter = _intersect_all(targets)
        if not inter:
            return Decision(
                NO, reason=f"no uniform vertical 1-cell at realizer {t}")
        phi_t[t] = _pick(inter)
    groups = {}
    for b0, b1 in _realizer_twins(f):
        for c0, c1 in _realizer_twins(f):
            nn, mm = B.realizer[b0], B.realizer[c0]
            for p in B.hom_of(b0, c0) & B.hom_of(b1, c1):
                lhs = _comp(B, b0, c0, c1, p, phi_t[mm], fuel)
                rhs = _comp(B, b0, b1, c1, phi_t[nn], p, fuel)
                t = tuple_encode(nn, mm, p)
                groups.setdefault(t, []).append(
                    B.hom2_of(b0, c1, lhs, rhs))
    psi_t = {}
    for t, targets in groups.items():
        inter = _intersect_all(targets)
        if not inter:
            return Decision(NO, reason=f"naturality square unfillable "
                                       f"at input {t}")
        psi_t[t] = _pick(inter)
    return Decision(YES, witness=PhiPsi(tabulate(phi_t), tabulate(psi_t)))


@dataclass
class Discrete1NormalForm:
    phi_psi: PhiPsi
    quotient: Eff1Object
    standard: Eff1Morphism    # quotient -> base, standard discrete
    inclusion: Eff1Morphism   # quotient -> total
    retraction: Eff1Morphism  # total -> quotient
    comparison: Decision      # inclusion . retraction ~ 1


def discrete1_decide(f: Eff1Morphism,
                     fuel: int = DEFAULT_FUEL) -> Decision:
    """Decide discreteness and, when it holds, produce the equivalent
    standard discrete fibration obtained by collapsing realizer twins."""
    d = discrete1_phi_psi(f, fuel)
    if d.status != YES:
        return d
    B = f.dom
    reps = {}
    for b in B.cells:
        reps.setdefault((f.zero_map[b], B.realizer[b]), b)
    qcells = [b for b in B.cells
              if reps[(f.zero_map[b], B.realizer[b])] == b]
    hom = {(x, y): B.hom_of(x, y) for x in qcells for y in qcells}
    hom2 = {(x, y, p, q): B.hom2_of(x, y, p, q)
            for x in qcells for y in qcells
            for p in hom[(x, y)] for q in hom[(x, y)]}
    Q = make_object1(qcells, {b: B.realizer[b] for b in qcells}, hom, hom2,
                     name=f"std_{B.name}",
                     unit=lambda b: _u(B, b, fuel),
                     inv=lambda b, b2, p: _inv(B, b, b2, p, fuel),
                     comp=lambda b, b2, b3, p, r:
                         _comp(B, b, b2, b3, p, r, fuel))
    incl_one = {(x, y): {p: p for p in Q.hom_of(x, y)}
                for x in qcells for y in qcells}
    incl_two = {(x, y, p, q): {m: m for m in Q.hom2_of(x, y, p, q)}
                for x in qcells for y in qcells
                for p in Q.hom_of(x, y) for q in Q.hom_of(x, y)}
    incl = _build_morphism1(Q, B, {b: b for b in qcells},
                            incl_one, incl_two, name="incl", fuel=fuel)
    assert incl is not None
    retr = synthesize_morphism1(
        B, Q, {b: reps[(f.zero_map[b], B.realizer[b])] for b in B.cells},
        name="retr", fuel=fuel)
    if retr is None:
        return Decision(UNKNOWN,
                        reason="no tracked retraction onto the quotient")
    comparison = homotopic1_decide(compose1(incl, retr, fuel=fuel),
                                   identity1(B, fuel), fuel)
    standard = compose1(f, incl, fuel=fuel)
    nf = Discrete1NormalForm(d.witness, Q, standard, incl, retr, comparison)
    if comparison.status != YES:
        return Decision(UNKNOWN, witness=nf,
                        reason="quotient comparison undecided")
    return Decision(YES, witness=nf)


# --- the universe of sets ---------------------------------------------------

U_SET_CAP = 6  # carrier bound for membership in the finite universe model


def disc_object(carrier, hom, name: str = "") -> EffObject:
    """An object of the category of discrete sets: natural-number cells
    realized by themselves."""
    return make_object(tuple(carrier), {a: a for a in carrier}, hom,
                       name=name)


def u_set_contains(X, fuel: int = DEFAULT_FUEL) -> str:
    if not isinstance(X, EffObject) or len(X.cells) > U_SET_CAP:
        return NO
    for c in X.cells:
        if not isinstance(c, int) or X.realizer[c] != c:
            return NO
    return _verdict_status(check_object0(X, fuel))


def u_set_realizer(_X) -> int:
    return 0


def u_set_hom_status(X, Y, quad, fuel: int = DEFAULT_FUEL) -> str:
    """A 1-cell of the universe is a quadruple (fwd, bwd, H, K) exhibiting
    an equivalence of discrete sets."""
    fwd, bwd, H, K = quad
    if fwd.dom is not X or fwd.cod is not Y or \
            bwd.dom is not Y or bwd.cod is not X:
        return NO
    for m in (fwd, bwd):
        s = _verdict_status(check_morphism0(m, fuel))
        if s != YES:
            return s
    for mor1, mor2, hh in ((identity0(X), compose0(bwd, fwd), H),
                           (compose0(fwd, bwd), identity0(Y), K)):
        s = _verdict_status(check_homotopy0(mor1, mor2, hh, fuel))
        if s != YES:
            return s
    return YES


def u_set_two_status(quad1, quad2, U, fuel: int = DEFAULT_FUEL) -> str:
    """A 2-cell between two universe 1-cells is a homotopy between the
    forward maps."""
    return _verdict_status(check_homotopy0(quad1[0], quad2[0], U, fuel))


def u_set_virtual() -> VirtualObject:
    return VirtualObject("U_set", u_set_contains,
                         lambda _x: 0, u_set_hom_status)


def _set_normalized(f: Eff1Morphism) -> bool:
    """Normal form for classification: cells (a, n) with f = fst and
    realizer = snd, 2-cells inherited from the base."""
    B, A = f.dom, f.cod
    for b in B.cells:
        if not (isinstance(b, tuple) and len(b) == 2):
            return False
        if f.zero_map[b] != b[0] or B.realizer[b] != b[1]:
            return False
    for (b, b2, p, q), h in B.hom2.items():
        fp = f.one_map[(b, b2)][p]
        fq = f.one_map[(b, b2)][q]
        if set(h) != set(A.hom2_of(f.zero_map[b], f.zero_map[b2], fp, fq)):
            return False
    return True


def _fibre_disc(f: Eff1Morphism, a, fuel: int = DEFAULT_FUEL) -> EffObject:
    B = f.dom
    ns = [b[1] for b in B.cells if b[0] == a]
    ua = _u(f.cod, a, fuel)
    hom = {(n, n2): frozenset(
        p for p in B.hom_of((a, n), (a, n2))
        if f.one_map[((a, n), (a, n2))][p] == ua)
        for n in ns for n2 in ns}
    return disc_object(ns, hom, name=f"fib_{a}")


@dataclass
class SetClassifyingMap:
    zero: dict   # a -> EffObject in the universe
    one: dict    # (a, a2, pi) -> (fwd, bwd, H, K)
    two: dict    # (a, a2, pi, pi2, n) -> Homotopy between forward maps


@dataclass
class SetClassification:
    k: SetClassifyingMap
    recovered: Eff1Object
    proj: Eff1Morphism
    comparison: Decision


def classify_discrete_set(f: Eff1Morphism, w: Fibration1Witness,
                          fuel: int = DEFAULT_FUEL) -> SetClassification:
    """Classifying map of a normalized discrete fibration of sets, the
    recovered total space, and the comparison equivalence."""
    if not _set_normalized(f):
        raise NotNormalized("expected cells (a, n) with f = fst, "
                            "realizer = snd and base 2-cells")
    A, B = f.cod, f.dom
    zero = {a: _fibre_disc(f, a, fuel) for a in A.cells}

    def transport_map(a, a2, pi):
        out = {}
        for n in zero[a].cells:
            t = tuple_encode(n, A.realizer[a2], pi)
            m = apply(w.lift0, t, fuel=fuel)
            rho = apply(w.lift1, t, fuel=fuel)
            tgt = None
            for n2 in zero[a2].cells:
                if n2 == m and rho in B.hom_of((a, n), (a2, n2)) and \
                        f.one_map[((a, n), (a2, n2))][rho] == pi:
                    tgt = n2
                    break
            assert tgt is not None, "transport lift names no fibre element"
            out[n] = tgt
        return out

    one, two = {}, {}
    for a, a2 in itertools.product(A.cells, repeat=2):
        for pi in A.hom_of(a, a2):
            fwd = synthesize_morphism0(zero[a], zero[a2],
                                       transport_map(a, a2, pi))
            bwd = synthesize_morphism0(
                zero[a2], zero[a],
                transport_map(a2, a, _inv(A, a, a2, pi, fuel)))
            assert fwd is not None and bwd is not None
            H = homotopic_decide0(identity0(zero[a]), compose0(bwd, fwd))
            K = homotopic_decide0(compose0(fwd, bwd), identity0(zero[a2]))
            assert H.status == YES and K.status == YES
            one[(a, a2, pi)] = (fwd, bwd, H.witness, K.witness)
    for a, a2 in itertools.product(A.cells, repeat=2):
        for pi in A.hom_of(a, a2):
            for pi2 in A.hom_of(a, a2):
                for n in A.hom2_of(a, a2, pi, pi2):
                    U = homotopic_decide0(one[(a, a2, pi)][0],
                                          one[(a, a2, pi2)][0])
                    assert U.status == YES
                    two[(a, a2, pi, pi2, n)] = U.witness

    cells = [(a, n) for a in A.cells for n in zero[a].cells]
    realizer = {(a, n): n for (a, n) in cells}
    hom, hom2 = {}, {}
    for x, y in itertools.product(cells, repeat=2):
        (a, n), (a2, n2) = x, y
        h = set()
        for pi in A.hom_of(a, a2):
            fwd = one[(a, a2, pi)][0]
            for sg in zero[a2].hom_of(fwd.zero_map[n], n2):
                h.add(tuple_encode(pi, sg))
        hom[(x, y)] = frozenset(h)
        for e, e2 in itertools.product(sorted(hom[(x, y)]), repeat=2):
            pi, _sg = _dec2(e)
            pi2, _sg2 = _dec2(e2)
            hom2[(x, y, e, e2)] = frozenset(
                tuple_encode(m, 0) for m in A.hom2_of(a, a2, pi, pi2))
    recovered = make_object1(cells, realizer, hom, hom2,
                             name=f"rec_{B.name}")
    proj_one = {(x, y): {e: _dec2(e)[0] for e in recovered.hom_of(x, y)}
                for x in cells for y in cells}
    proj_two = {(x, y, e, e2): {nn: _dec2(nn)[0]
                                for nn in recovered.hom2_of(x, y, e, e2)}
                for x in cells for y in cells
                for e in recovered.hom_of(x, y)
                for e2 in recovered.hom_of(x, y)}
    proj = _build_morphism1(recovered, A, {x: x[0] for x in cells},
                            proj_one, proj_two, name="rec->base", fuel=fuel)
    assert proj is not None
    cmp_m = synthesize_morphism1(B, recovered, {b: b for b in B.cells},
                                 fuel=fuel)
    if cmp_m is None:
        comparison = Decision(NO, reason="no tracked comparison morphism")
    else:
        comparison = is_equivalence1_decide(cmp_m, fuel)
    return SetClassification(SetClassifyingMap(zero, one, two),
                             recovered, proj, comparison)


def univalence_check_set(wm: Eff1Morphism, pf: Eff1Morphism,
                         pg: Eff1Morphism, fuel: int = DEFAULT_FUEL):
    """From a fibrewise equivalence wm between two normalized discrete set
    fibrations, extract per-base-cell universe 1-cells and check that the
    induced map agrees with wm fibrewise.  Returns (quadruples, Decision).
    """
    A = pf.cod
    H = {}
    for a in A.cells:
        Xa, Ya = _fibre_disc(pf, a, fuel), _fibre_disc(pg, a, fuel)
        fwd0 = {n: wm.zero_map[(a, n)][1] for n in Xa.cells}
        fwd = synthesize_morphism0(Xa, Ya, fwd0)
        if fwd is None:
            return H, Decision(NO, reason=f"fibre map not tracked at {a}")
        d = is_equivalence_decide0(fwd, fuel)
        if d.status != YES:
            return H, Decision(d.status,
                               reason=f"fibre map not invertible at {a}")
        quad = (fwd, d.witness.inverse, d.witness.eta, d.witness.eps)
        if u_set_hom_status(Xa, Ya, quad, fuel) != YES:
            return H, Decision(NO, reason=f"universe 1-cell invalid at {a}")
        H[a] = quad
    induced = synthesize_morphism1(
        pf.dom, pg.dom,
        {b: (b[0], H[b[0]][0].zero_map[b[1]]) for b in pf.dom.cells},
        fuel=fuel)
    if induced is None:
        return H, Decision(NO, reason="induced morphism not tracked")
    return H, fibrewise_homotopic1_decide(induced, wm, pg, fuel)


# --- resizing ---------------------------------------------------------------

@dataclass
class Resize1Bundle:
    obj: Eff1Object
    proj: Eff1Morphism      # small model -> base
    to_small: Eff1Morphism  # B -> small model
    to_total: Eff1Morphism  # small model -> B
    laws: list              # fibrewise round trips


def resize1(f: Eff1Morphism, fuel: int = DEFAULT_FUEL) -> Resize1Bundle:
    """Replace a propositional fibration by the equivalent small model on
    pairs (base cell, realizer), with hom-sets borrowed from the base."""
    B, A = f.dom, f.cod
    fz = f.zero_map
    cells, choice = [], {}
    for b in B.cells:
        k = (fz[b], B.realizer[b])
        if k not in choice:
            choice[k] = b
            cells.append(k)
    hom = {(x, y): A.hom_of(x[0], y[0]) for x in cells for y in cells}
    hom2 = {(x, y, p, q): A.hom2_of(x[0], y[0], p, q)
            for x in cells for y in cells
            for p in hom[(x, y)] for q in hom[(x, y)]}
    C = make_object1(cells, {x: x[1] for x in cells}, hom, hom2,
                     name=f"rs_{B.name}",
                     unit=lambda x: _u(A, x[0], fuel),
                     inv=lambda x, y, p: _inv(A, x[0], y[0], p, fuel),
                     comp=lambda x, y, z, p, r:
                         _comp(A, x[0], y[0], z[0], p, r, fuel))
    proj_one = {(x, y): {p: p for p in C.hom_of(x, y)}
                for x in cells for y in cells}
    proj_two = {(x, y, p, q): {m: m for m in C.hom2_of(x, y, p, q)}
                for x in cells for y in cells
                for p in C.hom_of(x, y) for q in C.hom_of(x, y)}
    proj = _build_morphism1(C, A, {x: x[0] for x in cells},
                            proj_one, proj_two, name="rs->base", fuel=fuel)
    assert proj is not None
    to_small = synthesize_morphism1(
        B, C, {b: (fz[b], B.realizer[b]) for b in B.cells}, fuel=fuel)
    to_total = synthesize_morphism1(C, B, dict(choice), fuel=fuel)
    assert to_small is not None and to_total is not None
    laws = [
        fibrewise_homotopic1_decide(
            compose1(to_total, to_small, fuel=fuel), identity1(B, fuel),
            f, fuel),
        fibrewise_homotopic1_decide(
            compose1(to_small, to_total, fuel=fuel), identity1(C, fuel),
            proj, fuel),
    ]
    return Resize1Bundle(C, proj, to_small, to_total, laws)


# --- the cyclic-group obstruction -------------------------------------------

def z2_object() -> Eff1Object:
    """The group of order two as a one-object-per-point 2-object: two
    cells, every 1-hom {0, 1} with composition addition mod 2, and only
    identity 2-cells."""
    cells = (0, 1)
    hom = {(i, j): frozenset({0, 1}) for i in cells for j in cells}
    hom2 = {(i, j, p, q): (frozenset({0}) if p == q else frozenset())
            for i in cells for j in cells for p in (0, 1) for q in (0, 1)}
    return make_object1(cells, {0: 0, 1: 1}, hom, hom2, name="Z2",
                        unit=lambda a: 0,
                        inv=lambda a, b, p: p,
                        comp=lambda a, b, c, p, r: (p + r) % 2)


def z2_twist(A: Eff1Object | None = None) -> Eff1Morphism:
    """The self-morphism fixing cells, fixing loops, and flipping cross
    1-cells; homotopic to the identity in two essentially different ways."""
    A = A if A is not None else z2_object()
    one = {(i, j): {p: (p if i == j else 1 - p) for p in (0, 1)}
           for i in A.cells for j in A.cells}
    two = {(i, j, p, q): ({0: 0} if p == q else {})
           for i in A.cells for j in A.cells
           for p in (0, 1) for q in (0, 1)}
    m = _build_morphism1(A, A, {0: 0, 1: 1}, one, two, name="twist")
    assert m is not None
    return m


def z2_homotopies(A: Eff1Object, wm: Eff1Morphism,
                  fuel: int = DEFAULT_FUEL):
    """Two homotopies 1 ~ twist that admit no modification between them."""
    idA = identity1(A, fuel)
    H = homotopy1_from_h1(idA, wm, {0: 0, 1: 1}, fuel)
    K = homotopy1_from_h1(idA, wm, {0: 1, 1: 0}, fuel)
    assert H is not None and K is not None
    return H, K
