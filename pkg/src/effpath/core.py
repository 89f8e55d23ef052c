"""Objects and morphisms of the realizability groupoid category.

An object is a finite carrier with a realizer map, hom-sets of naturals and
three structure codes (unit, inverse, composition).  Validation is exhaustive
and fuel-bounded; whenever a single code sees only realizers, all cells
sharing the same visible input must be served by the same output value
(intersection semantics).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .pca import (
    DEFAULT_FUEL, Diverges, FuelExhausted, apply, compile_term, compose_codes,
    tabulate, tuple_encode, lam, app, Var, FST_C, SND_C,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str  # "valid" | "invalid" | "unknown"
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "valid"


def valid() -> Verdict:
    return Verdict("valid")


def invalid(reason: str) -> Verdict:
    return Verdict("invalid", reason)


def unknown(reason: str) -> Verdict:
    return Verdict("unknown", reason)


@dataclass
class Decision:
    """Three-way answer for existence questions (homotopy, equivalence, ...).

    NO is only ever produced from definitive finite emptiness; fuel or budget
    exhaustion yields UNKNOWN.
    """
    status: str  # YES | NO | UNKNOWN
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == YES


class SynthesisFailed(Exception):
    """No uniform code can serve the required table (empty intersection)."""


# --- hom-sets ---------------------------------------------------------------
# A hom-set is either a plain (frozen)set of naturals or an IntensionalHom
# for virtual objects whose hom-sets cannot be enumerated.

@dataclass
class IntensionalHom:
    membership: object  # (n, fuel) -> YES | NO | UNKNOWN
    sampler: object = None  # optional () -> iterable of known members

    def contains(self, n: int, fuel: int = DEFAULT_FUEL) -> str:
        return self.membership(n, fuel)


def hom_contains(h, n: int, fuel: int = DEFAULT_FUEL) -> str:
    if isinstance(h, (set, frozenset)):
        return YES if n in h else NO
    return h.contains(n, fuel)


def is_finite_hom(h) -> bool:
    return isinstance(h, (set, frozenset))


# --- objects ----------------------------------------------------------------

@dataclass
class EffObject:
    cells: tuple
    realizer: dict
    hom: dict  # (cell, cell) -> hom-set
    unit_code: int
    inv_code: int
    comp_code: int
    name: str = ""

    def hom_of(self, a, b):
        return self.hom.get((a, b), frozenset())

    def realizer_image(self) -> list:
        return sorted(set(self.realizer.values()))

    def cells_with_realizer(self, n: int) -> list:
        return [a for a in self.cells if self.realizer[a] == n]

    def all_finite(self) -> bool:
        return all(is_finite_hom(self.hom_of(a, b))
                   for a in self.cells for b in self.cells)

    def __repr__(self):
        return f"EffObject({self.name or id(self)}, {len(self.cells)} cells)"


def _run(code: int, arg: int, fuel: int):
    """Returns (status, value): "ok"/value, "div"/None, or "fuel"/None."""
    try:
        return "ok", apply(code, arg, fuel=fuel)
    except Diverges:
        return "div", None
    except FuelExhausted:
        return "fuel", None


def check_object(obj: EffObject, fuel: int = DEFAULT_FUEL) -> Verdict:
    # unit: one output per visible realizer, landing in every diagonal
    # hom-set of the cells carrying it
    for n in obj.realizer_image():
        status, v = _run(obj.unit_code, n, fuel)
        if status == "fuel":
            return unknown(f"unit at realizer {n}")
        if status == "div":
            return invalid(f"unit diverges at realizer {n}")
        for a in obj.cells_with_realizer(n):
            m = hom_contains(obj.hom_of(a, a), v, fuel)
            if m == NO:
                return invalid(f"unit output {v} outside hom({a},{a})")
            if m == UNKNOWN:
                return unknown(f"unit membership at {a}")

    # inverse: input <alpha a, alpha a', pi>, output in hom(a', a) for every
    # cell pair consistent with the visible input
    for a, a2 in itertools.product(obj.cells, repeat=2):
        h = obj.hom_of(a, a2)
        if not is_finite_hom(h):
            continue
        for pi in sorted(h):
            t = tuple_encode(obj.realizer[a], obj.realizer[a2], pi)
            status, v = _run(obj.inv_code, t, fuel)
            if status == "fuel":
                return unknown(f"inverse at ({a},{a2},{pi})")
            if status == "div":
                return invalid(f"inverse diverges at ({a},{a2},{pi})")
            m = hom_contains(obj.hom_of(a2, a), v, fuel)
            if m == NO:
                return invalid(f"inverse output {v} outside hom({a2},{a})")
            if m == UNKNOWN:
                return unknown(f"inverse membership at ({a2},{a})")

    # composition: input <alpha a, alpha a', alpha a'', pi, pi'> with
    # pi: a -> a', pi': a' -> a''; output in hom(a, a'')
    for a, a2, a3 in itertools.product(obj.cells, repeat=3):
        h1, h2 = obj.hom_of(a, a2), obj.hom_of(a2, a3)
        if not (is_finite_hom(h1) and is_finite_hom(h2)):
            continue
        for pi in sorted(h1):
            for pi2 in sorted(h2):
                t = tuple_encode(obj.realizer[a], obj.realizer[a2],
                                 obj.realizer[a3], pi, pi2)
                status, v = _run(obj.comp_code, t, fuel)
                if status == "fuel":
                    return unknown(f"composition at ({a},{a2},{a3})")
                if status == "div":
                    return invalid(
                        f"composition diverges at ({a},{a2},{a3},{pi},{pi2})")
                m = hom_contains(obj.hom_of(a, a3), v, fuel)
                if m == NO:
                    return invalid(
                        f"composition output {v} outside hom({a},{a3})")
                if m == UNKNOWN:
                    return unknown(f"composition membership at ({a},{a3})")
    return valid()


def _pick(s):
    return min(s)


def _intersect_all(sets):
    acc = None
    for s in sets:
        acc = set(s) if acc is None else acc & set(s)
        if not acc:
            return set()
    return acc if acc is not None else set()


def synthesize_object_codes(cells, realizer, hom):
    """Unit/inverse/composition codes by per-visible-input intersection.

    Over a finite carrier a uniform code exists iff every intersection of
    hom-sets sharing a visible input is inhabited; the witness is a table.
    """
    def hom_of(a, b):
        return hom.get((a, b), frozenset())

    unit_t = {}
    for n in sorted(set(realizer.values())):
        inter = _intersect_all(hom_of(a, a) for a in cells
                               if realizer[a] == n)
        if not inter:
            raise SynthesisFailed(f"unit at realizer {n}")
        unit_t[n] = _pick(inter)

    inv_groups: dict[int, list] = {}
    comp_groups: dict[int, list] = {}
    for a, a2 in itertools.product(cells, repeat=2):
        for pi in hom_of(a, a2):
            t = tuple_encode(realizer[a], realizer[a2], pi)
            inv_groups.setdefault(t, []).append(hom_of(a2, a))
    for a, a2, a3 in itertools.product(cells, repeat=3):
        for pi in hom_of(a, a2):
            for pi2 in hom_of(a2, a3):
                t = tuple_encode(realizer[a], realizer[a2], realizer[a3],
                                 pi, pi2)
                comp_groups.setdefault(t, []).append(hom_of(a, a3))

    inv_t, comp_t = {}, {}
    for t, targets in inv_groups.items():
        inter = _intersect_all(targets)
        if not inter:
            raise SynthesisFailed(f"inverse at input {t}")
        inv_t[t] = _pick(inter)
    for t, targets in comp_groups.items():
        inter = _intersect_all(targets)
        if not inter:
            raise SynthesisFailed(f"composition at input {t}")
        comp_t[t] = _pick(inter)
    return tabulate(unit_t), tabulate(inv_t), tabulate(comp_t)


def make_object(cells, realizer, hom, name: str = "") -> EffObject:
    """Build an object with synthesized (tabulated) structure codes."""
    cells = tuple(cells)
    full_hom = {(a, b): frozenset(hom.get((a, b), frozenset()))
                for a in cells for b in cells}
    unit_c, inv_c, comp_c = synthesize_object_codes(cells, realizer, full_hom)
    return EffObject(cells, dict(realizer), full_hom,
                     unit_c, inv_c, comp_c, name=name)


# --- morphisms --------------------------------------------------------------

@dataclass
class EffMorphism:
    dom: EffObject
    cod: EffObject
    zero_map: dict  # cell -> cell
    one_map: dict   # (b, b') -> {pi -> value}
    tracking0: int
    tracking1: int
    name: str = ""

    def apply0(self, b):
        return self.zero_map[b]

    def apply1(self, b, b2, pi):
        return self.one_map[(b, b2)][pi]

    def __repr__(self):
        return f"EffMorphism({self.name or id(self)})"


def check_morphism(f: EffMorphism, fuel: int = DEFAULT_FUEL) -> Verdict:
    dom, cod = f.dom, f.cod
    for b in dom.cells:
        fb = f.zero_map.get(b)
        if fb not in cod.cells:
            return invalid(f"zero_map sends {b} outside the codomain")
        status, v = _run(f.tracking0, dom.realizer[b], fuel)
        if status == "fuel":
            return unknown(f"tracking0 at {b}")
        if status == "div":
            return invalid(f"tracking0 diverges at {b}")
        if v != cod.realizer[fb]:
            return invalid(f"tracking0 at {b}: got {v}, "
                           f"want {cod.realizer[fb]}")
    for b, b2 in itertools.product(dom.cells, repeat=2):
        h = dom.hom_of(b, b2)
        if not is_finite_hom(h):
            continue
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        for pi in sorted(h):
            try:
                img = f.one_map[(b, b2)][pi]
            except KeyError:
                return invalid(f"one_map undefined at ({b},{b2},{pi})")
            m = hom_contains(cod.hom_of(fb, fb2), img, fuel)
            if m == NO:
                return invalid(
                    f"one_map image {img} outside hom({fb},{fb2})")
            if m == UNKNOWN:
                return unknown(f"one_map membership at ({fb},{fb2})")
            t = tuple_encode(dom.realizer[b], dom.realizer[b2], pi)
            status, v = _run(f.tracking1, t, fuel)
            if status == "fuel":
                return unknown(f"tracking1 at ({b},{b2},{pi})")
            if status == "div":
                return invalid(f"tracking1 diverges at ({b},{b2},{pi})")
            if v != img:
                return invalid(f"tracking1 at ({b},{b2},{pi}): got {v}, "
                               f"want {img}")
    return valid()


def synthesize_morphism(dom: EffObject, cod: EffObject, zero_map: dict,
                        name: str = ""):
    """The morphism with the given cell map and tabulated trackings, or None.

    Trackability is decidable over finite data: group by visible input and
    intersect the target hom-sets; any empty group kills every candidate
    one-map at once.
    """
    t0_table = {}
    for b in dom.cells:
        n = dom.realizer[b]
        want = cod.realizer[zero_map[b]]
        if t0_table.setdefault(n, want) != want:
            return None
    one_groups: dict[int, list] = {}
    for b, b2 in itertools.product(dom.cells, repeat=2):
        for pi in dom.hom_of(b, b2):
            t = tuple_encode(dom.realizer[b], dom.realizer[b2], pi)
            one_groups.setdefault(t, []).append(
                (b, b2, pi, cod.hom_of(zero_map[b], zero_map[b2])))
    t1_table, choice = {}, {}
    for t, entries in one_groups.items():
        inter = _intersect_all(h for (_, _, _, h) in entries)
        if not inter:
            return None
        v = _pick(inter)
        t1_table[t] = v
        for b, b2, pi, _ in entries:
            choice.setdefault((b, b2), {})[pi] = v
    one_map = {(b, b2): choice.get((b, b2), {})
               for b in dom.cells for b2 in dom.cells}
    return EffMorphism(dom, cod, dict(zero_map), one_map,
                       tabulate(t0_table), tabulate(t1_table), name=name)


def identity(obj: EffObject) -> EffMorphism:
    one_map = {(a, b): {pi: pi for pi in obj.hom_of(a, b)}
               for a in obj.cells for b in obj.cells
               if is_finite_hom(obj.hom_of(a, b))}
    x = Var("x")
    third = compile_term(lam("x", app(SND_C, app(SND_C, x))))
    return EffMorphism(obj, obj, {a: a for a in obj.cells}, one_map,
                       compile_term(lam("x", x)), third,
                       name=f"id_{obj.name}")


def compose(g: EffMorphism, f: EffMorphism, name: str = "") -> EffMorphism:
    """g after f."""
    if f.cod is not g.dom and f.cod != g.dom:
        raise TypeError("morphisms are not composable")
    zero = {b: g.zero_map[f.zero_map[b]] for b in f.dom.cells}
    one = {}
    for (b, b2), table in f.one_map.items():
        fb, fb2 = f.zero_map[b], f.zero_map[b2]
        one[(b, b2)] = {pi: g.one_map[(fb, fb2)][v]
                        for pi, v in table.items()}
    x = Var("x")
    # <beta b, beta b', pi>  |->  g1 <t0_f(beta b), t0_f(beta b'), f1(input)>
    from .pca import PAIR
    t1 = compile_term(lam("x", app(
        g.tracking1,
        app(PAIR, app(f.tracking0, app(FST_C, x)),
            app(PAIR, app(f.tracking0, app(FST_C, app(SND_C, x))),
                app(f.tracking1, x))))))
    return EffMorphism(f.dom, g.cod, zero, one,
                       compose_codes(g.tracking0, f.tracking0), t1,
                       name=name or f"{g.name}.{f.name}")


# --- the functor to the homotopy quotient -----------------------------------

@dataclass(frozen=True)
class EffToposObject:
    carrier: tuple
    equality: dict  # (x, x') -> frozenset of naturals


def p_object(obj: EffObject) -> EffToposObject:
    eq = {}
    for a, a2 in itertools.product(obj.cells, repeat=2):
        eq[(a, a2)] = frozenset(
            tuple_encode(obj.realizer[a], pi, obj.realizer[a2])
            for pi in obj.hom_of(a, a2))
    return EffToposObject(tuple(obj.cells), eq)


def p_morphism(f: EffMorphism) -> dict:
    """The functional relation F(b, a) = {<beta b, pi, alpha a>}."""
    table = {}
    for b in f.dom.cells:
        for a in f.cod.cells:
            table[(b, a)] = frozenset(
                tuple_encode(f.dom.realizer[b], pi, f.cod.realizer[a])
                for pi in f.cod.hom_of(f.zero_map[b], a))
    return table


def ho_equal(f: EffMorphism, g: EffMorphism,
             fuel: int = DEFAULT_FUEL) -> Decision:
    """Equality of the induced functional relations in the quotient."""
    tf, tg = p_morphism(f), p_morphism(g)
    if tf == tg:
        return Decision(YES)
    diff = sorted(k for k in tf if tf[k] != tg[k])[0]
    return Decision(NO, reason=f"relations differ at {diff}")
