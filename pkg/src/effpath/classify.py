"""Homotopy levels, propositional truncation, discreteness, the universe of
propositions with its univalence check, resizing, and the two-self-
equivalences obstruction.

REFUTED verdicts come only from definitive finite emptiness; budget or fuel
exhaustion yields UNKNOWN.  The universe is never materialized: its
zero-cells are presented finite subsets of naturals and its 1-cells are
checked intensionally by running the coded tracking pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .pca import (
    DEFAULT_FUEL, Diverges, FuelExhausted, apply, cantor_unpair, const_code,
    tabulate, tuple_encode,
)
from .core import (
    Decision, EffMorphism, EffObject, NO, UNKNOWN, YES, Verdict,
    check_morphism, compose, identity, make_object, synthesize_morphism,
    _intersect_all, _pick, _run,
)
from .path import (
    FibrationWitness, Homotopy, fib_path_object, fibrewise_homotopic_decide,
    homotopic_decide, is_equivalence_decide, is_trivial_fibration,
    path_object, pullback, synthesize_fibration_witness, terminal_map,
)
from .constructions import Transport, _lift_endpoint, freyd_square_check

VERIFIED, REFUTED = "verified", "refuted"

DEFAULT_DEPTH_BUDGET = 600  # cap on materialized path-object cells


# --- hlevels ----------------------------------------------------------------

@dataclass
class HlevelVerdict:
    level: int
    status: str  # VERIFIED | REFUTED | UNKNOWN
    chain: list = field(default_factory=list)  # path-object bundles used
    reason: str = ""


def hlevel_check(f: EffMorphism, n: int, fuel: int = DEFAULT_FUEL,
                 depth_budget: int = DEFAULT_DEPTH_BUDGET) -> HlevelVerdict:
    """Is f a fibration of n-types?  Level -2 means trivial; level n+1
    recurses on the canonical fibrewise path object."""
    if n < -2:
        raise ValueError("levels start at -2")
    if n == -2:
        d = is_trivial_fibration(f, fuel)
        status = {YES: VERIFIED, NO: REFUTED, UNKNOWN: UNKNOWN}[d.status]
        return HlevelVerdict(n, status, reason=d.reason)
    bundle = fib_path_object(f, fuel)
    if len(bundle.obj.cells) > depth_budget:
        return HlevelVerdict(
            n, UNKNOWN,
            reason=f"path object has {len(bundle.obj.cells)} cells")
    sub = hlevel_check(bundle.st, n - 1, fuel, depth_budget)
    return HlevelVerdict(n, sub.status, [bundle] + sub.chain, sub.reason)


def object_hlevel_check(obj: EffObject, n: int,
                        fuel: int = DEFAULT_FUEL) -> HlevelVerdict:
    return hlevel_check(terminal_map(obj), n, fuel)


# --- propositional truncation -----------------------------------------------

@dataclass
class TruncationBundle:
    g: EffMorphism          # B -> C, same cells
    h: EffMorphism          # C -> A, the propositional fibration
    witness: FibrationWitness


def prop_truncate(f: EffMorphism) -> TruncationBundle:
    """Factor a fibration B -> A through C = (B, beta, hom pulled from A).

    C's 1-cells between b and b' are A's 1-cells between their images,
    which makes C -> A propositional.
    """
    B, A = f.dom, f.cod
    hom = {(b, b2): A.hom_of(f.zero_map[b], f.zero_map[b2])
           for b in B.cells for b2 in B.cells}
    C = make_object(B.cells, B.realizer, hom, name=f"|{B.name}|")
    g = synthesize_morphism(B, C, {b: b for b in B.cells},
                            name=f"{B.name}->|{B.name}|")
    h = synthesize_morphism(C, A, dict(f.zero_map),
                            name=f"|{B.name}|->{A.name}")
    assert g is not None and h is not None
    w = synthesize_fibration_witness(h)
    assert w is not None
    return TruncationBundle(g, h, w)


def truncation_compare(tr: TruncationBundle, g2: EffMorphism,
                       h2: EffMorphism, fuel: int = DEFAULT_FUEL):
    """The comparison map d: C -> C' against another factorisation, with
    d g ~_A g2; returns (d, Decision)."""
    C = tr.g.cod
    d = synthesize_morphism(C, h2.dom,
                            {b: g2.zero_map[b] for b in C.cells},
                            name="truncation_compare")
    if d is None:
        return None, Decision(NO, reason="comparison map untrackable")
    law = fibrewise_homotopic_decide(compose(d, tr.g), g2, h2, fuel)
    return d, law


# --- discreteness -----------------------------------------------------------

def is_standard_discrete(f: EffMorphism) -> bool:
    """Cells in a fibre are determined by their realizer."""
    seen = {}
    for b in f.dom.cells:
        key = (f.zero_map[b], f.dom.realizer[b])
        if seen.setdefault(key, b) != b:
            return False
    return True


@dataclass
class DiscreteNormalForm:
    code: int                 # realizer -> connecting 1-cell, per criterion
    quotient: EffObject       # one representative per (fibre, realizer)
    inclusion: EffMorphism    # quotient -> B, an equivalence
    standard: EffMorphism     # quotient -> A, standard discrete by build


def discrete_decide(f: EffMorphism, fuel: int = DEFAULT_FUEL) -> Decision:
    """Decide discreteness three ways and require agreement.

    The intersection criterion: a single code must turn the shared realizer
    of two cells in a fibre into a connecting 1-cell.  On YES the quotient
    factorisation (representatives per fibre-realizer class) is built and
    the comparison square verdict is cross-checked.
    """
    B = f.dom
    table = {}
    crit3 = YES
    for n in B.realizer_image():
        homs = [B.hom_of(b0, b1)
                for b0 in B.cells_with_realizer(n)
                for b1 in B.cells_with_realizer(n)
                if f.zero_map[b0] == f.zero_map[b1]]
        inter = _intersect_all(homs)
        if not inter:
            crit3 = NO
            break
        table[n] = _pick(inter)
    square = freyd_square_check(f, fuel)
    if square.status != UNKNOWN and crit3 != square.status:
        return Decision(UNKNOWN,
                        reason=f"criteria disagree: code {crit3}, "
                               f"square {square.status}")
    if crit3 == NO:
        return Decision(NO, reason="no uniform connecting code")

    reps, zero_inv = {}, {}
    for b in B.cells:
        key = (f.zero_map[b], B.realizer[b])
        reps.setdefault(key, b)
        zero_inv[b] = None
    cells = sorted(reps.values(), key=B.cells.index)
    quotient = make_object(
        cells, {b: B.realizer[b] for b in cells},
        {(b, b2): B.hom_of(b, b2) for b in cells for b2 in cells},
        name=f"{B.name}'")
    incl = synthesize_morphism(quotient, B, {b: b for b in cells},
                               name=f"{B.name}'->{B.name}")
    assert incl is not None
    standard = compose(f, incl, name=f"{B.name}'->{f.cod.name}")
    assert is_standard_discrete(standard)
    eq = is_equivalence_decide(incl, fuel)
    if eq.status != YES:
        return Decision(eq.status,
                        reason=f"representative inclusion: {eq.reason}")
    return Decision(YES, witness=DiscreteNormalForm(
        tabulate(table), quotient, incl, standard))


# --- the universe of propositions -------------------------------------------

def u_realizer(_subset) -> int:
    return 0


def u_hom_status(X, Y, n: int, fuel: int = DEFAULT_FUEL) -> str:
    """Is n = <r, s> a 1-cell between the subsets X and Y?  r must send
    every element of X into Y and s every element of Y into X."""
    r, s = cantor_unpair(n)
    for code, src, dst in ((r, X, Y), (s, Y, X)):
        for x in sorted(src):
            status, v = _run(code, x, fuel)
            if status == "fuel":
                return UNKNOWN
            if status == "div" or v not in dst:
                return NO
    return YES


def u_one_cell(X, Y):
    """A canonical 1-cell between two subsets, or None; any pair of total
    maps qualifies, so one exists iff neither side strands the other."""
    if (len(X) == 0) != (len(Y) == 0):
        return None
    r = tabulate({x: min(Y) for x in X}) if X else const_code(0)
    s = tabulate({y: min(X) for y in Y}) if Y else const_code(0)
    return tuple_encode(r, s)


def u_pullback(Z: EffObject, assignment: dict, name: str = "") -> EffObject:
    """The finite total space of the subsets assigned to the cells of Z:
    cells (z, n) with n in assignment[z], realized by <zeta z, n>, with the
    propositional hom-sets pulled from Z."""
    cells = [(z, n) for z in Z.cells for n in sorted(assignment[z])]
    realizer = {(z, n): tuple_encode(Z.realizer[z], n) for (z, n) in cells}
    hom = {(x, y): Z.hom_of(x[0], y[0]) for x in cells for y in cells}
    return make_object(cells, realizer, hom, name=name or f"E|{Z.name}")


@dataclass
class ClassifyingMap:
    base: EffObject
    zero: dict    # a -> frozenset of naturals (the fibre over a)
    one: dict     # (a, a', pi) -> (r_code, s_code)
    tracking0: int
    tracking1: int


class NotNormalized(Exception):
    """Classification needs cells (a, n) with f = fst and realizer = snd."""


@dataclass
class Classification:
    k: ClassifyingMap
    recovered: EffObject       # pullback of the universe along k
    comparison: Decision       # equivalence with the classified total space


def classify_prop_discrete(f: EffMorphism, w: FibrationWitness,
                           fuel: int = DEFAULT_FUEL) -> Classification:
    """Classifying map of a normalized standard discrete propositional
    fibration: a goes to its fibre set, a 1-cell to the tracking pair of
    the transport equivalence between the fibres."""
    B, A = f.dom, f.cod
    for b in B.cells:
        if not (isinstance(b, tuple) and len(b) == 2
                and f.zero_map[b] == b[0] and B.realizer[b] == b[1]):
            raise NotNormalized(f"cell {b!r}")
    zero = {a: frozenset(n for (a2, n) in B.cells if a2 == a)
            for a in A.cells}

    def fibre_transport(a, a2, pi):
        return tabulate({
            n: B.realizer[_lift_endpoint(f, w, (a, n), a2, pi, fuel)]
            for n in zero[a]}) if zero[a] else const_code(0)

    one, t1_table = {}, {}
    for a, a2 in itertools.product(A.cells, repeat=2):
        for pi in A.hom_of(a, a2):
            inv = apply(A.inv_code,
                        tuple_encode(A.realizer[a], A.realizer[a2], pi),
                        fuel=fuel)
            r = fibre_transport(a, a2, pi)
            s = fibre_transport(a2, a, inv)
            one[(a, a2, pi)] = (r, s)
            t1_table[tuple_encode(A.realizer[a], A.realizer[a2], pi)] = \
                tuple_encode(r, s)
    k = ClassifyingMap(A, zero, one,
                       const_code(0), tabulate(t1_table))

    recovered = u_pullback(A, zero, name=f"U*{A.name}")
    comp = synthesize_morphism(B, recovered,
                               {b: b for b in B.cells}, name="recover")
    if comp is None:
        comparison = Decision(NO, reason="comparison map untrackable")
    else:
        comparison = is_equivalence_decide(comp, fuel)
    return Classification(k, recovered, comparison)


def univalence_check_prop(w: EffMorphism, pf: EffMorphism, pg: EffMorphism,
                          fuel: int = DEFAULT_FUEL):
    """Read a universe homotopy off an equivalence w: P_f -> P_g over Z
    (pg w = pf; cells (z, n) realized by pairs) and verify that the map it
    induces is fibrewise homotopic to w.  Returns ({z: (r, s)}, Decision).
    """
    Z = pf.cod
    eq = is_equivalence_decide(w, fuel)
    if eq.status != YES:
        return None, Decision(eq.status, reason="w is not an equivalence")
    inv = eq.witness.inverse
    H = {}
    for z in Z.cells:
        fwd = {n: w.zero_map[(z, n)][1]
               for (z2, n) in w.dom.cells if z2 == z}
        bwd = {n: inv.zero_map[(z, n)][1]
               for (z2, n) in w.cod.cells if z2 == z}
        r = tabulate(fwd) if fwd else const_code(0)
        s = tabulate(bwd) if bwd else const_code(0)
        H[z] = (r, s)
    induced_zero = {(z, n): (z, apply(H[z][0], n, fuel=fuel))
                    for (z, n) in w.dom.cells}
    induced = synthesize_morphism(w.dom, w.cod, induced_zero,
                                  name="induced_by_H")
    if induced is None:
        return H, Decision(NO, reason="induced map untrackable")
    return H, fibrewise_homotopic_decide(induced, w, pg, fuel)


# --- resizing ---------------------------------------------------------------

@dataclass
class ResizeBundle:
    obj: EffObject        # C, the discrete replacement
    proj: EffMorphism     # C -> A
    to_c: EffMorphism     # B -> C
    to_b: EffMorphism     # C -> B
    laws: tuple           # both round trips, fibrewise over A


def resize(f: EffMorphism, fuel: int = DEFAULT_FUEL) -> ResizeBundle:
    """Replace a propositional fibration by the discrete C -> A with
    C = {(a, n) : some cell over a is realized by n}, realized by n."""
    B, A = f.dom, f.cod
    pairs = sorted({(f.zero_map[b], B.realizer[b]) for b in B.cells},
                   key=lambda p: (A.cells.index(p[0]), p[1]))
    hom = {(p, q): A.hom_of(p[0], q[0]) for p in pairs for q in pairs}
    C = make_object(pairs, {p: p[1] for p in pairs}, hom,
                    name=f"rsz({B.name})")
    proj = synthesize_morphism(C, A, {p: p[0] for p in pairs},
                               name=f"rsz({B.name})->{A.name}")
    assert proj is not None
    to_c = synthesize_morphism(
        B, C, {b: (f.zero_map[b], B.realizer[b]) for b in B.cells})
    choice = {}
    for b in sorted(B.cells, key=B.cells.index, reverse=True):
        choice[(f.zero_map[b], B.realizer[b])] = b
    to_b = synthesize_morphism(C, B, {p: choice[p] for p in pairs})
    assert to_c is not None and to_b is not None
    laws = (fibrewise_homotopic_decide(compose(to_c, to_b), identity(C),
                                       proj, fuel),
            fibrewise_homotopic_decide(compose(to_b, to_c), identity(B),
                                       f, fuel))
    return ResizeBundle(C, proj, to_c, to_b, laws)


# --- the obstruction on the two-point discrete object -----------------------

@dataclass
class SelfEquivalenceReport:
    obj: EffObject
    first: EffMorphism
    second: EffMorphism
    first_is_equivalence: Decision
    second_is_equivalence: Decision
    homotopic: Decision


def two_self_equivalences(obj: EffObject | None = None,
                          fuel: int = DEFAULT_FUEL) -> SelfEquivalenceReport:
    """The identity and the swap on a two-cell object with their
    equivalence proofs and the (non-)homotopy between them.  On the
    discrete pair the maps are not homotopic, which obstructs a univalent
    classifier for all discrete fibrations."""
    from .path import discrete_n
    obj = obj if obj is not None else discrete_n(2, name="2")
    a, b = obj.cells
    ident = identity(obj)
    swap = synthesize_morphism(obj, obj, {a: b, b: a}, name="swap")
    assert swap is not None
    return SelfEquivalenceReport(
        obj, ident, swap,
        is_equivalence_decide(ident, fuel),
        is_equivalence_decide(swap, fuel),
        homotopic_decide(ident, swap, fuel))
