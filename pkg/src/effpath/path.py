"""Path-category structure: fibrations, pullbacks, path objects, homotopy
and equivalence decision procedures, sections of trivial fibrations, sums,
and the groupoid-up-to-homotopy structure.

The homotopy relation is defined by existence of a code; over finite carriers
that existence is decidable: group cells by visible realizer, intersect the
target hom-sets, and tabulate one choice per group.  All NO verdicts come
from definitive finite emptiness, never from fuel exhaustion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .pca import (
    DEFAULT_FUEL, Diverges, FuelExhausted, apply, tabulate, tuple_encode,
)
from .core import (
    Decision, EffMorphism, EffObject, NO, SynthesisFailed, UNKNOWN, Verdict,
    YES, _intersect_all, _pick, _run, check_morphism, hom_contains,
    identity, invalid, is_finite_hom, make_object, compose,
    synthesize_morphism, unknown, valid,
)

DEFAULT_BUDGET = 200_000


# --- fibrations -------------------------------------------------------------

@dataclass
class FibrationWitness:
    lift0: int  # <beta b, alpha a, pi> -> realizer of b'
    lift1: int  # <beta b, alpha a, pi> -> rho: b -> b'
    lift2: int  # <beta b, beta b', rho, pi> -> rho' with f(rho') = pi


def _cond1_instances(f: EffMorphism):
    B, A = f.dom, f.cod
    for b in B.cells:
        for a in A.cells:
            h = A.hom_of(f.zero_map[b], a)
            if not is_finite_hom(h):
                continue
            for pi in sorted(h):
                yield b, a, pi


def _cond1_solutions(f: EffMorphism, b, a, pi):
    """All (realizer of b', rho) pairs solving lifting condition 1."""
    B = f.dom
    out = set()
    for b2 in B.cells:
        if f.zero_map[b2] != a:
            continue
        for rho in B.hom_of(b, b2):
            if f.one_map[(b, b2)][rho] == pi:
                out.add((B.realizer[b2], rho))
    return out


def check_fibration(f: EffMorphism, w: FibrationWitness,
                    fuel: int = DEFAULT_FUEL) -> Verdict:
    B, A = f.dom, f.cod
    for b, a, pi in _cond1_instances(f):
        t = tuple_encode(B.realizer[b], A.realizer[a], pi)
        s0, m = _run(w.lift0, t, fuel)
        s1, rho = _run(w.lift1, t, fuel)
        if "fuel" in (s0, s1):
            return unknown(f"lift at ({b},{a},{pi})")
        if "div" in (s0, s1):
            return invalid(f"lift diverges at ({b},{a},{pi})")
        if (m, rho) not in _cond1_solutions(f, b, a, pi):
            return invalid(f"condition 1 fails at ({b},{a},{pi}): "
                           f"({m},{rho}) does not name a lift")
    for b, b2 in itertools.product(B.cells, repeat=2):
        hb = B.hom_of(b, b2)
        ha = A.hom_of(f.zero_map[b], f.zero_map[b2])
        if not (is_finite_hom(hb) and is_finite_hom(ha)):
            continue
        for rho in sorted(hb):
            for pi in sorted(ha):
                t = tuple_encode(B.realizer[b], B.realizer[b2], rho, pi)
                s2, rho2 = _run(w.lift2, t, fuel)
                if s2 == "fuel":
                    return unknown(f"2-lift at ({b},{b2},{rho},{pi})")
                if s2 == "div":
                    return invalid(f"2-lift diverges at ({b},{b2},{rho},{pi})")
                if rho2 not in B.hom_of(b, b2) \
                        or f.one_map[(b, b2)][rho2] != pi:
                    return invalid(
                        f"condition 2 fails at ({b},{b2},{rho},{pi})")
    return valid()


def synthesize_fibration_witness(f: EffMorphism):
    """A witness bundle from per-visible-input intersections, or None.

    A single pair of codes serves condition 1 iff every group of instances
    sharing a visible input has a common (realizer, rho) solution; similarly
    for condition 2.  Over finite data this decides fibration-hood.
    """
    B, A = f.dom, f.cod
    groups1: dict[int, list] = {}
    for b, a, pi in _cond1_instances(f):
        t = tuple_encode(B.realizer[b], A.realizer[a], pi)
        groups1.setdefault(t, []).append((b, a, pi))
    t0, t1 = {}, {}
    for t, instances in groups1.items():
        common = None
        for b, a, pi in instances:
            sols = _cond1_solutions(f, b, a, pi)
            common = sols if common is None else common & sols
            if not common:
                return None
        m, rho = min(common)
        t0[t], t1[t] = m, rho
    groups2: dict[int, list] = {}
    for b, b2 in itertools.product(B.cells, repeat=2):
        for rho in B.hom_of(b, b2):
            for pi in A.hom_of(f.zero_map[b], f.zero_map[b2]):
                t = tuple_encode(B.realizer[b], B.realizer[b2], rho, pi)
                groups2.setdefault(t, []).append((b, b2, pi))
    t2 = {}
    for t, instances in groups2.items():
        common = None
        for b, b2, pi in instances:
            sols = {r2 for r2 in B.hom_of(b, b2)
                    if f.one_map[(b, b2)][r2] == pi}
            common = sols if common is None else common & sols
            if not common:
                return None
        t2[t] = min(common)
    return FibrationWitness(tabulate(t0), tabulate(t1), tabulate(t2))


def fibration_decide(f: EffMorphism) -> Decision:
    w = synthesize_fibration_witness(f)
    if w is None:
        return Decision(NO, reason="no uniform lifting codes exist")
    return Decision(YES, witness=w)


# --- terminal object and products -------------------------------------------

def terminal_object() -> EffObject:
    return make_object(("*",), {"*": 0}, {("*", "*"): {0}}, name="1")


def terminal_map(obj: EffObject, name: str = "") -> EffMorphism:
    one = terminal_object()
    f = synthesize_morphism(obj, one, {a: "*" for a in obj.cells},
                            name=name or f"{obj.name}->1")
    assert f is not None
    return f


def product(A: EffObject, B: EffObject, name: str = ""):
    """Returns (A x B, p1, p2)."""
    cells = [(a, b) for a in A.cells for b in B.cells]
    realizer = {(a, b): tuple_encode(A.realizer[a], B.realizer[b])
                for (a, b) in cells}
    hom = {}
    for (a, b), (a2, b2) in itertools.product(cells, repeat=2):
        hom[((a, b), (a2, b2))] = frozenset(
            tuple_encode(m, n)
            for m in A.hom_of(a, a2) for n in B.hom_of(b, b2))
    obj = make_object(cells, realizer, hom,
                      name=name or f"{A.name}x{B.name}")
    p1 = synthesize_morphism(obj, A, {(a, b): a for (a, b) in cells})
    p2 = synthesize_morphism(obj, B, {(a, b): b for (a, b) in cells})
    assert p1 is not None and p2 is not None
    return obj, p1, p2


def pair_morphism(prod: EffObject, f: EffMorphism, g: EffMorphism,
                  name: str = "") -> EffMorphism:
    """The map <f, g>: C -> A x B into a product built by product()."""
    zero = {c: (f.zero_map[c], g.zero_map[c]) for c in f.dom.cells}
    m = synthesize_morphism(f.dom, prod, zero, name=name)
    assert m is not None
    return m


# --- pullbacks --------------------------------------------------------------

@dataclass
class PullbackBundle:
    obj: EffObject
    to_g_dom: EffMorphism  # projection D -> C (along which f was pulled back)
    to_f_dom: EffMorphism  # projection D -> B
    witness: FibrationWitness | None  # for to_g_dom


def pullback(f: EffMorphism, g: EffMorphism, name: str = "",
             want_witness: bool = True) -> PullbackBundle:
    """Pullback of the fibration f: B -> A along g: C -> A.

    Cells are pairs (c, b) with g(c) = f(b); 1-cells are pairs of 1-cells
    with equal image in the base.
    """
    B, A, C = f.dom, f.cod, g.dom
    cells = [(c, b) for c in C.cells for b in B.cells
             if g.zero_map[c] == f.zero_map[b]]
    realizer = {(c, b): tuple_encode(C.realizer[c], B.realizer[b])
                for (c, b) in cells}
    hom = {}
    for (c, b), (c2, b2) in itertools.product(cells, repeat=2):
        hom[((c, b), (c2, b2))] = frozenset(
            tuple_encode(pi, rho)
            for pi in C.hom_of(c, c2) for rho in B.hom_of(b, b2)
            if g.one_map[(c, c2)][pi] == f.one_map[(b, b2)][rho])
    obj = make_object(cells, realizer, hom,
                      name=name or f"{C.name}x_{A.name}{B.name}")
    p1 = synthesize_morphism(obj, C, {(c, b): c for (c, b) in cells})
    p2 = synthesize_morphism(obj, B, {(c, b): b for (c, b) in cells})
    assert p1 is not None and p2 is not None
    w = synthesize_fibration_witness(p1) if want_witness else None
    return PullbackBundle(obj, p1, p2, w)


def mediate(pb: PullbackBundle, h: EffMorphism, k: EffMorphism,
            name: str = "") -> EffMorphism:
    """The unique cell-level map X -> D with projections h and k."""
    zero = {x: (h.zero_map[x], k.zero_map[x]) for x in h.dom.cells}
    m = synthesize_morphism(h.dom, pb.obj, zero, name=name)
    assert m is not None
    return m


# --- path objects -----------------------------------------------------------

@dataclass
class PathObjectBundle:
    obj: EffObject          # PA
    r: EffMorphism          # A -> PA
    st: EffMorphism         # PA -> A x A (or B x_A B in the fibrewise case)
    base: EffObject         # A x A (or B x_A B)
    witness: FibrationWitness | None

    def source(self) -> EffMorphism:
        raise NotImplementedError


def _reflexivity_cell(obj: EffObject, a, fuel: int = DEFAULT_FUEL):
    u = apply(obj.unit_code, obj.realizer[a], fuel=fuel)
    return (a, a, u)


def path_object(A: EffObject, fuel: int = DEFAULT_FUEL) -> PathObjectBundle:
    cells = [(a, a2, rho) for a in A.cells for a2 in A.cells
             for rho in sorted(A.hom_of(a, a2))]
    realizer = {(a, a2, rho): tuple_encode(A.realizer[a], A.realizer[a2], rho)
                for (a, a2, rho) in cells}
    hom = {}
    for x, y in itertools.product(cells, repeat=2):
        (a, a2, _), (b, b2, _) = x, y
        hom[(x, y)] = frozenset(tuple_encode(m, n)
                                for m in A.hom_of(a, b)
                                for n in A.hom_of(a2, b2))
    obj = make_object(cells, realizer, hom, name=f"P{A.name}")
    prod, _, _ = product(A, A)
    r = synthesize_morphism(
        A, obj, {a: _reflexivity_cell(A, a, fuel) for a in A.cells},
        name=f"r_{A.name}")
    st = synthesize_morphism(obj, prod,
                             {(a, a2, rho): (a, a2) for (a, a2, rho) in cells},
                             name=f"st_{A.name}")
    assert r is not None and st is not None
    return PathObjectBundle(obj, r, st, prod,
                            synthesize_fibration_witness(st))


def fib_path_object(f: EffMorphism,
                    fuel: int = DEFAULT_FUEL) -> PathObjectBundle:
    """The fibrewise path object of a fibration f: B -> A.

    Cells are triples (b, b', rho) with f(b) = f(b'); 1-cells are pairs with
    equal image in the base, matching the hom-sets of B x_A B.
    """
    B = f.dom
    cells = [(b, b2, rho) for b in B.cells for b2 in B.cells
             if f.zero_map[b] == f.zero_map[b2]
             for rho in sorted(B.hom_of(b, b2))]
    realizer = {(b, b2, rho): tuple_encode(B.realizer[b], B.realizer[b2], rho)
                for (b, b2, rho) in cells}
    hom = {}
    for x, y in itertools.product(cells, repeat=2):
        (b, b2, _), (c, c2, _) = x, y
        hom[(x, y)] = frozenset(
            tuple_encode(m, n)
            for m in B.hom_of(b, c) for n in B.hom_of(b2, c2)
            if f.one_map[(b, c)][m] == f.one_map[(b2, c2)][n])
    obj = make_object(cells, realizer, hom, name=f"P_{f.cod.name}({B.name})")
    base = pullback(f, f, want_witness=False)
    r = synthesize_morphism(
        B, obj, {b: _reflexivity_cell(B, b, fuel) for b in B.cells},
        name=f"r_{B.name}")
    st = synthesize_morphism(
        obj, base.obj,
        {(b, b2, rho): (b, b2) for (b, b2, rho) in cells},
        name=f"st_{B.name}/{f.cod.name}")
    assert r is not None and st is not None
    return PathObjectBundle(obj, r, st, base.obj,
                            synthesize_fibration_witness(st))


# --- homotopy ---------------------------------------------------------------

@dataclass
class Homotopy:
    code: int


def check_homotopy(f: EffMorphism, g: EffMorphism, H: Homotopy,
                   fuel: int = DEFAULT_FUEL) -> Verdict:
    A = f.cod
    for b in f.dom.cells:
        status, v = _run(H.code, f.dom.realizer[b], fuel)
        if status == "fuel":
            return unknown(f"homotopy at {b}")
        if status == "div":
            return invalid(f"homotopy diverges at {b}")
        m = hom_contains(A.hom_of(f.zero_map[b], g.zero_map[b]), v, fuel)
        if m == NO:
            return invalid(f"homotopy value {v} outside "
                           f"hom({f.zero_map[b]},{g.zero_map[b]})")
        if m == UNKNOWN:
            return unknown(f"homotopy membership at {b}")
    return valid()


def homotopic_decide(f: EffMorphism, g: EffMorphism,
                     fuel: int = DEFAULT_FUEL) -> Decision:
    """Decide existence of a coded homotopy f ~ g.

    The homotopy relation only involves the 0-cell maps: a witness exists
    iff for every visible realizer the intersection of the connecting
    hom-sets is inhabited, and then a table realizes it.
    """
    A, B = f.cod, f.dom
    table = {}
    for n in B.realizer_image():
        homs = [A.hom_of(f.zero_map[b], g.zero_map[b])
                for b in B.cells_with_realizer(n)]
        if not all(is_finite_hom(h) for h in homs):
            return Decision(UNKNOWN, reason="intensional hom-set")
        inter = _intersect_all(homs)
        if not inter:
            return Decision(NO, reason=f"empty intersection at realizer {n}")
        table[n] = _pick(inter)
    return Decision(YES, witness=Homotopy(tabulate(table)))


def fibrewise_homotopic_decide(f: EffMorphism, g: EffMorphism,
                               p: EffMorphism,
                               fuel: int = DEFAULT_FUEL) -> Decision:
    """Decide f ~_I g over the fibration p: X -> I (requires pf = pg).

    A fibrewise path lives in the triples with equal p-image, so once the
    0-cell maps agree after p the criterion coincides with the plain one.
    """
    for b in f.dom.cells:
        if p.zero_map[f.zero_map[b]] != p.zero_map[g.zero_map[b]]:
            return Decision(NO, reason=f"pf and pg differ at {b}")
    return homotopic_decide(f, g, fuel)


# --- equivalences -----------------------------------------------------------

@dataclass
class EquivalenceWitness:
    inverse: EffMorphism
    eta: Homotopy  # 1 ~ g f  on the domain
    eps: Homotopy  # f g ~ 1  on the codomain


def _zero_map_candidates(src: EffObject, dst: EffObject, cell_filter=None):
    """Backtracking enumeration of cell maps src -> dst, pruned so that
    cells sharing a realizer are sent to cells sharing a realizer."""
    cells = list(src.cells)

    def extend(i, assignment, chosen_realizer):
        if i == len(cells):
            yield dict(assignment)
            return
        a = cells[i]
        n = src.realizer[a]
        for b in dst.cells:
            if cell_filter is not None and not cell_filter(a, b):
                continue
            if n in chosen_realizer and chosen_realizer[n] != dst.realizer[b]:
                continue
            added = n not in chosen_realizer
            if added:
                chosen_realizer[n] = dst.realizer[b]
            assignment[a] = b
            yield from extend(i + 1, assignment, chosen_realizer)
            del assignment[a]
            if added:
                del chosen_realizer[n]

    yield from extend(0, {}, {})


def is_equivalence_decide(f: EffMorphism, fuel: int = DEFAULT_FUEL,
                          budget: int = DEFAULT_BUDGET) -> Decision:
    """Search for a homotopy inverse among all cell maps.

    Candidates must send each a to a cell g(a) with hom(f g a, a) inhabited
    (necessary for eps), be consistent on realizer collisions, and admit
    tabulated trackings; both homotopies are then decided exactly.
    """
    B, A = f.dom, f.cod

    def flt(a, b):
        return bool(A.hom_of(f.zero_map[b], a))

    tried = 0
    for zero in _zero_map_candidates(A, B, cell_filter=flt):
        tried += 1
        if tried > budget:
            return Decision(UNKNOWN, reason="candidate budget exhausted")
        g = synthesize_morphism(A, B, zero, name=f"{f.name}^-1")
        if g is None:
            continue
        eps = homotopic_decide(compose(f, g), identity(A), fuel)
        if eps.status != YES:
            continue
        eta = homotopic_decide(identity(B), compose(g, f), fuel)
        if eta.status != YES:
            continue
        return Decision(YES, witness=EquivalenceWitness(
            g, eta.witness, eps.witness))
    return Decision(NO, reason=f"no homotopy inverse among {tried} cell maps")


class NotTrivial(Exception):
    pass


def _section_candidates(f: EffMorphism):
    B, A = f.dom, f.cod
    return _zero_map_candidates(
        A, B, cell_filter=lambda a, b: f.zero_map[b] == a)


def is_trivial_fibration(f: EffMorphism, fuel: int = DEFAULT_FUEL,
                         budget: int = DEFAULT_BUDGET) -> Decision:
    """A fibration is trivial iff it has a section s with s f ~ 1."""
    B, A = f.dom, f.cod
    tried = 0
    for zero in _section_candidates(f):
        tried += 1
        if tried > budget:
            return Decision(UNKNOWN, reason="section budget exhausted")
        s = synthesize_morphism(A, B, zero, name=f"sect_{f.name}")
        if s is None:
            continue
        eta = homotopic_decide(identity(B), compose(s, f), fuel)
        if eta.status != YES:
            continue
        # f s = 1 strictly, so the unit code is a homotopy f s ~ 1
        eps = Homotopy(A.unit_code)
        return Decision(YES, witness=EquivalenceWitness(s, eta.witness, eps))
    return Decision(NO, reason=f"no section with sf ~ 1 among {tried}")


def construct_section(f: EffMorphism, w: FibrationWitness, g: EffMorphism,
                      H: Homotopy, fuel: int = DEFAULT_FUEL) -> EffMorphism:
    """Section of a trivial fibration f from g: A -> B and H: fg ~ 1.

    For each a, lift the path H_a: fga -> a through condition 1 starting at
    ga; the endpoint is s(a) and lies strictly over a.
    """
    B, A = f.dom, f.cod
    zero = {}
    for a in A.cells:
        ga = g.zero_map[a]
        ha = apply(H.code, A.realizer[a], fuel=fuel)
        t = tuple_encode(B.realizer[ga], A.realizer[a], ha)
        m = apply(w.lift0, t, fuel=fuel)
        rho = apply(w.lift1, t, fuel=fuel)
        target = None
        for b2 in B.cells:
            if f.zero_map[b2] == a and B.realizer[b2] == m \
                    and rho in B.hom_of(ga, b2) \
                    and f.one_map[(ga, b2)][rho] == ha:
                target = b2
                break
        if target is None:
            raise NotTrivial(f"lift of the homotopy at {a} names no cell")
        zero[a] = target
    s = synthesize_morphism(A, B, zero, name=f"sect_{f.name}")
    if s is None:
        raise NotTrivial("section cell map admits no trackings")
    return s


# --- sums -------------------------------------------------------------------

def sum_object(A: EffObject, B: EffObject, name: str = ""):
    """Returns (A + B, inl, inr): tagged realizers, empty cross hom-sets."""
    cells = [("L", a) for a in A.cells] + [("R", b) for b in B.cells]
    realizer = {}
    for tag, x in cells:
        src = A if tag == "L" else B
        realizer[(tag, x)] = tuple_encode(0 if tag == "L" else 1,
                                          src.realizer[x])
    hom = {}
    for (t1, x), (t2, y) in itertools.product(cells, repeat=2):
        if t1 != t2:
            hom[((t1, x), (t2, y))] = frozenset()
        else:
            src = A if t1 == "L" else B
            hom[((t1, x), (t2, y))] = frozenset(src.hom_of(x, y))
    obj = make_object(cells, realizer, hom,
                      name=name or f"{A.name}+{B.name}")
    inl = synthesize_morphism(A, obj, {a: ("L", a) for a in A.cells})
    inr = synthesize_morphism(B, obj, {b: ("R", b) for b in B.cells})
    assert inl is not None and inr is not None
    return obj, inl, inr


def copair(summ: EffObject, f: EffMorphism, g: EffMorphism,
           name: str = "") -> EffMorphism:
    """[f, g]: A + B -> C for a sum built by sum_object()."""
    zero = {}
    for tag, x in summ.cells:
        zero[(tag, x)] = f.zero_map[x] if tag == "L" else g.zero_map[x]
    m = synthesize_morphism(summ, f.cod, zero, name=name)
    assert m is not None
    return m


def discrete_n(n: int, name: str = "") -> EffObject:
    """The discrete object with n points: realizer i, diagonal hom {0}."""
    cells = [str(i) for i in range(n)]
    hom = {(a, b): ({0} if a == b else frozenset())
           for a in cells for b in cells}
    return make_object(cells, {c: int(c) for c in cells}, hom,
                       name=name or str(n))


# --- groupoid structure up to homotopy --------------------------------------

@dataclass
class GroupoidStructure:
    bundle: PathObjectBundle
    pairs: PullbackBundle        # PA x_A PA  (cells (c, b): t(c) = s(b)?)
    triples: EffObject
    mu: EffMorphism
    sigma: EffMorphism
    laws: list


def _comp_value(A: EffObject, u, v, w_, rho1, rho2, fuel):
    t = tuple_encode(A.realizer[u], A.realizer[v], A.realizer[w_], rho1, rho2)
    return apply(A.comp_code, t, fuel=fuel)


def groupoid_structure(A: EffObject, bundle: PathObjectBundle | None = None,
                       fuel: int = DEFAULT_FUEL) -> GroupoidStructure:
    """mu (path composition via comp_code), sigma (reversal via inv_code),
    and the five groupoid laws decided as fibrewise homotopies over A x A."""
    bundle = bundle or path_object(A, fuel)
    PA, st = bundle.obj, bundle.st

    # pairs (x, y) of paths with s(x) = t(y); mu(x, y) = x o y
    s_map = {x: x[0] for x in PA.cells}
    t_map = {x: x[1] for x in PA.cells}
    s_m = synthesize_morphism(PA, A, s_map, name="s")
    t_m = synthesize_morphism(PA, A, t_map, name="t")
    assert s_m is not None and t_m is not None
    pairs = pullback(s_m, t_m, name=f"P{A.name}x_{A.name}P{A.name}",
                     want_witness=False)

    def comp_cell(x, y):
        # y: u -> v then x: v -> w
        (v, w_, rx), (u, v2, ry) = x, y
        assert v == v2
        val = _comp_value(A, u, v, w_, ry, rx, fuel)
        return (u, w_, val)

    # a pullback cell (c, b) has t(c) = s(b): first c, then b
    mu = synthesize_morphism(pairs.obj, PA,
                             {(c, b): comp_cell(b, c)
                              for (c, b) in pairs.obj.cells}, name="mu")

    def inv_cell(x):
        a, a2, rho = x
        t = tuple_encode(A.realizer[a], A.realizer[a2], rho)
        return (a2, a, apply(A.inv_code, t, fuel=fuel))

    sigma = synthesize_morphism(PA, PA,
                                {x: inv_cell(x) for x in PA.cells},
                                name="sigma")
    assert mu is not None and sigma is not None

    # triples (x, y, z) forming a chain: x then y then z
    tcells = [(x, y, z) for (x, y) in pairs.obj.cells for z in PA.cells
              if z[0] == y[1]]
    trealizer = {(x, y, z): tuple_encode(PA.realizer[x], PA.realizer[y],
                                         PA.realizer[z])
                 for (x, y, z) in tcells}
    thom = {}
    for c1, c2 in itertools.product(tcells, repeat=2):
        (x, y, z), (x2, y2, z2) = c1, c2
        thom[(c1, c2)] = frozenset(
            tuple_encode(cx, cy, cz)
            for cx in PA.hom_of(x, x2) for cy in PA.hom_of(y, y2)
            for cz in PA.hom_of(z, z2))
    triples = make_object(tcells, trealizer, thom, name=f"P3{A.name}")

    def law(dom_obj, lhs_zero, rhs_zero):
        lhs = synthesize_morphism(dom_obj, PA, lhs_zero)
        rhs = synthesize_morphism(dom_obj, PA, rhs_zero)
        assert lhs is not None and rhs is not None
        return fibrewise_homotopic_decide(lhs, rhs, st, fuel)

    def refl(a):
        return _reflexivity_cell(A, a, fuel)

    laws = []
    # (1) associativity on triples
    laws.append(law(
        triples,
        {(x, y, z): comp_cell(comp_cell(z, y), x)
         for (x, y, z) in triples.cells},
        {(x, y, z): comp_cell(z, comp_cell(y, x))
         for (x, y, z) in triples.cells}))
    # (2) mu(1, rs) ~ 1
    laws.append(law(PA, {x: comp_cell(x, refl(x[0])) for x in PA.cells},
                    {x: x for x in PA.cells}))
    # (3) mu(rt, 1) ~ 1
    laws.append(law(PA, {x: comp_cell(refl(x[1]), x) for x in PA.cells},
                    {x: x for x in PA.cells}))
    # (4) mu(1, sigma) ~ rt
    laws.append(law(PA, {x: comp_cell(x, inv_cell(x)) for x in PA.cells},
                    {x: refl(x[1]) for x in PA.cells}))
    # (5) mu(sigma, 1) ~ rs
    laws.append(law(PA, {x: comp_cell(inv_cell(x), x) for x in PA.cells},
                    {x: refl(x[0]) for x in PA.cells}))
    return GroupoidStructure(bundle, pairs, triples, mu, sigma, laws)
