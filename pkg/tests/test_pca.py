import random

import pytest
from hypothesis import given, strategies as st

from effpath import pca
from effpath.pca import (
    DIVERGE_C, FST_C, ID, IFEQ, K, PAIR, S, SND_C, SUCC_C,
    App, Diverges, FuelExhausted, Lam, MachineState, UnboundVariable, Var,
    apply, apply_many, cantor_pair, cantor_unpair, compile_term,
    compose_codes, const_code, curry_left, decode, enc, encode, lam, app,
    tabulate, tuple_decode, tuple_encode,
)

import oracle


def oracle_num(term, inputs):
    t = term
    for x in inputs:
        t = (t, x)
    return oracle.reduce(t)


# --- machine basics ---------------------------------------------------------

def test_k_currying_rule():
    assert apply(K, 7) == enc(pca.K1, 7)


def test_k_law():
    assert apply(apply(K, 7), 9) == 7


def test_compose_succ_succ():
    # frozen from the symbolic oracle: (S (K SUCC) SUCC) 3 -> 5
    assert oracle_num(("S", ("K", "SUCC")), []) is not None
    assert oracle_num((("S", ("K", "SUCC")), "SUCC"), [3]) == 5
    c = compose_codes(SUCC_C, SUCC_C)
    assert apply(c, 3) == 5


def test_diverge_raises():
    with pytest.raises(Diverges):
        apply(DIVERGE_C, 0)


def test_fuel_exhaustion_is_distinct():
    c = compose_codes(SUCC_C, SUCC_C)
    with pytest.raises(FuelExhausted):
        apply(c, 3, fuel=2)
    assert apply(c, 3, fuel=100) == 5


def test_fuel_monotonicity_sampled():
    rng = random.Random(7)
    codes = [SUCC_C, compose_codes(SUCC_C, SUCC_C), ID,
             tabulate({0: 1, 1: 0}), curry_left(FST_C, 4)]
    checked = 0
    while checked < 1000:
        c = rng.choice(codes)
        n = rng.randrange(0, 30)
        base_fuel = rng.randrange(1, 400)
        try:
            v = apply(c, n, fuel=base_fuel)
        except FuelExhausted:
            continue
        except Diverges:
            checked += 1
            continue
        for extra in (1, 10, 1000):
            assert apply(c, n, fuel=base_fuel + extra) == v
        checked += 1


# --- pairing ----------------------------------------------------------------

def test_cantor_pair_base():
    assert cantor_pair(0, 0) == 0


def test_cantor_pair_example():
    # (1+2)(1+2+1)/2 + 2 = 8
    assert cantor_pair(1, 2) == 8


def test_cantor_roundtrip_small():
    for m in range(50):
        for n in range(50):
            assert cantor_unpair(cantor_pair(m, n)) == (m, n)


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_cantor_roundtrip_hypothesis(m, n):
    assert cantor_unpair(cantor_pair(m, n)) == (m, n)


def test_machine_pairing_agrees_with_cantor():
    for m in range(0, 101, 7):
        for n in range(0, 101, 9):
            p = cantor_pair(m, n)
            assert apply_many(PAIR, [m, n]) == p
            assert apply(FST_C, p) == m
            assert apply(SND_C, p) == n


def test_tuple_roundtrip():
    t = tuple_encode(3, 1, 4, 1, 5)
    assert tuple_decode(t, 5) == (3, 1, 4, 1, 5)
    assert tuple_encode(9) == 9


# --- encode/decode ----------------------------------------------------------

def test_encode_decode_roundtrip_sampled():
    rng = random.Random(13)
    tags = list(pca._ARITY)
    for _ in range(10_000):
        tag = rng.choice(tags)
        args = tuple(rng.randrange(0, 1000)
                     for _ in range(pca._ARITY[tag]))
        s = MachineState(tag, args)
        assert decode(encode(s)) == s


def test_unknown_encodings_decode_to_diverge():
    assert decode(0b11111).tag == pca.DIVERGE  # tag nibble 15 is unassigned
    for junk in range(16):
        assert decode(junk).tag == pca.DIVERGE
    # truncated argument bits
    assert decode(int("1" + "0001" + "00", 2)).tag == pca.DIVERGE


# --- compile ----------------------------------------------------------------

def test_compile_identity():
    c = compile_term(lam("x", Var("x")))
    assert apply(c, 4) == 4


def test_compile_pair_dup():
    c = compile_term(lam("x", app(PAIR, Var("x"), Var("x"))))
    assert apply(c, 3) == cantor_pair(3, 3)


def test_compile_k_behaviour():
    c = compile_term(lam("x", lam("y", Var("x"))))
    assert apply_many(c, [2, 9]) == 2


def test_compile_unbound():
    with pytest.raises(UnboundVariable):
        compile_term(lam("x", Var("y")))


def test_compile_agrees_with_oracle():
    x = Var("x")
    cases = [
        (lam("x", app(SUCC_C, app(SUCC_C, x))),
         lambda n: n + 2),
        (lam("x", app(FST_C, app(PAIR, x, 5))),
         lambda n: n),
        (lam("x", app(IFEQ, x, 3, 10, 20)),
         lambda n: 10 if n == 3 else 20),
        (lam("x", lam("y", app(PAIR, Var("y"), Var("x")))),
         None),
    ]
    for term, fn in cases[:3]:
        c = compile_term(term)
        for n in range(10):
            assert apply(c, n) == fn(n)
    c = compile_term(cases[3][0])
    assert apply_many(c, [2, 9]) == cantor_pair(9, 2)


# --- tabulate ---------------------------------------------------------------

def test_tabulate_hits():
    c = tabulate({0: 5, 1: 7})
    assert apply(c, 0) == 5
    assert apply(c, 1) == 7


def test_tabulate_off_domain_diverges():
    c = tabulate({0: 5, 1: 7})
    with pytest.raises(Diverges):
        apply(c, 2)


def test_tabulate_random_tables():
    rng = random.Random(42)
    for _ in range(100):
        size = rng.randrange(0, 12)
        table = {rng.randrange(0, 200): rng.randrange(0, 200)
                 for _ in range(size)}
        c = tabulate(table)
        for k, v in table.items():
            assert apply(c, k) == v
        off = 201
        with pytest.raises(Diverges):
            apply(c, off)


# --- composition helpers ----------------------------------------------------

def test_compose_codes_oracle():
    # frozen from the oracle: SUCC (SUCC 0) -> 2
    assert oracle.reduce(("SUCC", ("SUCC", 0))) == 2
    assert apply(compose_codes(SUCC_C, SUCC_C), 0) == 2


def test_curry_left_projection():
    # frozen from the pairing formula: fst(pair(4, 9)) = 4
    assert apply(curry_left(FST_C, 4), 9) == 4


def test_compose_identity_law():
    for c in (SUCC_C, tabulate({n: n * 2 for n in range(21)})):
        lhs = compose_codes(ID, c)
        for n in range(21):
            assert apply(lhs, n) == apply(c, n)


def test_const_code():
    assert apply(const_code(11), 999) == 11


# --- S/K laws against the oracle -------------------------------------------

def random_fn(rng, depth=0):
    """A symbolic term denoting a total function from numerals to numerals."""
    roll = rng.random()
    if depth > 3 or roll < 0.35:
        return rng.choice(["SUCC", (("S", "K"), "K"), ("K", rng.randrange(20))])
    if roll < 0.7:
        # composition: S (K f) g
        return ((("S", ("K", random_fn(rng, depth + 1))),
                 random_fn(rng, depth + 1)))
    # equality test between two function results, with function branches
    return (((("IFEQ", rng.randrange(3))), rng.randrange(3)),
            rng.randrange(50)) if rng.random() < 0.5 else \
        ((("S", ("K", "SUCC")), random_fn(rng, depth + 1)))


def to_code(term):
    mapping = {"K": K, "S": S, "PAIR": PAIR, "FST": FST_C, "SND": SND_C,
               "SUCC": SUCC_C, "IFEQ": IFEQ, "DIVERGE": DIVERGE_C}
    if isinstance(term, str):
        return mapping[term]
    if isinstance(term, int):
        return term
    return App(to_code(term[0]), to_code(term[1]))


def test_sk_laws_extensional_against_oracle():
    rng = random.Random(99)
    agreements = 0
    for _ in range(300):
        f = random_fn(rng)
        b = random_fn(rng)
        a = ("K", f)  # a n is then itself a function, so S a b n reduces
        n = rng.randrange(0, 21)
        try:
            expected = oracle.reduce((((("S", a), b)), n))
        except oracle.OracleDiverges:
            continue
        if not isinstance(expected, int):
            continue
        ca = compile_term(to_code(a))
        cb = compile_term(to_code(b))
        try:
            got = apply(apply_many(S, [ca, cb]), n, fuel=200_000)
        except (Diverges, FuelExhausted):
            pytest.fail(f"machine failed where oracle converged: {a} {b} {n}")
        assert got == expected
        # K law: K v n == v for numeral v
        v = rng.randrange(0, 50)
        assert apply_many(K, [v, n]) == v
        agreements += 1
    assert agreements > 250
