"""Independent symbolic combinator-term interpreter, used only as a test
oracle.  It reduces applicative spines over the named basis constants and
knows nothing about the numeric machine encoding."""

HEADS = {"K", "S", "PAIR", "FST", "SND", "SUCC", "IFEQ", "DIVERGE"}

ARITY = {"K": 2, "S": 3, "PAIR": 2, "FST": 1, "SND": 1, "SUCC": 1,
         "IFEQ": 4, "DIVERGE": 1}


class OracleDiverges(Exception):
    pass


def pair(m, n):
    return (m + n) * (m + n + 1) // 2 + n


def unpair(p):
    w = 0
    while (w + 1) * (w + 2) // 2 <= p:
        w += 1
    n = p - w * (w + 1) // 2
    return w - n, n


def reduce(term, depth=0):
    """Reduce a symbolic term to a numeral or a stuck partial application."""
    if depth > 5000:
        raise OracleDiverges("depth")
    if isinstance(term, int) or isinstance(term, str):
        return term
    assert isinstance(term, tuple) and len(term) == 2
    fn = reduce(term[0], depth + 1)
    arg = reduce(term[1], depth + 1)
    head, args = spine(fn)
    args = args + [arg]
    if isinstance(head, int):
        # numerals are opaque data to the oracle; applying one is undefined
        raise OracleDiverges("numeral head")
    if head not in HEADS or len(args) < ARITY[head]:
        return unspine(head, args)
    assert len(args) == ARITY[head]
    if head == "K":
        return args[0]
    if head == "S":
        return reduce(((args[0], args[2]), (args[1], args[2])), depth + 1)
    if head == "PAIR":
        return pair(as_num(args[0]), as_num(args[1]))
    if head == "FST":
        return unpair(as_num(args[0]))[0]
    if head == "SND":
        return unpair(as_num(args[0]))[1]
    if head == "SUCC":
        return as_num(args[0]) + 1
    if head == "IFEQ":
        return args[2] if as_num(args[0]) == as_num(args[1]) else args[3]
    if head == "DIVERGE":
        raise OracleDiverges()
    raise AssertionError(head)


def spine(term):
    args = []
    while isinstance(term, tuple):
        args.append(term[1])
        term = term[0]
    return term, args[::-1]


def unspine(head, args):
    acc = head
    for a in args:
        acc = (acc, a)
    return acc


def as_num(term):
    if not isinstance(term, int):
        raise OracleDiverges(f"stuck: expected numeral, got {term!r}")
    return term
