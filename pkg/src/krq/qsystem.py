"""Q-system recursion engine: symbolic characters, dimensions, rational points.

The system

    (Q_m^{(a)})^2 = Q_{m+1}^{(a)} Q_{m-1}^{(a)}
                    + prod_{b: C_ab < 0} prod_{k=0}^{-C_ab - 1}
                      Q^{(b)}_{floor((C_ba m - k) / C_ab)}

is solved for Q_{m+1}^{(a)} by exact division.  One engine runs the
recursion over any of three coefficient domains: the character ring Z[P]
(LaurentPoly), arbitrary-precision integers (dimensions), and exact
rationals at an evaluation point.  Short-root nodes carry t_a times more
entries than long ones; the scheduler advances whichever node has all
neighbor indices it needs, so every floor index exists when referenced.

Initial characters Q_1^{(a)} come from the fermionic formula, never from
the decomposition tables being verified.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .charring import table_character, table_dimension
from .fermionic import kr_decomposition
from .poly import QQ, LaurentPoly, poly_exact_div, poly_mul
from .rootdata import RootDatum

__all__ = [
    "q_initial",
    "q_initial_table",
    "CharSeq",
    "extend_symbolic",
    "dim_sequence",
    "eval_sequence",
    "draw_point",
    "EvalPointError",
]

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


class EvalPointError(ValueError):
    """Evaluation point hit a zero denominator; caller should re-draw."""


def q_initial_table(d: RootDatum, a: int) -> dict:
    """Decomposition of res W_1^{(a)} from the fermionic formula."""
    return kr_decomposition(d, a, 1)


def q_initial(d: RootDatum, a: int) -> LaurentPoly:
    """Q_1^{(a)} as an element of Z[P]^W."""
    return table_character(d, q_initial_table(d, a))


class CharSeq:
    """Values Q_0^{(a)} ... Q_M^{(a)} for one node; entries immutable once set."""

    def __init__(self, node: int, values: list):
        self.node = node
        self.values = values

    def __getitem__(self, m: int):
        return self.values[m]

    def top(self) -> int:
        return len(self.values) - 1


def _neighbor_indices(d: RootDatum, a: int, m: int) -> list[tuple[int, int]]:
    """(node, index) factors of the coupling product in the relation at m."""
    out = []
    i = a - 1
    for b in range(1, d.rank + 1):
        cab = d.cartan[i][b - 1]
        if b != a and cab < 0:
            cba = d.cartan[b - 1][i]
            for k in range(-cab):
                out.append((b, (cba * m - k) // cab))
    return out


class _Domain:
    """Ring-operation bundle for the extension engine."""

    def __init__(self, one, mul, sub, div, is_zero):
        self.one = one
        self.mul = mul
        self.sub = sub
        self.div = div
        self.is_zero = is_zero


def _extend(d: RootDatum, dom: _Domain, initial: dict, target_time: int) -> dict:
    """Advance every node a to index t_a * target_time; returns {a: CharSeq}."""
    seqs = {a: CharSeq(a, [dom.one, initial[a]]) for a in initial}
    targets = {a: d.t[a - 1] * target_time for a in initial}
    while True:
        progressed = False
        done = True
        for a in sorted(seqs):
            seq = seqs[a]
            while seq.top() < targets[a]:
                m = seq.top()
                need = _neighbor_indices(d, a, m)
                if any(seqs[b].top() < idx for b, idx in need):
                    break
                prod = dom.one
                for b, idx in need:
                    prod = dom.mul(prod, seqs[b][idx])
                sq = dom.mul(seq[m], seq[m])
                num = dom.sub(sq, prod)
                nxt = dom.div(num, seq[m - 1], a, m)
                if dom.is_zero(nxt):
                    raise AssertionError(f"Q_{m + 1}^({a}) vanished")
                seq.values.append(nxt)
                progressed = True
            if seq.top() < targets[a]:
                done = False
        if done:
            return seqs
        if not progressed:
            raise AssertionError("Q-system scheduling deadlock (missing coupled index)")


def extend_symbolic(d: RootDatum, target_time: int, dim_hint: bool = True) -> dict:
    """Symbolic CharSeq per node, all advanced to physical time target_time.

    Exact-division failure here falsifies the inputs; it is never masked.
    """
    dims = dim_sequence_all(d, target_time) if dim_hint else None

    def div(p, q, a, m):
        hint = dims[a][m + 1] if dims else None
        return poly_exact_div(p, q, coeff_bound=hint)

    dom = _Domain(
        one=LaurentPoly.one(d.rank),
        mul=poly_mul,
        sub=lambda p, q: p - q,
        div=div,
        is_zero=lambda p: p.is_zero(),
    )
    initial = {a: q_initial(d, a) for a in range(1, d.rank + 1)}
    return _extend(d, dom, initial, target_time)


def dim_sequence_all(d: RootDatum, target_time: int) -> dict:
    """Integer dimension sequences dim W_m^{(a)} for every node."""
    def div(p, q, a, m):
        quo, rem = divmod(p, q)
        if rem:
            raise AssertionError(f"dimension recursion not exact at node {a}, m={m}")
        return quo

    dom = _Domain(1, lambda x, y: x * y, lambda x, y: x - y, div, lambda x: x == 0)
    initial = {a: table_dimension(d, q_initial_table(d, a)) for a in range(1, d.rank + 1)}
    seqs = _extend(d, dom, initial, target_time)
    return {a: seqs[a].values for a in seqs}


def dim_sequence(d: RootDatum, a: int, M: int) -> list[int]:
    """dim W_m^{(a)} for m = 0..M."""
    t = d.t[a - 1]
    target = -(-M // t)
    return dim_sequence_all(d, target)[a][: M + 1]


def draw_point(rank: int, seed: int):
    """Distinct small primes per coordinate, reproducibly from a seed."""
    rng = random.Random(seed)
    return tuple(QQ(p) for p in rng.sample(_PRIMES, rank))


def eval_sequence_all(d: RootDatum, point, target_time: int) -> dict:
    """Exact rational Q-system sequences at an evaluation point."""
    pt = [QQ(x) for x in point]
    if any(x == 0 for x in pt):
        raise EvalPointError("coordinates must be nonzero")

    def div(p, q, a, m):
        if q == 0:
            raise EvalPointError(f"zero division at node {a}, m={m}; re-draw the point")
        return p / q

    dom = _Domain(QQ(1), lambda x, y: x * y, lambda x, y: x - y, div, lambda x: x == 0)
    initial = {a: q_initial(d, a).evaluate(pt) for a in range(1, d.rank + 1)}
    seqs = _extend(d, dom, initial, target_time)
    return {a: seqs[a].values for a in seqs}


def eval_sequence(d: RootDatum, a: int, point, M: int) -> list:
    """Q_m^{(a)} evaluated at the point, m = 0..M."""
    t = d.t[a - 1]
    target = -(-M // t)
    return eval_sequence_all(d, point, target)[a][: M + 1]
