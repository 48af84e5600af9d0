"""Difference operators annihilating KR character sequences.

An operator is kept in factored form: a multiset of W-orbit blocks
(dominant generator, shift step, multiplicity), each block standing for
prod_{lam in O(gen)} (1 - e^lam Delta^step)^mult.  Orders, divisibility and
the finite-verification bounds work at the block level; expansion to
individual (weight, step) factors or to Delta-power coefficients happens on
demand.

The generator tables for each node reproduce the source tables exactly:
classical families by closed-form rules, exceptional ones as data.
Uncovered nodes (E7: 4; E8: 3,4,5,8) raise UncoveredNodeError.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .charring import char_irrep, is_w_invariant, weights_of_irrep, weyl_alternating_sum
from .poly import LaurentPoly
from .rootdata import (
    RootDatum,
    Weight,
    dominance_leq,
    dominant_representative,
    orbit_size,
    weyl_orbit,
)

__all__ = [
    "UncoveredNodeError",
    "LambdaTables",
    "DiffOperator",
    "fundamental_weight_table",
    "lambda_tables",
    "build_operator",
    "operator_orders",
    "expand_operator",
    "apply_factored_symbolic",
    "apply_factored_eval",
    "verify_recurrence_symbolic",
    "verify_recurrence_eval",
    "derived_operator",
    "sumset_orbits",
    "exterior_square_weights",
    "tensor_weight_set",
    "divides",
    "finite_verification_bound",
    "section4_operator",
    "section4_pairs",
    "conjecture_weights",
]

COVERED_NODES = {
    "E7": (1, 2, 3, 5, 6, 7),
    "E8": (1, 2, 6, 7),
}


class UncoveredNodeError(ValueError):
    """Node outside the proven operator tables (E7: 4; E8: 3, 4, 5, 8)."""


def _w(r: int, **kw) -> Weight:
    v = [0] * r
    for k, c in kw.items():
        v[int(k[1:]) - 1] = c
    return tuple(v)


# -- weight sets of fundamental representations (dominant parts) --------------

_E_FUND = {
    ("E", 6): {
        1: ["w1"], 2: ["w2", "w5"], 3: ["0", "w3", "w1+w5", "w6"],
        4: ["w1", "w4"], 5: ["w5"], 6: ["0", "w6"],
    },
    ("E", 7): {
        1: ["0", "w1"], 2: ["0", "w1", "w2", "w5"],
        3: ["0", "w1", "2w1", "w2", "w3", "w5", "w1+w5", "2w6", "w6+w7"],
        4: ["w4", "w6", "w1+w6", "w7"], 5: ["0", "w1", "w5"],
        6: ["w6"], 7: ["w6", "w7"],
    },
    ("E", 8): {
        1: ["0", "w1", "w7"],
        2: ["0", "w1", "w2", "w5", "w6", "w7", "2w7", "w1+w7", "w8"],
        3: ["0", "w3", "w6", "2w1", "w1+w6", "w1+w7", "w5+w7", "w1+w8",
            "w1", "w4", "w7", "w1+w5", "2w7", "2w1+w7", "w6+w7", "w6+w8",
            "w2", "w5", "w8", "2w6", "3w7", "w2+w7", "w1+2w7", "w7+w8"],
        4: ["0", "w1", "2w1", "w2", "w4", "w5", "w6", "w1+w6", "w7", "2w7",
            "w1+w7", "w6+w7", "w8", "w7+w8"],
        5: ["0", "w1", "w5", "w6", "w7", "2w7", "w1+w7", "w8"],
        6: ["0", "w1", "w6", "w7"], 7: ["0", "w7"],
        8: ["0", "w1", "w6", "w7", "w8"],
    },
    ("F", 4): {
        1: ["0", "w1", "w4"],
        2: ["0", "w1", "w2", "w3", "w4", "2w4", "w1+w4"],
        3: ["0", "w1", "w3", "w4"], 4: ["0", "w4"],
    },
    ("G", 2): {1: ["0", "w1", "w2"], 2: ["0", "w2"]},
}


def _parse_weights(r: int, names: list[str]) -> tuple:
    out = []
    for s in names:
        v = [0] * r
        if s != "0":
            for part in s.split("+"):
                part = part.strip()
                mult = 1
                if part[0].isdigit():
                    mult = int(part[0])
                    part = part[1:]
                v[int(part[1:]) - 1] += mult
        out.append(tuple(v))
    return tuple(out)


def fundamental_weight_table(d: RootDatum, a: int) -> tuple:
    """Dominant weights of L(omega_a), as tabulated for every type and node."""
    r, f = d.rank, d.lie_type.family
    if f == "A":
        return (d.fundamental_weight(a),)
    if f == "B":
        # spin node has a single dominant weight; the others carry the whole chain
        if a == r:
            return (d.fundamental_weight(a),)
        return tuple(_omega(d, b) for b in range(0, a + 1))
    if f == "C":
        return tuple(_omega(d, b) for b in range(a % 2, a + 1, 2))
    if f == "D":
        if a >= r - 1:
            return (d.fundamental_weight(a),)
        return tuple(_omega(d, b) for b in range(a % 2, a + 1, 2))
    return _parse_weights(r, _E_FUND[(f, r)][a])


def _omega(d: RootDatum, b: int) -> Weight:
    return (0,) * d.rank if b == 0 else d.fundamental_weight(b)


# -- Lambda_a / Lambda'_a tables ----------------------------------------------

@dataclass(frozen=True)
class LambdaTables:
    """Dominant orbit generators of the two weight sets entering L_a."""

    node: int
    lambda_a: tuple  # orbit generators, factors (1 - e^lam Delta)
    lambda_a_prime: tuple  # orbit generators, factors (1 - e^lam Delta^{t_a})


def lambda_tables(d: RootDatum, a: int) -> LambdaTables:
    """Generator sets for the annihilating operator of node a."""
    r, f = d.rank, d.lie_type.family
    if not 1 <= a <= r:
        raise ValueError(f"node {a} out of range")
    key = f"{f}{r}"
    if key in COVERED_NODES and a not in COVERED_NODES[key]:
        raise UncoveredNodeError(
            f"{key} node {a}: no proven operator table "
            f"(covered nodes: {COVERED_NODES[key]})"
        )
    if f == "B":
        if a == r:
            lam = (d.fundamental_weight(r),)
            lamp = tuple(_omega(d, b) for b in range(r % 2, r - 1, 2))
        else:
            lam = tuple(_omega(d, b) for b in range(a % 2, a + 1, 2))
            lamp = ()
        return LambdaTables(a, lam, lamp)
    if f == "C":
        lam = (d.fundamental_weight(a),)
        lamp = tuple(_omega(d, b) for b in range(a)) if a < r else ()
        return LambdaTables(a, lam, lamp)
    if f == "F":
        lam4 = {
            1: (["0", "w1"], []),
            2: (["0", "w1", "w2", "2w4"], []),
            3: (["w3"], ["0", "w1", "2w1", "w2", "2w4", "w1+2w4"]),
            4: (["w4"], ["0", "w1"]),
        }[a]
        return LambdaTables(a, _parse_weights(r, lam4[0]), _parse_weights(r, lam4[1]))
    if f == "G":
        lam2 = {1: (["0", "w1"], []), 2: (["w2"], ["0", "w1"])}[a]
        return LambdaTables(a, _parse_weights(r, lam2[0]), _parse_weights(r, lam2[1]))
    # A, D, E: simply laced, Lambda_a = Omega(L(omega_a))
    return LambdaTables(a, fundamental_weight_table(d, a), ())


# -- operators -----------------------------------------------------------------

@dataclass(frozen=True)
class DiffOperator:
    """Factored difference operator prod over blocks (1 - e^lam Delta^step)^mult."""

    blocks: tuple  # ((dominant generator, step, multiplicity), ...)

    def order(self, d: RootDatum) -> int:
        return sum(orbit_size(d, g) * s * m for g, s, m in self.blocks)

    def factors(self, d: RootDatum) -> list[tuple[Weight, int]]:
        """Expanded (weight, step) factor list, with multiplicity."""
        out = []
        for g, s, m in self.blocks:
            for w in sorted(weyl_orbit(d, g)):
                out.extend([(w, s)] * m)
        return out

    def block_counter(self) -> Counter:
        c: Counter = Counter()
        for g, s, m in self.blocks:
            c[(g, s)] += m
        return c


def build_operator(d: RootDatum, t: LambdaTables) -> DiffOperator:
    """L_a from its generator tables; steps are 1 for Lambda_a, t_a for Lambda'_a."""
    ta = d.t[t.node - 1]
    blocks = [(g, 1, 1) for g in t.lambda_a] + [(g, ta, 1) for g in t.lambda_a_prime]
    return DiffOperator(tuple(blocks))


def operator_orders(d: RootDatum) -> dict:
    """Node -> order of L_a, for every covered node."""
    out = {}
    for a in range(1, d.rank + 1):
        try:
            out[a] = build_operator(d, lambda_tables(d, a)).order(d)
        except UncoveredNodeError:
            out[a] = None
    return out


def expand_operator(d: RootDatum, op: DiffOperator) -> list[LaurentPoly]:
    """Coefficients C_0..C_ell with sum_k C_k Delta^k = the factored product."""
    coeffs = [LaurentPoly.one(d.rank)]
    for lam, step in op.factors(d):
        if not d.is_integral(lam):
            raise ValueError(f"factor weight {lam} is not integral")
        lam = tuple(int(x) for x in lam)
        new = [LaurentPoly.zero(d.rank) for _ in range(len(coeffs) + step)]
        for k, c in enumerate(coeffs):
            new[k] = new[k] + c
            new[k + step] = new[k + step] - c.shift(lam)
        coeffs = new
    return coeffs


# -- applying operators to sequences -------------------------------------------

def apply_factored_symbolic(d: RootDatum, op: DiffOperator, seq: list[LaurentPoly]) -> list[LaurentPoly]:
    """Apply the factored operator to a polynomial sequence (Delta kills m < 0)."""
    cur = list(seq)
    for lam, step in op.factors(d):
        lam = tuple(int(x) for x in lam)
        nxt = cur[:step]
        for m in range(step, len(cur)):
            nxt.append(cur[m].sub_shifted(cur[m - step], lam))
        cur = nxt
    return cur


def apply_factored_eval(factors: list, seq: list) -> list:
    """Same, over exact rationals; factors are (root value, step) pairs."""
    cur = list(seq)
    for val, step in factors:
        nxt = cur[:step]
        for m in range(step, len(cur)):
            nxt.append(cur[m] - val * cur[m - step])
        cur = nxt
    return cur


def verify_recurrence_symbolic(d: RootDatum, op: DiffOperator, seq: list[LaurentPoly],
                               m_range) -> dict:
    """Check L[seq]_m = 0 (the zero polynomial) for each m in m_range.

    m_range values must be >= order(op) and < len(seq).
    """
    ell = op.order(d)
    ms = sorted(m_range)
    if ms and ms[-1] >= len(seq):
        raise ValueError("sequence too short for requested range")
    if ms and ms[0] < ell:
        raise ValueError(f"recurrence only asserted from m = order = {ell}")
    residuals = apply_factored_symbolic(d, op, seq[: (ms[-1] + 1) if ms else 0])
    failures = [m for m in ms if not residuals[m].is_zero()]
    report = {
        "order": ell,
        "mode": "symbolic",
        "m_checked": ms,
        "residual_zero": not failures,
    }
    if failures:
        m0 = failures[0]
        sample = sorted(residuals[m0].terms.items())[:4]
        report["first_failure"] = {
            "m": m0,
            "residual_terms": len(residuals[m0].terms),
            "sample": [[list(e), str(c)] for e, c in sample],
        }
    return report


def numerator_sequence(d: RootDatum, tables: list[dict]) -> list[LaurentPoly]:
    """A_rho-multiplied characters from decomposition tables.

    N_m = sum mult * A_{lam+rho} equals A_rho * Q_m by the Weyl character
    formula, with |W|-fold smaller support.  Since Z[P] is an integral
    domain and A_rho is nonzero and independent of m, L[N]_m = A_rho L[Q]_m
    vanishes exactly when L[Q]_m does; recurrence checks on N are therefore
    equivalent to checks on Q and feasible at much larger m.
    """
    cache: dict = {}
    out = []
    for table in tables:
        acc = LaurentPoly.zero(d.rank)
        for lam, mult in table.items():
            key = tuple(lam)
            poly = cache.get(key)
            if poly is None:
                shifted = tuple(int(x) + 1 for x in lam)
                poly = cache.setdefault(key, weyl_alternating_sum(d, shifted))
            acc = acc + poly.scale(mult)
        out.append(acc)
    return out


def verify_recurrence_eval(d: RootDatum, op: DiffOperator, point, seq_values: list,
                           m_range) -> dict:
    """Check L[seq]_m = 0 over exact rationals at an evaluation point."""
    ell = op.order(d)
    ms = sorted(m_range)
    if ms and ms[0] < ell:
        raise ValueError(f"recurrence only asserted from m = order = {ell}")
    pt = list(point)
    factors = []
    for lam, step in op.factors(d):
        val = LaurentPoly.monomial(tuple(int(x) for x in lam)).evaluate(pt)
        factors.append((val, step))
    residuals = apply_factored_eval(factors, seq_values[: (ms[-1] + 1) if ms else 0])
    failures = [m for m in ms if residuals[m] != 0]
    report = {
        "order": ell,
        "mode": "eval",
        "point": [str(x) for x in pt],
        "m_checked": ms,
        "residual_zero": not failures,
    }
    if failures:
        report["first_failure"] = {"m": failures[0], "residual": str(residuals[failures[0]])}
    return report


# -- derived operators and weight-set identities --------------------------------

def derived_operator(d: RootDatum, op: DiffOperator) -> DiffOperator:
    """Operator annihilating a_m^2 - a_{m+1} a_{m-1} when op annihilates a_m.

    Requires all steps 1 and no multiple roots; the roots of the result are
    the pairwise products of distinct roots, collected as a set.
    """
    factors = op.factors(d)
    if any(s != 1 for _, s in factors):
        raise ValueError("derived operator needs all steps equal to 1")
    weights = [w for w, _ in factors]
    if len(set(weights)) != len(weights):
        raise ValueError("operator has multiple roots")
    sums = {tuple(x + y for x, y in zip(u, v))
            for i, u in enumerate(weights) for v in weights[i + 1:]}
    return DiffOperator(tuple((g, 1, 1) for g in _orbit_generators(d, sums)))


def _orbit_generators(d: RootDatum, weights: set) -> tuple:
    gens = {dominant_representative(d, w) for w in weights}
    # sanity: the set must be W-invariant (unions of full orbits)
    total = sum(orbit_size(d, g) for g in gens)
    if total != len(weights):
        raise ValueError("weight set is not W-invariant")
    return tuple(sorted(gens))


def sumset_orbits(d: RootDatum, A, B, distinct: bool = False) -> tuple:
    """Orbit decomposition (dominant generators) of {a+b}, optionally a != b.

    A and B must be W-invariant sets; entries may be non-integral weights
    (halves arise in the short-node analysis).
    """
    A = [tuple(x) for x in A]
    B = [tuple(x) for x in B]
    sums = set()
    for u in A:
        for v in B:
            if distinct and u == v:
                continue
            sums.add(tuple(x + y for x, y in zip(u, v)))
    return _orbit_generators(d, sums)


def exterior_square_weights(d: RootDatum, a: int) -> set:
    """Weight set of the second exterior power of L(omega_a).

    Asserts the two identities it is used through: equality with
    Omega(L(2 omega_a - alpha_a)) and with the neighbor tensor product.
    """
    dom = weights_of_irrep(d, d.fundamental_weight(a))
    expanded: dict = {}
    for mu, m in dom.items():
        for w in weyl_orbit(d, mu):
            expanded[w] = m
    ws = list(expanded)
    out = set()
    for i, u in enumerate(ws):
        if expanded[u] >= 2:
            out.add(tuple(2 * x for x in u))
        for v in ws[i + 1:]:
            out.add(tuple(x + y for x, y in zip(u, v)))
    nu = tuple(
        2 * w - ar for w, ar in zip(d.fundamental_weight(a), d.simple_root(a))
    )
    lemma_set = _full_weight_set(d, nu)
    if out != lemma_set:
        raise AssertionError("exterior-square weight set differs from L(2w_a - a_a)")
    tensor = tensor_weight_set(d, a)
    if out != tensor:
        raise AssertionError("exterior-square weight set differs from neighbor tensor")
    return out


def _full_weight_set(d: RootDatum, lam: Weight) -> set:
    out = set()
    for mu in weights_of_irrep(d, lam):
        out |= weyl_orbit(d, mu)
    return out


def tensor_weight_set(d: RootDatum, a: int) -> set:
    """Weights of tensor over neighbors b of L(omega_b)^{(-C_ba)}."""
    cur = {(0,) * d.rank}
    i = a - 1
    for b in range(1, d.rank + 1):
        if b == a or d.cartan[i][b - 1] == 0:
            continue
        wset = _full_weight_set(d, d.fundamental_weight(b))
        for _ in range(-d.cartan[b - 1][i]):
            cur = {tuple(x + y for x, y in zip(u, v)) for u in cur for v in wset}
    return cur


# -- divisibility and finite verification ----------------------------------------

def divides(opA: DiffOperator, opB: DiffOperator) -> bool:
    """opA | opB as factored operators: multiset containment of factors."""
    ca, cb = opA.block_counter(), opB.block_counter()
    return all(cb.get(k, 0) >= v for k, v in ca.items())


def conjecture_weights(d: RootDatum, a: int) -> tuple:
    """(lambda_1..lambda_4) of the multiplicity conjecture for (type, node)."""
    key = (d.lie_type.family, d.rank, a)
    table = {
        ("E", 6, 3): ("w1+w5", "w2+w4", "w3", "w6"),
        ("E", 7, 2): ("w5", "w3", "w2", "w1"),
        ("E", 8, 6): ("w1", "w5", "w6", "w7"),
        ("F", 4, 2): ("2w4", "2w3", "w2", "w1"),
    }
    if key not in table:
        raise UncoveredNodeError(f"no conjectured formula for {d.lie_type} node {a}")
    return _parse_weights(d.rank, list(table[key]))


def section4_operator(d: RootDatum, a: int) -> DiffOperator:
    """The long operator of the finite-verification argument for (type, node)."""
    if d.lie_type.family == "G":
        if a != 2:
            raise UncoveredNodeError("G2 finite verification applies to node 2")
        zero = (0,) * d.rank
        w1, w2 = d.fundamental_weight(1), d.fundamental_weight(2)
        return DiffOperator(((zero, 3, 1), (w1, 3, 2), (w2, 1, 1), (w2, 2, 1)))
    l1, l2, l3, l4 = conjecture_weights(d, a)
    zero = (0,) * d.rank
    return DiffOperator((
        (zero, 1, 1), (l1, 1, 1), (l2, 2, 1), (l3, 1, 1), (l3, 2, 1), (l4, 1, 2),
    ))


def section4_pairs() -> tuple:
    """(type string, node) pairs with a finite-verification reduction."""
    return (("E6", 3), ("E7", 2), ("E8", 6), ("F4", 2), ("G2", 2))


def finite_verification_bound(d: RootDatum, a: int) -> int:
    """Order of the section-4 operator: how many initial m settle the formula."""
    return section4_operator(d, a).order(d)
