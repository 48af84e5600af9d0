"""The character ring Z[P]^W: irreducible characters and decompositions.

Irreducible characters are computed by the Freudenthal multiplicity
recursion over dominant weights only; orbit expansion happens on demand.
Decomposition of a W-invariant polynomial into irreducible characters
inverts that by repeated subtraction of the height-maximal dominant term,
which doubles as a strong consistency check: a non-character input fails
loudly instead of decomposing.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .poly import LaurentPoly, poly_exact_div, poly_mul
from .rootdata import (
    LieType,
    RootDatum,
    Weight,
    build_root_datum,
    dominant_representative,
    inner_product,
    weyl_orbit,
)

__all__ = [
    "w_act",
    "is_w_invariant",
    "weights_of_irrep",
    "char_irrep",
    "dim_irrep",
    "orbit_sum",
    "weyl_alternating_sum",
    "decompose_character",
    "table_character",
    "table_dimension",
    "serialize_table",
    "deserialize_table",
    "NotACharacterError",
]


class NotACharacterError(ValueError):
    """Input to decompose_character is not a genuine character."""


def w_act(d: RootDatum, a: int, p: LaurentPoly) -> LaurentPoly:
    """Apply the simple reflection s_a to every exponent; a ring automorphism."""
    return p.map_exponents(lambda e: d.reflect(a, e))


def is_w_invariant(d: RootDatum, p: LaurentPoly) -> bool:
    return all(w_act(d, a, p) == p for a in range(1, d.rank + 1))


# -- weight sets and Freudenthal multiplicities ------------------------------

def _all_weights(d: RootDatum, lam: Weight) -> set:
    """Full weight set of L(lam) by saturation along simple-root strings."""
    lam = tuple(lam)
    seen = {lam}
    frontier = [lam]
    simple = [d.simple_root(a) for a in range(1, d.rank + 1)]
    while frontier:
        nxt = []
        for mu in frontier:
            for i, alpha in enumerate(simple):
                k = mu[i]
                if k > 0:
                    cur = mu
                    for _ in range(k):
                        cur = tuple(x - y for x, y in zip(cur, alpha))
                        if cur not in seen:
                            seen.add(cur)
                            nxt.append(cur)
        frontier = nxt
    return seen


@lru_cache(maxsize=None)
def _dominant_multiplicities(lt: LieType, lam: Weight) -> dict:
    """Freudenthal recursion; returns {dominant mu: multiplicity} for L(lam)."""
    d = build_root_datum(lt)
    weights = _all_weights(d, lam)
    dominant = [w for w in weights if d.is_dominant(w)]
    dominant.sort(key=lambda w: d.height(tuple(l - x for l, x in zip(lam, w))))
    rho = d.rho
    lam_rho = tuple(x + 1 for x in lam)
    norm_top = inner_product(d, lam_rho, lam_rho)
    mult: dict = {lam: 1}
    for mu in dominant:
        if mu == lam:
            continue
        mu_rho = tuple(x + 1 for x in mu)
        denom = norm_top - inner_product(d, mu_rho, mu_rho)
        acc = Fraction(0)
        for alpha in d.pos_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, alpha))
                if nu not in weights:
                    break
                m = mult.get(dominant_representative(d, nu), 0)
                if m:
                    acc += m * inner_product(d, nu, alpha)
                k += 1
        val = 2 * acc / denom
        if val != int(val) or val <= 0:
            raise AssertionError(f"Freudenthal gave {val} at {mu}")
        mult[mu] = int(val)
    return mult


def weights_of_irrep(d: RootDatum, lam: Weight) -> dict:
    """Dominant weights of L(lam) with their multiplicities."""
    if not d.is_dominant(lam) or not d.is_integral(lam):
        raise ValueError("highest weight must be dominant integral")
    return dict(_dominant_multiplicities(d.lie_type, tuple(int(x) for x in lam)))


def orbit_sum(d: RootDatum, lam: Weight) -> LaurentPoly:
    return LaurentPoly(d.rank, {w: 1 for w in weyl_orbit(d, lam)})


@lru_cache(maxsize=None)
def _char_cached(lt: LieType, lam: Weight) -> LaurentPoly:
    d = build_root_datum(lt)
    terms: dict = {}
    for mu, m in _dominant_multiplicities(lt, lam).items():
        for w in weyl_orbit(d, mu):
            terms[w] = m
    return LaurentPoly(d.rank, terms)


def char_irrep(d: RootDatum, lam: Weight) -> LaurentPoly:
    """Character of the irreducible with highest weight lam; W-invariant."""
    if not d.is_dominant(lam) or not d.is_integral(lam):
        raise ValueError("highest weight must be dominant integral")
    return _char_cached(d.lie_type, tuple(int(x) for x in lam))


def dim_irrep(d: RootDatum, lam: Weight) -> int:
    """Weyl dimension formula: an oracle independent of Freudenthal."""
    if not d.is_dominant(lam) or not d.is_integral(lam):
        raise ValueError("highest weight must be dominant integral")
    rho = d.rho
    lam_rho = tuple(x + 1 for x in lam)
    val = Fraction(1)
    for alpha in d.pos_roots:
        val *= inner_product(d, lam_rho, alpha) / inner_product(d, rho, alpha)
    assert val == int(val)
    return int(val)


def weyl_alternating_sum(d: RootDatum, lam: Weight) -> LaurentPoly:
    """A_lam = sum_w det(w) e^{w(lam)} for strictly dominant lam.

    A_{lam+rho} / A_rho is the Weyl character formula; multiplying a
    character sequence by the fixed nonzero A_rho commutes with difference
    operators, which makes this the compact representation for recurrence
    checks on large sequences.
    """
    if not all(x > 0 for x in lam):
        raise ValueError("alternating sum needs a strictly dominant weight")
    lam = tuple(lam)
    terms = {lam: 1}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            sgn = terms[w]
            for a in range(1, d.rank + 1):
                img = d.reflect(a, w)
                if img not in terms:
                    terms[img] = -sgn
                    nxt.append(img)
        frontier = nxt
    return LaurentPoly(d.rank, terms)


# -- decomposition tables -----------------------------------------------------

def table_character(d: RootDatum, table: dict) -> LaurentPoly:
    """Sum of mult * char_irrep over a {dominant weight: multiplicity} table."""
    out = LaurentPoly.zero(d.rank)
    for lam, m in table.items():
        out = out + char_irrep(d, lam).scale(m)
    return out


def table_dimension(d: RootDatum, table: dict) -> int:
    return sum(m * dim_irrep(d, lam) for lam, m in table.items())


def decompose_character(d: RootDatum, p: LaurentPoly) -> dict:
    """Write a W-invariant character as {dominant weight: multiplicity}.

    Subtracts the height-maximal dominant term repeatedly; fails if the
    input is not W-invariant with a genuine nonnegative decomposition.
    """
    if not is_w_invariant(d, p):
        raise NotACharacterError("input is not W-invariant")
    table: dict = {}
    rem = p
    while not rem.is_zero():
        lead = None
        lead_key = None
        for e in rem.terms:
            if all(x >= 0 for x in e):
                key = (d.height(e), e)
                if lead_key is None or key > lead_key:
                    lead, lead_key = e, key
        if lead is None:
            raise NotACharacterError("nonzero remainder without dominant support")
        mult = rem.terms[lead]
        if mult < 0:
            raise NotACharacterError(f"negative multiplicity {mult} at {lead}")
        table[lead] = mult
        rem = rem - char_irrep(d, lead).scale(mult)
    return table


# -- canonical JSON ------------------------------------------------------------

def serialize_table(table: dict) -> list:
    return [[list(lam), str(m)] for lam, m in sorted(table.items())]


def deserialize_table(obj: list) -> dict:
    return {tuple(lam): int(m) for lam, m in obj}
