"""Closed-form solution of the G2 Q-system, verified at exact rational points.

The two sequences

    R_m^{(1)} = sum_{lam in L1} c_lam e^{m lam}
    R_{3m+k}^{(2)} = sum_{lam in L2} c_lam e^{(3m+k) lam}
                     + sum_{lam in L2'} t_{lam,k} e^{m lam}

solve the explicit G2 system once the seed coefficients below are extended
over each W-orbit by w(c_lam) = c_{w(lam)}.  Coefficients are stored as
(numerator, denominator) Laurent-polynomial pairs and never normalized; W
acts monomial-wise on both parts, and evaluation is the only consumer.

Verification here is evaluation at many exact rational points: evidence
for the symbolic identities, not a proof, and reported as such.
"""
from __future__ import annotations

from dataclasses import dataclass

from .poly import QQ, LaurentPoly
from .qsystem import eval_sequence_all
from .rootdata import (
    LieType,
    RootDatum,
    build_root_datum,
    weyl_orbit,
    weyl_orbit_with_words,
)

__all__ = ["DegeneratePointError", "ClosedFormG2", "coefficients_at",
           "r_sequences", "verify_g2_identities"]


class DegeneratePointError(ValueError):
    """A denominator of the closed form vanishes at the point; re-draw."""


def _p(*terms) -> LaurentPoly:
    """Laurent polynomial in (y1, y2) from (coeff, e1, e2) triples."""
    out = {}
    for c, a, b in terms:
        out[(a, b)] = out.get((a, b), 0) + c
    return LaurentPoly(2, out)


def _mul(*ps: LaurentPoly) -> LaurentPoly:
    acc = LaurentPoly.one(2)
    for p in ps:
        acc = acc * p
    return acc


# denominator atoms
_D1 = _p((1, 1, 0), (-1, 0, 0))   # y1 - 1
_D2 = _p((1, 0, 1), (-1, 0, 0))   # y2 - 1
_D3 = _p((1, 1, 0), (-1, 0, 1))   # y1 - y2
_D4 = _p((1, 1, 0), (-1, 0, 2))   # y1 - y2^2
_D5 = _p((1, 1, 0), (-1, 0, 3))   # y1 - y2^3
_D6 = _p((1, 2, 0), (-1, 0, 3))   # y1^2 - y2^3


def _pow(p: LaurentPoly, k: int) -> LaurentPoly:
    return _mul(*([p] * k))


def _seed_coefficients() -> dict:
    """The printed seed expressions: c_0, c_{w1}, c_{w2}, t_{0,j}, t_{w1,j}."""
    c0 = (
        _mul(
            _p((-2, 3, 4)),
            _p((1, 0, 2), (1, 0, 1), (1, 1, 0)),
            _p((1, 0, 2), (1, 1, 1), (1, 1, 0)),
        ),
        _mul(_pow(_D1, 2), _pow(_D5, 2), _pow(_D6, 2)),
    )
    c_w1 = (
        _p((-1, 5, 4)),
        _mul(_pow(_D1, 2), _D3, _D2, _D5, _D6),
    )
    c_w2 = (
        _p((1, 4, 13)),
        _mul(_pow(_D1, 3), _D3, _pow(_D2, 2), _D4, _pow(_D5, 3)),
    )
    den_t0 = _mul(_pow(_D1, 2), _pow(_D3, 2), _pow(_D2, 2),
                  _pow(_D4, 2), _pow(_D5, 2), _pow(_D6, 2))
    t00 = (
        _mul(_p((-2, 4, 6)), _p(
            (1, 0, 8), (-1, 1, 7), (-1, 0, 7), (1, 2, 6), (1, 1, 6), (1, 0, 6),
            (1, 2, 5), (1, 1, 5), (-1, 3, 4), (-6, 2, 4), (-1, 1, 4),
            (1, 3, 3), (1, 2, 3), (1, 4, 2), (1, 3, 2), (1, 2, 2),
            (-1, 4, 1), (-1, 3, 1), (1, 4, 0),
        )),
        den_t0,
    )
    t01 = (
        _mul(_p((-2, 4, 7)), _p(
            (1, 1, 6), (1, 0, 6), (-1, 1, 5), (-1, 2, 4), (-1, 1, 4),
            (1, 3, 3), (1, 1, 3), (-1, 3, 2), (-1, 2, 2), (-1, 3, 1),
            (1, 4, 0), (1, 3, 0),
        )),
        den_t0,
    )
    den_tw1 = _mul(_pow(_D1, 2), _D3, _D2, _pow(_D5, 3), _pow(_D6, 3))
    tw10 = (
        _mul(_p((-1, 6, 6)), _p(
            (1, 0, 8), (4, 1, 6), (2, 2, 5), (2, 1, 5), (9, 2, 4),
            (2, 3, 3), (2, 2, 3), (4, 3, 2), (1, 4, 0),
        )),
        den_tw1,
    )
    tw11 = (
        _mul(_p((-1, 7, 7)), _p(
            (2, 0, 6), (3, 0, 5), (6, 1, 4), (1, 2, 3), (4, 1, 3),
            (6, 2, 2), (3, 2, 1), (2, 3, 0),
        )),
        den_tw1,
    )
    tw12 = (
        _mul(_p((-1, 7, 7)), _p(
            (2, 0, 6), (3, 1, 5), (6, 1, 4), (4, 2, 3), (1, 1, 3),
            (6, 2, 2), (3, 3, 1), (2, 3, 0),
        )),
        den_tw1,
    )
    return {"c0": c0, "c_w1": c_w1, "c_w2": c_w2,
            "t0": (t00, t01, t01), "tw1": (tw10, tw11, tw12)}


def _apply_word(d: RootDatum, word: list[int], p: LaurentPoly) -> LaurentPoly:
    for a in word:
        p = p.map_exponents(lambda e: d.reflect(a, e))
    return p


@dataclass(frozen=True)
class ClosedFormG2:
    """All orbit-extended coefficients: 13 c_lam and 21 t_{lam,j} pairs."""

    c: dict  # lam -> (num, den)
    t: dict  # (lam, j) -> (num, den)


def closed_form() -> ClosedFormG2:
    d = build_root_datum(LieType("G", 2))
    seeds = _seed_coefficients()
    c = {(0, 0): seeds["c0"]}
    t = {((0, 0), j): seeds["t0"][j] for j in range(3)}
    for gen, key in (((1, 0), "c_w1"), ((0, 1), "c_w2")):
        words = weyl_orbit_with_words(d, gen)
        for lam, word in words.items():
            num, den = seeds[key]
            c[lam] = (_apply_word(d, word, num), _apply_word(d, word, den))
    words = weyl_orbit_with_words(d, (1, 0))
    for lam, word in words.items():
        for j in range(3):
            num, den = seeds["tw1"][j]
            t[(lam, j)] = (_apply_word(d, word, num), _apply_word(d, word, den))
    return ClosedFormG2(c=c, t=t)


def coefficients_at(point) -> tuple[dict, dict]:
    """Evaluate all coefficients at the point; exact rationals.

    Raises DegeneratePointError when any orbit-image denominator vanishes.
    """
    cf = closed_form()
    pt = [QQ(x) for x in point]
    cvals = {}
    for lam, (num, den) in cf.c.items():
        dv = den.evaluate(pt)
        if dv == 0:
            raise DegeneratePointError(f"denominator of c_{lam} vanishes at {point}")
        cvals[lam] = num.evaluate(pt) / dv
    tvals = {}
    for key, (num, den) in cf.t.items():
        dv = den.evaluate(pt)
        if dv == 0:
            raise DegeneratePointError(f"denominator of t_{key} vanishes at {point}")
        tvals[key] = num.evaluate(pt) / dv
    return cvals, tvals


def _exp_val(pt, lam) -> object:
    return pt[0] ** lam[0] * pt[1] ** lam[1]


def r_sequences(point, M: int) -> tuple[list, list]:
    """(R^{(1)}_0..M, R^{(2)}_0..3M) evaluated exactly at the point."""
    d = build_root_datum(LieType("G", 2))
    pt = [QQ(x) for x in point]
    cvals, tvals = coefficients_at(pt)
    lam1 = [(0, 0)] + sorted(weyl_orbit(d, (1, 0)))
    lam2 = sorted(weyl_orbit(d, (0, 1)))
    e1 = {lam: _exp_val(pt, lam) for lam in lam1}
    e2 = {lam: _exp_val(pt, lam) for lam in lam2}
    r1 = []
    for m in range(M + 1):
        r1.append(sum(cvals[lam] * e1[lam] ** m for lam in lam1))
    r2 = []
    for big in range(3 * M + 1):
        k = big % 3
        m = big // 3
        val = sum(cvals[lam] * e2[lam] ** big for lam in lam2)
        val += sum(tvals[(lam, k)] * e1[lam] ** m for lam in lam1)
        r2.append(val)
    return r1, r2


def verify_g2_identities(point, M: int) -> dict:
    """Check the explicit G2 system for R and the equality R = Q up to index M.

    Relations, for m >= 1 (and the two +1/+2 branches from m >= 0):
      (R1_m)^2 = R1_{m-1} R1_{m+1} + R2_{3m}
      (R2_{3m})^2 = R2_{3m-1} R2_{3m+1} + (R1_m)^3
      (R2_{3m+1})^2 = R2_{3m} R2_{3m+2} + (R1_m)^2 R1_{m+1}
      (R2_{3m+2})^2 = R2_{3m+1} R2_{3m+3} + R1_m (R1_{m+1})^2
    """
    d = build_root_datum(LieType("G", 2))
    pt = [QQ(x) for x in point]
    r1, r2 = r_sequences(pt, M + 1)
    failures = []
    for m in range(1, M + 1):
        if r1[m] ** 2 != r1[m - 1] * r1[m + 1] + r2[3 * m]:
            failures.append(("R1", m))
        if r2[3 * m] ** 2 != r2[3 * m - 1] * r2[3 * m + 1] + r1[m] ** 3:
            failures.append(("R2, 3m", m))
    for m in range(0, M + 1):
        if r2[3 * m + 1] ** 2 != r2[3 * m] * r2[3 * m + 2] + r1[m] ** 2 * r1[m + 1]:
            failures.append(("R2, 3m+1", m))
        if 3 * m + 3 <= 3 * (M + 1):
            if r2[3 * m + 2] ** 2 != r2[3 * m + 1] * r2[3 * m + 3] + r1[m] * r1[m + 1] ** 2:
                failures.append(("R2, 3m+2", m))
    seqs = eval_sequence_all(d, pt, M + 1)
    q_match = (
        all(seqs[1][m] == r1[m] for m in range(M + 1))
        and all(seqs[2][m] == r2[m] for m in range(min(3 * (M + 1), len(seqs[2]))))
    )
    return {
        "point": [str(x) for x in pt],
        "m_max": M,
        "identities_ok": not failures,
        "q_match_ok": bool(q_match),
        "failures": failures[:5],
    }
