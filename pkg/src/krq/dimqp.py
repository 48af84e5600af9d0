"""Dimension quasipolynomials of KR modules.

dim W_m^{(a)} is a quasipolynomial in m of degree e_a = 2 * (row sum of
C^{-1}) and period t_a.  Its generating function is
h-vector / (1 - z^{t_a})^{e_a + 1}; the h-vector comes from finite
differencing of the dimension sequence and everything else (branch
polynomials, reciprocity, negative-string zeros, leading coefficients)
is reconstructed exactly from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

from .qsystem import dim_sequence_all
from .rootdata import RootDatum

__all__ = [
    "degree_e",
    "c_length",
    "h_vector",
    "HVector",
    "QuasiPoly",
    "quasipoly",
    "leading_coefficient",
    "check_qsystem_quasipoly",
    "reciprocity_check",
    "negative_string_check",
    "hvector_properties",
]


def degree_e(d: RootDatum, a: int) -> int:
    """Quasipolynomial degree: twice the a-th row sum of the inverse Cartan matrix."""
    val = 2 * sum(d.cartan_inv[a - 1])
    if val != int(val):
        raise AssertionError(f"degree 2*rowsum not integral at node {a}")
    return int(val)


def c_length(d: RootDatum, a: int) -> int:
    """Numerator degree c_a = t_a (e_a + 1 - h_vee)."""
    return d.t[a - 1] * (degree_e(d, a) + 1 - d.dual_coxeter)


@dataclass(frozen=True)
class HVector:
    node: int
    h: tuple

    def __len__(self):
        return len(self.h)


def h_vector(d: RootDatum, a: int, dims: list[int] | None = None, slack: int = 6) -> HVector:
    """Numerator coefficients of sum dim W_m^{(a)} z^m over (1 - z^{t_a})^{e_a+1}.

    Finite differencing of the dimension sequence; entries past
    c_a = t_a (e_a + 1 - h_vee) must vanish and are checked with some slack,
    which is the computational content of the c_a formula.
    """
    t = d.t[a - 1]
    e = degree_e(d, a)
    c = c_length(d, a)
    top = t * (e + 1) + slack
    if dims is None:
        dims = dim_sequence_for_node(d, a, top)
    if len(dims) <= top:
        raise ValueError("dimension sequence too short for h-vector extraction")
    h = []
    for j in range(top + 1):
        v = sum(
            (-1) ** k * comb(e + 1, k) * dims[j - t * k]
            for k in range(min(j // t, e + 1) + 1)
        )
        h.append(v)
    for j in range(c + 1, top + 1):
        if h[j] != 0:
            raise AssertionError(
                f"h-vector entry h_{j} = {h[j]} beyond c_a = {c} at node {a}"
            )
    if h[c] == 0:
        raise AssertionError(f"h-vector top entry h_{c} vanishes at node {a}")
    return HVector(a, tuple(h[: c + 1]))


def dim_sequence_for_node(d: RootDatum, a: int, top: int) -> list[int]:
    t = d.t[a - 1]
    target = -(-top // t)
    return dim_sequence_all(d, target)[a][: top + 1]


@dataclass(frozen=True)
class QuasiPoly:
    """Period-t bundle of branch polynomials p_k with value(t*n + k) = p_k(n).

    Branch coefficients are exact rationals, highest degree first.
    """

    node: int
    period: int
    degree: int
    branches: tuple  # period many coefficient tuples (len degree+1, Fractions)

    def value(self, m: int) -> Fraction:
        k = m % self.period
        n = (m - k) // self.period
        acc = Fraction(0)
        for coef in self.branches[k]:
            acc = acc * n + coef
        return acc

    def branch_poly(self, k: int) -> tuple:
        return self.branches[k]


def _binom_poly_shifted(e: int, shift: int) -> list[Fraction]:
    """Coefficients (highest first) of binom(e + n - shift, e) as a polynomial in n."""
    coeffs = [Fraction(1)]
    for i in range(1, e + 1):
        root = Fraction(shift - i)  # factor (n - (shift - i))
        new = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j] += c
            new[j + 1] -= c * root
        coeffs = new
    return [c / factorial(e) for c in coeffs]


def quasipoly(d: RootDatum, a: int, hv: HVector | None = None) -> QuasiPoly:
    """Exact branch polynomials reconstructed from the h-vector."""
    t = d.t[a - 1]
    e = degree_e(d, a)
    if hv is None:
        hv = h_vector(d, a)
    branches = []
    for k in range(t):
        acc = [Fraction(0)] * (e + 1)
        for j, hj in enumerate(hv.h):
            if hj == 0 or (j - k) % t != 0:
                continue
            s = (j - k) // t
            for i, cc in enumerate(_binom_poly_shifted(e, s)):
                acc[i] += hj * cc
        branches.append(tuple(acc))
    qp = QuasiPoly(a, t, e, tuple(branches))
    dims = dim_sequence_for_node(d, a, 2 * t * (e + 1))
    for m, v in enumerate(dims):
        if qp.value(m) != v:
            raise AssertionError(f"quasipolynomial mismatch with dim sequence at m={m}")
    return qp


def leading_coefficient(d: RootDatum, precision_digits: int = 40) -> list[Fraction]:
    """Leading coefficients c_{a;0} of all dimension quasipolynomials.

    The exact value comes from the h-vector (per-residue-class sums divided
    by t^e e!, equal across classes); it is cross-checked against the
    multiplicative fixed-point system that determines the coefficients
    uniquely, solved to high precision.
    """
    r = d.rank
    exact = []
    for a in range(1, r + 1):
        t = d.t[a - 1]
        e = degree_e(d, a)
        hv = h_vector(d, a)
        class_sums = [sum(hj for j, hj in enumerate(hv.h) if j % t == k) for k in range(t)]
        if len(set(class_sums)) != 1:
            raise AssertionError("leading coefficient not constant across residues")
        exact.append(Fraction(class_sums[0], t ** e * factorial(e)))
    _crosscheck_leading(d, exact, precision_digits)
    return exact


def _crosscheck_leading(d: RootDatum, exact: list[Fraction], digits: int) -> None:
    """Solve e_a prod_b c_b^{C_ab} = prod_{b: C_ab<0} (C_ba/C_ab)^{-C_ab e_b} numerically."""
    r = d.rank
    es = [degree_e(d, a) for a in range(1, r + 1)]
    with mpmath.workdps(digits):
        rhs_log = []
        for a in range(r):
            acc = mpmath.mpf(0)
            for b in range(r):
                cab = d.cartan[a][b]
                if b != a and cab < 0:
                    ratio = mpmath.mpf(d.cartan[b][a]) / cab
                    acc += (-cab * es[b]) * mpmath.log(ratio)
            rhs_log.append(acc - mpmath.log(es[a]))
        # C * log(c) = rhs_log  =>  log(c) = C^{-1} rhs_log
        logs = []
        for a in range(r):
            acc = mpmath.mpf(0)
            for b in range(r):
                acc += mpmath.mpf(d.cartan_inv[a][b].numerator) / d.cartan_inv[a][b].denominator * rhs_log[b]
            logs.append(acc)
        for a in range(r):
            numeric = mpmath.e ** logs[a]
            target = mpmath.mpf(exact[a].numerator) / exact[a].denominator
            if abs(numeric - target) > abs(target) * mpmath.mpf(10) ** (-digits // 2):
                raise AssertionError(
                    f"leading coefficient cross-check failed at node {a + 1}: "
                    f"{numeric} vs {target}"
                )


# -- Q-system relations, reciprocity, h-vector properties ------------------------

def check_qsystem_quasipoly(d: RootDatum, qps: dict, m_range) -> dict:
    """Residuals of the Q-system relations on quasipolynomial values, any m in Z."""
    failures = []
    for a in range(1, d.rank + 1):
        qa = qps[a]
        i = a - 1
        for m in m_range:
            lhs = qa.value(m) ** 2 - qa.value(m + 1) * qa.value(m - 1)
            rhs = Fraction(1)
            for b in range(1, d.rank + 1):
                cab = d.cartan[i][b - 1]
                if b != a and cab < 0:
                    cba = d.cartan[b - 1][i]
                    for k in range(-cab):
                        rhs *= qps[b].value((cba * m - k) // cab)
            if lhs != rhs:
                failures.append({"node": a, "m": m, "lhs": str(lhs), "rhs": str(rhs)})
    return {"checked": [min(m_range), max(m_range)], "residual_zero": not failures,
            "failures": failures}


def reciprocity_check(d: RootDatum, a: int, qp: QuasiPoly, m_max: int) -> dict:
    """q_a(-m) = (-1)^{e_a} q_a(m - t_a h_vee) for |m| <= m_max."""
    t = d.t[a - 1]
    e = qp.degree
    shift = t * d.dual_coxeter
    failures = [
        m for m in range(-m_max, m_max + 1)
        if qp.value(-m) != (-1) ** e * qp.value(m - shift)
    ]
    return {"node": a, "m_max": m_max, "ok": not failures, "failures": failures}


def negative_string_check(d: RootDatum, a: int, qp: QuasiPoly) -> dict:
    """q_a vanishes on the open string (-t_a h_vee, 0) and not at the endpoint."""
    t = d.t[a - 1]
    end = t * d.dual_coxeter
    zeros_ok = all(qp.value(-m) == 0 for m in range(1, end))
    endpoint = qp.value(-end)
    sign_ok = endpoint == (-1) ** qp.degree * qp.value(0) and endpoint != 0
    return {"node": a, "zeros_ok": zeros_ok, "endpoint": str(endpoint), "endpoint_ok": sign_ok,
            "ok": zeros_ok and sign_ok}


def hvector_properties(hv: HVector) -> dict:
    """Symmetry, positivity, unimodality, log-concavity, with failure witnesses."""
    h = hv.h
    c = len(h) - 1
    sym_fail = [j for j in range(c + 1) if h[j] != h[c - j]]
    pos_fail = [j for j in range(c + 1) if h[j] <= 0]
    uni_fail = [j for j in range(1, c // 2 + 1) if h[j] < h[j - 1]]
    log_fail = [j for j in range(1, c) if h[j] * h[j] < h[j - 1] * h[j + 1]]
    return {
        "symmetric": not sym_fail,
        "positive": not pos_fail,
        "unimodal": not uni_fail,
        "log_concave": not log_fail,
        "witnesses": {
            k: v for k, v in (
                ("symmetric", sym_fail), ("positive", pos_fail),
                ("unimodal", uni_fail), ("log_concave", log_fail),
            ) if v
        },
    }
