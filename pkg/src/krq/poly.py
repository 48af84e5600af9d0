"""Sparse Laurent polynomials with exact integer coefficients.

A polynomial in n variables is stored as a dict mapping exponent tuples
(ints, possibly negative) to nonzero arbitrary-precision integer
coefficients.  This realizes the group ring Z[Z^n]; for character work the
variables are y_a = e^{omega_a} and exponent tuples are weights written in
the fundamental-weight basis.

Large products and exact divisions go through Kronecker substitution: the
polynomial is packed into a single big integer (one signed slot per lattice
point of a bounding box) and GMP does the heavy lifting.  Exact division is
integer division in the packed image followed by a verification multiply,
so a wrong answer is impossible: either the exact quotient comes back or
ExactDivisionError is raised.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

try:  # GMP-backed integers/rationals; plain Python ints remain correct without it
    import gmpy2 as _gmpy2

    MPZ = _gmpy2.mpz
    QQ = _gmpy2.mpq
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    MPZ = int
    QQ = Fraction
    _HAVE_GMPY2 = False

Exponent = tuple
Terms = dict


class ExactDivisionError(ArithmeticError):
    """Raised when poly_exact_div is asked for a non-exact quotient.

    In the Q-system engine this failure is meaningful: it falsifies the
    recursion step that produced the operands.
    """


class LaurentPoly:
    """Immutable sparse Laurent polynomial over Z.

    Equality is term-map equality; the zero polynomial has no terms.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = nvars
        clean: Terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[tuple(e)] = int(c)
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exponent: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        e = tuple(int(x) for x in exponent)
        return cls(len(e), {e: coeff})

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    # -- basics --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPoly(0)"
        parts = []
        for e, c in sorted(self.terms.items())[:6]:
            parts.append(f"{c}*y^{e}")
        more = "" if len(self.terms) <= 6 else f" ... ({len(self.terms)} terms)"
        return "LaurentPoly(" + " + ".join(parts) + more + ")"

    def coeff_sum(self) -> int:
        """Value at the all-ones point; the dimension, for a character."""
        return sum(self.terms.values())

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    # -- ring operations -----------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        p.terms = out
        return p

    def __neg__(self) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                del out[e]
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        p.terms = out
        return p

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero(self.nvars)
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        p.terms = {e: c * v for e, v in self.terms.items()}
        return p

    def shift(self, exponent: Exponent, coeff: int = 1) -> "LaurentPoly":
        """Multiply by the monomial coeff * y^exponent."""
        e0 = tuple(exponent)
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        if coeff == 1:
            p.terms = {_tuple_add(e, e0): c for e, c in self.terms.items()}
        else:
            p.terms = {_tuple_add(e, e0): c * coeff for e, c in self.terms.items()}
        return p

    def sub_shifted(self, other: "LaurentPoly", exponent: Exponent, coeff: int = 1) -> "LaurentPoly":
        """self - coeff * y^exponent * other, fused (hot path of operator application)."""
        e0 = tuple(exponent)
        out = dict(self.terms)
        get = out.get
        if coeff == 1:
            for e, c in other.terms.items():
                k = _tuple_add(e, e0)
                v = get(k, 0) - c
                if v:
                    out[k] = v
                else:
                    del out[k]
        else:
            for e, c in other.terms.items():
                k = _tuple_add(e, e0)
                v = get(k, 0) - coeff * c
                if v:
                    out[k] = v
                else:
                    del out[k]
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars = self.nvars
        p.terms = out
        return p

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def map_exponents(self, fn: Callable[[Exponent], Exponent]) -> "LaurentPoly":
        """Apply a bijective exponent map (e.g. a Weyl group element)."""
        out: Terms = {}
        for e, c in self.terms.items():
            k = fn(e)
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.nvars, out)

    # -- evaluation ------------------------------------------------------
    def evaluate(self, point):
        """Exact value at a point of nonzero rationals (Fraction or mpq)."""
        pt = [QQ(x) for x in point]
        powcache = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            cache = powcache[i]
            v = cache.get(k)
            if v is None:
                v = pt[i] ** k
                cache[k] = v
            return v

        total = QQ(0)
        for e, c in self.terms.items():
            m = QQ(c)
            for i, k in enumerate(e):
                if k:
                    m = m * pw(i, k)
            total += m
        return total

    # -- serialization -----------------------------------------------------
    def to_json_obj(self) -> dict:
        """Canonical JSON object: sorted exponent arrays, decimal-string coefficients."""
        return {
            "nvars": self.nvars,
            "terms": [[list(e), str(c)] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LaurentPoly":
        return cls(obj["nvars"], {tuple(e): int(c) for e, c in obj["terms"]})


def _tuple_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


# -- multiplication ---------------------------------------------------------

_DIRECT_PAIR_LIMIT = 1 << 18


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly, t_cap: int | None = None) -> LaurentPoly:
    """Product; if t_cap is given, terms with exponent[0] > t_cap are dropped.

    The cap implements truncated power series in the first variable; capped
    products always take the direct route.
    """
    if p.is_zero() or q.is_zero():
        return LaurentPoly.zero(p.nvars)
    if len(p.terms) == 1:
        ((e, c),) = p.terms.items()
        r = q.shift(e, c)
        return _cap(r, t_cap)
    if len(q.terms) == 1:
        ((e, c),) = q.terms.items()
        r = p.shift(e, c)
        return _cap(r, t_cap)
    if t_cap is not None or len(p.terms) * len(q.terms) <= _DIRECT_PAIR_LIMIT or not _HAVE_GMPY2:
        return _mul_direct(p, q, t_cap)
    return _mul_kronecker(p, q)


def _cap(p: LaurentPoly, t_cap: int | None) -> LaurentPoly:
    if t_cap is None:
        return p
    return LaurentPoly(p.nvars, {e: c for e, c in p.terms.items() if e[0] <= t_cap})


def _mul_direct(p: LaurentPoly, q: LaurentPoly, t_cap: int | None = None) -> LaurentPoly:
    small, big = (p, q) if len(p.terms) <= len(q.terms) else (q, p)
    out: Terms = {}
    get = out.get
    for e1, c1 in small.terms.items():
        if t_cap is not None and e1[0] > t_cap:
            continue
        for e2, c2 in big.terms.items():
            k = _tuple_add(e1, e2)
            if t_cap is not None and k[0] > t_cap:
                continue
            v = get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return LaurentPoly(p.nvars, out)


def _box(p: LaurentPoly) -> tuple[tuple[int, ...], tuple[int, ...]]:
    it = iter(p.terms)
    first = next(it)
    lo = list(first)
    hi = list(first)
    for e in p.terms:
        for i, x in enumerate(e):
            if x < lo[i]:
                lo[i] = x
            elif x > hi[i]:
                hi[i] = x
    return tuple(lo), tuple(hi)


def _strides(dims: tuple[int, ...]) -> tuple[int, ...]:
    s = []
    acc = 1
    for d in dims:
        s.append(acc)
        acc *= d
    return tuple(s)


def _pack(p: LaurentPoly, lo: tuple[int, ...], strides: tuple[int, ...], total: int, wb: int) -> int:
    """Encode into one integer, one wb-byte slot per box point (signed via pos-neg split)."""
    npos = bytearray(total * wb)
    nneg = None
    for e, c in p.terms.items():
        idx = 0
        for x, l, s in zip(e, lo, strides):
            idx += (x - l) * s
        off = idx * wb
        if c > 0:
            npos[off:off + wb] = c.to_bytes(wb, "little")
        else:
            if nneg is None:
                nneg = bytearray(total * wb)
            nneg[off:off + wb] = (-c).to_bytes(wb, "little")
    val = int.from_bytes(npos, "little")
    if nneg is not None:
        val -= int.from_bytes(nneg, "little")
    return val


def _unpack(val: int, nvars: int, lo: tuple[int, ...], dims: tuple[int, ...], wb: int) -> Terms:
    """Decode signed slots; inverse of _pack on the product box."""
    out: Terms = {}
    if val == 0:
        return out
    total = 1
    for d in dims:
        total *= d
    nbytes = total * wb + wb  # headroom for sign/borrow
    buf = val.to_bytes(nbytes, "little", signed=True)
    beta = 1 << (8 * wb)
    half = beta >> 1
    zero_chunk = bytes(wb)
    carry = 0
    for idx in range(total):
        off = idx * wb
        chunk = buf[off:off + wb]
        if carry == 0 and chunk == zero_chunk:
            continue
        d = int.from_bytes(chunk, "little") + carry
        carry = d >> (8 * wb)
        d &= beta - 1
        if d >= half:
            c = d - beta
            carry += 1
        else:
            c = d
        if c:
            rem = idx
            exp = []
            for i in range(nvars):
                exp.append(lo[i] + rem % dims[i])
                rem //= dims[i]
            out[tuple(exp)] = c
    return out


def _slot_bytes(bound: int) -> int:
    return (bound.bit_length() + 2 + 7) // 8 + 1


def _mul_kronecker(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    lop, hip = _box(p)
    loq, hiq = _box(q)
    lo = _tuple_add(lop, loq)
    dims = tuple(hp + hq - l + 1 for hp, hq, l in zip(hip, hiq, lo))
    strides = _strides(dims)
    total = 1
    for d in dims:
        total *= d
    bound = p.max_abs_coeff() * q.max_abs_coeff() * min(len(p.terms), len(q.terms))
    wb = _slot_bytes(bound)
    a = _pack(p, lop, strides, total, wb)
    b = _pack(q, loq, strides, total, wb)
    if _HAVE_GMPY2:
        prod = int(MPZ(a) * MPZ(b))
    else:  # pragma: no cover
        prod = a * b
    return LaurentPoly(p.nvars, _unpack(prod, p.nvars, lo, dims, wb))


# -- exact division ----------------------------------------------------------

def poly_exact_div(p: LaurentPoly, q: LaurentPoly, coeff_bound: int | None = None) -> LaurentPoly:
    """Exact quotient p / q; raises ExactDivisionError if q does not divide p.

    coeff_bound, when known (e.g. a dimension bound for characters), sizes
    the Kronecker slots; otherwise slots start from the operand bound and
    grow on verification failure.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.nvars)
    if len(q.terms) == 1:
        ((e0, c0),) = q.terms.items()
        out: Terms = {}
        for e, c in p.terms.items():
            cc, rr = divmod(c, c0)
            if rr:
                raise ExactDivisionError(f"coefficient {c} not divisible by {c0}")
            out[tuple(x - y for x, y in zip(e, e0))] = cc
        return LaurentPoly(p.nvars, out)

    lop, hip = _box(p)
    loq, hiq = _box(q)
    # Newton polytopes add under multiplication, so the per-axis box of the
    # quotient is exactly the difference of the boxes; the packing box for p
    # is then p's own box.
    los = tuple(a - b for a, b in zip(lop, loq))
    his = tuple(a - b for a, b in zip(hip, hiq))
    if any(h < l for l, h in zip(los, his)):
        raise ExactDivisionError("divisor box exceeds dividend box")
    lo = lop
    dims = tuple(h - l + 1 for l, h in zip(lop, hip))
    strides = _strides(dims)

    total = 1
    for d in dims:
        total *= d
    bound = max(p.max_abs_coeff(), q.max_abs_coeff(), coeff_bound or 0)
    for _ in range(4):
        wb = _slot_bytes(bound)
        # p sits in the product box (offset los + loq) so that packed indices
        # satisfy idx_p = idx_s + idx_q and integer division recovers s
        a = _pack(p, lo, strides, total, wb)
        b = _pack(q, loq, strides, total, wb)
        if _HAVE_GMPY2:
            quo, rem = divmod(MPZ(a), MPZ(b))
            quo, rem = int(quo), int(rem)
        else:  # pragma: no cover
            quo, rem = divmod(a, b)
        if rem != 0:
            raise ExactDivisionError(_remainder_report(p, q))
        s = LaurentPoly(p.nvars, _unpack(quo, p.nvars, los, dims, wb))
        if poly_mul(s, q) == p:
            return s
        bound = bound * bound + 1  # decoded garbage: slots too narrow, retry wider
    raise ExactDivisionError(_remainder_report(p, q))


def _remainder_report(p: LaurentPoly, q: LaurentPoly) -> str:
    if len(p.terms) * len(q.terms) <= 1 << 14:
        rem = _naive_remainder(p, q)
        if rem is not None:
            sample = sorted(rem.terms.items())[:4]
            return (
                f"not divisible: remainder has {len(rem.terms)} terms, "
                f"e.g. {[(list(e), c) for e, c in sample]}"
            )
    return "not divisible (nonzero remainder)"


def _order_key(e: Exponent):
    return (sum(e), e)


def _naive_remainder(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """Graded-lex reduction; returns the remainder or None if it cannot decide."""
    lead_q = max(q.terms, key=_order_key)
    cq = q.terms[lead_q]
    rem = p
    lop, hip = _box(p)
    loq, hiq = _box(q)
    max_steps = 4
    for l, h, lq, hq in zip(lop, hip, loq, hiq):
        max_steps *= (h - lq) - (l - hq) + 1
    steps = 0
    while not rem.is_zero():
        lead = max(rem.terms, key=_order_key)
        c, r = divmod(rem.terms[lead], cq)
        if r:
            return rem
        mono = tuple(x - y for x, y in zip(lead, lead_q))
        rem = rem.sub_shifted(q, mono, c)
        steps += 1
        if steps > max_steps:
            return rem
    return rem
