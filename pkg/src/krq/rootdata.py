"""Root systems, Weyl groups and weight-lattice combinatorics for types A-G.

Weights are plain tuples in the fundamental-weight basis: entry a is the
coefficient of omega_a.  Integral weights keep int entries; weights arising
from operator bookkeeping may carry Fraction entries (denominators 2 or 3).

Conventions fixed here (the paper prints no Dynkin diagrams; this numbering
is pinned by the F4/G2 Cartan matrices appearing explicitly in the source
material and by the E6 operator orders, which tests re-derive):

* A_r, B_r, C_r: chain 1..r; B_r has node r short, C_r node r long.
* D_r: chain 1..r-2 with both r-1 and r attached to r-2.
* E_r: chain 1..r-1 with node r attached to node 3.
* F4: chain 1-2-3-4, nodes 1,2 long; G2: node 1 long, node 2 short.

The bilinear form is normalized by (theta, theta) = 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

Weight = tuple  # coords in the fundamental-weight basis

_FAMILIES = "ABCDEFG"

_POS_ROOT_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}

_EXCEPTIONAL_WEYL_ORDER = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                           ("F", 4): 1152, ("G", 2): 12}


@dataclass(frozen=True)
class LieType:
    """A simple Lie type: family letter plus rank."""

    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        if f not in _FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        ok = (
            (f == "A" and r >= 1)
            or (f in "BC" and r >= 2)
            or (f == "D" and r >= 4)
            or (f == "E" and r in (6, 7, 8))
            or (f == "F" and r == 4)
            or (f == "G" and r == 2)
        )
        if not ok:
            raise ValueError(f"invalid rank {r} for family {f}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, s: str) -> "LieType":
        s = s.strip()
        return cls(s[0].upper(), int(s[1:]))


def _edges(lt: LieType) -> list[tuple[int, int]]:
    r = lt.rank
    f = lt.family
    if f in "ABCFG":
        return [(a, a + 1) for a in range(1, r)]
    if f == "D":
        return [(a, a + 1) for a in range(1, r - 2)] + [(r - 2, r - 1), (r - 2, r)]
    # E series: chain 1..r-1 plus (3, r)
    return [(a, a + 1) for a in range(1, r - 1)] + [(3, r)]


def _cartan_and_t(lt: LieType) -> tuple[list[list[int]], list[int]]:
    r, f = lt.rank, lt.family
    C = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for a, b in _edges(lt):
        C[a - 1][b - 1] = -1
        C[b - 1][a - 1] = -1
    t = [1] * r
    if f == "B":
        C[r - 1][r - 2] = -2
        t[r - 1] = 2
    elif f == "C":
        C[r - 2][r - 1] = -2
        t = [2] * (r - 1) + [1]
    elif f == "F":
        C[2][1] = -2  # double bond 2=>3, nodes 3,4 short
        t = [1, 1, 2, 2]
    elif f == "G":
        C[1][0] = -3  # node 1 long, node 2 short
        t = [1, 3]
    return C, t


def _invert_rational(M: list[list[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(row for row in range(col, n) if aug[row][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for row in range(n):
            if row != col and aug[row][col] != 0:
                fac = aug[row][col]
                aug[row] = [x - fac * y for x, y in zip(aug[row], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Immutable root-system package; all operations on it are pure.

    Instances are singletons per LieType (see build_root_datum), so identity
    equality and hashing are correct and cheap.
    """

    lie_type: LieType
    cartan: tuple  # rows C[a][b] = <alpha_a^vee, alpha_b>
    cartan_inv: tuple  # exact Fractions
    t: tuple  # squared-length ratios t_a in {1,2,3}
    pos_roots: tuple  # integral weights
    theta: Weight
    rho: Weight
    dual_coxeter: int
    weyl_order: int

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    # -- elementary weight operations -------------------------------------
    def reflect(self, a: int, w: Weight) -> Weight:
        """Simple reflection s_a (a is 1-based)."""
        i = a - 1
        c = w[i]
        if c == 0:
            return w
        col = self.cartan
        return tuple(x - c * col[b][i] for b, x in enumerate(w))

    def simple_root(self, a: int) -> Weight:
        return tuple(self.cartan[b][a - 1] for b in range(self.rank))

    def fundamental_weight(self, a: int) -> Weight:
        return tuple(1 if b == a - 1 else 0 for b in range(self.rank))

    def root_coords(self, w: Weight) -> tuple:
        """Coefficients of w over the simple roots (exact Fractions)."""
        return tuple(
            sum(self.cartan_inv[a][b] * w[b] for b in range(self.rank))
            for a in range(self.rank)
        )

    def height(self, w: Weight) -> Fraction:
        return sum(self.root_coords(w))

    def is_dominant(self, w: Weight) -> bool:
        return all(x >= 0 for x in w)

    def is_integral(self, w: Weight) -> bool:
        return all(x == int(x) for x in w)


@lru_cache(maxsize=None)
def build_root_datum(lt: LieType) -> RootDatum:
    """Construct the full root datum for a valid Lie type."""
    r = lt.rank
    C, t = _cartan_and_t(lt)
    Cinv = _invert_rational(C)
    Ct = tuple(tuple(row) for row in C)

    datum = RootDatum(
        lie_type=lt,
        cartan=Ct,
        cartan_inv=Cinv,
        t=tuple(t),
        pos_roots=(),
        theta=(),
        rho=(1,) * r,
        dual_coxeter=0,
        weyl_order=_weyl_order(lt),
    )
    pos = _positive_roots(datum)
    theta = _highest_root(datum, pos)
    # h∨ = 1 + sum of comarks c_a / t_a where theta = sum c_a alpha_a
    marks = datum.root_coords(theta)
    hv = 1 + sum(Fraction(m) / ta for m, ta in zip(marks, t))
    if hv != int(hv):
        raise AssertionError("dual Coxeter number must be integral")
    object.__setattr__(datum, "pos_roots", tuple(sorted(pos)))
    object.__setattr__(datum, "theta", theta)
    object.__setattr__(datum, "dual_coxeter", int(hv))

    expected = _POS_ROOT_COUNT[lt.family](r)
    if len(pos) != expected:
        raise AssertionError(f"{lt}: found {len(pos)} positive roots, expected {expected}")
    return datum


def _weyl_order(lt: LieType) -> int:
    r, f = lt.rank, lt.family
    if f == "A":
        return factorial(r + 1)
    if f in "BC":
        return (1 << r) * factorial(r)
    if f == "D":
        return (1 << (r - 1)) * factorial(r)
    return _EXCEPTIONAL_WEYL_ORDER[(f, r)]


def _positive_roots(d: RootDatum) -> list[Weight]:
    roots: set[Weight] = set()
    for a in range(1, d.rank + 1):
        roots |= weyl_orbit(d, d.simple_root(a), check_dominant=False)
    pos = []
    for w in roots:
        coords = d.root_coords(w)
        if all(c >= 0 for c in coords):
            pos.append(w)
    return pos


def _highest_root(d: RootDatum, pos: list[Weight]) -> Weight:
    dominant = [w for w in pos if d.is_dominant(w)]
    # theta is the dominance-maximum among dominant roots
    best = dominant[0]
    for w in dominant[1:]:
        if dominance_leq(d, best, w):
            best = w
    for w in dominant:
        if not dominance_leq(d, w, best):
            raise AssertionError("no dominance-maximal root found")
    return best


# -- Weyl group operations ---------------------------------------------------

def weyl_orbit(d: RootDatum, lam: Weight, check_dominant: bool = True) -> set:
    """Full W-orbit of lam by closure under simple reflections."""
    lam = tuple(lam)
    if check_dominant and not d.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    seen = {lam}
    frontier = [lam]
    rng = range(1, d.rank + 1)
    while frontier:
        nxt = []
        for w in frontier:
            for a in rng:
                img = d.reflect(a, w)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def weyl_orbit_with_words(d: RootDatum, lam: Weight) -> dict:
    """Orbit elements mapped to a reduced-ish word (list of generator indices)
    taking lam to the element.  Used to transport Appendix-C coefficients."""
    lam = tuple(lam)
    out = {lam: []}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for a in range(1, d.rank + 1):
                img = d.reflect(a, w)
                if img not in out:
                    out[img] = out[w] + [a]
                    nxt.append(img)
        frontier = nxt
    return out


def dominant_representative(d: RootDatum, w: Weight) -> Weight:
    """The unique dominant weight in the W-orbit of w.

    Reflects at the smallest-index negative coordinate; terminates by the
    standard length-descent argument.
    """
    cur = tuple(w)
    while True:
        for i, x in enumerate(cur):
            if x < 0:
                cur = d.reflect(i + 1, cur)
                break
        else:
            return cur


def orbit_size(d: RootDatum, lam: Weight) -> int:
    """|W| / |W_J| with J the vanishing coordinates of dominant lam."""
    if not d.is_dominant(lam):
        raise ValueError("orbit_size expects a dominant weight")
    J = [a for a in range(1, d.rank + 1) if lam[a - 1] == 0]
    return d.weyl_order // _parabolic_order(d, frozenset(J))


def _parabolic_order(d: RootDatum, J: frozenset) -> int:
    if not J:
        return 1
    # split J into connected components of the induced subdiagram
    adj = {a: set() for a in J}
    for a in J:
        for b in J:
            if a < b and d.cartan[a - 1][b - 1] != 0:
                adj[a].add(b)
                adj[b].add(a)
    seen: set[int] = set()
    order = 1
    for a in sorted(J):
        if a in seen:
            continue
        comp = [a]
        seen.add(a)
        stack = [a]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        order *= _classify_component_order(d, sorted(comp), adj)
    return order


def _classify_component_order(d: RootDatum, comp: list[int], adj: dict) -> int:
    """Weyl order of a connected induced subdiagram (a finite Dynkin diagram)."""
    n = len(comp)
    if n == 1:
        return 2
    bond_products = []
    for a in comp:
        for b in adj[a]:
            if a < b:
                bond_products.append(d.cartan[a - 1][b - 1] * d.cartan[b - 1][a - 1])
    if any(p == 3 for p in bond_products):
        return 12  # G2
    degrees = {a: len(adj[a] & set(comp)) for a in comp}
    branch = [a for a in comp if degrees[a] == 3]
    if any(p == 2 for p in bond_products):
        # B/C share one Weyl order; F4 only arises as the full F4 diagram
        if n == 4:
            doubles = [(a, b) for a in comp for b in adj[a] if a < b
                       and d.cartan[a - 1][b - 1] * d.cartan[b - 1][a - 1] == 2]
            (a, b) = doubles[0]
            if degrees[a] == 2 and degrees[b] == 2:
                return 1152
        return (1 << n) * factorial(n)
    if not branch:
        return factorial(n + 1)  # A_n
    # one trivalent node: D or E by arm lengths
    center = branch[0]
    arms = []
    for nb in sorted(adj[center]):
        length = 1
        prev, cur = center, nb
        while True:
            nxts = [x for x in adj[cur] if x != prev]
            if not nxts:
                break
            prev, cur = cur, nxts[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return (1 << (n - 1)) * factorial(n)  # D_n
    key = tuple(arms)
    if key == (1, 2, 2):
        return 51840
    if key == (1, 2, 3):
        return 2903040
    if key == (1, 2, 4):
        return 696729600
    raise AssertionError(f"unrecognized diagram component arms={arms}")


# -- dominance and the bilinear form ----------------------------------------

def dominance_leq(d: RootDatum, lam: Weight, mu: Weight) -> bool:
    """lam <= mu in dominance order: mu - lam is a nonnegative root combination."""
    diff = tuple(m - l for l, m in zip(lam, mu))
    return all(c >= 0 for c in d.root_coords(diff))


def inner_product(d: RootDatum, lam: Weight, mu: Weight) -> Fraction:
    """Killing-form pairing normalized by (theta, theta) = 2."""
    mu_root = d.root_coords(mu)
    val = Fraction(0)
    for a in range(d.rank):
        if lam[a] and mu_root[a]:
            val += Fraction(lam[a]) * mu_root[a] / d.t[a]
    return val
