"""Fermionic multiplicity formula M(W, lambda) for tensor products of KR modules.

This is the independent combinatorial oracle for KR decompositions and the
source of Q-system initial conditions.  A configuration assigns to every
node a partition (parts = string widths); it is admissible when every
vacancy number p^{(a)}_i is nonnegative, and then contributes a product of
binomials binom(p + m, m).

Enumeration walks the nodes in index order and prunes as soon as the closed
neighborhood of some node is fully assigned, which keeps exceptional-type
runs tractable: off-diagonal vacancy contributions never decrease when a
later neighbor is assigned, so a finished neighborhood gives the final
vacancy values.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .rootdata import LieType, RootDatum, Weight, build_root_datum

__all__ = ["vacancy", "fermionic_multiplicity", "kr_decomposition", "kr_single_table"]


def _pair(d: RootDatum, a: int, b: int) -> Fraction:
    """(alpha_a, alpha_b) = C_ab / t_a."""
    return Fraction(d.cartan[a - 1][b - 1], d.t[a - 1])


def vacancy(d: RootDatum, nu: dict, cfg: dict, a: int, i: int) -> int:
    """Exact vacancy number p^{(a)}_i for configuration cfg and quantum space nu.

    nu maps (node, width) to nonnegative integers; cfg maps (node, width) to
    m^{(node)}_width.  The value is computed with exact rationals and must
    come out integral.
    """
    val = Fraction(0)
    for (b, j), n in nu.items():
        if b == a and n:
            val += n * min(i, j)
    ta = d.t[a - 1]
    for (b, k), m in cfg.items():
        if not m:
            continue
        c = _pair(d, a, b)
        if c:
            val -= c * min(d.t[b - 1] * i, ta * k) * m
    if val != int(val):
        raise AssertionError(f"non-integral vacancy p^({a})_{i} = {val}")
    return int(val)


def _partitions(n: int):
    """All partitions of n as {part: count} dicts (n = 0 gives the empty one)."""
    out = []

    def rec(rest, maxpart, cur):
        if rest == 0:
            out.append(dict(cur))
            return
        for p in range(min(rest, maxpart), 0, -1):
            cur[p] = cur.get(p, 0) + 1
            rec(rest - p, p, cur)
            if cur[p] == 1:
                del cur[p]
            else:
                cur[p] -= 1

    rec(n, n, {})
    return out


class _NodeData:
    __slots__ = ("nu_sum", "selfpairs", "crosspairs", "widths")


def _saturation_width(d: RootDatum, nu: dict, cfg_widths: dict, a: int) -> int:
    """Largest i that must be checked: beyond it p^{(a)}_i is constant."""
    ta = d.t[a - 1]
    w = 1
    for (b, j), n in nu.items():
        if b == a and n:
            w = max(w, j)
    for b in range(1, d.rank + 1):
        kb = cfg_widths.get(b, 0)
        if kb and d.cartan[a - 1][b - 1] != 0:
            # min(t_b i, t_a k) saturates once t_b i >= t_a k_max
            w = max(w, -(-d.t[a - 1] * kb // d.t[b - 1]))
    return w


def _vacancies_ok_and_weight(d: RootDatum, nu: dict, cfg: dict, a: int):
    """Check p^{(a)}_i >= 0 for all i; return binomial factor product or None."""
    widths = {b: 0 for b in range(1, d.rank + 1)}
    for (b, k), m in cfg.items():
        if m and k > widths[b]:
            widths[b] = k
    imax = _saturation_width(d, nu, widths, a)
    factor = 1
    for i in range(1, imax + 1):
        p = vacancy(d, nu, cfg, a, i)
        if p < 0:
            return None
        m = cfg.get((a, i), 0)
        if m:
            factor *= comb(p + m, m)
    return factor


def fermionic_multiplicity(d: RootDatum, nu: dict, lam: Weight) -> int:
    """M(W, lam) for the tensor product specified by nu."""
    if not d.is_dominant(lam) or not d.is_integral(lam):
        raise ValueError("lambda must be dominant integral")
    top = [0] * d.rank
    for (a, j), n in nu.items():
        top[a - 1] += j * n
    diff = tuple(t - x for t, x in zip(top, lam))
    nvec = d.root_coords(diff)
    if any(x != int(x) or x < 0 for x in nvec):
        return 0
    sizes = {a + 1: (int(n), int(n)) for a, n in enumerate(nvec)}
    return sum(w for _, w in _admissible_configs(d, nu, sizes))


def _admissible_configs(d: RootDatum, nu: dict, sizes: dict):
    """DFS over per-node partitions, yielding (config, binomial weight) pairs.

    sizes maps node -> (min_size, max_size); a partition of any size in that
    range is allowed (kr_decomposition sweeps all sizes at once).  A node's
    vacancies depend only on its closed neighborhood, so they are checked,
    and its binomial factor collected, as soon as that neighborhood is fully
    assigned; the pruning is exact.
    """
    r = d.rank
    nodes = list(range(1, r + 1))
    neighbors = {
        a: [b for b in nodes if b != a and d.cartan[a - 1][b - 1] != 0] for a in nodes
    }
    part_pool = {}
    for a in nodes:
        lo, hi = sizes[a]
        pool = []
        for n in range(lo, hi + 1):
            pool.extend(_partitions(n))
        part_pool[a] = pool
    completes_at = {b: max([b] + neighbors[b]) for b in nodes}

    results = []

    def rec(idx, cfg, weight):
        if idx == r:
            results.append((dict(cfg), weight))
            return
        a = nodes[idx]
        newly = [b for b in nodes[: idx + 1] if completes_at[b] == a]
        for part in part_pool[a]:
            added = [((a, k), m) for k, m in part.items()]
            for key, m in added:
                cfg[key] = m
            w = weight
            for b in newly:
                f = _vacancies_ok_and_weight(d, nu, cfg, b)
                if f is None:
                    w = 0
                    break
                w *= f
            if w:
                rec(idx + 1, cfg, w)
            for key, _ in added:
                del cfg[key]

    rec(0, {}, 1)
    return results


def kr_single_table(d: RootDatum, a: int, m: int) -> dict:
    """Decomposition of res W_m^{(a)} via the fermionic formula.

    Returns {dominant weight: multiplicity}, all multiplicities positive.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return {(0,) * d.rank: 1}
    nu = {(a, m): 1}
    top = tuple(m if b == a - 1 else 0 for b in range(d.rank))
    # bound per-node sizes by the root coordinates of the top weight
    bounds = d.root_coords(top)
    sizes = {b + 1: (0, int(bounds[b])) for b in range(d.rank)}
    table: dict = {}
    C = d.cartan
    for cfg, w in _admissible_configs(d, nu, sizes):
        nvec = [0] * d.rank
        for (b, k), mm in cfg.items():
            nvec[b - 1] += k * mm
        lam = tuple(
            top[i] - sum(C[i][j] * nvec[j] for j in range(d.rank))
            for i in range(d.rank)
        )
        if any(x < 0 for x in lam):
            continue
        table[lam] = table.get(lam, 0) + w
    return table


@lru_cache(maxsize=None)
def _kr_table_cached(lt: LieType, a: int, m: int) -> tuple:
    d = build_root_datum(lt)
    return tuple(sorted(kr_single_table(d, a, m).items()))


def kr_decomposition(d: RootDatum, a: int, m: int) -> dict:
    """Cached {dominant weight: multiplicity} table for res W_m^{(a)}."""
    return dict(_kr_table_cached(d.lie_type, a, m))
