"""Exact density calculus: 2-densities, asymmetric densities, partition
densities and first/second moment quantities.

All subgraph maxima and minima are computed by enumerating vertex
subsets, which suffices because every quantity here is monotone in the
edge count once the vertex set is fixed.  Rational results are exact
Fractions; the moment quantities work in log-domain floats unless given
a rational edge probability, in which case they are exact too.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Union

from .graphs import Graph, Pattern, _bits

_ENUM_LIMIT = 20
_PARTITION_LIMIT = 14

GraphLike = Union[Graph, Pattern]


def _as_graph(h: GraphLike) -> Graph:
    return h.to_graph() if isinstance(h, Pattern) else h


def _edges_within(adj: tuple[int, ...], subset: int) -> int:
    total = 0
    for v in _bits(subset):
        total += (adj[v] & subset).bit_count()
    return total // 2


def _subset_census(g: Graph) -> Iterable[tuple[int, int]]:
    """(vertex count, edge count) for every nonempty vertex subset."""
    if g.n > _ENUM_LIMIT:
        raise ValueError(f"subset enumeration limited to {_ENUM_LIMIT} vertices")
    adj = g.adj
    for mask in range(1, 1 << g.n):
        yield mask.bit_count(), _edges_within(adj, mask)


def d2_of_counts(v: int, e: int) -> Fraction:
    """2-density from a (vertices, edges) pair."""
    if e == 0:
        return Fraction(0)
    if v == 2:
        return Fraction(1, 2)
    return Fraction(e - 1, v - 2)


def d2(h: GraphLike) -> Fraction:
    """2-density: (e-1)/(v-2), with 0 for edgeless graphs and 1/2 for a
    single edge."""
    g = _as_graph(h)
    if g.n == 0:
        raise ValueError("2-density needs a nonempty graph")
    return d2_of_counts(g.n, g.edge_count)


def m2(h: GraphLike) -> Fraction:
    """Maximum 2-density over all subgraphs."""
    g = _as_graph(h)
    if g.n == 0:
        raise ValueError("maximum 2-density needs a nonempty graph")
    return max(d2_of_counts(v, e) for v, e in _subset_census(g))


def m2_asym(h1: GraphLike, h2: GraphLike) -> Fraction:
    """Asymmetric 2-density of an ordered pair.

    Maximizes e' / (v' - 2 + 1/m2(h2)) over subgraphs of h1 with at
    least one edge.  Requires m2(h1) >= m2(h2) and an edge in each.
    """
    g1, g2 = _as_graph(h1), _as_graph(h2)
    if g1.edge_count == 0 or g2.edge_count == 0:
        raise ValueError("asymmetric density needs an edge in both graphs")
    if m2(g1) < m2(g2):
        raise ValueError("asymmetric density needs m2(h1) >= m2(h2)")
    shift = Fraction(1) / m2(g2) - 2
    return max(Fraction(e) / (v + shift)
               for v, e in _subset_census(g1) if e >= 1)


def is_strictly_2_balanced(h: GraphLike) -> bool:
    """True when only the whole graph attains the maximum 2-density."""
    g = _as_graph(h)
    full = (1 << g.n) - 1
    target = m2(g)
    if d2(g) != target:
        return False
    for mask in range(1, full):
        if d2_of_counts(mask.bit_count(), _edges_within(g.adj, mask)) == target:
            return False
    return True


def is_strictly_balanced_wrt(h1: GraphLike, h2: GraphLike) -> bool:
    """True when only all of h1 attains the asymmetric density of (h1, h2)."""
    g1 = _as_graph(h1)
    target = m2_asym(g1, h2)
    shift = Fraction(1) / m2(_as_graph(h2)) - 2
    e_full = g1.edge_count
    if Fraction(e_full) / (g1.n + shift) != target:
        return False
    for mask in range(1, (1 << g1.n) - 1):
        e = _edges_within(g1.adj, mask)
        if e >= 1 and Fraction(e) / (mask.bit_count() + shift) == target:
            return False
    return True


def rho(f: GraphLike) -> Fraction:
    """Maximum edge/vertex ratio over all subgraphs."""
    g = _as_graph(f)
    if g.n == 0:
        raise ValueError("density needs a nonempty graph")
    return max(Fraction(e, v) for v, e in _subset_census(g))


def _rho_of_subset(adj: tuple[int, ...], subset: int, cache: dict[int, Fraction]) -> Fraction:
    got = cache.get(subset)
    if got is not None:
        return got
    best = Fraction(_edges_within(adj, subset), subset.bit_count())
    if subset.bit_count() > 1:
        for v in _bits(subset):
            sub = _rho_of_subset(adj, subset & ~(1 << v), cache)
            if sub > best:
                best = sub
    cache[subset] = best
    return best


def rho_k(f: GraphLike, k: int) -> Fraction:
    """Minimum over vertex partitions into at most k parts of the largest
    part density."""
    value, _ = rho_k_with_partition(f, k)
    return value


def rho_k_with_partition(f: GraphLike, k: int) -> tuple[Fraction, list[list[int]]]:
    """rho_k together with an optimal partition (parts as vertex lists)."""
    g = _as_graph(f)
    if k < 1:
        raise ValueError("need at least one part")
    if g.n == 0:
        raise ValueError("density needs a nonempty graph")
    if g.n > _PARTITION_LIMIT:
        raise ValueError(f"partition enumeration limited to {_PARTITION_LIMIT} vertices")
    adj = g.adj
    cache: dict[int, Fraction] = {}
    best: Optional[Fraction] = None
    best_parts: list[int] = []
    parts: list[int] = []

    def assign(v: int):
        nonlocal best, best_parts
        if v == g.n:
            worst = max(_rho_of_subset(adj, part, cache) for part in parts)
            if best is None or worst < best:
                best = worst
                best_parts = list(parts)
            return
        # restricted growth: vertex v joins an existing part or opens the next
        for i in range(len(parts)):
            parts[i] |= 1 << v
            if best is None or _rho_of_subset(adj, parts[i], cache) < best:
                assign(v + 1)
            parts[i] &= ~(1 << v)
        if len(parts) < k:
            parts.append(1 << v)
            assign(v + 1)
            parts.pop()

    assign(0)
    assert best is not None
    return best, [sorted(_bits(p)) for p in best_parts]


def rho_bound_hm(m: int, r: int) -> tuple[Fraction, list[list[int]]]:
    """Partition witness showing the matched-multipartite gadget on
    (2^r + 1) parts of size m splits into 2^(r-1) + 1 pieces of density
    at most 1/2.

    Pairs of matched parts go together (each induces a perfect
    matching), the last part stands alone.  Parts small enough for
    subset enumeration are verified by rho directly; larger parts by
    checking the induced graph is 1-regular (so every subgraph has at
    most v/2 edges) or edgeless.
    """
    from .graphs import hmr_graph

    if r < 2:
        raise ValueError("need r >= 2")
    g = hmr_graph(m, r)
    half = 1 << (r - 1)
    groups = []
    for i in range(half):
        groups.append([p * m + a for p in (2 * i, 2 * i + 1) for a in range(m)])
    groups.append([(1 << r) * m + a for a in range(m)])
    bound = Fraction(1, 2)
    for vs in groups:
        sub = g.induced(vs)
        if sub.n <= _PARTITION_LIMIT:
            part_rho = rho(sub)
        elif all(sub.degree(v) <= 1 for v in range(sub.n)):
            part_rho = Fraction(1, 2) if sub.edge_count else Fraction(0)
        else:
            raise ValueError("witness part fails the 1-regularity check")
        if part_rho > bound:
            raise ValueError("witness partition exceeds the claimed density")
    return bound, groups


# ---------------------------------------------------------------------
# First and second moment quantities

Prob = Union[float, Fraction, int]


def _mu_candidates(g: Graph, proper_only: bool) -> list[tuple[int, int]]:
    """(v, e) pairs minimizing n^v p^e over subgraphs with an edge.

    Induced subgraphs dominate on each vertex subset since p <= 1; the
    only extra candidate for proper subgraphs is the full vertex set
    with one edge removed.
    """
    pairs = set()
    full = (1 << g.n) - 1
    for mask in range(1, full + 1):
        if mask == full:
            continue
        e = _edges_within(g.adj, mask)
        if e >= 1:
            pairs.add((mask.bit_count(), e))
    e_full = g.edge_count
    if proper_only:
        if e_full >= 2:
            pairs.add((g.n, e_full - 1))
    else:
        pairs.add((g.n, e_full))
    return sorted(pairs)


def _check_prob(p: Prob):
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")


def _mu_value(pairs: list[tuple[int, int]], n: int, p: Prob) -> Union[float, Fraction]:
    if not pairs:
        return math.inf
    if isinstance(p, (Fraction, int)):
        return min(Fraction(n) ** v * Fraction(p) ** e for v, e in pairs)
    if p == 0.0:
        return 0.0
    logs = min(v * math.log(n) + e * math.log(p) for v, e in pairs)
    return math.inf if logs > 700 else math.exp(logs)


def mu0(h: GraphLike, n: int, p: Prob) -> Union[float, Fraction]:
    """Smallest expected copy-count scale over proper subgraphs with an
    edge: min n^v' p^e'.  Infinite when no such subgraph exists."""
    g = _as_graph(h)
    if g.edge_count == 0:
        raise ValueError("moment quantities need at least one edge")
    if n < 1:
        raise ValueError("need n >= 1")
    _check_prob(p)
    return _mu_value(_mu_candidates(g, proper_only=True), n, p)


def mu1(h: GraphLike, n: int, p: Prob) -> Union[float, Fraction]:
    """Smallest expected copy-count scale over all subgraphs with an edge."""
    g = _as_graph(h)
    if g.edge_count == 0:
        raise ValueError("moment quantities need at least one edge")
    if n < 1:
        raise ValueError("need n >= 1")
    _check_prob(p)
    return _mu_value(_mu_candidates(g, proper_only=False), n, p)


def _log_value(x: Union[float, Fraction]) -> float:
    # Fractions may exceed float range; log their integer parts instead
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def janson_bound(h: GraphLike, n: int, p: Prob, xi: float) -> float:
    """Upper bound exp(-xi * mu1 / (2^(v+1) v!)) on the probability of
    undershooting the expected copy count by a (1 - xi) factor."""
    g = _as_graph(h)
    if not 0 < xi <= 1:
        raise ValueError("xi must lie in (0, 1]")
    value = mu1(g, n, p)
    if value == 0:
        return 1.0
    log_term = math.log(xi) + _log_value(value) \
        - (g.n + 1) * math.log(2) - math.lgamma(g.n + 1)
    if log_term > 700:
        return 0.0
    return math.exp(-math.exp(log_term))


def covariance_bound(h: GraphLike, n: int, p: Prob, count: int) -> float:
    """Upper bound 2^v v! count n^v p^(2e) / mu0 on the pair-overlap sum
    controlling the second moment of the copy count."""
    g = _as_graph(h)
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0 or p == 0:
        return 0.0
    base = mu0(g, n, p)
    if base == math.inf:
        return 0.0
    log_term = g.n * math.log(2) + math.lgamma(g.n + 1) + math.log(count) \
        + g.n * math.log(n) + 2 * g.edge_count * math.log(float(p)) \
        - _log_value(base)
    return math.inf if log_term > 700 else math.exp(log_term)
