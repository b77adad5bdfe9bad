"""Randomly perturbed hosts and Monte Carlo threshold scans.

Random graphs are drawn by a counter-based generator: each potential
edge's uniform variate is a stateless 64-bit mix of (seed, trial index,
edge index), so any trial can be regenerated in isolation and results
are independent of evaluation order and platform.  The same variates
serve every p (common random numbers), which couples the success
curves across the grid and keeps the empirical curve monotone apart
from decision noise.

Ramsey trials that exhaust their budget count as Inconclusive: they are
reported separately and excluded from the success-rate denominator,
never as success or failure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coloring import (INCONCLUSIVE, RamseyQuery, decide_ramsey, ramsey_query)
from .graphs import Graph

_MASK64 = (1 << 64) - 1
_WILSON_Z = 1.959963984540054  # two-sided 95%


def _mix64(x: int) -> int:
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def edge_variate(seed: int, trial: int, edge_idx: int) -> float:
    """Uniform [0,1) variate for one potential edge of one trial."""
    x = (seed * 0x9E3779B97F4A7C15 + trial * 0xC2B2AE3D27D4EB4F
         + edge_idx * 0x165667B19E3779F9 + 0xD6E8FEB86659FD93) & _MASK64
    x = _mix64(_mix64(x))
    return (x >> 11) / float(1 << 53)


def sample_gnp(n: int, p: float, seed: int, trial: int = 0) -> Graph:
    """Binomial random graph on n vertices; edge j appears when its
    counter variate is below p.  Edge indices follow the canonical
    order of the complete graph."""
    if not 0 <= p <= 1:
        raise ValueError("edge probability must lie in [0, 1]")
    edges = []
    for j, (u, v) in enumerate(itertools.combinations(range(n), 2)):
        if edge_variate(seed, trial, j) < p:
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def perturb(base: Graph, p: float, seed: int, trial: int = 0) -> Graph:
    """Union of the base graph with a fresh binomial random graph."""
    return base.union(sample_gnp(base.n, p, seed, trial))


def wilson_interval(successes: int, total: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% score interval for a binomial proportion; (0,1) when empty."""
    if total == 0:
        return (0.0, 1.0)
    phat = successes / total
    denom = 1 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass
class MonteCarloRow:
    n: int
    p: float
    trials: int
    successes: int
    inconclusive: int
    wilson_lo: float
    wilson_hi: float

    @property
    def effective(self) -> int:
        return self.trials - self.inconclusive

    @property
    def rate(self) -> Optional[float]:
        return self.successes / self.effective if self.effective else None


def monte_carlo_ramsey(base: Graph, targets: Sequence, p: float, trials: int,
                       seed: int, node_budget: int = 10 ** 8,
                       time_budget: float = 60.0,
                       clique_shortcut: bool = True,
                       _cache: Optional[dict] = None) -> MonteCarloRow:
    """Success rate of the Ramsey property over perturbed samples.

    Success means decide_ramsey proves the perturbed host Ramsey.
    Hosts repeat often at the grid's ends, so verdicts are cached by
    host adjacency when a cache dict is supplied.
    """
    template = ramsey_query(base, targets)
    successes = inconclusive = 0
    for t in range(trials):
        host = perturb(base, p, seed, t)
        key = host.adj
        status = _cache.get(key) if _cache is not None else None
        if status is None:
            q = RamseyQuery(host, template.targets, template.forbidden,
                            node_budget, time_budget)
            verdict = decide_ramsey(q, clique_shortcut=clique_shortcut)
            status = verdict.status
            if _cache is not None and status != INCONCLUSIVE:
                _cache[key] = status
        if status == INCONCLUSIVE:
            inconclusive += 1
        elif status == "ramsey":
            successes += 1
    lo, hi = wilson_interval(successes, trials - inconclusive)
    return MonteCarloRow(base.n, p, trials, successes, inconclusive, lo, hi)


def log_spaced_grid(p_lo: float, p_hi: float, per_decade: int = 13) -> list[float]:
    """Log-spaced probabilities from p_lo to p_hi inclusive."""
    if not 0 < p_lo < p_hi <= 1:
        raise ValueError("need 0 < p_lo < p_hi <= 1")
    decades = math.log10(p_hi / p_lo)
    count = max(2, round(decades * per_decade) + 1)
    return [min(1.0, p_lo * 10 ** (decades * i / (count - 1))) for i in range(count)]


@dataclass
class ScanResult:
    rows: list[MonteCarloRow]
    crossings: dict[int, Optional[float]]
    exponent: Optional[float]
    flags: list[str] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["n,p,trials,successes,wilson_lo,wilson_hi,inconclusive"]
        for row in self.rows:
            lines.append(f"{row.n},{row.p!r},{row.trials},{row.successes},"
                         f"{row.wilson_lo!r},{row.wilson_hi!r},{row.inconclusive}")
        return "\n".join(lines) + "\n"


def _crossing(points: list[tuple[float, Optional[float]]]) -> Optional[float]:
    """First p where the rate reaches 1/2, interpolating linearly in log p."""
    prev = None
    for p, rate in points:
        if rate is None:
            continue
        if rate >= 0.5:
            if prev is None:
                return p
            p0, r0 = prev
            if rate == r0:
                return p
            frac = (0.5 - r0) / (rate - r0)
            return math.exp(math.log(p0) + frac * (math.log(p) - math.log(p0)))
        prev = (p, rate)
    return None


def threshold_scan(bases: Sequence[Graph], targets: Sequence, p_grid: Sequence[float],
                   trials: int, seed: int, node_budget: int = 10 ** 8,
                   time_budget: float = 60.0, clique_shortcut: bool = True) -> ScanResult:
    """Success curves over a probability grid for one or more host sizes.

    Produces one row per (n, p), sorted; per-size crossing estimates;
    and, with at least two sizes, the empirical exponent
    log(p*_1/p*_2) / log(n_1/n_2) as a descriptive quantity.  Flags
    record curve decreases beyond Wilson-interval overlap and
    all-inconclusive batches.
    """
    rows: list[MonteCarloRow] = []
    flags: list[str] = []
    crossings: dict[int, Optional[float]] = {}
    for base in bases:
        cache: dict = {}
        size_rows = []
        for p in sorted(p_grid):
            row = monte_carlo_ramsey(base, targets, p, trials, seed,
                                     node_budget, time_budget,
                                     clique_shortcut, _cache=cache)
            if row.effective == 0:
                flags.append(f"all trials inconclusive at n={row.n}, p={p!r}")
            size_rows.append(row)
        for a, b in zip(size_rows, size_rows[1:]):
            if b.wilson_hi < a.wilson_lo:
                flags.append(f"success rate decreases beyond interval overlap "
                             f"between p={a.p!r} and p={b.p!r} at n={a.n}")
        crossings[base.n] = _crossing([(row.p, row.rate) for row in size_rows])
        rows.extend(size_rows)
    rows.sort(key=lambda row: (row.n, row.p))
    exponent = None
    sized = [(n, c) for n, c in sorted(crossings.items()) if c is not None]
    if len(sized) >= 2 and sized[0][0] != sized[-1][0]:
        (n1, c1), (n2, c2) = sized[0], sized[-1]
        exponent = math.log(c1 / c2) / math.log(n1 / n2)
    return ScanResult(rows, crossings, exponent, flags)


# ---------------------------------------------------------------------
# Dependent random choice selection


@dataclass
class DrcReport:
    selected: list[int]
    removed: list[int]
    samples: list[list[int]]
    subsets_checked: int
    verified: bool
    error: str = ""


def drc_select(g: Graph, parts: Sequence[Sequence[int]], ell: int, t: int,
               gamma_target: float, seed: int,
               subset_cap: int = 10 ** 6) -> DrcReport:
    """Prune the last part so every ell-subset of the survivors has many
    common neighbors in each earlier part.

    Samples t vertices with repetition from each earlier part (counter
    RNG), keeps the last-part vertices adjacent to all samples, then
    removes one vertex from every ell-subset whose common neighborhood
    falls below gamma_target times some earlier part's size.  The
    result is re-verified exhaustively; exceeding the enumeration cap
    is an error rather than an unverified answer.
    """
    if len(parts) < 2:
        raise ValueError("need at least two parts")
    if ell < 1:
        raise ValueError("need ell >= 1")
    part_bits = []
    seen = set()
    for part in parts:
        vs = list(part)
        if not vs:
            raise ValueError("parts must be nonempty")
        if seen.intersection(vs):
            raise ValueError("parts must be disjoint")
        seen.update(vs)
        part_bits.append(sum(1 << v for v in vs))

    samples = []
    counter = 0
    for part in parts[:-1]:
        vs = sorted(part)
        drawn = []
        for _ in range(t):
            u = edge_variate(seed, 0, counter)
            counter += 1
            drawn.append(vs[int(u * len(vs))])
        samples.append(drawn)

    last = sorted(parts[-1])
    keep = []
    for w in last:
        if all(g.has_edge(w, x) for drawn in samples for x in drawn):
            keep.append(w)

    def subset_ok(subset: tuple[int, ...]) -> bool:
        common = (1 << g.n) - 1
        for w in subset:
            common &= g.adj[w]
        for bits_, part in zip(part_bits[:-1], parts[:-1]):
            if (common & bits_).bit_count() < gamma_target * len(part):
                return False
        return True

    total = math.comb(len(keep), ell)
    if total > subset_cap:
        return DrcReport([], [], samples, 0, False,
                         f"{total} candidate subsets exceed the cap {subset_cap}")
    removed = []
    gone = set()
    for subset in itertools.combinations(keep, ell):
        if gone.intersection(subset):
            continue
        if not subset_ok(subset):
            victim = subset[0]
            gone.add(victim)
            removed.append(victim)
    selected = [w for w in keep if w not in gone]

    checked = 0
    for subset in itertools.combinations(selected, ell):
        checked += 1
        if checked > subset_cap:
            return DrcReport([], removed, samples, checked, False,
                             "verification pass exceeded the cap")
        if not subset_ok(subset):
            return DrcReport([], removed, samples, checked, False,
                             f"surviving subset {subset} fails the bound")
    return DrcReport(selected, removed, samples, checked, True)
