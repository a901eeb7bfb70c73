"""Atomic probability measures on a space or on its square, with exact
rational weights, pushforwards, empirical averages along Folner sets,
and an exact Wasserstein-1 distance.

The transport solver runs two routes: a closed-form sweep when the
joint support is isometric to a subset of the line (always the case
inside one connected component, and for pair measures whose two legs
move monotonically together), and a small exact successive-shortest-
path flow otherwise.  The two routes agree on their overlap, which the
test suite checks.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import folner, spaces
from .groups import identity
from .spaces import act, canonical, component, embed, metric, sort_key


@dataclass(frozen=True)
class AtomicMeasure:
    space: spaces.Space
    atoms: tuple  # ((point-or-pair, Fraction weight), ...) sorted, merged

    def total(self):
        return sum(w for _, w in self.atoms)

    def support(self, weight_tol=Fraction(0)):
        return [p for p, w in self.atoms if w > weight_tol]

    def mass(self, nbhd):
        return sum(w for p, w in self.atoms if spaces.contains(self.space, nbhd, p))


def _canonical_atom(space, p):
    if isinstance(p, tuple):
        return tuple(canonical(space, q) for q in p)
    return canonical(space, p)


def measure(space, weighted_points):
    """Build a measure from (point, weight) pairs; merges and sorts."""
    acc = {}
    for p, w in weighted_points:
        p = _canonical_atom(space, p)
        acc[p] = acc.get(p, Fraction(0)) + Fraction(w)
    atoms = tuple((p, w) for p, w in sorted(acc.items(),
                                            key=lambda it: sort_key(space, it[0]))
                  if w != 0)
    m = AtomicMeasure(space, atoms)
    if m.total() != 1:
        raise ValueError("weights sum to %s, not 1" % (m.total(),))
    return m


def dirac(space, p):
    return measure(space, [(p, Fraction(1))])


def empirical(space, start, family, n, budget=folner.ATOM_BUDGET):
    """Push the point mass at `start` along the n-th Folner set."""
    els = folner.elements(family, n, budget)
    counts = Counter(_canonical_atom(space, act(space, g, start)) for g in els)
    total = len(els)
    return measure(space, [(p, Fraction(c, total)) for p, c in counts.items()])


def pushforward(space, g, m):
    return measure(space, [(act(space, g, p), w) for p, w in m.atoms])


def combine(parts):
    """Convex combination of (coefficient, measure) pairs."""
    parts = list(parts)
    space = parts[0][1].space
    pts = []
    for c, m in parts:
        if m.space != space:
            raise ValueError("mixing measures on different spaces")
        pts.extend((p, Fraction(c) * w) for p, w in m.atoms)
    return measure(space, pts)


# ------------------------------------------------------------ Wasserstein-1

MERGE_RADIUS = Fraction(1, 10 ** 9)
MAX_ATOMS = 4000


def _coarsen(space, m):
    if len(m.atoms) <= MAX_ATOMS:
        return m
    out = []
    last_key = None
    for p, w in m.atoms:  # atoms are sorted; greedily merge near-coincident ones
        k = sort_key(space, p)
        if out and _key_close(last_key, k):
            out[-1] = (out[-1][0], out[-1][1] + w)
        else:
            out.append((p, w))
            last_key = k
    return measure(space, out)


def _key_close(k1, k2):
    def flat(k):
        return k if isinstance(k[0], tuple) else (k,)
    for a, b in zip(flat(k1), flat(k2)):
        if a[0] != b[0] or abs(a[1] - b[1]) > MERGE_RADIUS:
            return False
    return True


def _line_positions(space, points):
    """Chain coordinates if the points sit isometrically on a line,
    else None.  `points` must be sorted by sort_key."""
    if not points:
        return []
    pairs = isinstance(points[0], tuple)
    if not pairs:
        comps = {component(space, p) for p in points}
        if len(comps) == 1:
            return [embed(space, p) for p in points]
        return _verified_chain(space, points)
    comps = {(component(space, p[0]), component(space, p[1])) for p in points}
    if len(comps) == 1:
        e1 = [embed(space, p[0]) for p in points]
        e2 = [embed(space, p[1]) for p in points]
        if _monotone(e1) and _monotone(e2):
            pos = [Fraction(0)]
            for i in range(1, len(points)):
                pos.append(pos[-1] + abs(e1[i] - e1[i - 1]) + abs(e2[i] - e2[i - 1]))
            return pos
    return _verified_chain(space, points)


def _monotone(vals):
    return (all(a <= b for a, b in zip(vals, vals[1:]))
            or all(a >= b for a, b in zip(vals, vals[1:])))


def _verified_chain(space, points):
    if len(points) > 600:  # quadratic check; big instances take the flow route
        return None
    pos = [Fraction(0)]
    for i in range(1, len(points)):
        pos.append(pos[-1] + metric(space, points[i - 1], points[i]))
    fpos = [float(t) for t in pos]
    for i in range(len(points)):
        for j in range(i + 2, len(points)):
            if abs(float(metric(space, points[i], points[j])) - (fpos[j] - fpos[i])) > 1e-9:
                return None
    return pos


def w1(mu, nu):
    """Exact optimal-transport distance for the ground metric."""
    if mu.space != nu.space:
        raise ValueError("measures live on different spaces")
    space = mu.space
    mu, nu = _coarsen(space, mu), _coarsen(space, nu)
    if mu.atoms == nu.atoms:
        return Fraction(0)
    support = sorted({p for p, _ in mu.atoms} | {p for p, _ in nu.atoms},
                     key=lambda p: sort_key(space, p))
    pos = _line_positions(space, support)
    if pos is not None:
        return _w1_line(dict(zip(support, pos)), mu, nu)
    return _w1_flow(space, mu, nu)


def _w1_line(pos, mu, nu):
    # CDF sweep: integrate |F_mu - F_nu| along the chain coordinate
    delta = Counter()
    for p, w in mu.atoms:
        delta[pos[p]] += w
    for p, w in nu.atoms:
        delta[pos[p]] -= w
    cost = Fraction(0)
    cdf = Fraction(0)
    prev = None
    for t in sorted(delta):
        if prev is not None:
            cost += abs(cdf) * (t - prev)
        cdf += delta[t]
        prev = t
    return cost


def _w1_flow(space, mu, nu):
    """Successive shortest augmenting paths, all arithmetic in Fractions.
    Augmenting along cheapest residual paths keeps every intermediate
    flow optimal for its value, so the final flow is an optimum."""
    sources = list(mu.atoms)
    sinks = list(nu.atoms)
    m, n = len(sources), len(sinks)
    cost = [[metric(space, p, q) for q, _ in sinks] for p, _ in sources]
    supply = [w for _, w in sources]
    demand = [w for _, w in sinks]
    flow = [[Fraction(0)] * n for _ in range(m)]
    remaining = sum(supply)
    guard = 4 * (m + n) * (m + n)
    while remaining > 0:
        guard -= 1
        if guard < 0:
            raise AssertionError("transport solver failed to terminate")
        path = _cheapest_augmenting_path(cost, flow, supply, demand)
        amount = min(remaining,
                     supply[path[0][1]],
                     demand[path[-1][1]])
        # path alternates source, sink, source, ...; even hops push flow,
        # odd hops cancel it
        hops = [(path[k][1], path[k + 1][1]) for k in range(0, len(path) - 1)]
        for k, (a, b) in enumerate(hops):
            if k % 2 == 1:  # sink a -> source b cancels flow[b][a]
                amount = min(amount, flow[b][a])
        for k, (a, b) in enumerate(hops):
            if k % 2 == 0:
                flow[a][b] += amount
            else:
                flow[b][a] -= amount
        supply[path[0][1]] -= amount
        demand[path[-1][1]] -= amount
        remaining -= amount
    return sum(flow[i][j] * cost[i][j] for i in range(m) for j in range(n))


def _cheapest_augmenting_path(cost, flow, supply, demand):
    """Bellman-Ford over the residual bipartite graph.  Nodes are
    ("src", i) and ("snk", j); forward arcs cost c_ij, backward arcs
    (only where flow is positive) cost -c_ij.  Returns the cheapest
    path from a source with supply to a sink with demand."""
    m, n = len(cost), len(cost[0])
    dist = {}
    parent = {}
    for i in range(m):
        if supply[i] > 0:
            dist[("src", i)] = Fraction(0)
            parent[("src", i)] = None
    changed = True
    while changed:
        changed = False
        for i in range(m):
            di = dist.get(("src", i))
            if di is None:
                continue
            for j in range(n):
                d = di + cost[i][j]
                key = ("snk", j)
                if key not in dist or d < dist[key]:
                    dist[key] = d
                    parent[key] = ("src", i)
                    changed = True
        for j in range(n):
            dj = dist.get(("snk", j))
            if dj is None:
                continue
            for i in range(m):
                if flow[i][j] <= 0:
                    continue
                d = dj - cost[i][j]
                key = ("src", i)
                if key not in dist or d < dist[key]:
                    dist[key] = d
                    parent[key] = ("snk", j)
                    changed = True
    best = min((j for j in range(n) if demand[j] > 0 and ("snk", j) in dist),
               key=lambda j: dist[("snk", j)], default=None)
    if best is None:
        raise AssertionError("no augmenting path in transport network")
    node = ("snk", best)
    path = []
    while node is not None:
        path.append(node)
        node = parent[node]
    path.reverse()
    return path


# ----------------------------------------------------- limits and clustering

def invariance_defect(space, m, generators):
    return max(w1(pushforward(space, g, m), m) for g in generators)


def snap_to_limits(space, m, radius):
    """Merge each atom into the limit point(s) within `radius` of it
    (coordinatewise for pairs)."""
    limits = space.limit_points()

    def snap(p):
        if isinstance(p, tuple):
            return tuple(snap(q) for q in p)
        best = min(limits, key=lambda l: metric(space, l, p))
        return best if metric(space, best, p) <= radius else p

    return measure(space, [(snap(p), w) for p, w in m.atoms])


def heavy_atoms(m, weight_tol):
    return [(p, w) for p, w in m.atoms if w >= weight_tol]


@dataclass
class ClusterReport:
    verdict: str            # "CANDIDATE" or "NONE"
    candidate: object       # AtomicMeasure or None
    gaps: list              # trailing pairwise w1 values (floats)
    tol: float
    tail: int


def cluster_detect(measures, tol=1e-3, tail=5):
    """Trailing-stability test: the last measure is the candidate limit
    when all pairwise distances among the last `tail` entries fall
    below `tol`.  Several interleaved limit points would keep the tail
    oscillating, so that case reports NONE."""
    ms = list(measures)
    if len(ms) < tail:
        raise ValueError("need at least %d measures" % tail)
    window = ms[-tail:]
    gaps = []
    ok = True
    for i in range(len(window)):
        for j in range(i + 1, len(window)):
            g = float(w1(window[i], window[j]))
            gaps.append(g)
            if g >= tol:
                ok = False
    if ok:
        return ClusterReport("CANDIDATE", ms[-1], gaps, tol, tail)
    return ClusterReport("NONE", None, gaps, tol, tail)


def support_union_estimate(space, starts, families, n, snap_radius=Fraction(1, 10),
                           weight_tol=Fraction(1, 20), budget=folner.ATOM_BUDGET):
    """Finite estimate of the union of supports of invariant limit
    measures: snap each empirical measure's atoms to nearby limit
    points, keep the heavy ones, and union over starts and families."""
    out = set()
    detail = []
    for fam in families:
        for start in starts:
            m = snap_to_limits(space, empirical(space, start, fam, n, budget),
                               snap_radius)
            heavy = [p for p, w in heavy_atoms(m, weight_tol)]
            detail.append((start, fam, heavy))
            out.update(heavy)
    points = sorted(out, key=lambda p: sort_key(space, p))
    return {"points": points, "n": n, "snap_radius": snap_radius,
            "weight_tol": weight_tol, "detail": detail}


def measure_to_json(m):
    return {
        "atoms": [{"point": spaces.point_to_json(p), "weight": str(w),
                   "weight_float": float(w)} for p, w in m.atoms],
    }
