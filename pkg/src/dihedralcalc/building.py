"""Finite-stage free constructions of chamber graphs with girth >= 2n.

A rank-2 incidence geometry with dihedral symmetry of order 2n is, at the
level of its vertex-edge graph, a bipartite graph of girth at least 2n in
which any two elements lie at distance at most n.  This module grows such
graphs from a seed 2n-cycle by two free operations:

* ``bar_step`` completes distance-(n+1) and distance-n vertex pairs by
  fresh arcs, pushing the diameter toward n without ever creating a cycle
  shorter than 2n;
* ``attach_mpod`` plants a new center at prescribed distances from a tuple
  of mutually antipodal edges, which is the targeted way to make a ball
  intersection nonempty.

On top of the graphs it evaluates weighted-configuration slopes exactly in
the small cyclotomic field and searches for minimal-slope vertices, which
is the geometric counterpart of the linear inequality systems in `cones`.
"""

from __future__ import annotations

import collections
import copy as _copy
import csv
import io
import json
import math
import random
from dataclasses import dataclass, field

from .cones import DominantWeight, gen_wti, is_member, pairing_columns, small_field
from .errors import BudgetExceededError, DomainError, InvalidParameterError, VerificationError
from .field import FieldElement
from .weyl import DihedralGroup

Chamber = tuple[int, int]


class ChamberGraph:
    """Bipartite graph with vertex types in {1, 2} and a construction log.

    Vertices are integers 0..V-1; ``types[v]`` is the type of v and ``adj[v]``
    the neighbor list.  All randomized choices go through ``self.rng`` so a
    fixed seed plus a fixed operation sequence reproduces the graph and the
    log byte for byte.
    """

    def __init__(self, n: int, seed: int = 0):
        if n < 2:
            raise InvalidParameterError("n must be at least 2")
        self.n = n
        self.seed = seed
        self.types: list[int] = []
        self.adj: list[list[int]] = []
        self.log: list[dict] = []
        self.rng = random.Random(seed)

    # -- construction primitives -------------------------------------------

    @classmethod
    def apartment(cls, n: int, seed: int = 0) -> "ChamberGraph":
        """A single 2n-cycle, vertex k of type (k mod 2) + 1."""
        g = cls(n, seed)
        for k in range(2 * n):
            g.add_vertex(1 + (k % 2))
        for k in range(2 * n):
            g.add_edge(k, (k + 1) % (2 * n))
        g.log.append({"op": "apartment", "n": n, "seed": seed})
        return g

    def copy(self) -> "ChamberGraph":
        g = ChamberGraph(self.n, self.seed)
        g.types = list(self.types)
        g.adj = [list(a) for a in self.adj]
        g.log = _copy.deepcopy(self.log)
        g.rng.setstate(self.rng.getstate())
        return g

    @property
    def num_vertices(self) -> int:
        return len(self.types)

    def add_vertex(self, vertex_type: int) -> int:
        if vertex_type not in (1, 2):
            raise InvalidParameterError("vertex type must be 1 or 2")
        self.types.append(vertex_type)
        self.adj.append([])
        return len(self.types) - 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InvalidParameterError("no loops allowed")
        if self.types[u] == self.types[v]:
            raise InvalidParameterError("edge endpoints must have opposite types")
        if v in self.adj[u]:
            raise InvalidParameterError("duplicate edge")
        self.adj[u].append(v)
        self.adj[v].append(u)

    def add_path(self, u: int, v: int, length: int) -> list[int]:
        """Join u to v by a fresh path with ``length`` edges; returns new ids."""
        if length < 1:
            raise InvalidParameterError("path length must be positive")
        if (self.types[u] + self.types[v] + length) % 2 != 0:
            raise InvalidParameterError("path length incompatible with endpoint types")
        new: list[int] = []
        prev = u
        t = self.types[u]
        for _ in range(length - 1):
            t = 3 - t
            w = self.add_vertex(t)
            self.add_edge(prev, w)
            new.append(w)
            prev = w
        self.add_edge(prev, v)
        return new

    def edges(self) -> list[Chamber]:
        out = []
        for u in range(self.num_vertices):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        return sorted(out)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    # -- metric queries -----------------------------------------------------

    def distances(self, src: int, limit: int | None = None) -> list[int | None]:
        dist: list[int | None] = [None] * self.num_vertices
        dist[src] = 0
        queue = collections.deque([src])
        while queue:
            u = queue.popleft()
            if limit is not None and dist[u] >= limit:
                continue
            for v in sorted(self.adj[u]):
                if dist[v] is None:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distance(self, u: int, v: int) -> int | None:
        return self.distances(u)[v]

    def shortest_path(self, u: int, v: int) -> list[int] | None:
        """A shortest u-v path; ties broken toward smaller vertex ids."""
        parent: dict[int, int] = {u: -1}
        queue = collections.deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                path = [v]
                while parent[path[-1]] != -1:
                    path.append(parent[path[-1]])
                return path[::-1]
            for y in sorted(self.adj[x]):
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        return None

    def chamber_distances(self, chamber: Chamber) -> list[int | None]:
        """min(d(., u), d(., v)) for the edge (u, v), by a two-source BFS."""
        u, v = chamber
        dist: list[int | None] = [None] * self.num_vertices
        dist[u] = 0
        dist[v] = 0
        queue = collections.deque([u, v])
        while queue:
            x = queue.popleft()
            for y in sorted(self.adj[x]):
                if dist[y] is None:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def check_chamber(self, chamber: Chamber) -> Chamber:
        u, v = chamber
        if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
            raise InvalidParameterError(f"chamber {chamber} has an unknown vertex")
        if not self.has_edge(u, v):
            raise InvalidParameterError(f"chamber {chamber} is not an edge")
        if self.types[u] == 1:
            return (u, v)
        return (v, u)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "vertices": [{"id": v, "type": self.types[v]} for v in range(self.num_vertices)],
            "edges": [[u, v] for u, v in self.edges()],
            "log": _copy.deepcopy(self.log),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ChamberGraph":
        g = cls(int(doc["n"]), int(doc.get("seed", 0)))
        order = sorted(doc["vertices"], key=lambda rec: rec["id"])
        for expect, rec in enumerate(order):
            if rec["id"] != expect:
                raise InvalidParameterError("vertex ids must be 0..V-1")
            g.add_vertex(int(rec["type"]))
        for u, v in doc["edges"]:
            g.add_edge(int(u), int(v))
        g.log = _copy.deepcopy(doc.get("log", []))
        return g


# -- global metrics ----------------------------------------------------------


def girth(g: ChamberGraph, cap: int | None = None, roots: list[int] | None = None) -> float:
    """Length of a shortest cycle, math.inf for a forest.

    BFS from every root; a cross edge at depths (a, b) certifies a closed
    walk of length a+b+1 through the root, and the minimum over all roots
    is the girth.  ``cap`` stops early once a cycle <= cap is known, and
    ``roots`` restricts the search for incremental checks (a new cycle
    always passes through a new edge, so its endpoints suffice as roots).
    """
    best = math.inf
    for src in roots if roots is not None else range(g.num_vertices):
        dist = {src: 0}
        parent = {src: -1}
        queue = collections.deque([src])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in g.adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    best = min(best, dist[u] + dist[v] + 1)
        if cap is not None and best <= cap:
            return best
    return best


def assert_girth(g: ChamberGraph, roots: list[int] | None = None) -> None:
    got = girth(g, cap=2 * g.n - 1, roots=roots)
    if got < 2 * g.n:
        raise VerificationError(f"girth dropped to {got}, below {2 * g.n}")


def graph_metrics(g: ChamberGraph) -> dict:
    """Girth, diameter and valence statistics; infinities when disconnected."""
    ecc = []
    disconnected = False
    for v in range(g.num_vertices):
        dist = g.distances(v)
        if any(d is None for d in dist):
            disconnected = True
        ecc.append(max(d for d in dist if d is not None))
    valences = [len(a) for a in g.adj]
    return {
        "vertices": g.num_vertices,
        "edges": len(g.edges()),
        "girth": girth(g),
        "diameter": math.inf if disconnected else max(ecc),
        "valence_min": min(valences),
        "valence_max": max(valences),
        "valence_mean": sum(valences) / len(valences),
    }


def check_n1_isometric(
    old: ChamberGraph,
    new: ChamberGraph,
    vertex_map: dict[int, int] | None = None,
) -> bool:
    """Whether pairs at distance < n-1 in ``old`` keep their distance in ``new``.

    The stage maps of a free construction must be (n-1)-isometric: growth may
    shorten long distances but must never disturb the local structure.
    """
    f = vertex_map if vertex_map is not None else {v: v for v in range(old.num_vertices)}
    radius = old.n - 2
    for u in range(old.num_vertices):
        dist_old = old.distances(u, limit=radius)
        dist_new = new.distances(f[u], limit=radius)
        for v, d in enumerate(dist_old):
            if d is not None and 0 < d <= radius:
                if dist_new[f[v]] != d:
                    return False
    return True


# -- free growth operations --------------------------------------------------


@dataclass
class BarReport:
    graph: ChamberGraph
    joined_far: int
    joined_near: int
    skipped_far: int
    skipped_near: int


def bar_step(g: ChamberGraph, cap: int = 64) -> BarReport:
    """Complete far vertex pairs by fresh arcs.

    On a snapshot of the metric, every pair at distance n+1 is joined by a
    new path of length n-1 and every pair at distance n by a path of length
    n; both keep the graph bipartite and create only cycles of length 2n.
    At most ``cap`` pairs of each kind are processed per call (a seeded
    sample when there are more); the report counts what was left out.
    """
    g2 = g.copy()
    n = g2.n
    far: list[Chamber] = []
    near: list[Chamber] = []
    for u in range(g2.num_vertices):
        dist = g2.distances(u, limit=n + 1)
        for v in range(u + 1, g2.num_vertices):
            if dist[v] == n + 1:
                far.append((u, v))
            elif dist[v] == n:
                near.append((u, v))

    def pick(pairs: list[Chamber]) -> tuple[list[Chamber], int]:
        if len(pairs) <= cap:
            return pairs, 0
        chosen = sorted(g2.rng.sample(pairs, cap))
        return chosen, len(pairs) - cap

    far_chosen, far_skipped = pick(far)
    near_chosen, near_skipped = pick(near)
    touched: list[int] = []
    for u, v in far_chosen:
        touched += g2.add_path(u, v, n - 1) + [u, v]
    for u, v in near_chosen:
        touched += g2.add_path(u, v, n) + [u, v]
    assert_girth(g2, roots=sorted(set(touched)))
    g2.log.append(
        {
            "op": "bar",
            "joined_far": len(far_chosen),
            "joined_near": len(near_chosen),
            "skipped_far": far_skipped,
            "skipped_near": near_skipped,
        }
    )
    return BarReport(g2, len(far_chosen), len(near_chosen), far_skipped, near_skipped)


def antipodal(g: ChamberGraph, a: Chamber, b: Chamber) -> bool:
    """Edges are antipodal when their closest endpoints are exactly n-1 apart."""
    dist = g.chamber_distances(a)
    vals = [dist[b[0]], dist[b[1]]]
    if any(d is None for d in vals):
        return False
    return min(vals) == g.n - 1


@dataclass
class PodReport:
    graph: ChamberGraph
    center: int
    legs: list[list[int]]


def attach_mpod(
    g: ChamberGraph,
    chambers: list[Chamber],
    radii: list[int],
    center_type: int,
) -> PodReport:
    """Plant a fresh center at distance radii[i] from each chamber.

    Preconditions: the chambers are mutually antipodal, 0 < r_i <= n-1, and
    r_i + r_j >= n for all i != j.  Each leg ends at the chamber endpoint
    whose type matches the parity of the leg length, which is exactly what
    makes the center's nearest chamber point have the prescribed type.
    The girth bound survives because any new cycle runs through two legs
    and a path between distinct chambers, of total length at least
    r_i + r_j + (n-1) >= 2n - 1, hence (bipartite) at least 2n.
    """
    if center_type not in (1, 2):
        raise InvalidParameterError("center type must be 1 or 2")
    if len(chambers) != len(radii):
        raise InvalidParameterError("one radius per chamber required")
    chambers = [g.check_chamber(c) for c in chambers]
    n = g.n
    for i, r in enumerate(radii):
        if not (0 < r <= n - 1):
            raise InvalidParameterError(f"radius {r} at slot {i} outside 1..{n - 1}")
    for i in range(len(chambers)):
        for j in range(i + 1, len(chambers)):
            if radii[i] + radii[j] < n:
                raise InvalidParameterError(
                    f"radii at slots {i} and {j} sum to {radii[i] + radii[j]} < {n}"
                )
            if not antipodal(g, chambers[i], chambers[j]):
                raise InvalidParameterError(f"chambers at slots {i} and {j} are not antipodal")

    g2 = g.copy()
    center = g2.add_vertex(center_type)
    legs = []
    touched = [center]
    for (x1, x2), r in zip(chambers, radii):
        # endpoint of type t with t = center_type + r mod 2 keeps the path bipartite
        target = x1 if (1 + center_type + r) % 2 == 0 else x2
        legs.append(g2.add_path(center, target, r))
        touched += legs[-1] + [target]
    for (x1, x2), r in zip(chambers, radii):
        dist = g2.chamber_distances((x1, x2))
        if dist[center] != r:
            raise VerificationError(f"pod center landed at distance {dist[center]} != {r}")
    assert_girth(g2, roots=touched)
    g2.log.append(
        {
            "op": "pod",
            "chambers": [list(c) for c in chambers],
            "radii": list(radii),
            "center_type": center_type,
            "center": center,
        }
    )
    return PodReport(g2, center, legs)


@dataclass
class TupleReport:
    graph: ChamberGraph
    chambers: list[Chamber]


def find_antipodal_tuple(g: ChamberGraph, m: int, budget: int | None = None) -> TupleReport:
    """Grow the graph until it carries m mutually antipodal chambers.

    Greedy: keep the chambers found so far, scan existing edges for one
    antipodal to all of them, and if none exists attach a pod with all
    radii n-1 on the current tuple; its fresh center edge is antipodal to
    every chamber of the tuple (the center sits at distance exactly n-1,
    its new neighbor at n).
    """
    if m < 1:
        raise InvalidParameterError("m must be positive")
    limit = budget if budget is not None else 2 * m + 4
    g2 = g.copy()
    n = g2.n
    chosen: list[Chamber] = []
    steps = 0
    while len(chosen) < m:
        found = None
        for e in g2.edges():
            if any(set(e) & set(c) for c in chosen):
                continue
            if all(antipodal(g2, e, c) for c in chosen):
                found = g2.check_chamber(e)
                break
        if found is not None:
            chosen.append(found)
            continue
        steps += 1
        if steps > limit:
            raise BudgetExceededError("antipodal tuple growth budget exhausted")
        pod = attach_mpod(g2, chosen, [n - 1] * len(chosen), 1)
        g2 = pod.graph
        mate = g2.add_vertex(2)
        g2.add_edge(pod.center, mate)
        g2.log.append({"op": "tuple-edge", "edge": [pod.center, mate]})
    for i in range(m):
        for j in range(i + 1, m):
            if not antipodal(g2, chosen[i], chosen[j]):
                raise VerificationError("constructed tuple failed the antipodality check")
    g2.log.append({"op": "tuple", "chambers": [list(c) for c in chosen]})
    return TupleReport(g2, chosen)


# -- ball intersection census -------------------------------------------------


def ball_intersection_census(
    g: ChamberGraph,
    chambers: list[Chamber],
    radii: list[int],
    l: int,
) -> int:
    """Number of type-l vertices within distance radii[i] of every chamber."""
    if l not in (1, 2):
        raise InvalidParameterError("grassmannian index must be 1 or 2")
    chambers = [g.check_chamber(c) for c in chambers]
    tables = [g.chamber_distances(c) for c in chambers]
    count = 0
    for v in range(g.num_vertices):
        if g.types[v] != l:
            continue
        if all(t[v] is not None and t[v] <= r for t, r in zip(tables, radii)):
            count += 1
    return count


@dataclass
class CensusReport:
    graph: ChamberGraph
    counts: list[int]
    outcome: str


def _census_saturation(g: ChamberGraph, chambers: list[Chamber], l: int) -> ChamberGraph:
    """One deterministic completion round focused on the chamber tuple.

    Applies the bar joins (distance n+1 pairs get an (n-1)-path, distance n
    pairs an n-path) but only to pairs among the chamber endpoints and the
    type-l vertices that are within n+1 of every chamber: exactly the pairs
    whose completion can change the census.  No cap, no sampling, so the
    frozen census classes converge reproducibly.
    """
    n = g.n
    endpoints = sorted({v for c in chambers for v in c})
    tables = [g.chamber_distances(c) for c in chambers]
    candidates = [
        v
        for v in range(g.num_vertices)
        if g.types[v] == l and all(t[v] is not None and t[v] <= n + 1 for t in tables)
    ]
    pool = sorted(set(endpoints) | set(candidates))
    pairs = set()
    for u in pool:
        dist = g.distances(u, limit=n + 1)
        for v in endpoints:
            if v != u and dist[v] in (n, n + 1):
                pairs.add((min(u, v), max(u, v), dist[v]))
    g2 = g.copy()
    touched: list[int] = []
    for u, v, d in sorted(pairs):
        touched += g2.add_path(u, v, n - 1 if d == n + 1 else n) + [u, v]
    if touched:
        assert_girth(g2, roots=sorted(set(touched)))
    g2.log.append({"op": "census-saturation", "joined": len(pairs)})
    return g2


def census_rounds(
    g: ChamberGraph,
    chambers: list[Chamber],
    radii: list[int],
    l: int,
    rounds: int = 3,
) -> CensusReport:
    """Track the census over growth rounds and classify the outcome.

    When every radius pair sums to at least n, each round attaches a pod
    with the given radii (adding a fresh intersection point); otherwise no
    pod with these radii is admissible, the count has a girth-forced finite
    bound, and the rounds run targeted completion steps until it stabilizes.
    Outcome "growing" means strictly increasing counts across all rounds,
    otherwise the final stable count ("0" or "1").
    """
    n = g.n
    g2 = g.copy()
    counts = [ball_intersection_census(g2, chambers, radii, l)]
    can_pod = all(
        radii[i] + radii[j] >= n for i in range(len(radii)) for j in range(i + 1, len(radii))
    )
    for _ in range(max(rounds, 3)):
        if can_pod:
            g2 = attach_mpod(g2, chambers, radii, l).graph
        else:
            g2 = _census_saturation(g2, chambers, l)
        counts.append(ball_intersection_census(g2, chambers, radii, l))
    if all(a < b for a, b in zip(counts, counts[1:])):
        outcome = "growing"
    else:
        outcome = str(counts[-1])
    return CensusReport(g2, counts, outcome)


def census_to_csv(rows: list[dict]) -> str:
    """CSV with one row per (radii, grassmannian) census run."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "radii", "grassmannian", "counts", "outcome", "product_coefficient"])
    for row in rows:
        writer.writerow(
            [
                row["n"],
                " ".join(str(r) for r in row["radii"]),
                row["grassmannian"],
                " ".join(str(c) for c in row["counts"]),
                row["outcome"],
                row.get("product_coefficient", ""),
            ]
        )
    return buf.getvalue()


# -- weighted configurations and slopes ---------------------------------------


@dataclass
class WeightedConfiguration:
    """Dominant weights placed on chambers of a graph.

    The weight (a, b) on a chamber (x1, x2) is the point with barycentric
    coordinates a at the type-1 endpoint and b at the type-2 endpoint.
    """

    graph: ChamberGraph
    chambers: list[Chamber]
    weights: list[DominantWeight]

    def __post_init__(self):
        if len(self.chambers) != len(self.weights):
            raise InvalidParameterError("one weight per chamber required")
        self.chambers = [self.graph.check_chamber(c) for c in self.chambers]
        for i, w in enumerate(self.weights):
            if not w.is_dominant():
                raise DomainError(f"weight at slot {i} is not dominant")


def _slope_index(n: int, r: int, near_type: int) -> int:
    # near endpoint of type 1 sits at vertex 0 of the local 2n-gon chart and
    # the chamber occupies [0, 1]; rotating away from it by r steps lands on
    # vertex -r, while from the type-2 endpoint it lands on 1 + r
    if near_type == 1:
        return (-r) % (2 * n)
    return (1 + r) % (2 * n)


def slope_contribution(n: int, weight: DominantWeight, r: int, near_type: int) -> FieldElement:
    col_a, col_b = pairing_columns(n)
    k = _slope_index(n, r, near_type)
    return -(col_a[k] * weight.a + col_b[k] * weight.b)


def slope_at(config: WeightedConfiguration, eta: int) -> FieldElement:
    """Exact slope of the configuration at a vertex.

    The contribution of slot i is -<lambda_i, v> where v is the chamber
    vertex nearest to eta rotated away from the chamber by r*pi/n,
    r = d(eta, chamber_i).  Unreachable chambers make the slope undefined.
    """
    g = config.graph
    descr = small_field(g.n)
    dist = g.distances(eta)
    total = descr.zero
    for (x1, x2), w in zip(config.chambers, config.weights):
        d1, d2 = dist[x1], dist[x2]
        if d1 is None or d2 is None:
            raise DomainError(f"vertex {eta} cannot reach chamber ({x1}, {x2})")
        near_type = 1 if d1 < d2 else 2
        total = total + slope_contribution(g.n, w, min(d1, d2), near_type)
    return total


@dataclass
class ScanResult:
    vertex: int
    value: FieldElement


def min_slope_scan(
    config: WeightedConfiguration,
    l: int,
    within: int | None = None,
) -> ScanResult | None:
    """Minimal slope over type-l vertices, smallest vertex id on ties.

    ``within`` skips vertices farther than that from some chamber: at a
    finite stage, distances beyond n are not yet the limit distances (the
    limit geometry has diameter n), so scans for semistability evidence
    restrict to the metrically converged range.
    """
    if l not in (1, 2):
        raise InvalidParameterError("grassmannian index must be 1 or 2")
    g = config.graph
    descr = small_field(g.n)
    tables = [g.chamber_distances(c) for c in config.chambers]
    sides = [g.distances(c[0]) for c in config.chambers]
    best: ScanResult | None = None
    for v in range(g.num_vertices):
        if g.types[v] != l:
            continue
        if any(t[v] is None for t in tables):
            continue
        if within is not None and any(t[v] > within for t in tables):
            continue
        total = descr.zero
        for t, s, w in zip(tables, sides, config.weights):
            near_type = 1 if s[v] == t[v] else 2
            total = total + slope_contribution(g.n, w, t[v], near_type)
        if best is None or total < best.value:
            best = ScanResult(v, total)
    return best


# -- semistable configurations -------------------------------------------------


@dataclass
class SemistableReport:
    member: bool
    graph: ChamberGraph
    config: WeightedConfiguration
    scans: list[dict]
    witness: ScanResult | None
    violated: object = None


def _witness_geometry(n: int, words, l: int) -> list[tuple[int, int]]:
    """Per slot: (distance to the chamber, type of the nearest endpoint).

    The violated inequality names Weyl elements w_i; the witness vertex must
    see chamber i the way w_i(zeta_l) sees the base chamber in the 2n-gon,
    i.e. at the vertex of index k_i = index of w_i(zeta_l).
    """
    group = DihedralGroup(n)
    out = []
    for w in words:
        k = group.vertex_index(w, l) % (2 * n)
        d0 = min(k, 2 * n - k)
        d1 = min((k - 1) % (2 * n), (1 - k) % (2 * n))
        if d0 < d1:
            out.append((d0, 1))
        else:
            out.append((d1, 2))
    return out


def _ensure_leg(g: ChamberGraph, eta: int, target: int, r: int) -> None:
    """Make d(eta, target) == r by a fresh path when currently larger."""
    d = g.distance(eta, target)
    if d == r:
        return
    if d is not None and d < r:
        raise VerificationError(f"vertex {target} already at distance {d} < {r}")
    new = g.add_path(eta, target, r)
    assert_girth(g, roots=new + [eta, target])


def construct_semistable(
    n: int,
    weights: list[DominantWeight],
    seed: int = 0,
    rounds: int = 2,
    cap: int = 64,
) -> SemistableReport:
    """Decide semistability geometrically for weights on antipodal chambers.

    Member weights: place them on a freshly grown antipodal tuple and record
    the minimal slope per growth round (each round one bar step); all scans
    stay >= 0.  Non-member weights: the violated inequality dictates radii
    and parities of a witness vertex, which is built by legs and connecting
    arcs; its slope equals minus the violation exactly and is negative.
    """
    m = len(weights)
    if m < 2:
        raise InvalidParameterError("need at least two weights")
    system = gen_wti(n, m)
    verdict = is_member(system, weights)
    base = ChamberGraph.apartment(n, seed)
    grown = find_antipodal_tuple(base, m)
    g, chambers = grown.graph, grown.chambers

    if verdict.member:
        config = WeightedConfiguration(g, chambers, weights)
        scans = []
        for rnd in range(rounds + 1):
            if rnd > 0:
                g = bar_step(g, cap=cap).graph
                config = WeightedConfiguration(g, chambers, weights)
            entry = {"round": rnd, "vertices": g.num_vertices}
            for l in (1, 2):
                res = min_slope_scan(config, l, within=n)
                entry[f"min_{l}"] = res
            scans.append(entry)
        return SemistableReport(True, g, config, scans, None)

    tag = verdict.violated.tag
    geometry = _witness_geometry(n, tag.words, tag.l)
    g = g.copy()
    i, j = tag.slots
    ri, ti = geometry[i]
    rj, tj = geometry[j]
    if ri + rj != n - 1:
        raise VerificationError("violated inequality is not of complementary-pair shape")
    xi = chambers[i][ti - 1]
    xj = chambers[j][tj - 1]
    if ri == 0:
        eta = xi
        _ensure_leg(g, eta, xj, rj)
    elif rj == 0:
        eta = xj
        _ensure_leg(g, eta, xi, ri)
    else:
        path = g.shortest_path(xi, xj)
        if path is not None and len(path) - 1 == n - 1:
            eta = path[ri]
        else:
            new = g.add_path(xi, xj, n - 1)
            assert_girth(g, roots=new + [xi, xj])
            eta = new[ri - 1]
    for s, (r, t) in enumerate(geometry):
        if s in (i, j):
            continue
        _ensure_leg(g, eta, chambers[s][t - 1], r)
    for s, (r, t) in enumerate(geometry):
        table = g.chamber_distances(chambers[s])
        if table[eta] != r:
            raise VerificationError(
                f"witness sits at distance {table[eta]} != {r} from chamber {s}"
            )
        near = chambers[s][t - 1]
        if g.distance(eta, near) != r:
            raise VerificationError(f"nearest endpoint of chamber {s} has the wrong type")
    g.log.append({"op": "hn-witness", "vertex": eta, "labels": tag.to_json()})
    config = WeightedConfiguration(g, chambers, weights)
    value = slope_at(config, eta)
    if not (value == -verdict.value):
        raise VerificationError("witness slope does not match the violated inequality")
    if not (value < small_field(n).zero):
        raise VerificationError("witness slope failed to be negative")
    return SemistableReport(False, g, config, [], ScanResult(eta, value), verdict.violated)
