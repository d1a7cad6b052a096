"""Smooth complete fans in rank 3 and their divisor-level combinatorics.

The fan is the source of every toric pair in this package: it carries the
Picard presentation, the cubic intersection tensor (computed by wall-relation
reduction), the star surfaces of boundary components, the dual complex with
its orientation data, and the coordinate charts on 1-strata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from logcy3.exactnum import (
    GaussianRational,
    IntMatrix,
    snf,
    solve_integer,
)


class FanError(ValueError):
    """Raised when an operation receives structurally invalid fan data."""


def _det3(a, b, c) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _primitive(vec) -> bool:
    g = gcd(gcd(abs(vec[0]), abs(vec[1])), abs(vec[2]))
    return g == 1


def _inverse_unimodular(cols):
    """Inverse of a 3x3 integer matrix with det +-1, given by columns."""
    a, b, c = cols
    d = _det3(a, b, c)
    if abs(d) != 1:
        raise FanError("matrix is not unimodular")
    # Adjugate / det, rows of the inverse.
    m = [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]]
    cof = [
        [
            (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
             - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
            for i in range(3)
        ]
        for j in range(3)
    ]
    return [[x * d for x in row] for row in cof]


# ---------------------------------------------------------------------------
# Fan3 and its dual complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fan3:
    """A smooth complete fan in a rank-3 lattice.

    ``orientation`` is a reference datum ``(triangle, sign)``: the ordered
    ray-index triple is declared positively (+1) or negatively (-1) oriented
    on the dual complex; all other triangle orientations are derived from it.
    """

    rays: tuple
    max_cones: tuple
    orientation: tuple = None

    def __init__(self, rays, max_cones, orientation=None):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in rays))
        object.__setattr__(
            self, "max_cones", tuple(tuple(int(i) for i in c) for c in max_cones)
        )
        if orientation is None and self.max_cones:
            orientation = (self.max_cones[0], 1)
        object.__setattr__(
            self, "orientation", (tuple(orientation[0]), int(orientation[1]))
        )

    # -- basic queries -------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_set(self):
        return {frozenset(c) for c in self.max_cones}

    def walls(self):
        """Map from wall (frozen ray-index pair) to the two flanking apex rays."""
        flanks: dict = {}
        for cone in self.max_cones:
            for k in range(3):
                wall = frozenset((cone[k], cone[(k + 1) % 3]))
                apex = cone[(k + 2) % 3]
                flanks.setdefault(wall, []).append(apex)
        return flanks

    def neighbors(self, v: int):
        out = set()
        for cone in self.max_cones:
            if v in cone:
                out.update(set(cone) - {v})
        return out

    # -- orientation ---------------------------------------------------------

    def global_sign(self) -> int:
        """Sign making det-ordering of the reference triangle match its datum."""
        tri, sign = self.orientation
        d = _det3(*(self.rays[i] for i in tri))
        if d == 0:
            raise FanError("degenerate orientation reference triangle")
        if frozenset(tri) not in self.cone_set():
            raise FanError("orientation reference is not a max cone")
        return sign * (1 if d > 0 else -1)

    def oriented_triangle(self, cone):
        """The ordering of a max cone that is positively oriented."""
        cone = tuple(cone)
        d = _det3(*(self.rays[i] for i in cone))
        if d * self.global_sign() > 0:
            return cone
        return (cone[0], cone[2], cone[1])

    def dual_complex(self, edge_orientations=None) -> "DualComplex":
        return DualComplex.from_fan(self, edge_orientations)


def validate_fan(fan: Fan3):
    """Check all Fan3 invariants; return ``None`` if ok, else a diagnostic."""
    n = fan.n_rays
    seen = set()
    for i, ray in enumerate(fan.rays):
        if ray == (0, 0, 0) or not _primitive(ray):
            return f"non-primitive ray {i}: {ray}"
        if ray in seen:
            return f"duplicate ray {i}: {ray}"
        seen.add(ray)
    if not fan.max_cones:
        return "fan has no max cones"
    used = set()
    for cone in fan.max_cones:
        if len(set(cone)) != 3 or any(i < 0 or i >= n for i in cone):
            return f"bad cone {cone}"
        if abs(_det3(*(fan.rays[i] for i in cone))) != 1:
            return f"non-smooth cone {cone}"
        used.update(cone)
    if used != set(range(n)):
        return "unused ray"
    if len(fan.cone_set()) != len(fan.max_cones):
        return "duplicate max cone"
    flanks = fan.walls()
    for wall, apexes in flanks.items():
        if len(apexes) != 2:
            return f"wall with {'one' if len(apexes) == 1 else len(apexes)} incident cone(s): {sorted(wall)}"
    # Dual complex must triangulate the 2-sphere.
    euler = n - len(flanks) + len(fan.max_cones)
    if euler != 2:
        return f"dual complex has Euler characteristic {euler}, expected 2"
    for v in range(n):
        if _link_cycle(fan, v) is None:
            return f"link of vertex {v} is not a cycle"
    # Orientation datum must induce a coherent orientation: each wall gets
    # opposite directions from its two oriented triangles.
    directed = set()
    for cone in fan.max_cones:
        a, b, c = fan.oriented_triangle(cone)
        for e in ((a, b), (b, c), (c, a)):
            if e in directed:
                return f"incoherent orientation at edge {e}"
            directed.add(e)
    for e in directed:
        if (e[1], e[0]) not in directed:
            return f"incoherent orientation at edge {e}"
    return None


def _link_cycle(fan: Fan3, v: int):
    """The link of v as a cyclically ordered vertex list, or None."""
    succ = {}
    count = 0
    for cone in fan.max_cones:
        if v not in cone:
            continue
        count += 1
        tri = fan.oriented_triangle(cone)
        i = tri.index(v)
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        if a in succ:
            return None
        succ[a] = b
    if not succ or len(succ) != count:
        return None
    start = next(iter(succ))
    cycle = [start]
    cur = succ[start]
    while cur != start:
        if cur not in succ or len(cycle) > len(succ):
            return None
        cycle.append(cur)
        cur = succ[cur]
    if len(cycle) != len(succ):
        return None
    return cycle


@dataclass(frozen=True)
class DualComplex:
    """The dual complex of the boundary: a coherently oriented S^2 triangulation.

    Edges carry a chosen direction; for a directed edge (v, w) the two
    incident triangles split into the one traversing v -> w positively
    (``positive_triangle``) and the one traversing it negatively.
    """

    vertices: tuple
    edges: tuple  # directed pairs (v, w)
    triangles: tuple  # positively oriented ordered triples

    @staticmethod
    def from_fan(fan: Fan3, edge_orientations=None) -> "DualComplex":
        walls = sorted(tuple(sorted(w)) for w in fan.walls())
        if edge_orientations is not None:
            chosen = {frozenset(e): tuple(e) for e in edge_orientations}
            if set(chosen) != {frozenset(w) for w in walls}:
                raise FanError("edge orientation list does not match the walls")
            edges = tuple(chosen[frozenset(w)] for w in walls)
        else:
            edges = tuple(walls)
        triangles = tuple(fan.oriented_triangle(c) for c in fan.max_cones)
        return DualComplex(tuple(range(fan.n_rays)), edges, triangles)

    def edge_index(self, v: int, w: int) -> int:
        for i, e in enumerate(self.edges):
            if frozenset(e) == frozenset((v, w)):
                return i
        raise FanError(f"no edge between {v} and {w}")

    def directed_edge(self, v: int, w: int):
        return self.edges[self.edge_index(v, w)]

    def positive_triangle(self, v: int, w: int):
        """The triangle in which the directed edge (v, w) occurs positively."""
        for tri in self.triangles:
            for k in range(3):
                if tri[k] == v and tri[(k + 1) % 3] == w:
                    return tri
        raise FanError(f"directed edge ({v}, {w}) not found")

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)


# ---------------------------------------------------------------------------
# Picard presentation of the threefold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToricPicBasis:
    """Basis of Pic of the toric threefold: ray divisors outside a seed cone.

    The three seed-cone rays form a lattice basis, so their divisor classes
    are eliminated by the character relations; every ray divisor reduces to
    an integer vector on the remaining rays.
    """

    fan: Fan3
    seed: tuple
    basis_rays: tuple
    _dual: tuple = field(repr=False)

    @staticmethod
    def of(fan: Fan3) -> "ToricPicBasis":
        seed = fan.max_cones[0]
        basis_rays = tuple(v for v in range(fan.n_rays) if v not in seed)
        dual = _inverse_unimodular([fan.rays[i] for i in seed])
        return ToricPicBasis(fan, seed, basis_rays, tuple(tuple(r) for r in dual))

    @property
    def rank(self) -> int:
        return len(self.basis_rays)

    def reduce_ray_vector(self, coeffs):
        """Coordinates of ``sum coeffs[v] * D_v`` in the chosen basis."""
        out = {v: coeffs[v] for v in self.basis_rays}
        for k, s in enumerate(self.seed):
            c = coeffs[s]
            if c == 0:
                continue
            m = self._dual[k]  # dual vector with <m, n_s> = 1, 0 on other seeds
            for v in self.basis_rays:
                pairing = sum(m[t] * self.fan.rays[v][t] for t in range(3))
                out[v] -= c * pairing
        return tuple(out[v] for v in self.basis_rays)

    def ray_class(self, v: int):
        coeffs = [0] * self.fan.n_rays
        coeffs[v] = 1
        return self.reduce_ray_vector(coeffs)

    def to_ray_vector(self, vec):
        """A ray-divisor representative of a basis vector."""
        coeffs = [0] * self.fan.n_rays
        for x, v in zip(vec, self.basis_rays, strict=True):
            coeffs[v] = x
        return tuple(coeffs)

    def anticanonical(self):
        return self.reduce_ray_vector([1] * self.fan.n_rays)


# ---------------------------------------------------------------------------
# Triple intersections by wall-relation reduction
# ---------------------------------------------------------------------------


class TripleIntersection:
    """Cubic intersection numbers of ray divisors on a smooth complete fan."""

    def __init__(self, fan: Fan3):
        if (diag := validate_fan(fan)) is not None:
            raise FanError(diag)
        self.fan = fan
        self._cones = fan.cone_set()
        self._walls = fan.walls()
        self._cache: dict = {}

    def ray_triple(self, i: int, j: int, k: int) -> int:
        key = tuple(sorted((i, j, k)))
        if key in self._cache:
            return self._cache[key]
        a, b, c = key
        if a != b and b != c:
            val = 1 if frozenset(key) in self._cones else 0
        elif a == b == c:
            val = self._triple_same(a)
        else:
            rep = a if a == b else b  # the repeated index
            other = c if a == b else a
            val = self._wall_coefficient(rep, other)
        self._cache[key] = val
        return val

    def _wall_coefficient(self, i: int, k: int) -> int:
        """D_i . D_i . D_k via the wall relation n_p + n_q + a n_i + b n_k = 0."""
        wall = frozenset((i, k))
        if wall not in self._walls:
            return 0
        p, q = self._walls[wall]
        rays = self.fan.rays
        inv = _inverse_unimodular([rays[i], rays[k], rays[p]])
        coeffs = [sum(inv[r][t] * rays[q][t] for t in range(3)) for r in range(3)]
        if coeffs[2] != -1:
            raise FanError(f"broken wall relation at {sorted(wall)}")
        return -coeffs[0]

    def _triple_same(self, i: int) -> int:
        # Pick m in M with <m, n_i> = 1 and trade one copy of D_i for the
        # linearly equivalent combination -sum <m, n_v> D_v over v != i.
        m = solve_integer(IntMatrix([self.fan.rays[i]]), (1,))
        total = 0
        for v in range(self.fan.n_rays):
            if v == i:
                continue
            pairing = sum(m[t] * self.fan.rays[v][t] for t in range(3))
            if pairing:
                total -= pairing * self.ray_triple(i, i, v)
        return total

    def vector_triple(self, a, b, c) -> int:
        """Trilinear extension to ray-divisor coefficient vectors."""
        total = 0
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, ck in enumerate(c):
                    if ck:
                        total += ai * bj * ck * self.ray_triple(i, j, k)
        return total


def triple_intersection(fan: Fan3, a, b, c) -> int:
    """Triple product of ray divisors, given as indices or coefficient vectors."""
    table = TripleIntersection(fan)

    def as_vector(x):
        if isinstance(x, int):
            coeffs = [0] * fan.n_rays
            coeffs[x] = 1
            return coeffs
        return list(x)

    return table.vector_triple(as_vector(a), as_vector(b), as_vector(c))


# ---------------------------------------------------------------------------
# Star surfaces (boundary components)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fan2:
    """A smooth complete fan in the rank-2 quotient lattice of a boundary ray.

    ``rays`` are listed in the cyclic order induced by the global orientation
    of the dual complex; ``labels[i]`` is the neighbouring vertex whose image
    spans ray ``i``, so ray ``i`` corresponds to the 1-stratum between the
    component and that neighbour.
    """

    vertex: int
    rays: tuple
    labels: tuple

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_of_neighbor(self, w: int) -> int:
        return self.labels.index(w)

    def wall_coefficient(self, i: int) -> int:
        """c with u_{i-1} + u_{i+1} = c * u_i; the self-intersection is -c."""
        k = self.n_rays
        u_prev = self.rays[(i - 1) % k]
        u_next = self.rays[(i + 1) % k]
        u = self.rays[i]
        s = (u_prev[0] + u_next[0], u_prev[1] + u_next[1])
        for c in _candidate_multiples(s, u):
            if (c * u[0], c * u[1]) == s:
                return c
        raise FanError(f"rays around index {i} are not a smooth 2d fan")

    def self_intersection(self, i: int) -> int:
        return -self.wall_coefficient(i)

    def pairing(self, i: int, j: int) -> int:
        """Intersection number of the ray divisors with indices i and j."""
        k = self.n_rays
        if i == j:
            return self.self_intersection(i)
        if (i - j) % k in (1, k - 1):
            return 1
        return 0

    # -- Picard basis --------------------------------------------------------

    @property
    def basis_indices(self):
        return tuple(range(2, self.n_rays))

    @property
    def rank(self) -> int:
        return self.n_rays - 2

    def reduce_ray_vector(self, coeffs):
        """Basis coordinates of ``sum coeffs[i] * D_i`` (seed rays 0, 1)."""
        u0, u1 = self.rays[0], self.rays[1]
        det = u0[0] * u1[1] - u0[1] * u1[0]
        if abs(det) != 1:
            raise FanError("seed rays do not form a lattice basis")
        # Dual basis vectors m0, m1 with <m_a, u_b> = delta.
        m0 = (u1[1] * det, -u1[0] * det)
        m1 = (-u0[1] * det, u0[0] * det)
        out = {i: coeffs[i] for i in self.basis_indices}
        for s, m in ((0, m0), (1, m1)):
            c = coeffs[s]
            if c == 0:
                continue
            for i in self.basis_indices:
                out[i] -= c * (m[0] * self.rays[i][0] + m[1] * self.rays[i][1])
        return tuple(out[i] for i in self.basis_indices)

    def ray_class(self, i: int):
        coeffs = [0] * self.n_rays
        coeffs[i] = 1
        return self.reduce_ray_vector(coeffs)

    def degree_on_ray(self, vec, i: int) -> int:
        """Intersection of a basis-coordinate class with the ray divisor D_i."""
        return sum(
            x * self.pairing(b, i) for x, b in zip(vec, self.basis_indices, strict=True)
        )

    def intersection(self, a, b) -> int:
        return sum(
            x * self.degree_on_ray(b, i)
            for x, i in zip(a, self.basis_indices, strict=True)
        )

    def anticanonical(self):
        return self.reduce_ray_vector([1] * self.n_rays)


def _candidate_multiples(s, u):
    if u[0] != 0 and s[0] % u[0] == 0:
        yield s[0] // u[0]
    if u[1] != 0 and s[1] % u[1] == 0:
        yield s[1] // u[1]
    if s == (0, 0):
        yield 0


def star_surface(fan: Fan3, v: int) -> Fan2:
    """The 2d fan of the boundary component D_v, with its edge correspondence.

    The quotient projection kills the ray of v; the cyclic order of the image
    rays follows the link of v in the oriented dual complex.
    """
    if (diag := validate_fan(fan)) is not None:
        raise FanError(diag)
    cycle = _link_cycle(fan, v)
    dec = snf(IntMatrix([[x] for x in fan.rays[v]]))
    if dec.D.data[0][0] != 1:
        raise FanError(f"ray {v} is not primitive")
    proj = dec.U.data[1:]  # two rows spanning the quotient lattice
    rays = []
    for w in cycle:
        img = tuple(sum(r[t] * fan.rays[w][t] for t in range(3)) for r in proj)
        rays.append(img)
    surf = Fan2(v, tuple(rays), tuple(cycle))
    for i in range(surf.n_rays):
        u, un = surf.rays[i], surf.rays[(i + 1) % surf.n_rays]
        if abs(u[0] * un[1] - u[1] * un[0]) != 1:
            raise FanError(f"star surface of {v} is not smooth")
        surf.wall_coefficient(i)  # raises if the 2d wall relation fails
    return surf


# ---------------------------------------------------------------------------
# Star subdivisions (the toric blowup oracle)
# ---------------------------------------------------------------------------


def star_subdivide(fan: Fan3, target) -> Fan3:
    """Subdivide at a wall or max cone; the new ray is the primitive ray sum."""
    target = tuple(target)
    if len(target) not in (2, 3):
        raise FanError("target must be a wall or a max cone")
    if len(target) == 3 and frozenset(target) not in fan.cone_set():
        raise FanError(f"{target} is not a max cone")
    if len(target) == 2 and frozenset(target) not in fan.walls():
        raise FanError(f"{target} is not a wall")
    new_ray = tuple(sum(fan.rays[i][t] for i in target) for t in range(3))
    new_index = fan.n_rays
    cones = []
    for cone in fan.max_cones:
        if set(target) <= set(cone):
            for drop in target:
                replaced = tuple(new_index if i == drop else i for i in cone)
                cones.append(replaced)
        else:
            cones.append(cone)
    # Re-anchor the orientation datum if its reference cone was subdivided,
    # keeping the induced global orientation.
    orientation = fan.orientation
    if frozenset(orientation[0]) not in {frozenset(c) for c in cones}:
        g = fan.global_sign()
        rays = fan.rays + (new_ray,)
        anchor = cones[0]
        d = _det3(*(rays[i] for i in anchor))
        orientation = (anchor, g * (1 if d > 0 else -1))
    out = Fan3(fan.rays + (new_ray,), cones, orientation)
    if (diag := validate_fan(out)) is not None:
        raise FanError(f"subdivision produced an invalid fan: {diag}")
    return out


def canonical_form(fan: Fan3):
    """A hashable normal form: sorted rays with relabelled, sorted cones."""
    order = sorted(range(fan.n_rays), key=lambda i: fan.rays[i])
    relabel = {old: new for new, old in enumerate(order)}
    rays = tuple(fan.rays[i] for i in order)
    cones = tuple(sorted(tuple(sorted(relabel[i] for i in c)) for c in fan.max_cones))
    return rays, cones


def fan_isomorphism(f: Fan3, g: Fan3):
    """A unimodular map sending f onto g, found by frame search, or None."""
    if f.n_rays != g.n_rays or len(f.max_cones) != len(g.max_cones):
        return None
    seed = f.max_cones[0]
    seed_cols = [f.rays[i] for i in seed]
    inv = _inverse_unimodular(seed_cols)
    g_cones = g.cone_set()
    g_rays = set(g.rays)
    from itertools import permutations

    for cone in g.max_cones:
        for perm in permutations(cone):
            frame = [g.rays[i] for i in perm]
            # matrix M with M * f.rays[seed[k]] = frame[k]
            m = [
                [sum(frame[k][r] * inv[k][c] for k in range(3)) for c in range(3)]
                for r in range(3)
            ]

            def apply(vec):
                return tuple(sum(m[r][c] * vec[c] for c in range(3)) for r in range(3))

            images = {ray: apply(ray) for ray in f.rays}
            if set(images.values()) != g_rays:
                continue
            index_of = {ray: i for i, ray in enumerate(g.rays)}
            mapped = {
                frozenset(index_of[images[f.rays[i]]] for i in c) for c in f.cone_set()
            }
            if mapped == g_cones:
                return tuple(tuple(row) for row in m)
    return None


# ---------------------------------------------------------------------------
# Edge coordinate charts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeChart:
    """Coordinates on the interior of a 1-stratum, pinned to the directed edge.

    The reference chart is the identification induced from the head
    component: points are stored as their reference coordinates, and the
    tail component sees the inverse coordinate.  The 0-stratum of the
    triangle traversing the edge positively sits at infinity in the
    reference chart (at 0 in the tail chart); the other 0-stratum at 0.
    The distinguished marker point reads -1 in either chart.
    """

    tail: int
    head: int
    zero_triangle: tuple
    infinity_triangle: tuple

    def coordinate_for(self, side: int, reference: GaussianRational) -> GaussianRational:
        """The coordinate a point (stored in the reference chart) has on one side."""
        if side == self.head:
            return reference
        if side == self.tail:
            return reference.inverse()
        raise FanError(f"vertex {side} is not an endpoint of this edge")

    def stratum_position(self, side: int, triangle) -> str:
        """Whether a 0-stratum reads '0' or 'inf' in the chart of ``side``."""
        tri = frozenset(triangle)
        if tri == frozenset(self.infinity_triangle):
            at_infinity_in_reference = True
        elif tri == frozenset(self.zero_triangle):
            at_infinity_in_reference = False
        else:
            raise FanError("triangle does not contain this edge")
        if side == self.head:
            return "inf" if at_infinity_in_reference else "0"
        if side == self.tail:
            return "0" if at_infinity_in_reference else "inf"
        raise FanError(f"vertex {side} is not an endpoint of this edge")


def edge_reference_character(fan: Fan3, complex_: DualComplex, edge):
    """The lattice character giving the reference coordinate on a 1-stratum.

    The character annihilates the two rays of the edge and its sign is
    pinned by the chart convention: it vanishes at the 0-stratum of the
    triangle where the directed edge occurs negatively (the 0 of the
    reference chart).
    """
    from logcy3.exactnum import kernel_basis

    v, w = complex_.directed_edge(*edge)
    kernel = kernel_basis(IntMatrix([fan.rays[v], fan.rays[w]]))
    if len(kernel) != 1:
        raise FanError("edge rays do not span a rank-2 sublattice")
    m = kernel[0]
    zero_tri = complex_.positive_triangle(w, v)
    apex = next(i for i in zero_tri if i not in (v, w))
    pairing = sum(m[t] * fan.rays[apex][t] for t in range(3))
    if pairing == 0:
        raise FanError("degenerate chart character")  # pragma: no cover
    return m if pairing > 0 else tuple(-x for x in m)


def edge_coordinate_chart(fan: Fan3, edge, edge_orientations=None) -> EdgeChart:
    """The chart descriptor of the (directed) edge of the dual complex."""
    complex_ = fan.dual_complex(edge_orientations)
    v, w = complex_.directed_edge(*edge)
    positive = complex_.positive_triangle(v, w)
    negative = complex_.positive_triangle(w, v)
    return EdgeChart(tail=v, head=w, zero_triangle=negative, infinity_triangle=positive)


# ---------------------------------------------------------------------------
# Intersection data extraction (input to fan reconstruction)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToricIntersectionData:
    """The divisor-level data that determines a toric pair combinatorially.

    ``cones`` are the vertex triples with triple product 1, ``wall_curves``
    maps each adjacency pair {a, b} to the self-intersections of the wall
    curve inside the two components: ``(C^2 in D_a, C^2 in D_b)`` keyed by
    the sorted pair order.
    """

    n_vertices: int
    cones: frozenset
    wall_curves: dict

    @staticmethod
    def of_fan(fan: Fan3) -> "ToricIntersectionData":
        table = TripleIntersection(fan)
        cones = frozenset(frozenset(c) for c in fan.max_cones)
        wall_curves = {}
        for wall in fan.walls():
            a, b = sorted(wall)
            # C = D_a . D_b; its self-intersection inside D_a is C . D_b.
            wall_curves[(a, b)] = (
                table.ray_triple(b, b, a),
                table.ray_triple(a, a, b),
            )
        return ToricIntersectionData(fan.n_rays, cones, wall_curves)

    def self_intersection_in(self, component: int, other: int) -> int:
        a, b = sorted((component, other))
        pair = self.wall_curves[(a, b)]
        return pair[0] if component == a else pair[1]
