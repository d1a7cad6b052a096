"""Deciding isomorphism of pairs by reduction to a common toric model.

The pipeline matches the combinatorics of the two dual complexes, checks
that the supplied correspondence preserves the cubic form, peels the blowup
programs step by step (classifying each contraction against the divisorial
contraction table), compares the base toric models up to unimodular
equivalence, and finally compares the exact period characters on the
matching lattice.  Every verdict carries a certificate that can be
re-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from logcy3.boundary import Marking
from logcy3.exactnum import (
    IntMatrix,
    rank as matrix_rank,
    solve_over_gaussian_torus,
)
from logcy3.pair import CurveBlowup, LogCY3Pair, PairError, PicVector, PointBlowup
from logcy3.periods import (
    edge_matching_map,
    evaluate_boundary_character,
    matching_lattice,
)
from logcy3.toric import Fan3, FanError, ToricIntersectionData, validate_fan, _det3


class CorrespondenceError(ValueError):
    """Raised for a malformed correspondence between two pairs."""


class ReconstructionError(ValueError):
    """Raised when intersection data cannot come from a smooth complete fan."""


# ---------------------------------------------------------------------------
# Contraction classification
# ---------------------------------------------------------------------------

_CONTRACTION_TABLE = {
    # (E.l, K.l, E.K^2) -> divisorial contraction type
    (-1, -2, 4): 2,
    (-2, -1, 1): 5,
}


def recognize_contraction_type(triple):
    """Divisorial contraction type of an intersection triple, or None.

    ``(-1, -1, c)`` is the blowup of a smooth curve (type 1); for ``c = 2``
    the same triple also fits the small-center types 3 and 4, which blowup
    programs never produce, so type 1 is reported.
    """
    triple = tuple(triple)
    if triple in _CONTRACTION_TABLE:
        return _CONTRACTION_TABLE[triple]
    if triple[:2] == (-1, -1):
        return 1
    return None


def classify_contraction(pair: LogCY3Pair, step: int):
    """Type and intersection triple of the contraction undoing one step.

    The triple is ``(E.l, K.l, E.K^2)`` for the extremal curve class l of
    the contraction, computed on the pair truncated after the step.
    """
    if not 0 <= step < len(pair.program):
        raise PairError(f"no step {step}")
    truncated = pair.truncated(step + 1)
    e_index = truncated.exceptional_index(step)
    e_unit = tuple(
        1 if i == e_index else 0 for i in range(truncated.pic_rank)
    )
    # The extremal curve lies in E; pullbacks meet it trivially and E meets
    # it in -1, so intersection against l reads off the E-coefficient.
    e_dot_l = -1
    k_dot_l = -truncated.canonical[e_index]
    e_k2 = truncated.cubic_form(e_unit, truncated.canonical, truncated.canonical)
    triple = (e_dot_l, k_dot_l, e_k2)
    mori_type = recognize_contraction_type(triple)
    if mori_type is None:
        raise PairError(f"step {step}: triple {triple} matches no contraction type")
    return mori_type, triple


# ---------------------------------------------------------------------------
# Fan reconstruction from intersection data
# ---------------------------------------------------------------------------


def reconstruct_fan(data: ToricIntersectionData, seed=None) -> Fan3:
    """Rebuild a fan, up to unimodular equivalence, from intersection data.

    One cone is seeded with the standard basis; all other rays are placed
    by propagating the wall relation
    ``v_apex + c1 * v_x + c2 * v_y + v_other = 0`` across walls, where the
    coefficients are the self-intersections of the wall curve inside the
    two adjacent components.  Inconsistent data raises
    :class:`ReconstructionError`.
    """
    cones = [tuple(sorted(c)) for c in data.cones]
    wall_cones: dict = {}
    for cone in cones:
        for t in range(3):
            wall = frozenset((cone[t], cone[(t + 1) % 3]))
            wall_cones.setdefault(wall, []).append(cone)
    for wall, incident in wall_cones.items():
        if len(incident) != 2:
            raise ReconstructionError(
                f"wall {sorted(wall)} lies in {len(incident)} cones, expected 2"
            )
    if seed is None:
        seed = min(cones)
    seed = tuple(sorted(seed))
    if seed not in cones:
        raise ReconstructionError("seed is not a cone of the data")
    rays = {seed[0]: (1, 0, 0), seed[1]: (0, 1, 0), seed[2]: (0, 0, 1)}
    placed = {frozenset(seed)}
    queue = [seed]
    while queue:
        cone = queue.pop()
        for t in range(3):
            x, y = cone[t], cone[(t + 1) % 3]
            apex = cone[(t + 2) % 3]
            wall = frozenset((x, y))
            other = next(
                c for c in wall_cones[wall] if frozenset(c) != frozenset(cone)
            )
            q = next(i for i in other if i not in wall)
            c1 = data.self_intersection_in(y, x)
            c2 = data.self_intersection_in(x, y)
            v = tuple(
                -rays[apex][r] - c1 * rays[x][r] - c2 * rays[y][r] for r in range(3)
            )
            if q in rays:
                if rays[q] != v:
                    raise ReconstructionError(
                        f"wall relation at {sorted(wall)} places vertex {q} "
                        f"at {v}, already placed at {rays[q]}"
                    )
            else:
                rays[q] = v
            if frozenset(other) not in placed:
                placed.add(frozenset(other))
                queue.append(other)
    if set(rays) != set(range(data.n_vertices)):
        raise ReconstructionError("intersection data is not connected")
    fan = Fan3([rays[i] for i in range(data.n_vertices)], cones)
    diag = validate_fan(fan)
    if diag is not None:
        raise ReconstructionError(f"reconstructed data is not a smooth fan: {diag}")
    if ToricIntersectionData.of_fan(fan) != data:
        raise ReconstructionError(
            "reconstructed fan does not reproduce the intersection data"
        )
    return fan


# ---------------------------------------------------------------------------
# Complexity of a decomposition
# ---------------------------------------------------------------------------


def complexity(pair: LogCY3Pair, decomposition) -> Fraction:
    """``3 + (rank of the span of the classes) - (sum of the weights)``.

    ``decomposition`` is an iterable of (weight, class) entries with
    nonnegative rational weights and threefold classes.
    """
    weights = []
    classes = []
    for weight, cls in decomposition:
        weight = Fraction(weight)
        if weight < 0:
            raise PairError("decomposition weights must be nonnegative")
        coords = cls.coords if isinstance(cls, PicVector) else tuple(cls)
        weights.append(weight)
        classes.append(coords)
    r = matrix_rank(IntMatrix(classes)) if classes else 0
    return Fraction(3) + r - sum(weights, Fraction(0))


# ---------------------------------------------------------------------------
# Correspondences and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Correspondence:
    """A proposed matching of two pairs.

    ``vertex_map`` is the bijection of dual-complex vertices,
    ``step_map[k]`` the index of the step matched with step k.  The induced
    lattice maps are derived from these; explicit overrides may be supplied.
    """

    vertex_map: tuple  # of (vertex, image vertex)
    step_map: tuple
    mu: IntMatrix = None
    mu_components: tuple = ()  # of (vertex, IntMatrix)

    @staticmethod
    def identity(pair: LogCY3Pair) -> "Correspondence":
        return Correspondence(
            tuple((v, v) for v in sorted(pair.components)),
            tuple(range(len(pair.program))),
        )

    def vertex(self, v: int) -> int:
        for a, b in self.vertex_map:
            if a == v:
                return b
        raise CorrespondenceError(f"vertex {v} not in correspondence")

    def component_override(self, v: int):
        for a, m in self.mu_components:
            if a == v:
                return m
        return None

    def inverse(self) -> "Correspondence":
        step_inv = [0] * len(self.step_map)
        for k, img in enumerate(self.step_map):
            step_inv[img] = k
        return Correspondence(
            tuple((b, a) for a, b in self.vertex_map),
            tuple(step_inv),
            None,
            (),
        )


@dataclass(frozen=True)
class Verdict:
    """Outcome of the decision procedure with a re-checkable certificate."""

    kind: str  # "isomorphic" | "distinct" | "inconclusive"
    reason: str
    certificate: dict = field(default_factory=dict)

    @property
    def is_isomorphic(self) -> bool:
        return self.kind == "isomorphic"


def _step_exc_positions(pair: LogCY3Pair, v: int):
    """Map (step, neighbor, occurrence index) -> exc index on component v."""
    positions = {}
    counters: dict = {}
    for idx, exc in enumerate(pair.components[v].excs):
        key = (exc.step, exc.neighbor)
        n = counters.get(key, 0)
        counters[key] = n + 1
        positions[(exc.step, exc.neighbor, n)] = idx
    return positions


def component_transport(
    pair: LogCY3Pair, other: LogCY3Pair, corr: Correspondence, v: int
) -> IntMatrix:
    """The induced map from Pic of component v to Pic of its image component.

    Toric basis classes map through the vertex bijection; exceptional
    classes map to the matched step's exceptional on the matched edge, in
    order of occurrence.
    """
    override = corr.component_override(v)
    if override is not None:
        return override
    comp = pair.components[v]
    image_vertex = corr.vertex(v)
    comp2 = other.components[image_vertex]
    if comp.rank != comp2.rank:
        raise CorrespondenceError(
            f"components {v} and {image_vertex} have different ranks"
        )
    cols = []
    for b in comp.base.basis_indices:
        neighbor = comp.base.labels[b]
        image_ray = comp2.base.ray_of_neighbor(corr.vertex(neighbor))
        toric = comp2.base.ray_class(image_ray)
        cols.append(tuple(toric) + (0,) * len(comp2.excs))
    positions2 = _step_exc_positions(other, image_vertex)
    counters: dict = {}
    for exc in comp.excs:
        key = (exc.step, exc.neighbor)
        n = counters.get(key, 0)
        counters[key] = n + 1
        target = (corr.step_map[exc.step], corr.vertex(exc.neighbor), n)
        if target not in positions2:
            raise CorrespondenceError(
                f"no matching exceptional for step {exc.step} on component {v}"
            )
        cols.append(comp2.exceptional_vector(positions2[target]))
    return IntMatrix(list(zip(*cols)))


def transport_boundary_vector(pair, other, corr, transports, flat):
    """Apply the per-component maps to a flat boundary-lattice vector."""
    per_component = pair.split_boundary_vector(flat)
    images = {}
    for v in sorted(pair.components):
        images[corr.vertex(v)] = transports[v].apply(per_component[v])
    out = []
    for u in sorted(other.components):
        out.extend(images[u])
    return tuple(out)


def threefold_transport(
    pair: LogCY3Pair, other: LogCY3Pair, corr: Correspondence
) -> IntMatrix:
    """The induced map on threefold Picard lattices."""
    if corr.mu is not None:
        return corr.mu
    if pair.pic_rank != other.pic_rank:
        raise CorrespondenceError("Picard ranks differ")
    cols = []
    for i, v in enumerate(pair.toric_basis.basis_rays):
        image = other.toric_basis.ray_class(corr.vertex(v))
        cols.append(tuple(image) + (0,) * len(other.program))
    for k in range(len(pair.program)):
        e_index = other.exceptional_index(corr.step_map[k])
        cols.append(tuple(1 if i == e_index else 0 for i in range(other.pic_rank)))
    return IntMatrix(list(zip(*cols)))


def _check_correspondence_shape(pair, other, corr):
    sources = [a for a, _ in corr.vertex_map]
    targets = [b for _, b in corr.vertex_map]
    if sorted(sources) != sorted(pair.components) or sorted(targets) != sorted(
        other.components
    ):
        raise CorrespondenceError("vertex map is not a bijection of components")
    if sorted(corr.step_map) != list(range(len(other.program))) or len(
        corr.step_map
    ) != len(pair.program):
        raise CorrespondenceError("step map is not a bijection of program steps")


def decide_isomorphism(
    pair: LogCY3Pair, other: LogCY3Pair, corr: Correspondence = None
) -> Verdict:
    """Run the full decision pipeline and return a verdict with certificate."""
    if corr is None:
        corr = Correspondence.identity(pair)
    _check_correspondence_shape(pair, other, corr)

    # (i) Dual complexes must match under the vertex bijection.
    cones = {frozenset(corr.vertex(i) for i in c) for c in pair.fan.cone_set()}
    if cones != other.fan.cone_set():
        return Verdict(
            "distinct",
            "dual complexes do not match under the vertex bijection",
            {"check": "dual_complex"},
        )

    # (ii) The induced threefold map must preserve the cubic form.
    mu = threefold_transport(pair, other, corr)
    r = pair.pic_rank
    units = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    images = [mu.apply(u) for u in units]
    for i in range(r):
        for j in range(i, r):
            for k in range(j, r):
                left = pair.cubic_form(units[i], units[j], units[k])
                right = other.cubic_form(images[i], images[j], images[k])
                if left != right:
                    return Verdict(
                        "distinct",
                        "cubic forms disagree under the correspondence",
                        {
                            "check": "cubic_form",
                            "triple": (i, j, k),
                            "values": (left, right),
                        },
                    )

    # (iii) Peel the programs step by step.
    transports = {
        v: component_transport(pair, other, corr, v) for v in sorted(pair.components)
    }
    for k in range(len(pair.program) - 1, -1, -1):
        k2 = corr.step_map[k]
        step, step2 = pair.program[k], other.program[k2]
        if type(step) is not type(step2):
            return Verdict(
                "distinct",
                f"steps {k} and {k2} have different kinds",
                {"check": "step_kind", "steps": (k, k2)},
            )
        type1, triple1 = classify_contraction(pair, k)
        type2, triple2 = classify_contraction(other, k2)
        if type1 != type2:
            return Verdict(
                "distinct",
                f"contraction types differ at steps {k} and {k2}",
                {"check": "contraction_type", "triples": (triple1, triple2)},
            )
        e_unit = tuple(
            1 if i == pair.exceptional_index(k) else 0 for i in range(r)
        )
        e_image = mu.apply(e_unit)
        e_unit2 = tuple(
            1 if i == other.exceptional_index(k2) else 0 for i in range(r)
        )
        if e_image != e_unit2:
            return Verdict(
                "distinct",
                f"exceptional classes of steps {k} and {k2} do not correspond",
                {"check": "exceptional_match", "steps": (k, k2)},
            )
        if isinstance(step, CurveBlowup):
            v = step.component
            v2 = corr.vertex(v)
            if step2.component != v2:
                return Verdict(
                    "distinct",
                    f"curve steps {k} and {k2} sit in non-corresponding components",
                    {"check": "curve_component", "steps": (k, k2)},
                )
            curve = tuple(step.curve_class) + (0,) * (
                pair.components[v].rank - len(step.curve_class)
            )
            curve2 = tuple(step2.curve_class) + (0,) * (
                other.components[v2].rank - len(step2.curve_class)
            )
            if transports[v].apply(curve) != curve2:
                return Verdict(
                    "distinct",
                    f"curve classes of steps {k} and {k2} do not correspond",
                    {"check": "curve_class", "steps": (k, k2)},
                )

    # (iv) Compare the base toric models through the vertex bijection.
    frame_map = _toric_model_map(pair.fan, other.fan, corr)
    if frame_map is None:
        return Verdict(
            "distinct",
            "base toric models are not unimodularly equivalent "
            "under the vertex bijection",
            {"check": "toric_model"},
        )

    # (v) Compare exact periods on the matching lattice.
    markers = Marking.markers(pair.edge_keys())
    markers2 = Marking.markers(other.edge_keys())
    ell2 = edge_matching_map(other)
    transcript = []
    for gen in matching_lattice(pair):
        image = transport_boundary_vector(pair, other, corr, transports, gen)
        if any(x != 0 for x in ell2.apply(image)):
            raise CorrespondenceError(
                "transported matching class violates the edge-matching condition"
            )
        value = evaluate_boundary_character(pair, markers, gen)
        value2 = evaluate_boundary_character(other, markers2, image)
        if value != value2:
            return Verdict(
                "distinct",
                "periods disagree on a matching class",
                {
                    "check": "period",
                    "witness": tuple(gen),
                    "witness_image": tuple(image),
                    "values": (str(value), str(value2)),
                },
            )
        transcript.append((tuple(gen), str(value)))
    return Verdict(
        "isomorphic",
        "combinatorics, cubic form, program and periods all match",
        {
            "check": "complete",
            "toric_model_map": frame_map,
            "period_transcript": tuple(transcript),
        },
    )


def _toric_model_map(f: Fan3, g: Fan3, corr: Correspondence):
    """Unimodular matrix sending each ray of f to its corresponding ray of g."""
    seed = f.max_cones[0]
    cols_f = [f.rays[i] for i in seed]
    cols_g = [g.rays[corr.vertex(i)] for i in seed]
    if abs(_det3(*cols_f)) != 1 or abs(_det3(*cols_g)) != 1:
        return None
    from logcy3.toric import _inverse_unimodular

    inv = _inverse_unimodular(cols_f)
    m = [
        [sum(cols_g[k][row] * inv[k][col] for k in range(3)) for col in range(3)]
        for row in range(3)
    ]
    for v in range(f.n_rays):
        image = tuple(
            sum(m[row][col] * f.rays[v][col] for col in range(3)) for row in range(3)
        )
        if image != g.rays[corr.vertex(v)]:
            return None
    return tuple(tuple(row) for row in m)


# ---------------------------------------------------------------------------
# Marking transport
# ---------------------------------------------------------------------------


def marking_transporter(
    pair: LogCY3Pair,
    other: LogCY3Pair,
    corr: Correspondence = None,
    marking: Marking = None,
    marking_other: Marking = None,
):
    """Solve for per-edge scalars aligning the two marked periods.

    Returns ``("solved", scalars)`` with one Q(i)* value per edge of the
    first pair, ``("complex_only", witness)`` when a solution exists over
    the full torus but requires roots missing from Q(i), or
    ``("unsolvable", relation)`` with a violated multiplicative relation
    (the expected outcome when the unmarked periods differ).
    """
    if corr is None:
        corr = Correspondence.identity(pair)
    _check_correspondence_shape(pair, other, corr)
    if marking is None:
        marking = Marking.markers(pair.edge_keys())
    if marking_other is None:
        marking_other = Marking.markers(other.edge_keys())
    transports = {
        v: component_transport(pair, other, corr, v) for v in sorted(pair.components)
    }
    exponents = edge_matching_map(pair).transpose()  # basis x edges
    _, total = pair.component_offsets()
    targets = []
    for i in range(total):
        unit = tuple(1 if j == i else 0 for j in range(total))
        image = transport_boundary_vector(pair, other, corr, transports, unit)
        value = evaluate_boundary_character(pair, marking, unit)
        value2 = evaluate_boundary_character(other, marking_other, image)
        targets.append(value2 / value)
    return solve_over_gaussian_torus(exponents, targets)
