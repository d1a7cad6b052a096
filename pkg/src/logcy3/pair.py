"""Log Calabi-Yau threefold pairs given as blowup programs over a toric model.

A pair is a smooth complete toric threefold together with an ordered list
of interior blowups: points on 1-strata of the boundary, or smooth rational
curves inside a boundary component meeting the 1-strata transversely.
Building a pair replays the program and caches everything downstream code
needs: the threefold Picard basis (toric classes plus one exceptional class
per step), the cubic intersection tensor, the boundary components as
blown-up toric surfaces, and the restriction map to the boundary lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from logcy3.boundary import (
    ExceptionalClass,
    LooijengaComponent,
    Marking,
    adjunction_check,
    component_marked_period,
)
from logcy3.exactnum import GaussianRational, IntMatrix, MINUS_ONE, solve_integer
from logcy3.toric import (
    DualComplex,
    Fan3,
    FanError,
    ToricPicBasis,
    TripleIntersection,
    edge_reference_character,
    star_surface,
    validate_fan,
)


class PairError(ValueError):
    """Raised when a blowup program is structurally invalid."""


@dataclass(frozen=True)
class PicVector:
    """Integer coordinates of a divisor class in a tagged basis."""

    coords: tuple
    basis: str

    def __init__(self, coords, basis):
        object.__setattr__(self, "coords", tuple(int(x) for x in coords))
        object.__setattr__(self, "basis", str(basis))

    def __add__(self, other):
        if self.basis != other.basis:
            raise PairError("basis mismatch")
        return PicVector(
            tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)),
            self.basis,
        )

    def __neg__(self):
        return PicVector(tuple(-a for a in self.coords), self.basis)

    def __sub__(self, other):
        return self + (-other)


@dataclass(frozen=True)
class PointBlowup:
    """Blowup of an interior point of a 1-stratum.

    ``edge`` is the vertex pair of the stratum; ``coordinate`` is the point
    in the reference chart of the stratum's directed edge.
    """

    edge: tuple
    coordinate: GaussianRational


@dataclass(frozen=True)
class CurveBlowup:
    """Blowup of a smooth rational curve inside a boundary component.

    ``curve_class`` is given in the basis the component has at the time of
    this step; ``points`` lists, per adjacent vertex, the reference
    coordinates where the curve meets the shared 1-stratum.
    """

    component: int
    curve_class: tuple
    points: tuple  # of (neighbor, (coordinates...))

    def points_on(self, w: int):
        for neighbor, coords in self.points:
            if neighbor == w:
                return tuple(coords)
        return ()


class LogCY3Pair:
    """A validated pair with all derived caches.

    Construct with :meth:`build`; instances are immutable in practice (no
    method mutates state after construction).
    """

    def __init__(self):
        raise TypeError("use LogCY3Pair.build")

    @classmethod
    def build(cls, fan: Fan3, program=(), edge_orientations=None) -> "LogCY3Pair":
        self = object.__new__(cls)
        diag = validate_fan(fan)
        if diag is not None:
            raise PairError(f"invalid fan: {diag}")
        self.fan = fan
        self.program = tuple(program)
        self.complex = DualComplex.from_fan(fan, edge_orientations)
        self.toric_basis = ToricPicBasis.of(fan)
        self.warnings = []
        self._build_toric_layer()
        for k, step in enumerate(self.program):
            if isinstance(step, PointBlowup):
                self._apply_point(k, step)
            elif isinstance(step, CurveBlowup):
                self._apply_curve(k, step)
            else:
                raise PairError(f"unknown step kind at index {k}")
        self.warnings = tuple(self.warnings)
        return self

    # -- construction internals ---------------------------------------------

    def _build_toric_layer(self):
        fan = self.fan
        self.components = {}
        for v in range(fan.n_rays):
            base = star_surface(fan, v)
            heads = tuple(
                self.complex.directed_edge(v, w)[1] == v for w in base.labels
            )
            self.components[v] = LooijengaComponent(base, (), heads)
        table = TripleIntersection(fan)
        toric_rank = self.toric_basis.rank
        ray_vectors = [
            self.toric_basis.to_ray_vector(self._unit(toric_rank, i))
            for i in range(toric_rank)
        ]
        self._tensor = {}
        for i in range(toric_rank):
            for j in range(i, toric_rank):
                for k in range(j, toric_rank):
                    val = table.vector_triple(
                        ray_vectors[i], ray_vectors[j], ray_vectors[k]
                    )
                    if val:
                        self._tensor[(i, j, k)] = val
        # Restriction of each toric basis class, solved from degree equations
        # (the degree map of a complete toric surface is injective).
        self._restriction = []
        for i in range(toric_rank):
            images = {}
            for v in range(fan.n_rays):
                images[v] = self._solve_toric_restriction(table, ray_vectors[i], v)
            self._restriction.append(images)
        k_coords = tuple(-x for x in self.toric_basis.anticanonical())
        self.canonical = k_coords

    def _solve_toric_restriction(self, table, ray_vector, v: int):
        comp = self.components[v]
        base = comp.base
        degrees = []
        for w in comp.neighbors:
            edge_ray = self._ray_indicator(v)
            wall_ray = self._ray_indicator(w)
            degrees.append(table.vector_triple(ray_vector, edge_ray, wall_ray))
        matrix = IntMatrix(
            [
                [base.pairing(b, i) for b in base.basis_indices]
                for i in range(base.n_rays)
            ]
        )
        sol = solve_integer(matrix, degrees)
        if sol is None:
            raise PairError(
                f"toric restriction to component {v} is not integral"
            )  # pragma: no cover
        return tuple(sol)

    def _ray_indicator(self, v: int):
        vec = [0] * self.fan.n_rays
        vec[v] = 1
        return vec

    @staticmethod
    def _unit(n: int, i: int):
        vec = [0] * n
        vec[i] = 1
        return tuple(vec)

    def _used_coordinates(self, v: int, w: int):
        """Reference coordinates already occupied on the edge between v, w."""
        used = set()
        for exc in self.components[v].excs:
            if exc.neighbor == w:
                used.add(exc.coordinate)
        for exc in self.components[w].excs:
            if exc.neighbor == v:
                used.add(exc.coordinate)
        return used

    def _check_new_coordinate(self, k, v, w, q, seen_in_step):
        if not isinstance(q, GaussianRational):
            raise PairError(f"step {k}: coordinate must be a Gaussian rational")
        if q.is_zero():
            raise PairError(f"step {k}: blowup point on a 0-stratum")
        if q in self._used_coordinates(v, w) or q in seen_in_step:
            raise PairError(
                f"step {k}: coordinate {q} already used on edge "
                f"{tuple(sorted((v, w)))} (infinitely-near centers rejected)"
            )
        if q == MINUS_ONE:
            self.warnings.append(
                f"step {k}: blowup point at the marker of edge "
                f"{tuple(sorted((v, w)))}"
            )

    def _pad_component(self, v: int):
        """After component v gained an exceptional, pad stored restrictions."""
        for images in self._restriction:
            images[v] = images[v] + (0,)

    def _apply_point(self, k: int, step: PointBlowup):
        v, w = step.edge
        if frozenset((v, w)) not in {frozenset(e) for e in self.complex.edges}:
            raise PairError(f"step {k}: {tuple(step.edge)} is not an edge")
        self._check_new_coordinate(k, v, w, step.coordinate, set())
        e_index = self.toric_basis.rank + k
        self._tensor[(e_index, e_index, e_index)] = 1
        self.canonical = self.canonical + (2,)
        for u in (v, w):
            other = w if u == v else v
            self.components[u] = self.components[u].with_exceptional(
                ExceptionalClass(other, step.coordinate, k)
            )
            self._pad_component(u)
        images = {u: (0,) * self.components[u].rank for u in self.components}
        for u in (v, w):
            comp = self.components[u]
            images[u] = comp.exceptional_vector(len(comp.excs) - 1)
        self._restriction.append(images)

    def _apply_curve(self, k: int, step: CurveBlowup):
        v = step.component
        if v not in self.components:
            raise PairError(f"step {k}: no component {v}")
        comp = self.components[v]
        curve = tuple(step.curve_class)
        if len(curve) != comp.rank:
            raise PairError(
                f"step {k}: curve class length {len(curve)} does not match "
                f"component rank {comp.rank}"
            )
        diag = adjunction_check(comp, curve)
        if diag is not None:
            raise PairError(f"step {k}: {diag}")
        declared = {w for w, _ in step.points}
        if not declared <= set(comp.neighbors):
            raise PairError(f"step {k}: points on a non-adjacent vertex")
        for w in comp.neighbors:
            coords = step.points_on(w)
            need = comp.degree_on_edge(curve, w)
            if len(coords) != need:
                raise PairError(
                    f"step {k}: {len(coords)} intersection points on edge "
                    f"toward {w}, class degree is {need}"
                )
            seen = set()
            for q in coords:
                self._check_new_coordinate(k, v, w, q, seen)
                seen.add(q)
        # Intersection numbers against the current basis, via restriction to v.
        e_index = self.toric_basis.rank + k
        k_dot_c = self._component_pairing(v, self.canonical, curve)
        for a in range(e_index):
            a_dot_c = comp.intersection(self._restriction[a][v], curve)
            if a_dot_c:
                self._tensor[(a, e_index, e_index)] = -a_dot_c
        self._tensor[(e_index, e_index, e_index)] = k_dot_c + 2
        self.canonical = self.canonical + (1,)
        # Neighbors gain one exceptional class per intersection point.
        new_excs = {}
        for w in comp.neighbors:
            coords = step.points_on(w)
            if not coords:
                continue
            start = len(self.components[w].excs)
            for q in coords:
                self.components[w] = self.components[w].with_exceptional(
                    ExceptionalClass(v, q, k)
                )
                self._pad_component(w)
            new_excs[w] = range(start, start + len(coords))
        images = {u: (0,) * self.components[u].rank for u in self.components}
        images[v] = curve
        for w, indices in new_excs.items():
            vec = [0] * self.components[w].rank
            for i in indices:
                vec[self.components[w].base.rank + i] = 1
            images[w] = tuple(vec)
        self._restriction.append(images)
        # The boundary data of a curve blowup must be compatible with the
        # restricted class: the period of E's restriction (a global class,
        # hence trivial on the boundary lattice) must be exactly 1.
        scalar = self._marker_period_of(images)
        if not scalar.is_one():
            raise PairError(
                f"step {k}: curve boundary data inconsistent with class "
                f"restriction (period obstruction {scalar})"
            )

    def _component_pairing(self, v: int, y_class, comp_class) -> int:
        restricted = self.restrict_raw(y_class)[v]
        return self.components[v].intersection(restricted, comp_class)

    def _marker_period_of(self, images) -> GaussianRational:
        marking = Marking.markers(self.edge_keys())
        value = None
        for v, comp in self.components.items():
            factor = component_marked_period(comp, marking, images[v])
            value = factor if value is None else value * factor
        return value

    # -- public queries ------------------------------------------------------

    @property
    def pic_rank(self) -> int:
        return self.toric_basis.rank + len(self.program)

    def exceptional_index(self, step: int) -> int:
        return self.toric_basis.rank + step

    def exceptional_class(self, step: int) -> PicVector:
        return PicVector(self._unit(self.pic_rank, self.exceptional_index(step)), "Y")

    def canonical_class(self) -> PicVector:
        return PicVector(self.canonical, "Y")

    def edge_keys(self):
        return [frozenset(e) for e in self.complex.edges]

    def boundary_components(self):
        return [self.components[v] for v in sorted(self.components)]

    def component_offsets(self):
        """Start index of each component's block in the boundary lattice."""
        offsets = {}
        total = 0
        for v in sorted(self.components):
            offsets[v] = total
            total += self.components[v].rank
        return offsets, total

    def cubic_form(self, a, b, c) -> int:
        """The triple intersection product of three threefold classes."""
        va, vb, vc = (self._as_y_coords(x) for x in (a, b, c))
        total = 0
        for i, ai in enumerate(va):
            if not ai:
                continue
            for j, bj in enumerate(vb):
                if not bj:
                    continue
                for k, ck in enumerate(vc):
                    if ck:
                        key = tuple(sorted((i, j, k)))
                        total += ai * bj * ck * self._tensor.get(key, 0)
        return total

    def _as_y_coords(self, x):
        if isinstance(x, PicVector):
            if x.basis != "Y":
                raise PairError(f"expected a threefold class, got basis {x.basis!r}")
            coords = x.coords
        else:
            coords = tuple(x)
        if len(coords) != len(self._restriction):
            raise PairError("class length does not match the Picard rank")
        return coords

    def restrict_raw(self, y_class):
        """Per-component coordinate tuples of the boundary restriction."""
        coords = self._as_y_coords(y_class)
        out = {}
        for v, comp in self.components.items():
            vec = [0] * comp.rank
            for a, c in enumerate(coords):
                if c:
                    for t, x in enumerate(self._restriction[a][v]):
                        vec[t] += c * x
            out[v] = tuple(vec)
        return out

    def restrict(self, y_class):
        """Boundary restriction as one flat vector in the boundary lattice."""
        per_component = self.restrict_raw(y_class)
        flat = []
        for v in sorted(self.components):
            flat.extend(per_component[v])
        return tuple(flat)

    def restriction_matrix(self) -> IntMatrix:
        """Matrix of the restriction map, boundary lattice by threefold basis."""
        cols = [
            self.restrict(self._unit(self.pic_rank, a)) for a in range(self.pic_rank)
        ]
        return IntMatrix(list(zip(*cols)))

    def split_boundary_vector(self, flat):
        offsets, total = self.component_offsets()
        if len(flat) != total:
            raise PairError("boundary vector length mismatch")
        return {
            v: tuple(flat[offsets[v]: offsets[v] + self.components[v].rank])
            for v in sorted(self.components)
        }

    def k_image(self):
        """Basis of the image of restriction, and whether it is saturated."""
        from logcy3.exactnum import image_saturated, snf

        matrix = self.restriction_matrix()
        dec = snf(matrix)
        r = dec.rank
        # Columns of U^-1 paired with the diagonal give an image basis; use
        # the generator images directly and reduce: image basis = first r
        # columns of U^-1 scaled by d_i.  Equivalent and simpler: the image
        # is spanned by matrix * (columns of V)[:r].
        basis = []
        for j in range(r):
            vec = matrix.apply(dec.V.column(j))
            basis.append(vec)
        return basis, image_saturated(matrix)

    def truncated(self, steps: int) -> "LogCY3Pair":
        """The pair given by the first ``steps`` program entries."""
        return LogCY3Pair.build(
            self.fan, self.program[:steps], [tuple(e) for e in self.complex.edges]
        )

    # -- torus action --------------------------------------------------------

    def edge_scale(self, torus_element, v: int, w: int) -> GaussianRational:
        """Value of a torus element on the reference chart of an edge.

        ``torus_element`` is a triple of nonzero Gaussian rationals, the
        images of the three character basis vectors.
        """
        m = edge_reference_character(self.fan, self.complex, (v, w))
        value = None
        for t, e in zip(torus_element, m, strict=True):
            factor = t ** e
            value = factor if value is None else value * factor
        return value

    def torus_translate(self, torus_element) -> "LogCY3Pair":
        """The image of the pair under a torus translation of the boundary."""
        for t in torus_element:
            if t.is_zero():
                raise PairError("torus element coordinates must be nonzero")
        new_program = []
        for step in self.program:
            if isinstance(step, PointBlowup):
                v, w = step.edge
                scale = self.edge_scale(torus_element, v, w)
                new_program.append(
                    PointBlowup(step.edge, scale * step.coordinate)
                )
            else:
                new_points = []
                for w, coords in step.points:
                    scale = self.edge_scale(torus_element, step.component, w)
                    new_points.append((w, tuple(scale * q for q in coords)))
                new_program.append(
                    CurveBlowup(step.component, step.curve_class, tuple(new_points))
                )
        return LogCY3Pair.build(
            self.fan, new_program, [tuple(e) for e in self.complex.edges]
        )


def validate_pair(fan: Fan3, program=(), edge_orientations=None):
    """Build-check a pair; return ``None`` if ok, else the first diagnostic."""
    try:
        LogCY3Pair.build(fan, program, edge_orientations)
    except (PairError, FanError) as exc:
        return str(exc)
    return None
