"""Global lattice maps and period characters of the boundary surface.

The boundary lattice is the direct sum of the component Picard lattices.
This module builds the edge-matching map (whose kernel is the matching
lattice of classes agreeing in degree across every 1-stratum), the wedge
map into the second exterior power of the cocharacter lattice, and the
period characters: marked on the full boundary lattice, unmarked on the
matching lattice, and the induced character on the quotient by the image
of the threefold Picard lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from logcy3.boundary import Marking, component_marked_period
from logcy3.exactnum import (
    ExactArithmeticError,
    GaussianRational,
    IntMatrix,
    ONE,
    cokernel_structure,
    invert_unimodular,
    kernel_basis,
    power_product,
    snf,
    solve_integer,
)
from logcy3.pair import LogCY3Pair, PairError


class PeriodConsistencyError(RuntimeError):
    """Raised when an internal period invariant fails (implementation bug)."""


@dataclass(frozen=True)
class PeriodCharacter:
    """A multiplicative character on a lattice, stored on a fixed basis.

    ``basis`` holds the basis vectors (as integer tuples in the ambient
    coordinates) and ``values`` the corresponding nonzero values in Q(i).
    """

    basis: tuple
    values: tuple

    def value(self, coefficients) -> GaussianRational:
        """Evaluate on an integer combination of the basis vectors."""
        return power_product(self.values, coefficients)

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values)


def boundary_basis_labels(pair: LogCY3Pair):
    """Flat basis labels of the boundary lattice: (vertex, local index)."""
    labels = []
    for comp in pair.boundary_components():
        for i in range(comp.rank):
            labels.append((comp.vertex, i))
    return labels


def edge_matching_map(pair: LogCY3Pair) -> IntMatrix:
    """The degree-difference map from the boundary lattice to the edge lattice.

    Row per directed edge (v, w): the degree of the v-component minus the
    degree of the w-component on that edge.
    """
    labels = boundary_basis_labels(pair)
    rows = []
    for v, w in pair.complex.edges:
        row = []
        for u, i in labels:
            if u == v:
                comp = pair.components[u]
                vec = [0] * comp.rank
                vec[i] = 1
                row.append(comp.degree_on_edge(tuple(vec), w))
            elif u == w:
                comp = pair.components[u]
                vec = [0] * comp.rank
                vec[i] = 1
                row.append(-comp.degree_on_edge(tuple(vec), v))
            else:
                row.append(0)
        rows.append(row)
    return IntMatrix(rows)


def matching_lattice(pair: LogCY3Pair):
    """Saturated basis of the kernel of the edge-matching map."""
    return kernel_basis(edge_matching_map(pair))


def _wedge(a, b):
    return (
        a[0] * b[1] - a[1] * b[0],
        a[0] * b[2] - a[2] * b[0],
        a[1] * b[2] - a[2] * b[1],
    )


def wedge_map(pair: LogCY3Pair) -> IntMatrix:
    """Edge lattice to second exterior power of the cocharacter lattice."""
    cols = []
    for v, w in pair.complex.edges:
        cols.append(_wedge(pair.fan.rays[v], pair.fan.rays[w]))
    return IntMatrix(list(zip(*cols)))


def edge_cokernel_report(pair: LogCY3Pair):
    """Cokernel of the edge-matching map and the composition check.

    Returns ``(free_rank, torsion, composition_zero)``.  The wedge map
    annihilates the degree vectors of toric component classes (the
    composition flag checks exactly those columns); exceptional classes map
    onto wedge tensors instead, which is what cuts the quotient lattice
    down for non-toric pairs.
    """
    ell = edge_matching_map(pair)
    gamma = wedge_map(pair)
    composed = gamma * ell
    toric_columns = [
        j
        for j, (v, i) in enumerate(boundary_basis_labels(pair))
        if i < pair.components[v].base.rank
    ]
    composition_zero = all(
        row[j] == 0 for row in composed.data for j in toric_columns
    )
    free_rank, torsion = cokernel_structure(ell)
    return free_rank, torsion, composition_zero


# ---------------------------------------------------------------------------
# Period characters
# ---------------------------------------------------------------------------


def evaluate_boundary_character(
    pair: LogCY3Pair, marking: Marking, flat
) -> GaussianRational:
    """Period value of a flat boundary-lattice vector for a given marking."""
    per_component = pair.split_boundary_vector(flat)
    value = ONE
    for v in sorted(pair.components):
        value = value * component_marked_period(
            pair.components[v], marking, per_component[v]
        )
    return value


def marked_period(pair: LogCY3Pair, marking: Marking = None) -> PeriodCharacter:
    """The marked period character on the full boundary lattice."""
    if marking is None:
        marking = Marking.markers(pair.edge_keys())
    _, total = pair.component_offsets()
    basis = []
    values = []
    for i in range(total):
        vec = tuple(1 if j == i else 0 for j in range(total))
        basis.append(vec)
        values.append(evaluate_boundary_character(pair, marking, vec))
    return PeriodCharacter(tuple(basis), tuple(values))


def _alternative_marking(pair: LogCY3Pair) -> Marking:
    # A deterministic marking distinct from the markers on every edge.
    values = {}
    for n, key in enumerate(sorted(pair.edge_keys(), key=lambda k: tuple(sorted(k)))):
        values[key] = GaussianRational(n + 2, 1)
    return Marking.build(values)


def unmarked_period(pair: LogCY3Pair) -> PeriodCharacter:
    """The period character on the matching lattice.

    On matching classes the per-edge degrees agree across the two sides, so
    the value does not depend on the marking; this is asserted by evaluating
    against a second marking.
    """
    generators = matching_lattice(pair)
    markers = Marking.markers(pair.edge_keys())
    other = _alternative_marking(pair)
    values = []
    for gen in generators:
        value = evaluate_boundary_character(pair, markers, gen)
        check = evaluate_boundary_character(pair, other, gen)
        if value != check:
            raise PeriodConsistencyError(
                "period value depends on the marking on a matching class"
            )
        values.append(value)
    return PeriodCharacter(tuple(tuple(g) for g in generators), tuple(values))


def edge_scaling_character(pair: LogCY3Pair, lambdas) -> PeriodCharacter:
    """The character moving the marked period under a marking rescaling.

    ``lambdas`` assigns a nonzero scalar to every edge (list in the order of
    the dual complex edges, or a mapping from frozenset edge keys).  The
    value on a boundary basis class is the product over edges of the scalar
    raised to the degree difference of the class across that edge.
    """
    scalars = _edge_scalars(pair, lambdas)
    labels = boundary_basis_labels(pair)
    basis = []
    values = []
    for n, (u, i) in enumerate(labels):
        vec = tuple(1 if j == n else 0 for j in range(len(labels)))
        basis.append(vec)
        comp = pair.components[u]
        local = [0] * comp.rank
        local[i] = 1
        value = ONE
        for (v, w), lam in zip(pair.complex.edges, scalars):
            if u == v:
                d = comp.degree_on_edge(tuple(local), w)
            elif u == w:
                d = -comp.degree_on_edge(tuple(local), v)
            else:
                continue
            if d:
                value = value * (lam ** d)
        values.append(value)
    return PeriodCharacter(tuple(basis), tuple(values))


def _edge_scalars(pair: LogCY3Pair, lambdas):
    if isinstance(lambdas, dict):
        scalars = [lambdas[frozenset(e)] for e in pair.complex.edges]
    else:
        scalars = list(lambdas)
        if len(scalars) != len(pair.complex.edges):
            raise PairError("one scalar per edge required")
    for s in scalars:
        if s.is_zero():
            raise ExactArithmeticError("edge scalars must be nonzero")
    return scalars


def scale_marking(pair: LogCY3Pair, marking: Marking, lambdas) -> Marking:
    """Multiply each marking point by the edge scalar, in reference charts."""
    scalars = _edge_scalars(pair, lambdas)
    values = {}
    for (v, w), lam in zip(pair.complex.edges, scalars):
        values[frozenset((v, w))] = lam * marking.point(v, w)
    return Marking.build(values)


# ---------------------------------------------------------------------------
# The induced character on the quotient by global classes
# ---------------------------------------------------------------------------


def quotient_character(pair: LogCY3Pair):
    """Period character induced on the quotient of the matching lattice.

    The quotient is by the image of the threefold Picard lattice under
    restriction.  Returns ``(character, torsion_invariants)`` where the
    character is evaluated on lifts of a free-part basis of the quotient.
    Raises :class:`PeriodConsistencyError` if the period is not already
    trivial on the image (which would signal an implementation bug).
    """
    generators = matching_lattice(pair)
    markers = Marking.markers(pair.edge_keys())
    k_basis, _ = pair.k_image()
    for gen in k_basis:
        if not evaluate_boundary_character(pair, markers, gen).is_one():
            raise PeriodConsistencyError(
                "period is nontrivial on a restricted global class"
            )
    if not generators:
        return PeriodCharacter((), ()), ()
    lattice = IntMatrix(list(zip(*generators)))  # flat x s
    columns = []
    for gen in k_basis:
        sol = solve_integer(lattice, gen)
        if sol is None:
            raise PeriodConsistencyError(
                "restricted global class outside the matching lattice"
            )
        columns.append(sol)
    s = len(generators)
    if columns:
        inclusion = IntMatrix(list(zip(*columns)))  # s x t
    else:
        inclusion = IntMatrix([[0] for _ in range(s)])
    dec = snf(inclusion)
    diag = dec.D.diagonal()
    torsion = tuple(d for d in diag if d > 1)
    u_inv = invert_unimodular(dec.U)
    free_indices = [i for i in range(s) if i >= len(diag) or diag[i] == 0]
    basis = []
    values = []
    for i in free_indices:
        lift = u_inv.column(i)  # coefficients in the matching-lattice basis
        flat = lattice.apply(lift)
        basis.append(tuple(flat))
        values.append(evaluate_boundary_character(pair, markers, flat))
    return PeriodCharacter(tuple(basis), tuple(values)), torsion
