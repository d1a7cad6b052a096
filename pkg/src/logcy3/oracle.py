"""Independent cross-checks for the blowup cubic form and the period recipe.

Two oracles live here:

* subdivision checks: blowing up a torus-invariant center (a 0-stratum
  point, or a 1-stratum curve) has a purely toric model, the star
  subdivision of the fan; the blowup rules for the cubic tensor must
  reproduce the subdivided fan's tensor entry by entry under the standard
  basis identification (pullbacks plus exceptional class);
* the cocycle period path: the period of a matching class can also be
  computed as a product over oriented triangles of local comparison
  scalars of the explicit sections; this must agree with the per-component
  product of section ratios.
"""

from __future__ import annotations

from logcy3.boundary import Marking, restrict_to_cycle
from logcy3.exactnum import GaussianRational, MINUS_ONE, ONE
from logcy3.pair import LogCY3Pair, PointBlowup
from logcy3.toric import Fan3, TripleIntersection, star_subdivide


# ---------------------------------------------------------------------------
# Star-subdivision cubic checks
# ---------------------------------------------------------------------------


def _ray_class_with_exc(pair: LogCY3Pair, u: int, exc_coeff: int):
    """Threefold class ``(pullback of D_u) + exc_coeff * E`` in the blown-up basis."""
    toric = pair.toric_basis.ray_class(u)
    return tuple(toric) + (exc_coeff,)


def point_subdivision_check(fan: Fan3, cone):
    """Check the point-blowup tensor against the subdivided fan's tensor.

    Returns ``None`` on exact agreement, else a diagnostic naming the first
    mismatching triple.
    """
    cone = tuple(cone)
    sub = star_subdivide(fan, cone)
    # Any interior point has the same cubic data; use a generic coordinate.
    edge = tuple(sorted(cone[:2]))
    pair = LogCY3Pair.build(fan, [PointBlowup(edge, GaussianRational(2))])
    return _compare_tensors(pair, sub, set(cone))


def curve_subdivision_check(fan: Fan3, wall):
    """Check the curve-blowup tensor rules against a 1-stratum blowup.

    The center is the invariant curve of the wall; the blowup rules (tensor
    entries from degrees against the curve class and from the adjunction
    degree of its normal bundle) must match the star-subdivided fan.
    """
    v, w = tuple(wall)
    sub = star_subdivide(fan, (v, w))
    base_pair = LogCY3Pair.build(fan)
    comp = base_pair.components[v]
    curve = comp.base.ray_class(comp.base.ray_of_neighbor(w))
    rank = base_pair.pic_rank
    tensor = dict(base_pair._tensor)
    e_index = rank
    k_dot_c = comp.intersection(
        base_pair.restrict_raw(base_pair.canonical)[v], curve
    )
    for a in range(rank):
        unit = tuple(1 if i == a else 0 for i in range(rank))
        a_dot_c = comp.intersection(base_pair.restrict_raw(unit)[v], curve)
        if a_dot_c:
            tensor[(a, e_index, e_index)] = -a_dot_c
    tensor[(e_index, e_index, e_index)] = k_dot_c + 2

    def blowup_triple(x, y, z):
        total = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, zk in enumerate(z):
                    if zk:
                        key = tuple(sorted((i, j, k)))
                        total += xi * yj * zk * tensor.get(key, 0)
        return total

    return _compare_against(sub, {v, w}, base_pair, blowup_triple)


def _compare_tensors(pair: LogCY3Pair, sub: Fan3, center):
    return _compare_against(
        sub, center, pair, lambda x, y, z: pair.cubic_form(x, y, z)
    )


def _compare_against(sub: Fan3, center, base_pair, triple_fn):
    table = TripleIntersection(sub)
    n_old = base_pair.fan.n_rays
    new_index = sub.n_rays - 1

    def mapped(u):
        if u == new_index:
            toric = (0,) * base_pair.toric_basis.rank
            return toric + (1,)
        return _ray_class_with_exc(base_pair, u, -1 if u in center else 0)

    classes = [mapped(u) for u in range(sub.n_rays)]
    for i in range(sub.n_rays):
        for j in range(i, sub.n_rays):
            for k in range(j, sub.n_rays):
                expected = table.ray_triple(i, j, k)
                got = triple_fn(classes[i], classes[j], classes[k])
                if expected != got:
                    return (
                        f"cubic mismatch at rays ({i}, {j}, {k}): "
                        f"subdivided fan gives {expected}, blowup rules give {got}"
                    )
    return None


# ---------------------------------------------------------------------------
# Cocycle period path
# ---------------------------------------------------------------------------


def _boundary_value_at_zero(points, marking_point):
    """f(0) for ``f(z) = prod (z - q)**a / (z - p)**d`` with d the total degree."""
    degree = 0
    value = ONE
    for q, mult in points:
        degree += mult
        if mult:
            value = value * ((-q) ** mult)
    return value * ((-marking_point) ** (-degree))


def cocycle_period(
    pair: LogCY3Pair, flat, marking: Marking = None, flip_orientation: bool = False
) -> GaussianRational:
    """Period of a matching class computed as a product over triangles.

    For each (component, edge) flag, the explicit section of the restricted
    class takes the value f(0) at the triangle where the flag's directed
    edge occurs positively, and 1 at the other; the scalar of a triangle is
    the product of section values with sign +1 at each flag's 0-end and -1
    at its infinity-end.  The product over all triangles telescopes to the
    period; computing it triangle by triangle is an independent consistency
    path through the orientation data.

    ``flip_orientation`` deliberately swaps the two ends; it exposes the
    sign sensitivity of the construction for classes of nontrivial period.
    """
    if marking is None:
        marking = Marking.markers(pair.edge_keys())
    per_component = pair.split_boundary_vector(flat)
    # Section boundary values per flag (u, w): value at the 0-end triangle.
    flag_values = {}
    for u in sorted(pair.components):
        comp = pair.components[u]
        divisor = restrict_to_cycle(comp, per_component[u])
        for w in comp.neighbors:
            points = [(comp.side_coordinate(w, q), m) for q, m in divisor.on_edge(w)]
            p = comp.side_coordinate(w, marking.point(u, w))
            flag_values[(u, w)] = _boundary_value_at_zero(points, p)
    value = ONE
    for tri in pair.complex.triangles:
        alpha = ONE
        for idx in range(3):
            u, w = tri[idx], tri[(idx + 1) % 3]
            # The directed flag (u, w) occurs positively in this triangle:
            # this corner is the 0-end of u's chart on the edge, and the
            # infinity-end of w's chart, which contributes f(inf)**(-1) = 1.
            factor = flag_values[(u, w)]
            if flip_orientation:
                factor = factor.inverse()
            alpha = alpha * factor
        value = value * alpha
    return value
