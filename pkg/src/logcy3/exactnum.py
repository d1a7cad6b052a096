"""Exact arithmetic over Q(i) and integer lattice algebra.

All coordinate and period data in this package lives in the multiplicative
group of the Gaussian rationals, and all lattice bookkeeping is done with
arbitrary-precision integer matrices.  This module supplies both layers:

* :class:`GaussianRational` -- an exact element of Q(i);
* :class:`IntMatrix` and :func:`snf` -- Smith normal form with unimodular
  transforms, plus kernels, cokernels and integer linear solving;
* :func:`solvable_over_torus` -- decides whether a multiplicative system of
  character equations has a solution valued in the full complex torus;
* :func:`nth_root` -- exact n-th roots in Q(i), when they exist.

Everything here is immutable and pure.
"""

from __future__ import annotations

import re as _regex
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class ExactArithmeticError(ValueError):
    """Raised on invalid exact-arithmetic input (zero denominators etc.)."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_FULL_RE = _regex.compile(
    rf"^(?P<sr>[+-]?)(?P<re>{_RAT})"
    rf"(?:(?P<si>[+-])(?:(?P<im>{_RAT})\*)?i)?$"
)
_IMAG_RE = _regex.compile(rf"^(?P<si>[+-]?)(?:(?P<im>{_RAT})\*)?i$")


@dataclass(frozen=True)
class GaussianRational:
    """An exact element of Q(i), stored as a pair of reduced fractions."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    # -- construction -------------------------------------------------------

    @staticmethod
    def parse(text: str) -> "GaussianRational":
        """Parse the textual form ``a/b``, ``a/b+c/d*i`` or ``a/b-c/d*i``.

        Denominators of 1 may be omitted; a bare real part or a bare
        imaginary part (``i``, ``-i``, ``2*i``) is also accepted.
        """
        s = text.replace(" ", "")
        try:
            m = _IMAG_RE.match(s)
            if m:
                im = Fraction(m.group("im") or "1")
                if m.group("si") == "-":
                    im = -im
                return GaussianRational(0, im)
            m = _FULL_RE.match(s)
            if m is None:
                raise ExactArithmeticError(
                    f"cannot parse Gaussian rational {text!r}"
                )
            re_part = Fraction(m.group("re"))
            if m.group("sr") == "-":
                re_part = -re_part
            im_part = Fraction(0)
            if m.group("si"):
                im_part = Fraction(m.group("im") or "1")
                if m.group("si") == "-":
                    im_part = -im_part
        except ZeroDivisionError as exc:
            raise ExactArithmeticError(
                f"zero denominator in Gaussian rational {text!r}"
            ) from exc
        return GaussianRational(re_part, im_part)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.inverse()

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ExactArithmeticError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- formatting ---------------------------------------------------------

    def __str__(self) -> str:
        def frac(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        if self.im == 0:
            return frac(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{frac(self.re)}{sign}{frac(abs(self.im))}*i"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {x!r} to GaussianRational")


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)
I = GaussianRational(0, 1)


def product(values) -> GaussianRational:
    """Multiply an iterable of Gaussian rationals (empty product is 1)."""
    result = ONE
    for v in values:
        result = result * v
    return result


def power_product(values, exponents) -> GaussianRational:
    """Compute ``prod(values[j] ** exponents[j])`` exactly."""
    result = ONE
    for v, e in zip(values, exponents, strict=True):
        if e:
            result = result * (v ** e)
    return result


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular matrix of arbitrary-precision integers."""

    data: tuple

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ExactArithmeticError("ragged matrix")
        object.__setattr__(self, "data", rows)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(m: int, n: int) -> "IntMatrix":
        return IntMatrix([[0] * n for _ in range(m)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ExactArithmeticError("matrix dimension mismatch")
        ot = list(zip(*other.data)) if other.data else []
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data]
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.data))) if self.data else IntMatrix([])

    def apply(self, vector) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ExactArithmeticError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.data)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def diagonal(self) -> tuple:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.data)


@dataclass(frozen=True)
class SnfDecomposition:
    """Unimodular U, V and diagonal D with ``U * A * V == D``.

    The diagonal entries are nonnegative and satisfy the divisibility
    chain d1 | d2 | ... .
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.D.diagonal() if d != 0)

    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.D.diagonal() if d != 0)


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form over Z with transforms, by exact row/column reduction."""
    m, n = A.rows, A.cols
    a = [list(r) for r in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # Locate a pivot of minimal absolute value in the trailing block.
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            # Clear column t below the pivot, then row t right of the pivot.
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)

        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return SnfDecomposition(IntMatrix(u), IntMatrix(a), IntMatrix(v))


def rank(A: IntMatrix) -> int:
    return snf(A).rank


def kernel_basis(A: IntMatrix):
    """A basis of the saturated integer kernel of ``A`` (column vectors).

    The returned list is empty iff ``A`` is injective.
    """
    dec = snf(A)
    r = dec.rank
    return [dec.V.column(j) for j in range(r, A.cols)]


def cokernel_structure(A: IntMatrix):
    """Free rank and torsion invariant factors of ``Z^rows / im(A)``."""
    dec = snf(A)
    torsion = tuple(d for d in dec.invariant_factors() if d > 1)
    return A.rows - dec.rank, torsion


def solve_integer(A: IntMatrix, b):
    """An integer solution ``x`` of ``A x = b``, or ``None``."""
    dec = snf(A)
    ub = dec.U.apply(tuple(b))
    diag = dec.D.diagonal()
    y = [0] * A.cols
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    return dec.V.apply(tuple(y))


def invert_unimodular(A: IntMatrix) -> IntMatrix:
    """Inverse of a square integer matrix with determinant +-1."""
    n = A.rows
    if n != A.cols:
        raise ExactArithmeticError("matrix is not square")
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(A.data)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ExactArithmeticError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    out = [row[n:] for row in work]
    if any(x.denominator != 1 for row in out for x in row):
        raise ExactArithmeticError("matrix is not unimodular")
    return IntMatrix([[int(x) for x in row] for row in out])


def image_saturated(A: IntMatrix) -> bool:
    """Whether the column span of ``A`` is a saturated sublattice."""
    return all(d == 1 for d in snf(A).invariant_factors())


# ---------------------------------------------------------------------------
# Character solvability over the torus
# ---------------------------------------------------------------------------


def solvable_over_torus(A: IntMatrix, targets):
    """Decide whether a homomorphism ``Z^cols -> C*`` hits the targets.

    ``A`` has one row per equation; row ``j`` is a character on ``Z^cols``
    and the equation asks for a homomorphism ``h`` with ``h(A_j) = targets[j]``.
    Since the complex torus is divisible, solvability only depends on the
    integer relations among the rows: for every relation ``a`` with
    ``a^T A = 0`` the corresponding product of targets must be 1.

    Returns ``(True, None)`` or ``(False, relation)`` with a violated
    relation as certificate.
    """
    targets = list(targets)
    if len(targets) != A.rows:
        raise ExactArithmeticError("one target per row required")
    for tval in targets:
        if tval.is_zero():
            raise ExactArithmeticError("targets must be nonzero")
    for relation in kernel_basis(A.transpose()):
        if not power_product(targets, relation).is_one():
            return False, relation
    return True, None


def solve_over_gaussian_torus(A: IntMatrix, targets):
    """Solve the multiplicative system of :func:`solvable_over_torus` in Q(i).

    Returns ``("solved", values)`` with one Q(i)* value per column,
    ``("complex_only", relation_free_witness)`` when the system is solvable
    over the full torus but some required root does not exist in Q(i), or
    ``("unsolvable", relation)`` with a violated relation.
    """
    ok, relation = solvable_over_torus(A, targets)
    if not ok:
        return "unsolvable", relation
    dec = snf(A)
    # Transform targets by U: s_i = prod_j targets_j ** U[i, j].
    s = [power_product(targets, dec.U.data[i]) for i in range(A.rows)]
    diag = dec.D.diagonal()
    y = [ONE] * A.cols
    for i in range(min(A.rows, A.cols)):
        d = diag[i]
        if d == 0:
            continue
        root = nth_root(s[i], d)
        if root is None:
            return "complex_only", (d, s[i])
        y[i] = root
    # x_e = prod_i y_i ** V[e, i]
    x = [power_product(y, dec.V.data[e]) for e in range(A.cols)]
    return "solved", x


# ---------------------------------------------------------------------------
# Exact n-th roots in Q(i)
# ---------------------------------------------------------------------------


def _factor_int(n: int) -> dict:
    """Prime factorization of a positive integer by trial division."""
    factors: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _gauss_divmod(a, b):
    """Rounded division in Z[i]; a, b are (re, im) integer pairs."""
    br, bi = b
    nb = br * br + bi * bi
    ar, ai = a
    qr_num = ar * br + ai * bi
    qi_num = ai * br - ar * bi
    qr = (2 * qr_num + nb) // (2 * nb)
    qi = (2 * qi_num + nb) // (2 * nb)
    rr = ar - (qr * br - qi * bi)
    ri = ai - (qr * bi + qi * br)
    return (qr, qi), (rr, ri)


def _gauss_gcd(a, b):
    while b != (0, 0):
        _, r = _gauss_divmod(a, b)
        a, b = b, r
    return a


def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _sqrt_minus_one_mod(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 mod 4."""
    for base in range(2, p):
        s = pow(base, (p - 1) // 4, p)
        if (s * s) % p == p - 1:
            return s
    raise ExactArithmeticError(f"no sqrt(-1) mod {p}")  # pragma: no cover


def _gaussian_prime_above(p: int):
    """A Gaussian prime dividing the rational prime p (split or ramified)."""
    if p == 2:
        return (1, 1)
    s = _sqrt_minus_one_mod(p)
    return _gauss_gcd((p, 0), (s, 1))


def _factor_gaussian(z):
    """Factor a nonzero Z[i] element into unit power and prime exponents.

    Returns ``(k, factors)`` where the unit is ``i**k`` and ``factors`` maps a
    canonical Gaussian prime (as an (re, im) pair) to its exponent.
    """
    factors: dict = {}
    norm = z[0] * z[0] + z[1] * z[1]
    for p, _ in _factor_int(norm).items():
        if p == 2:
            primes = [(1, 1)]
        elif p % 4 == 3:
            primes = [(p, 0)]
        else:
            pi = _gaussian_prime_above(p)
            primes = [pi, (pi[0], -pi[1])]
        for pi in primes:
            while True:
                q, r = _gauss_divmod(z, pi)
                if r != (0, 0):
                    break
                z = q
                factors[pi] = factors.get(pi, 0) + 1
    # What remains is a unit 1, i, -1 or -i.
    units = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}
    if z not in units:
        raise ExactArithmeticError("Gaussian factorization failed")  # pragma: no cover
    return units[z], factors


def nth_root(x: GaussianRational, n: int):
    """The exact n-th root of ``x`` in Q(i), or ``None`` if there is none.

    Decided by Gaussian prime factorization: every prime exponent must be
    divisible by n and the residual unit must be an n-th power of a unit.
    """
    if n <= 0:
        raise ExactArithmeticError("root order must be positive")
    if x.is_zero():
        raise ExactArithmeticError("no roots of zero in Q(i)*")
    if n == 1 or x.is_one():
        return x if n == 1 else ONE
    denom = x.re.denominator * x.im.denominator // gcd(
        x.re.denominator, x.im.denominator
    )
    num = (int(x.re * denom), int(x.im * denom))
    ku, fnum = _factor_gaussian(num)
    kd, fden = _factor_gaussian((denom, 0))
    exponents = dict(fnum)
    for pi, e in fden.items():
        exponents[pi] = exponents.get(pi, 0) - e
    unit_exp = (ku - kd) % 4
    if any(e % n for e in exponents.values()):
        return None
    step = gcd(n, 4)
    if unit_exp % step:
        return None
    # Find j with j * n = unit_exp mod 4.
    j = next(j for j in range(4) if (j * n) % 4 == unit_exp % 4)
    root = GaussianRational(0, 1) ** j
    for pi, e in exponents.items():
        root = root * (GaussianRational(pi[0], pi[1]) ** (e // n))
    return root
