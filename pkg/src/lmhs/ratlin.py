"""Exact rational linear algebra kernel.

All matrices carry Fraction entries and every operation is exact; rank
decisions are bit-exact and there is no tolerance concept anywhere.
Row reduction uses the first nonzero pivot.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import cyclo

Vec = tuple  # tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class NonCyclotomicEigenvalue(ValueError):
    """The characteristic polynomial has an irreducible non-cyclotomic factor."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows) -> "RationalMatrix":
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        r = len(data)
        c = len(data[0]) if r else 0
        if any(len(row) != c for row in data):
            raise DimensionMismatch("ragged rows")
        return RationalMatrix(r, c, data)

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        z = Fraction(0)
        return RationalMatrix(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            n, n, tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
        )

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = _frac(c)
        return RationalMatrix(
            self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries)
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        if self.cols == 0 or other.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        ot = tuple(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                tuple(
                    sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                    for col in ot
                )
            )
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def __pow__(self, k: int) -> "RationalMatrix":
        if not self.is_square():
            raise DimensionMismatch("powers need a square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def apply(self, v: Vec) -> Vec:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries)

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @staticmethod
    def from_columns(cols, ambient: int) -> "RationalMatrix":
        cols = list(cols)
        if not cols or ambient == 0:
            return RationalMatrix.zeros(ambient, len(cols))
        if any(len(c) != ambient for c in cols):
            raise DimensionMismatch("column length differs from ambient dimension")
        return RationalMatrix.from_rows(list(zip(*cols)))

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return RationalMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries)),
        )

    def _rref(self) -> tuple:
        """Reduced row echelon form; returns (rows as list of lists, pivot column list)."""
        m = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if m[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            piv = m[r][c]
            if piv != 1:
                m[r] = [x / piv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def kernel(self) -> "Subspace":
        """Exact basis of the right null space, as a subspace of Q^cols."""
        m, pivots = self._rref()
        pivset = set(pivots)
        free = [c for c in range(self.cols) if c not in pivset]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(tuple(v))
        return Subspace.from_vectors(self.cols, basis)

    def image(self) -> "Subspace":
        """Column space, spanned by the pivot columns of the matrix."""
        _, pivots = self._rref()
        return Subspace.from_vectors(self.rows, [self.column(c) for c in pivots])

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = self.hstack(RationalMatrix.identity(n))
        m, pivots = aug._rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return RationalMatrix.from_rows([row[n:] for row in m[:n]])

    def det_nonzero(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def charpoly(self) -> tuple:
        """Characteristic polynomial det(xI - A), low degree first, monic."""
        if not self.is_square():
            raise DimensionMismatch("characteristic polynomial of a non-square matrix")
        n = self.rows
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        m = RationalMatrix.identity(n)
        for k in range(1, n + 1):
            m = self @ m
            c = -sum(m.entries[i][i] for i in range(n)) / k
            coeffs[n - k] = c
            m = m + RationalMatrix.identity(n).scale(c)
        return tuple(coeffs)

    def poly_at(self, p) -> "RationalMatrix":
        """Evaluate the polynomial p (coefficient tuple, low first) at this matrix."""
        if not self.is_square():
            raise DimensionMismatch("polynomial evaluation needs a square matrix")
        out = RationalMatrix.zeros(self.rows, self.rows)
        power = RationalMatrix.identity(self.rows)
        for i, c in enumerate(p):
            if c:
                out = out + power.scale(c)
            if i + 1 < len(p):
                power = power @ self
        return out

    def __str__(self) -> str:
        return "\n".join("[" + "  ".join(str(x) for x in row) + "]" for row in self.entries)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient with a canonical (row reduced) basis."""

    ambient: int
    basis: tuple  # tuple[Vec, ...], canonical

    @staticmethod
    def from_vectors(ambient: int, vectors) -> "Subspace":
        vectors = [tuple(_frac(x) for x in v) for v in vectors]
        if any(len(v) != ambient for v in vectors):
            raise DimensionMismatch("vector length differs from ambient dimension")
        if not vectors:
            return Subspace(ambient, ())
        m, pivots = RationalMatrix.from_rows(vectors)._rref()
        return Subspace(ambient, tuple(tuple(m[i]) for i in range(len(pivots))))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, ())

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace.from_vectors(
            ambient, [tuple(Fraction(1 if i == j else 0) for j in range(ambient)) for i in range(ambient)]
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> RationalMatrix:
        """Basis vectors as columns (ambient x dim)."""
        return RationalMatrix.from_columns(list(self.basis), self.ambient)

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        stacked = list(self.basis) + [tuple(_frac(x) for x in v)]
        return RationalMatrix.from_rows(stacked).rank() == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_space(self)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient)
    am, bm = a.matrix(), b.matrix()
    ker = am.hstack(bm.scale(-1)).kernel()
    vectors = [am.apply(v[: a.dim]) for v in ker.basis]
    return Subspace.from_vectors(a.ambient, vectors)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    return Subspace.from_vectors(a.ambient, list(a.basis) + list(b.basis))


def nilpotent_partition(n: RationalMatrix) -> tuple:
    """Jordan block sizes of a nilpotent matrix, largest first.

    Recovered from the rank sequence: the number of blocks of size >= i is
    rank(n^(i-1)) - rank(n^i).
    """
    if not n.is_square():
        raise DimensionMismatch("nilpotent partition of a non-square matrix")
    d = n.rows
    if d == 0:
        return ()
    ranks = [d]
    power = RationalMatrix.identity(d)
    for _ in range(d):
        power = power @ n
        ranks.append(power.rank())
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotent("matrix is not nilpotent")
    while len(ranks) <= d + 1:
        ranks.append(0)
    sizes = []
    for i in range(1, d + 1):
        at_least_i = ranks[i - 1] - ranks[i]
        at_least_next = ranks[i] - ranks[i + 1]
        sizes.extend([i] * (at_least_i - at_least_next))
    sizes.sort(reverse=True)
    return tuple(sizes)


def exp_nilpotent(n: RationalMatrix) -> RationalMatrix:
    """exp of a nilpotent matrix; the series terminates, so this is exact."""
    out = RationalMatrix.identity(n.rows)
    term = RationalMatrix.identity(n.rows)
    k = 1
    while True:
        term = (term @ n).scale(Fraction(1, k))
        if term.is_zero():
            return out
        out = out + term
        k += 1
        if k > n.rows + 1:
            raise NotNilpotent("matrix is not nilpotent")


def log_unipotent(u: RationalMatrix) -> RationalMatrix:
    """log of a unipotent matrix via the finite alternating series in (u - I)."""
    m = u - RationalMatrix.identity(u.rows)
    out = RationalMatrix.zeros(u.rows, u.rows)
    term = RationalMatrix.identity(u.rows)
    for k in range(1, u.rows + 1):
        term = term @ m
        if term.is_zero():
            break
        out = out + term.scale(Fraction((-1) ** (k + 1), k))
    else:
        if not (term @ m).is_zero():
            raise NotNilpotent("matrix is not unipotent")
    return out


def cyclotomic_factor_multiplicities(p) -> tuple:
    """Factor a monic rational polynomial as a product of cyclotomics.

    Returns a tuple of (d, multiplicity) pairs, d ascending.  Raises
    NonCyclotomicEigenvalue if any irreducible factor is not cyclotomic.
    """
    p = cyclo.poly_trim(p)
    deg = cyclo.poly_deg(p)
    factors = []
    for d in cyclo.cyclotomic_candidates(deg):
        phi = cyclo.cyclotomic(d)
        if cyclo.poly_deg(phi) > cyclo.poly_deg(p):
            continue
        mult = 0
        while True:
            q, r = cyclo.poly_divmod(p, phi)
            if r:
                break
            p, mult = q, mult + 1
        if mult:
            factors.append((d, mult))
        if cyclo.poly_deg(p) == 0:
            break
    if cyclo.poly_deg(p) != 0:
        raise NonCyclotomicEigenvalue(
            "characteristic polynomial has a non-cyclotomic irreducible factor"
        )
    return tuple(factors)


@dataclass(frozen=True)
class QuasiUnipotentSplit:
    semisimple: RationalMatrix
    unipotent: RationalMatrix
    log: RationalMatrix
    cyclotomic_orders: tuple  # ((d, multiplicity), ...)

    @property
    def semisimple_order(self) -> int:
        return lcm(*(d for d, _ in self.cyclotomic_orders)) if self.cyclotomic_orders else 1


def quasi_unipotent_split(t: RationalMatrix) -> QuasiUnipotentSplit:
    """Jordan decomposition T = T_ss * T_un of a quasi-unipotent matrix.

    Both parts are polynomial expressions in T, found by Newton iteration
    against the squarefree (radical) part of the characteristic polynomial;
    N = log(T_un) is the finite alternating series in (T_un - I).
    """
    if not t.is_square():
        raise DimensionMismatch("quasi-unipotent split of a non-square matrix")
    n = t.rows
    if n == 0:
        empty = RationalMatrix.zeros(0, 0)
        return QuasiUnipotentSplit(empty, empty, empty, ())
    orders = cyclotomic_factor_multiplicities(t.charpoly())
    radical = (Fraction(1),)
    for d, _ in orders:
        radical = cyclo.poly_mul(radical, cyclo.cyclotomic(d))
    _, u, _ = cyclo.poly_xgcd(cyclo.poly_derivative(radical), radical)
    ss = t
    for _ in range(n + 1):
        val = ss.poly_at(radical)
        if val.is_zero():
            break
        ss = ss - (val @ ss.poly_at(u))
    else:
        raise NonCyclotomicEigenvalue("Newton iteration failed to converge")
    un = ss.inverse() @ t
    return QuasiUnipotentSplit(ss, un, log_unipotent(un), orders)
