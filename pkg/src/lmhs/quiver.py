"""Perverse sheaves on a disk as quiver representations.

A representation is a quadruple of nearby cycles, vanishing cycles and maps
can: psi -> phi, var: phi -> psi, with quasi-unipotent monodromies on both
sides.  On the unipotent summand of psi, var∘can equals the nilpotent
monodromy logarithm N; on each nontrivial cyclotomic isotypic summand, can
and var are inverse isomorphisms up to the invertible factor var∘can.

The calculus implemented here: the decomposition criterion
(Im can ⊕ Ker var = phi), stalk and costalk cohomology, the four-term
Clemens-Schmid sequence with its exactness verdicts, the local invariant
cycle property, Verdier duality, and classification into the five families
of indecomposables:

  A: full direct image from the punctured disk (can N-like, var iso)
  B: extension by zero               (can iso, var N-like)
  C: intermediate extension          (can onto, var into)
  D: both a sub- and a quotient-object at the origin (size 0 = skyscraper)
  E: nontrivial eigenvalue of the finite monodromy part, order d > 1

Sizes count the rank of the underlying local system on the punctured disk;
a type-E summand of size i and order d occupies i * totient(d) rational
dimensions (complex eigenvalue lines come in Galois orbits over Q).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import hodge
from .cyclo import cyclotomic, totient
from .ratlin import (
    DimensionMismatch,
    NonCyclotomicEigenvalue,
    RationalMatrix,
    Subspace,
    exp_nilpotent,
    intersect,
    quasi_unipotent_split,
    sum_spaces,
)

FAMILIES = ("A", "B", "C", "D", "E")


@dataclass(frozen=True)
class DiskQuiverRep:
    psi_dim: int
    phi_dim: int
    t_psi: RationalMatrix
    t_phi: RationalMatrix
    can: RationalMatrix
    var: RationalMatrix

    def __post_init__(self):
        if self.t_psi.rows != self.psi_dim or self.t_psi.cols != self.psi_dim:
            raise DimensionMismatch("t_psi shape does not match psi_dim")
        if self.t_phi.rows != self.phi_dim or self.t_phi.cols != self.phi_dim:
            raise DimensionMismatch("t_phi shape does not match phi_dim")
        if (self.can.rows, self.can.cols) != (self.phi_dim, self.psi_dim):
            raise DimensionMismatch("can must be a (phi_dim x psi_dim) matrix")
        if (self.var.rows, self.var.cols) != (self.psi_dim, self.phi_dim):
            raise DimensionMismatch("var must be a (psi_dim x phi_dim) matrix")


@dataclass(frozen=True)
class IndecompSummand:
    family: str
    size: int
    order: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "D":
            if self.size < 0:
                raise ValueError("family D needs size >= 0")
        elif self.size < 1:
            raise ValueError(f"family {self.family} needs size >= 1")
        if (self.family == "E") != (self.order > 1):
            raise ValueError("order > 1 exactly for family E")

    @property
    def dims(self) -> tuple:
        """(psi, phi) rational dimensions occupied by this summand."""
        i = self.size
        if self.family == "A" or self.family == "B":
            return (i, i)
        if self.family == "C":
            return (i, i - 1)
        if self.family == "D":
            return (i, i + 1)
        f = totient(self.order)
        return (i * f, i * f)

    def sort_key(self):
        return (self.family, self.order, self.size)


# ---------------------------------------------------------------------------
# normal forms and assembly


def _shift(n: int) -> RationalMatrix:
    """Nilpotent single Jordan block: e_j -> e_{j+1}, e_n -> 0."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n - 1):
        m[j + 1][j] = Fraction(1)
    return RationalMatrix.from_rows(m) if n else RationalMatrix.zeros(0, 0)


def _companion(d: int) -> RationalMatrix:
    phi = cyclotomic(d)
    f = len(phi) - 1
    m = [[Fraction(0)] * f for _ in range(f)]
    for j in range(f - 1):
        m[j + 1][j] = Fraction(1)
    for j in range(f):
        m[j][f - 1] = -phi[j]
    return RationalMatrix.from_rows(m)


def _kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    rows = []
    for i in range(a.rows):
        for k in range(b.rows):
            rows.append(
                tuple(a.entries[i][j] * b.entries[k][l] for j in range(a.cols) for l in range(b.cols))
            )
    return RationalMatrix(a.rows * b.rows, a.cols * b.cols, tuple(rows))


def zero_rep() -> DiskQuiverRep:
    z = RationalMatrix.zeros(0, 0)
    return DiskQuiverRep(0, 0, z, z, z, z)


def block(family: str, size: int, order: int = 1) -> DiskQuiverRep:
    """Canonical matrix model of one indecomposable summand."""
    IndecompSummand(family, size, order)  # validates the parameters
    i = size
    if family == "E":
        f = totient(order)
        n = i * f
        ss = _kron(RationalMatrix.identity(i), _companion(order))
        un = exp_nilpotent(_kron(_shift(i), RationalMatrix.identity(f)))
        t = ss @ un
        ident = RationalMatrix.identity(n)
        return DiskQuiverRep(n, n, t, t, ident, ident)
    s_psi = _shift(i)
    t_psi = exp_nilpotent(s_psi) if i else RationalMatrix.zeros(0, 0)
    if family in ("A", "B"):
        ident = RationalMatrix.identity(i)
        can, var = (s_psi, ident) if family == "A" else (ident, s_psi)
        return DiskQuiverRep(i, i, t_psi, t_psi, can, var)
    if family == "C":
        phi_dim = i - 1
        can = RationalMatrix.from_rows(
            [[Fraction(1 if j == k else 0) for k in range(i)] for j in range(phi_dim)]
        ) if phi_dim else RationalMatrix.zeros(0, i)
        var = RationalMatrix.from_rows(
            [[Fraction(1 if j == k + 1 else 0) for k in range(phi_dim)] for j in range(i)]
        ) if phi_dim else RationalMatrix.zeros(i, 0)
        t_phi = exp_nilpotent(_shift(phi_dim)) if phi_dim else RationalMatrix.zeros(0, 0)
        return DiskQuiverRep(i, phi_dim, t_psi, t_phi, can, var)
    # family D: psi = Q^i, phi = Q^(i+1), skyscraper for i = 0
    phi_dim = i + 1
    can = RationalMatrix.from_rows(
        [[Fraction(1 if j == k + 1 else 0) for k in range(i)] for j in range(phi_dim)]
    ) if i else RationalMatrix.zeros(phi_dim, 0)
    var = RationalMatrix.from_rows(
        [[Fraction(1 if j == k else 0) for k in range(phi_dim)] for j in range(i)]
    ) if i else RationalMatrix.zeros(0, phi_dim)
    t_phi = exp_nilpotent(_shift(phi_dim))
    return DiskQuiverRep(i, phi_dim, t_psi, t_phi, can, var)


def direct_sum(*reps: DiskQuiverRep) -> DiskQuiverRep:
    if not reps:
        return zero_rep()

    def blockdiag(mats, rows, cols):
        total_r, total_c = sum(rows), sum(cols)
        if total_r == 0 or total_c == 0:
            return RationalMatrix.zeros(total_r, total_c)
        out = [[Fraction(0)] * total_c for _ in range(total_r)]
        r0 = c0 = 0
        for m, r, c in zip(mats, rows, cols):
            for ii in range(r):
                for jj in range(c):
                    out[r0 + ii][c0 + jj] = m.entries[ii][jj]
            r0 += r
            c0 += c
        return RationalMatrix.from_rows(out)

    psis = [r.psi_dim for r in reps]
    phis = [r.phi_dim for r in reps]
    return DiskQuiverRep(
        sum(psis),
        sum(phis),
        blockdiag([r.t_psi for r in reps], psis, psis),
        blockdiag([r.t_phi for r in reps], phis, phis),
        blockdiag([r.can for r in reps], phis, psis),
        blockdiag([r.var for r in reps], psis, phis),
    )


def from_summands(summands) -> DiskQuiverRep:
    return direct_sum(*(block(s.family, s.size, s.order) for s in summands))


def conjugate(rep: DiskQuiverRep, p: RationalMatrix, q: RationalMatrix) -> DiskQuiverRep:
    """Change of basis by p on psi and q on phi (both invertible)."""
    pi, qi = p.inverse(), q.inverse()
    return DiskQuiverRep(
        rep.psi_dim,
        rep.phi_dim,
        pi @ rep.t_psi @ p,
        qi @ rep.t_phi @ q,
        qi @ rep.can @ p,
        pi @ rep.var @ q,
    )


def random_unimodular(n: int, rng, steps: int = 6) -> RationalMatrix:
    """Random integer matrix with determinant +-1 (a product of shears and swaps)."""
    m = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.25:
            m[i], m[j] = m[j], m[i]
    return RationalMatrix.from_rows(m) if n else RationalMatrix.zeros(0, 0)


def shuffled(rep: DiskQuiverRep, rng) -> DiskQuiverRep:
    return conjugate(
        rep,
        random_unimodular(rep.psi_dim, rng),
        random_unimodular(rep.phi_dim, rng),
    )


# ---------------------------------------------------------------------------
# analysis


def _restrict(m: RationalMatrix, dom: Subspace, cod: Subspace) -> RationalMatrix:
    """Matrix of m restricted to dom, in the basis of cod; exact, raises if
    the image is not contained in cod."""
    y = m @ dom.matrix()
    a = cod.matrix()
    merged, pivots = a.hstack(y)._rref()
    if any(p >= a.cols for p in pivots):
        raise ValueError("map does not preserve the given subspaces")
    rows = [merged[r][a.cols:] for r in range(len(pivots))]
    # pivot r sits in column pivots[r] of cod's basis
    out = [[Fraction(0)] * dom.dim for _ in range(cod.dim)]
    for r, pc in enumerate(pivots):
        out[pc] = list(rows[r])
    return RationalMatrix(cod.dim, dom.dim, tuple(tuple(row) for row in out))


class _Analysis:
    """Shared isotypic splitting of a valid representation."""

    def __init__(self, rep: DiskQuiverRep):
        self.rep = rep
        self.split_psi = quasi_unipotent_split(rep.t_psi)
        self.split_phi = quasi_unipotent_split(rep.t_phi)
        self.orders = sorted(
            set(d for d, _ in self.split_psi.cyclotomic_orders)
            | set(d for d, _ in self.split_phi.cyclotomic_orders)
        )
        self.psi_iso = {d: self._isotypic(rep.t_psi, d) for d in self.orders}
        self.phi_iso = {d: self._isotypic(rep.t_phi, d) for d in self.orders}
        self.psi_u = self.psi_iso.get(1, Subspace.zero(rep.psi_dim))
        self.phi_u = self.phi_iso.get(1, Subspace.zero(rep.phi_dim))
        self.c_u = _restrict(rep.can, self.psi_u, self.phi_u)
        self.v_u = _restrict(rep.var, self.phi_u, self.psi_u)
        self.n_u = _restrict(self.split_psi.log, self.psi_u, self.psi_u)
        self.m_u = _restrict(self.split_phi.log, self.phi_u, self.phi_u)

    @staticmethod
    def _isotypic(t: RationalMatrix, d: int) -> Subspace:
        if t.rows == 0:
            return Subspace.zero(0)
        return (t.poly_at(cyclotomic(d)) ** t.rows).kernel()


_ANALYSIS_CACHE: dict = {}


def _analysis(rep: DiskQuiverRep) -> _Analysis:
    got = _ANALYSIS_CACHE.get(rep)
    if got is None:
        got = _Analysis(rep)
        if len(_ANALYSIS_CACHE) > 256:
            _ANALYSIS_CACHE.clear()
        _ANALYSIS_CACHE[rep] = got
    return got


_VALIDATION_CACHE: dict = {}


def validate(rep: DiskQuiverRep) -> list:
    """Check every representation invariant; returns a list of violations
    naming the failing identity (empty for a valid representation)."""
    got = _VALIDATION_CACHE.get(rep)
    if got is None:
        got = tuple(_validate_impl(rep))
        if len(_VALIDATION_CACHE) > 512:
            _VALIDATION_CACHE.clear()
        _VALIDATION_CACHE[rep] = got
    return list(got)


def _validate_impl(rep: DiskQuiverRep) -> list:
    violations = []
    if rep.can @ rep.t_psi != rep.t_phi @ rep.can:
        violations.append("can does not intertwine the monodromies (can∘T_psi != T_phi∘can)")
    if rep.var @ rep.t_phi != rep.t_psi @ rep.var:
        violations.append("var does not intertwine the monodromies (var∘T_phi != T_psi∘var)")
    if violations:
        return violations
    try:
        a = _analysis(rep)
    except NonCyclotomicEigenvalue:
        for name, t in (("t_psi", rep.t_psi), ("t_phi", rep.t_phi)):
            try:
                quasi_unipotent_split(t)
            except NonCyclotomicEigenvalue:
                violations.append(f"{name} is not quasi-unipotent")
        return violations
    if (a.v_u @ a.c_u) != a.n_u:
        violations.append("var∘can != N on the unipotent summand of psi")
    if (a.c_u @ a.v_u) != a.m_u:
        violations.append("can∘var != N on the unipotent summand of phi")
    for d in a.orders:
        if d == 1:
            continue
        pd, fd = a.psi_iso[d], a.phi_iso[d]
        if pd.dim != fd.dim:
            violations.append(
                f"order-{d} isotypic summands of psi and phi have different dimensions"
            )
            continue
        c_d = _restrict(rep.can, pd, fd)
        if c_d.rank() != pd.dim:
            violations.append(f"can is not an isomorphism on the order-{d} isotypic summand")
            continue
        v_d = _restrict(rep.var, fd, pd)
        if (v_d @ c_d).rank() != pd.dim:
            violations.append(f"var∘can is singular on the order-{d} isotypic summand")
    return violations


def require_valid(rep: DiskQuiverRep) -> None:
    violations = validate(rep)
    if violations:
        raise ValueError("invalid quiver representation: " + "; ".join(violations))


# ---------------------------------------------------------------------------
# the disk calculus


def decomposes(rep: DiskQuiverRep) -> bool:
    """Decomposition criterion: Im(can) ∩ Ker(var) = 0 and the two together
    fill the vanishing cycles."""
    require_valid(rep)
    image = rep.can.image()
    kernel = rep.var.kernel()
    return intersect(image, kernel).dim == 0 and image.dim + kernel.dim == rep.phi_dim


def stalk(rep: DiskQuiverRep) -> tuple:
    """Stalk cohomology (H^-1, H^0) at the origin: kernel and cokernel of can
    on the unipotent summands; nontrivial eigenvalues contribute nothing."""
    require_valid(rep)
    a = _analysis(rep)
    r = a.c_u.rank()
    return (a.psi_u.dim - r, a.phi_u.dim - r)


def costalk(rep: DiskQuiverRep) -> tuple:
    """Costalk cohomology (H^0, H^1): kernel and cokernel of var on the
    unipotent summands."""
    require_valid(rep)
    a = _analysis(rep)
    r = a.v_u.rank()
    return (a.phi_u.dim - r, a.psi_u.dim - r)


@dataclass(frozen=True)
class CsSlot:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CsSequenceReport:
    slots: tuple
    term_dims: tuple  # (stalk H^-1, stalk H^0, psi^u, costalk H^0, costalk H^1)

    @property
    def exact(self) -> bool:
        return all(s.ok for s in self.slots)

    def lines(self):
        return [f"[{'pass' if s.ok else 'FAIL'}] {s.name}" + (f": {s.detail}" if s.detail else "") for s in self.slots]


def cs_sequence(rep: DiskQuiverRep) -> CsSequenceReport:
    """Four-term sequence built from stalk, costalk and N data, with an
    exactness verdict at every slot.

    In even degrees: 0 -> stalk H^-1 -> psi^u -N-> psi^u(-1) -> costalk H^1 -> 0;
    in odd degrees: 0 -> costalk H^0 -> stalk H^0 -> 0.
    """
    require_valid(rep)
    a = _analysis(rep)
    ker_c = a.c_u.kernel()
    ker_n = a.n_u.kernel()
    im_n = a.n_u.image()
    im_v = a.v_u.image()
    im_c = a.c_u.image()
    ker_v = a.v_u.kernel()
    meet = intersect(im_c, ker_v)
    join = sum_spaces(im_c, ker_v)
    slots = (
        CsSlot("stalk injects into nearby cycles", True),
        CsSlot(
            "exactness at invariants (ker N = ker can)",
            ker_n == ker_c,
            f"dim ker N = {ker_n.dim}, dim ker can = {ker_c.dim}",
        ),
        CsSlot(
            "exactness at coinvariants (im N = im var)",
            im_n == im_v,
            f"dim im N = {im_n.dim}, dim im var = {im_v.dim}",
        ),
        CsSlot("nearby cycles surject onto costalk", True),
        CsSlot(
            "origin part splits injectively (im can ∩ ker var = 0)",
            meet.dim == 0,
            f"dim overlap = {meet.dim}",
        ),
        CsSlot(
            "origin part splits surjectively (im can + ker var = phi^u)",
            join.dim == a.phi_u.dim,
            f"dim span = {join.dim} of {a.phi_u.dim}",
        ),
    )
    c_rank = a.c_u.rank()
    v_rank = a.v_u.rank()
    dims = (
        a.psi_u.dim - c_rank,
        a.phi_u.dim - c_rank,
        a.psi_u.dim,
        a.phi_u.dim - v_rank,
        a.psi_u.dim - v_rank,
    )
    return CsSequenceReport(slots, dims)


def local_invariant_cycle(rep: DiskQuiverRep) -> bool:
    """True iff ker(can) = ker(N) inside the unipotent nearby cycles."""
    require_valid(rep)
    a = _analysis(rep)
    return a.c_u.kernel() == a.n_u.kernel()


def dualize(rep: DiskQuiverRep) -> DiskQuiverRep:
    """Verdier duality: transpose-inverse monodromies, can and var swapped by
    transposition.  One sign is forced: the dual nilpotent logarithm is -N^t,
    so var' = -can^t keeps var'∘can' equal to the new N."""
    require_valid(rep)
    return DiskQuiverRep(
        rep.psi_dim,
        rep.phi_dim,
        rep.t_psi.inverse().transpose(),
        rep.t_phi.inverse().transpose(),
        rep.var.transpose(),
        rep.can.transpose().scale(-1),
    )


def decompose_indecomposables(rep: DiskQuiverRep) -> Counter:
    """Multiset of indecomposable summands.

    Nontrivial eigenvalue orders split off as type-E summands whose sizes are
    the Jordan type of N on the isotypic summand, read over the cyclotomic
    field.  On the unipotent part, the multiplicity of each string summand is
    an inclusion-exclusion of ranks of words in can and var: for a word w
    with the two one-letter extensions x (at the source) and y (at the
    target), the count is rank(w) - rank(wx) - rank(yw) + rank(ywx).
    """
    require_valid(rep)
    a = _analysis(rep)
    out: Counter = Counter()

    for d in a.orders:
        if d == 1:
            continue
        space = a.psi_iso[d]
        f = totient(d)
        n_d = _restrict(a.split_psi.log, space, space)
        ranks = [space.dim]
        power = RationalMatrix.identity(space.dim)
        while ranks[-1] > 0:
            power = power @ n_d
            ranks.append(power.rank())
        if any(r % f for r in ranks):
            raise RuntimeError("isotypic Jordan ranks are not divisible by the field degree")
        field_ranks = [r // f for r in ranks] + [0, 0]
        for i in range(1, len(ranks) + 1):
            count = (field_ranks[i - 1] - field_ranks[i]) - (field_ranks[i] - field_ranks[i + 1])
            if count:
                out[IndecompSummand("E", i, d)] += count

    c, v = a.c_u, a.v_u
    n, m = a.n_u, a.m_u
    psi_d, phi_d = a.psi_u.dim, a.phi_u.dim
    top = max(psi_d, phi_d) + 1
    n_pow = [RationalMatrix.identity(psi_d)]
    m_pow = [RationalMatrix.identity(phi_d)]
    for _ in range(top + 1):
        n_pow.append(n_pow[-1] @ n)
        m_pow.append(m_pow[-1] @ m)

    def rank(mat):
        return mat.rank()

    d0 = rank(m_pow[0]) - rank(c) - rank(v) + rank(n_pow[1])
    if d0:
        out[IndecompSummand("D", 0)] += d0
    for i in range(1, top + 1):
        a_i = rank(n_pow[i - 1] @ v) - rank(n_pow[i]) - rank(m_pow[i]) + rank(c @ n_pow[i])
        b_i = rank(c @ n_pow[i - 1]) - rank(m_pow[i]) - rank(n_pow[i]) + rank(n_pow[i] @ v)
        c_i = rank(n_pow[i - 1]) - rank(n_pow[i - 1] @ v) - rank(c @ n_pow[i - 1]) + rank(m_pow[i])
        d_i = rank(m_pow[i]) - rank(m_pow[i] @ c) - rank(n_pow[i] @ v) + rank(n_pow[i + 1])
        for fam, cnt in (("A", a_i), ("B", b_i), ("C", c_i), ("D", d_i)):
            if cnt < 0:
                raise RuntimeError(f"negative multiplicity for family {fam} size {i}")
            if cnt:
                out[IndecompSummand(fam, i)] += cnt

    total_psi = sum(s.dims[0] * k for s, k in out.items())
    total_phi = sum(s.dims[1] * k for s, k in out.items())
    if (total_psi, total_phi) != (rep.psi_dim, rep.phi_dim):
        raise RuntimeError(
            f"summand dimensions ({total_psi},{total_phi}) do not fill the representation "
            f"({rep.psi_dim},{rep.phi_dim})"
        )
    return out


def is_self_dual(rep: DiskQuiverRep) -> bool:
    """Self-duality detected on summand multisets: duality swaps A and B and
    fixes C, D and E."""
    ms = decompose_indecomposables(rep)
    return all(
        ms[s] == ms[IndecompSummand("B" if s.family == "A" else "A", s.size)]
        for s in ms
        if s.family in ("A", "B")
    )


@dataclass(frozen=True)
class TheoremReport:
    decomposes: bool
    cs_exact: bool
    local_invariant_cycle: bool
    summands: tuple

    @property
    def verdicts_agree(self) -> bool:
        return self.decomposes == self.cs_exact == self.local_invariant_cycle


def theorem_a4_check(rep: DiskQuiverRep) -> TheoremReport:
    """For a self-dual representation, the decomposition criterion, exactness
    of the four-term sequence, and the local invariant cycle property are
    equivalent; any disagreement is a hard failure."""
    require_valid(rep)
    ms = decompose_indecomposables(rep)
    if not is_self_dual(rep):
        raise ValueError("representation is not self-dual (A/B summand multiplicities differ)")
    report = TheoremReport(
        decomposes(rep),
        cs_sequence(rep).exact,
        local_invariant_cycle(rep),
        tuple(sorted(((s, k) for s, k in ms.items()), key=lambda t: t[0].sort_key())),
    )
    if not report.verdicts_agree:
        raise RuntimeError(
            "equivalence failure: decomposition criterion, sequence exactness and "
            f"local invariant cycle disagree: {report}"
        )
    return report


def realize(spec: hodge.LmhsSpec, phantom: hodge.HodgeDeligneDiagram | None = None) -> DiskQuiverRep:
    """Matrix model of a limiting MHS plus a phantom summand.

    Each unipotent string of length l becomes an intermediate-extension block
    of size l; strings with eigenvalue order d > 1 are grouped into Galois
    orbits of totient(d) complex lines, each orbit giving one type-E block;
    each phantom unit becomes a skyscraper.  The result always satisfies the
    decomposition criterion.
    """
    summands = []
    grouped: dict = {}
    for s in spec.strings:
        if s.order == 1:
            summands.extend([IndecompSummand("C", s.length)] * s.multiplicity)
        else:
            key = (s.order, s.length)
            grouped[key] = grouped.get(key, 0) + s.multiplicity
    for (d, length), total in sorted(grouped.items()):
        f = totient(d)
        if total % f:
            raise ValueError(
                f"cannot realize over Q: order-{d} strings of length {length} have total "
                f"multiplicity {total}, not a multiple of totient({d}) = {f}"
            )
        summands.extend([IndecompSummand("E", length, d)] * (total // f))
    if phantom is not None:
        summands.extend([IndecompSummand("D", 0)] * phantom.mass)
    return from_summands(summands)
