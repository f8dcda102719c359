"""Multi-parameter degenerations over a polydisk.

The limit of an r-parameter family is carried by explicit data: a basis
labeled by Hodge bidegrees and per-parameter root-of-unity exponents, plus r
commuting nilpotent logarithms, each lowering the bidegree by (1, 1).  Local
intersection cohomology at the origin is the cohomology of the Koszul complex
of the logarithms, restricted to the part where the finite monodromies of the
remaining parameters act trivially; the term in Koszul slot l is the image
subspace N_{j_1}...N_{j_l} H with a Tate twist by l.

From these local groups the module assembles the decomposition of the total
intersection cohomology into (codimension, slot) cells, the coniveau and
shifted perverse filtrations, and the right-exact sequence relating the
central fiber to the multi-monodromy invariants.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .hodge import DiagramUnderflow, HodgeDeligneDiagram, LmhsSpec
from .ratlin import DimensionMismatch, RationalMatrix
from .reports import Report


@dataclass(frozen=True)
class MultiLmhs:
    """Limit data of an r-parameter degeneration in one cohomological degree."""

    r: int
    labels: tuple  # ((p, q), ...) per basis element
    ss: tuple  # per basis element, ((a_1, d_1), ..., (a_r, d_r))
    logs: tuple  # r commuting RationalMatrix, each lowering (p, q) by (1, 1)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.ss) != n:
            raise DimensionMismatch("one eigenvalue label tuple per basis element")
        for labels in self.ss:
            if len(labels) != self.r:
                raise DimensionMismatch("one (exponent, order) pair per parameter")
        if len(self.logs) != self.r:
            raise DimensionMismatch("one nilpotent logarithm per parameter")
        for m in self.logs:
            if m.rows != n or m.cols != n:
                raise DimensionMismatch("logarithm shape does not match the basis")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def validate(self) -> list:
        """Commutation, graded-lowering, and eigenvalue-preservation checks."""
        problems = []
        for i in range(self.r):
            for j in range(i + 1, self.r):
                if self.logs[i] @ self.logs[j] != self.logs[j] @ self.logs[i]:
                    problems.append(f"logarithms {i + 1} and {j + 1} do not commute")
        for jdx, m in enumerate(self.logs):
            for row in range(self.dim):
                for col in range(self.dim):
                    if m.entries[row][col] == 0:
                        continue
                    p, q = self.labels[col]
                    if self.labels[row] != (p - 1, q - 1):
                        problems.append(
                            f"logarithm {jdx + 1} does not lower the bidegree by (1,1) "
                            f"at entry ({row},{col})"
                        )
                    if self.ss[row] != self.ss[col]:
                        problems.append(
                            f"logarithm {jdx + 1} does not commute with the finite "
                            f"monodromy labels at entry ({row},{col})"
                        )
        return problems

    def require_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise ValueError("invalid multi-parameter limit: " + "; ".join(problems))

    def invariant_indices(self, I) -> list:
        """Basis elements on which every finite monodromy off I acts trivially."""
        out = []
        for idx, labels in enumerate(self.ss):
            if all(labels[j] == (0, 1) for j in range(self.r) if (j + 1) not in I):
                out.append(idx)
        return out


def lmhs_to_multi(spec: LmhsSpec) -> MultiLmhs:
    """One-parameter bridge: the string model as explicit matrices."""
    labels = []
    ss = []
    entries = []
    for s in spec.strings:
        for _ in range(s.multiplicity):
            start = len(labels)
            p, q = s.top
            for j in range(s.length):
                labels.append((p - j, q - j))
                ss.append(((s.exponent, s.order),))
            for j in range(s.length - 1):
                entries.append((start + j + 1, start + j))
    n = len(labels)
    log = [[Fraction(0)] * n for _ in range(n)]
    for row, col in entries:
        log[row][col] = Fraction(1)
    matrix = RationalMatrix.from_rows(log) if n else RationalMatrix.zeros(0, 0)
    return MultiLmhs(1, tuple(labels), tuple(ss), (matrix,))


def _graded_column_space(vectors, labels):
    """Split spanning vectors by bidegree and reduce each graded piece.

    Vectors here are always homogeneous (the logs are graded maps applied to
    coordinate vectors), so membership of a vector in a piece is detected by
    its support.
    """
    by_label: dict = {}
    for v in vectors:
        support = [i for i, x in enumerate(v) if x]
        if not support:
            continue
        label = labels[support[0]]
        if any(labels[i] != label for i in support):
            raise ValueError("non-homogeneous spanning vector")
        by_label.setdefault(label, []).append(v)
    out = {}
    for label, vecs in sorted(by_label.items()):
        m, pivots = RationalMatrix.from_rows(vecs)._rref()
        basis = [tuple(m[i]) for i in range(len(pivots))]
        if basis:
            out[label] = basis
    return out


@dataclass(frozen=True)
class KoszulComplex:
    """Koszul complex of the logarithms off I, with graded image-subspace terms."""

    h: MultiLmhs
    subset: tuple  # I, sorted parameter indices (1-based)
    terms: tuple  # per slot: ((J, basis columns), ...) with J the product subset
    differentials: tuple  # RationalMatrix per consecutive pair of slots
    term_labels: tuple  # per slot, (p, q) label of each basis column (untwisted)

    def term_dims(self) -> tuple:
        return tuple(len(lbls) for lbls in self.term_labels)

    def ranks(self) -> tuple:
        return tuple(d.rank() for d in self.differentials)


def _apply_log_product(h: MultiLmhs, js, vector):
    v = vector
    for j in js:
        v = h.logs[j - 1].apply(v)
    return v


def koszul_complex(h: MultiLmhs, I=()) -> KoszulComplex:
    """Build the complex H -> sum_j N_j H(-1) -> sum_(j1<j2) N_j1 N_j2 H(-2) ...
    over the parameters off I, with alternating-sign differentials.

    Terms are image subspaces; the slot-l term carries a Tate twist by l,
    recorded by the caller when reading off diagrams.
    """
    h.require_valid()
    free = [j for j in range(1, h.r + 1) if j not in set(I)]
    n = h.dim
    coords = [tuple(Fraction(1 if i == k else 0) for i in range(n)) for k in range(n)]

    slots = []
    for ell in range(len(free) + 1):
        slot = []
        for js in combinations(free, ell):
            vectors = [_apply_log_product(h, js, v) for v in coords]
            graded = _graded_column_space(vectors, h.labels)
            basis = [v for _, vecs in sorted(graded.items()) for v in vecs]
            slot.append((js, basis))
        slots.append(slot)

    term_labels = []
    for slot in slots:
        lbls = []
        for js, basis in slot:
            for v in basis:
                support = [i for i, x in enumerate(v) if x]
                lbls.append(h.labels[support[0]])
        term_labels.append(tuple(lbls))

    diffs = []
    for ell in range(len(slots) - 1):
        src, dst = slots[ell], slots[ell + 1]
        dst_offsets = {}
        offset = 0
        for js, basis in dst:
            dst_offsets[js] = offset
            offset += len(basis)
        dst_dim = offset
        src_dim = sum(len(b) for _, b in src)
        columns = []
        for js, basis in src:
            for v in basis:
                col = [Fraction(0)] * dst_dim
                for j in free:
                    if j in js:
                        continue
                    target = tuple(sorted(js + (j,)))
                    sign = (-1) ** sum(1 for x in js if x < j)
                    image = h.logs[j - 1].apply(v)
                    if all(x == 0 for x in image):
                        continue
                    tgt_basis = dict(dst)[target]
                    coeffs = _solve_in_span(tgt_basis, image)
                    base = dst_offsets[target]
                    for idx, c in enumerate(coeffs):
                        col[base + idx] += sign * c
                columns.append(tuple(col))
        diffs.append(
            RationalMatrix.from_columns(columns, dst_dim)
            if src_dim
            else RationalMatrix.zeros(dst_dim, 0)
        )

    for a, b in zip(diffs, diffs[1:]):
        if not (b @ a).is_zero():
            raise RuntimeError("Koszul differentials do not square to zero")
    return KoszulComplex(h, tuple(sorted(I)), tuple(tuple(s) for s in slots), tuple(diffs), tuple(term_labels))


def _solve_in_span(basis, vector):
    """Coefficients of vector in the given independent spanning set; exact."""
    a = RationalMatrix.from_columns(list(basis), len(vector))
    y = RationalMatrix.from_columns([vector], len(vector))
    merged, pivots = a.hstack(y)._rref()
    if any(p >= a.cols for p in pivots):
        raise ValueError("vector does not lie in the span")
    coeffs = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivots):
        coeffs[pc] = merged[r][a.cols]
    return coeffs


def ih_local(h: MultiLmhs, I=(), ell: int = 0) -> HodgeDeligneDiagram:
    """Local intersection cohomology at the origin in Koszul slot ell,
    computed on the invariants of the finite monodromies off I, with the
    slot twist applied; zero whenever ell exceeds max(r - |I| - 1, 0)."""
    h.require_valid()
    inv = _restrict_to_invariants(h, I)
    complex_ = koszul_complex(inv, I)
    if ell < 0 or ell >= len(complex_.term_labels):
        return HodgeDeligneDiagram.empty()
    dims = complex_.term_dims()

    def boundary(idx):
        if 0 <= idx < len(complex_.differentials):
            return complex_.differentials[idx]
        if idx == -1:
            return RationalMatrix.zeros(dims[0], 0)
        return RationalMatrix.zeros(0, dims[-1])

    out = boundary(ell)
    inc = boundary(ell - 1)
    labels = complex_.term_labels[ell]
    table: dict = {}
    # per-bidegree dimension count: the differentials are graded, so the
    # cohomology splits by label
    for label in sorted(set(labels)):
        idxs = [i for i, l in enumerate(labels) if l == label]
        sel = _select_columns_matrix(len(labels), idxs)
        ker_dim = (out @ sel).kernel().dim
        img_prev = _restrict_image_dim(inc, idxs)
        mult = ker_dim - img_prev
        if mult < 0:
            raise RuntimeError("graded image exceeds graded kernel")
        if mult:
            p, q = label
            table[(p + ell, q + ell)] = mult
    return HodgeDeligneDiagram.from_dict(table)


def _select_columns_matrix(total: int, idxs) -> RationalMatrix:
    cols = []
    for i in idxs:
        cols.append(tuple(Fraction(1 if k == i else 0) for k in range(total)))
    return RationalMatrix.from_columns(cols, total)


def _restrict_image_dim(m: RationalMatrix, idxs) -> int:
    if m.cols == 0:
        return 0
    rows = [m.entries[i] for i in idxs]
    if not rows:
        return 0
    return RationalMatrix.from_rows(rows).rank()


def _restrict_to_invariants(h: MultiLmhs, I) -> MultiLmhs:
    keep = h.invariant_indices(I)
    if len(keep) == h.dim:
        return h
    index = {old: new for new, old in enumerate(keep)}
    labels = tuple(h.labels[i] for i in keep)
    ss = tuple(h.ss[i] for i in keep)
    logs = []
    for m in h.logs:
        rows = [[Fraction(0)] * len(keep) for _ in keep]
        for new_r, old_r in enumerate(keep):
            for new_c, old_c in enumerate(keep):
                rows[new_r][new_c] = m.entries[old_r][old_c]
        # eigenvalue labels are preserved by the logs, so the restriction is safe
        logs.append(RationalMatrix.from_rows(rows) if keep else RationalMatrix.zeros(0, 0))
    return MultiLmhs(h.r, labels, ss, tuple(logs))


# ---------------------------------------------------------------------------
# strata input and the global decomposition


@dataclass(frozen=True)
class StratumData:
    invariants: tuple = ()  # ((degree, HodgeDeligneDiagram), ...)
    limit: tuple = ()  # ((degree, MultiLmhs), ...) when slot > 0 groups are needed

    def invariant(self, degree: int) -> HodgeDeligneDiagram | None:
        for d, diag in self.invariants:
            if d == degree:
                return diag
        return None

    def limit_at(self, degree: int) -> MultiLmhs | None:
        for d, h in self.limit:
            if d == degree:
                return h
        return None


@dataclass(frozen=True)
class StrataInput:
    """Per subset I of parameters, the data of the codimension-|I| stratum."""

    r: int
    strata: tuple  # ((I sorted tuple, StratumData), ...); I = () is the open stratum

    def stratum(self, I) -> StratumData | None:
        key = tuple(sorted(I))
        for subset, data in self.strata:
            if subset == key:
                return data
        return None


class MissingStratum(ValueError):
    pass


def _cell(strata: StrataInput, I, degree: int, ell: int) -> HodgeDeligneDiagram:
    if degree < 0:
        return HodgeDeligneDiagram.empty()
    data = strata.stratum(I)
    if data is None:
        raise MissingStratum(f"no data for stratum {tuple(I)}")
    if ell == 0:
        inv = data.invariant(degree)
        if inv is not None:
            return inv
    h = data.limit_at(degree)
    if h is None:
        raise MissingStratum(f"stratum {tuple(I)} lacks limit data in degree {degree}")
    return ih_local(h, I, ell)


@dataclass(frozen=True)
class IhDecomposition:
    m: int
    r: int
    cells: tuple  # ((c, ell, HodgeDeligneDiagram), ...)

    def cell(self, c: int, ell: int) -> HodgeDeligneDiagram:
        for cc, ll, diag in self.cells:
            if (cc, ll) == (c, ell):
                return diag
        return HodgeDeligneDiagram.empty()

    def total(self) -> HodgeDeligneDiagram:
        out = HodgeDeligneDiagram.empty()
        for _, _, diag in self.cells:
            out = out + diag
        return out

    def coniveau(self, alpha: int) -> HodgeDeligneDiagram:
        out = HodgeDeligneDiagram.empty()
        for c, _, diag in self.cells:
            if c >= alpha:
                out = out + diag
        return out

    def perverse(self, alpha: int) -> HodgeDeligneDiagram:
        out = HodgeDeligneDiagram.empty()
        for c, ell, diag in self.cells:
            if ell + c >= alpha:
                out = out + diag
        return out

    def filtrations_ok(self) -> bool:
        """Coniveau sits inside the shifted perverse filtration, and each cell
        is the bigraded piece of the pair."""
        for alpha in range(0, self.r + 2):
            if not self.coniveau(alpha) <= self.perverse(alpha):
                return False
        for c, ell, diag in self.cells:
            graded_n = self.coniveau(c) - self.coniveau(c + 1)
            piece = HodgeDeligneDiagram.empty()
            for cc, ll, d2 in self.cells:
                if cc == c and ll == ell:
                    piece = piece + d2
            if not (piece == diag and piece <= graded_n):
                return False
        return True


def ih_decomposition(m: int, strata: StrataInput, r: int) -> IhDecomposition:
    """Cells (codimension c, slot ell) of the total intersection cohomology in
    degree m, over c <= min(r, m//2) and ell <= max(0, r - c - 1)."""
    cells = []
    for c in range(0, min(r, m // 2) + 1):
        for ell in range(0, max(0, r - c - 1) + 1):
            total = HodgeDeligneDiagram.empty()
            for I in combinations(range(1, r + 1), c):
                total = total + _cell(strata, I, m - ell, ell)
            cells.append((c, ell, total))
    return IhDecomposition(m, r, tuple(cells))


def polydisk_cs(m: int, decomposition: IhDecomposition, invariants: HodgeDeligneDiagram) -> Report:
    """Right-exactness of the polydisk sequence: the middle term modulo the
    positive-slot open-stratum cells surjects onto the multi-monodromy
    invariants, with kernel the positive-codimension part."""
    report = Report()
    loc = f"m={m}"
    cell00 = decomposition.cell(0, 0)
    report.add(
        "polydisk-invariants-cell",
        loc,
        cell00 == invariants,
        "" if cell00 == invariants else f"cell (0,0) {cell00} differs from invariants {invariants}",
    )
    middle = decomposition.total()
    open_positive = HodgeDeligneDiagram.empty()
    for c, ell, diag in decomposition.cells:
        if c == 0 and ell >= 1:
            open_positive = open_positive + diag
    try:
        quotient = middle - open_positive
    except DiagramUnderflow:
        report.add("polydisk-cs-right-exact", loc, False, "open-stratum cells exceed the middle term")
        return report
    ok = invariants <= quotient
    report.add(
        "polydisk-cs-right-exact",
        loc,
        ok,
        "" if ok else "invariants do not embed in the reduced middle term",
    )
    kernel = quotient - invariants if ok else None
    niveau1 = decomposition.coniveau(1)
    ok2 = kernel is not None and kernel == niveau1
    report.add(
        "polydisk-cs-kernel-is-coniveau",
        loc,
        ok2,
        "" if ok2 else "kernel of the surjection differs from the positive-codimension part",
    )
    report.add(
        "polydisk-filtration-containment",
        loc,
        decomposition.filtrations_ok(),
        "",
    )
    return report
