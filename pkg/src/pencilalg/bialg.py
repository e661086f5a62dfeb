"""
Index-one unital algebras as dual pairs.

When the spectrum sits inside {0, 1, ∞} and V_N(1) is spanned by the unity,
the algebra splits as ``K·1 ⊕ H ⊕ H'`` with ``H = V_N(0)`` and
``H' = V_N(∞)``.  Then ``x y = 0`` and

    y x = -A(y, x)·1 + B(y, x) + C(y, x),   B ∈ H, C ∈ H',

where ``A`` is a nondegenerate pairing ``<x, y> = A(y, x)``.  ``B`` and
``C`` are dual to the multiplications of H' and H:

    <B(y2, x), y1> = <x, y1 y2>,     <x2, C(y, x1)> = <x1 x2, y>.

This module extracts that data, checks the identity system it must obey,
and runs the construction backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, check_associativity, find_unity, solve_row_combination
from .errors import NoUnity, NotAssociative, NotIndexOne, SingularMatrix, SingularPairing
from .exact import Matrix, Q, unit_vec, vadd, vscale, vsub, zero_vec
from .jordan import decompose
from .pencil import INF, apply_functional, lie_index, sample_generic

Table = tuple  # table[i][j] -> coordinate tuple


def _table(t) -> Table:
    if isinstance(t, Algebra):
        return t.table
    return tuple(tuple(tuple(Q(c) for c in cell) for cell in row) for row in t)


def _tmul(table: Table, u, v) -> tuple:
    h = len(table)
    out = [Fraction(0)] * h
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            for k, t in enumerate(table[i][j]):
                if t:
                    out[k] += c * t
    return tuple(out)


def _opposite(table: Table) -> Table:
    h = len(table)
    return tuple(tuple(table[j][i] for j in range(h)) for i in range(h))


def _table_associative(table: Table) -> bool:
    h = len(table)
    e = [unit_vec(h, i) for i in range(h)]
    return all(
        _tmul(table, e[i], _tmul(table, e[j], e[k])) == _tmul(table, _tmul(table, e[i], e[j]), e[k])
        for i in range(h) for j in range(h) for k in range(h)
    )


# ---------------------------------------------------------------- split data


@dataclass(frozen=True)
class SplitData:
    """Dual-pair data; x-coordinates are in H, y-coordinates in H'.

    ``pairing[i][j] = <x_i, y_j>``; ``a_scalar[j][i] = A(y_j, x_i)``;
    ``b_tensor[j][i]`` and ``c_tensor[j][i]`` hold the coordinates of
    ``B(y_j, x_i)`` in H and ``C(y_j, x_i)`` in H'.
    """

    h_table: Table
    hprime_table: Table
    pairing: Matrix
    b_tensor: tuple
    c_tensor: tuple
    a_scalar: Matrix
    basis: Matrix | None = None  # rows: 1, x_1..x_h, y_1..y_h in input coordinates
    functional: tuple | None = None

    @property
    def h(self) -> int:
        return len(self.h_table)

    @property
    def x_names(self) -> tuple:
        return ("x",) if self.h == 1 else tuple(f"x{i + 1}" for i in range(self.h))

    @property
    def y_names(self) -> tuple:
        return ("y",) if self.h == 1 else tuple(f"y{i + 1}" for i in range(self.h))

    # bilinear maps on coordinate vectors
    def xmul(self, u, v) -> tuple:
        return _tmul(self.h_table, u, v)

    def ymul(self, u, v) -> tuple:
        return _tmul(self.hprime_table, u, v)

    def pair(self, x, y) -> Fraction:
        p = self.pairing
        return sum((x[i] * p[i, j] * y[j] for i in range(self.h) for j in range(self.h) if x[i] and y[j]), Fraction(0))

    def _bilinear(self, tensor, y, x) -> tuple:
        out = zero_vec(self.h)
        for j, yj in enumerate(y):
            for i, xi in enumerate(x):
                if yj and xi:
                    out = vadd(out, vscale(yj * xi, tensor[j][i]))
        return out

    def A(self, y, x) -> Fraction:
        a = self.a_scalar
        return sum((y[j] * a[j, i] * x[i] for j in range(self.h) for i in range(self.h) if y[j] and x[i]), Fraction(0))

    def B(self, y, x) -> tuple:
        return self._bilinear(self.b_tensor, y, x)

    def C(self, y, x) -> tuple:
        return self._bilinear(self.c_tensor, y, x)

    def B_L(self, y1, x) -> tuple:
        """``<B_L(y1, x), y2> = <x, y1 y2>``."""
        pinv = self.pairing.inverse()
        r = [self.pair(x, self.ymul(y1, unit_vec(self.h, l))) for l in range(self.h)]
        return (Matrix([r], cols=self.h) * pinv).row(0)

    def C_R(self, y, x2) -> tuple:
        """``<x1, C_R(y, x2)> = <x1 x2, y>``."""
        pinv_t = self.pairing.inverse().T
        r = [self.pair(self.xmul(unit_vec(self.h, l), x2), y) for l in range(self.h)]
        return (Matrix([r], cols=self.h) * pinv_t).row(0)


def _dual_tensors(h_table: Table, hprime_table: Table, pairing: Matrix) -> tuple[tuple, tuple]:
    """B and C induced by duality from the two multiplications."""
    h = len(h_table)
    try:
        pinv = pairing.inverse()
    except SingularMatrix:
        raise SingularPairing("pairing matrix is singular") from None
    e = [unit_vec(h, i) for i in range(h)]

    def pair(x, y):
        return sum((x[i] * pairing[i, j] * y[j] for i in range(h) for j in range(h) if x[i] and y[j]), Fraction(0))

    b = []
    c = []
    for j in range(h):
        brow, crow = [], []
        for i in range(h):
            # <B(y_j, x_i), y_l> = <x_i, y_l y_j>
            r = [pair(e[i], _tmul(hprime_table, e[l], e[j])) for l in range(h)]
            brow.append((Matrix([r], cols=h) * pinv).row(0))
            # <x_l, C(y_j, x_i)> = <x_i x_l, y_j>
            r = [pair(_tmul(h_table, e[i], e[l]), e[j]) for l in range(h)]
            crow.append((Matrix([r], cols=h) * pinv.T).row(0))
        b.append(tuple(brow))
        c.append(tuple(crow))
    return tuple(b), tuple(c)


def from_dual_pair(h_table, hprime_table, pairing) -> SplitData:
    """SplitData with B and C induced by duality and ``A(y, x) = <x, y>``."""
    ht, hpt = _table(h_table), _table(hprime_table)
    p = pairing if isinstance(pairing, Matrix) else Matrix(pairing)
    if p.shape != (len(ht), len(ht)) or len(hpt) != len(ht):
        raise SingularPairing(f"pairing of shape {p.shape} does not match dimensions {len(ht)}, {len(hpt)}")
    b, c = _dual_tensors(ht, hpt, p)
    return SplitData(ht, hpt, p, b, c, p.T)


def split(a: Algebra, f: Sequence | None = None, seed: int = 0) -> SplitData:
    """Adapted basis ``1, x_1..x_h, y_1..y_h`` with ``<x_i, y_j> = delta_ij``."""
    one = find_unity(a)
    if one is None:
        raise NoUnity("algebra has no unity")
    if f is None:
        f, _ = sample_generic(a, seed)
    f = tuple(Q(c) for c in f)
    dec = decompose(a, f)
    odd = [str(b.alpha) for b in dec.blocks if not (b.alpha.is_zero() or b.alpha.is_one() or b.alpha.is_infinity)]
    if odd:
        raise NotIndexOne("spectral blocks outside {0, 1, ∞}: " + ", ".join(odd))
    if dec.space(1).dim != 1:
        raise NotIndexOne(f"V_N(1) has dimension {dec.space(1).dim}, expected 1")
    f1 = apply_functional(f, one)
    if f1 == 0:
        raise SingularPairing("F vanishes on the unity")
    f = tuple(c / f1 for c in f)

    n = a.dim
    xs = list(dec.space(0).basis)
    raw_ys = list(dec.space(INF).basis)
    h = len(xs)
    if len(raw_ys) != h or 2 * h + 1 != n:
        raise NotIndexOne(f"H and H' have dimensions {h} and {len(raw_ys)}")

    def A_raw(y, x):
        return -apply_functional(f, a.mul(y, x))

    # choose y_j so that A(y_j, x_i) = delta_ij
    g = Matrix([[A_raw(raw_ys[k], xs[i]) for k in range(h)] for i in range(h)], cols=h)
    try:
        coeff = g.T.inverse() if h else g
    except SingularMatrix:
        raise SingularPairing("A(y, x) is degenerate on V_N(∞) × V_N(0)") from None
    ys = []
    for j in range(h):
        v = zero_vec(n)
        for k in range(h):
            if coeff[j, k]:
                v = vadd(v, vscale(coeff[j, k], raw_ys[k]))
        ys.append(v)

    basis = [one] + xs + ys

    def coords(v):
        c = solve_row_combination(basis, v, n)
        if c is None:
            raise NotIndexOne("adapted vectors do not span the algebra")
        return c

    h_table = tuple(tuple(coords(a.mul(xi, xj))[1 : 1 + h] for xj in xs) for xi in xs)
    hp_table = tuple(tuple(coords(a.mul(yi, yj))[1 + h :] for yj in ys) for yi in ys)
    a_rows, b_t, c_t = [], [], []
    for y in ys:
        arow, brow, crow = [], [], []
        for x in xs:
            c = coords(a.mul(y, x))
            arow.append(-c[0])
            brow.append(tuple(c[1 : 1 + h]))
            crow.append(tuple(c[1 + h :]))
        a_rows.append(arow)
        b_t.append(tuple(brow))
        c_t.append(tuple(crow))
    a_scalar = Matrix(a_rows, cols=h)
    return SplitData(h_table, hp_table, a_scalar.T, tuple(b_t), tuple(c_t), a_scalar, Matrix(basis, cols=n), f)


def swap_roles(s: SplitData) -> SplitData:
    """The same data read in the opposite algebra: H and H' trade places.

    In the opposite algebra V_N(0) and V_N(∞) are exchanged and both
    multiplications are reversed; the pairing is transposed and B, C are
    recomputed from their dualities.
    """
    return from_dual_pair(_opposite(s.hprime_table), _opposite(s.h_table), s.pairing.T)


# ---------------------------------------------------------------- identities


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    witness: tuple | None = None  # basis names of the failing tuple
    lhs: object = None
    rhs: object = None
    note: str = ""


IDENTITY_NAMES = ("a_b", "a_c", "a_x", "b_x", "c_x", "a_y", "b_y", "c_y", "rank1_eqn", "homo_eqn", "homo_eqn2")


@dataclass(frozen=True)
class IdentityReport:
    results: tuple

    def __getitem__(self, name: str) -> IdentityResult:
        return next(r for r in self.results if r.name == name)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failing(self) -> tuple:
        return tuple(r.name for r in self.results if not r.passed)


def _first_failure(name, tuples, evaluate) -> IdentityResult:
    for labels, args in tuples:
        lhs, rhs = evaluate(*args)
        if lhs != rhs:
            return IdentityResult(name, False, labels, lhs, rhs)
    return IdentityResult(name, True)


def _evaluate_identities(s: SplitData) -> dict:
    h = s.h
    ex = [unit_vec(h, i) for i in range(h)]
    xn, yn = s.x_names, s.y_names
    X = list(zip(xn, ex))
    Y = list(zip(yn, ex))
    zero = zero_vec(h)

    def brk_x(u, v):
        return vsub(s.xmul(u, v), s.xmul(v, u))

    def brk_y(u, v):
        return vsub(s.ymul(u, v), s.ymul(v, u))

    identities = {
        # triple (x1, y, x2)
        "a_b": (
            [((x1, y, x2), (u1, v, u2)) for x1, u1 in X for y, v in Y for x2, u2 in X],
            lambda x1, y, x2: (vadd(vscale(-s.A(y, x2), x1), s.xmul(x1, s.B(y, x2))), zero),
        ),
        # triple (y1, x, y2)
        "a_c": (
            [((y1, x, y2), (v1, u, v2)) for y1, v1 in Y for x, u in X for y2, v2 in Y],
            lambda y1, x, y2: (vadd(vscale(-s.A(y1, x), y2), s.ymul(s.C(y1, x), y2)), zero),
        ),
        "a_x": (
            [((y, x1, x2), (v, u1, u2)) for y, v in Y for x1, u1 in X for x2, u2 in X],
            lambda y, x1, x2: (s.A(y, s.xmul(x1, x2)), s.A(s.C(y, x1), x2)),
        ),
        "b_x": (
            [((y, x1, x2), (v, u1, u2)) for y, v in Y for x1, u1 in X for x2, u2 in X],
            lambda y, x1, x2: (s.B(y, s.xmul(x1, x2)), vadd(s.B(s.C(y, x1), x2), brk_x(s.B(y, x1), x2))),
        ),
        "c_x": (
            [((y, x1, x2), (v, u1, u2)) for y, v in Y for x1, u1 in X for x2, u2 in X],
            lambda y, x1, x2: (s.C(y, s.xmul(x1, x2)), s.C(s.C(y, x1), x2)),
        ),
        "a_y": (
            [((y1, y2, x), (v1, v2, u)) for y1, v1 in Y for y2, v2 in Y for x, u in X],
            lambda y1, y2, x: (s.A(s.ymul(y1, y2), x), s.A(y1, s.B(y2, x))),
        ),
        "b_y": (
            [((y1, y2, x), (v1, v2, u)) for y1, v1 in Y for y2, v2 in Y for x, u in X],
            lambda y1, y2, x: (s.B(s.ymul(y1, y2), x), s.B(y1, s.B(y2, x))),
        ),
        "c_y": (
            [((y1, y2, x), (v1, v2, u)) for y1, v1 in Y for y2, v2 in Y for x, u in X],
            lambda y1, y2, x: (s.C(s.ymul(y1, y2), x), vadd(s.C(y1, s.B(y2, x)), brk_y(y1, s.C(y2, x)))),
        ),
    }
    quads = [((x1, y1, x2, y2), (u1, v1, u2, v2)) for x1, u1 in X for y1, v1 in Y for x2, u2 in X for y2, v2 in Y]
    identities["rank1_eqn"] = (
        quads,
        lambda x1, y1, x2, y2: (s.pair(x1, y1) * s.pair(x2, y2), s.pair(s.B(y1, x1), s.C(y2, x2))),
    )
    identities["homo_eqn"] = (
        quads,
        lambda x1, y1, x2, y2: (
            s.pair(s.xmul(x1, x2), s.ymul(y1, y2)),
            s.pair(x2, s.ymul(y1, s.C(y2, x1)))
            + s.pair(s.xmul(s.B(y2, x1), x2), y1)
            - s.pair(s.B(y1, x2), s.C(y2, x1)),
        ),
    )
    identities["homo_eqn2"] = (quads, lambda x1, y1, x2, y2: _homo2_sides(s, x1, y1, x2, y2, x1, y2, x2, y1))
    return {name: _first_failure(name, *identities[name]) for name in IDENTITY_NAMES}


def _homo2_sides(s: SplitData, x1, y1, x2, y2, p, q, r, t) -> tuple:
    """``<x1x2, y1y2> + <p, q><r, t>`` against ``<B_L(y1,x2), C(y2,x1)> + <B(y2,x1), C_R(y1,x2)>``."""
    lhs = s.pair(s.xmul(x1, x2), s.ymul(y1, y2)) + s.pair(p, q) * s.pair(r, t)
    rhs = s.pair(s.B_L(y1, x2), s.C(y2, x1)) + s.pair(s.B(y2, x1), s.C_R(y1, x2))
    return lhs, rhs


def homo_eqn2_as_printed(s: SplitData) -> IdentityResult:
    """The symmetric form with the product term written ``<x1,y1><x2,y2>``.

    Rewriting ``homo_eqn`` through ``rank1_eqn`` actually produces
    ``<x1,y2><x2,y1>`` (the form used by ``check_identities``); the two
    agree when dim H = 1 and can differ otherwise.  Kept for comparison.
    """
    h = s.h
    ex = [unit_vec(h, i) for i in range(h)]
    X = list(zip(s.x_names, ex))
    Y = list(zip(s.y_names, ex))
    quads = [((a, b, c, d), (u1, v1, u2, v2)) for a, u1 in X for b, v1 in Y for c, u2 in X for d, v2 in Y]
    return _first_failure(
        "homo_eqn2_as_printed", quads, lambda x1, y1, x2, y2: _homo2_sides(s, x1, y1, x2, y2, x1, y1, x2, y2)
    )


def check_identities(s: SplitData) -> IdentityReport:
    """Evaluate every identity on all basis tuples; the first failing tuple is the witness.

    ``homo_eqn2`` is evaluated again with the roles of H and H' exchanged;
    it passes only if both evaluations pass.
    """
    results = _evaluate_identities(s)
    h2 = results["homo_eqn2"]
    if h2.passed:
        try:
            swapped = _evaluate_identities(swap_roles(s))["homo_eqn2"]
        except SingularPairing:
            swapped = h2
        if not swapped.passed:
            results["homo_eqn2"] = replace(swapped, note="fails with the roles of H and H' exchanged")
    return IdentityReport(tuple(results[n] for n in IDENTITY_NAMES))


def delta(s: SplitData, x) -> Matrix:
    """Matrix D of Δ(x) = Σ D_ij x_i ⊗ x_j, fixed by ``<Δ(x), y_a ⊗ y_b> = <x, y_a y_b>``."""
    h = s.h
    x = tuple(Q(c) for c in x)
    e = [unit_vec(h, i) for i in range(h)]
    r = Matrix([[s.pair(x, s.ymul(e[a], e[b])) for b in range(h)] for a in range(h)], cols=h)
    pinv = s.pairing.inverse()
    return pinv.T * r * pinv


# ---------------------------------------------------------------- construction


def assemble(s: SplitData) -> Algebra:
    """The (2h+1)-dimensional table on the basis 1, x.., y.. (no checks)."""
    h = s.h
    n = 2 * h + 1
    names = ("1",) + s.x_names + s.y_names
    e = [unit_vec(h, i) for i in range(h)]

    def embed(part: str, v) -> tuple:
        out = [Fraction(0)] * n
        off = 1 if part == "x" else 1 + h
        for i, c in enumerate(v):
            out[off + i] = c
        return tuple(out)

    table = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        table[0][i] = unit_vec(n, i)
        table[i][0] = unit_vec(n, i)
    for i in range(h):
        for j in range(h):
            table[1 + i][1 + j] = embed("x", s.xmul(e[i], e[j]))
            table[1 + h + i][1 + h + j] = embed("y", s.ymul(e[i], e[j]))
            # y_i x_j = -A(y_i, x_j) 1 + B(y_i, x_j) + C(y_i, x_j)
            v = vadd(embed("x", s.B(e[i], e[j])), embed("y", s.C(e[i], e[j])))
            table[1 + h + i][1 + j] = vadd(v, vscale(-s.A(e[i], e[j]), unit_vec(n, 0)))
    return Algebra(n, names, tuple(tuple(r) for r in table), unity=0)


def build_index1(h_table, hprime_table, pairing) -> Algebra:
    """Inverse of split: assemble the algebra of a dual pair, accepting it only if associative."""
    s = from_dual_pair(h_table, hprime_table, pairing)
    a = assemble(s)
    report = check_identities(s)
    failing = list(report.failing())
    if not _table_associative(s.h_table):
        failing.insert(0, "h_associative")
    if not _table_associative(s.hprime_table):
        failing.insert(0, "hprime_associative")
    bad = check_associativity(a)
    if bad is not None:
        if not failing:
            failing = ["associativity"]
        raise NotAssociative(
            f"dual pair does not give an associative algebra (violation at {bad.label()}); "
            f"failing identities: {', '.join(failing)}",
            failing=failing,
        )
    return a


@dataclass(frozen=True)
class Index1SpectrumResult:
    lie_index: int
    applicable: bool
    passed: bool | None
    alphas: tuple = field(default=())


def index1_spectrum_check(a: Algebra, f: Sequence | None = None, seed: int = 0) -> Index1SpectrumResult:
    """For unital index-1 algebras: are all blocks at 0, 1 or ∞?"""
    if find_unity(a) is None:
        raise NoUnity("algebra has no unity")
    idx = lie_index(a, seed)
    if idx != 1:
        return Index1SpectrumResult(idx, False, None)
    if f is None:
        f, _ = sample_generic(a, seed)
    dec = decompose(a, f)
    ok = all(b.alpha.is_zero() or b.alpha.is_one() or b.alpha.is_infinity for b in dec.blocks)
    return Index1SpectrumResult(idx, True, ok, tuple(str(b.alpha) for b in dec.blocks))
