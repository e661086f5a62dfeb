"""
Finite-dimensional associative algebras given by structure constants.

``table[i][j][k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.  Elements
are coordinate tuples in the algebra's basis; subspaces are stored by their
canonical RREF basis so that equality of subspaces is equality of values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DimensionMismatch, NotBracketClosed, SingularMatrix, UnknownName
from .exact import (
    Matrix,
    _gauss_jordan,
    Q,
    UnivariatePoly,
    Vector,
    is_zero_vec,
    rref_rows,
    unit_vec,
    vadd,
    vscale,
    vsub,
    zero_vec,
)


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^n, held as a canonical RREF basis of row vectors."""

    n: int
    basis: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", rref_rows([tuple(Q(x) for x in v) for v in self.basis], self.n))

    @classmethod
    def span(cls, vectors, n: int) -> "Subspace":
        return cls(n, tuple(vectors))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vec(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __contains__(self, v) -> bool:
        return Subspace(self.n, self.basis + (tuple(v),)).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        _check_n(self, other)
        return (self + other).dim == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_n(self, other)
        return Subspace(self.n, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        _check_n(self, other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.n)
        # a*U = b*W  <=>  (a, b) in left kernel of [U; -W]
        stacked = Matrix(list(self.basis) + [vscale(-1, w) for w in other.basis], cols=self.n)
        ker = stacked.left_kernel()
        vecs = [_combine(k[: self.dim], self.basis, self.n) for k in ker]
        return Subspace(self.n, tuple(vecs))

    def matrix(self) -> Matrix:
        return Matrix(self.basis, cols=self.n)

    def coords(self, v) -> Vector:
        """Coordinates of ``v`` in this subspace's basis (``v`` must lie in it)."""
        sol = solve_row_combination(self.basis, tuple(v), self.n)
        if sol is None:
            raise ValueError("vector is not in the subspace")
        return sol


def _check_n(a: Subspace, b: Subspace) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"subspaces of K^{a.n} and K^{b.n}")


def _combine(coeffs, vectors, n: int) -> Vector:
    out = zero_vec(n)
    for c, v in zip(coeffs, vectors):
        if c:
            out = vadd(out, vscale(c, v))
    return out


def solve_row_combination(rows: Sequence[Vector], target: Vector, n: int):
    """Coefficients c with sum c_i rows[i] == target, or None if target is not spanned.

    ``rows`` must be linearly independent for the answer to be unique.
    """
    k = len(rows)
    if k == 0:
        return () if is_zero_vec(target) else None
    # columns of the system are the given rows; solve M^T c = target
    aug = [[rows[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    red, rank, pivots = _gauss_jordan(aug, k)
    if any(red[i][k] != 0 for i in range(rank, n)):
        return None
    sol = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        sol[c] = red[r][k]
    return tuple(sol)


@dataclass(frozen=True)
class Violation:
    """Associativity witness: ``difference = e_i(e_j e_k) - (e_i e_j)e_k != 0``."""

    i: int
    j: int
    k: int
    difference: Vector
    names: tuple = field(default=(), compare=False)

    def label(self) -> tuple:
        if self.names:
            return (self.names[self.i], self.names[self.j], self.names[self.k])
        return (self.i, self.j, self.k)


@dataclass(frozen=True)
class Algebra:
    dim: int
    basis_names: tuple
    table: tuple
    unity: int | None = None

    def __post_init__(self):
        n = self.dim
        if len(self.table) != n or any(len(r) != n or any(len(c) != n for c in r) for r in self.table):
            raise DimensionMismatch("structure constant tensor must be n x n x n")
        t = tuple(tuple(tuple(Q(x) for x in self.table[i][j]) for j in range(n)) for i in range(n))
        if len(self.basis_names) != n:
            raise DimensionMismatch("need one basis name per dimension")
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "basis_names", tuple(self.basis_names))

    @classmethod
    def from_products(cls, names: Sequence[str], products: dict, unity: str | None = None) -> "Algebra":
        """Build from ``{(a, b): {c: coeff}}`` with basis names; missing products are 0.

        A ``unity`` name makes its row and column the identity automatically.
        """
        names = list(names)
        idx = {nm: i for i, nm in enumerate(names)}
        used = {unity} if unity is not None else set()
        for (a, b), out in products.items():
            used.update((a, b), out)
        unknown = sorted(used - idx.keys())
        if unknown:
            raise UnknownName(f"unknown basis name(s): {', '.join(unknown)}")
        n = len(names)
        t = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        if unity is not None:
            u = idx[unity]
            for i in range(n):
                t[u][i][i] = Fraction(1)
                t[i][u][i] = Fraction(1)
        for (a, b), out in products.items():
            t[idx[a]][idx[b]] = [Fraction(0)] * n
            for c, coeff in out.items():
                t[idx[a]][idx[b]][idx[c]] += Q(coeff)
        return cls(n, tuple(names), t, None if unity is None else idx[unity])

    def mul(self, u: Vector, v: Vector) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        return vsub(self.mul(u, v), self.mul(v, u))

    def basis_vector(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    def unity_element(self) -> Vector | None:
        if self.unity is not None:
            return unit_vec(self.dim, self.unity)
        return find_unity(self)

    def format_element(self, v: Vector) -> str:
        terms = []
        for c, name in zip(v, self.basis_names):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+{name}")
            elif c == -1:
                terms.append(f"-{name}")
            else:
                s = str(c)
                terms.append(("" if s.startswith("-") else "+") + f"{s}*{name}")
        out = "".join(terms)
        return out[1:] if out.startswith("+") else (out or "0")


# ---------------------------------------------------------------- operations


def check_associativity(a: Algebra) -> Violation | None:
    """First violating triple, or None when ``a`` is associative.

    Triples are scanned with k varying slowest, then j, then i.
    """
    n = a.dim
    e = [a.basis_vector(i) for i in range(n)]
    prods = [[a.table[i][j] for j in range(n)] for i in range(n)]
    for k, j, i in product(range(n), repeat=3):
        left = a.mul(prods[i][j], e[k])
        right = a.mul(e[i], prods[j][k])
        if left != right:
            return Violation(i, j, k, vsub(right, left), a.basis_names)
    return None


def is_associative(a: Algebra) -> bool:
    return check_associativity(a) is None


def find_unity(a: Algebra) -> Vector | None:
    """The two-sided unity as a coordinate vector, or None."""
    n = a.dim
    # unknown u: sum_i u_i c[i][j][k] = delta_jk and sum_i u_i c[j][i][k] = delta_jk
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            rows.append([a.table[i][j][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
            rows.append([a.table[j][i][k] for i in range(n)])
            rhs.append(Fraction(int(j == k)))
    red, rank, pivots = _gauss_jordan([r + [b] for r, b in zip(rows, rhs)], n)
    if any(red[i][n] != 0 for i in range(rank, len(red))):
        return None
    if rank < n:
        # a solution with free parameters would mean the algebra is zero; n == 0 only
        return None
    sol = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        sol[c] = red[r][n]
    return tuple(sol)


def annotate_unity(a: Algebra) -> Algebra:
    """Return ``a`` with ``unity`` set when the unity is itself a basis vector."""
    if a.unity is not None:
        return a
    u = find_unity(a)
    if u is None:
        return a
    for i in range(a.dim):
        if u == unit_vec(a.dim, i):
            return Algebra(a.dim, a.basis_names, a.table, i)
    return a


def change_basis(a: Algebra, p: Matrix, names: Sequence[str] | None = None) -> Algebra:
    """Transport structure constants to the basis given by the rows of ``p``.

    Row i of ``p`` holds the old coordinates of the new basis vector i; basis
    names stay attached to positions unless ``names`` is given.
    """
    n = a.dim
    if p.shape != (n, n):
        raise DimensionMismatch(f"basis change must be {n}x{n}")
    try:
        pinv = p.inverse()
    except SingularMatrix:
        raise SingularMatrix("basis change matrix is singular") from None
    new = [p.row(i) for i in range(n)]
    table = [[pinv.act(a.mul(new[i], new[j])) for j in range(n)] for i in range(n)]
    unity = None
    if a.unity is not None:
        u = pinv.act(unit_vec(n, a.unity))
        unity = next((i for i in range(n) if u == unit_vec(n, i)), None)
    return Algebra(n, tuple(names) if names else a.basis_names, table, unity)


def subspace_product(a: Algebra, u: Subspace, w: Subspace) -> Subspace:
    if u.n != a.dim or w.n != a.dim:
        raise DimensionMismatch("subspace does not live in this algebra")
    return Subspace(a.dim, tuple(a.mul(x, y) for x in u.basis for y in w.basis))


def is_subalgebra(a: Algebra, s: Subspace) -> bool:
    return subspace_product(a, s, s) <= s


def commutator_space(a: Algebra, u: Subspace, w: Subspace) -> Subspace:
    return Subspace(a.dim, tuple(a.bracket(x, y) for x in u.basis for y in w.basis))


@dataclass(frozen=True)
class Solvability:
    solvable: bool
    series: tuple  # derived series, starting with the input subspace

    def __bool__(self) -> bool:
        return self.solvable


def is_solvable(a: Algebra, s: Subspace) -> Solvability:
    """Lie solvability of ``s`` under ``[x, y] = xy - yx`` via the derived series."""
    if not commutator_space(a, s, s) <= s:
        raise NotBracketClosed("subspace is not closed under the commutator")
    series = [s]
    while True:
        cur = series[-1]
        nxt = commutator_space(a, cur, cur)
        if nxt.is_zero():
            if not cur.is_zero():
                series.append(nxt)
            return Solvability(True, tuple(series))
        if nxt == cur:
            return Solvability(False, tuple(series))
        series.append(nxt)


# ---------------------------------------------------------------- registry


def zero_algebra(n: int) -> Algebra:
    zero = [[[0] * n for _ in range(n)] for _ in range(n)]
    return Algebra(n, tuple(f"z{i + 1}" for i in range(n)), zero)


def matrix_algebra(n: int) -> Algebra:
    """Full n x n matrices on the matrix-unit basis E11, E12, ..., Enn (row-major)."""
    units = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_unit_algebra(units, n)


def upper_triangular(n: int) -> Algebra:
    units = [(i, j) for i in range(n) for j in range(n) if i <= j]
    return _matrix_unit_algebra(units, n)


def _matrix_unit_algebra(units, n: int) -> Algebra:
    idx = {u: k for k, u in enumerate(units)}
    d = len(units)
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j), p in idx.items():
        for (k, l), q in idx.items():
            if j == k:
                table[p][q][idx[(i, l)]] = 1
    names = tuple(f"E{i + 1}{j + 1}" for i, j in units)
    alg = Algebra(d, names, table)
    return annotate_unity(alg)


def quotient_algebra(modulus: Sequence, var: str = "t") -> Algebra:
    """K[t]/(p(t)) on the monomial basis 1, t, ..., t^(d-1); ``modulus`` lowest degree first."""
    p = UnivariatePoly(modulus).monic()
    d = p.degree
    names = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, d)]
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            _, r = divmod(UnivariatePoly.x() ** (i + j), p)
            coeffs = list(r.coeffs) + [0] * (d - len(r.coeffs))
            table[i][j] = coeffs
    return Algebra(d, tuple(names), table, 0)


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    n, m = a.dim, b.dim
    d = n + m
    table = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i, j in product(range(n), repeat=2):
        table[i][j][:n] = a.table[i][j]
    for i, j in product(range(m), repeat=2):
        table[n + i][n + j][n:] = b.table[i][j]
    names = list(a.basis_names) + list(b.basis_names)
    if len(set(names)) != len(names):
        names = [f"{x}_1" for x in a.basis_names] + [f"{x}_2" for x in b.basis_names]
    return Algebra(d, tuple(names), table)


def _l1() -> Algebra:
    return Algebra.from_products(["x", "y"], {("x", "x"): {"x": 1}, ("y", "x"): {"y": 1}})


def _l2() -> Algebra:
    return Algebra.from_products(["x", "y"], {("y", "x"): {"x": 1}, ("y", "y"): {"y": 1}})


def _t2() -> Algebra:
    return Algebra.from_products(
        ["1", "x", "y"],
        {("x", "x"): {"x": 1}, ("x", "y"): {}, ("y", "x"): {"1": -1, "x": 1, "y": 1}, ("y", "y"): {"y": 1}},
        unity="1",
    )


_NAMED = {
    "L1": _l1,
    "L2": _l2,
    "T2": _t2,
    "D": lambda: quotient_algebra([0, 0, 1]),
    "C2": lambda: quotient_algebra([-1, 0, 1]),
}

_PARAM = {
    "Z": zero_algebra,
    "Zn": zero_algebra,
    "M": matrix_algebra,
    "Mn": matrix_algebra,
    "T": upper_triangular,
    "Tn": upper_triangular,
    "Dn": lambda k: quotient_algebra([0] * k + [1]),
}


def registry(name: str) -> Algebra:
    """Named example algebras.

    ``L1``, ``L2`` (the two non-commutative 2-dim algebras), ``T2`` (the unital
    3-dim non-commutative table), ``D`` = K[t]/t^2, ``C2`` = K[t]/(t^2-1),
    ``Zn(k)``/``Zk`` zero multiplication, ``Mn(k)``/``Mk`` full matrices,
    ``Tn(k)``/``Tk`` upper-triangular matrices (``T2`` is the named table, use
    ``Tn(2)`` for matrix units), ``Dn(k)`` = K[t]/t^k, and ``dsum(A,B)``.
    """
    s = name.replace(" ", "")
    if s in _NAMED:
        return _NAMED[s]()
    if s.startswith("dsum(") and s.endswith(")"):
        inner = s[5:-1]
        depth = 0
        for pos, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return direct_sum(registry(inner[:pos]), registry(inner[pos + 1 :]))
        raise UnknownName(name)
    if "+" in s:
        parts = s.split("+")
        out = registry(parts[0])
        for p in parts[1:]:
            out = direct_sum(out, registry(p))
        return out
    m = re.fullmatch(r"(Zn|Mn|Tn|Dn)\((\d+)\)|(Z|M|T)(\d+)", s)
    if m:
        key = m.group(1) or m.group(3)
        k = int(m.group(2) or m.group(4))
        if k >= 1:
            return _PARAM[key](k)
    raise UnknownName(name)


REGISTRY_NAMES = ("L1", "L2", "T2", "D", "C2", "Z2", "M2", "T3", "Dn(3)", "dsum(L1,L1)", "dsum(T2,D)")
