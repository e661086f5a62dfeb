"""
Exact rational linear algebra and polynomial arithmetic.

Scalars are :class:`fractions.Fraction`.  Matrices and polynomials are
immutable; every operation returns a new value.  Row vectors are plain
tuples of Fractions and act on matrices from the left (``v * M``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import mpmath
import sympy

from .errors import NonSquare, SingularMatrix, ZeroForm, ZeroPolynomial

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    if isinstance(x, str):
        return Fraction(x.replace("−", "-").strip())
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(Q(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def is_zero_vec(u: Vector) -> bool:
    return all(a == 0 for a in u)


def fmt_q(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Matrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        e = tuple(tuple(Q(x) for x in row) for row in entries)
        self.rows = len(e)
        self.cols = len(e[0]) if e else (cols or 0)
        if any(len(r) != self.cols for r in e):
            raise ValueError("ragged matrix")
        self._e = e

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_rows(cls, rows: Sequence[Vector], cols: int) -> "Matrix":
        return cls(rows, cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    @property
    def entries(self) -> tuple:
        return self._e

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix([self.col(j) for j in range(self.cols)], cols=self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.shape, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_q(x) for x in r) for r in self._e)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([vadd(a, b) for a, b in zip(self._e, other._e)], cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([vsub(a, b) for a, b in zip(self._e, other._e)], cols=self.cols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = Q(c)
        return Matrix([vscale(c, r) for r in self._e], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} x {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return Matrix([[dot(r, c) for c in ocols] for r in self._e], cols=other.cols)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "Matrix":
        _require_square(self)
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def act(self, v: Vector) -> Vector:
        """Row-vector action ``v * self``."""
        return tuple(dot(v, self.col(j)) for j in range(self.cols))

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self._e[i][i] for i in range(self.rows)), Fraction(0))

    def det(self) -> Fraction:
        return det_ff(self)

    def inverse(self) -> "Matrix":
        _require_square(self)
        n = self.rows
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self._e)]
        red, rank, _ = _gauss_jordan(aug, n)
        if rank < n:
            raise SingularMatrix("matrix is singular")
        return Matrix([r[n:] for r in red], cols=n)

    def rank(self) -> int:
        return rref(self)[1]

    def left_kernel(self) -> list[Vector]:
        return rref(self)[2]

    def right_kernel(self) -> list[Vector]:
        return rref(self.T)[2]

    def solve_left(self, b: Matrix) -> "Matrix":
        """Unique X with ``X * self == b``; ``self`` must be square invertible."""
        return b * self.inverse()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self._e[i][j] for j in cols] for i in rows], cols=len(cols))


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise NonSquare(f"expected a square matrix, got {m.rows}x{m.cols}")


def _gauss_jordan(rows: list[list[Fraction]], pivot_cols: int):
    """In-place Gauss-Jordan restricted to pivots in the first ``pivot_cols`` columns."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(pivot_cols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, r, pivots


def rref_rows(vectors: Sequence[Vector], n: int) -> tuple[Vector, ...]:
    """Canonical RREF basis (nonzero rows only) of the span of ``vectors``."""
    if not vectors:
        return ()
    red, rank, _ = _gauss_jordan([list(v) for v in vectors], n)
    return tuple(tuple(r) for r in red[:rank])


def rref(m: Matrix) -> tuple[Matrix, int, list[Vector]]:
    """Reduced row-echelon form, rank, and an RREF basis of ``{v : v*m = 0}``."""
    n = m.rows
    aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(m.entries)]
    red, rank, _ = _gauss_jordan(aug, m.cols)
    reduced = Matrix([r[: m.cols] for r in red], cols=m.cols)
    kernel = rref_rows([tuple(r[m.cols:]) for r in red[rank:]], n)
    return reduced, rank, list(kernel)


def det_ff(m: Matrix) -> Fraction:
    """Fraction-free (Bareiss) determinant.

    Rows are first scaled to integers; the integer elimination then never
    leaves Z and the scale factors are divided back out at the end.
    """
    _require_square(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for row in m.entries:
        d = reduce(lcm, (x.denominator for x in row), 1)
        scale *= d
        a.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


# ---------------------------------------------------------------- polynomials


class UnivariatePoly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "UnivariatePoly":
        return cls([0, 1])

    @classmethod
    def linear_root(cls, root) -> "UnivariatePoly":
        return cls([-Q(root), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic normalization")
        return self.scale(1 / self.lc)

    def scale(self, c) -> "UnivariatePoly":
        c = Q(c)
        return UnivariatePoly(c * a for a in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UnivariatePoly([{', '.join(fmt_q(c) for c in self.coeffs)}])"

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UnivariatePoly(vadd(a, b))

    def __neg__(self) -> "UnivariatePoly":
        return self.scale(-1)

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePoly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return UnivariatePoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UnivariatePoly":
        result = UnivariatePoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lc
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UnivariatePoly(quot), UnivariatePoly(rem[:dq] if dq > 0 else [])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        _require_square(m)
        acc = Matrix.zeros(m.rows, m.cols)
        ident = Matrix.identity(m.rows)
        for c in reversed(self.coeffs):
            acc = acc * m + ident.scale(c)
        return acc

    def divides(self, other: "UnivariatePoly") -> bool:
        return divmod(other, self)[1].is_zero()

    def reciprocal(self) -> "UnivariatePoly":
        """Monic polynomial whose roots are the inverses of the roots of ``self``."""
        if self(0) == 0:
            raise ValueError("0 is a root; reciprocal undefined")
        return UnivariatePoly(reversed(self.coeffs)).monic()

    def rational_root(self) -> Fraction | None:
        """The root of a degree-1 polynomial, else None."""
        if self.degree != 1:
            return None
        return -self.coeffs[0] / self.coeffs[1]

    def to_sympy(self, x):
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)] or [0], x, domain="QQ")

    @classmethod
    def from_sympy(cls, p) -> "UnivariatePoly":
        return cls(Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs()))


def companion(p: UnivariatePoly) -> Matrix:
    """Companion matrix of a monic polynomial; its characteristic polynomial is ``p``."""
    p = p.monic()
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return Matrix(rows, cols=n)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return Matrix(
        [[a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols)]
         for i in range(a.rows) for k in range(b.rows)],
        cols=a.cols * b.cols,
    )


def charpoly_matrix(m: Matrix) -> UnivariatePoly:
    """Monic ``det(tI - m)`` by the Faddeev-LeVerrier recursion (exact over Q)."""
    _require_square(m)
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = Matrix.identity(n)
    mk = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m * mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m * mk).trace() / k
    return UnivariatePoly(coeffs)


def composed_product(p: UnivariatePoly, q: UnivariatePoly) -> UnivariatePoly:
    """Monic polynomial whose roots are all products of a root of p with a root of q."""
    return charpoly_matrix(kron(companion(p), companion(q)))


def interpolate(xs: Sequence, ys: Sequence) -> UnivariatePoly:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    result = UnivariatePoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = UnivariatePoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UnivariatePoly([-Q(xj), 1])
                denom *= Q(xi) - Q(xj)
        result = result + basis.scale(Q(yi) / denom)
    return result


def factor_poly(p: UnivariatePoly) -> tuple[Fraction, list[tuple[UnivariatePoly, int]]]:
    """Factor ``p`` over Q as ``constant * prod(f_i ** m_i)`` with monic irreducible ``f_i``.

    Factors come back sorted by degree, then coefficients.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    x = sympy.Symbol("x")
    _, fl = p.to_sympy(x).factor_list()
    factors = []
    for f, m in fl:
        factors.append((UnivariatePoly.from_sympy(f).monic(), int(m)))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return p.lc, factors


def numeric_roots(p: UnivariatePoly) -> list[complex]:
    """Complex root approximations (display only; never used for rank decisions)."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no roots")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    if p.degree == 1:
        return [complex(p.rational_root())]
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
    with mpmath.workdps(40):
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=200)
    out = [complex(r) for r in roots]
    out = [complex(z.real, 0.0) if abs(z.imag) < 1e-30 else z for z in out]
    return sorted(out, key=lambda z: (z.real, z.imag))


# ---------------------------------------------------------------- binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form ``sum_k coeffs[k] * lam**k * mu**(degree-k)``."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Q(x) for x in self.coeffs)
        if len(c) != self.degree + 1:
            raise ValueError("BinaryForm needs degree+1 coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "BinaryForm":
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def lam(cls) -> "BinaryForm":
        return cls(1, (0, 1))

    @classmethod
    def mu(cls) -> "BinaryForm":
        return cls(1, (1, 0))

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, (c,))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, lam, mu):
        lam, mu = Q(lam), Q(mu)
        return sum((c * lam**k * mu ** (self.degree - k) for k, c in enumerate(self.coeffs)), Fraction(0))

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return BinaryForm(self.degree, tuple(Q(other) * c for c in self.coeffs))
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        result = BinaryForm.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def swap(self) -> "BinaryForm":
        """The form with lambda and mu exchanged."""
        return BinaryForm(self.degree, tuple(reversed(self.coeffs)))

    def proportional(self, other: "BinaryForm") -> bool:
        """True iff ``self == c * other`` for some nonzero constant c."""
        if self.degree != other.degree or self.is_zero() or other.is_zero():
            return False
        k = next(i for i, c in enumerate(other.coeffs) if c != 0)
        if self.coeffs[k] == 0:
            return False
        ratio = self.coeffs[k] / other.coeffs[k]
        return all(a == ratio * b for a, b in zip(self.coeffs, other.coeffs))


def pencil_det(x: Matrix, y: Matrix) -> BinaryForm:
    """``det(lam*x + mu*y)`` as a binary form.

    The lam**n coefficient is ``det(x)``; the rest comes from exact
    interpolation of ``det(t*x + y)`` at t = 0..n-1.
    """
    _require_square(x)
    _same_shape(x, y)
    n = x.rows
    if n == 0:
        return BinaryForm.constant(1)
    top = det_ff(x)
    ts = list(range(n))
    ys = [det_ff(x.scale(t) + y) - top * Fraction(t) ** n for t in ts]
    low = interpolate(ts, ys)
    coeffs = list(low.coeffs) + [Fraction(0)] * (n - len(low.coeffs))
    return BinaryForm(n, tuple(coeffs) + (top,))


def alpha_factor(p: UnivariatePoly) -> BinaryForm:
    """Homogeneous factor ``prod(alpha*lam + mu)`` over the roots alpha of monic ``p``."""
    p = p.monic()
    e = p.degree
    coeffs = [Fraction(0)] * (e + 1)
    for j, pj in enumerate(p.coeffs):
        coeffs[e - j] = pj * (-1) ** (e + j)
    return BinaryForm(e, tuple(coeffs))


@dataclass(frozen=True)
class FactoredForm:
    """``constant * lam**mult_lambda * mu**mult_mu * prod(alpha_factor(p)**m)``.

    A spectral value alpha contributes ``(alpha*lam + mu)``; alpha = infinity
    contributes ``lam`` and alpha = 0 contributes ``mu``.  Each ``p`` is the
    monic irreducible polynomial over Q whose roots are the alphas.
    """

    degree: int
    constant: Fraction
    mult_lambda: int
    mult_mu: int
    factors: tuple  # ((UnivariatePoly, multiplicity), ...)

    def expand(self) -> BinaryForm:
        out = BinaryForm.constant(self.constant) * BinaryForm.lam() ** self.mult_lambda
        out = out * BinaryForm.mu() ** self.mult_mu
        for p, m in self.factors:
            out = out * alpha_factor(p) ** m
        return out

    def multiplicity(self, alpha) -> int:
        """Multiplicity of a rational alpha, or of the string 'inf'."""
        if alpha == "inf":
            return self.mult_lambda
        alpha = Q(alpha)
        if alpha == 0:
            return self.mult_mu
        target = UnivariatePoly.linear_root(alpha)
        return next((m for p, m in self.factors if p == target), 0)

    def orbit_multiplicity(self, p: UnivariatePoly) -> int:
        p = p.monic()
        return next((m for f, m in self.factors if f == p), 0)

    def rational_alphas(self) -> dict:
        return {f.rational_root(): m for f, m in self.factors if f.degree == 1}

    def render(self) -> str:
        return render_factored(self)


def factor_form(f: BinaryForm) -> FactoredForm:
    if f.is_zero():
        raise ZeroForm("cannot factor the zero form")
    d = f.degree
    nz = [k for k, c in enumerate(f.coeffs) if c != 0]
    a, top = nz[0], nz[-1]
    b = d - top
    g = f.coeffs[a : top + 1]
    dg = len(g) - 1
    # roots in alpha of g(1, -s): coefficient of s**j is g[dg-j] * (-1)**j
    q = UnivariatePoly(g[dg - j] * (-1) ** j for j in range(dg + 1))
    factors: list = []
    if dg > 0:
        _, factors = factor_poly(q)
    factors.sort(key=_factor_sort_key)
    return FactoredForm(d, g[0], a, b, tuple(factors))


def _factor_sort_key(fm):
    p, _ = fm
    r = p.rational_root()
    return (0, r, ()) if r is not None else (1, Fraction(p.degree), p.coeffs)


# ---------------------------------------------------------------- rendering

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
MINUS = "−"


def _pow(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else sym + str(k).translate(_SUP)


def _primitive(form: BinaryForm) -> tuple[Fraction, tuple[int, ...]]:
    """Split ``form = c * g`` with g integral and primitive, positive mu-most coefficient."""
    den = reduce(lcm, (c.denominator for c in form.coeffs), 1)
    ints = [int(c * den) for c in form.coeffs]
    g = reduce(gcd, ints, 0) or 1
    ints = [i // g for i in ints]
    lead = next(i for i in ints if i != 0)
    if lead < 0:
        ints = [-i for i in ints]
        g = -g
    return Fraction(g, den), tuple(ints)


def _render_form(coeffs: tuple[int, ...]) -> str:
    d = len(coeffs) - 1
    terms = []
    for k in range(d, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = _pow("λ", k) + _pow("μ", d - k)
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        sign = MINUS if c < 0 else "+"
        terms.append((sign, body))
    s = "".join(f"{sg}{b}" for sg, b in terms)
    return s[1:] if s.startswith("+") else s


def render_factored(ff: FactoredForm) -> str:
    const = ff.constant
    parts = []
    for p, m in ff.factors:
        c, ints = _primitive(alpha_factor(p))
        const *= c**m
        parts.append(f"({_render_form(ints)})" + ("" if m == 1 else str(m).translate(_SUP)))
    mono = _pow("λ", ff.mult_lambda) + _pow("μ", ff.mult_mu)
    body = mono + "".join(parts)
    if not body:
        return fmt_q(const).replace("-", MINUS)
    if const == 1:
        return body
    if const == -1:
        return MINUS + body
    return fmt_q(const).replace("-", MINUS) + "·" + body


def render_form(f: BinaryForm) -> str:
    if f.is_zero():
        return "0"
    return render_factored(factor_form(f))
