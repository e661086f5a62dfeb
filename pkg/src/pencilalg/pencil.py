"""
The multiplication table evaluated at a functional and everything read off it.

Orientation used throughout: ``m[i][j] = F(e_i e_j)`` and ``mt`` is its
transpose.  An element ``a`` (a row vector) satisfies ``F(a b) = alpha F(b a)``
for all ``b`` exactly when ``a (m - alpha mt) = 0``, so stabilizers are LEFT
kernels.  A spectral value alpha contributes the factor ``(alpha lam + mu)``
to ``det(lam m + mu mt)``; infinity contributes ``lam`` and 0 contributes ``mu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Algebra, Subspace
from .errors import DegeneratePencil, DimensionMismatch, InvalidAlpha
from .exact import (
    BinaryForm,
    FactoredForm,
    Matrix,
    Q,
    UnivariatePoly,
    factor_form,
    fmt_q,
    pencil_det,
)

SAMPLE_BOUND = 1000
GENERIC_ATTEMPTS = 16


# ---------------------------------------------------------------- spectral values


@dataclass(frozen=True)
class SpectralValue:
    """A point of Q ∪ {∞}, or a Galois orbit given by its monic irreducible polynomial."""

    kind: str  # "finite" | "orbit" | "infinity"
    value: object = None

    @classmethod
    def finite(cls, x) -> "SpectralValue":
        return cls("finite", Q(x))

    @classmethod
    def infinity(cls) -> "SpectralValue":
        return cls("infinity")

    @classmethod
    def orbit(cls, p: UnivariatePoly) -> "SpectralValue":
        p = p.monic()
        if p.degree == 1:
            return cls.finite(p.rational_root())
        return cls("orbit", p)

    @property
    def is_infinity(self) -> bool:
        return self.kind == "infinity"

    @property
    def is_orbit(self) -> bool:
        return self.kind == "orbit"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def is_zero(self) -> bool:
        return self.kind == "finite" and self.value == 0

    def is_one(self) -> bool:
        return self.kind == "finite" and self.value == 1

    def reciprocal(self) -> "SpectralValue":
        if self.is_infinity:
            return SpectralValue.finite(0)
        if self.is_orbit:
            return SpectralValue.orbit(self.value.reciprocal())
        if self.value == 0:
            return SpectralValue.infinity()
        return SpectralValue.finite(1 / self.value)

    def poly(self) -> UnivariatePoly | None:
        """Monic polynomial whose roots are the alpha values; None for infinity."""
        if self.is_infinity:
            return None
        if self.is_orbit:
            return self.value
        return UnivariatePoly.linear_root(self.value)

    def sort_key(self):
        if self.is_infinity:
            return (3, Fraction(0), ())
        if self.is_orbit:
            return (2, Fraction(self.value.degree), self.value.coeffs)
        return (0 if self.value == 0 else 1, self.value, ())

    def __str__(self) -> str:
        if self.is_infinity:
            return "∞"
        if self.is_orbit:
            return "root of " + poly_str(self.value, "α")
        return fmt_q(self.value)


INF = SpectralValue.infinity()


def spectral(x) -> SpectralValue:
    """Coerce numbers, 'inf'/'∞' and polynomials to a SpectralValue."""
    if isinstance(x, SpectralValue):
        return x
    if isinstance(x, str) and x.strip().lower() in ("inf", "∞", "infinity"):
        return INF
    if isinstance(x, UnivariatePoly):
        return SpectralValue.orbit(x)
    return SpectralValue.finite(x)


def poly_str(p: UnivariatePoly, var: str = "t") -> str:
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        coef = fmt_q(mag) if (mag != 1 or not mono) else ""
        body = coef + ("*" if coef and mono else "") + mono
        terms.append(("-" if c < 0 else "+") + body)
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------- evaluation


def as_functional(a: Algebra, values: Sequence) -> tuple:
    f = tuple(Q(v) for v in values)
    if len(f) != a.dim:
        raise DimensionMismatch(f"functional has {len(f)} values, algebra has dimension {a.dim}")
    return f


def apply_functional(f: Sequence, v: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(f, v) if x and y), Fraction(0))


@dataclass(frozen=True)
class EvaluatedPencil:
    m: Matrix
    mt: Matrix


def evaluate(a: Algebra, f: Sequence) -> EvaluatedPencil:
    f = as_functional(a, f)
    n = a.dim
    rows = [[apply_functional(f, a.table[i][j]) for j in range(n)] for i in range(n)]
    m = Matrix(rows, cols=n)
    return EvaluatedPencil(m, m.T)


def charpoly(a: Algebra, f: Sequence) -> BinaryForm:
    """``det(lam A|_F + mu A^T|_F)`` as an exact binary form (possibly zero)."""
    ev = evaluate(a, f)
    return pencil_det(ev.m, ev.mt)


def charpoly_factored(a: Algebra, f: Sequence) -> FactoredForm | None:
    chi = charpoly(a, f)
    return None if chi.is_zero() else factor_form(chi)


def stabilizer(a: Algebra, f: Sequence, alpha) -> Subspace:
    return _stab(evaluate(a, f), spectral(alpha), a.dim)


def _stab(ev: EvaluatedPencil, alpha: SpectralValue, n: int) -> Subspace:
    if alpha.is_orbit:
        raise InvalidAlpha("irrational spectral values have no rational stabilizer; use jordan.decompose")
    if alpha.is_infinity:
        op = ev.mt
    else:
        op = ev.m - ev.mt.scale(alpha.value)
    return Subspace(n, tuple(op.left_kernel()))


def nil(a: Algebra, f: Sequence) -> Subspace:
    return stabilizer(a, f, 0) & stabilizer(a, f, INF)


@dataclass(frozen=True)
class QForm:
    basis: Subspace
    gram: Matrix
    nondegenerate: bool
    lambda_mu_multiplicity: int | None  # None when the characteristic form is zero


def gram_matrix(a: Algebra, f: Sequence, left: Subspace, right: Subspace) -> Matrix:
    """``G[i][j] = F(l_i r_j)`` over the canonical bases."""
    ev = evaluate(a, f)
    return Matrix([[apply_functional(ev.m.act(l), r) for r in right.basis] for l in left.basis], cols=right.dim)


def q_form(a: Algebra, f: Sequence) -> QForm:
    s1 = stabilizer(a, f, 1)
    gram = gram_matrix(a, f, s1, s1)
    nondeg = gram.det() != 0 if s1.dim else True
    chi = charpoly(a, f)
    mult = None if chi.is_zero() else factor_form(chi).multiplicity(1)
    return QForm(s1, gram, nondeg, mult)


# ---------------------------------------------------------------- sampling


def draw_functional(n: int, seed: int, trial: int) -> tuple:
    """Integer functional in [-1000, 1000]^n from the stream split off for ``trial``."""
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))
    return tuple(Fraction(int(x)) for x in rng.integers(-SAMPLE_BOUND, SAMPLE_BOUND + 1, size=n))


@dataclass(frozen=True)
class LieIndexTrial:
    functional: tuple
    kernel_dim: int


def lie_index_trials(a: Algebra, seed: int = 0, trials: int = 8) -> list[LieIndexTrial]:
    if trials < 1:
        raise ValueError("need at least one trial")
    out = []
    for t in range(trials):
        f = draw_functional(a.dim, seed, t)
        out.append(LieIndexTrial(f, stabilizer(a, f, 1).dim))
    return out


def lie_index(a: Algebra, seed: int = 0, trials: int = 8) -> int:
    """Minimum over sampled F of dim ker of the skew form F([x, y])."""
    return min(t.kernel_dim for t in lie_index_trials(a, seed, trials))


def pencil_dims(a: Algebra, f: Sequence) -> dict:
    ev = evaluate(a, f)
    s0 = _stab(ev, SpectralValue.finite(0), a.dim)
    sinf = _stab(ev, INF, a.dim)
    return {
        "stab_0": s0.dim,
        "stab_1": _stab(ev, SpectralValue.finite(1), a.dim).dim,
        "stab_inf": sinf.dim,
        "nil": (s0 & sinf).dim,
        "corank": a.dim - s0.dim,
    }


@dataclass(frozen=True)
class GenericityCertificate:
    attempts: int
    chi_nonzero: bool
    dims: dict
    observed_minima: dict
    minimal: dict = field(default_factory=dict)

    @property
    def all_minimal(self) -> bool:
        return all(self.minimal.values())


def sample_generic(a: Algebra, seed: int = 0, probes: int = 4) -> tuple[tuple, GenericityCertificate]:
    """First seeded functional with nonzero characteristic form, plus a certificate.

    The certificate compares dimension-valued invariants at the accepted F
    against ``probes`` further samples; genericity is certified only relative
    to those observed minima.
    """
    accepted = None
    for attempt in range(GENERIC_ATTEMPTS):
        f = draw_functional(a.dim, seed, attempt)
        if not charpoly(a, f).is_zero():
            accepted = (f, attempt + 1)
            break
    if accepted is None:
        raise DegeneratePencil(
            f"characteristic form vanished at all {GENERIC_ATTEMPTS} sampled functionals; "
            "it is almost certainly identically zero"
        )
    f, attempts = accepted
    dims = pencil_dims(a, f)
    minima = dict(dims)
    for j in range(probes):
        g = draw_functional(a.dim, seed, GENERIC_ATTEMPTS + j)
        for key, val in pencil_dims(a, g).items():
            minima[key] = min(minima[key], val)
    minimal = {key: dims[key] == minima[key] for key in dims}
    return f, GenericityCertificate(attempts, True, dims, minima, minimal)
