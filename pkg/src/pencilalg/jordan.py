"""
Generalized (Jordan-type) spectral subspaces of the pencil and the
structural checks built on them.

Shifting by an admissible ``mu`` turns the pencil into one operator
``s = mt (m - mu mt)^-1`` acting on row vectors.  A row vector lies in
``Stab(alpha)`` iff it is an ``s``-eigenvector with eigenvalue
``1/(alpha - mu)`` (eigenvalue 0 for alpha = infinity), so the
generalized eigenspaces of ``s`` are the spaces ``V_N(alpha)``.
Irrational eigenvalues are kept together per irreducible factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import Iterator, Sequence

from .algebra import (
    Algebra,
    Subspace,
    find_unity,
    is_solvable,
    is_subalgebra,
    subspace_product,
)
from .errors import (
    BadShift,
    DegeneratePencil,
    InvalidAlpha,
    MissingBlock,
    SingularMatrix,
    SingularPairing,
)
from .exact import (
    BinaryForm,
    Matrix,
    UnivariatePoly,
    charpoly_matrix,
    composed_product,
    factor_form,
    factor_poly,
    pencil_det,
    vscale,
    vsub,
)
from .pencil import (
    INF,
    SpectralValue,
    apply_functional,
    as_functional,
    evaluate,
    gram_matrix,
    spectral,
)


def primes() -> Iterator[int]:
    found: list[int] = []
    for n in count(2):
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n


# ---------------------------------------------------------------- the operator


@dataclass(frozen=True)
class PencilOperator:
    mu: Fraction
    s: Matrix
    m: Matrix
    mt: Matrix


def _shift_ok(m: Matrix, mt: Matrix, mu) -> bool:
    return (m - mt.scale(mu)).det() != 0


def pencil_operator(a: Algebra, f: Sequence, mu=None) -> PencilOperator:
    """``s = mt (m - mu mt)^-1``; ``mu`` defaults to the first prime that is not a spectral value."""
    ev = evaluate(a, f)
    if pencil_det(ev.m, ev.mt).is_zero():
        raise DegeneratePencil("characteristic form is identically zero at this functional")
    if mu is None:
        mu = next(p for p in primes() if _shift_ok(ev.m, ev.mt, p))
    else:
        mu = Fraction(mu)
        if not _shift_ok(ev.m, ev.mt, mu):
            raise BadShift(f"mu = {mu} is a spectral value; m - mu*mt is singular")
    s = ev.mt * (ev.m - ev.mt.scale(mu)).inverse()
    return PencilOperator(Fraction(mu), s, ev.m, ev.mt)


def _next_shift(op: PencilOperator) -> Fraction:
    return Fraction(next(p for p in primes() if p != op.mu and _shift_ok(op.m, op.mt, p)))


def _s_poly(alpha: SpectralValue, mu: Fraction) -> UnivariatePoly:
    """Monic polynomial in s whose roots are the s-eigenvalues belonging to ``alpha``."""
    if alpha.is_infinity:
        return UnivariatePoly.x()
    p = alpha.poly()
    e = p.degree
    # sigma = 1/(alpha - mu)  =>  alpha = mu + 1/sigma; clear denominators
    sig = UnivariatePoly.x()
    acc = UnivariatePoly([])
    for j, pj in enumerate(p.coeffs):
        acc = acc + (UnivariatePoly([mu, 0]) * sig + UnivariatePoly([1])) ** j * sig ** (e - j) * UnivariatePoly([pj])
    return acc.monic()


def _alpha_of(sp: UnivariatePoly, mu: Fraction) -> SpectralValue:
    """Inverse of ``_s_poly``: monic irreducible s-factor to spectral value."""
    if sp.degree == 1:
        sigma = sp.rational_root()
        return INF if sigma == 0 else SpectralValue.finite(mu + 1 / sigma)
    e = sp.degree
    shifted = UnivariatePoly([-mu, 1])
    acc = UnivariatePoly([])
    for j, pj in enumerate(sp.coeffs):
        acc = acc + shifted ** (e - j) * UnivariatePoly([pj])
    return SpectralValue.orbit(acc)


def _kernel_chain(op: PencilOperator, sp: UnivariatePoly, n: int) -> list[Subspace]:
    """Strictly increasing ``leftker sp(s)^(k+1)`` for k = 0, 1, ... until it stabilizes."""
    base = sp.eval_matrix(op.s)
    power = base
    chain: list[Subspace] = []
    while True:
        sub = Subspace(n, tuple(power.left_kernel()))
        if chain and sub.dim == chain[-1].dim:
            return chain
        chain.append(sub)
        if sub.dim == n:
            return chain
        power = power * base


def jordan_space(a: Algebra, f: Sequence, alpha, k: int, mu=None) -> Subspace:
    """``V_k(alpha)``: level 0 is the stabilizer itself, level -1 is zero."""
    alpha = spectral(alpha)
    if k < 0:
        return Subspace.zero(a.dim)
    op = pencil_operator(a, f, mu)
    return _level_space(op, alpha, k, a.dim)


def _level_space(op: PencilOperator, alpha: SpectralValue, k: int, n: int) -> Subspace:
    if alpha.is_infinity:
        base = op.s
    elif alpha.is_orbit:
        base = _s_poly(alpha, op.mu).eval_matrix(op.s)
    else:
        base = Matrix.identity(n) - op.s.scale(alpha.value - op.mu)
    return Subspace(n, tuple((base ** (k + 1)).left_kernel()))


# ---------------------------------------------------------------- decomposition


@dataclass(frozen=True)
class SpectralBlock:
    alpha: SpectralValue
    space: Subspace
    chain: tuple  # V_0 ⊂ V_1 ⊂ ... ⊂ V_N, strictly increasing
    s_poly: UnivariatePoly

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def chain_dims(self) -> tuple:
        return tuple(c.dim for c in self.chain)

    @property
    def degree(self) -> int:
        return 1 if not self.alpha.is_orbit else self.alpha.value.degree

    @property
    def dim_per_root(self) -> int:
        return self.dim // self.degree

    def level(self, k: int) -> Subspace:
        if k < 0:
            return Subspace.zero(self.space.n)
        return self.chain[min(k, len(self.chain) - 1)]


@dataclass(frozen=True)
class Decomposition:
    functional: tuple
    mu: Fraction
    blocks: tuple
    operator: PencilOperator = field(repr=False)

    def block(self, alpha) -> SpectralBlock | None:
        alpha = spectral(alpha)
        return next((b for b in self.blocks if b.alpha == alpha), None)

    def space(self, alpha) -> Subspace:
        b = self.block(alpha)
        return b.space if b else Subspace.zero(self.operator.s.rows)

    def level(self, alpha, k: int) -> Subspace:
        b = self.block(alpha)
        return b.level(k) if b else Subspace.zero(self.operator.s.rows)

    @property
    def alphas(self) -> tuple:
        return tuple(b.alpha for b in self.blocks)


def decompose(a: Algebra, f: Sequence, mu=None) -> Decomposition:
    """Split K^n into the spaces ``V_N(alpha)``, one block per spectral value or orbit."""
    f = as_functional(a, f)
    op = pencil_operator(a, f, mu)
    n = a.dim
    _, factors = factor_poly(charpoly_matrix(op.s))
    blocks = []
    for sp, _mult in factors:
        chain = _kernel_chain(op, sp, n)
        blocks.append(SpectralBlock(_alpha_of(sp, op.mu), chain[-1], tuple(chain), sp))
    blocks.sort(key=lambda b: b.alpha.sort_key())
    return Decomposition(f, op.mu, tuple(blocks), op)


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True


@dataclass(frozen=True)
class VnReport:
    decomposition: Decomposition
    checks: tuple
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def __getitem__(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def _poly_alpha_target(dec: Decomposition, p: UnivariatePoly, q: UnivariatePoly) -> Subspace:
    """Sum of finite nonzero blocks whose alphas are products of roots of p and q."""
    r = composed_product(p, q)
    n = dec.operator.s.rows
    out = Subspace.zero(n)
    for b in dec.blocks:
        if b.alpha.is_infinity or b.alpha.is_zero():
            continue
        if b.alpha.poly().divides(r):
            out = out + b.space
    return out


def _product_target(dec: Decomposition, x: SpectralValue, y: SpectralValue) -> Subspace | None:
    n = dec.operator.s.rows
    if x.is_zero() and y.is_infinity:
        return Subspace.zero(n)
    if x.is_infinity and y.is_zero():
        return None  # no rule; reported only
    if x.is_zero() or y.is_zero():
        return dec.space(0)
    if x.is_infinity or y.is_infinity:
        return dec.space(INF)
    return _poly_alpha_target(dec, x.poly(), y.poly())


def _level_target(dec: Decomposition, x: SpectralValue, k: int, y: SpectralValue, l: int) -> Subspace | None:
    """Level-wise target for rational values (None when no level rule applies)."""
    if x.is_orbit or y.is_orbit:
        return None
    if x.is_infinity and y.is_zero():
        return None
    if x.is_zero() and y.is_infinity:
        return dec.level(0, k) & dec.level(INF, l)
    if x.is_infinity or y.is_infinity:
        if x.is_zero() or y.is_zero():
            return None
        return dec.level(INF, k + l)
    return dec.level(x.value * y.value, k + l)


def _check_block_products(a: Algebra, dec: Decomposition) -> tuple[Check, list[str]]:
    notes: list[str] = []
    for bx in dec.blocks:
        for by in dec.blocks:
            prod = subspace_product(a, bx.space, by.space)
            target = _product_target(dec, bx.alpha, by.alpha)
            if target is None:
                notes.append(f"V({bx.alpha})·V({by.alpha}) has dimension {prod.dim} (no inclusion asserted)")
                continue
            if not prod <= target:
                return Check("block_products", False, f"V({bx.alpha})·V({by.alpha}) not in its target"), notes
            for k in range(len(bx.chain)):
                for l in range(len(by.chain)):
                    t = _level_target(dec, bx.alpha, k, by.alpha, l)
                    if t is None:
                        continue
                    if not subspace_product(a, bx.level(k), by.level(l)) <= t:
                        return (
                            Check("block_products", False, f"V_{k}({bx.alpha})·V_{l}({by.alpha}) not in its target"),
                            notes,
                        )
    return Check("block_products", True), notes


def _same_blocks(d1: Decomposition, d2: Decomposition) -> bool:
    if d1.alphas != d2.alphas:
        return False
    return all(b1.chain == b2.chain for b1, b2 in zip(d1.blocks, d2.blocks))


def verify_vn(a: Algebra, f: Sequence, mu=None) -> VnReport:
    """Run the structural checks on the decomposition at F.

    Solvability of V_N(0) is a non-required check and the product
    V_N(inf)·V_N(0) is described in ``notes``; neither affects the verdict.
    """
    f = as_functional(a, f)
    dec = decompose(a, f, mu)
    n = a.dim
    checks: list[Check] = []
    notes: list[str] = []

    total = Subspace.zero(n)
    for b in dec.blocks:
        total = total + b.space
    dims = sum(b.dim for b in dec.blocks)
    checks.append(Check("direct_sum", dims == n and total.dim == n, f"block dims sum to {dims}, span {total.dim}"))

    bad = [str(b.alpha) for b in dec.blocks if dec.space(b.alpha.reciprocal()).dim != b.dim]
    checks.append(Check("reciprocal_dims", not bad, "mismatch at " + ", ".join(bad) if bad else ""))

    one = find_unity(a)
    if one is None:
        checks.append(Check("unital_kernel", True, "no unity"))
    else:
        bad = [str(b.alpha) for b in dec.blocks if not b.alpha.is_one()
               and any(apply_functional(f, v) != 0 for v in b.space.basis)]
        checks.append(Check("unital_kernel", not bad, "F nonzero on V(" + ", ".join(bad) + ")" if bad else ""))

    prod_check, prod_notes = _check_block_products(a, dec)
    checks.append(prod_check)
    notes.extend(prod_notes)

    open_ = [str(x) for x in (Fraction(0), Fraction(1), INF)
             if not is_subalgebra(a, dec.space(x))]
    checks.append(Check("subalgebras", not open_, "not closed: " + ", ".join(open_) if open_ else ""))

    v1 = dec.space(1)
    solv1 = is_solvable(a, v1) if is_subalgebra(a, v1) else None
    checks.append(Check("v1_solvable", bool(solv1), "" if solv1 else "V_N(1) is not solvable"))
    v0 = dec.space(0)
    solv0 = is_solvable(a, v0) if is_subalgebra(a, v0) else None
    checks.append(Check("v0_solvable", bool(solv0), "" if solv0 else "V_N(0) is not solvable", required=False))

    ff = factor_form(pencil_det(dec.operator.m, dec.operator.mt))
    mism = []
    for b in dec.blocks:
        if b.alpha.is_infinity:
            got = ff.mult_lambda
        elif b.alpha.is_zero():
            got = ff.mult_mu
        elif b.alpha.is_orbit:
            got = ff.orbit_multiplicity(b.alpha.value)
        else:
            got = ff.multiplicity(b.alpha.value)
        if got != b.dim_per_root:
            mism.append(f"{b.alpha}: factor {got}, block {b.dim_per_root}")
    listed = len(ff.factors) + (ff.mult_lambda > 0) + (ff.mult_mu > 0)
    if listed != len(dec.blocks):
        mism.append(f"{listed} factors vs {len(dec.blocks)} blocks")
    checks.append(Check("factor_multiplicity", not mism, "; ".join(mism)))

    other = decompose(a, f, _next_shift(dec.operator))
    same = _same_blocks(dec, other)
    checks.append(Check("mu_independence", same, f"mu = {dec.mu} vs mu = {other.mu}"))

    return VnReport(dec, tuple(checks), tuple(notes))


# ---------------------------------------------------------------- pairing operators


def _pairing(a: Algebra, f: Sequence, left: Subspace, right: Subspace) -> tuple[Matrix, Matrix]:
    """``P[i][k] = F(l_i r_k)`` and ``T[i][k] = F(r_k l_i)``."""
    p = gram_matrix(a, f, left, right)
    t = gram_matrix(a, f, right, left).T
    return p, t


@dataclass(frozen=True)
class UOperator:
    alpha: SpectralValue
    matrix: Matrix  # acts on coordinates in the canonical basis of V_N(alpha), row convention
    basis: Subspace
    partner: Subspace
    nilpotent: bool
    flag: bool


def _u_matrix(a: Algebra, f, left: Subspace, right: Subspace) -> tuple[Matrix, Matrix]:
    if left.dim != right.dim:
        raise SingularPairing(f"paired spaces have dimensions {left.dim} and {right.dim}")
    p, t = _pairing(a, f, left, right)
    try:
        tinv = t.inverse()
    except SingularMatrix:
        raise SingularPairing("the pairing F(b a) is degenerate") from None
    return p * tinv, t


def u_operator(a: Algebra, f: Sequence, alpha, mu=None) -> UOperator:
    """The operator U on V_N(alpha) defined by ``F(x b) = F(b U(x))`` for b in V_N(1/alpha).

    In coordinates ``F(a_i b) = sum_j U_ij F(b a_j)``; ``U - alpha`` is
    nilpotent and lowers the level of the Jordan chain by one.
    """
    alpha = spectral(alpha)
    if alpha.is_infinity or alpha.is_orbit or alpha.value in (0, 1):
        raise InvalidAlpha("U is defined for rational alpha outside {0, 1, ∞}")
    f = as_functional(a, f)
    dec = decompose(a, f, mu)
    blk = dec.block(alpha)
    partner = dec.block(alpha.reciprocal())
    if blk is None or partner is None:
        raise MissingBlock(f"no spectral block at {alpha} or at its reciprocal")
    u, _ = _u_matrix(a, f, blk.space, partner.space)
    d = blk.dim
    shifted = u - Matrix.identity(d).scale(alpha.value)
    nilpotent = all(x == 0 for row in (shifted ** d).tolist() for x in row)
    basis_m = blk.space.matrix()
    flag = True
    for k in range(len(blk.chain)):
        lower = blk.level(k - 1)
        for v in blk.level(k).basis:
            image = (Matrix([blk.space.coords(v)], cols=d) * u * basis_m).row(0)
            if vsub(image, vscale(alpha.value, v)) not in lower:
                flag = False
    return UOperator(alpha, u, blk.space, partner.space, nilpotent, flag)


@dataclass(frozen=True)
class BlockCharpolyResult:
    passed: bool
    chi: BinaryForm
    rhs: BinaryForm
    pairings: dict  # label -> invertible?


def block_charpoly_check(a: Algebra, f: Sequence, mu=None) -> BlockCharpolyResult:
    """Rebuild the characteristic form from per-block pairings and compare up to a constant."""
    f = as_functional(a, f)
    dec = decompose(a, f, mu)
    chi = pencil_det(dec.operator.m, dec.operator.mt)
    rhs = BinaryForm.constant(1)
    pairings: dict = {}

    vinf, v0 = dec.space(INF), dec.space(0)
    if vinf.dim or v0.dim:
        if vinf.dim != v0.dim:
            pairings["∞,0"] = False
        else:
            ainf = gram_matrix(a, f, vinf, v0)
            z = Matrix.zeros(ainf.rows, ainf.cols)
            pairings["∞,0"] = ainf.det() != 0
            rhs = rhs * pencil_det(ainf, z) * pencil_det(z, ainf)

    v1 = dec.space(1)
    if v1.dim:
        q = gram_matrix(a, f, v1, v1)
        pairings["1"] = q.det() != 0
        rhs = rhs * pencil_det(q, q)

    for b in dec.blocks:
        al = b.alpha
        if al.is_infinity or al.is_zero() or al.is_one():
            continue
        partner = dec.block(al.reciprocal())
        label = str(al)
        if partner is None:
            pairings[label] = False
            continue
        try:
            u, t = _u_matrix(a, f, b.space, partner.space)
        except SingularPairing:
            pairings[label] = False
            continue
        pairings[label] = True
        rhs = rhs * pencil_det(u * t, t)

    ok = all(pairings.values()) and rhs.proportional(chi)
    return BlockCharpolyResult(ok, chi, rhs, pairings)


@dataclass(frozen=True)
class PhiIdealResult:
    alpha: SpectralValue
    image: Subspace
    left_ideal: bool
    right_ideal: bool

    @property
    def passed(self) -> bool:
        return self.left_ideal and self.right_ideal


def phi_ideal_check(a: Algebra, f: Sequence, alpha, mu=None) -> PhiIdealResult:
    """``Im = V_N(alpha)·V_N(1/alpha)`` must be a two-sided ideal of V_N(1)."""
    alpha = spectral(alpha)
    if alpha.is_infinity or alpha.is_zero():
        raise InvalidAlpha("alpha must be finite and nonzero")
    dec = decompose(a, f, mu)
    if dec.block(alpha) is None or dec.block(alpha.reciprocal()) is None:
        raise MissingBlock(f"no spectral block at {alpha} or at its reciprocal")
    image = subspace_product(a, dec.space(alpha), dec.space(alpha.reciprocal()))
    v1 = dec.space(1)
    return PhiIdealResult(
        alpha,
        image,
        subspace_product(a, v1, image) <= image,
        subspace_product(a, image, v1) <= image,
    )
