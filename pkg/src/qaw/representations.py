"""Finite-dimensional spin modules with exact matrix entries.

Basis convention: the spin-j module (dimension two_j + 1) uses the weight
basis |m> with m = j, j-1, ..., -j in *descending* order, so index i carries
m = (two_j - 2i)/2.  The generator action

    E|m> = [j - m]_q |m+1>,   F|m> = [j + m]_q |m-1>,   K|m> = s^(2m) |m>

keeps every matrix entry a Laurent polynomial in s (no square roots).  The
defining relations and the nilpotency E^(two_j+1) = F^(two_j+1) = 0 are
verified at construction time.

Tensor contexts are built by Kronecker products in row-major index order:
the flat index of (i_1, ..., i_n) is sum(i_k * strides[k]).  The operator
q^(2 H@H) used by the R-matrix exists only here, as the diagonal with entry
s^(4 m_a m_b) on the weight pair (m_a, m_b).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache, reduce

from .algebra import (ArityMismatchError, PBWMonomial, TensorElement,
                      casimir, coproduct, extend_coproduct, generator,
                      pbw_element)
from .scalars import ScalarDomain, RatFunc, LaurentPoly, laurent_divexact, laurent_gcd


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a matrix that is singular over the scalar field."""


class InternalMismatchError(RuntimeError):
    """Raised when two independent constructions of the same object disagree."""


class ExactMatrix:
    """Square sparse matrix over the scalar field; no explicit zero entries."""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries: dict[tuple[int, int], object] | None = None):
        e = {}
        if entries:
            for rc, v in entries.items():
                if v:
                    e[rc] = v
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_entries", e)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, dim: int, one) -> ExactMatrix:
        return cls(dim, {(i, i): one for i in range(dim)})

    @classmethod
    def diagonal(cls, values) -> ExactMatrix:
        values = list(values)
        return cls(len(values), {(i, i): v for i, v in enumerate(values)})

    # -- inspection

    def entry(self, r: int, c: int):
        return self._entries.get((r, c))

    def items(self):
        return self._entries.items()

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def is_identity(self) -> bool:
        if len(self._entries) != self.dim:
            return False
        return all(r == c and v == 1 for (r, c), v in self._entries.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        raise TypeError("ExactMatrix is not hashable")

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_dim(other)
        out = dict(self._entries)
        for rc, v in other._entries.items():
            w = out.get(rc)
            w = v if w is None else w + v
            if w:
                out[rc] = w
            elif rc in out:
                del out[rc]
        return ExactMatrix(self.dim, out)

    def __neg__(self):
        return ExactMatrix(self.dim, {rc: -v for rc, v in self._entries.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> ExactMatrix:
        if not c:
            return ExactMatrix(self.dim)
        return ExactMatrix(self.dim, {rc: v * c for rc, v in self._entries.items()})

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_dim(other)
        rows: dict[int, list] = {}
        for (r, c), v in self._entries.items():
            rows.setdefault(r, []).append((c, v))
        cols: dict[int, list] = {}
        for (r, c), v in other._entries.items():
            cols.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], object] = {}
        for r, left in rows.items():
            for c1, v1 in left:
                right = cols.get(c1)
                if not right:
                    continue
                for c2, v2 in right:
                    rc = (r, c2)
                    w = v1 * v2
                    old = out.get(rc)
                    w = w if old is None else old + w
                    if w:
                        out[rc] = w
                    elif rc in out:
                        del out[rc]
        return ExactMatrix(self.dim, out)

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        d2 = other.dim
        out = {}
        for (r1, c1), v1 in self._entries.items():
            for (r2, c2), v2 in other._entries.items():
                v = v1 * v2
                if v:
                    out[(r1 * d2 + r2, c1 * d2 + c2)] = v
        return ExactMatrix(self.dim * d2, out)

    # -- serialization

    def text(self) -> str:
        """Golden-file text: lines ``row col :: entry-text`` sorted by (row, col)."""
        lines = []
        for (r, c) in sorted(self._entries):
            v = self._entries[(r, c)]
            vtext = v.text() if hasattr(v, "text") else str(v)
            lines.append(f"{r} {c} :: {vtext}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"<ExactMatrix dim={self.dim} nnz={len(self._entries)}>"

    def _check_dim(self, other: ExactMatrix):
        if self.dim != other.dim:
            raise ArityMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")


# ---------------------------------------------------------------------------
# spin modules
# ---------------------------------------------------------------------------

class SpinModule:
    """The (two_j + 1)-dimensional irreducible weight module."""

    def __init__(self, two_j: int, domain: ScalarDomain):
        if two_j < 0:
            raise ValueError("two_j must be nonnegative")
        self.two_j = two_j
        self.domain = domain
        self.dim = two_j + 1
        # index i carries weight m = (two_j - 2i)/2; stored as 2m.
        self.two_m = [two_j - 2 * i for i in range(self.dim)]
        self.e = ExactMatrix(self.dim, {(i - 1, i): domain.q_int(i)
                                        for i in range(1, self.dim)})
        self.f = ExactMatrix(self.dim, {(i + 1, i): domain.q_int(two_j - i)
                                        for i in range(self.dim - 1)})
        self.k = ExactMatrix.diagonal(domain.s(t) for t in self.two_m)
        self.kinv = ExactMatrix.diagonal(domain.s(-t) for t in self.two_m)
        self._mono_cache: dict[PBWMonomial, ExactMatrix] = {}
        self._pow_cache: dict[tuple[str, int], ExactMatrix] = {}
        self._verify()

    def _verify(self):
        d = self.domain
        ident = ExactMatrix.identity(self.dim, d.one)
        qdiff = d.q(1) - d.q(-1)
        rel = [
            self.k * self.e - (self.e * self.k).scale(d.q(1)),
            self.k * self.f - (self.f * self.k).scale(d.q(-1)),
            (self.e * self.f - self.f * self.e)
            - (self.k * self.k - self.kinv * self.kinv).scale(d.one / qdiff),
            self.k * self.kinv - ident,
            self.gen_power("e", self.two_j + 1),
            self.gen_power("f", self.two_j + 1),
        ]
        if any(not m.is_zero() for m in rel):
            raise InternalMismatchError(
                f"defining relations fail on spin module two_j={self.two_j}")

    def gen_power(self, name: str, n: int) -> ExactMatrix:
        """Cached n-th power of a generator matrix ("e", "f", "k" or "kinv")."""
        key = (name, n)
        cached = self._pow_cache.get(key)
        if cached is not None:
            return cached
        base = {"e": self.e, "f": self.f, "k": self.k, "kinv": self.kinv}[name]
        m = ExactMatrix.identity(self.dim, self.domain.one)
        for _ in range(n):
            m = m * base
        self._pow_cache[key] = m
        return m

    def monomial(self, mono: PBWMonomial) -> ExactMatrix:
        """Matrix of F^f E^e K^k on this module."""
        cached = self._mono_cache.get(mono)
        if cached is not None:
            return cached
        m = self.gen_power("f", mono.f) * self.gen_power("e", mono.e)
        if mono.k >= 0:
            m = m * self.gen_power("k", mono.k)
        else:
            m = m * self.gen_power("kinv", -mono.k)
        self._mono_cache[mono] = m
        return m

    def __repr__(self):
        return f"SpinModule(two_j={self.two_j}, {self.domain.describe()})"


@lru_cache(maxsize=None)
def spin_module(two_j: int, domain: ScalarDomain) -> SpinModule:
    """Shared immutable cache of spin modules, keyed by (two_j, domain)."""
    return SpinModule(two_j, domain)


class TensorContext:
    """A tensor product of spin modules; total dimension is the product."""

    def __init__(self, spins: tuple[int, ...], domain: ScalarDomain):
        if not spins:
            raise ArityMismatchError("a tensor context needs at least one leg")
        self.spins = tuple(spins)
        self.domain = domain
        self.modules = tuple(spin_module(t, domain) for t in self.spins)
        self.dims = tuple(m.dim for m in self.modules)
        self.total_dim = 1
        for d in self.dims:
            self.total_dim *= d
        self.strides = []
        acc = 1
        for d in reversed(self.dims):
            self.strides.append(acc)
            acc *= d
        self.strides = tuple(reversed(self.strides))
        self._repr_cache: dict[tuple[PBWMonomial, ...], ExactMatrix] = {}

    @property
    def arity(self) -> int:
        return len(self.spins)

    def flat_index(self, multi) -> int:
        return sum(i * s for i, s in zip(multi, self.strides))

    def multi_indices(self):
        return itertools.product(*(range(d) for d in self.dims))

    def monomial_matrix(self, key: tuple[PBWMonomial, ...]) -> ExactMatrix:
        cached = self._repr_cache.get(key)
        if cached is not None:
            return cached
        m = reduce(ExactMatrix.kron,
                   (mod.monomial(mono) for mod, mono in zip(self.modules, key)))
        self._repr_cache[key] = m
        return m

    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(self.total_dim, self.domain.one)

    def __repr__(self):
        return f"TensorContext(spins={self.spins}, {self.domain.describe()})"


@lru_cache(maxsize=None)
def tensor_context(spins: tuple[int, ...], domain: ScalarDomain) -> TensorContext:
    return TensorContext(tuple(spins), domain)


def represent(x: TensorElement, ctx: TensorContext) -> ExactMatrix:
    """Evaluate a symbolic element to its matrix on the context (algebra morphism)."""
    if x.arity != ctx.arity:
        raise ArityMismatchError(
            f"element arity {x.arity} vs context arity {ctx.arity}")
    if x.domain != ctx.domain:
        raise ArityMismatchError("element and context use different scalar domains")
    acc: dict[tuple[int, int], object] = {}
    for key, coeff in x.items():
        mat = ctx.monomial_matrix(key)
        for rc, v in mat.items():
            w = coeff * v
            old = acc.get(rc)
            w = w if old is None else old + w
            if w:
                acc[rc] = w
            elif rc in acc:
                del acc[rc]
    return ExactMatrix(ctx.total_dim, acc)


# ---------------------------------------------------------------------------
# the R-matrix and its flipped companion
# ---------------------------------------------------------------------------

def _weight_diagonal(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    """q^(2 H@H) on V_a @ V_b: diagonal entry s^(4 m_a m_b)."""
    d = mod_a.domain
    dim_b = mod_b.dim
    out = {}
    for ia, ta in enumerate(mod_a.two_m):
        for ib, tb in enumerate(mod_b.two_m):
            idx = ia * dim_b + ib
            out[(idx, idx)] = d.s(ta * tb)
    return ExactMatrix(mod_a.dim * dim_b, out)


@lru_cache(maxsize=None)
def _r_core(mod_a: SpinModule, mod_b: SpinModule, extra_terms: int = 0) -> ExactMatrix:
    """R on V_a @ V_b: q^(2 H@H) sum_n a_n (E q^H @ q^-H F)^n.

    The series truncates at n = min(two_j_a, two_j_b) by nilpotency;
    extra_terms extends it past the bound (the extra terms are zero, which
    the truncation check asserts).
    """
    d = mod_a.domain
    x = (mod_a.e * mod_a.k).kron(mod_b.kinv * mod_b.f)
    bound = min(mod_a.two_j, mod_b.two_j) + extra_terms
    total = ExactMatrix.identity(mod_a.dim * mod_b.dim, d.one)
    term = None
    for n in range(1, bound + 1):
        term = x if term is None else term * x
        total = total + term.scale(d.series_coeff(n))
    return _weight_diagonal(mod_a, mod_b) * total


@lru_cache(maxsize=None)
def _theta_core(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    """The reordered series Theta = sum_n a_n (F q^H @ q^-H E)^n."""
    d = mod_a.domain
    x = (mod_a.f * mod_a.k).kron(mod_b.kinv * mod_b.e)
    bound = min(mod_a.two_j, mod_b.two_j)
    total = ExactMatrix.identity(mod_a.dim * mod_b.dim, d.one)
    term = None
    for n in range(1, bound + 1):
        term = x if term is None else term * x
        total = total + term.scale(d.series_coeff(n))
    return total


def _flip(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    """The flip V_b @ V_a -> V_a @ V_b as a square 0/1 matrix."""
    one = mod_a.domain.one
    da, db = mod_a.dim, mod_b.dim
    return ExactMatrix(da * db, {(ia * db + ib, ib * da + ia): one
                                 for ia in range(da) for ib in range(db)})


@lru_cache(maxsize=None)
def _rt_core(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    """Rtilde = R_21 on V_a @ V_b, computed two independent ways and compared."""
    via_flip, via_series = _rt_core_two_ways(mod_a, mod_b)
    if via_flip != via_series:
        raise InternalMismatchError(
            "flip-conjugated R and the reordered series disagree")
    return via_flip


def _rt_core_two_ways(mod_a: SpinModule, mod_b: SpinModule):
    flip = _flip(mod_a, mod_b)
    flip_back = _flip(mod_b, mod_a)
    via_flip = flip * _r_core(mod_b, mod_a) * flip_back
    via_series = _theta_core(mod_a, mod_b) * _weight_diagonal(mod_a, mod_b)
    return via_flip, via_series


@lru_cache(maxsize=None)
def _r_core_inverse(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    return matrix_inverse(_r_core(mod_a, mod_b))


@lru_cache(maxsize=None)
def _rt_core_inverse(mod_a: SpinModule, mod_b: SpinModule) -> ExactMatrix:
    return matrix_inverse(_rt_core(mod_a, mod_b))


def _check_leg_pair(legs, ctx):
    a, b = legs
    if not (1 <= a < b <= ctx.arity):
        raise ArityMismatchError(f"invalid leg pair {legs} for arity {ctx.arity}")
    return a, b


def embed_two_leg(m: ExactMatrix, legs: tuple[int, int], ctx: TensorContext) -> ExactMatrix:
    """Embed a matrix on (V_a, V_b) into the context, identity on other legs."""
    a, b = _check_leg_pair(legs, ctx)
    ia, ib = a - 1, b - 1
    da, db = ctx.dims[ia], ctx.dims[ib]
    if m.dim != da * db:
        raise ArityMismatchError("matrix dimension does not match the leg pair")
    sa, sb = ctx.strides[ia], ctx.strides[ib]
    others = [i for i in range(ctx.arity) if i not in (ia, ib)]
    offsets = [0]
    for i in others:
        offsets = [off + j * ctx.strides[i]
                   for off in offsets for j in range(ctx.dims[i])]
    out = {}
    for (r, c), v in m.items():
        ra, rb = divmod(r, db)
        ca, cb = divmod(c, db)
        base_r = ra * sa + rb * sb
        base_c = ca * sa + cb * sb
        for off in offsets:
            out[(base_r + off, base_c + off)] = v
    return ExactMatrix(ctx.total_dim, out)


def r_matrix(legs: tuple[int, int], ctx: TensorContext,
             extra_terms: int = 0) -> ExactMatrix:
    """The R-matrix acting on legs a < b of the context, identity elsewhere."""
    a, b = _check_leg_pair(legs, ctx)
    core = _r_core(ctx.modules[a - 1], ctx.modules[b - 1], extra_terms)
    return embed_two_leg(core, legs, ctx)


def r_matrix_inverse(legs: tuple[int, int], ctx: TensorContext) -> ExactMatrix:
    a, b = _check_leg_pair(legs, ctx)
    return embed_two_leg(_r_core_inverse(ctx.modules[a - 1], ctx.modules[b - 1]),
                         legs, ctx)


def r_tilde(legs: tuple[int, int], ctx: TensorContext) -> ExactMatrix:
    """The flipped R-matrix R_21 on legs a < b (both constructions compared)."""
    a, b = _check_leg_pair(legs, ctx)
    return embed_two_leg(_rt_core(ctx.modules[a - 1], ctx.modules[b - 1]), legs, ctx)


def r_tilde_inverse(legs: tuple[int, int], ctx: TensorContext) -> ExactMatrix:
    a, b = _check_leg_pair(legs, ctx)
    return embed_two_leg(_rt_core_inverse(ctx.modules[a - 1], ctx.modules[b - 1]),
                         legs, ctx)


def r_series_term(legs: tuple[int, int], ctx: TensorContext, n: int) -> ExactMatrix:
    """The n-th series term q^(2 H@H) a_n (E q^H @ q^-H F)^n on the leg pair."""
    a, b = _check_leg_pair(legs, ctx)
    mod_a, mod_b = ctx.modules[a - 1], ctx.modules[b - 1]
    d = ctx.domain
    x = (mod_a.e * mod_a.k).kron(mod_b.kinv * mod_b.f)
    term = ExactMatrix.identity(mod_a.dim * mod_b.dim, d.one)
    for _ in range(n):
        term = term * x
    core = _weight_diagonal(mod_a, mod_b) * term.scale(d.series_coeff(n))
    return embed_two_leg(core, legs, ctx)


def permutation_operator(legs: tuple[int, int], ctx: TensorContext) -> ExactMatrix:
    """The operator swapping two legs of equal spin."""
    a, b = _check_leg_pair(legs, ctx)
    ia, ib = a - 1, b - 1
    if ctx.dims[ia] != ctx.dims[ib]:
        raise ArityMismatchError("permutation_operator needs legs of equal dimension")
    one = ctx.domain.one
    out = {}
    for multi in ctx.multi_indices():
        swapped = list(multi)
        swapped[ia], swapped[ib] = swapped[ib], swapped[ia]
        out[(ctx.flat_index(swapped), ctx.flat_index(multi))] = one
    return ExactMatrix(ctx.total_dim, out)


# ---------------------------------------------------------------------------
# exact inverse by fraction-free elimination
# ---------------------------------------------------------------------------

def _lcm_poly(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return laurent_divexact(a * b, laurent_gcd(a, b))


def matrix_inverse(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse via fraction-free (Bareiss) Gaussian elimination.

    Rows are first scaled to clear denominators; the scale factors seed the
    augmented columns so that back substitution yields the inverse of the
    original matrix directly.  The result is verified by a product check.
    """
    n = m.dim
    symbolic = any(isinstance(v, RatFunc) for _, v in m.items())
    rows: list[dict[int, object]] = [dict() for _ in range(n)]
    if symbolic:
        dens: list[LaurentPoly] = [LaurentPoly.one() for _ in range(n)]
        for (r, c), v in m.items():
            if not v.is_polynomial():
                dens[r] = _lcm_poly(dens[r], v.den)
        for (r, c), v in m.items():
            rows[r][c] = v.num * laurent_divexact(dens[r], v.den)
        for r in range(n):
            rows[r][n + r] = dens[r]
    else:
        dens_i = [1] * n
        for (r, c), v in m.items():
            v = Fraction(v)
            dens_i[r] = dens_i[r] * v.denominator // math.gcd(dens_i[r], v.denominator)
        for (r, c), v in m.items():
            v = Fraction(v)
            rows[r][c] = v.numerator * (dens_i[r] // v.denominator)
        for r in range(n):
            rows[r][n + r] = dens_i[r]

    def divexact(a, b):
        if isinstance(a, LaurentPoly):
            return laurent_divexact(a, b)
        q, rem = divmod(a, b)
        if rem:
            raise ArithmeticError("inexact division in Bareiss step")
        return q

    def size(v):
        return v.term_count() if isinstance(v, LaurentPoly) else abs(v)

    prev = None
    for k in range(n):
        pivot_row = None
        best = None
        for r in range(k, n):
            v = rows[r].get(k)
            if v:
                sz = size(v)
                if best is None or sz < best:
                    best = sz
                    pivot_row = r
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular over the scalar field")
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
        pk = rows[k][k]
        for r in range(k + 1, n):
            vk = rows[r].pop(k, None)
            old_row = rows[r]
            # Bareiss one-step: every entry below the pivot row becomes
            # (pk * a_rc - a_rk * a_kc) / prev, the division being exact.
            support = set(old_row)
            if vk is not None:
                support.update(c for c in rows[k] if c > k)
            new_row = {}
            for c in support:
                x = old_row.get(c)
                val = pk * x if x is not None else None
                if vk is not None:
                    y = rows[k].get(c)
                    if y is not None:
                        piece = vk * y
                        val = (val - piece) if val is not None else -piece
                if val:
                    new_row[c] = divexact(val, prev) if prev is not None else val
            rows[r] = new_row
        prev = pk

    # Back substitution over the field; solution columns are m^-1 directly.
    lift = RatFunc if symbolic else Fraction
    inv_rows: list[dict[int, object]] = [dict() for _ in range(n)]
    for i in reversed(range(n)):
        pivot = lift(rows[i][i])
        for j in range(n):
            total = rows[i].get(n + j)
            total = lift(total) if total is not None else None
            for t in range(i + 1, n):
                u = rows[i].get(t)
                w = inv_rows[t].get(j)
                if u and w is not None:
                    piece = lift(u) * w
                    total = -piece if total is None else total - piece
            if total:
                inv_rows[i][j] = total / pivot
    inv = ExactMatrix(n, {(r, c): v for r, row in enumerate(inv_rows)
                          for c, v in row.items()})
    if not (m * inv).is_identity():
        raise InternalMismatchError("inverse failed the product check")
    return inv


# ---------------------------------------------------------------------------
# intermediate Casimir matrices
# ---------------------------------------------------------------------------

def casimir_scalar_highest_weight(two_j: int, domain: ScalarDomain):
    """Independent oracle for the Casimir scalar on spin j.

    On the highest-weight vector E acts as zero and K^2 reads q^(two_j), so
    the Casimir formula collapses to -(q^(two_j+1) + q^-(two_j+1))/(q + q^-1).
    """
    num = LaurentPoly({2 * two_j + 2: -1, -2 * two_j - 2: -1})
    return domain.from_ratio(num, LaurentPoly({2: 1, -2: 1}))


def intermediate_casimirs(ctx: TensorContext) -> dict[str, ExactMatrix]:
    """All intermediate Casimir matrices of a 3- or 4-leg context.

    The conjugated elements are computed along both routes so callers can
    compare them:  C13_0 as Rt_23^-1 C_13 Rt_23 and as R_12 C_13 R_12^-1
    (keys "C13_0" and "C13_0_via_r12"), C13_1 as Rt_12^-1 C_13 Rt_12 and as
    R_23 C_13 R_23^-1; on four legs likewise C13_0 and C24_1 (via R_34).
    """
    n = ctx.arity
    if n not in (3, 4):
        raise ArityMismatchError("intermediate Casimirs need 3 or 4 legs")
    domain = ctx.domain
    c = casimir(domain)
    out: dict[str, ExactMatrix] = {}
    for i in range(1, n + 1):
        out[f"C{i}"] = represent(extend_coproduct(c, (i,), n), ctx)
    out["C13"] = represent(extend_coproduct(c, (1, 3), n), ctx)
    if n == 3:
        out["C12"] = represent(extend_coproduct(c, (1, 2), 3), ctx)
        out["C23"] = represent(extend_coproduct(c, (2, 3), 3), ctx)
        out["C123"] = represent(extend_coproduct(c, (1, 2, 3), 3), ctx)
        c13 = out["C13"]
        out["C13_0"] = r_tilde_inverse((2, 3), ctx) * c13 * r_tilde((2, 3), ctx)
        out["C13_0_via_r12"] = r_matrix((1, 2), ctx) * c13 * r_matrix_inverse((1, 2), ctx)
        out["C13_1"] = r_tilde_inverse((1, 2), ctx) * c13 * r_tilde((1, 2), ctx)
        out["C13_1_via_r23"] = r_matrix((2, 3), ctx) * c13 * r_matrix_inverse((2, 3), ctx)
    else:
        out["C24"] = represent(extend_coproduct(c, (2, 4), 4), ctx)
        c13, c24 = out["C13"], out["C24"]
        out["C13_0"] = r_tilde_inverse((2, 3), ctx) * c13 * r_tilde((2, 3), ctx)
        out["C13_0_via_r12"] = r_matrix((1, 2), ctx) * c13 * r_matrix_inverse((1, 2), ctx)
        out["C24_1"] = r_tilde_inverse((2, 3), ctx) * c24 * r_tilde((2, 3), ctx)
        out["C24_1_via_r34"] = r_matrix((3, 4), ctx) * c24 * r_matrix_inverse((3, 4), ctx)
    return out


# ---------------------------------------------------------------------------
# coproducts of the R-matrix, realized honestly on three legs
# ---------------------------------------------------------------------------

def coproduct_split_r(ctx: TensorContext, side: str) -> ExactMatrix:
    """(id @ D)R or (D @ id)R on a 3-leg context, built from the series.

    side "id_coproduct": the coproduct acts on the second tensor factor of
    R, so the diagonal carries s^(4 m1 (m2 + m3)) and the nilpotent part is
    (E q^H) @ D(q^-H F).  side "coproduct_id" is the mirror image.
    """
    if ctx.arity != 3:
        raise ArityMismatchError("coproduct_split_r needs a 3-leg context")
    d = ctx.domain
    kinv_f = pbw_element(d, 0, 0, -1) * generator(d, "F")
    e_k = generator(d, "E") * pbw_element(d, 0, 0, 1)
    m1, m2, m3 = ctx.modules
    if side == "id_coproduct":
        pair = tensor_context((ctx.spins[1], ctx.spins[2]), d)
        x = represent(e_k, tensor_context((ctx.spins[0],), d)).kron(
            represent(coproduct(kinv_f), pair))
    elif side == "coproduct_id":
        pair = tensor_context((ctx.spins[0], ctx.spins[1]), d)
        x = represent(coproduct(e_k), pair).kron(
            represent(kinv_f, tensor_context((ctx.spins[2],), d)))
    else:
        raise ValueError(f"unknown side {side!r}")
    diag = {}
    for i1, t1 in enumerate(m1.two_m):
        for i2, t2 in enumerate(m2.two_m):
            for i3, t3 in enumerate(m3.two_m):
                i = ctx.flat_index((i1, i2, i3))
                expo = t1 * (t2 + t3) if side == "id_coproduct" else (t1 + t2) * t3
                diag[(i, i)] = d.s(expo)
    total = ctx.identity()
    term = ctx.identity()
    n = 0
    while True:
        n += 1
        term = term * x
        if term.is_zero():
            break
        total = total + term.scale(d.series_coeff(n))
    return ExactMatrix(ctx.total_dim, diag) * total
