"""Exact cyclotomic values and additive characters mod F.

All character sums in this package are exact elements of Z[zeta_p]
(:class:`CycValue`), coordinates over the integral basis
{1, zeta, ..., zeta^(p-2)} with the relation 1 + zeta + ... + zeta^(p-1) = 0.
Floating point enters only when a value is compared against an irrational
bound.

The additive character mod F is  e_F(x) = zeta_p^(Tr(rc(x)))  where rc(x) is
the coefficient of T^(-1) in the Laurent expansion of rep(x)/F; concretely
rc(x) equals the degree-(r-1) coefficient of rep(x) divided by the leading
coefficient of F.  An independent truncated-Laurent long-division oracle is
provided for cross-validation.

:class:`CharContext` caches index tables (products, inverses, character
exponents) for one modulus so that full brute-force sums over residue systems
run at a few machine operations per term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    IncompatibleCyclotomicOrder,
    InvalidParameter,
)
from .field import FieldElem, FieldSpec
from .polyring import Modulus, Poly, poly_from_index, poly_index

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CycValue:
    """An element of Z[zeta_p], p prime, in the basis {zeta^0..zeta^(p-2)}."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise InvalidParameter("cyclotomic coordinate vector has wrong length")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(p: int) -> "CycValue":
        return CycValue(p, (0,) * (p - 1))

    @staticmethod
    def integer(p: int, n: int) -> "CycValue":
        return CycValue(p, (n,) + (0,) * (p - 2))

    @staticmethod
    def one(p: int) -> "CycValue":
        return CycValue.integer(p, 1)

    @staticmethod
    def root(p: int, k: int) -> "CycValue":
        """zeta_p^k."""
        hist = [0] * p
        hist[k % p] = 1
        return CycValue.from_root_histogram(p, hist)

    @staticmethod
    def from_root_histogram(p: int, hist) -> "CycValue":
        """sum_k hist[k] * zeta_p^k for any integer histogram (exponents are
        read mod p)."""
        folded = [0] * p
        for k, n in enumerate(hist):
            if n:
                folded[k % p] += n
        top = folded[p - 1]
        coeffs = [folded[j] - top for j in range(p - 1)]
        return CycValue(p, tuple(coeffs))

    # -- ring operations --------------------------------------------------------

    def _match(self, other: "CycValue") -> None:
        if self.p != other.p:
            raise IncompatibleCyclotomicOrder(
                f"cannot combine Z[zeta_{self.p}] with Z[zeta_{other.p}]"
            )

    def __add__(self, other: "CycValue") -> "CycValue":
        self._match(other)
        return CycValue(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycValue") -> "CycValue":
        self._match(other)
        return CycValue(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycValue":
        return CycValue(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycValue(self.p, tuple(a * other for a in self.coeffs))
        self._match(other)
        p = self.p
        hist = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        hist[(i + j) % p] += a * b
        return CycValue.from_root_histogram(p, hist)

    def __rmul__(self, other: int) -> "CycValue":
        return self.__mul__(other)

    def conj(self) -> "CycValue":
        """Complex conjugation zeta -> zeta^(-1)."""
        p = self.p
        hist = [0] * p
        for j, a in enumerate(self.coeffs):
            if a:
                hist[(p - j) % p] += a
        return CycValue.from_root_histogram(p, hist)

    def abs_sq_exact(self) -> "CycValue":
        """|z|^2 = z * conj(z), exactly."""
        return self * self.conj()

    # -- predicates and conversions ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    @property
    def is_integer(self) -> bool:
        return all(a == 0 for a in self.coeffs[1:])

    def as_int(self) -> int:
        if not self.is_integer:
            raise InvalidParameter(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        out = 0j
        for j, a in enumerate(self.coeffs):
            if a:
                ang = _TWO_PI * j / self.p
                out += a * complex(math.cos(ang), math.sin(ang))
        return out

    def abs_float(self) -> float:
        return abs(self.to_complex())

    def __repr__(self) -> str:
        return f"CycValue(p={self.p}, {self.coeffs})"


# ---------------------------------------------------------------------------
# Residue coefficient  rc(x) = [x/F]_{-1}
# ---------------------------------------------------------------------------

def residue_coeff(g: Poly, h: Poly) -> FieldElem:
    """Coefficient of T^(-1) in the Laurent expansion of g/h (deg h >= 1).

    Equals rem_(d-1) / lead(h) where rem = g mod h and d = deg h."""
    if h.is_zero or h.degree < 1:
        raise InvalidParameter("residue coefficient needs a modulus of degree >= 1")
    rem = g % h
    d: int = h.degree  # type: ignore[assignment]
    return rem.coeff(d - 1) * h.lead.inverse()


def residue_coeff_laurent(g: Poly, h: Poly) -> FieldElem:
    """Independent oracle: run Laurent long division of g by h in descending
    powers of T, far enough to read off the T^(-1) coefficient directly."""
    if h.is_zero or h.degree < 1:
        raise InvalidParameter("residue coefficient needs a modulus of degree >= 1")
    field = g.field
    d: int = h.degree  # type: ignore[assignment]
    inv_lead = h.lead.inverse()
    # Remainder as {exponent: coefficient}, exponents may go negative.
    rem: dict[int, FieldElem] = {
        i: c for i, c in enumerate(g.coeffs) if not c.is_zero
    }
    answer = field.zero
    # Each step cancels the current top exponent; stop once every remaining
    # term would only contribute to exponents < -1 of the quotient.
    while rem:
        top = max(rem)
        k = top - d  # quotient exponent produced this step
        if k < -1:
            break
        a = rem[top] * inv_lead
        if k == -1:
            answer = a
            break
        for i, c in enumerate(h.coeffs):
            e = k + i
            val = rem.get(e, field.zero) - a * c
            if val.is_zero:
                rem.pop(e, None)
            else:
                rem[e] = val
    return answer


# ---------------------------------------------------------------------------
# Additive character and interval character sums
# ---------------------------------------------------------------------------

def char_exponent(x: Poly, F: Modulus) -> int:
    """Exponent k in [0, p) with e_F(x) = zeta_p^k, i.e. Tr(rc(x))."""
    rep = F.rep(x)
    return F.field.trace(rep.coeff(F.r - 1) * F.lead_inv)


def e_f(x: Poly, F: Modulus) -> CycValue:
    """The additive character e_F(x) as an exact root of unity."""
    return CycValue.root(F.field.p, char_exponent(x, F))


def e_f_lambda(lam: Poly, x: Poly, F: Modulus) -> CycValue:
    """The twisted character e_F(lambda * x)."""
    return e_f(lam * x, F)


def interval_char_sum(F: Modulus, u: Poly, m: int) -> CycValue:
    """sum over deg x < m of e_F(u x), by the closed form:
    q^m when deg_F(u) < r - m, else 0."""
    if m < 0:
        raise InvalidParameter("interval exponent must be >= 0")
    p = F.field.p
    if F.deg_of(u) < F.r - m:
        return CycValue.integer(p, F.field.q**m)
    return CycValue.zero(p)


def interval_char_sum_literal(F: Modulus, u: Poly, m: int) -> CycValue:
    """Term-by-term oracle for :func:`interval_char_sum`."""
    if m < 0:
        raise InvalidParameter("interval exponent must be >= 0")
    field = F.field
    p = field.p
    hist = [0] * p
    for n in range(field.q**m):
        x = poly_from_index(field, n, m)
        hist[char_exponent(u * x, F)] += 1
    return CycValue.from_root_histogram(p, hist)


_TOP_WEIGHTS: dict[tuple[int, tuple[int, ...]], tuple] = {}


def _top_weight_row(F: Modulus) -> tuple:
    """Top remainder coefficients of the powers: w[j] = coeff_(r-1) of
    T^j mod F for j = 0..2r-2, each from a literal polynomial division."""
    key = (id(F.field), tuple(c.idx for c in F.f.coeffs))
    row = _TOP_WEIGHTS.get(key)
    if row is None:
        r = F.r
        T = Poly.t(F.field)
        t_pow = Poly.one(F.field)
        out = []
        for _ in range(2 * r - 1):
            out.append((t_pow % F.f).coeff(r - 1))
            t_pow = t_pow * T
        row = tuple(out)
        _TOP_WEIGHTS[key] = row
    return row


def interval_char_sum_prefixes(F: Modulus, u: Poly, m_max: int) -> list[CycValue]:
    """Literal partial sums of e_F(u x) over x in index order: entry m is the
    sum of the first q^m terms, for m = 0..m_max (m_max <= r).

    Independent of the closed form: each term's exponent is assembled from
    the coefficients of u and x against the literally reduced power weights
    of F (coeff_(r-1) of T^j mod F), using only the linearity of the trace
    and of reduction mod F.
    """
    if m_max < 0 or m_max > F.r:
        raise InvalidParameter("prefix exponent must satisfy 0 <= m <= r")
    field = F.field
    p, q, r = field.p, field.q, F.r
    w = _top_weight_row(F)
    u = F.rep(u)
    lead_inv = F.lead_inv
    # v[j] carries the contribution of the x-coefficient at T^j, folded with
    # all coefficients of u; the exponent of e_F(u x) is sum_j Tr(x_j v_j).
    step: list[list[int]] = []
    for j in range(max(m_max, 1)):
        s = field.zero
        for i, ui in enumerate(u.coeffs):
            if not ui.is_zero:
                s = s + ui * w[i + j]
        vj = s * lead_inv
        step.append([field.trace(c * vj) for c in field.elements])
    snaps = [q**mm for mm in range(m_max + 1)]
    hist = [0] * p
    out: list[CycValue] = []
    digits = [0] * max(m_max, 1)
    m = 0
    for count in range(q**m_max):
        e = 0
        for j in range(m_max):
            e += step[j][digits[j]]
        hist[e % p] += 1
        while m <= m_max and count + 1 == snaps[m]:
            out.append(CycValue.from_root_histogram(p, list(hist)))
            m += 1
        for j in range(m_max):
            d = digits[j] + 1
            if d < q:
                digits[j] = d
                break
            digits[j] = 0
    return out


# ---------------------------------------------------------------------------
# CharContext: per-modulus index tables for fast exact sums
# ---------------------------------------------------------------------------

_MAX_RESIDUES = 1 << 20


class CharContext:
    """Cached index tables for one modulus F.

    Residue i (0 <= i < q^r) is the canonical-order polynomial of degree < r;
    ``psi[i]`` is the character exponent of residue i, products and inverses
    are table lookups, and whole character sums reduce to byte-string
    operations (exponents are < 13, so adding two packed byte strings as
    little-endian integers adds them pointwise without carries).
    """

    def __init__(self, F: Modulus):
        field = F.field
        self.F = F
        self.field = field
        self.q = field.q
        self.p = field.p
        self.r = F.r
        n = field.q**F.r
        if n > _MAX_RESIDUES:
            raise InvalidParameter(
                f"residue system of size q^r = {n} exceeds the supported maximum {_MAX_RESIDUES}"
            )
        self.n = n
        self.residues: list[Poly] = [poly_from_index(field, i, F.r) for i in range(n)]
        # psi[i]: character exponent of residue i (only the top coefficient
        # of the canonical representative matters).
        tr = field.trace_table
        lead_inv = F.lead_inv
        self.psi: list[int] = [
            tr[(x.coeff(F.r - 1) * lead_inv).idx] for x in self.residues
        ]
        self._mul_rows: dict[int, list[int]] = {}
        self._add_rows: dict[int, list[int]] = {}
        self._unit_data: tuple[list[int], list[int], list[int | None]] | None = None
        self._bytes_cache: dict[tuple[str, int], bytes] = {}
        self._sq: list[int] | None = None
        self._neg: list[int] | None = None

    # -- indexing ---------------------------------------------------------------

    def index(self, x: Poly) -> int:
        """Index of the canonical representative of x."""
        return poly_index(self.F.rep(x), self.r)

    def poly(self, i: int) -> Poly:
        return self.residues[i]

    def mul_row(self, i: int) -> list[int]:
        """row[j] = index of residue_i * residue_j mod F."""
        row = self._mul_rows.get(i)
        if row is None:
            xi = self.residues[i]
            f = self.F.f
            r = self.r
            row = [poly_index((xi * y) % f, r) for y in self.residues]
            self._mul_rows[i] = row
        return row

    def mul(self, i: int, j: int) -> int:
        return self.mul_row(i)[j]

    def add_row(self, i: int) -> list[int]:
        """row[j] = index of residue_i + residue_j (degrees < r, so no
        reduction is needed)."""
        row = self._add_rows.get(i)
        if row is None:
            xi = self.residues[i]
            r = self.r
            row = [poly_index(xi + y, r) for y in self.residues]
            self._add_rows[i] = row
        return row

    def add(self, i: int, j: int) -> int:
        return self.add_row(i)[j]

    @property
    def unit_data(self) -> tuple[list[int], list[int], list[int | None]]:
        """(units, unit_inverses, inv_table): unit indexes in canonical order,
        their inverses aligned positionally, and a full inverse table with
        None at non-units."""
        if self._unit_data is None:
            from .polyring import NotInvertible, inv_mod  # local import, cycle-free

            units: list[int] = []
            unit_invs: list[int] = []
            inv_table: list[int | None] = [None] * self.n
            for i in range(1, self.n):
                try:
                    inv = inv_mod(self.residues[i], self.F)
                except NotInvertible:
                    continue
                j = poly_index(inv, self.r)
                units.append(i)
                unit_invs.append(j)
                inv_table[i] = j
            self._unit_data = (units, unit_invs, inv_table)
        return self._unit_data

    @property
    def units(self) -> list[int]:
        return self.unit_data[0]

    @property
    def unit_count(self) -> int:
        return len(self.unit_data[0])

    def inv_index(self, i: int) -> int | None:
        return self.unit_data[2][i]

    def square_index(self) -> list[int]:
        """sq[i] = index of residue_i^2 mod F."""
        if self._sq is None:
            f = self.F.f
            self._sq = [poly_index((x * x) % f, self.r) for x in self.residues]
        return self._sq

    def neg_index(self) -> list[int]:
        """neg[i] = index of -residue_i."""
        if self._neg is None:
            self._neg = [poly_index(-x, self.r) for x in self.residues]
        return self._neg

    # -- packed exponent strings ---------------------------------------------------

    def _packed(self, kind: str, i: int, domain: list[int]) -> bytes:
        key = (kind, i)
        out = self._bytes_cache.get(key)
        if out is None:
            psi = self.psi
            row = self.mul_row(i)
            out = bytes(psi[row[j]] for j in domain)
            self._bytes_cache[key] = out
        return out

    def packed_lin_units(self, s: int) -> bytes:
        """psi(s * u) over units u, positionally aligned with self.units."""
        return self._packed("lu", s, self.unit_data[0])

    def packed_lin_units_inv(self, t: int) -> bytes:
        """psi(t * u^(-1)) over units u, aligned with self.units."""
        return self._packed("li", t, self.unit_data[1])

    def packed_lin_all(self, s: int) -> bytes:
        """psi(s * x) over all residues x."""
        return self._packed("la", s, range(self.n))  # type: ignore[arg-type]

    def packed_quad_all(self, t: int) -> bytes:
        """psi(t * x^2) over all residues x."""
        key = ("qa", t)
        out = self._bytes_cache.get(key)
        if out is None:
            psi = self.psi
            row = self.mul_row(t)
            out = bytes(psi[row[j]] for j in self.square_index())
            self._bytes_cache[key] = out
        return out

    def packed_quad_units(self, t: int) -> bytes:
        """psi(t * x^2) over units x."""
        key = ("qu", t)
        out = self._bytes_cache.get(key)
        if out is None:
            psi = self.psi
            row = self.mul_row(t)
            sq = self.square_index()
            out = bytes(psi[row[sq[u]]] for u in self.unit_data[0])
            self._bytes_cache[key] = out
        return out

    def hist_of_packed_sum(self, *packed: bytes) -> list[int]:
        """Histogram (length p, exponents folded mod p) of the pointwise sum
        of up to a few packed exponent strings."""
        if not packed:
            raise InvalidParameter("need at least one packed string")
        width = len(packed[0])
        if width == 0:
            return [0] * self.p
        total = 0
        for b in packed:
            # max pointwise sum = len(packed) * (p-1) <= 3 * 12 < 256: no carries.
            total += int.from_bytes(b, "little")
        combined = total.to_bytes(width + 1, "little")[:width]
        hist = [0] * self.p
        for e in range(len(packed) * (self.p - 1) + 1):
            c = combined.count(e)
            if c:
                hist[e % self.p] += c
        return hist

    def cyc_from_hist(self, hist: list[int]) -> CycValue:
        return CycValue.from_root_histogram(self.p, hist)


_context_cache: dict[tuple[int, tuple[int, ...]], CharContext] = {}


def get_context(F: Modulus) -> CharContext:
    """Shared per-modulus context (keyed on field identity and coefficients)."""
    key = (id(F.field), tuple(c.idx for c in F.f.coeffs))
    ctx = _context_cache.get(key)
    if ctx is None:
        ctx = CharContext(F)
        _context_cache[key] = ctx
    return ctx
