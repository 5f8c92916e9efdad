"""Polynomials over F_q and modular arithmetic in F_q[T]/<F>.

Polynomials are immutable little-endian coefficient tuples with no trailing
zeros; ``deg 0 = NEG_INF``, a sentinel that compares below every integer and
absorbs addition.  A :class:`Modulus` wraps a nonzero polynomial F of degree
r >= 1 and caches its degree, leading coefficient (and inverse), and
factorization into monic irreducibles.

Canonical enumeration order (used everywhere determinism matters): the
polynomial of index n, within degree bound m, has coefficient j equal to the
field element of index ``(n // q^j) mod q``; i.e. the constant term varies
fastest.  Monic polynomials of degree d enumerate their lower coefficients the
same way.

gcds are always monic; ``gcd(0, b) = monic(b)`` and ``gcd(0, 0)`` raises
:class:`~ffsums.errors.UndefinedGcd`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import (
    DivisionByZero,
    InvalidParameter,
    NotFactorable,
    NotInvertible,
    UndefinedGcd,
    UnsupportedCharacteristic,
)
from .field import FieldElem, FieldSpec


class _NegInf:
    """Degree of the zero polynomial: below every int, absorbs + and -."""

    _instance: "_NegInf | None" = None

    def __new__(cls) -> "_NegInf":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return other is self

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("NEG_INF")

    def __add__(self, other: object) -> "_NegInf":
        return self

    __radd__ = __add__
    __sub__ = __add__

    def __repr__(self) -> str:
        return "NEG_INF"


NEG_INF = _NegInf()


@dataclass(frozen=True, eq=False)
class Poly:
    """Immutable polynomial over a fixed F_q (little-endian coefficients)."""

    field: FieldSpec
    coeffs: tuple[FieldElem, ...]  # no trailing zeros

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def make(field: FieldSpec, coeffs) -> "Poly":
        c = list(coeffs)
        while c and c[-1].is_zero:
            c.pop()
        return Poly(field, tuple(c))

    @staticmethod
    def from_ints(field: FieldSpec, ints) -> "Poly":
        """Coefficients from little-endian prime-subfield integers."""
        return Poly.make(field, [field.from_int(n) for n in ints])

    @staticmethod
    def zero(field: FieldSpec) -> "Poly":
        return Poly(field, ())

    @staticmethod
    def one(field: FieldSpec) -> "Poly":
        return Poly(field, (field.one,))

    @staticmethod
    def constant(field: FieldSpec, c: FieldElem) -> "Poly":
        return Poly(field, () if c.is_zero else (c,))

    @staticmethod
    def t(field: FieldSpec) -> "Poly":
        """The variable T."""
        return Poly(field, (field.zero, field.one))

    # -- basic structure -------------------------------------------------------

    @property
    def degree(self):
        """Degree, or NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElem:
        """Leading coefficient (zero for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] is self.field.one

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> FieldElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly.make(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field, ())
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x.is_zero:
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return Poly.make(self.field, out)

    def scale(self, c: FieldElem) -> "Poly":
        if c.is_zero:
            return Poly(self.field, ())
        return Poly(self.field, tuple(x * c for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k (k >= 0)."""
        if self.is_zero or k == 0:
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        zero = self.field.zero
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv_lead = other.coeffs[-1].inverse()
        if len(rem) - 1 < d:
            return Poly(self.field, ()), self
        quot = [zero] * (len(rem) - d)
        while len(rem) - 1 >= d and rem:
            shift = len(rem) - 1 - d
            factor = rem[-1] * inv_lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - factor * c
            while rem and rem[-1].is_zero:
                rem.pop()
        return Poly.make(self.field, quot), Poly.make(self.field, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise InvalidParameter("negative polynomial power")
        out = Poly.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def monic(self) -> "Poly":
        """Unit-normalize; raises on the zero polynomial."""
        if self.is_zero:
            raise DivisionByZero("monic normalization of the zero polynomial")
        if self.is_monic:
            return self
        return self.scale(self.coeffs[-1].inverse())

    # -- identity / ordering ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and all(
            x is y for x, y in zip(self.coeffs, other.coeffs)
        ) and len(self.coeffs) == len(other.coeffs)

    def __hash__(self) -> int:
        return hash((id(self.field), tuple(x.idx for x in self.coeffs)))

    def sort_key(self) -> tuple:
        """Deterministic total order: by degree, then canonical index."""
        return (len(self.coeffs), tuple(x.idx for x in reversed(self.coeffs)))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({pretty(self)})"


# ---------------------------------------------------------------------------
# Canonical enumeration and indexing
# ---------------------------------------------------------------------------

def poly_from_index(field: FieldSpec, n: int, m: int) -> Poly:
    """Polynomial of canonical index n among those of degree < m."""
    coeffs = []
    for _ in range(m):
        coeffs.append(field.elements[n % field.q])
        n //= field.q
    return Poly.make(field, coeffs)


def poly_index(f: Poly, m: int) -> int:
    """Inverse of :func:`poly_from_index` (requires deg f < m)."""
    n = 0
    for i in range(m - 1, -1, -1):
        n = n * f.field.q + f.coeff(i).idx
    return n


def polys_below_degree(field: FieldSpec, m: int) -> Iterator[Poly]:
    """All q^m polynomials of degree < m in canonical order (m >= 0)."""
    for n in range(field.q**m):
        yield poly_from_index(field, n, m)


def monic_polys_of_degree(field: FieldSpec, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree d >= 0 in canonical order."""
    for n in range(field.q**d):
        low = poly_from_index(field, n, d)
        yield Poly.make(field, tuple(low.coeff(i) for i in range(d)) + (field.one,))


def is_irreducible(f: Poly) -> bool:
    """Trial-division irreducibility test (degree >= 1 required)."""
    d = f.degree
    if d is NEG_INF or d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for cand in monic_polys_of_degree(f.field, e):
            if (f % cand).is_zero:
                return False
    return True


def irreducible_monic_polys(field: FieldSpec, d: int) -> Iterator[Poly]:
    """Monic irreducibles of degree d in canonical order."""
    for f in monic_polys_of_degree(field, d):
        if is_irreducible(f):
            yield f


# ---------------------------------------------------------------------------
# gcd / extended gcd / modular inverse
# ---------------------------------------------------------------------------

def gcd_monic(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, b) = monic(b); gcd(0, 0) raises UndefinedGcd."""
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) has no monic normalization")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def gcd_list_monic(items) -> Poly:
    """Monic gcd of a sequence (zeros skipped; all-zero raises)."""
    acc: Poly | None = None
    for x in items:
        if x.is_zero:
            continue
        acc = x if acc is None else gcd_monic(acc, x)
    if acc is None:
        raise UndefinedGcd("gcd of an all-zero sequence")
    return acc.monic() if not acc.is_monic else acc


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, u, v) with u*a + v*b = g and g = gcd_monic(a, b)."""
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) has no monic normalization")
    field = a.field
    r0, r1 = a, b
    u0, u1 = Poly.one(field), Poly.zero(field)
    v0, v1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    c = r0.lead.inverse()
    return r0.scale(c), u0.scale(c), v0.scale(c)


# ---------------------------------------------------------------------------
# Modulus
# ---------------------------------------------------------------------------

class Modulus:
    """A nonzero modulus F of degree r >= 1 with cached structure."""

    def __init__(self, f: Poly):
        if f.is_zero or f.degree < 1:
            raise InvalidParameter("modulus must have degree >= 1")
        self.f = f
        self.field = f.field
        self.r: int = f.degree
        self.lead: FieldElem = f.lead
        self.lead_inv: FieldElem = f.lead.inverse()
        self._factors: list[tuple[Poly, int]] | None = None

    @property
    def factors(self) -> list[tuple[Poly, int]]:
        """Monic irreducible factors with multiplicities, in canonical order;
        validated by reconstruction against lead * product."""
        if self._factors is None:
            self._factors = factor(self.f)
        return self._factors

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def rep(self, x: Poly) -> Poly:
        """Canonical representative of x mod F (degree < r)."""
        return x % self.f

    def deg_of(self, x: Poly):
        """deg_F(x): degree of the canonical representative (NEG_INF at 0)."""
        return (x % self.f).degree

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Modulus):
            return NotImplemented
        return self.f == other.f

    def __hash__(self) -> int:
        return hash(("Modulus", self.f))

    def __repr__(self) -> str:
        return f"Modulus({pretty(self.f)})"


def canonical_rep(x: Poly, F: Modulus) -> Poly:
    return F.rep(x)


def deg_f(x: Poly, F: Modulus):
    return F.deg_of(x)


def inv_mod(x: Poly, F: Modulus) -> Poly:
    """Inverse of x in F_q[T]/<F>; NotInvertible (carrying the gcd) if
    x shares a factor with F."""
    rep = F.rep(x)
    if rep.is_zero:
        raise NotInvertible("zero is not invertible", gcd=F.f.monic())
    g, u, _ = ext_gcd(rep, F.f)
    if g.degree != 0:
        raise NotInvertible(f"element shares the factor {pretty(g)} with the modulus", gcd=g)
    # g is a monic constant, i.e. 1, so u * rep == 1 (mod F).
    return F.rep(u)


# ---------------------------------------------------------------------------
# Factorization and multiplicative functions
# ---------------------------------------------------------------------------

def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of f with multiplicities, ordered
    canonically (by degree, then index).  Raises NotFactorable if the
    reconstruction lead(f) * prod P_i^{e_i} does not return f exactly."""
    if f.is_zero:
        raise InvalidParameter("cannot factor the zero polynomial")
    field = f.field
    g = f.monic() if not f.is_zero else f
    out: list[tuple[Poly, int]] = []
    d = 1
    while not g.is_constant and d <= g.degree // 2:
        for cand in monic_polys_of_degree(field, d):
            if g.is_constant or d > g.degree // 2:
                break
            mult = 0
            while True:
                quot, rem = divmod(g, cand)
                if rem.is_zero:
                    mult += 1
                    g = quot
                else:
                    break
            if mult:
                out.append((cand, mult))
        d += 1
    if not g.is_constant:
        out.append((g, 1))
    # Reconstruction check.
    check = Poly.constant(field, f.lead)
    for prime, mult in out:
        for _ in range(mult):
            check = check * prime
    if check != f:
        raise NotFactorable(f"factor reconstruction failed for {pretty(f)}")  # pragma: no cover
    return out


def mobius_q(f: Poly) -> int:
    """Polynomial Moebius function of the monic part: 0 if any square factor,
    else (-1)^omega."""
    if f.is_zero:
        raise InvalidParameter("mobius of the zero polynomial")
    if f.is_constant:
        return 1
    facs = factor(f)
    if any(mult > 1 for _, mult in facs):
        return 0
    return -1 if len(facs) % 2 else 1


def omega(f: Poly) -> int:
    """Number of distinct monic irreducible factors."""
    if f.is_zero:
        raise InvalidParameter("omega of the zero polynomial")
    if f.is_constant:
        return 0
    return len(factor(f))


def monic_divisors(f: Poly) -> list[Poly]:
    """All monic divisors of f (deterministic order); the list length always
    equals prod (mult_i + 1)."""
    if f.is_zero:
        raise InvalidParameter("divisors of the zero polynomial")
    field = f.field
    divisors = [Poly.one(field)]
    expected = 1
    for prime, mult in ([] if f.is_constant else factor(f)):
        expected *= mult + 1
        grown = []
        power = Poly.one(field)
        for _ in range(mult + 1):
            grown.extend(d * power for d in divisors)
            power = power * prime
        divisors = grown
    if len(divisors) != expected:
        raise NotFactorable("divisor count mismatch")  # pragma: no cover
    divisors.sort(key=Poly.sort_key)
    return divisors


def num_monic_divisors(f: Poly) -> int:
    """d0(f): number of monic divisors."""
    if f.is_zero:
        raise InvalidParameter("divisor count of the zero polynomial")
    out = 1
    for _, mult in ([] if f.is_constant else factor(f)):
        out *= mult + 1
    return out


def jacobi_symbol(t: Poly, F: Modulus) -> int:
    """Quadratic-residue symbol (t/F)_q in {-1, 0, 1}, odd q only.

    For irreducible F it is the Euler power t^((q^r - 1)/2) mod F read as
    +-1 (or 0 when F | t); for composite F it is the product over irreducible
    factors with multiplicity.
    """
    field = F.field
    if field.p == 2:
        raise UnsupportedCharacteristic("quadratic-residue symbol undefined for even q")
    out = 1
    for prime, mult in F.factors:
        if mult % 2 == 0:
            # Even multiplicity contributes (t/P)^even in {0, 1}.
            if (t % prime).is_zero:
                return 0
            continue
        sym = _jacobi_prime(t, prime)
        if sym == 0:
            return 0
        out *= sym
    return out


def _jacobi_prime(t: Poly, P: Poly) -> int:
    field = P.field
    rep = t % P
    if rep.is_zero:
        return 0
    e = (field.q ** P.degree - 1) // 2
    acc = Poly.one(field)
    base = rep
    while e:
        if e & 1:
            acc = (acc * base) % P
        base = (base * base) % P
        e >>= 1
    if acc == Poly.one(field):
        return 1
    if acc == Poly.constant(field, -field.one):
        return -1
    raise NotFactorable(f"Euler criterion returned a non-unit for {pretty(P)}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def format_poly(f: Poly) -> str:
    """Little-endian comma-separated coefficients (dot-separated coordinates
    inside each coefficient for extension fields); zero polynomial is "0"."""
    if f.is_zero:
        return "0"
    return ",".join(str(c) for c in f.coeffs)


def parse_poly(field: FieldSpec, text: str) -> Poly:
    text = text.strip()
    if text in ("0", ""):
        return Poly.zero(field)
    try:
        coeffs = [field.parse_element(part) for part in text.split(",")]
    except InvalidParameter:
        raise
    except ValueError as exc:
        raise InvalidParameter(f"bad polynomial {text!r}") from exc
    return Poly.make(field, coeffs)


def pretty(f: Poly) -> str:
    """Human-readable form such as ``T^2+2*T+1``."""
    if f.is_zero:
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c.is_zero:
            continue
        cs = str(c)
        if i == 0:
            terms.append(cs)
        else:
            var = "T" if i == 1 else f"T^{i}"
            terms.append(var if cs == "1" else f"{cs}*{var}")
    return "+".join(terms)
