"""Arithmetic in small finite fields F_q, q = p^l.

A :class:`FieldSpec` fixes the prime p, the extension degree l, and a monic
irreducible extension modulus of degree l over F_p.  Elements are represented
on the power basis {1, u, ..., u^(l-1)} by little-endian coefficient vectors
of integers in [0, p); internally every element is an interned
:class:`FieldElem` carrying a dense index in [0, q), and all arithmetic is
table-driven so the rest of the package can treat field operations as O(1).

Supported sizes are deliberately small (p <= 13, q <= 169): everything
downstream enumerates full residue systems, so tables of size q^2 stay tiny.

Text formats (used by the command-line tools and parsers):

* field spec:  ``"p"`` or ``"p^l"`` or ``"p^l:c0,c1,...,cl"`` where the c_i
  give the extension modulus little-endian (c_l = 1);
* element:     ``"a0"`` or ``"a0.a1.....a{l-1}"`` -- little-endian
  coordinates, dot-separated so elements can be embedded in comma-separated
  polynomial strings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DivisionByZero, InvalidParameter, UnsupportedCharacteristic

_SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)
_MAX_Q = 169


# ---------------------------------------------------------------------------
# Construction-time helpers: dense polynomials over F_p as int tuples.
# Only used while building a FieldSpec's tables; hot paths never touch these.
# ---------------------------------------------------------------------------

def _fp_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    a_list = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a_list) - 1 >= dm and a_list:
        shift = len(a_list) - 1 - dm
        factor = (a_list[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a_list[shift + i] = (a_list[shift + i] - factor * mi) % p
        while a_list and a_list[-1] == 0:
            a_list.pop()
    return tuple(a_list)


def _fp_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    # Trial division by every monic polynomial of degree 1..d//2.
    for deg in range(1, d // 2 + 1):
        for idx in range(p**deg):
            cand = []
            n = idx
            for _ in range(deg):
                cand.append(n % p)
                n //= p
            cand.append(1)
            if not _fp_mod(f, tuple(cand), p):
                return False
    return True


def _smallest_irreducible(p: int, l: int) -> tuple[int, ...]:
    """Monic irreducible of degree l over F_p minimizing the little-endian
    coefficient vector read as a base-p integer (constant term varies
    fastest)."""
    for idx in range(p**l):
        c = []
        n = idx
        for _ in range(l):
            c.append(n % p)
            n //= p
        c.append(1)
        f = tuple(c)
        if _fp_is_irreducible(f, p):
            return f
    raise InvalidParameter(f"no irreducible of degree {l} over F_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Field elements and specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldElem:
    """One element of a fixed F_q; instances are interned per FieldSpec, so
    equality and hashing are identity-based and cheap."""

    spec: "FieldSpec"
    idx: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeff_vectors[self.idx]

    @property
    def is_zero(self) -> bool:
        return self.idx == 0

    def __add__(self, other: "FieldElem") -> "FieldElem":
        s = self.spec
        return s.elements[s.add_table[self.idx * s.q + other.idx]]

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        s = self.spec
        return s.elements[s.add_table[self.idx * s.q + s.neg_table[other.idx]]]

    def __neg__(self) -> "FieldElem":
        return self.spec.elements[self.spec.neg_table[self.idx]]

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        s = self.spec
        return s.elements[s.mul_table[self.idx * s.q + other.idx]]

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return self * other.inverse()

    def inverse(self) -> "FieldElem":
        if self.idx == 0:
            raise DivisionByZero("inverse of zero field element")
        return self.spec.elements[self.spec.inv_table[self.idx]]

    def __pow__(self, n: int) -> "FieldElem":
        s = self.spec
        if self.idx == 0:
            if n < 0:
                raise DivisionByZero("negative power of zero field element")
            return s.zero if n else s.one
        n %= s.q - 1
        out = s.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return hash((id(self.spec), self.idx))

    # Deterministic ordering (by dense index) for canonical enumerations.
    def __lt__(self, other: "FieldElem") -> bool:
        return self.idx < other.idx

    def __str__(self) -> str:
        return ".".join(str(a) for a in self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElem({self})"


class FieldSpec:
    """F_q with q = p^l, p prime <= 13 and q <= 169, with table-driven
    arithmetic, trace to F_p, and the quadratic character."""

    def __init__(self, p: int, l: int = 1, ext_modulus: tuple[int, ...] | None = None):
        if p not in _SUPPORTED_PRIMES:
            raise InvalidParameter(f"characteristic must be a prime <= 13, got {p}")
        if l < 1:
            raise InvalidParameter(f"extension degree must be >= 1, got {l}")
        q = p**l
        if q > _MAX_Q:
            raise InvalidParameter(f"field size q = {q} exceeds the supported maximum {_MAX_Q}")
        self.p = p
        self.l = l
        self.q = q
        if ext_modulus is None:
            ext_modulus = _smallest_irreducible(p, l)
        else:
            ext_modulus = tuple(c % p for c in ext_modulus)
            if len(ext_modulus) != l + 1:
                raise InvalidParameter(
                    f"extension modulus must have degree {l} (got {len(ext_modulus) - 1} + 1 coefficients)"
                )
            if ext_modulus[-1] != 1:
                raise InvalidParameter("extension modulus must be monic")
            if not _fp_is_irreducible(ext_modulus, p):
                raise InvalidParameter("extension modulus must be irreducible over F_p")
        self.ext_modulus = ext_modulus

        # Coefficient vectors: idx = sum coeffs[i] * p^i (little-endian).
        self.coeff_vectors: list[tuple[int, ...]] = []
        for idx in range(q):
            c, n = [], idx
            for _ in range(l):
                c.append(n % p)
                n //= p
            self.coeff_vectors.append(tuple(c))

        def to_idx(vec: tuple[int, ...]) -> int:
            out = 0
            for i in range(len(vec) - 1, -1, -1):
                out = out * p + vec[i]
            return out

        def padded(vec: tuple[int, ...]) -> tuple[int, ...]:
            return tuple(vec) + (0,) * (l - len(vec))

        self.add_table = [0] * (q * q)
        self.neg_table = [0] * q
        self.mul_table = [0] * (q * q)
        for a in range(q):
            va = self.coeff_vectors[a]
            self.neg_table[a] = to_idx(tuple((-x) % p for x in va))
            for b in range(q):
                vb = self.coeff_vectors[b]
                self.add_table[a * q + b] = to_idx(tuple((x + y) % p for x, y in zip(va, vb)))
                prod = _fp_mod(_fp_mul(_fp_trim(list(va)), _fp_trim(list(vb)), p), ext_modulus, p)
                self.mul_table[a * q + b] = to_idx(padded(prod))

        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a * q + b] == 1:
                    self.inv_table[a] = b
                    break

        self.elements: list[FieldElem] = [FieldElem(self, i) for i in range(q)]
        self.zero = self.elements[0]
        self.one = self.elements[1]

        # Trace to F_p: Tr(x) = x + x^p + ... + x^(p^(l-1)).
        self.trace_table = [0] * q
        for a in range(q):
            acc, term = 0, a
            for _ in range(l):
                acc = self.add_table[acc * q + term]
                term = self._pow_idx(term, p)
            tvec = self.coeff_vectors[acc]
            if any(tvec[1:]):
                raise NotImplementedError("trace landed outside the prime field")  # pragma: no cover
            self.trace_table[a] = tvec[0]

        # Quadratic character (odd q only): 0 at 0, else +-1 by Euler's criterion.
        self.quad_char_table: list[int] | None = None
        if p != 2:
            tbl = [0] * q
            for a in range(1, q):
                tbl[a] = 1 if self._pow_idx(a, (q - 1) // 2) == 1 else -1
            self.quad_char_table = tbl

    def _pow_idx(self, a: int, n: int) -> int:
        out, base = 1, a
        if a == 0:
            return 0 if n else 1
        while n:
            if n & 1:
                out = self.mul_table[out * self.q + base]
            base = self.mul_table[base * self.q + base]
            n >>= 1
        return out

    # -- element constructors ------------------------------------------------

    def element(self, coeffs) -> FieldElem:
        """Element from little-endian coordinates (ints, reduced mod p)."""
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        vec = [c % self.p for c in coeffs]
        if len(vec) > self.l:
            if any(vec[self.l:]):
                raise InvalidParameter("too many coordinates for this field")
            vec = vec[: self.l]
        idx = 0
        for i in range(len(vec) - 1, -1, -1):
            idx = idx * self.p + vec[i]
        return self.elements[idx]

    def from_int(self, n: int) -> FieldElem:
        """The image of the integer n under Z -> F_p <= F_q."""
        return self.elements[n % self.p]

    # -- characters ----------------------------------------------------------

    def trace(self, x: FieldElem) -> int:
        """Absolute trace Tr: F_q -> F_p, returned as an int in [0, p)."""
        return self.trace_table[x.idx]

    def quad_char(self, x: FieldElem) -> int:
        """Quadratic character chi_q(x) in {-1, 0, 1}; odd q only."""
        if self.quad_char_table is None:
            raise UnsupportedCharacteristic("quadratic character undefined in characteristic 2")
        return self.quad_char_table[x.idx]

    # -- text formats ----------------------------------------------------------

    def format_spec(self) -> str:
        if self.l == 1:
            return str(self.p)
        return f"{self.p}^{self.l}:" + ",".join(str(c) for c in self.ext_modulus)

    def parse_element(self, text: str) -> FieldElem:
        parts = text.strip().split(".")
        try:
            coeffs = [int(t) for t in parts]
        except ValueError as exc:
            raise InvalidParameter(f"bad field element {text!r}") from exc
        return self.element(coeffs)

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return id(self)

    def __repr__(self) -> str:
        return f"FieldSpec({self.format_spec()!r})"


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``"p"``, ``"p^l"``, or ``"p^l:c0,...,cl"``."""
    text = text.strip()
    mod: tuple[int, ...] | None = None
    if ":" in text:
        head, _, tail = text.partition(":")
        try:
            mod = tuple(int(t) for t in tail.split(","))
        except ValueError as exc:
            raise InvalidParameter(f"bad extension modulus in field spec {text!r}") from exc
    else:
        head = text
    try:
        if "^" in head:
            p_str, _, l_str = head.partition("^")
            p, l = int(p_str), int(l_str)
        else:
            p, l = int(head), 1
    except ValueError as exc:
        raise InvalidParameter(f"bad field spec {text!r}") from exc
    return FieldSpec(p, l, mod)
