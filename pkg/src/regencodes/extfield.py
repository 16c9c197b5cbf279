"""Binary extension fields GF(2^(w*kappa)) hosting GF(2^w) as a subfield.

Elements are ints: bit i is the coefficient of x^i in GF(2)[x]/(modulus).
The modulus is the first irreducible polynomial of the right degree in a
fixed enumeration, the subfield copy is located as the fixed space of the
w-fold Frobenius, and a basis of the big field over the subfield is taken
greedily from powers of x, so equal parameters always rebuild the exact
same field: moduli, embedding table and basis are reproducible.

The embedding is a field homomorphism from the table-driven GF(2^w) in
gf.py: it maps the table field's generator to a root (the smallest, for
determinism) of the same primitive polynomial inside the big field.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import IntegrityError, ValidationError
from .gf import BinaryField, binary_field

# squaring spreads bits: byte b -> 16-bit word with b's bits at even offsets
_SPREAD = [0] * 256
for _b in range(256):
    _v = 0
    for _i in range(8):
        if _b >> _i & 1:
            _v |= 1 << (2 * _i)
    _SPREAD[_b] = _v
del _b, _v, _i


def _polyrem(a: int, b: int) -> int:
    blen = b.bit_length()
    while a.bit_length() >= blen:
        a ^= b << (a.bit_length() - blen)
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polyrem(a, b)
    return a


def _mulmod(a: int, b: int, modulus: int, degree: int) -> int:
    res = 0
    top = 1 << degree
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return res


def _sqrmod(a: int, modulus: int) -> int:
    out = 0
    k = 0
    while a:
        out |= _SPREAD[a & 0xFF] << k
        a >>= 8
        k += 16
    return _polyrem(out, modulus)


def _powmod(a: int, e: int, modulus: int, degree: int) -> int:
    res = 1
    while e:
        if e & 1:
            res = _mulmod(res, a, modulus, degree)
        a = _mulmod(a, a, modulus, degree)
        e >>= 1
    return res


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(h: int, degree: int) -> bool:
    # Rabin: x^(2^degree) == x mod h, and gcd(x^(2^(degree/p)) - x, h) == 1
    # for every prime p dividing the degree
    checkpoints = {degree // p for p in _prime_factors(degree)}
    cur = 2  # the polynomial x
    for i in range(1, degree + 1):
        cur = _sqrmod(cur, h)
        if i in checkpoints and _gcd(cur ^ 2, h) != 1:
            return False
    return cur == 2


@lru_cache(maxsize=None)
def find_modulus(degree: int) -> int:
    """First irreducible binary polynomial of the given degree.

    Enumerates ascending low bits; the constant term must be 1 and the
    number of terms odd, or x or x+1 would divide.
    """
    if degree < 2:
        raise ValidationError(f"modulus degree must be >= 2, got {degree}")
    top = 1 << degree
    for low in range(3, top, 2):
        h = top | low
        if bin(h).count("1") % 2 == 0:
            continue
        if _is_irreducible(h, degree):
            return h
    raise IntegrityError(f"no irreducible polynomial of degree {degree} found")


def _kernel(images: list[int]) -> list[int]:
    # kernel basis of the GF(2)-linear map taking unit vector i to images[i]
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for i, img in enumerate(images):
        pre = 1 << i
        while img:
            lead = img.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (img, pre)
                break
            pimg, ppre = pivots[lead]
            img ^= pimg
            pre ^= ppre
        else:
            kernel.append(pre)
    return kernel


def _reduce_row(row: int, pivots: dict[int, int]) -> tuple[int, int]:
    while row:
        lead = row.bit_length() - 1
        if lead not in pivots:
            return row, lead
        row ^= pivots[lead]
    return 0, -1


class BinaryExtensionField:
    """GF(q^kappa) for q = 2^w, with q <= 256."""

    zero = 0
    one = 1

    def __init__(self, subfield: BinaryField, kappa: int) -> None:
        if kappa < 1:
            raise ValidationError(f"kappa must be >= 1, got {kappa}")
        if subfield.w > 8:
            raise ValidationError("extension subfields wider than GF(2^8) are not supported")
        self.subfield = subfield
        self.kappa = kappa
        self.degree = subfield.w * kappa
        if self.degree < 2:
            raise ValidationError("GF(2) needs no extension machinery; use BinaryField")
        self.modulus = find_modulus(self.degree)
        self._top = 1 << self.degree
        self._beta_pows = self._embed_subfield()
        self._emb = self._embedding_table()
        self.theta = self._subfield_basis()

    # -- construction internals ---------------------------------------------

    def _embed_subfield(self) -> list[int]:
        w = self.subfield.w
        if w == 1:
            return [1]
        # fixed space of z -> z^(2^w): solve (Frob^w + id) z = 0
        xq = 2
        for _ in range(w):
            xq = _sqrmod(xq, self.modulus)
        images = []
        p = 1
        for i in range(self.degree):
            images.append(p ^ (1 << i))
            p = _mulmod(p, xq, self.modulus, self.degree)
        kern = _kernel(images)
        if len(kern) != w:
            raise IntegrityError(f"subfield of size 2^{w} has rank {len(kern)}")
        elems = sorted(
            {self._combine(kern, mask) for mask in range(1 << w)}
        )
        g = self.subfield.poly
        beta = next((z for z in elems if self._eval_gf2_poly(g, z) == 0), None)
        if beta is None:
            raise IntegrityError("subfield generator polynomial has no root in its own copy")
        pows = [1]
        for _ in range(w - 1):
            pows.append(_mulmod(pows[-1], beta, self.modulus, self.degree))
        return pows

    @staticmethod
    def _combine(basis: list[int], mask: int) -> int:
        acc = 0
        i = 0
        while mask:
            if mask & 1:
                acc ^= basis[i]
            mask >>= 1
            i += 1
        return acc

    def _eval_gf2_poly(self, g: int, z: int) -> int:
        acc = 0
        p = 1
        while g:
            if g & 1:
                acc ^= p
            g >>= 1
            p = _mulmod(p, z, self.modulus, self.degree)
        return acc

    def _subfield_basis(self) -> tuple[int, ...]:
        theta: list[int] = []
        pivots: dict[int, int] = {}
        z = 1
        for _ in range(self.degree):
            if len(theta) == self.kappa:
                break
            if self._try_insert(z, pivots):
                theta.append(z)
            z = _mulmod(z, 2, self.modulus, self.degree)
        if len(theta) != self.kappa:
            raise IntegrityError("powers of x did not yield a subfield basis")
        return tuple(theta)

    def _try_insert(self, z: int, pivots: dict[int, int]) -> bool:
        # z joins the basis only if all its subfield multiples are new
        # directions over GF(2); then the subfield span grows by w dims
        trial = dict(pivots)
        for bp in self._beta_pows:
            row, lead = _reduce_row(_mulmod(bp, z, self.modulus, self.degree), trial)
            if row == 0:
                return False
            trial[lead] = row
        pivots.clear()
        pivots.update(trial)
        return True

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        return _mulmod(a, b, self.modulus, self.degree)

    def sqr(self, a: int) -> int:
        return _sqrmod(a, self.modulus)

    def frobenius(self, a: int) -> int:
        """a -> a^q, the subfield-fixing field automorphism."""
        for _ in range(self.subfield.w):
            a = _sqrmod(a, self.modulus)
        return a

    def pow(self, a: int, e: int) -> int:
        return _powmod(a, e, self.modulus, self.degree)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ValidationError("zero has no inverse")
        return _powmod(a, self._top - 2, self.modulus, self.degree)

    def contains(self, a: object) -> bool:
        return isinstance(a, int) and 0 <= a < self._top

    def embed(self, a: int) -> int:
        """Image of a subfield element; a ring homomorphism from gf.py tables."""
        if not self.subfield.contains(a):
            raise ValidationError(f"{a!r} is not a GF(2^{self.subfield.w}) element")
        return self._emb[a]

    def _embedding_table(self) -> list[int]:
        emb = [0] * self.subfield.order
        for a in range(self.subfield.order):
            acc = 0
            for j in range(self.subfield.w):
                if a >> j & 1:
                    acc ^= self._beta_pows[j]
            emb[a] = acc
        return emb

    def element(self, i: int) -> int:
        """Canonical evaluation points: the embedded subfield elements."""
        if not 0 <= i < self.subfield.order:
            raise ValidationError(
                f"subfield GF(2^{self.subfield.w}) has no element #{i} to embed as a point"
            )
        return self._emb[i]

    def span(self) -> "SubfieldSpan":
        """An empty, growable subfield-linear span of field elements."""
        return SubfieldSpan(self)

    def independent_over_subfield(self, elems) -> bool:
        """True iff elems are linearly independent over the embedded subfield."""
        sp = self.span()
        return all(sp.insert(z) for z in elems)

    @property
    def hex_width(self) -> int:
        return (self.degree + 3) // 4

    def __repr__(self) -> str:
        return f"BinaryExtensionField(w={self.subfield.w}, kappa={self.kappa})"


class SubfieldSpan:
    """Incremental linear span over the embedded subfield.

    insert(z) returns True and grows the span when z is independent of the
    elements inserted so far, False (span unchanged) otherwise.
    """

    def __init__(self, field: BinaryExtensionField) -> None:
        self._field = field
        self._pivots: dict[int, int] = {}
        self.dimension = 0

    def insert(self, z: int) -> bool:
        if self._field._try_insert(z, self._pivots):
            self.dimension += 1
            return True
        return False


@lru_cache(maxsize=None)
def extension_field(w: int, kappa: int) -> BinaryExtensionField:
    """Shared instances; construction cost is paid once per (w, kappa)."""
    return BinaryExtensionField(binary_field(w), kappa)
