"""Exact arithmetic in finite fields F_{p^f}.

A field is described by its characteristic, its degree over F_p and a monic
irreducible modulus given as a coefficient list (low degree first).  Elements
are fixed-length coefficient vectors reduced against the modulus, so values
are canonical and can be compared and hashed structurally.  Everything is
pure Python integer arithmetic; nothing here is approximate.
"""

from __future__ import annotations

from .errors import BadDegree, DivisionByZero, FieldMismatch, NotPrime, ReducibleModulus


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficients low degree first
# ---------------------------------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        top = a[-1] % p
        shift = len(a) - 1 - dm
        if top:
            for i in range(dm):
                a[shift + i] = (a[shift + i] - top * m[i]) % p
        a.pop()
        _trim(a)
    return _trim([c % p for c in a])


def _poly_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(modulus, p):
    f = len(modulus) - 1
    if f < 1 or modulus[-1] != 1:
        return False
    if f == 1:
        return True
    # no factor of degree k < f: gcd(x^{p^k} - x, modulus) = 1 for all k < f
    xq = [0, 1]
    for _ in range(1, f):
        xq = _poly_powmod(xq, p, modulus, p)
        diff = _trim([(c - d) % p for c, d in
                      zip(xq + [0] * 2, [0, 1] + [0] * len(xq))])
        g = _poly_gcd(diff, modulus, p)
        if len(g) != 1:
            return False
    # x^{p^f} must reduce to x, ruling out a wrong-degree modulus
    xq = _poly_powmod(xq, p, modulus, p)
    return xq == [0, 1]


# bootstrap arithmetic for table construction (cannot use the tables)

def _coeff_space(p, f):
    coeffs = [0] * f
    while True:
        yield tuple(coeffs)
        i = 0
        while i < f:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        if i == f:
            return


def _mul_by_poly(a: "FqElem", b: "FqElem") -> "FqElem":
    fld = a.field
    prod = _poly_mul(list(a.coeffs), list(b.coeffs), fld.p)
    red = _poly_mod(prod, list(fld.modulus), fld.p)
    red = tuple(red) + (0,) * (fld.f - len(red))
    return FqElem(fld, red)


def _pow_by_poly(a: "FqElem", e: int) -> "FqElem":
    result = a.field.elem(1)
    base = a
    while e:
        if e & 1:
            result = _mul_by_poly(result, base)
        base = _mul_by_poly(base, base)
        e >>= 1
    return result


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _order_by_poly(a: "FqElem", n: int) -> int:
    one = a.field.elem(1)
    order = n
    for ell in _prime_factors(n):
        while order % ell == 0 and _pow_by_poly(a, order // ell) == one:
            order //= ell
    return order


def default_modulus(p: int, f: int) -> list:
    """First monic irreducible of degree f over F_p in lexicographic order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise BadDegree("degree must be >= 1")
    if f == 1:
        return [0, 1]
    counter = [0] * f
    while True:
        modulus = list(counter) + [1]
        if _is_irreducible(modulus, p):
            return modulus
        i = 0
        while i < f:
            counter[i] += 1
            if counter[i] < p:
                break
            counter[i] = 0
            i += 1
        if i == f:
            raise ReducibleModulus(f"no irreducible of degree {f} over F_{p}")


class FqField:
    """Descriptor of F_{p^f} with a fixed monic irreducible modulus.

    Multiplicative arithmetic runs on lazily built log/antilog tables
    (exact integer index arithmetic); the polynomial representation is
    only used for construction and for additive operations.
    """

    __slots__ = ("p", "f", "modulus", "_log", "_exp")

    def __init__(self, p: int, f: int, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if f < 1:
            raise BadDegree("degree must be >= 1")
        if modulus is None:
            modulus = default_modulus(p, f)
        modulus = [c % p for c in modulus]
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree f")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.f = f
        self.modulus = tuple(modulus)
        self._log = None
        self._exp = None

    def _tables(self):
        if self._log is None:
            n = self.order - 1
            gen = None
            for coeffs in _coeff_space(self.p, self.f):
                cand = FqElem(self, coeffs)
                if not cand.is_zero() and _order_by_poly(cand, n) == n:
                    gen = cand
                    break
            exp = []
            cur = self.elem(1)
            for _ in range(n):
                exp.append(cur.coeffs)
                cur = _mul_by_poly(cur, gen)
            self._exp = exp
            self._log = {c: i for i, c in enumerate(exp)}
        return self._log, self._exp

    @property
    def order(self) -> int:
        return self.p ** self.f

    def elem(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldMismatch("element of a different field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.f - 1)
        else:
            coeffs = [c % self.p for c in value]
            if len(coeffs) > self.f:
                coeffs = _poly_mod(coeffs, list(self.modulus), self.p)
            coeffs = coeffs + [0] * (self.f - len(coeffs))
        return FqElem(self, tuple(coeffs))

    def zero(self) -> "FqElem":
        return self.elem(0)

    def one(self) -> "FqElem":
        return self.elem(1)

    def gen(self) -> "FqElem":
        """Canonical generator: the residue of x (the field itself for f=1)."""
        if self.f == 1:
            return self.one()
        return self.elem([0, 1])

    def elements(self):
        """All p^f elements, lexicographic in coefficient vectors."""
        coeffs = [0] * self.f
        while True:
            yield FqElem(self, tuple(coeffs))
            i = 0
            while i < self.f:
                coeffs[i] += 1
                if coeffs[i] < self.p:
                    break
                coeffs[i] = 0
                i += 1
            if i == self.f:
                return

    def subfield_elements(self, degree: int):
        """Elements of the unique subfield of given absolute degree."""
        if self.f % degree:
            raise BadDegree(f"{degree} does not divide {self.f}")
        q = self.p ** degree
        return [a for a in self.elements() if a ** q == a]

    def __eq__(self, other):
        return (isinstance(other, FqField) and self.p == other.p
                and self.f == other.f and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.f, self.modulus))

    def __repr__(self):
        return f"FqField({self.p}, {self.f})"


class FqElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other) -> "FqElem":
        if isinstance(other, int):
            return self.field.elem(other)
        if not isinstance(other, FqElem) or other.field != self.field:
            raise FieldMismatch("operands live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in
                                        zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        fld = self.field
        if not any(self.coeffs) or not any(other.coeffs):
            return fld.zero()
        log, exp = fld._tables()
        n = fld.order - 1
        return FqElem(fld, exp[(log[self.coeffs] + log[other.coeffs]) % n])

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if not any(self.coeffs):
            raise DivisionByZero("inverse of zero")
        log, exp = self.field._tables()
        n = self.field.order - 1
        return FqElem(self.field, exp[(-log[self.coeffs]) % n])

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, e: int):
        fld = self.field
        if not any(self.coeffs):
            if e == 0:
                return fld.one()
            if e < 0:
                raise DivisionByZero("inverse of zero")
            return fld.zero()
        log, exp = fld._tables()
        n = fld.order - 1
        return FqElem(fld, exp[(log[self.coeffs] * e) % n])

    def frobenius(self, base_degree: int, k: int = 1) -> "FqElem":
        """a^(p^(base_degree*k)): Frobenius over the degree-base_degree subfield."""
        if self.field.f % base_degree:
            raise BadDegree(f"{base_degree} does not divide {self.field.f}")
        k %= self.field.f // base_degree
        return self ** (self.field.p ** (base_degree * k))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise DivisionByZero("zero has no multiplicative order")
        n = self.field.order - 1
        primes = []
        m, d = n, 2
        while d * d <= m:
            if m % d == 0:
                primes.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.append(m)
        order = n
        one = self.field.one()
        for ell in primes:
            while order % ell == 0 and self ** (order // ell) == one:
                order //= ell
        assert self ** order == one
        return order

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        return (isinstance(other, FqElem) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Fq{self.field.order}{list(self.coeffs)}"


# ---------------------------------------------------------------------------
# operation names used by the wire format and the CLI
# ---------------------------------------------------------------------------

def ff_make_field(p: int, f: int, modulus=None) -> FqField:
    return FqField(p, f, modulus)


def ff_arith(op: str, a: FqElem, b=None) -> FqElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


def ff_frobenius(a: FqElem, base_degree: int, k: int = 1) -> FqElem:
    return a.frobenius(base_degree, k)


def ff_generates(a: FqElem, base_degree: int) -> bool:
    """True iff a generates the field over its degree-base_degree subfield.

    Equivalently the Frobenius orbit of a over that subfield is as large as
    the relative degree.
    """
    f = a.field.f
    if f % base_degree:
        raise BadDegree(f"{base_degree} does not divide {f}")
    rel = f // base_degree
    orbit = 1
    b = a.frobenius(base_degree, 1)
    while b != a:
        orbit += 1
        b = b.frobenius(base_degree, 1)
    return orbit == rel
