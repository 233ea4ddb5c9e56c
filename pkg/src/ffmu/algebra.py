"""Exact arithmetic foundation: GF(p^e) with explicit embeddings, univariate
polynomials, rational functions, Laurent series with precision tracking, and
exact p-adic valuations of rationals.

Field elements are stored as integer codes in [0, p^e): the code of
c_0 + c_1*g + ... + c_{e-1}*g^{e-1} is sum c_i p^i, where g is the class of
the generator modulo the field's defining polynomial.  Defining polynomials
are found by deterministic search (lexicographically first monic irreducible),
and every cross-field identification goes through an explicit Embedding.

Fields of size up to TABLE_CAP lazily build exp/log tables (numpy arrays) so
that the point-counting inner loops are O(1) per operation and vectorizable.
"""

from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, FFMuError, InputError, PrecisionExhausted

TABLE_CAP = 1 << 22  # hard cap for exp/log tables
SCALAR_TABLE_CAP = 1 << 16  # above this, scalar ops fall back to generic arithmetic
ENUMERATION_CAP = 1 << 22
PRECISION_CAP = 1 << 16

GEN_SYMBOL = "g"


def padic_valuation(x, p):
    """Exact p-adic valuation of a nonzero int or Fraction."""
    if isinstance(x, Fraction):
        if x == 0:
            raise ValueError("valuation of zero")
        return _int_val(x.numerator, p) - _int_val(x.denominator, p)
    if x == 0:
        raise ValueError("valuation of zero")
    return _int_val(x, p)


def _int_val(n, p):
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# field contexts


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


_FIELD_CACHE = {}


def field(p, e=1):
    """Canonical FieldCtx for GF(p^e); instances are cached and shareable."""
    key = (p, e)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, e)
        _FIELD_CACHE[key] = ctx
    return ctx


class FieldCtx:
    """Arithmetic context for GF(p^e).

    Immutable after construction; the lazily built tables are append-only
    state, so a context is safe to share across concurrent workers.
    """

    def __init__(self, p, e=1, modulus=None):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        if e < 1:
            raise InputError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if self.q > ENUMERATION_CAP:
            raise BudgetExceeded(f"field size {p}^{e} exceeds the enumeration cap")
        if modulus is None:
            modulus = self._find_modulus()
        self.modulus = tuple(modulus)  # monic, length e+1, prime-field coeffs
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise InputError("modulus must be monic of degree e")
        self._mod_tail = tuple(self.modulus[:e])
        self._exp = None
        self._log = None
        self._pow_digit = tuple(p**i for i in range(e + 1))
        if e > 1 and not self._modulus_irreducible():
            raise InputError("modulus is not irreducible")

    # -- construction helpers

    def _find_modulus(self):
        p, e = self.p, self.e
        if e == 1:
            return (0, 1)
        for code in range(p**e):
            cand = tuple(_digits(code, p, e)) + (1,)
            if _prime_poly_irreducible(cand, p):
                return cand
        raise FFMuError("no irreducible polynomial found")  # unreachable

    def _modulus_irreducible(self):
        # x^(p^e) == x test plus proper-divisor degrees, over the prime field
        return _prime_poly_irreducible(self.modulus, self.p)

    # -- scalar arithmetic on codes

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p, out, shift = self.p, 0, 1
        for _ in range(self.e):
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p, out, shift = self.p, 0, 1
        for _ in range(self.e):
            out += ((-a) % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _want_tables(self):
        if self._exp is None and self.q <= SCALAR_TABLE_CAP:
            self.build_tables()
        return self._exp is not None

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._want_tables():
            return int(self._exp[int(self._log[a]) + int(self._log[b])])
        return self._mul_by_code_slow(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._want_tables():
            return int(self._exp[(self.q - 1 - int(self._log[a])) % (self.q - 1)])
        return self._pow_slow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        if self._want_tables():
            return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])
        return self._pow_slow(a, n % (self.q - 1))

    def smul(self, a, c):
        """Multiply code a by a prime-field scalar c (0 <= c < p)."""
        if self.e == 1:
            return (a * c) % self.p
        p, out, shift = self.p, 0, 1
        for _ in range(self.e):
            out += ((a % p) * c % p) * shift
            a //= p
            shift *= p
        return out

    def frobenius(self, a, k=1):
        """a^(p^k)."""
        return self.pow(a, pow(self.p, k, self.q - 1) if a else 0) if a else 0

    def chi(self, a):
        """Quadratic character: 0, +1 or -1.  Odd characteristic only."""
        if self.p == 2:
            raise InputError("quadratic character undefined in characteristic 2")
        if a == 0:
            return 0
        if self.e == 1 and self._exp is None:
            return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1
        if self._want_tables():
            return -1 if int(self._log[a]) & 1 else 1
        return 1 if self._pow_slow(a, (self.q - 1) // 2) == 1 else -1

    def sqrt(self, a):
        """A square root of a, or None if a is a nonsquare (p odd);
        the unique root when p = 2."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.frobenius(a, self.e - 1) if self.e > 1 else a
        if self.chi(a) != 1:
            return None
        if self._exp is None:
            self.build_tables()
        n = int(self._log[a])
        # n is even since a is a square
        return int(self._exp[n // 2])

    def cbrt(self, a):
        """Cube root when p = 3 (Frobenius is x -> x^3, a bijection)."""
        if self.p != 3:
            raise InputError("cbrt shortcut only used in characteristic 3")
        if a == 0:
            return 0
        if self._exp is None:
            self.build_tables()
        n = int(self._log[a])
        q1 = self.q - 1
        # solve 3m = n mod q-1; q-1 = 3^e-1 is coprime to 3
        return int(self._exp[(n * pow(3, -1, q1)) % q1])

    def trace_to_prime(self, a):
        """Absolute trace GF(p^e) -> GF(p), returned as an int in [0, p)."""
        t, x = 0, a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t % self.p  # t is a prime-field code

    # -- element constructors

    def elem(self, value):
        """FFElem from an int code, an int lifted from the prime field,
        or a coefficient list over GF(p)."""
        if isinstance(value, FFElem):
            if value.ctx is not self:
                raise InputError("element from a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.e:
                raise InputError("coefficient vector too long")
            code = 0
            for i, c in enumerate(value):
                code += (c % self.p) * self._pow_digit[i]
            return FFElem(self, code)
        return FFElem(self, value % self.p if self.e == 1 else self._lift_int(value))

    def _lift_int(self, n):
        return n % self.p

    def from_code(self, code):
        if not 0 <= code < self.q:
            raise InputError("code out of range")
        return FFElem(self, code)

    @property
    def zero(self):
        return FFElem(self, 0)

    @property
    def one(self):
        return FFElem(self, 1)

    def elements(self):
        return (FFElem(self, c) for c in range(self.q))

    def generator(self):
        self.build_tables()
        return FFElem(self, self._gen_code)

    # -- table machinery

    def build_tables(self):
        """Build exp/log tables (and pick a multiplicative generator)."""
        if self._exp is not None:
            return
        if self.q > TABLE_CAP:
            raise BudgetExceeded(f"field of size {self.q} exceeds the table cap")
        q, p, e = self.q, self.p, self.e
        if e == 1:
            gen = self._find_generator_prime()
            exp = np.ones(2 * (q - 1), dtype=np.int64)
            acc = 1
            for n in range(1, q - 1):
                acc = (acc * gen) % p
                exp[n] = acc
        else:
            gen = None
            for code in range(2, q):
                if self._code_order_is_maximal(code):
                    gen = code
                    break
            exp = np.zeros(2 * (q - 1), dtype=np.int64)
            exp[0] = 1
            acc = 1
            for n in range(1, q - 1):
                acc = self._mul_by_code_slow(acc, gen)
                exp[n] = acc
        exp[q - 1 :] = exp[: q - 1]
        log = np.full(q, -1, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1, dtype=np.int64)
        self._gen_code = gen
        self._exp = exp
        self._log = log

    def _find_generator_prime(self):
        p = self.p
        fac = _factorize(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // ell, p) != 1 for ell in fac):
                return g
        raise FFMuError("no generator found")

    def _code_order_is_maximal(self, code):
        fac = _factorize(self.q - 1)
        for ell in fac:
            if self._pow_slow(code, (self.q - 1) // ell) == 1:
                return False
        return True

    def _mul_by_code_slow(self, a, b):
        # schoolbook product of digit vectors, reduced mod the modulus
        p, e = self.p, self.e
        da = _digits(a, p, e)
        db = _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce: g^e = -mod_tail
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(self._mod_tail):
                    prod[k - e + i] = (prod[k - e + i] - c * m) % p
        code = 0
        for i in range(e - 1, -1, -1):
            code = code * p + prod[i]
        return code

    def _pow_slow(self, a, n):
        out, base = 1, a
        while n:
            if n & 1:
                out = self._mul_by_code_slow(out, base)
            base = self._mul_by_code_slow(base, base)
            n >>= 1
        return out

    # -- vectorized arithmetic on numpy arrays of codes

    def vmul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        self.build_tables()
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        sa, sb, shift = a, b, 1
        for _ in range(self.e):
            out += ((sa + sb) % p) * shift
            sa = sa // p
            sb = sb // p
            shift *= p
        return out

    def vneg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = np.zeros(np.shape(a), dtype=np.int64)
        sa, shift = a, 1
        for _ in range(self.e):
            out += ((-sa) % p) * shift
            sa = sa // p
            shift *= p
        return out

    def vchi(self, a):
        """Vectorized quadratic character with values in {-1, 0, +1}."""
        if self.p == 2:
            raise InputError("quadratic character undefined in characteristic 2")
        self.build_tables()
        return np.where(a == 0, 0, 1 - 2 * (self._log[a] & 1))

    def vsquare(self, a):
        if self.e == 1:
            return (a * a) % self.p
        self.build_tables()
        out = self._exp[(2 * self._log[a]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def vfrobenius(self, a):
        """Vectorized x -> x^p."""
        if self.e == 1:
            return a.copy() if isinstance(a, np.ndarray) else a
        self.build_tables()
        out = self._exp[(self.p * self._log[a]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def vinv(self, a):
        self.build_tables()
        out = self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def vtrace_bit(self, a):
        """Vectorized absolute trace to GF(2) (p = 2 only): the result is an
        element of the prime subfield, so its code is already 0 or 1."""
        t = np.zeros(np.shape(a), dtype=np.int64)
        x = a
        for _ in range(self.e):
            t = t ^ x  # char-2 addition of codes is XOR
            x = self.vsquare(x)
        return t

    def all_codes(self):
        return np.arange(self.q, dtype=np.int64)

    # -- misc

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"

    def __reduce__(self):
        return (field, (self.p, self.e))


def _digits(code, p, e):
    out = []
    for _ in range(e):
        out.append(code % p)
        code //= p
    return out


def _factorize(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _prime_poly_irreducible(coeffs, p):
    """Rabin test for a monic polynomial with integer coefficients mod p."""
    e = len(coeffs) - 1
    if e == 1:
        return True
    if coeffs[0] == 0:
        return False

    def polymulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(e):
                    prod[k - e + i] = (prod[k - e + i] - c * coeffs[i]) % p
        return prod[:e]

    def polypow_x(n):
        base = [0, 1] if e > 1 else [0]
        base = (base + [0] * e)[:e]
        out = ([1] + [0] * e)[:e]
        while n:
            if n & 1:
                out = polymulmod(out, base)
            base = polymulmod(base, base)
            n >>= 1
        return out

    x = ([0, 1] + [0] * e)[:e]
    # x^(p^e) must be x
    if polypow_x(p**e) != x:
        return False
    for ell in _factorize(e):
        d = e // ell
        xp = polypow_x(p**d)
        diff = [(a - b) % p for a, b in zip(xp, x)]
        if all(c == 0 for c in diff):
            return False
        # gcd(x^(p^d) - x, f) must be 1; since f is monic of degree e and
        # diff has degree < e, a nontrivial gcd exists iff they share a root
        # in the splitting field; the cheap sufficient test: gcd computation.
        if _poly_gcd_prime(diff, list(coeffs), p):
            return False
    return True


def _poly_gcd_prime(a, b, p):
    """True iff gcd(a, b) is non-constant (coefficients mod p)."""

    def norm(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = norm(list(a)), norm(list(b))
    while b:
        if len(b) == 0:
            break
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] = (a[i + shift] - c * x) % p
            a = norm(a)
            if not a:
                break
        a, b = b, a
    return len(a) > 1


class FFElem:
    """Immutable element of a FieldCtx, stored as an integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx, code):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self):
        return tuple(_digits(self.code, self.ctx.p, self.ctx.e))

    def is_zero(self):
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def _co(self, other):
        if isinstance(other, FFElem):
            if other.ctx is not self.ctx:
                raise InputError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FFElem(self.ctx, self.ctx.add(self.code, o.code))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FFElem(self.ctx, self.ctx.sub(self.code, o.code))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FFElem(self.ctx, self.ctx.mul(self.code, o.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FFElem(self.ctx, self.ctx.mul(self.code, self.ctx.inv(o.code)))

    def __rtruediv__(self, other):
        return self.ctx.elem(other) / self

    def __pow__(self, n):
        return FFElem(self.ctx, self.ctx.pow(self.code, n))

    def inverse(self):
        return FFElem(self.ctx, self.ctx.inv(self.code))

    def chi(self):
        return self.ctx.chi(self.code)

    def sqrt(self):
        r = self.ctx.sqrt(self.code)
        return None if r is None else FFElem(self.ctx, r)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self == self.ctx.elem(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __repr__(self):
        return render_ff(self)


def render_ff(x):
    """Text form: polynomial expression in the generator symbol g."""
    if x.code == 0:
        return "0"
    terms = []
    for i, c in enumerate(x.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(GEN_SYMBOL if c == 1 else f"{c}*{GEN_SYMBOL}")
        else:
            base = f"{GEN_SYMBOL}^{i}"
            terms.append(base if c == 1 else f"{c}*{base}")
    return "+".join(reversed(terms))


# ---------------------------------------------------------------------------
# embeddings


class Embedding:
    """Field homomorphism base -> ext fixing the prime field, determined by
    the image of the base generator (the smallest-code root of the base
    modulus in ext)."""

    def __init__(self, base, ext):
        if base.p != ext.p or ext.e % base.e != 0:
            raise InputError("no embedding between these fields")
        self.base = base
        self.ext = ext
        if base.e == 1:
            self._powers = (1,)
        else:
            if base is ext:
                rho = base.p  # the generator class itself: identity embedding
            else:
                rho = _root_of_prime_poly(base.modulus, ext)
                if rho is None:
                    raise FFMuError("modulus has no root in the extension")
            pw, acc = [1], 1
            for _ in range(base.e - 1):
                acc = ext.mul(acc, rho)
                pw.append(acc)
            self._powers = tuple(pw)

    def code(self, code):
        if self.base.e == 1:
            return code % self.base.p
        out = 0
        for c, rp in zip(_digits(code, self.base.p, self.base.e), self._powers):
            if c:
                out = self.ext.add(out, self.ext.smul(rp, c))
        return out

    def __call__(self, x):
        if isinstance(x, FFElem):
            return FFElem(self.ext, self.code(x.code))
        return FFElem(self.ext, self.code(int(x)))

    def map_poly(self, poly):
        return Poly.from_codes(self.ext, [self.code(c) for c in poly.coeffs])


_EMBED_CACHE = {}


def build_extension(base, d):
    """Degree-d extension of base together with the embedding map."""
    if d < 1:
        raise InputError("extension degree must be >= 1")
    key = (base.p, base.e, d)
    hit = _EMBED_CACHE.get(key)
    if hit is not None:
        return hit
    ext = field(base.p, base.e * d)
    emb = Embedding(base, ext)
    _EMBED_CACHE[key] = (ext, emb)
    return ext, emb


def _root_of_prime_poly(coeffs, ext):
    """Smallest-code root in ext of a monic polynomial with prime-field
    coefficients."""
    poly = Poly(ext, [c % ext.p for c in coeffs])
    roots = poly.roots()
    return min(r for r in roots) if roots else None


# ---------------------------------------------------------------------------
# polynomials over one field


class Poly:
    """Univariate polynomial over a FieldCtx; coefficients stored as codes,
    no trailing zeros (the zero polynomial has an empty tuple)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        # ints are lifted from the prime field; raw codes enter via from_codes
        codes = []
        for c in coeffs:
            if isinstance(c, FFElem):
                if c.ctx is not ctx:
                    raise InputError("coefficient from a different field")
                codes.append(c.code)
            else:
                codes.append(ctx.elem(c).code)
        while codes and codes[-1] == 0:
            codes.pop()
        self.ctx = ctx
        self.coeffs = tuple(codes)

    @classmethod
    def from_codes(cls, ctx, codes):
        obj = object.__new__(cls)
        codes = list(codes)
        while codes and codes[-1] == 0:
            codes.pop()
        obj.ctx = ctx
        obj.coeffs = tuple(codes)
        return obj

    @classmethod
    def x(cls, ctx):
        return cls.from_codes(ctx, (0, 1))

    @classmethod
    def constant(cls, ctx, c):
        return cls.from_codes(ctx, (ctx.elem(c).code,))

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return FFElem(self.ctx, self.coeffs[-1])

    def __getitem__(self, i):
        return FFElem(self.ctx, self.coeffs[i] if 0 <= i < len(self.coeffs) else 0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __add__(self, other):
        other = self._co(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ctx.add(out[i], c)
        return Poly.from_codes(ctx, out)

    def __neg__(self):
        ctx = self.ctx
        return Poly.from_codes(ctx, (ctx.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._co(other))

    def __mul__(self, other):
        other = self._co(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.from_codes(ctx, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return Poly.from_codes(ctx, out)

    def _co(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise InputError("polynomials over different fields")
            return other
        if isinstance(other, (int, FFElem)):
            return Poly.constant(self.ctx, other)
        raise InputError(f"cannot coerce {other!r} to a polynomial")

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._co(other) - self

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative polynomial power")
        out = Poly.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        """Multiply by a field element (FFElem, or a raw int code)."""
        code = c.code if isinstance(c, FFElem) else int(c)
        ctx = self.ctx
        return Poly.from_codes(ctx, (ctx.mul(x, code) for x in self.coeffs))

    def shift(self, k):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly.from_codes(self.ctx, (0,) * k + self.coeffs)

    def divmod(self, other):
        other = self._co(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = other.degree()
        inv_lead = ctx.inv(other.coeffs[-1])
        quo = [0] * max(0, len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = ctx.mul(c, inv_lead)
                quo[k - db] = f
                for i, bc in enumerate(other.coeffs):
                    rem[k - db + i] = ctx.sub(rem[k - db + i], ctx.mul(f, bc))
        return Poly.from_codes(ctx, quo), Poly.from_codes(ctx, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def gcd(self, other):
        a, b = self, self._co(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        ctx = self.ctx
        return Poly.from_codes(
            ctx, (ctx.smul(c, i % ctx.p) for i, c in enumerate(self.coeffs) if i)
        )

    def evaluate(self, x):
        """Horner evaluation at an FFElem of this field (or a raw int code)."""
        code = x.code if isinstance(x, FFElem) else int(x)
        ctx, acc = self.ctx, 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, code), c)
        return FFElem(ctx, acc)

    def evaluate_in(self, emb, x):
        """Evaluate at x living in an extension, mapping coefficients
        through the embedding."""
        ext = emb.ext
        code = x.code if isinstance(x, FFElem) else x
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, code), emb.code(c))
        return FFElem(ext, acc)

    def veval(self, xs):
        """Vectorized Horner evaluation over a numpy array of codes."""
        ctx = self.ctx
        acc = np.zeros(np.shape(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = ctx.vadd(ctx.vmul(acc, xs), np.int64(c))
        return acc

    def pow_mod(self, n, modulus):
        out = Poly.constant(self.ctx, 1)
        base = self % modulus
        while n:
            if n & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return out

    def taylor_shift(self, r):
        """self(x + r) by repeated synthetic division by (x - r):
        f(x) = sum rem_k (x - r)^k, so f(x + r) = sum rem_k x^k."""
        rcode = self.ctx.elem(r).code
        ctx = self.ctx
        work = list(self.coeffs)
        rems = []
        while work:
            n = len(work) - 1
            quo = [0] * n
            acc = work[n]
            for k in range(n - 1, -1, -1):
                quo[k] = acc
                acc = ctx.add(work[k], ctx.mul(rcode, acc))
            rems.append(acc)
            work = quo
        return Poly.from_codes(ctx, rems)

    def reverse(self):
        """x^deg * f(1/x) for nonzero f (assumes nonzero constant handling
        by caller when needed)."""
        return Poly.from_codes(self.ctx, tuple(reversed(self.coeffs)))

    # -- structure

    def is_squarefree(self):
        if self.degree() <= 1:
            return True
        d = self.derivative()
        if d.is_zero():
            return False
        return self.gcd(d).degree() == 0

    def is_irreducible(self):
        n = self.degree()
        if n <= 0:
            return False
        if n == 1:
            return True
        ctx = self.ctx
        f = self.monic()
        x = Poly.x(ctx)
        # Rabin: x^{q^n} = x mod f, and x^{q^{n/ell}} - x coprime to f
        xq = _frobenius_power(x, f, ctx.q)
        pows = {1: xq}

        def xq_power(k):
            # x^{q^k} mod f via repeated Frobenius composition
            if k in pows:
                return pows[k]
            half = xq_power(k - 1)
            out = _compose_mod(half, xq, f)
            pows[k] = out
            return out

        if xq_power(n) != x % f:
            return False
        for ell in _factorize(n):
            g = xq_power(n // ell) - x
            if g.is_zero() or f.gcd(g).degree() > 0:
                return False
        return True

    def squarefree_decomposition(self):
        """List of (squarefree monic factor, multiplicity), char-p Yun.

        Factors with multiplicity divisible by p survive in the final gcd
        chain as a p-th power and are handled by the p-th root recursion.
        """
        ctx = self.ctx
        f = self.monic()
        out = []
        if f.degree() <= 0:
            return out
        d = f.derivative()
        if d.is_zero():
            for base, mult in f._pth_root().squarefree_decomposition():
                out.append((base, mult * ctx.p))
            return out
        c = f.gcd(d)
        w = f // c
        i = 1
        while w.degree() > 0:
            y = w.gcd(c)
            piece = w // y
            if piece.degree() > 0:
                out.append((piece, i))
            w = y
            c = c // y
            i += 1
        if c.degree() > 0:
            for base, mult in c._pth_root().squarefree_decomposition():
                out.append((base, mult * ctx.p))
        return sorted(out, key=lambda t: (t[0].degree(), t[0].coeffs))

    def _pth_root(self):
        """p-th root of a polynomial of the form g(x^p) (perfect field)."""
        ctx = self.ctx
        p = ctx.p
        out = []
        for i in range(0, len(self.coeffs), p):
            c = self.coeffs[i]
            # p-th root of the coefficient: Frobenius inverse
            out.append(ctx.pow(c, ctx.q // p) if c else 0)
        return Poly.from_codes(ctx, out)

    def factor(self):
        """Full factorization into monic irreducibles: [(poly, mult)],
        sorted deterministically.  Desk-scale Cantor-Zassenhaus."""
        if self.is_zero():
            raise ValueError("factor of zero polynomial")
        out = {}
        for sqfree, mult in self.squarefree_decomposition():
            for irr in _factor_squarefree(sqfree):
                out[irr] = out.get(irr, 0) + mult
        return sorted(out.items(), key=lambda t: (t[0].degree(), t[0].coeffs))

    def roots(self):
        """Roots in the coefficient field, without multiplicity, sorted by
        code.  Exhaustive below 2^16 elements, gcd-splitting above."""
        ctx = self.ctx
        if self.is_zero():
            raise ValueError("roots of zero polynomial")
        if self.degree() == 0:
            return []
        if ctx.q < (1 << 16):
            return [c for c in range(ctx.q) if self.evaluate(ctx.from_code(c)).is_zero()]
        f = self.monic()
        x = Poly.x(ctx)
        xq = _frobenius_power(x, f, ctx.q)
        lin = f.gcd(xq - x)  # product of (x - r) over the distinct roots
        return sorted(r.code for r, _ in _split_linear(lin))

    def render(self, var="t"):
        return render_poly(self, var)

    def __repr__(self):
        return self.render()


def _frobenius_power(x, f, q):
    return x.pow_mod(q, f)


def _compose_mod(g, h, f):
    """g(h) mod f by Horner."""
    ctx = f.ctx
    out = Poly.from_codes(ctx, ())
    for c in reversed(g.coeffs):
        out = (out * h + Poly.constant(ctx, FFElem(ctx, c))) % f
    return out


def _split_linear(f):
    """Split a product of distinct linear factors into [(root, 1)]."""
    ctx = f.ctx
    if f.degree() <= 0:
        return []
    if f.degree() == 1:
        r = -f[0] / f[1]
        return [(r, 1)]
    # deterministic scan: chi(r + c) splits odd characteristic; the additive
    # trace of beta*r splits characteristic 2 (Tr(x + c) cannot separate
    # roots of equal trace, so scan multipliers there)
    for bcode in range(1, ctx.q):
        if ctx.p == 2:
            b = Poly.from_codes(ctx, (0, bcode))
            tr = Poly.from_codes(ctx, ())
            acc = b % f
            for _ in range(ctx.e):
                tr = tr + acc
                acc = (acc * acc) % f
            g = f.gcd(tr)
        else:
            b = Poly.from_codes(ctx, (bcode, 1))
            g = f.gcd(b.pow_mod((ctx.q - 1) // 2, f) - 1)
        if 0 < g.degree() < f.degree():
            return _split_linear(g) + _split_linear(f // g)
    raise FFMuError("failed to split linear factors")  # pragma: no cover


def _factor_squarefree(f):
    """Irreducible factors of a squarefree monic polynomial."""
    ctx = f.ctx
    out = []
    x = Poly.x(ctx)
    rest = f
    d = 1
    xqd = x
    while rest.degree() >= 2 * d:
        xqd = _frobenius_power(xqd, rest, ctx.q)
        g = rest.gcd(xqd - x)
        if g.degree() > 0:
            out.extend(_equal_degree_split(g, d))
            rest = rest // g
            xqd = xqd % rest
        d += 1
    if rest.degree() > 0:
        out.append(rest.monic())
    return out


def _equal_degree_split(f, d):
    """Cantor-Zassenhaus on a product of degree-d irreducibles,
    deterministic shift scan."""
    ctx = f.ctx
    if f.degree() == d:
        return [f.monic()]
    n = f.degree()
    # scan polynomials b of degree < 2d in a fixed order
    width = min(2 * d, n)
    total = ctx.q**width
    if total > ENUMERATION_CAP:
        total = ENUMERATION_CAP
    for code in range(1, total):
        b = Poly.from_codes(ctx, _digits(code, ctx.q, width))
        if b.degree() < 1:
            continue
        if ctx.p == 2:
            tr = Poly.from_codes(ctx, ())
            acc = b % f
            for _ in range(d * ctx.e):
                tr = tr + acc
                acc = (acc * acc) % f
            g = f.gcd(tr)
        else:
            g = f.gcd(b.pow_mod((ctx.q**d - 1) // 2, f) - 1)
        if 0 < g.degree() < f.degree():
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)
    raise FFMuError("equal-degree splitting failed")  # pragma: no cover


def enumerate_monic_irreducibles(ctx, d):
    """Yield every monic irreducible of degree d over ctx exactly once,
    in code order."""
    if d < 1:
        raise InputError("degree must be >= 1")
    if ctx.q**d > ENUMERATION_CAP:
        raise BudgetExceeded(f"enumeration of q^{d} = {ctx.q**d} monic polynomials")
    if d == 1:
        for c in range(ctx.q):
            yield Poly.from_codes(ctx, (c, 1))
        return
    for code in range(ctx.q**d):
        cand = Poly.from_codes(ctx, tuple(_digits(code, ctx.q, d)) + (1,))
        if cand.is_irreducible():
            yield cand


def necklace_count(q, d):
    """Number of monic irreducibles of degree d over GF(q)."""
    total = 0
    for k in _divisors(d):
        total += _moebius(k) * q ** (d // k)
    return total // d


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def _moebius(n):
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def quadratic_character(x):
    """Spec-level wrapper: chi of an FFElem, odd characteristic."""
    return x.ctx.chi(x.code)


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """num/den over a single field, den monic, gcd(num, den) = 1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise InputError("numerator must be a Poly")
        ctx = num.ctx
        if den is None:
            den = Poly.constant(ctx, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if lead.code != 1:
            inv = lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.ctx = ctx
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, ctx, c):
        return cls(Poly.constant(ctx, c))

    @classmethod
    def t(cls, ctx):
        return cls(Poly.x(ctx))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    def map_degree(self):
        """Degree of the divisor of poles (= of zeros): max(deg num, deg den)."""
        return max(self.num.degree(), self.den.degree())

    def _co(self, other):
        if isinstance(other, RationalFunction):
            if other.ctx is not self.ctx:
                raise InputError("different base fields")
            return other
        if isinstance(other, (int, FFElem)):
            return RationalFunction.constant(self.ctx, other)
        if isinstance(other, Poly):
            return RationalFunction(other)
        raise InputError(f"cannot coerce {other!r}")

    def __add__(self, other):
        o = self._co(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._co(other) / self

    def __pow__(self, n):
        if n < 0:
            return (1 / self) ** (-n)
        out = RationalFunction.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, int, FFElem, Poly)):
            o = self._co(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def frobenius_power(self, k=1):
        """Raise to the p^k-th power (coefficientwise Frobenius plus
        exponent scaling)."""
        out = self
        for _ in range(k):
            out = out**out.ctx.p
        return out

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if d.is_zero():
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate(x) / d

    def evaluate_in(self, emb, x):
        d = self.den.evaluate_in(emb, x)
        if d.is_zero():
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate_in(emb, x) / d

    def render(self, var="t"):
        n = self.num.render(var)
        if self.den.degree() == 0 and self.den.coeffs == (1,):
            return n
        d = self.den.render(var)
        np_ = n if _is_atomic(n) else f"({n})"
        dp = d if _is_atomic(d) else f"({d})"
        return f"{np_}/{dp}"

    def __repr__(self):
        return self.render()


def _is_atomic(s):
    return not any(c in s for c in "+-") or (s.startswith("-") and not any(c in s[1:] for c in "+-"))


def render_poly(poly, var="t"):
    if poly.is_zero():
        return "0"
    ctx = poly.ctx
    terms = []
    for i in range(poly.degree(), -1, -1):
        c = poly.coeffs[i] if i < len(poly.coeffs) else 0
        if c == 0:
            continue
        cstr = render_ff(FFElem(ctx, c))
        if i == 0:
            terms.append(cstr if _is_atomic(cstr) else f"({cstr})")
            continue
        xpart = var if i == 1 else f"{var}^{i}"
        if c == 1:
            terms.append(xpart)
        elif _is_atomic(cstr):
            terms.append(f"{cstr}*{xpart}")
        else:
            terms.append(f"({cstr})*{xpart}")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# parsing of the text grammar (polynomials in one variable, generator g)


class _Tok:
    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = value


def _tokenize(s):
    out = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            out.append(_Tok("int", int(s[i:j])))
            i = j
        elif c.isalpha():
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            out.append(_Tok("name", s[i:j]))
            i = j
        elif c in "+-*/^()":
            out.append(_Tok(c))
            i += 1
        else:
            raise InputError(f"unexpected character {c!r} in {s!r}")
    # implicit multiplication: 5x, 2g, x(…), )(, )x
    fixed = []
    for tok in out:
        if fixed and fixed[-1].kind in ("int", "name", ")") and tok.kind in ("name", "("):
            fixed.append(_Tok("*"))
        fixed.append(tok)
    return fixed


class _Parser:
    """Recursive-descent parser for +,-,*,/,^ over ints, g and one variable."""

    def __init__(self, tokens, ctx):
        self.toks = tokens
        self.i = 0
        self.ctx = ctx
        self.var = None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else _Tok("end")

    def take(self, kind=None):
        tok = self.peek()
        if kind and tok.kind != kind:
            raise InputError(f"expected {kind}, found {tok.kind}")
        self.i += 1
        return tok

    def parse(self):
        out = self.expr()
        if self.peek().kind != "end":
            raise InputError("trailing input in expression")
        return out

    def expr(self):
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.take().kind == "-":
                sign = -sign
        node = self.term()
        if sign < 0:
            node = -node
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.power()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.power()
            node = node * rhs if op == "*" else node / rhs
        return node

    def power(self):
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            neg = False
            if self.peek().kind == "-":
                self.take()
                neg = True
            n = self.take("int").value
            return base ** (-n if neg else n)
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return RationalFunction.constant(self.ctx, tok.value)
        if tok.kind == "name":
            self.take()
            if tok.value == GEN_SYMBOL:
                if self.ctx.e == 1:
                    raise InputError("generator symbol g used over a prime field")
                return RationalFunction.constant(self.ctx, self.ctx.from_code(self.ctx.p))
            if self.var is None:
                self.var = tok.value
            elif tok.value != self.var:
                raise InputError(f"two distinct variables {self.var!r} and {tok.value!r}")
            return RationalFunction.t(self.ctx)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "-":
            self.take()
            return -self.atom()
        raise InputError(f"unexpected token {tok.kind}")


def parse_rational(s, ctx):
    """Parse the text grammar into a RationalFunction over ctx."""
    return _Parser(_tokenize(s), ctx).parse()


def parse_poly(s, ctx):
    r = parse_rational(s, ctx)
    if r.den.degree() != 0 or r.den.coeffs != (1,):
        raise InputError(f"{s!r} is not a polynomial")
    return r.num


# ---------------------------------------------------------------------------
# Laurent series with absolute precision tracking


class LaurentSeries:
    """Finite-precision Laurent series over a residue FieldCtx.

    coeffs[i] is the coefficient of u^(n0 + i); coefficients are known for
    all exponents < prec.  A series that is zero to its precision has empty
    coeffs and n0 = prec; asking for its valuation raises PrecisionExhausted.
    """

    __slots__ = ("ctx", "n0", "coeffs", "prec")

    def __init__(self, ctx, n0, coeffs, prec):
        # int coefficients are raw codes (series are internal objects)
        codes = [c.code if isinstance(c, FFElem) else int(c) for c in coeffs]
        # clip anything at or beyond the precision
        if n0 + len(codes) > prec:
            codes = codes[: max(0, prec - n0)]
        while codes and codes[0] == 0:
            codes.pop(0)
            n0 += 1
        while codes and codes[-1] == 0:
            codes.pop()
        if not codes:
            n0 = prec
        self.ctx = ctx
        self.n0 = n0
        self.coeffs = tuple(codes)
        self.prec = prec

    @classmethod
    def zero(cls, ctx, prec):
        return cls(ctx, prec, (), prec)

    @classmethod
    def constant(cls, ctx, c, prec):
        return cls(ctx, 0, (c,), prec)

    @classmethod
    def uniformizer(cls, ctx, prec, exponent=1):
        return cls(ctx, exponent, (1,), prec)

    def is_zero_to_precision(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise PrecisionExhausted(f"series is zero to O(u^{self.prec})")
        return self.n0

    def coefficient(self, n):
        """Coefficient of u^n (raises if beyond the known precision)."""
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient of u^{n} beyond O(u^{self.prec})")
        i = n - self.n0
        return FFElem(self.ctx, self.coeffs[i] if 0 <= i < len(self.coeffs) else 0)

    def residue_at_valuation(self):
        self.valuation()
        return FFElem(self.ctx, self.coeffs[0])

    def _co(self, other):
        if isinstance(other, LaurentSeries):
            if other.ctx is not self.ctx:
                raise InputError("series over different residue fields")
            return other
        if isinstance(other, (int, FFElem)):
            return LaurentSeries.constant(self.ctx, self.ctx.elem(other).code, self.prec)
        raise InputError(f"cannot coerce {other!r} to a series")

    def __add__(self, other):
        o = self._co(other)
        ctx = self.ctx
        prec = min(self.prec, o.prec)
        if not self.coeffs:
            return LaurentSeries(ctx, o.n0, o.coeffs, prec)
        if not o.coeffs:
            return LaurentSeries(ctx, self.n0, self.coeffs, prec)
        n0 = min(self.n0, o.n0)
        top = min(max(self.n0 + len(self.coeffs), o.n0 + len(o.coeffs)), prec)
        out = [0] * max(0, top - n0)
        for i, c in enumerate(self.coeffs):
            k = self.n0 + i - n0
            if 0 <= k < len(out):
                out[k] = c
        for i, c in enumerate(o.coeffs):
            k = o.n0 + i - n0
            if 0 <= k < len(out):
                out[k] = ctx.add(out[k], c)
        return LaurentSeries(ctx, n0, out, prec)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return LaurentSeries(ctx, self.n0, [ctx.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        ctx = self.ctx
        if not self.coeffs or not o.coeffs:
            # zero-to-precision times anything: precision of the product
            va = self.n0  # = prec if zero
            vb = o.n0
            return LaurentSeries.zero(ctx, min(self.prec + vb, o.prec + va))
        prec = min(self.prec + o.n0, o.prec + self.n0)
        n0 = self.n0 + o.n0
        width = min(len(self.coeffs) + len(o.coeffs) - 1, prec - n0)
        out = [0] * max(0, width)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            jmax = min(len(o.coeffs), width - i)
            for j in range(jmax):
                y = o.coeffs[j]
                if y:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return LaurentSeries(ctx, n0, out, prec)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries(self.ctx, 0, (1,), 10**9)
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self):
        v = self.valuation()  # raises if zero-to-precision
        ctx = self.ctx
        rel = self.prec - v  # number of known coefficients of the unit part
        a = list(self.coeffs[:rel])
        a += [0] * (rel - len(a))
        inv0 = ctx.inv(a[0])
        out = [inv0] + [0] * (rel - 1)
        for k in range(1, rel):
            s = 0
            for j in range(1, k + 1):
                if j < len(a) and a[j]:
                    s = ctx.add(s, ctx.mul(a[j], out[k - j]))
            out[k] = ctx.neg(ctx.mul(inv0, s))
        return LaurentSeries(ctx, -v, out, self.prec - 2 * v)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) / self

    def shift(self, k):
        """Multiply by u^k."""
        return LaurentSeries(self.ctx, self.n0 + k, self.coeffs, self.prec + k)

    def truncate(self, prec):
        return LaurentSeries(self.ctx, self.n0, self.coeffs, min(self.prec, prec))

    def substitute_monomial(self, unit_code, exponent):
        """u -> unit * w^exponent; the spec's ramified re-expansion map."""
        ctx = self.ctx
        out = {}
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            n = self.n0 + i
            out[n * exponent] = ctx.mul(c, ctx.pow(unit_code, n % (ctx.q - 1) if unit_code else 0))
        prec = self.prec * exponent
        if not out:
            return LaurentSeries.zero(ctx, prec)
        lo = min(out)
        hi = max(out)
        coeffs = [out.get(n, 0) for n in range(lo, hi + 1)]
        return LaurentSeries(ctx, lo, coeffs, prec)

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return (
                self.ctx is other.ctx
                and self.n0 == other.n0
                and self.coeffs == other.coeffs
                and self.prec == other.prec
            )
        return NotImplemented

    def __repr__(self):
        if not self.coeffs:
            return f"O(u^{self.prec})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            n = self.n0 + i
            cs = render_ff(FFElem(self.ctx, c))
            if not _is_atomic(cs):
                cs = f"({cs})"
            if n == 0:
                parts.append(cs)
            elif n == 1:
                parts.append(f"{cs}*u" if cs != "1" else "u")
            else:
                parts.append(f"{cs}*u^{n}" if cs != "1" else f"u^{n}")
        return "+".join(parts) + f"+O(u^{self.prec})"


def hensel_root(poly_codes, ctx, root0, prec):
    """Series tau over ctx with poly(tau) = u + O(u^prec) and tau(0) = root0.

    poly_codes are the coefficients of a monic polynomial with coefficients
    already embedded in ctx; root0 must be a simple root of the reduction.
    Newton iteration doubles the correct precision each step.
    """
    n = len(poly_codes) - 1
    if n < 1:
        raise InputError("polynomial must be non-constant")
    dpoly = [ctx.smul(c, i % ctx.p) for i, c in enumerate(poly_codes) if i > 0]
    dval = 0
    x = root0
    acc = 0
    for c in reversed(dpoly):
        acc = ctx.add(ctx.mul(acc, x), c)
    dval = acc
    if dval == 0:
        raise FFMuError("not a simple root; cannot apply Hensel lifting")

    def eval_series(coeffs, tau):
        out = LaurentSeries.constant(ctx, 0, 10**9)
        for c in reversed(coeffs):
            out = out * tau + LaurentSeries.constant(ctx, c, 10**9)
        return out

    tau = LaurentSeries(ctx, 0, (root0,), 1)
    known = 1
    u = LaurentSeries(ctx, 1, (1,), 10**9)
    while known < prec:
        known = min(2 * known, prec)
        tau = LaurentSeries(ctx, tau.n0, tau.coeffs, known)
        f = eval_series(poly_codes, tau) - u
        fp = eval_series(dpoly, tau)
        f = f.truncate(known)
        fp = fp.truncate(known)
        if f.is_zero_to_precision():
            continue
        tau = (tau - f * fp.inverse()).truncate(known)
    return LaurentSeries(ctx, tau.n0, tau.coeffs, prec)
