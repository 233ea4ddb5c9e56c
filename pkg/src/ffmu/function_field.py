"""Places and divisors of the rational function field F_q(t).

Only the genus-0 base P^1 is modeled: places are the monic irreducibles of
F_q[t] plus the infinite place (handled through the substitution s = 1/t).
Local expansion of a rational function at a place produces a LaurentSeries
over the residue field, with adaptive precision driven by the caller.
"""

from .algebra import (
    LaurentSeries,
    Poly,
    RationalFunction,
    build_extension,
    hensel_root,
    parse_poly,
)
from .errors import InputError

PLACE_INF_NAME = "inf"


class Place:
    """A finite place (monic irreducible polynomial) or the infinite place."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly=None, infinite=False):
        if infinite:
            self.poly = None
            self.degree = 1
        else:
            if poly is None or poly.degree() < 1:
                raise InputError("finite place needs a non-constant polynomial")
            poly = poly.monic()
            if not poly.is_irreducible():
                raise InputError(f"{poly.render()} is not irreducible")
            self.poly = poly
            self.degree = poly.degree()

    @classmethod
    def infinite(cls):
        return cls(infinite=True)

    @classmethod
    def finite(cls, poly):
        return cls(poly)

    @classmethod
    def parse(cls, s, ctx):
        if s.strip() == PLACE_INF_NAME:
            return cls.infinite()
        return cls(parse_poly(s, ctx))

    def is_infinite(self):
        return self.poly is None

    def render(self):
        return PLACE_INF_NAME if self.poly is None else self.poly.render()

    def _key(self):
        if self.poly is None:
            return (1, ())
        return (0, self.poly.coeffs)

    def __eq__(self, other):
        if isinstance(other, Place):
            return self._key() == other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        # infinite place sorts last; finite by (degree, coeffs)
        a = (self.poly is None, self.degree, () if self.poly is None else self.poly.coeffs)
        b = (other.poly is None, other.degree, () if other.poly is None else other.poly.coeffs)
        return a < b

    def __repr__(self):
        return f"Place({self.render()})"


class Divisor:
    """Finite formal sum of places with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for place, c in dict(coeffs).items():
                if c:
                    self.coeffs[place] = c

    def coefficient(self, place):
        return self.coeffs.get(place, 0)

    def support(self):
        return sorted(self.coeffs)

    def degree(self):
        return sum(c * place.degree for place, c in self.coeffs.items())

    def is_effective(self):
        return all(c > 0 for c in self.coeffs.values())

    def __add__(self, other):
        out = dict(self.coeffs)
        for place, c in other.coeffs.items():
            out[place] = out.get(place, 0) + c
        return Divisor(out)

    def __neg__(self):
        return Divisor({place: -c for place, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def to_json(self):
        return [
            {"place": place.render(), "coeff": c, "degree": place.degree}
            for place, c in sorted(self.coeffs.items())
        ]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for place, c in sorted(self.coeffs.items()):
            s = f"({place.render()})"
            parts.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(parts)


def valuation(f, place):
    """Order of vanishing of a nonzero rational function at a place."""
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if f.is_zero():
        raise InputError("valuation of the zero function")
    if place.is_infinite():
        return f.den.degree() - f.num.degree()
    return _poly_val(f.num, place.poly) - _poly_val(f.den, place.poly)


def _poly_val(poly, pi):
    if poly.is_zero():
        raise InputError("valuation of the zero polynomial")
    v = 0
    while True:
        quo, rem = poly.divmod(pi)
        if not rem.is_zero():
            return v
        v += 1
        poly = quo


def zeros_poles(f):
    """Divisors of zeros and poles of a nonzero rational function."""
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if f.is_zero():
        raise InputError("divisor of the zero function")
    zeros, poles = {}, {}
    for poly, mult in f.num.factor():
        if poly.degree() > 0:
            zeros[Place(poly)] = mult
    for poly, mult in f.den.factor():
        if poly.degree() > 0:
            poles[Place(poly)] = mult
    v_inf = f.den.degree() - f.num.degree()
    if v_inf > 0:
        zeros[Place.infinite()] = v_inf
    elif v_inf < 0:
        poles[Place.infinite()] = -v_inf
    return Divisor(zeros), Divisor(poles)


def principal_divisor(f):
    z, p = zeros_poles(f)
    return z - p


class LocalContext:
    """Expansion of rational functions at one place, at fixed precision.

    For a finite place pi of degree d the residue field is F_{q^d} and the
    image of t is the Hensel root tau(u) of pi(X) = u with tau(0) the
    smallest-code root of pi; at the infinite place the image of t is 1/u.
    """

    def __init__(self, place, ctx, precision):
        if precision < 1:
            raise InputError("precision must be >= 1")
        self.place = place
        self.base_ctx = ctx
        self.precision = precision
        if place.is_infinite():
            self.residue_ctx = ctx
            self.embedding = build_extension(ctx, 1)[1]
            self.t_image = LaurentSeries(ctx, -1, (1,), precision)
        else:
            d = place.degree
            self.residue_ctx, self.embedding = build_extension(ctx, d)
            pi_codes = [self.embedding.code(c) for c in place.poly.coeffs]
            if d == 1:
                # linear place t - r: t expands as r + u exactly
                r = self.residue_ctx.neg(pi_codes[0])
                self.t_image = LaurentSeries(self.residue_ctx, 0, (r, 1), precision)
            else:
                theta = min(
                    c
                    for c in range(self.residue_ctx.q)
                    if _eval_codes(pi_codes, c, self.residue_ctx) == 0
                )
                self.t_image = hensel_root(pi_codes, self.residue_ctx, theta, precision)

    def expand_poly(self, poly):
        ctx = self.residue_ctx
        if poly.is_zero():
            return LaurentSeries.zero(ctx, self.precision + 1)
        if self.place.is_infinite():
            # f(1/u) = u^(-deg) * reverse(f)(u)
            rev = list(reversed(poly.coeffs))
            return LaurentSeries(ctx, -poly.degree(), rev, self.precision)
        out = LaurentSeries.constant(ctx, 0, 10**9)
        tau = self.t_image
        for c in reversed(poly.coeffs):
            out = out * tau + LaurentSeries.constant(ctx, self.embedding.code(c), 10**9)
        return out.truncate(self.precision + max(0, out.n0))

    def expand(self, f):
        """LaurentSeries expansion of a rational function at this place."""
        if isinstance(f, Poly):
            f = RationalFunction(f)
        if f.is_zero():
            return LaurentSeries.zero(self.residue_ctx, self.precision + 1)
        num = self.expand_poly(f.num)
        den = self.expand_poly(f.den)
        return num / den

    def residue_of(self, f):
        """Reduction of f at the place (f must be integral there)."""
        s = self.expand(f)
        if s.is_zero_to_precision():
            return self.residue_ctx.zero
        if s.valuation() < 0:
            raise InputError("pole at the place; no residue-field reduction")
        return s.coefficient(0)


_LC_CACHE = {}


def local_context(place, ctx, precision):
    """Memoized LocalContext keyed by (place, precision)."""
    key = (id(ctx), place._key(), precision)
    hit = _LC_CACHE.get(key)
    if hit is None:
        hit = LocalContext(place, ctx, precision)
        _LC_CACHE[key] = hit
    return hit


def _eval_codes(codes, x, ctx):
    acc = 0
    for c in reversed(codes):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def places_of_degree(ctx, d):
    """All places of degree d: the infinite place is included for d = 1."""
    from .algebra import enumerate_monic_irreducibles

    out = [Place(p) for p in enumerate_monic_irreducibles(ctx, d)]
    if d == 1:
        out.append(Place.infinite())
    return out
