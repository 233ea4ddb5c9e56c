"""Weierstrass models over K = F_q(t): standard invariants, coordinate
changes, quadratic and Frobenius twists, and structural predicates
(isotriviality, constancy, j a p-th power, Legendre form).

Models are never minimalized globally; minimality is a per-place notion
handled by the local module.
"""

from .algebra import Poly, RationalFunction, quadratic_character
from .errors import InputError, SingularModelError
from .function_field import valuation, zeros_poles


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t)."""

    __slots__ = ("ctx", "a1", "a2", "a3", "a4", "a6", "_inv")

    def __init__(self, ctx, a1, a2, a3, a4, a6):
        self.ctx = ctx
        self.a1, self.a2, self.a3, self.a4, self.a6 = (
            self._coerce(a) for a in (a1, a2, a3, a4, a6)
        )
        self._inv = None
        if self.discriminant().is_zero():
            raise SingularModelError("discriminant vanishes: not an elliptic curve")

    def _coerce(self, a):
        if isinstance(a, RationalFunction):
            if a.ctx is not self.ctx:
                raise InputError("coefficient over a different constant field")
            return a
        if isinstance(a, Poly):
            return RationalFunction(a)
        return RationalFunction.constant(self.ctx, a)

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def invariants(self):
        """(b2, b4, b6, b8, c4, c6, Delta_eq, j)."""
        if self._inv is None:
            a1, a2, a3, a4, a6 = self.coefficients
            b2 = a1 * a1 + 4 * a2
            b4 = 2 * a4 + a1 * a3
            b6 = a3 * a3 + 4 * a6
            b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
            c4 = b2 * b2 - 24 * b4
            c6 = -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6
            delta = -(b2 * b2) * b8 - 8 * (b4**3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6
            if delta.is_zero():
                raise SingularModelError("singular equation")
            j = c4**3 / delta
            self._inv = (b2, b4, b6, b8, c4, c6, delta, j)
        return self._inv

    def discriminant(self):
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -(b2 * b2) * b8 - 8 * (b4**3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6

    def j_invariant(self):
        return self.invariants()[7]

    def transform(self, u=1, r=0, s=0, w=0):
        """Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + w."""
        u = self._coerce(u)
        r, s, w = self._coerce(r), self._coerce(s), self._coerce(w)
        if u.is_zero():
            raise InputError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.coefficients
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
        na3 = (a3 + r * a1 + 2 * w) / u**3
        na4 = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) / u**4
        na6 = (a6 + r * a4 + r * r * a2 + r**3 - w * a3 - w * w - r * w * a1) / u**6
        return WeierstrassModel(self.ctx, na1, na2, na3, na4, na6)

    def quadratic_twist(self, d):
        """Twist by d (p odd): completed square scaled by d in each slot."""
        if self.ctx.p == 2:
            raise InputError("quadratic twist unsupported in characteristic 2")
        d = self._coerce(d)
        if d.is_zero():
            raise InputError("twist by zero")
        b2, b4, b6 = self.invariants()[0:3]
        quarter = RationalFunction.constant(self.ctx, 1) / 4
        half = RationalFunction.constant(self.ctx, 1) / 2
        return WeierstrassModel(
            self.ctx, 0, b2 * quarter * d, 0, b4 * half * d * d, b6 * quarter * d**3
        )

    def frobenius_twist(self, mexp=1):
        """Coefficients raised to the p^mexp-th power."""
        if mexp < 0:
            raise InputError("Frobenius twist exponent must be >= 0")
        return WeierstrassModel(
            self.ctx, *(a.frobenius_power(mexp) for a in self.coefficients)
        )

    def is_isomorphic_candidate(self, other):
        """Same j and same c4^3 : c6^2 class (a K-isomorphism invariant pair;
        used by tests, not a full isomorphism test)."""
        if self.j_invariant() != other.j_invariant():
            return False
        c4a, c6a = self.invariants()[4:6]
        c4b, c6b = other.invariants()[4:6]
        if c4a.is_zero() != c4b.is_zero() or c6a.is_zero() != c6b.is_zero():
            return False
        if c4a.is_zero():
            return _is_nth_power_class(c6b / c6a, 6)
        if c6a.is_zero():
            return _is_nth_power_class(c4b / c4a, 4)
        u2 = (c6b / c6a) / (c4b / c4a)
        return _is_square(u2) and c4b / c4a == u2 * u2 and c6b / c6a == u2**3

    def render(self, var="t"):
        return "[" + ", ".join(a.render(var) for a in self.coefficients) + "]"

    def __repr__(self):
        return f"WeierstrassModel({self.render()})"


def legendre_curve(f):
    """y^2 = x(x-1)(x-f), i.e. [0, -(1+f), 0, f, 0]; p odd, f not 0 or 1."""
    if not isinstance(f, RationalFunction):
        raise InputError("Legendre parameter must be a RationalFunction")
    ctx = f.ctx
    if ctx.p == 2:
        raise InputError("Legendre form unsupported in characteristic 2")
    if f.is_zero() or f == RationalFunction.constant(ctx, 1):
        raise SingularModelError("Legendre parameter 0 or 1 gives a singular curve")
    return WeierstrassModel(ctx, 0, -(1 + f), 0, f, 0)


def j_is_pth_power(model):
    """True iff j lies in K^p = F_q(t^p), i.e. the formal t-derivative of j
    vanishes identically."""
    return model.j_invariant().derivative().is_zero()


def is_isotrivial(model):
    return model.j_invariant().is_constant()


class Constancy:
    """Outcome of constancy detection."""

    __slots__ = ("kind", "constant_model")

    def __init__(self, kind, constant_model=None):
        self.kind = kind  # "constant" | "nonconstant" | "undetermined"
        self.constant_model = constant_model  # coefficient tuple over F_q

    def is_constant(self):
        return self.kind == "constant"

    def __repr__(self):
        return f"Constancy({self.kind})"


def _is_square(f):
    """Is a nonzero rational function a square in K*?"""
    z, p = zeros_poles(f)
    for d in (z, p):
        if any(c % 2 for c in d.coeffs.values()):
            return False
    lead = f.num.leading() / f.den.leading()
    return quadratic_character(lead) >= 0 and quadratic_character(lead) == 1


def _is_nth_power_class(f, n):
    """Is f = c * s^n with c a constant and s in K*? (valuations all divisible
    by n; the constant is free)."""
    z, p = zeros_poles(f)
    for d in (z, p):
        if any(c % n for c in d.coeffs.values()):
            return False
    return True


def _nth_root_monic_part(f, n):
    """s with div(s) = div(f)/n, as a monic rational function (finite part),
    assuming all finite valuations of f are divisible by n."""
    ctx = f.ctx
    num = Poly.constant(ctx, 1)
    den = Poly.constant(ctx, 1)
    for poly, mult in f.num.monic().factor():
        num = num * poly ** (mult // n)
    for poly, mult in f.den.monic().factor():
        den = den * poly ** (mult // n)
    return RationalFunction(num, den)


def _constant_elliptic_from_c_invariants(ctx, kappa4, kappa6):
    """Short Weierstrass curve over F_q with c4 = kappa4, c6 = kappa6
    (p >= 5): y^2 = x^3 - (kappa4/48) x - (kappa6/864)."""
    inv48 = ctx.elem(48).inverse()
    inv864 = ctx.elem(864).inverse()
    a4 = -(kappa4 * inv48)
    a6 = -(kappa6 * inv864)
    return (ctx.zero, ctx.zero, ctx.zero, a4, a6)


def detect_constancy(model):
    """Classify the model as constant / nonconstant / undetermined.

    Nonconstant whenever j is nonconstant.  For constant j and p >= 5 the
    decision reduces to power-class tests on the c-invariants; for p in
    {2, 3} only literally-constant coefficients are certified constant.
    """
    ctx = model.ctx
    j = model.j_invariant()
    if not j.is_constant():
        return Constancy("nonconstant")
    if all(a.is_constant() for a in model.coefficients):
        return Constancy(
            "constant", tuple(a.constant_value() for a in model.coefficients)
        )
    if ctx.p in (2, 3):
        return Constancy("undetermined")
    b2, b4, b6, b8, c4, c6, delta, _ = model.invariants()
    if c4.is_zero():  # j = 0
        if not _is_nth_power_class(c6, 6):
            return Constancy("nonconstant")
        s = _nth_root_monic_part(c6, 6)
        kappa6 = (c6 / s**6).constant_value()
        return Constancy(
            "constant", _constant_elliptic_from_c_invariants(ctx, ctx.zero, kappa6)
        )
    if c6.is_zero():  # j = 1728
        if not _is_nth_power_class(c4, 4):
            return Constancy("nonconstant")
        s = _nth_root_monic_part(c4, 4)
        kappa4 = (c4 / s**4).constant_value()
        return Constancy(
            "constant", _constant_elliptic_from_c_invariants(ctx, kappa4, ctx.zero)
        )
    rho = c6 / c4
    if not _is_nth_power_class(rho, 2):
        return Constancy("nonconstant")
    s = _nth_root_monic_part(rho, 2)
    kappa4 = (c4 / s**4).constant_value() if (c4 / s**4).is_constant() else None
    kappa6 = (c6 / s**6).constant_value() if (c6 / s**6).is_constant() else None
    if kappa4 is None or kappa6 is None:
        return Constancy("nonconstant")
    return Constancy(
        "constant", _constant_elliptic_from_c_invariants(ctx, kappa4, kappa6)
    )


class CurveMeta:
    """Structural summary of one model."""

    __slots__ = ("j", "is_isotrivial", "j_is_pth_power", "constancy", "legendre_parameter")

    def __init__(self, model, legendre_parameter=None):
        self.j = model.j_invariant()
        self.is_isotrivial = is_isotrivial(model)
        self.j_is_pth_power = j_is_pth_power(model)
        self.constancy = detect_constancy(model)
        self.legendre_parameter = legendre_parameter
        if self.constancy.is_constant() and not self.is_isotrivial:
            raise InputError("constant curve must be isotrivial")  # sanity

    def to_json(self):
        return {
            "j": self.j.render(),
            "isotrivial": self.is_isotrivial,
            "j_pth_power": self.j_is_pth_power,
            "constancy": self.constancy.kind,
            "legendre": None
            if self.legendre_parameter is None
            else self.legendre_parameter.render(),
        }
