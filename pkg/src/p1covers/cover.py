"""Degree-d rational maps P^1 -> P^1 over a finite field, as coprime
pairs f = g/h, together with their discriminants, differential lengths,
Moebius actions and equivalence testing.

Conventions. A cover stores a marked basis (g, h) of a 2-plane inside the
polynomials of degree <= d; the plane itself (reduced row echelon form of
the 2 x (d+1) coefficient matrix, columns by descending degree) is derived
and is the invariant of equivalence. The point at infinity is a
first-class symbol INF, never a coordinate pair: the discriminant
disc(f) = monic(h g' - g h') sees only the finite part of the branch
divisor and l_inf is recovered from total mass 2d-2.

Chart normalization puts a cover into the coordinates used by the
deformation solver: g monic of degree d with no x^(d-1) term, h monic of
degree d-1, the map unramified at infinity with infinity fixed. The
candidate for the point moved to infinity is chosen deterministically:
infinity itself when it is unramified, else the least unramified element
in the field order, extending the field only when no rational choice
exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, SplitBoundExceeded
from .field import FieldElement, FieldSpec, make_field
from .poly import (Poly, raw_deriv, raw_divrem, raw_embed, raw_eval, raw_gcd,
                   raw_mobius_substitute, raw_monic, raw_mul, raw_rref,
                   raw_scale, raw_sqf_list, raw_sub, roots_with_multiplicity)


class _Infinity:
    """The point at infinity on P^1; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"


INF = _Infinity()


@dataclass(frozen=True)
class Mobius:
    """Invertible fractional linear transformation x -> (ax+b)/(cx+d)."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        spec = self.a.spec
        for v in (self.b, self.c, self.d):
            if v.spec != spec:
                raise InputError("Moebius entries from different fields")
        if not self.det():
            raise InputError("singular Moebius transformation (ad - bc = 0)")

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    @classmethod
    def identity(cls, spec: FieldSpec) -> "Mobius":
        one, zero = spec.one(), spec.zero()
        return cls(one, zero, zero, one)

    @classmethod
    def from_codes(cls, spec: FieldSpec, a, b, c, d) -> "Mobius":
        return cls(FieldElement(spec, a), FieldElement(spec, b),
                   FieldElement(spec, c), FieldElement(spec, d))

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other (matrix product self * other)."""
        return Mobius(self.a * other.a + self.b * other.c,
                      self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c,
                      self.c * other.b + self.d * other.d)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def apply(self, point):
        """Image of a point of P^1 (FieldElement or INF)."""
        if point is INF:
            if not self.c:
                return INF
            return self.a / self.c
        if point.spec != self.spec:
            raise InputError("point and Moebius transformation over different fields")
        den = self.c * point + self.d
        if not den:
            return INF
        return (self.a * point + self.b) / den

    def is_identity(self) -> bool:
        return (self.b.code == 0 and self.c.code == 0
                and self.a.code == self.d.code and self.a.code != 0)

    def embed(self, target: FieldSpec) -> "Mobius":
        from .field import embed as embed_elem
        return Mobius(embed_elem(self.a, target), embed_elem(self.b, target),
                      embed_elem(self.c, target), embed_elem(self.d, target))

    def codes(self):
        return (self.a.code, self.b.code, self.c.code, self.d.code)

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c), "d": str(self.d)}

    def to_str(self, var: str = "y") -> str:
        num = _linear_str(self.a, self.b, var)
        den = _linear_str(self.c, self.d, var)
        if den == "1":
            return f"{var} -> {num}"
        return f"{var} -> ({num}) / ({den})"

    def __str__(self):
        return self.to_str()


def _linear_str(a: FieldElement, b: FieldElement, var: str) -> str:
    terms = []
    if a:
        terms.append(var if str(a) == "1" else f"{a}*{var}")
    if b or not terms:
        terms.append(str(b))
    return " + ".join(terms)


class Divisor:
    """Finite formal sum of points of P^1 with positive multiplicities.

    All finite points live in one field; INF is the symbol for infinity.
    """

    __slots__ = ("spec", "_points")

    def __init__(self, points, spec: FieldSpec | None = None):
        items = points.items() if isinstance(points, dict) else points
        table = {}
        for point, mult in items:
            if not isinstance(mult, int) or mult <= 0:
                raise InputError(f"divisor multiplicity {mult!r} must be a positive integer")
            if point is INF:
                key = INF
            elif isinstance(point, FieldElement):
                if spec is None:
                    spec = point.spec
                elif point.spec != spec:
                    raise InputError("divisor points from different fields")
                key = point.code
            else:
                raise InputError(f"bad divisor point {point!r}")
            if key in table:
                raise InputError("repeated point in divisor")
            table[key] = mult
        self.spec = spec
        self._points = table

    def mass(self) -> int:
        return sum(self._points.values())

    def items(self):
        """(point, multiplicity) pairs, finite points ascending, INF last."""
        out = [(FieldElement(self.spec, c), m)
               for c, m in sorted(kv for kv in self._points.items() if kv[0] is not INF)]
        if INF in self._points:
            out.append((INF, self._points[INF]))
        return out

    def multiplicity(self, point) -> int:
        if point is INF:
            return self._points.get(INF, 0)
        if self.spec is None or point.spec != self.spec:
            return 0
        return self._points.get(point.code, 0)

    def multiset(self):
        return tuple(sorted(self._points.values()))

    def support(self):
        return [pt for pt, _ in self.items()]

    def embed(self, target: FieldSpec) -> "Divisor":
        pairs = []
        for pt, m in self.items():
            if pt is INF:
                pairs.append((INF, m))
            else:
                pairs.append((FieldElement(target, target.embed_code(pt.code, pt.spec)), m))
        return Divisor(pairs, spec=target)

    def transport(self, m: Mobius) -> "Divisor":
        """Move every point by the transformation; multiplicities ride along."""
        spec = m.spec
        pairs = []
        for pt, mult in self.items():
            if pt is not INF and pt.spec != spec:
                raise InputError("transport needs the divisor and Moebius over one field")
            pairs.append((m.apply(pt), mult))
        return Divisor(pairs, spec=spec)

    def to_json(self):
        return [{"point": str(pt), "mult": m} for pt, m in self.items()]

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        if self._points.keys() != other._points.keys():
            return False
        if any(self._points[k] != other._points[k] for k in self._points):
            return False
        finite = [k for k in self._points if k is not INF]
        return not finite or self.spec == other.spec

    def __hash__(self):
        return hash((self.spec, tuple(sorted(
            ((1, 0, v) if k is INF else (0, k, v)) for k, v in self._points.items()))))

    def __str__(self):
        return " + ".join(f"{m}*({pt})" if m > 1 else f"({pt})"
                          for pt, m in self.items()) or "0"

    def __repr__(self):
        return f"Divisor({self})"


class Cover:
    """A separable, base-point-free pair f = g/h of degree d."""

    __slots__ = ("g", "h", "d", "_disc_raw")

    def __init__(self, g: Poly, h: Poly):
        if not isinstance(g, Poly) or not isinstance(h, Poly):
            raise InputError("cover numerator and denominator must be polynomials")
        if g.spec != h.spec:
            raise InputError("cover numerator and denominator over different fields")
        if g.is_zero() and h.is_zero():
            raise InputError("zero cover")
        d = max(g.degree(), h.degree())
        if d < 1:
            raise InputError("a cover must have degree at least 1")
        S = g.spec
        if len(raw_gcd(S, list(g.c), list(h.c))) > 1:
            raise InputError("g and h share a common factor")
        disc = raw_sub(S, raw_mul(S, list(h.c), raw_deriv(S, list(g.c))),
                       raw_mul(S, list(g.c), raw_deriv(S, list(h.c))))
        if not disc:
            raise InputError("inseparable cover: h*g' - g*h' vanishes identically")
        self.g = g
        self.h = h
        self.d = d
        self._disc_raw = tuple(disc)

    @property
    def spec(self) -> FieldSpec:
        return self.g.spec

    def pair(self):
        return self.g, self.h

    # -- discriminant and lengths ---------------------------------------------

    def discriminant(self) -> Poly:
        """The monic scalar multiple of h g' - g h'; degree <= 2d-2."""
        return Poly._raw(self.spec, raw_monic(self.spec, list(self._disc_raw)))

    def differential_lengths(self, max_ext: int = 4) -> Divisor:
        """Branch divisor: multiplicities of disc roots plus the mass
        (2d-2) - deg disc at infinity."""
        disc = self.discriminant()
        l_inf = (2 * self.d - 2) - disc.degree()
        pairs = []
        if disc.degree() > 0:
            roots, residual = roots_with_multiplicity(disc, max_ext)
            if residual.degree() > 0:
                raise SplitBoundExceeded(
                    f"discriminant does not split within extension degree {max_ext}",
                    residual=residual)
            pairs.extend(roots)
        if l_inf > 0:
            pairs.append((INF, l_inf))
        return Divisor(pairs)

    def length_multiset(self):
        """Sorted multiset of all differential lengths (infinity included),
        read off the squarefree structure of the discriminant; exact and
        extension-free, unlike differential_lengths."""
        disc = self.discriminant()
        out = []
        for fac, mult in raw_sqf_list(self.spec, list(disc.c)):
            out.extend([mult] * (len(fac) - 1))
        l_inf = (2 * self.d - 2) - disc.degree()
        if l_inf > 0:
            out.append(l_inf)
        return tuple(sorted(out))

    def ram_index(self, point):
        """(e_P, wild flag): vanishing order at P of g - f(P) h (or of h
        when f(P) = inf), with P = inf handled by moving it to 0."""
        if point is INF:
            flipped = self.precompose(Mobius.from_codes(self.spec, 0, 1, 1, 0))
            return flipped.ram_index(self.spec.zero())
        if not isinstance(point, FieldElement):
            raise InputError(f"bad point {point!r}")
        cov = self if point.spec == self.spec else self.embed(point.spec)
        h_val = cov.h.evaluate(point)
        if h_val:
            v = cov.g.evaluate(point) / h_val
            w = cov.g - cov.h * v
        else:
            w = cov.h
        S, e = cov.spec, 0
        coeffs = list(w.c)
        lin = [S.neg(point.code), 1]
        while True:
            q, r = raw_divrem(S, coeffs, lin)
            if r:
                break
            coeffs = q
            e += 1
        return e, (e % self.spec.p == 0)

    # -- group actions ---------------------------------------------------------

    def postcompose(self, m: Mobius) -> "Cover":
        """Target change: (g, h) -> (a g + b h, c g + d h)."""
        if m.spec != self.spec:
            raise InputError("Moebius transformation over a different field")
        return Cover(self.g * m.a + self.h * m.b, self.g * m.c + self.h * m.d)

    def precompose(self, m: Mobius) -> "Cover":
        """Source change: substitute x -> (ax+b)/(cx+d), cleared by (cx+d)^d."""
        if m.spec != self.spec:
            raise InputError("Moebius transformation over a different field")
        S, d = self.spec, self.d
        a, b, c, dd = m.codes()
        G = raw_mobius_substitute(S, list(self.g.c), d, a, b, c, dd)
        H = raw_mobius_substitute(S, list(self.h.c), d, a, b, c, dd)
        return Cover(Poly._raw(S, G), Poly._raw(S, H))

    def embed(self, target: FieldSpec) -> "Cover":
        return Cover(self.g.embed(target), self.h.embed(target))

    # -- the plane -------------------------------------------------------------

    def plane(self):
        """Canonical RREF of the 2 x (d+1) coefficient matrix (columns by
        descending degree); equal planes = equivalent covers."""
        S, d = self.spec, self.d
        rows = [[(self.g.c[d - j] if d - j < len(self.g.c) else 0) for j in range(d + 1)],
                [(self.h.c[d - j] if d - j < len(self.h.c) else 0) for j in range(d + 1)]]
        rref, _ = raw_rref(S, rows, d + 1)
        return tuple(tuple(r) for r in rref)

    def equivalent(self, other: "Cover"):
        """A Moebius witness m with self.postcompose(m) == other (as a
        pair) when the two planes coincide, else None."""
        if not isinstance(other, Cover):
            raise InputError("can only compare covers")
        if other.spec != self.spec:
            raise InputError("covers over different fields")
        if other.d != self.d:
            raise InputError("covers of different degrees")
        p1 = self.plane()
        if p1 != other.plane():
            return None
        S, d = self.spec, self.d
        piv_degrees = []
        for row in p1:
            for j, v in enumerate(row):
                if v:
                    piv_degrees.append(d - j)
                    break
        c1, c2 = piv_degrees
        m11, m12 = self.g[c1].code, self.g[c2].code
        m21, m22 = self.h[c1].code, self.h[c2].code
        det = S.sub(S.mul(m11, m22), S.mul(m12, m21))
        det_inv = S.inv(det)

        def solve(t1, t2):
            x = S.mul(det_inv, S.sub(S.mul(t1, m22), S.mul(t2, m21)))
            y = S.mul(det_inv, S.sub(S.mul(t2, m11), S.mul(t1, m12)))
            return x, y

        a, b = solve(other.g[c1].code, other.g[c2].code)
        c, dd = solve(other.h[c1].code, other.h[c2].code)
        witness = Mobius.from_codes(S, a, b, c, dd)
        check = self.postcompose(witness)
        if check.g != other.g or check.h != other.h:
            raise ArithmeticError("equivalence witness failed verification")
        return witness

    # -- chart normalization ----------------------------------------------------

    def normalize(self, max_ext: int = 4) -> "NormalizedCover":
        spec_out, gN, hN, src, tgt = _raw_normalize(
            self.spec, list(self.g.c), list(self.h.c), self.d,
            list(self._disc_raw), max_ext)
        original = self if spec_out is self.spec else self.embed(spec_out)
        source = (Mobius.identity(spec_out) if src is None
                  else Mobius.from_codes(spec_out, *src))
        target = Mobius.from_codes(spec_out, *tgt)
        normalized = Cover(Poly._raw(spec_out, gN), Poly._raw(spec_out, hN))
        return NormalizedCover(normalized, source, target, original)

    # -- io ---------------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, spec: FieldSpec) -> "Cover":
        depth = 0
        cut = None
        for i, ch in enumerate(text):
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            elif ch == "/" and depth == 0:
                if cut is not None:
                    raise InputError(f"more than one '/' in cover {text!r}")
                cut = i
        if cut is None:
            g_text, h_text = text, "1"
        else:
            g_text, h_text = text[:cut], text[cut + 1:]
        return cls(Poly.parse(g_text, spec), Poly.parse(h_text, spec))

    def __str__(self):
        if self.h.degree() == 0 and self.h.c == (1,):
            return str(self.g)
        return f"{self.g} / {self.h}"

    def __repr__(self):
        return f"Cover({self} over {self.spec!r})"

    def __eq__(self, other):
        if not isinstance(other, Cover):
            return NotImplemented
        return self.g == other.g and self.h == other.h

    def __hash__(self):
        return hash((self.g, self.h))


def make_cover(g: Poly, h: Poly) -> Cover:
    """Validated construction of a cover from a coprime separable pair."""
    return Cover(g, h)


def equivalent(c1: Cover, c2: Cover):
    """Moebius witness of post-composition equivalence, or None."""
    return c1.equivalent(c2)


@dataclass(frozen=True)
class NormalizedCover:
    """A cover in chart form plus the coordinate changes that got it there.

    Chart form: g monic of degree d with zero x^(d-1) coefficient, h monic
    of degree d-1, infinity unramified and fixed. `original` is the input
    cover (embedded if normalization extended the field), and
    original.precompose(source_change).postcompose(target_change)
    reproduces the normalized pair exactly.
    """

    cover: Cover
    source_change: Mobius
    target_change: Mobius
    original: Cover

    def __post_init__(self):
        c = self.cover
        d = c.d
        g, h = c.g, c.h
        if g.degree() != d or not g.leading_coefficient().code == 1:
            raise InputError("normalized numerator must be monic of degree d")
        if h.degree() != d - 1 or not h.leading_coefficient().code == 1:
            raise InputError("normalized denominator must be monic of degree d-1")
        if d >= 1 and g[d - 1].code != 0:
            raise InputError("normalized numerator must have no x^(d-1) term")
        disc_deg = c.discriminant().degree()
        if disc_deg != 2 * d - 2:
            raise InputError("normalized cover must be unramified at infinity")
        redone = self.original.precompose(self.source_change).postcompose(self.target_change)
        if redone.g != g or redone.h != h:
            raise InputError("recorded coordinate changes do not reproduce the chart form")

    @property
    def spec(self) -> FieldSpec:
        return self.cover.spec

    def to_json(self):
        return {"normalized": str(self.cover),
                "source_change": self.source_change.to_json(),
                "target_change": self.target_change.to_json()}


def _m2_mul(S, A, B):
    a = S.add(S.mul(A[0], B[0]), S.mul(A[1], B[2]))
    b = S.add(S.mul(A[0], B[1]), S.mul(A[1], B[3]))
    c = S.add(S.mul(A[2], B[0]), S.mul(A[3], B[2]))
    d = S.add(S.mul(A[2], B[1]), S.mul(A[3], B[3]))
    return (a, b, c, d)


def _raw_normalize(S, g, h, d, disc_raw, max_ext):
    """Chart-normalize raw data; returns (spec, gN, hN, source, target).

    source is (a, b, c, d) codes or None for identity; target is the
    accumulated 2x2 post-composition matrix as codes.
    """
    l_inf = (2 * d - 2) - (len(disc_raw) - 1)
    if l_inf == 0:
        src = None
    else:
        Q = None
        for code in range(S.order):
            if raw_eval(S, disc_raw, code) != 0:
                Q = code
                break
        if Q is None:
            found = False
            for r in range(2, max_ext + 1):
                T = make_field(S.p, S.m * r)
                g = raw_embed(S, T, g)
                h = raw_embed(S, T, h)
                disc_raw = raw_embed(S, T, disc_raw)
                S = T
                for code in range(S.order):
                    if raw_eval(S, disc_raw, code) != 0:
                        Q = code
                        found = True
                        break
                if found:
                    break
            if Q is None:
                raise SplitBoundExceeded(
                    f"no unramified point within extension degree {max_ext}")
        src = (Q, 1, 1, 0)  # x -> (Qx + 1)/x sends infinity to Q
        g, h = (raw_mobius_substitute(S, g, d, Q, 1, 1, 0),
                raw_mobius_substitute(S, h, d, Q, 1, 1, 0))
    tgt = (1, 0, 0, 1)
    dg, dh = len(g) - 1, len(h) - 1
    if dg == d and dh < d:
        pass
    elif dh == d and dg < d:
        g, h = h, g
        tgt = _m2_mul(S, (0, 1, 1, 0), tgt)
    else:
        v = S.mul(g[-1], S.inv(h[-1]))
        g, h = h, raw_sub(S, g, raw_scale(S, h, v))
        tgt = _m2_mul(S, (0, 1, 1, S.neg(v)), tgt)
    if len(g) - 1 != d or len(h) - 1 != d - 1:
        raise ArithmeticError("chart normalization produced wrong degrees")
    lg, lh = S.inv(g[-1]), S.inv(h[-1])
    if lg != 1 or lh != 1:
        g = raw_scale(S, g, lg)
        h = raw_scale(S, h, lh)
        tgt = _m2_mul(S, (lg, 0, 0, lh), tgt)
    shear = g[d - 1] if len(g) > d - 1 else 0
    if shear:
        g = raw_sub(S, g, raw_scale(S, h, shear))
        tgt = _m2_mul(S, (1, S.neg(shear), 0, 1), tgt)
    return S, g, h, src, tgt
