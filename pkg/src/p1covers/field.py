"""Exact arithmetic in prime fields F_p and extension fields F_{p^m}.

An element of F_{p^m} is encoded as an integer code in [0, p^m): the
base-p digits of the code, constant digit first, are the coefficients of
the residue modulo the defining polynomial. That encoding *is* the fixed
element order used everywhere (constant term fastest). Fields of order
up to `TABLE_LIMIT` get flat multiplication/addition lookup tables so
that downstream polynomial loops run at table speed; larger extensions
fall back to digit-vector arithmetic with precomputed modular reduction
rows.

Field construction is deterministic: `make_field(p, m)` picks the
lexicographically least monic irreducible modulus of degree m over F_p,
comparing coefficient sequences low degree first. Embeddings between
fields send the source generator to the least root of the source modulus
in the target, so they are deterministic too.
"""

from __future__ import annotations

import functools
from itertools import product

from .errors import InputError

PRIME_LIMIT = 13
MAX_EXT_DEGREE = 12
TABLE_LIMIT = 729
_SCAN_LIMIT = TABLE_LIMIT  # brute-force root scans only in tabled fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomials over F_p as plain int lists (little-endian, trimmed).
# Only what the modulus search and big-field arithmetic need.


def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_rem(p, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = (a[-1] * inv_lb) % p
        if f:
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - f * bj) % p
        a.pop()
        _pp_trim(a)
    return a


def _pp_gcd(p, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pp_rem(p, a, b)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _pp_powmod_x(p, e, mod):
    """x^e mod `mod` over F_p by square and multiply."""
    result = [1]
    base = _pp_rem(p, [0, 1], mod)
    while e:
        if e & 1:
            result = _pp_rem(p, _pp_mul(p, result, base), mod)
        base = _pp_rem(p, _pp_mul(p, base, base), mod)
        e >>= 1
    return result


def _pp_sub(p, a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pp_trim(out)


def _pp_xgcd(p, a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        # long division quotient of r0 by r1
        r = list(r0)
        db, lb = len(r1) - 1, r1[-1]
        inv_lb = pow(lb, -1, p)
        q = [0] * max(len(r) - db, 1)
        while r and len(r) - 1 >= db:
            k = len(r) - 1 - db
            f = (r[-1] * inv_lb) % p
            q[k] = f
            if f:
                for j, bj in enumerate(r1):
                    r[k + j] = (r[k + j] - f * bj) % p
            r.pop()
            _pp_trim(r)
        _pp_trim(q)
        r0, r1 = r1, r
        s0, s1 = s1, _pp_sub(p, s0, _pp_mul(p, q, s1))
        t0, t1 = t1, _pp_sub(p, t0, _pp_mul(p, q, t1))
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = [(c * inv) % p for c in r0]
        s0 = [(c * inv) % p for c in s0]
        t0 = [(c * inv) % p for c in t0]
    return r0, s0, t0


def _irreducible(p, coeffs):
    """Rabin test for a monic polynomial given by its full coefficient list."""
    m = len(coeffs) - 1
    xq = _pp_powmod_x(p, p ** m, coeffs)
    if xq != [0, 1]:
        return False
    for t in _prime_divisors(m):
        g = _pp_gcd(p, _pp_trim(_sub_x(p, _pp_powmod_x(p, p ** (m // t), coeffs))), coeffs)
        if len(g) - 1 != 0:
            return False
    return True


def _sub_x(p, a):
    b = list(a) + [0] * (2 - len(a))
    b[1] = (b[1] - 1) % p
    return b


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _least_irreducible(p, m):
    """Lexicographically least monic irreducible of degree m over F_p."""
    for tail in product(range(p), repeat=m):
        if tail[0] == 0:
            continue  # divisible by x
        coeffs = list(tail) + [1]
        if _irreducible(p, coeffs):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over F_{p}")


# ---------------------------------------------------------------------------
# Generic code-level polynomial helpers, used only by the root finder that
# backs deterministic embeddings into large fields.


def _craw_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _craw_mul(spec, a, b):
    if not a or not b:
        return []
    mul, add = spec.mul, spec.add
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return _craw_trim(out)


def _craw_rem(spec, a, b):
    a = list(a)
    db = len(b) - 1
    inv_lb = 1 if b[-1] == 1 else spec.inv(b[-1])
    mul, sub = spec.mul, spec.sub
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        f = a[-1] if inv_lb == 1 else mul(a[-1], inv_lb)
        if f:
            for j, bj in enumerate(b):
                if bj:
                    a[k + j] = sub(a[k + j], mul(f, bj))
        a.pop()
        _craw_trim(a)
    return a


def _craw_gcd(spec, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _craw_rem(spec, a, b)
    if a:
        inv = spec.inv(a[-1])
        a = [spec.mul(c, inv) for c in a]
    return a


def _craw_powmod(spec, base, e, mod):
    result = [1]
    base = _craw_rem(spec, list(base), mod)
    while e:
        if e & 1:
            result = _craw_rem(spec, _craw_mul(spec, result, base), mod)
        base = _craw_rem(spec, _craw_mul(spec, base, base), mod)
        e >>= 1
    return result


def _split_root(spec, f):
    """One root of f, which must split into distinct linear factors over spec.

    Deterministic: splitting attempts are tried in the fixed element
    order. The caller canonicalizes via Galois conjugates, so which root
    comes out does not matter.
    """
    h = list(f)
    inv = spec.inv(h[-1])
    h = [spec.mul(c, inv) for c in h]
    p, q = spec.p, spec.order
    while len(h) - 1 > 1:
        found = None
        if p != 2:
            e = (q - 1) // 2
            for c in range(q):
                s = _craw_powmod(spec, [c, 1], e, h)
                s = list(s) + [0] * (1 - len(s))
                s[0] = spec.sub(s[0], 1)
                g = _craw_gcd(spec, _craw_trim(s), h)
                if 0 < len(g) - 1 < len(h) - 1:
                    found = g
                    break
        else:
            for b in range(1, q):
                acc = []
                cur = [0, b]
                for _ in range(spec.m):
                    acc = _craw_trim([spec.add(x, y) for x, y in
                                      zip(acc + [0] * len(cur), cur + [0] * len(acc))])
                    cur = _craw_rem(spec, _craw_mul(spec, cur, cur), h)
                g = _craw_gcd(spec, acc, h)
                if 0 < len(g) - 1 < len(h) - 1:
                    found = g
                    break
        if found is None:
            raise RuntimeError("root splitting failed on a polynomial assumed split")
        h = found if len(found) - 1 <= (len(h) - 1) // 2 else _craw_quo_monic(spec, h, found)
    return spec.neg(h[0])


def _craw_quo_monic(spec, a, b):
    """Exact quotient a/b for monic b dividing a."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    mul, sub = spec.mul, spec.sub
    db = len(b) - 1
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        f = a[-1]
        out[k] = f
        if f:
            for j, bj in enumerate(b):
                if bj:
                    a[k + j] = sub(a[k + j], mul(f, bj))
        a.pop()
        _craw_trim(a)
    return out


# ---------------------------------------------------------------------------


class FieldSpec:
    """A concrete finite field F_{p^m}; construct via make_field."""

    __slots__ = ("p", "m", "modulus", "order", "_mul_t", "_add_t", "_sub_t",
                 "_neg_t", "_inv_t", "_red_rows", "_embed_images", "_dec",
                 "_ppow", "_pack", "_pack_bits", "_packed_red", "__weakref__")

    def __init__(self, p: int, m: int, modulus):
        self.p = p
        self.m = m
        self.modulus = modulus  # tuple of m+1 ints over F_p, monic; None iff m == 1
        self.order = p ** m
        self._mul_t = None
        self._add_t = None
        self._sub_t = None
        self._neg_t = None
        self._inv_t = None
        self._red_rows = None
        self._embed_images = {}
        self._dec = None
        self._ppow = [p ** i for i in range(m)]
        self._pack = None
        self._pack_bits = 0
        self._packed_red = None
        if m > 1:
            # rows: coefficient vector of x^(m+k) reduced mod the modulus
            rows = []
            base = [(-c) % p for c in modulus[:-1]]
            rows.append(base)
            for _ in range(m - 2):
                prev = rows[-1]
                nxt = [0] * m
                for i, c in enumerate(prev):
                    if c:
                        if i + 1 < m:
                            nxt[i + 1] = (nxt[i + 1] + c) % p
                        else:
                            for j, r in enumerate(rows[0]):
                                nxt[j] = (nxt[j] + c * r) % p
                rows.append(nxt)
            self._red_rows = rows
        if self.order <= 256:
            self._build_tables()   # larger tables are built on first use

    # -- encoding ----------------------------------------------------------

    def decode(self, code: int):
        dec = self._dec
        if dec is not None:
            return dec[code]
        p, m = self.p, self.m
        digits = []
        for _ in range(m):
            code, r = divmod(code, p)
            digits.append(r)
        return tuple(digits)

    def _build_decode_cache(self):
        # digit-vector and packed-int caches for fields too large for op
        # tables; packing turns digit convolution into one int multiply
        p, m, q = self.p, self.m, self.order
        bits = (2 * m * (p - 1) * (p - 1)).bit_length()
        dec = []
        pack = []
        for code in range(q):
            digits = []
            c = code
            for _ in range(m):
                c, r = divmod(c, p)
                digits.append(r)
            dec.append(tuple(digits))
            packed = 0
            for d in reversed(digits):
                packed = (packed << bits) | d
            pack.append(packed)
        self._dec = dec
        self._pack = pack
        self._pack_bits = bits
        packed_red = []
        for row in self._red_rows:
            packed = 0
            for d in reversed(row):
                packed = (packed << bits) | d
            packed_red.append(packed)
        self._packed_red = packed_red

    def encode(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # -- arithmetic on codes -------------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.order
        add = [0] * (q * q)
        sub = [0] * (q * q)
        mul = [0] * (q * q)
        for a in range(q):
            da = self.decode(a)
            base = a * q
            for b in range(q):
                db = self.decode(b)
                add[base + b] = self.encode([(x + y) % p for x, y in zip(da, db)])
                sub[base + b] = self.encode([(x - y) % p for x, y in zip(da, db)])
                mul[base + b] = self._mul_slow(a, b)
        self._add_t, self._sub_t, self._mul_t = add, sub, mul
        self._neg_t = [sub[b] for b in range(q)]  # 0 - b
        inv = [0] * q
        for a in range(1, q):
            if inv[a]:
                continue
            b = self._inv_slow(a)
            inv[a] = b
            inv[b] = a
        self._inv_t = inv

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return (a * b) % p
        if self._pack is None and self._mul_t is None and self.order <= 1 << 20:
            self._build_decode_cache()
        pack = self._pack
        if pack is not None:
            bits = self._pack_bits
            mask = (1 << bits) - 1
            prod = pack[a] * pack[b]
            for k in range(2 * m - 2, m - 1, -1):
                c = (prod >> (k * bits)) & mask
                c %= p
                if c:
                    prod += c * self._packed_red[k - m]
            code = 0
            for i in range(m - 1, -1, -1):
                code = code * p + ((prod >> (i * bits)) & mask) % p
            return code
        da, db = self.decode(a), self.decode(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        out = prod[:m]
        for k in range(m - 1):
            c = prod[m + k] % p
            if c:
                for j, r in enumerate(self._red_rows[k]):
                    out[j] += c * r
        code = 0
        for d, pw in zip(out, self._ppow):
            code += (d % p) * pw
        return code

    def _inv_slow(self, a: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return pow(a, -1, p)
        da = _pp_trim(list(self.decode(a)))
        g, s, _ = _pp_xgcd(p, da, list(self.modulus))
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible")
        s = s + [0] * (m - len(s))
        return self.encode(s[:m])

    def _maybe_build_tables(self):
        if self._mul_t is None and self.order <= TABLE_LIMIT:
            self._build_tables()
            return True
        return False

    def add(self, a: int, b: int) -> int:
        t = self._add_t
        if t is not None:
            return t[a * self.order + b]
        if self._maybe_build_tables():
            return self._add_t[a * self.order + b]
        p = self.p
        if self.m == 1:
            return (a + b) % p
        return self.encode([(x + y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def sub(self, a: int, b: int) -> int:
        t = self._sub_t
        if t is not None:
            return t[a * self.order + b]
        if self._maybe_build_tables():
            return self._sub_t[a * self.order + b]
        p = self.p
        if self.m == 1:
            return (a - b) % p
        return self.encode([(x - y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a: int) -> int:
        t = self._neg_t
        if t is not None:
            return t[a]
        if self._maybe_build_tables():
            return self._neg_t[a]
        p = self.p
        if self.m == 1:
            return (-a) % p
        return self.encode([(-x) % p for x in self.decode(a)])

    def mul(self, a: int, b: int) -> int:
        t = self._mul_t
        if t is not None:
            return t[a * self.order + b]
        if self._maybe_build_tables():
            return self._mul_t[a * self.order + b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero field element")
        t = self._inv_t
        if t is not None:
            return t[a]
        if self._maybe_build_tables():
            return self._inv_t[a]
        return self._inv_slow(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob_code(self, a: int) -> int:
        return self.pow_code(a, self.p)

    def pth_root_code(self, a: int) -> int:
        # Frobenius is invertible on a finite field: a^(p^(m-1)) is the p-th root
        return self.pow_code(a, self.p ** (self.m - 1))

    # -- embeddings ----------------------------------------------------------

    def embed_image(self, source: "FieldSpec") -> int:
        """Code of the image of source's generator u in this field."""
        key = (source.p, source.m)
        img = self._embed_images.get(key)
        if img is not None:
            return img
        mu = list(source.modulus)  # F_p coefficients double as codes here
        if self.order <= _SCAN_LIMIT:
            root = None
            for cand in range(self.order):
                acc = 0
                for c in reversed(mu):
                    acc = self.add(self.mul(acc, cand), c)
                if acc == 0:
                    root = cand
                    break
            if root is None:
                raise RuntimeError("modulus has no root in the target field")
        else:
            r = _split_root(self, mu)
            conj = []
            for _ in range(source.m):
                conj.append(r)
                r = self.frob_code(r)
            root = min(conj)
        self._embed_images[key] = root
        return root

    def embed_code(self, code: int, source: "FieldSpec") -> int:
        if source is self or (source.p, source.m, source.modulus) == (self.p, self.m, self.modulus):
            return code
        if source.p != self.p:
            raise InputError("cannot embed between fields of different characteristic")
        if self.m % source.m != 0:
            raise InputError(
                f"no embedding of GF({source.p}^{source.m}) into GF({self.p}^{self.m}): "
                "degrees do not divide")
        if source.m == 1:
            return code
        w = self.embed_image(source)
        acc = 0
        for d in reversed(source.decode(code)):
            acc = self.add(self.mul(acc, w), d)
        return acc

    # -- presentation ---------------------------------------------------------

    def element_str(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        digits = self.decode(code)
        if not any(digits[1:]):
            return str(digits[0])
        terms = []
        for k in range(self.m - 1, -1, -1):
            c = digits[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("u" if c == 1 else f"{c}*u")
            else:
                terms.append(f"u^{k}" if c == 1 else f"{c}*u^{k}")
        return "[" + " + ".join(terms) + "]"

    def parse_element(self, text: str) -> "FieldElement":
        s = text.strip().replace(" ", "")
        if not s:
            raise InputError("empty field element")
        if s.startswith("["):
            if self.m == 1:
                raise InputError("bracketed element given for a prime field")
            if not s.endswith("]"):
                raise InputError(f"unbalanced brackets in element {text!r}")
            digits = _parse_u_poly(s[1:-1], self.p, self.m)
            return FieldElement(self, self.encode(digits))
        try:
            v = int(s)
        except ValueError:
            raise InputError(f"cannot parse field element {text!r}") from None
        return FieldElement(self, v % self.p)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec is not self:
                raise InputError("element belongs to another field")
            return value
        if isinstance(value, int):
            if self.m == 1:
                return FieldElement(self, value % self.p)
            if 0 <= value < self.order:
                return FieldElement(self, value)
            raise InputError(f"code {value} out of range for {self!r}")
        if isinstance(value, str):
            return self.parse_element(value)
        raise InputError(f"cannot coerce {value!r} into {self!r}")

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))


def _parse_u_poly(s: str, p: int, m: int):
    digits = [0] * m
    if not s:
        raise InputError("empty bracketed element")
    # cut into signed terms
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    term = ""
    tokens = []
    for ch in s[pos:] + "\0":
        if ch in "+-\0":
            tokens.append((sign, term))
            sign = -1 if ch == "-" else 1
            term = ""
        else:
            term += ch
    for sg, t in tokens:
        if not t:
            raise InputError(f"malformed element term in {s!r}")
        if "u" in t:
            head, _, tail = t.partition("u")
            coeff = 1
            if head:
                if not head.endswith("*") or not head[:-1]:
                    raise InputError(f"malformed element term {t!r}")
                coeff = int(head[:-1])
            k = 1
            if tail:
                if not tail.startswith("^"):
                    raise InputError(f"malformed element term {t!r}")
                k = int(tail[1:])
            if k >= m:
                raise InputError(f"term degree {k} too large for extension degree {m}")
        else:
            coeff = int(t)
            k = 0
        digits[k] = (digits[k] + sg * coeff) % p
    return digits


class FieldElement:
    """Immutable element of a FieldSpec, stored as its integer code."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec is self.spec or other.spec == self.spec:
                return other.code
            raise InputError(f"field mismatch: {self.spec!r} vs {other.spec!r}")
        if isinstance(other, int):
            return other % self.spec.p if self.spec.m == 1 else self.spec.element(other).code
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division by zero field element")
        return FieldElement(self.spec, self.spec.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(c, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_code(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and self.spec == other.spec
        if isinstance(other, int):
            return self == FieldElement(self.spec, other % self.spec.p) if self.spec.m == 1 \
                else self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __lt__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return self.code < c

    def __str__(self):
        return self.spec.element_str(self.code)

    def __repr__(self):
        return f"{self.spec.element_str(self.code)} in {self.spec!r}"

    def digits(self):
        return self.spec.decode(self.code)


@functools.lru_cache(maxsize=None)
def _make_field_cached(p: int, m: int) -> FieldSpec:
    modulus = _least_irreducible(p, m) if m > 1 else None
    return FieldSpec(p, m, modulus)


def make_field(p: int, m: int = 1, prime_limit: int = PRIME_LIMIT) -> FieldSpec:
    """Deterministically construct F_{p^m}.

    The modulus (for m > 1) is the lexicographically least monic
    irreducible of degree m, coefficient sequences compared low degree
    first; two calls with equal (p, m) return the same interned spec.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise InputError(f"characteristic {p!r} is not prime")
    if p > prime_limit:
        raise InputError(f"characteristic {p} exceeds the configured limit {prime_limit}")
    if not isinstance(m, int) or not 1 <= m <= MAX_EXT_DEGREE:
        raise InputError(f"extension degree {m!r} out of bounds 1..{MAX_EXT_DEGREE}")
    return _make_field_cached(p, m)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """add | sub | mul | div on two elements of the same field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InputError(f"unknown field operation {op!r}")


def frobenius(a: FieldElement) -> FieldElement:
    """The p-power map a -> a^p; fixes the prime field pointwise."""
    return FieldElement(a.spec, a.spec.frob_code(a.code))


def embed(a: FieldElement, target: FieldSpec) -> FieldElement:
    """Canonical embedding of a into a target extension field.

    Sends the source generator to the least root of the source modulus
    in the target, so repeated calls agree; requires the source degree
    to divide the target degree.
    """
    return FieldElement(target, target.embed_code(a.code, a.spec))


def elements(spec: FieldSpec):
    """All p^m elements in the fixed order (constant digit fastest)."""
    return [FieldElement(spec, c) for c in range(spec.order)]
