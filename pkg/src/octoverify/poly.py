"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are packed into a single integer key, 5 bits of exponent per
variable, so multiplying monomials is one integer addition and term dicts hash
fast.  That keeps the degree-6 identity |grad F|^2 - 16|x|^6 in 32 variables
(a couple of million term products) well inside the exact-arithmetic budget.

The supported exponent range is 0..30 per variable; ``mul`` guards the packing
against overflow and raises rather than silently corrupting keys.

Identities are always verified as "difference is the zero polynomial"; there
is no division anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .report import Report
from .scalars import DeterministicRng, ScalarMode, EXACT, random_rational

BITS = 5
_EXP_MASK = (1 << BITS) - 1
_EXP_LIMIT = (1 << BITS) - 1  # keep one headroom unit so sums stay in range


def _pack(exponents: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exponents):
        if e:
            key |= e << (BITS * i)
    return key


def _unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (BITS * i)) & _EXP_MASK for i in range(nvars))


class MultiPoly:
    """Immutable-by-convention sparse polynomial over Fraction coefficients."""

    __slots__ = ("nvars", "terms", "maxexp")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms: dict[int, Fraction] = {}
        maxexp = 0
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = c
        for k in self.terms:
            kk = k
            while kk:
                e = kk & _EXP_MASK
                if e > maxexp:
                    maxexp = e
                kk >>= BITS
        self.maxexp = maxexp

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(nvars, {0: c} if c else {})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        return MultiPoly(nvars, {1 << (BITS * i): Fraction(1)})

    @staticmethod
    def from_exponent_dict(nvars: int, d: dict) -> "MultiPoly":
        return MultiPoly(nvars, {_pack(k): Fraction(v) for k, v in d.items()})

    def exponent_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {_unpack(k, self.nvars): c for k, c in self.terms.items()}

    # -- ring operations ----------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} != {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            s = c if v is None else v + c
            if s:
                t[k] = s
            elif v is not None:
                del t[k]
        return MultiPoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly(self.nvars)
            return MultiPoly(self.nvars, {k: c * other for k, c in self.terms.items()})
        self._check(other)
        if self.maxexp + other.maxexp > _EXP_LIMIT:
            raise OverflowError("monomial exponent would exceed packing limit")
        out: dict[int, Fraction] = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                v = get(k)
                s = c1 * c2 if v is None else v + c1 * c2
                if s:
                    out[k] = s
                elif v is not None:
                    del out[k]
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus -----------------------------------------------------------
    def gradient(self) -> list["MultiPoly"]:
        gs: list[dict] = [dict() for _ in range(self.nvars)]
        for k, c in self.terms.items():
            kk = k
            i = 0
            while kk:
                e = kk & _EXP_MASK
                if e:
                    gs[i][k - (1 << (BITS * i))] = c * e
                kk >>= BITS
                i += 1
        return [MultiPoly(self.nvars, g) for g in gs]

    def derivative(self, i: int) -> "MultiPoly":
        shift = BITS * i
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _EXP_MASK
            if e:
                out[k - (1 << shift)] = c * e
        return MultiPoly(self.nvars, out)

    def laplacian(self) -> "MultiPoly":
        out: dict[int, Fraction] = {}
        for k, c in self.terms.items():
            kk = k
            i = 0
            while kk:
                e = kk & _EXP_MASK
                if e >= 2:
                    k2 = k - (2 << (BITS * i))
                    v = out.get(k2)
                    s = c * (e * (e - 1)) if v is None else v + c * e * (e - 1)
                    if s:
                        out[k2] = s
                    elif v is not None:
                        del out[k2]
                kk >>= BITS
                i += 1
        return MultiPoly(self.nvars, out)

    def eval(self, point: list) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point length does not match nvars")
        total = None
        for k, c in self.terms.items():
            term = c
            kk = k
            i = 0
            while kk:
                e = kk & _EXP_MASK
                if e:
                    term = term * point[i] ** e
                kk >>= BITS
                i += 1
            total = term if total is None else total + term
        return total if total is not None else Fraction(0)

    # -- structure ----------------------------------------------------------
    def total_degree(self) -> int:
        deg = 0
        for k in self.terms:
            d = 0
            kk = k
            while kk:
                d += kk & _EXP_MASK
                kk >>= BITS
            deg = max(deg, d)
        return deg

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = set()
        for k in self.terms:
            d = 0
            kk = k
            while kk:
                d += kk & _EXP_MASK
                kk >>= BITS
            degs.add(d)
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs.pop() == degree

    def substitute_linear(self, forms: list["MultiPoly"]) -> "MultiPoly":
        """Compose with x_i -> forms[i]; forms share a target variable space."""
        if len(forms) != self.nvars:
            raise ValueError("need one substitution form per variable")
        tv = forms[0].nvars
        out = MultiPoly(tv)
        for k, c in self.terms.items():
            term = MultiPoly.const(tv, c)
            kk = k
            i = 0
            while kk:
                e = kk & _EXP_MASK
                for _ in range(e):
                    term = term * forms[i]
                kk >>= BITS
                i += 1
            out = out + term
        return out

    # -- serialization ------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Graded-lexicographic order (total degree, then exponent tuple)."""
        items = [(_unpack(k, self.nvars), c) for k, c in self.terms.items()]
        items.sort(key=lambda kc: (sum(kc[0]), kc[0]))
        return items

    def dump(self) -> str:
        """One term per line: 'num/den e_0 e_1 ... e_{n-1}' in graded-lex order."""
        lines = []
        for exps, c in self.sorted_terms():
            lines.append(f"{c.numerator}/{c.denominator} " + " ".join(map(str, exps)))
        return "\n".join(lines)

    @staticmethod
    def parse(text: str, nvars: int) -> "MultiPoly":
        terms = {}
        for line in text.strip().splitlines():
            if not line.strip():
                continue
            head, *exps = line.split()
            num, den = head.split("/")
            key = _pack(int(e) for e in exps)
            terms[key] = Fraction(int(num), int(den))
        return MultiPoly(nvars, terms)

    def __repr__(self):
        return f"MultiPoly(nvars={self.nvars}, terms={len(self.terms)})"


def norm_sq_poly(nvars: int) -> MultiPoly:
    return MultiPoly(nvars, {2 << (BITS * i): Fraction(1) for i in range(nvars)})


def poly_equal_random(
    p: MultiPoly, q: MultiPoly, trials: int, rng: DeterministicRng, bound: int = 10
) -> bool:
    """Probabilistic identity test: exact evaluation at random rational points."""
    if p.nvars != q.nvars:
        raise ValueError("nvars mismatch")
    if p.terms == q.terms:
        return True
    for _ in range(trials):
        pt = [random_rational(rng, bound) for _ in range(p.nvars)]
        if p.eval(pt) != q.eval(pt):
            return False
    return True


@dataclass(frozen=True)
class Rt2Poly:
    """Polynomial with Q(sqrt 2) coefficients, kept as rational + sqrt2-rational parts.

    value = a + sqrt(2) * b.  Sqrt-2 factors from mirror-point frames live here
    so the exact pipeline never touches irrational floats.
    """

    a: MultiPoly
    b: MultiPoly

    @staticmethod
    def zero(nvars: int) -> "Rt2Poly":
        return Rt2Poly(MultiPoly(nvars), MultiPoly(nvars))

    @staticmethod
    def rational(p: MultiPoly) -> "Rt2Poly":
        return Rt2Poly(p, MultiPoly(p.nvars))

    @staticmethod
    def sqrt2_times(p: MultiPoly) -> "Rt2Poly":
        return Rt2Poly(MultiPoly(p.nvars), p)

    def __add__(self, other: "Rt2Poly") -> "Rt2Poly":
        return Rt2Poly(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Rt2Poly") -> "Rt2Poly":
        return Rt2Poly(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Rt2Poly":
        return Rt2Poly(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, Rt2Poly):
            return Rt2Poly(self.a * other.a + 2 * (self.b * other.b), self.a * other.b + self.b * other.a)
        return Rt2Poly(self.a * other, self.b * other)

    __rmul__ = __mul__

    def times_sqrt2(self) -> "Rt2Poly":
        return Rt2Poly(2 * self.b, self.a)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self) -> bool:
        return self.b.is_zero()

    def is_pure_sqrt2(self) -> bool:
        return self.a.is_zero()

    def __eq__(self, other):
        return isinstance(other, Rt2Poly) and self.a == other.a and self.b == other.b


# ---------------------------------------------------------------------------
# integer fast path used by the Muenzner verifier
# ---------------------------------------------------------------------------

def _int_cleared(p: MultiPoly) -> tuple[int, dict[int, int]]:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return den, {k: int(c * den) for k, c in p.terms.items()}


def _int_gradient(terms: dict[int, int], nvars: int) -> list[dict[int, int]]:
    gs: list[dict[int, int]] = [dict() for _ in range(nvars)]
    for k, c in terms.items():
        kk = k
        i = 0
        while kk:
            e = kk & _EXP_MASK
            if e:
                gs[i][k - (1 << (BITS * i))] = c * e
            kk >>= BITS
            i += 1
    return gs


def _int_square_into(acc: dict[int, int], p: dict[int, int], scale: int = 1) -> None:
    items = list(p.items())
    m = len(items)
    for i in range(m):
        k1, c1 = items[i]
        kk = k1 + k1
        w = scale * c1 * c1
        v = acc.get(kk)
        acc[kk] = w if v is None else v + w
        c1d = 2 * scale * c1
        for j in range(i + 1, m):
            k2, c2 = items[j]
            k = k1 + k2
            w = c1d * c2
            v = acc.get(k)
            acc[k] = w if v is None else v + w


def _int_norm_power(nvars: int, power: int) -> dict[int, int]:
    base = {2 << (BITS * i): 1 for i in range(nvars)}
    out = {0: 1}
    for _ in range(power):
        nxt: dict[int, int] = {}
        for k1, c1 in out.items():
            for k2, c2 in base.items():
                k = k1 + k2
                nxt[k] = nxt.get(k, 0) + c1 * c2
        out = nxt
    return out


def munzner_verify(
    f: MultiPoly,
    g: int,
    m1: int,
    m2: int,
    mode: ScalarMode = EXACT,
    rng: DeterministicRng | None = None,
    trials: int = 20,
    term_cap: int = 5_000_000,
    randomized: bool = False,
) -> Report:
    """Check the two Cartan-Muenzner PDEs for F or -F on R^nvars:

        |grad F|^2 = g^2 |x|^(2g-2)
        lap F      = (m2 - m1) g^2 |x|^(g-2) / 2

    The gradient identity is sign-invariant; the Laplacian identity fixes the
    sign, which the report records (sign +1 means F itself satisfies it with
    the multiplicities as given, -1 means -F does).
    """
    rep = Report("munzner")
    n = f.nvars
    if not f.is_homogeneous(g):
        raise ValueError(f"F must be homogeneous of degree {g}")
    if (g < 2 or g % 2 != 0) and m1 != m2:
        raise ValueError("degree g with g-2 odd or negative needs m1 == m2")

    lap_half = Fraction((m2 - m1) * g * g, 2)

    if randomized or not mode.is_exact:
        rng = rng or DeterministicRng(0)
        ok_grad = True
        ok_lap_pos = True
        ok_lap_neg = True
        grads = f.gradient()
        lap = f.laplacian()
        for _ in range(trials):
            pt = [random_rational(rng, 7) for _ in range(n)]
            r2 = sum(x * x for x in pt)
            gv = sum(gp.eval(pt) ** 2 for gp in grads)
            if gv != g * g * r2 ** (g - 1):
                ok_grad = False
            lv = lap.eval(pt)
            want = lap_half * r2 ** ((g - 2) // 2) if g >= 2 else Fraction(0)
            if lv != want:
                ok_lap_pos = False
            if -lv != want:
                ok_lap_neg = False
        rep.add("gradient_identity_randomized", ok_grad, detail={"trials": trials})
        sign = 1 if ok_lap_pos else (-1 if ok_lap_neg else 0)
        rep.add("laplacian_identity_randomized", ok_lap_pos or ok_lap_neg, detail={"sign": sign})
        return rep

    den, fi = _int_cleared(f)
    acc: dict[int, int] = {}
    for gp in _int_gradient(fi, n):
        _int_square_into(acc, gp)
        if len(acc) > term_cap:
            rep.note("term cap exceeded; falling back to randomized verification")
            return munzner_verify(f, g, m1, m2, mode, rng, trials, term_cap, randomized=True)
    target = _int_norm_power(n, g - 1)
    gg = g * g * den * den
    for k, c in target.items():
        v = acc.get(k, 0) - gg * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    grad_ok = all(v == 0 for v in acc.values())
    rep.add("gradient_identity", grad_ok, detail={"residual_terms": sum(1 for v in acc.values() if v)})

    lap = {}
    for k, c in fi.items():
        kk = k
        i = 0
        while kk:
            e = kk & _EXP_MASK
            if e >= 2:
                k2 = k - (2 << (BITS * i))
                lap[k2] = lap.get(k2, 0) + c * e * (e - 1)
            kk >>= BITS
            i += 1
    lap = {k: v for k, v in lap.items() if v}
    if g == 1 or lap_half == 0:
        want: dict[int, int] = {}
        scale = 1
    else:
        want = _int_norm_power(n, (g - 2) // 2)
        # lap(F*den) == lap_half * den * |x|^{g-2};  clear lap_half denominator
        scale = den
    wnum = lap_half * scale
    pos = all(lap.get(k, 0) == wnum * c for k, c in want.items()) and all(
        k in want or v == 0 for k, v in lap.items()
    )
    neg = all(lap.get(k, 0) == -wnum * c for k, c in want.items()) and all(
        k in want or v == 0 for k, v in lap.items()
    )
    if wnum == 0:
        pos = neg = all(v == 0 for v in lap.values())
    sign = 1 if pos else (-1 if neg else 0)
    rep.add("laplacian_identity", pos or neg, detail={"sign": sign})
    return rep
