"""Exact linear and polynomial algebra.

Everything here works over the integers, the rationals or the Gaussian
rationals Q(i).  There are no tolerances anywhere: signatures, Smith forms
and determinants are discrete quantities and are computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, "GaussRational"]


class NotHermitian(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True)
class GaussRational:
    """p + q*i with rational p, q."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        return GaussRational(Fraction(x), Fraction(0))

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, o):
        o = GaussRational.of(o)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussRational.of(o)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussRational.of(o) - self

    def __mul__(self, o):
        o = GaussRational.of(o)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussRational.of(o)
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return GaussRational(num.re / n, num.im / n)

    def __rtruediv__(self, o):
        return GaussRational.of(o) / self

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.im == 0 and self.re == o
        if not isinstance(o, GaussRational):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    __repr__ = __str__


I = GaussRational(0, 1)


def unit_circle_point(t) -> GaussRational:
    """omega(t) = ((1 - t^2) + 2t i) / (1 + t^2); the token "inf" gives -1."""
    if isinstance(t, str):
        if t.strip().lower() in ("inf", "infinity"):
            return GaussRational(-1)
        t = Fraction(t)
    t = Fraction(t)
    d = 1 + t * t
    return GaussRational((1 - t * t) / d, 2 * t / d)


# ---------------------------------------------------------------------------
# Laurent polynomials with integer coefficients


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, v in items:
                if v:
                    c[int(e)] = c.get(int(e), 0) + int(v)
        self._c = {e: v for e, v in c.items() if v}

    @staticmethod
    def const(v: int) -> "LaurentPoly":
        return LaurentPoly({0: v})

    @staticmethod
    def monomial(e: int, v: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: v})

    @staticmethod
    def from_list(coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        return LaurentPoly({low + k: v for k, v in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __add__(self, o):
        o = _lp(o)
        c = dict(self._c)
        for e, v in o._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, o):
        return self + (-_lp(o))

    def __rsub__(self, o):
        return _lp(o) - self

    def __mul__(self, o):
        o = _lp(o)
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in o._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = LaurentPoly.const(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        if isinstance(o, int):
            o = LaurentPoly.const(o)
        if not isinstance(o, LaurentPoly):
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """p(t) -> p(t^k)."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def invert(self) -> "LaurentPoly":
        """p(t) -> p(1/t)."""
        return self.substitute_power(-1)

    def evaluate(self, x):
        tot = 0
        for e, v in self._c.items():
            tot += v * (Fraction(x) ** e if e < 0 else x ** e)
        return tot

    def normalized(self) -> "LaurentPoly":
        """Shift to lowest exponent 0 and make the leading low coefficient positive."""
        if not self._c:
            return self
        p = self.shift(-self.min_exp())
        return -p if p[0] < 0 else p

    def to_json(self) -> dict:
        return {str(e): str(v) for e, v in sorted(self._c.items())}

    def to_str(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            if e == 0:
                mono = str(abs(v))
            else:
                pw = var if e == 1 else f"{var}^{e}"
                mono = pw if abs(v) == 1 else f"{abs(v)}*{pw}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self.to_str()})"


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(int(x))


# ---------------------------------------------------------------------------
# Matrices


class _Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(self._coerce(x) for x in r) for r in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    @staticmethod
    def _coerce(x):
        return x

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, o):
        return type(self) is type(o) and self.rows == o.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self):
        return type(self)(zip(*self.rows)) if self.rows else type(self)([])

    @property
    def T(self):
        return self.transpose()

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_list(self):
        return [list(r) for r in self.rows]

    def submatrix(self, keep_rows, keep_cols):
        return type(self)([[self.rows[i][j] for j in keep_cols] for i in keep_rows])

    def __repr__(self):
        return f"{type(self).__name__}({self.to_list()})"


class IntMatrix(_Matrix):
    """Dense matrix of Python ints."""

    @staticmethod
    def _coerce(x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError("non-integral entry")
            return int(x)
        return int(x)

    @staticmethod
    def zeros(n, m=None):
        m = n if m is None else m
        return IntMatrix([[0] * m for _ in range(n)])

    @staticmethod
    def identity(n):
        return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)])

    def __add__(self, o):
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, k: int):
        return IntMatrix([[k * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, o):
        ot = list(zip(*o.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.rows])

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def det(self) -> int:
        return bareiss_det([list(r) for r in self.rows])

    def to_gauss(self) -> "GaussMatrix":
        return GaussMatrix([[GaussRational(x) for x in r] for r in self.rows])


class GaussMatrix(_Matrix):
    """Dense matrix over Q(i)."""

    @staticmethod
    def _coerce(x):
        return GaussRational.of(x)

    def conj_transpose(self) -> "GaussMatrix":
        return GaussMatrix([[x.conj() for x in r] for r in zip(*self.rows)]) if self.rows else GaussMatrix([])

    def is_hermitian(self) -> bool:
        return self.is_square() and self.rows == self.conj_transpose().rows

    def __add__(self, o):
        return GaussMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __sub__(self, o):
        return GaussMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    def __neg__(self):
        return GaussMatrix([[-a for a in r] for r in self.rows])

    def scale(self, k) -> "GaussMatrix":
        k = GaussRational.of(k)
        return GaussMatrix([[k * a for a in r] for r in self.rows])

    def __matmul__(self, o):
        ot = list(zip(*o.rows))
        out = []
        for r in self.rows:
            row = []
            for c in ot:
                acc = GaussRational(0)
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GaussMatrix(out)


def bareiss_det(m: list) -> int:
    """Fraction-free determinant of an integer matrix (list of lists, copied)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Characteristic polynomials and determinants over general commutative rings


def _berkowitz(rows, zero, one):
    """Coefficients (high to low) of det(lambda*E - M), division free."""
    n = len(rows)
    if n == 0:
        return [one]
    # vector-of-polys approach (Berkowitz): iterate over leading principal minors
    coeffs = [one, zero - rows[0][0]]
    for k in range(1, n):
        # M_k = [[A, R],[C, a]] with A the leading k x k block
        a = rows[k][k]
        R = [rows[i][k] for i in range(k)]        # column above
        C = [rows[k][j] for j in range(k)]        # row to the left
        A = [rows[i][:k] for i in range(k)]
        # Toeplitz column: 1, -a, -C R, -C A R, -C A^2 R, ...
        col = [one, zero - a]
        vec = R
        for _ in range(k):
            s = zero
            for cj, vj in zip(C, vec):
                s = s + cj * vj
            col.append(zero - s)
            vec = [_dot(A[i], vec, zero) for i in range(k)]
        # multiply Toeplitz (k+2) x (k+1) lower-triangular by coeffs
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(min(i, k) + 1):
                if i - j < len(col):
                    s = s + col[i - j] * coeffs[j]
            new.append(s)
        coeffs = new
    return coeffs


def _dot(r, v, zero):
    s = zero
    for a, b in zip(r, v):
        s = s + a * b
    return s


def char_poly(m) -> tuple:
    """Coefficients c_0..c_n (ascending powers of lambda) of det(m - lambda*E).

    Works for IntMatrix (int coefficients) and GaussMatrix (GaussRational
    coefficients; real for Hermitian input).
    """
    if not m.is_square():
        raise ValueError("char_poly needs a square matrix")
    n = m.nrows
    if isinstance(m, IntMatrix):
        zero, one = 0, 1
    else:
        zero, one = GaussRational(0), GaussRational(1)
    hi_lo = _berkowitz([list(r) for r in m.rows], zero, one)
    # det(M - lE) = (-1)^n det(lE - M)
    sgn = -1 if n % 2 else 1
    asc = [c * sgn for c in reversed(hi_lo)]
    return tuple(asc)


def char_poly_rational(m) -> tuple:
    """char_poly with coefficients as Fractions (requires real coefficients)."""
    out = []
    for c in char_poly(m):
        if isinstance(c, GaussRational):
            if c.im != 0:
                raise ValueError("characteristic polynomial is not real")
            out.append(c.re)
        else:
            out.append(Fraction(c))
    return tuple(out)


def poly_det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials."""
    rows = [[_lp(x) for x in r] for r in m]
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    if any(len(r) != n for r in rows):
        raise ValueError("poly_det needs a square matrix")
    hi_lo = _berkowitz(rows, LaurentPoly(), LaurentPoly.const(1))
    # constant term of det(lE - M) is (-1)^n det(M)
    c = hi_lo[-1]
    return -c if n % 2 else c


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_i | d_{i+1}, d_i >= 2."""

    factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        fs = tuple(int(abs(d)) for d in self.factors if abs(d) != 1)
        if any(d == 0 for d in fs):
            raise ValueError("zero factor: use free_rank")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError("factors do not form a divisibility chain")
        object.__setattr__(self, "factors", fs)

    def is_trivial(self) -> bool:
        return not self.factors and self.free_rank == 0

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        o = 1
        for d in self.factors:
            o *= d
        return o

    def tensor_mod(self, p: int) -> "AbelianGroup":
        """H tensor Z/p: one Z/p per factor divisible by p plus the free part."""
        k = sum(1 for d in self.factors if d % p == 0) + self.free_rank
        return AbelianGroup((p,) * k, 0)

    def __str__(self):
        parts = [f"Z{d}" for d in self.factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"factors": [str(d) for d in self.factors], "free_rank": self.free_rank}


def smith_normal_form(m: IntMatrix) -> tuple:
    """Return (nonunit invariant factors, free rank of the cokernel).

    Cokernel is Z^rows / (column span).  Pivots are chosen by minimal
    absolute value.
    """
    a = [list(r) for r in m.rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # pick pivot of minimal absolute value in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            p = a[t][t]
            # clear column
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            # clear row
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, nr):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility with the rest of the block
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, nc):
                    a[t][j] += a[bad][j]
                continue
            # move the smallest remaining nonzero in row/col t to the pivot
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, nr):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, nc):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    rank = len(diag)
    factors = tuple(d for d in diag if d != 1)
    # the min-abs strategy with the divisibility fix yields a chain; sort defensively
    factors = _normalize_chain(factors)
    return factors, nr - rank


def _normalize_chain(ds) -> tuple:
    """Turn any list of positive ints into an invariant-factor chain."""
    ds = [d for d in ds if d != 1]
    if not ds:
        return ()
    ds = sorted(ds)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
        ds = sorted(ds)
    return tuple(d for d in ds if d != 1)


def abelian_group(m: IntMatrix) -> AbelianGroup:
    f, r = smith_normal_form(m)
    return AbelianGroup(f, r)


def rank_mod_p(m: IntMatrix, p: int) -> int:
    a = [[x % p for x in r] for r in m.rows]
    nr = len(a)
    nc = len(a[0]) if a else 0
    rank = 0
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(nr):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Row-style Hermite reduction with transform (lattice bases)


def lattice_basis_transform(vectors: Sequence[Sequence[int]]) -> list:
    """Given integer row vectors v_f, return integer combinations C (rows) such
    that the rows of C @ V form a Z-basis of the lattice spanned by V.
    """
    n = len(vectors)
    if n == 0:
        return []
    dim = len(vectors[0])
    a = [list(v) for v in vectors]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for col in range(dim):
        while True:
            nz = [i for i in range(r, n) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
            clean = True
            for i in range(r + 1, n):
                if a[i][col]:
                    q = a[i][col] // a[r][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][col]:
                        clean = False
            if clean:
                r += 1
                break
        if r == n:
            break
    return u[:r]


# ---------------------------------------------------------------------------
# Hermitian signature by exact congruence


def hermitian_signature(m) -> int:
    """Signature (#pos - #neg) of a Hermitian matrix by exact congruence."""
    if isinstance(m, IntMatrix):
        if not m.is_symmetric():
            raise NotHermitian("integer matrix is not symmetric")
        rows = [[Fraction(x) for x in r] for r in m.rows]
        return _sym_signature_rational(rows)
    if not isinstance(m, GaussMatrix):
        m = GaussMatrix(m)
    if not m.is_hermitian():
        raise NotHermitian("matrix is not Hermitian")
    if all(x.im == 0 for r in m.rows for x in r):
        return _sym_signature_rational([[x.re for x in r] for r in m.rows])
    return _herm_signature([list(r) for r in m.rows])


def _sym_signature_rational(a: list) -> int:
    """Same congruence algorithm, specialised to real symmetric rational input."""
    sig = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            p = a[k][k]
            sig += 1 if p > 0 else -1
            col = [a[i][k] for i in range(n)]
            rest = [i for i in range(n) if i != k]
            a = [[a[i][j] - col[i] * col[j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            return sig
        i, j = pair
        # hyperbolic block [[0,h],[h,0]] contributes +1 and -1
        h = a[i][j]
        rest = [t for t in range(n) if t not in (i, j)]
        # Schur complement: a_rest - B K^{-1} B^T, K^{-1} = [[0,1/h],[1/h,0]]
        a = [[a[s][t] - (a[s][i] * a[j][t] + a[s][j] * a[i][t]) / h for t in rest] for s in rest]
    return sig


def _herm_signature(a: list) -> int:
    sig = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if not a[i][i].is_zero()), None)
        if k is not None:
            p = a[k][k].re  # Hermitian: diagonal is real
            sig += 1 if p > 0 else -1
            col = [a[i][k] for i in range(n)]
            row = [a[k][j] for j in range(n)]
            rest = [i for i in range(n) if i != k]
            a = [[a[i][j] - col[i] * row[j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if not a[i][j].is_zero()), None)
        if pair is None:
            return sig
        i, j = pair
        h = a[i][j]          # a[j][i] = conj(h)
        hb = a[j][i]
        rest = [t for t in range(n) if t not in (i, j)]
        # K = [[0,h],[hb,0]], K^{-1} = [[0, 1/hb],[1/h, 0]]
        inv_h = GaussRational(1) / h
        inv_hb = GaussRational(1) / hb
        a = [[a[s][t] - (a[s][i] * inv_hb * a[j][t] + a[s][j] * inv_h * a[i][t]) for t in rest]
             for s in rest]
    return sig
