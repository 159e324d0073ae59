"""Sheaf expressions and exact cohomology tables.

A sheaf expression on P^n is a formal sum, with positive rational
coefficients, of four kinds of atoms: an equivariant bundle, the
structure sheaf O_{P^m}(d) of a linear subspace, a formal supernatural
table given by a root sequence and a scale, or an explicitly
tabulated window.  Cohomology tables hold exact rationals over an
explicit, mandatory twist window.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from . import bwb
from .bwb import BundleExpr
from .errors import ValidationError
from .weights import RootSequence


def parse_fraction(value):
    """Exact rational from an int, Fraction, or 'p/q' string."""
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r}")


def format_fraction(q):
    """Lowest-terms 'p/q' (or plain integer) string."""
    return str(Fraction(q))


def pm_line_cohomology(m, e):
    """Cohomology of O(e) on P^m as a dict {degree: dimension}.

    Only H^0 (for e >= 0) and H^m (for e <= -m-1) can be nonzero; on a
    point every twist is trivial.
    """
    if m == 0:
        return {0: 1}
    if e >= 0:
        return {0: comb(e + m, m)}
    if e <= -m - 1:
        return {m: comb(-e - 1, m)}
    return {}


def chi_line_bundle(m, e):
    """chi(P^m, O(e)): the binomial polynomial, exact at every integer."""
    num = 1
    for t in range(1, m + 1):
        num *= e + t
    return num // factorial(m)


class CohomologyTable:
    """Exact table of values gamma_{i,j} = h^i(F(j)) over a twist window.

    Rows are cohomological degrees 0..n, columns the twists of the
    inclusive window [jmin, jmax].  Entries are nonnegative rationals;
    zero entries are not stored.
    """

    __slots__ = ("n", "jmin", "jmax", "entries")

    def __init__(self, n, window, entries=None):
        self.n = int(n)
        jmin, jmax = int(window[0]), int(window[1])
        if jmin > jmax:
            raise ValidationError(f"empty window {window}")
        self.jmin, self.jmax = jmin, jmax
        clean = {}
        for (i, j), v in (entries or {}).items():
            v = Fraction(v)
            if v == 0:
                continue
            if not 0 <= i <= self.n:
                raise ValidationError(f"degree {i} outside 0..{self.n}")
            if not jmin <= j <= jmax:
                raise ValidationError(f"twist {j} outside window [{jmin}, {jmax}]")
            if v < 0:
                raise ValidationError(f"negative table entry at ({i}, {j})")
            clean[(i, j)] = v
        self.entries = clean

    @property
    def window(self):
        return (self.jmin, self.jmax)

    def get(self, i, j):
        if not self.jmin <= j <= self.jmax:
            raise ValidationError(f"twist {j} outside window [{self.jmin}, {self.jmax}]")
        if not 0 <= i <= self.n:
            return Fraction(0)
        return self.entries.get((i, j), Fraction(0))

    def __getitem__(self, key):
        return self.get(*key)

    def column(self, j):
        return [self.get(i, j) for i in range(self.n + 1)]

    def chi(self, j):
        return sum((-1) ** i * self.get(i, j) for i in range(self.n + 1))

    def is_integral(self):
        return all(v.denominator == 1 for v in self.entries.values())

    def is_zero(self):
        return not self.entries

    def nonzero_items(self):
        return sorted(self.entries.items())

    def add(self, other):
        if not isinstance(other, CohomologyTable):
            raise ValidationError("can only add cohomology tables")
        if self.n != other.n or self.window != other.window:
            raise ValidationError("window mismatch in table addition")
        merged = dict(self.entries)
        for key, v in other.entries.items():
            merged[key] = merged.get(key, Fraction(0)) + v
        return CohomologyTable(self.n, self.window, merged)

    def scale(self, q):
        q = Fraction(q)
        if q < 0:
            raise ValidationError("table scaling factor must be nonnegative")
        return CohomologyTable(
            self.n, self.window, {k: v * q for k, v in self.entries.items()}
        )

    def restrict(self, window):
        lo, hi = int(window[0]), int(window[1])
        if lo < self.jmin or hi > self.jmax:
            raise ValidationError(
                f"window [{lo}, {hi}] is not contained in [{self.jmin}, {self.jmax}]"
            )
        kept = {k: v for k, v in self.entries.items() if lo <= k[1] <= hi}
        return CohomologyTable(self.n, (lo, hi), kept)

    def compare_entrywise(self, other):
        """Strongest valid relation among '=', '<=', '>=', 'incomparable'."""
        if not isinstance(other, CohomologyTable):
            raise ValidationError("can only compare cohomology tables")
        if self.n != other.n or self.window != other.window:
            raise ValidationError("window mismatch in table comparison")
        any_lt = any_gt = False
        keys = set(self.entries) | set(other.entries)
        for i, j in keys:
            a, b = self.get(i, j), other.get(i, j)
            if a < b:
                any_lt = True
            elif a > b:
                any_gt = True
        if not any_lt and not any_gt:
            return "="
        if not any_gt:
            return "<="
        if not any_lt:
            return ">="
        return "incomparable"

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        return (
            self.n == other.n
            and self.window == other.window
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n, self.window, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return f"CohomologyTable(n={self.n}, window=({self.jmin}, {self.jmax}))"

    def render(self):
        """Plain text: degree rows n (top) to 0 (bottom), '.' for zeros."""
        cols = list(range(self.jmin, self.jmax + 1))
        cells = {}
        width = 1
        for i in range(self.n + 1):
            for j in cols:
                v = self.get(i, j)
                s = "." if v == 0 else format_fraction(v)
                cells[(i, j)] = s
                width = max(width, len(s))
        width = max(width, *(len(str(j)) for j in cols))
        lines = ["      " + " ".join(str(j).rjust(width) for j in cols)]
        for i in range(self.n, -1, -1):
            row = " ".join(cells[(i, j)].rjust(width) for j in cols)
            lines.append(f"{i:>4}: {row}")
        return "\n".join(lines)

    def to_json(self):
        rows = {}
        for (i, j), v in sorted(self.entries.items()):
            rows.setdefault(str(i), {})[str(j)] = format_fraction(v)
        return {"n": self.n, "window": [self.jmin, self.jmax], "rows": rows}

    @classmethod
    def from_json(cls, data):
        try:
            n = data["n"]
            window = tuple(data["window"])
            entries = {}
            for i, row in data.get("rows", {}).items():
                for j, v in row.items():
                    entries[(int(i), int(j))] = parse_fraction(v)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed table JSON: {exc}") from exc
        return cls(n, window, entries)


class LinearSubspace:
    """O_{P^m}(d), the twisted structure sheaf of a linear subspace."""

    __slots__ = ("m", "d")

    def __init__(self, m, d):
        self.m = int(m)
        self.d = int(d)
        if self.m < 0:
            raise ValidationError("subspace dimension must be nonnegative")

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return (self.m, self.d) == (other.m, other.d)

    def __hash__(self):
        return hash(("subspace", self.m, self.d))

    def __repr__(self):
        return f"LinearSubspace(m={self.m}, d={self.d})"


class FormalSupernatural:
    """A supernatural cohomology table: root sequence plus positive scale.

    The table places scale * |prod_k (j - f_k)| / n! in the one degree
    allowed between consecutive roots, and an all-zero column at each
    root.  scale equals the rank of any bundle realizing the table.
    """

    __slots__ = ("roots", "scale")

    def __init__(self, roots, scale):
        self.roots = RootSequence(roots)
        self.scale = parse_fraction(scale)
        if self.scale <= 0:
            raise ValidationError("supernatural scale must be positive")

    def __eq__(self, other):
        if not isinstance(other, FormalSupernatural):
            return NotImplemented
        return (self.roots, self.scale) == (other.roots, other.scale)

    def __hash__(self):
        return hash(("supernatural", self.roots.roots, self.scale))

    def __repr__(self):
        return f"FormalSupernatural(roots={self.roots.roots}, scale={self.scale})"


def _atom_key(atom):
    if isinstance(atom, BundleExpr):
        return ("bundle", atom.n, tuple(atom.summands.items()))
    if isinstance(atom, LinearSubspace):
        return ("subspace", atom.m, atom.d)
    if isinstance(atom, FormalSupernatural):
        return ("supernatural", atom.roots.roots, atom.scale)
    if isinstance(atom, CohomologyTable):
        return ("table", atom.n, atom.window, tuple(sorted(atom.entries.items())))
    raise ValidationError(f"not a sheaf atom: {atom!r}")


class SheafExpr:
    """Formal sum of sheaf atoms with positive rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        self.n = int(n)
        if self.n < 1:
            raise ValidationError("ambient dimension must be at least 1")
        agg = {}
        order = []
        for coeff, atom in terms:
            coeff = parse_fraction(coeff)
            if coeff <= 0:
                raise ValidationError("sheaf coefficients must be positive")
            self._check_atom(atom)
            key = _atom_key(atom)
            if key not in agg:
                order.append(key)
                agg[key] = [coeff, atom]
            else:
                agg[key][0] += coeff
        self.terms = tuple((agg[k][0], agg[k][1]) for k in sorted(order))

    def _check_atom(self, atom):
        if isinstance(atom, BundleExpr):
            if atom.n != self.n:
                raise ValidationError("bundle atom has wrong ambient dimension")
        elif isinstance(atom, LinearSubspace):
            if atom.m > self.n:
                raise ValidationError(f"subspace dimension {atom.m} exceeds ambient {self.n}")
        elif isinstance(atom, FormalSupernatural):
            if len(atom.roots) != self.n:
                raise ValidationError("root sequence length must equal the ambient dimension")
        elif isinstance(atom, CohomologyTable):
            if atom.n != self.n:
                raise ValidationError("table atom has wrong ambient dimension")
        else:
            raise ValidationError(f"not a sheaf atom: {atom!r}")

    @classmethod
    def bundle(cls, B, coeff=1):
        return cls(B.n, [(coeff, B)])

    @classmethod
    def line(cls, n, d, coeff=1):
        return cls(n, [(coeff, BundleExpr.line(n, d))])

    @classmethod
    def subspace(cls, n, m, d=0, coeff=1):
        return cls(n, [(coeff, LinearSubspace(m, d))])

    @classmethod
    def supernatural(cls, n, roots, scale, coeff=1):
        return cls(n, [(coeff, FormalSupernatural(roots, scale))])

    @classmethod
    def from_table(cls, T, coeff=1):
        return cls(T.n, [(coeff, T)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, SheafExpr):
            return NotImplemented
        if self.n != other.n:
            raise ValidationError("ambient dimension mismatch")
        return SheafExpr(self.n, list(self.terms) + list(other.terms))

    def __rmul__(self, coeff):
        coeff = parse_fraction(coeff)
        return SheafExpr(self.n, [(coeff * c, a) for c, a in self.terms])

    def twist(self, j):
        """The expression F(j)."""
        out = []
        for coeff, atom in self.terms:
            if isinstance(atom, BundleExpr):
                out.append((coeff, atom.twist(j)))
            elif isinstance(atom, LinearSubspace):
                out.append((coeff, LinearSubspace(atom.m, atom.d + j)))
            elif isinstance(atom, FormalSupernatural):
                roots = tuple(f - j for f in atom.roots)
                out.append((coeff, FormalSupernatural(roots, atom.scale)))
            else:
                shifted = {(i, t - j): v for (i, t), v in atom.entries.items()}
                out.append(
                    (coeff, CohomologyTable(atom.n, (atom.jmin - j, atom.jmax - j), shifted))
                )
        return SheafExpr(self.n, out)

    def atoms(self):
        return [atom for _c, atom in self.terms]

    def __eq__(self, other):
        if not isinstance(other, SheafExpr):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if self.is_zero():
            return f"SheafExpr(n={self.n}, 0)"
        parts = []
        for coeff, atom in self.terms:
            name = atom.pretty() if isinstance(atom, BundleExpr) else repr(atom)
            parts.append(name if coeff == 1 else f"{format_fraction(coeff)}*{name}")
        return f"SheafExpr(n={self.n}, " + " + ".join(parts) + ")"

    def to_json(self):
        terms = []
        for coeff, atom in self.terms:
            entry = {"coeff": format_fraction(coeff)}
            if isinstance(atom, BundleExpr):
                entry["bundle"] = atom.to_json()
            elif isinstance(atom, LinearSubspace):
                entry["subspace"] = {"m": atom.m, "d": atom.d}
            elif isinstance(atom, FormalSupernatural):
                entry["supernatural"] = {
                    "roots": atom.roots.to_json(),
                    "scale": format_fraction(atom.scale),
                }
            else:
                entry["table"] = atom.to_json()
            terms.append(entry)
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValidationError("sheaf JSON must be an object")
        if "summands" in data:
            return cls.bundle(BundleExpr.from_json(data))
        try:
            n = data["n"]
            raw_terms = data["terms"]
        except KeyError as exc:
            raise ValidationError(f"sheaf JSON missing field {exc}") from exc
        terms = []
        for entry in raw_terms:
            coeff = parse_fraction(entry.get("coeff", 1))
            if "bundle" in entry:
                atom = BundleExpr.from_json(entry["bundle"])
            elif "subspace" in entry:
                atom = LinearSubspace(entry["subspace"]["m"], entry["subspace"]["d"])
            elif "supernatural" in entry:
                spec_ = entry["supernatural"]
                atom = FormalSupernatural(spec_["roots"], parse_fraction(spec_["scale"]))
            elif "table" in entry:
                atom = CohomologyTable.from_json(entry["table"])
            else:
                raise ValidationError(f"unknown sheaf atom in {entry!r}")
            terms.append((coeff, atom))
        return cls(n, terms)


def _supernatural_value(roots, scale, n, i, j):
    prod = 1
    above = 0
    for f in roots:
        prod *= j - f
        if f > j:
            above += 1
    if prod == 0 or above != i:
        return Fraction(0)
    return scale * Fraction(abs(prod), factorial(n))


def _atom_cohomology_at(n, atom, j):
    """Cohomology vector (length n+1) of one atom at twist j, exact."""
    out = [Fraction(0)] * (n + 1)
    if isinstance(atom, BundleExpr):
        for i, h in enumerate(bwb.cohomology_of_bundle(atom, j)):
            out[i] = Fraction(h)
    elif isinstance(atom, LinearSubspace):
        for i, h in pm_line_cohomology(atom.m, atom.d + j).items():
            out[i] = Fraction(h)
    elif isinstance(atom, FormalSupernatural):
        for i in range(n + 1):
            out[i] = _supernatural_value(atom.roots, atom.scale, n, i, j)
    elif isinstance(atom, CohomologyTable):
        for i in range(n + 1):
            out[i] = atom.get(i, j)
    else:
        raise ValidationError(f"not a sheaf atom: {atom!r}")
    return out


def sheaf_cohomology_at(F, j):
    """Exact cohomology vector of F(j), indexed by degree 0..n."""
    out = [Fraction(0)] * (F.n + 1)
    for coeff, atom in F.terms:
        for i, v in enumerate(_atom_cohomology_at(F.n, atom, j)):
            out[i] += coeff * v
    return out


def cohomology_table(F, window):
    """The table gamma_{i,j}(F) over the window."""
    lo, hi = int(window[0]), int(window[1])
    entries = {}
    for j in range(lo, hi + 1):
        for i, v in enumerate(sheaf_cohomology_at(F, j)):
            if v:
                entries[(i, j)] = v
    return CohomologyTable(F.n, (lo, hi), entries)


def supernatural_table(f, scale, window):
    """Table of the formal supernatural sheaf with roots f and the given scale."""
    atom = FormalSupernatural(f, scale)
    n = len(atom.roots)
    return cohomology_table(SheafExpr(n, [(1, atom)]), window)


def _atom_chi(n, atom, j):
    if isinstance(atom, BundleExpr):
        return Fraction(bwb.euler_characteristic(atom, j))
    if isinstance(atom, LinearSubspace):
        return Fraction(chi_line_bundle(atom.m, atom.d + j))
    if isinstance(atom, FormalSupernatural):
        prod = 1
        for f in atom.roots:
            prod *= j - f
        return atom.scale * Fraction(prod, factorial(n))
    if isinstance(atom, CohomologyTable):
        if atom.jmin <= j <= atom.jmax:
            return atom.chi(j)
        poly = _interpolate_from_table(atom)
        return poly(j)
    raise ValidationError(f"not a sheaf atom: {atom!r}")


def chi_sheaf(F, j):
    """chi(F(j)) as an exact rational."""
    return sum((_atom_chi(F.n, atom, j) * coeff for coeff, atom in F.terms), Fraction(0))


class HilbertPolynomial:
    """chi(F(j)) as an exact polynomial in the twist variable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __call__(self, j):
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * j + c
        return total

    def __eq__(self, other):
        if not isinstance(other, HilbertPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "HilbertPolynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(format_fraction(c))
            else:
                mono = "j" if k == 1 else f"j^{k}"
                terms.append(mono if c == 1 else f"{format_fraction(c)}*{mono}")
        return "HilbertPolynomial(" + " + ".join(terms) + ")"

    @classmethod
    def interpolate(cls, points):
        """Exact Lagrange interpolation through (x, y) pairs."""
        coeffs = [Fraction(0)] * len(points)
        for x0, y0 in points:
            num = [Fraction(1)]
            den = Fraction(1)
            for x1, _y1 in points:
                if x1 == x0:
                    continue
                num = _poly_mul(num, [Fraction(-x1), Fraction(1)])
                den *= x0 - x1
            w = Fraction(y0) / den
            for k, c in enumerate(num):
                coeffs[k] += w * c
        return cls(coeffs)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _interpolate_from_table(T):
    lo, hi = T.window
    if hi - lo < T.n:
        raise ValidationError(
            f"window of width {hi - lo + 1} cannot determine a degree-{T.n} polynomial"
        )
    pts = [(j, T.chi(j)) for j in range(lo, lo + T.n + 1)]
    return HilbertPolynomial.interpolate(pts)


def hilbert_polynomial(F):
    """The exact polynomial j -> chi(F(j))."""
    pts = [(j, chi_sheaf(F, j)) for j in range(F.n + 1)]
    return HilbertPolynomial.interpolate(pts)


def scale(T, q):
    """Table scaled by a nonnegative rational."""
    return T.scale(q)


def add(T1, T2):
    """Entrywise sum of two tables over the same window."""
    return T1.add(T2)


def compare_entrywise(T1, T2):
    """Strongest valid relation among '=', '<=', '>=', 'incomparable'."""
    return T1.compare_entrywise(T2)
