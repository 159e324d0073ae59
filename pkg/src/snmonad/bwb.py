"""Cohomology of twisted Schur bundles on projective space.

The core engine: for a weakly decreasing weight alpha and a twist d,
the full cohomology of S_alpha(Q*)(d) on P^n is computed exactly by
the Borel-Weil-Bott algorithm.  On top of it sit direct sums, tensor
products, duals, Ext groups, restriction to linear subspaces, and the
root-sequence and regularity bookkeeping for supernatural bundles.
"""

from __future__ import annotations

from .errors import ValidationError
from .weights import (
    RootSequence,
    Weight,
    branch_restrict,
    dim_schur,
    dual_weight,
    littlewood_richardson,
    normalize_twist,
)


class CohomologyOutcome:
    """Borel-Weil-Bott result for a single Schur summand.

    Either total vanishing (degree is None), or one cohomological
    degree carrying the Schur module of weight `weight` on the dual
    space, of dimension `dim`.
    """

    __slots__ = ("degree", "weight", "dim")

    def __init__(self, degree=None, weight=None, dim=0):
        self.degree = degree
        self.weight = weight
        self.dim = dim

    @property
    def vanishing(self):
        return self.degree is None

    def __eq__(self, other):
        if not isinstance(other, CohomologyOutcome):
            return NotImplemented
        return (self.degree, self.weight, self.dim) == (other.degree, other.weight, other.dim)

    def __repr__(self):
        if self.vanishing:
            return "CohomologyOutcome(vanishing)"
        return f"CohomologyOutcome(degree={self.degree}, weight={self.weight!r}, dim={self.dim})"


def bwb_cohomology(alpha, d, n):
    """Cohomology of S_alpha(Q*) tensor O(d) on P^n.

    Concatenate beta = (d, alpha_1, ..., alpha_n) and add the staircase
    rho = (n, ..., 1, 0).  A repeated entry means all cohomology
    vanishes; otherwise sorting records the unique nonzero degree (the
    inversion count) and the dominant weight gamma of the answer,
    whose dimension is dim S_gamma(k^{n+1}).
    """
    alpha = Weight(alpha)
    if len(alpha) != n:
        raise ValidationError(f"weight {alpha.parts} does not have {n} parts")
    beta = (int(d),) + alpha.parts
    rho = tuple(range(n, -1, -1))
    v = tuple(b + r for b, r in zip(beta, rho))
    if len(set(v)) < n + 1:
        return CohomologyOutcome()
    inversions = sum(
        1 for i in range(n + 1) for j in range(i + 1, n + 1) if v[i] < v[j]
    )
    sorted_v = sorted(v, reverse=True)
    gamma = Weight(tuple(x - r for x, r in zip(sorted_v, rho)))
    return CohomologyOutcome(inversions, gamma, dim_schur(gamma, n + 1))


class BundleExpr:
    """Formal nonnegative-integer combination of twisted Schur bundles
    S_alpha(Q*)(d) on P^n.

    Summands are stored in the canonical form where every weight has
    last part 0 (determinant factors absorbed into the twist), so
    identities like Q = Q*(1) on P^2 hold on the nose.  The empty
    combination is the zero bundle.
    """

    __slots__ = ("n", "summands")

    def __init__(self, n, summands=()):
        n = int(n)
        if n < 1:
            raise ValidationError("ambient dimension must be at least 1")
        agg = {}
        for alpha, d, mult in summands:
            mult = int(mult)
            if mult <= 0:
                raise ValidationError("summand multiplicities must be positive")
            alpha = Weight(alpha)
            if len(alpha) != n:
                raise ValidationError(f"weight {alpha.parts} does not have {n} parts")
            w, t = normalize_twist(alpha, d)
            key = (w.parts, t)
            agg[key] = agg.get(key, 0) + mult
        self.n = n
        self.summands = dict(sorted(agg.items()))

    @classmethod
    def line(cls, n, d, mult=1):
        """The line bundle O(d), with multiplicity."""
        return cls(n, [((0,) * n, d, mult)])

    @classmethod
    def schur(cls, n, alpha, d=0, mult=1):
        """S_alpha(Q*)(d), with multiplicity."""
        return cls(n, [(alpha, d, mult)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    def is_zero(self):
        return not self.summands

    def terms(self):
        """Summands as (Weight, twist, mult) triples, in stored order."""
        return [(Weight(w), t, m) for (w, t), m in self.summands.items()]

    def rank(self):
        return sum(m * dim_schur(Weight(w), self.n) for (w, _t), m in self.summands.items())

    def twist(self, j):
        """Tensor with O(j)."""
        return BundleExpr(self.n, [(w, t + j, m) for (w, t), m in self.summands.items()])

    def scale(self, k):
        """Direct sum of k copies."""
        k = int(k)
        if k <= 0:
            raise ValidationError("scaling factor must be a positive integer")
        return BundleExpr(self.n, [(w, t, m * k) for (w, t), m in self.summands.items()])

    def single(self):
        """The unique (weight, twist) pair of a single-summand expression."""
        if len(self.summands) != 1:
            raise ValidationError("expression does not have a single Schur summand")
        (w, t), = self.summands.keys()
        return Weight(w), t

    def __add__(self, other):
        if not isinstance(other, BundleExpr):
            return NotImplemented
        if self.n != other.n:
            raise ValidationError("ambient dimension mismatch")
        items = [(w, t, m) for (w, t), m in self.summands.items()]
        items += [(w, t, m) for (w, t), m in other.summands.items()]
        return BundleExpr(self.n, items)

    def __eq__(self, other):
        if not isinstance(other, BundleExpr):
            return NotImplemented
        return self.n == other.n and self.summands == other.summands

    def __hash__(self):
        return hash((self.n, tuple(self.summands.items())))

    def __repr__(self):
        return f"BundleExpr(n={self.n}, {self.pretty()})"

    def pretty(self):
        if self.is_zero():
            return "0"
        return " + ".join(
            _summand_name(w, t, self.n, m) for (w, t), m in self.summands.items()
        )

    def to_json(self):
        return {
            "n": self.n,
            "summands": [
                {"weight": list(w), "twist": t, "mult": m}
                for (w, t), m in self.summands.items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            n = data["n"]
            summands = [(s["weight"], s["twist"], s.get("mult", 1)) for s in data["summands"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed bundle JSON: {exc}") from exc
        return cls(n, summands)


def _summand_name(w, t, n, mult=1):
    """Readable name for a canonical summand, e.g. (Sym^2 Q*)(1)."""
    if all(p == 0 for p in w):
        base = "O"
        body = f"O({t})" if t else "O"
    else:
        if w == (1,) + (0,) * (n - 1):
            base = "Q*"
        elif all(p == 0 for p in w[1:]):
            base = f"Sym^{w[0]} Q*"
        elif set(w) <= {0, 1}:
            base = f"Wedge^{sum(w)} Q*"
        else:
            base = "S_(" + ",".join(str(p) for p in w) + ") Q*"
        body = f"({base})({t})" if t else base
    if mult != 1:
        body = f"{body}^{mult}"
    return body


def cohomology_of_bundle(B, j):
    """All cohomology dimensions of B(j): a list indexed by degree 0..n."""
    out = [0] * (B.n + 1)
    for (w, t), mult in B.summands.items():
        res = bwb_cohomology(Weight(w), t + j, B.n)
        if not res.vanishing:
            out[res.degree] += mult * res.dim
    return out


def euler_characteristic(B, j):
    """chi(B(j)) as an exact integer."""
    total = 0
    for (w, t), mult in B.summands.items():
        res = bwb_cohomology(Weight(w), t + j, B.n)
        if not res.vanishing:
            total += mult * res.dim * (-1) ** res.degree
    return total


def tensor(B1, B2):
    """Tensor product, expanded into Schur summands."""
    if not isinstance(B1, BundleExpr) or not isinstance(B2, BundleExpr):
        raise ValidationError("tensor expects two bundle expressions")
    if B1.n != B2.n:
        raise ValidationError("ambient dimension mismatch")
    out = []
    for (w1, t1), m1 in B1.summands.items():
        for (w2, t2), m2 in B2.summands.items():
            for nu, c in littlewood_richardson(Weight(w1), Weight(w2), B1.n).items():
                out.append((nu, t1 + t2, c * m1 * m2))
    return BundleExpr(B1.n, out)


def dual(B):
    """Dual bundle: weights reverse-negate, twists negate."""
    return BundleExpr(
        B.n, [(dual_weight(Weight(w)), -t, m) for (w, t), m in B.summands.items()]
    )


def ext_dims(B1, B2):
    """dim Ext^i(B1, B2) for i = 0..n, computed as H^i(B1* tensor B2)."""
    if B1.n != B2.n:
        raise ValidationError("ambient dimension mismatch")
    return cohomology_of_bundle(tensor(dual(B1), B2), 0)

def euler_pairing(B1, B2):
    """Alternating sum of the Ext dimensions; bilinear in both slots."""
    dims = ext_dims(B1, B2)
    return sum((-1) ** i * d for i, d in enumerate(dims))


def restrict_linear(B, m):
    """Restriction to a linear P^m inside P^n.

    The tautological quotient restricts to the smaller one plus a
    trivial factor, so each Schur summand branches; line bundles
    restrict to line bundles of the same degree and ranks are
    preserved.
    """
    if not 1 <= m < B.n:
        raise ValidationError(f"restriction target must satisfy 1 <= m < {B.n}")
    out = []
    for (w, t), mult in B.summands.items():
        for beta, k in branch_restrict(Weight(w), B.n, m).items():
            out.append((beta, t, k * mult))
    return BundleExpr(m, out)


def supernatural_roots(B):
    """Total-vanishing twists of a single-summand expression.

    For the canonical pair (alpha, t) the cohomology of B(j) vanishes
    completely exactly at j = alpha_i - i - t, i = 1..n, which is a
    strictly decreasing root sequence.
    """
    keys = list(B.summands)
    if len(keys) != 1:
        raise ValidationError("roots are defined only for a single Schur summand")
    (alpha, t) = keys[0]
    return RootSequence(tuple(alpha[i] - (i + 1) - t for i in range(B.n)))


def supernatural_regularity(f):
    """Castelnuovo-Mumford regularity of a supernatural sheaf with roots f."""
    f = RootSequence(f)
    return -f[0] + 1


def total_vanishing_twists(B, window):
    """Scan a window for the twists where all cohomology of B vanishes."""
    lo, hi = window
    out = []
    for j in range(lo, hi + 1):
        if not any(cohomology_of_bundle(B, j)):
            out.append(j)
    return out
