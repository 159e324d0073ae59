"""Exact combinatorics of weakly decreasing integer sequences.

Dimensions of Schur modules via the Weyl formula, weight duality,
determinant-twist normalization, Littlewood-Richardson products, and
branching multiplicities for a rank drop with trivial complement.
Everything is plain integer arithmetic on tuples; nothing in this
module knows about sheaves.
"""

from __future__ import annotations

from .errors import ValidationError


class Weight:
    """A weakly decreasing integer sequence of fixed length.

    The length is part of the identity: (1, 0) and (1, 0, 0) are
    different weights.  Entries may be negative; use pad() to append
    trailing zeros explicitly.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        if isinstance(parts, Weight):
            self.parts = parts.parts
            return
        if isinstance(parts, int):
            parts = (parts,)
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValidationError(f"weight {parts} is not weakly decreasing")
        self.parts = parts

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Weight):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        # lexicographic; only used for deterministic ordering of outputs
        return self.parts < Weight(other).parts

    def __repr__(self):
        return f"Weight{self.parts}"

    @property
    def size(self):
        return sum(self.parts)

    def pad(self, m):
        """Extend with trailing zeros to length m."""
        k = len(self.parts)
        if m < k:
            raise ValidationError(f"cannot pad length-{k} weight down to {m}")
        if m > k and self.parts and self.parts[-1] < 0:
            raise ValidationError(f"padding {self.parts} with zeros is not weakly decreasing")
        return Weight(self.parts + (0,) * (m - k))

    def to_json(self):
        return list(self.parts)


class RootSequence:
    """Strictly decreasing integers f_1 > ... > f_n.

    These are the total-vanishing twists of a supernatural bundle on
    P^n, listed in decreasing order.
    """

    __slots__ = ("roots",)

    def __init__(self, roots):
        if isinstance(roots, RootSequence):
            self.roots = roots.roots
            return
        roots = tuple(int(f) for f in roots)
        for a, b in zip(roots, roots[1:]):
            if a <= b:
                raise ValidationError(f"root sequence {roots} is not strictly decreasing")
        self.roots = roots

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def __eq__(self, other):
        if isinstance(other, RootSequence):
            return self.roots == other.roots
        if isinstance(other, tuple):
            return self.roots == other
        return NotImplemented

    def __hash__(self):
        return hash(self.roots)

    def __le__(self, other):
        """Componentwise partial order on root sequences."""
        other = RootSequence(other)
        if len(self) != len(other):
            raise ValidationError("cannot compare root sequences of different lengths")
        return all(a <= b for a, b in zip(self.roots, other.roots))

    def __repr__(self):
        return f"RootSequence{self.roots}"

    def to_json(self):
        return list(self.roots)


class DegreeSequence:
    """Strictly increasing integers d_0 < d_1 < ... < d_s."""

    __slots__ = ("degrees",)

    def __init__(self, degrees):
        if isinstance(degrees, DegreeSequence):
            self.degrees = degrees.degrees
            return
        degrees = tuple(int(d) for d in degrees)
        for a, b in zip(degrees, degrees[1:]):
            if a >= b:
                raise ValidationError(f"degree sequence {degrees} is not strictly increasing")
        self.degrees = degrees

    def __len__(self):
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __eq__(self, other):
        if isinstance(other, DegreeSequence):
            return self.degrees == other.degrees
        if isinstance(other, tuple):
            return self.degrees == other
        return NotImplemented

    def __hash__(self):
        return hash(self.degrees)

    def __repr__(self):
        return f"DegreeSequence{self.degrees}"

    def to_json(self):
        return list(self.degrees)


def dim_schur(alpha, m):
    """Dimension of the Schur module S_alpha(k^m).

    Weyl's formula prod_{i<j} (alpha_i - alpha_j + j - i) / (j - i) is
    valid for any weakly decreasing integer weight with exactly m
    parts, and is invariant under adding a constant to every part.
    """
    alpha = Weight(alpha)
    if len(alpha) != m:
        raise ValidationError(f"weight {alpha.parts} does not have {m} parts")
    num = 1
    den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= alpha[i] - alpha[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def dual_weight(alpha):
    """Reverse and negate: the highest weight of the dual module."""
    alpha = Weight(alpha)
    return Weight(tuple(-p for p in reversed(alpha.parts)))


def normalize_twist(alpha, d):
    """Canonical form of a pair (alpha, d) labelling S_alpha(Q*)(d).

    det Q* has degree -1, so splitting off c = alpha_m determinant
    factors gives S_alpha(Q*)(d) = S_{alpha-c}(Q*)(d-c).  Returns the
    equivalent pair whose weight has last part 0.
    """
    alpha = Weight(alpha)
    if not alpha.parts:
        return alpha, int(d)
    c = alpha.parts[-1]
    return Weight(tuple(p - c for p in alpha.parts)), int(d) - c


def _add_strip_label(shape, prev_cum, count, m):
    """All ways of adding `count` boxes of one new label to `shape`.

    The new boxes must form a horizontal strip, and the cumulative
    row counts of the new label through row t+1 are bounded by the
    cumulative counts of the previous label through row t (the ballot
    condition).  prev_cum is that bounding profile, or None for the
    first label.  Returns a list of (new_shape, new_cum_profile).
    """
    out = []

    def rec(row, rem, rows_acc, cum_acc):
        if row == m:
            if rem == 0:
                out.append((tuple(rows_acc), tuple(cum_acc)))
            return
        hi = rem
        if row >= 1:
            hi = min(hi, shape[row - 1] - shape[row])
        if prev_cum is not None:
            allowed = prev_cum[row - 1] if row >= 1 else 0
            sofar = cum_acc[-1] if cum_acc else 0
            hi = min(hi, allowed - sofar)
        for a in range(hi + 1):
            rows_acc.append(shape[row] + a)
            cum_acc.append((cum_acc[-1] if cum_acc else 0) + a)
            rec(row + 1, rem - a, rows_acc, cum_acc)
            rows_acc.pop()
            cum_acc.pop()

    rec(0, count, [], [])
    return out


def _lr_partitions(lam, mu, m):
    """Expand s_lam * s_mu over GL_m: dict mapping partition -> multiplicity.

    lam is grown label by label through the parts of mu; every growth
    step is a horizontal strip subject to the ballot bound, so the
    states are exactly the Littlewood-Richardson fillings.  Shapes are
    length-m tuples; anything needing more than m rows never appears.
    """
    states = {(tuple(lam), None): 1}
    for part in mu:
        if part == 0:
            break
        nxt = {}
        for (shape, prev_cum), mult in states.items():
            for new_shape, cum in _add_strip_label(shape, prev_cum, part, m):
                key = (new_shape, cum)
                nxt[key] = nxt.get(key, 0) + mult
        states = nxt
    out = {}
    for (shape, _cum), mult in states.items():
        out[shape] = out.get(shape, 0) + mult
    return out


def littlewood_richardson(alpha, beta, m):
    """Decompose S_alpha(k^m) tensor S_beta(k^m) into Schur modules.

    Both weights must have m parts; negative parts are handled by
    shifting to partitions, multiplying, and shifting back.  Returns
    a dict mapping Weight -> positive multiplicity, keys sorted in
    decreasing lexicographic order.
    """
    alpha = Weight(alpha)
    beta = Weight(beta)
    if len(alpha) != m or len(beta) != m:
        raise ValidationError(f"both weights must have {m} parts")
    if m == 0:
        return {Weight(()): 1}
    ca = alpha.parts[-1]
    cb = beta.parts[-1]
    lam = tuple(p - ca for p in alpha.parts)
    mu = tuple(p - cb for p in beta.parts)
    shift = ca + cb
    raw = _lr_partitions(lam, mu, m)
    out = {}
    for nu, mult in raw.items():
        out[Weight(tuple(p + shift for p in nu))] = mult
    return dict(sorted(out.items(), key=lambda kv: kv[0].parts, reverse=True))


def _subpartitions(lam, max_rows):
    """Partitions contained in lam with at most max_rows nonzero rows,
    padded with zeros to the length of lam."""
    n = len(lam)

    def rec(t, prev, acc):
        if t == n:
            yield tuple(acc)
            return
        hi = min(lam[t], prev) if t < max_rows else 0
        for v in range(hi, -1, -1):
            acc.append(v)
            yield from rec(t + 1, v, acc)
            acc.pop()

    yield from rec(0, lam[0] if lam else 0, [])


def _hstrip_extensions(inner, outer):
    """All partitions mid with inner <= mid <= outer (componentwise)
    such that mid/inner is a horizontal strip."""
    n = len(inner)

    def rec(t, acc):
        if t == n:
            yield tuple(acc)
            return
        hi = outer[t] if t == 0 else min(outer[t], inner[t - 1])
        for v in range(inner[t], hi + 1):
            acc.append(v)
            yield from rec(t + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _strip_chain_count(inner, outer, steps):
    """Number of chains inner = v0 <= v1 <= ... <= v_steps = outer in
    which every consecutive skew v_{k+1}/v_k is a horizontal strip."""
    if steps == 0:
        return 1 if inner == outer else 0
    total = 0
    for mid in _hstrip_extensions(inner, outer):
        total += _strip_chain_count(mid, outer, steps - 1)
    return total


def branch_restrict(alpha, n, m):
    """Multiplicities of S_beta(A) inside S_alpha(A + trivial^(n-m)), dim A = m.

    The multiplicity of beta counts chains of n-m successive
    horizontal strips climbing from beta to alpha (after shifting the
    common last part into a determinant factor, which the trivial
    summands do not see).  With m = n this is the identity {alpha: 1}.
    """
    alpha = Weight(alpha)
    if len(alpha) != n:
        raise ValidationError(f"weight {alpha.parts} does not have {n} parts")
    if not 1 <= m <= n:
        raise ValidationError(f"target rank {m} must satisfy 1 <= m <= {n}")
    c = alpha.parts[-1]
    lam = tuple(p - c for p in alpha.parts)
    steps = n - m
    out = {}
    for bp in _subpartitions(lam, max_rows=m):
        mult = _strip_chain_count(bp, lam, steps)
        if mult:
            beta = Weight(tuple(p + c for p in bp[:m]))
            out[beta] = mult
    return dict(sorted(out.items(), key=lambda kv: kv[0].parts, reverse=True))
