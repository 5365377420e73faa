"""Exact arithmetic in the ring of W-invariant characters.

A Character is a finitely supported integer map on the weight lattice,
stored over the full lattice (no orbit compression).  All coefficients are
unbounded Python integers; all operations are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonDominantError, NonInvariantError, RankMismatchError
from .rootdata import RootSystem


class Character:
    """Finitely supported integer-valued function on the weight lattice.

    Virtual characters (negative multiplicities) are allowed; W-invariance
    is a property of most public inputs but is not enforced here.
    """

    __slots__ = ("rank", "support")

    def __init__(self, rank, support=None):
        self.rank = rank
        self.support = {}
        if support:
            for weight, mult in support.items():
                if len(weight) != rank:
                    raise RankMismatchError(
                        f"weight {weight} has length {len(weight)}, expected {rank}"
                    )
                if mult != 0:
                    self.support[tuple(weight)] = int(mult)

    def _check_compatible(self, other):
        if self.rank != other.rank:
            raise RankMismatchError(
                f"rank mismatch: {self.rank} versus {other.rank}"
            )

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.rank == other.rank
            and self.support == other.support
        )

    def __bool__(self):
        return bool(self.support)

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.support)
        for w, m in other.support.items():
            new = out.get(w, 0) + m
            if new:
                out[w] = new
            else:
                out.pop(w, None)
        result = Character(self.rank)
        result.support = out
        return result

    def __neg__(self):
        result = Character(self.rank)
        result.support = {w: -m for w, m in self.support.items()}
        return result

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Character(self.rank)
            result = Character(self.rank)
            result.support = {w: m * other for w, m in self.support.items()}
            return result
        self._check_compatible(other)
        out = {}
        for wa, ma in self.support.items():
            for wb, mb in other.support.items():
                w = tuple(a + b for a, b in zip(wa, wb))
                new = out.get(w, 0) + ma * mb
                if new:
                    out[w] = new
                else:
                    del out[w]
        result = Character(self.rank)
        result.support = out
        return result

    __rmul__ = __mul__

    def dimension(self):
        """Value at the identity: the sum of all multiplicities."""
        return sum(self.support.values())

    def get(self, weight, default=0):
        return self.support.get(tuple(weight), default)

    def sorted_items(self):
        return sorted(self.support.items())

    def to_json_dict(self):
        return {
            "rank": self.rank,
            "entries": [
                {"weight": list(w), "mult": m} for w, m in self.sorted_items()
            ],
        }

    @classmethod
    def from_json_dict(cls, doc):
        rank = doc["rank"]
        support = {}
        for entry in doc["entries"]:
            support[tuple(entry["weight"])] = entry["mult"]
        return cls(rank, support)

    def __repr__(self):
        items = ", ".join(f"{w}: {m}" for w, m in self.sorted_items())
        return f"Character({{{items}}})"


def multiply(a, b):
    """Convolution product in the character ring."""
    return a * b


def frobenius_twist(chi, p, s):
    """Scale every support weight by p^s, keeping multiplicities."""
    if s < 0:
        raise ValueError(f"twist exponent must be nonnegative, got {s}")
    if s == 0:
        return chi
    factor = p**s
    result = Character(chi.rank)
    result.support = {
        tuple(factor * c for c in w): m for w, m in chi.support.items()
    }
    return result


def formal_dual(chi):
    """Negate every support weight; an involution."""
    result = Character(chi.rank)
    result.support = {tuple(-c for c in w): m for w, m in chi.support.items()}
    return result


def dimension(chi):
    return chi.dimension()


def weyl_character(lam, rs: RootSystem):
    """The full weight-multiplicity character of the costandard module.

    Rank 1 uses the closed weight-string formula; higher ranks use
    Freudenthal's recursion.  Memoized per (root system, highest weight).
    """
    lam = tuple(lam)
    rs.check_rank(lam)
    cached = rs._weyl_char_cache.get(lam)
    if cached is not None:
        return cached
    if not rs.is_dominant(lam):
        raise NonDominantError(f"highest weight {lam} is not dominant")
    if rs.rank == 1:
        m = lam[0]
        chi = Character(1, {(m - 2 * k,): 1 for k in range(m + 1)})
    else:
        chi = _freudenthal_character(lam, rs)
    rs._weyl_char_cache[lam] = chi
    return chi


def _freudenthal_character(lam, rs):
    dominants = rs.dominant_weights_below(lam)

    def level(mu):
        return sum(rs.root_coords(tuple(a - b for a, b in zip(lam, mu))))

    table = {lam: 1}
    lam_rho = tuple(c + 1 for c in lam)
    top_norm = rs.bilinear(lam_rho, lam_rho)
    for mu in sorted(dominants, key=lambda m: (level(m), m)):
        if mu == lam:
            continue
        acc = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(c + k * a for c, a in zip(mu, alpha))
                rep = rs.dominant_representative(nu)
                if rep not in table:
                    break
                acc += table[rep] * rs.bilinear(nu, alpha)
                k += 1
        mu_rho = tuple(c + 1 for c in mu)
        denom = top_norm - rs.bilinear(mu_rho, mu_rho)
        mult = 2 * acc / denom
        assert mult.denominator == 1 and mult > 0
        table[mu] = int(mult)

    support = {}
    for mu, mult in table.items():
        for w in rs.weyl_orbit(mu):
            support[w] = mult
    return Character(rs.rank, support)


def leading_dominant_weights(support, rs):
    """Dominant support weights maximal under dominance (possibly several)."""
    dominants = [w for w in support if rs.is_dominant(w)]
    return [
        w
        for w in dominants
        if not any(v != w and rs.dominance_leq(w, v) for v in dominants)
    ]


def to_weyl_basis(chi, rs):
    """Expand a W-invariant (possibly virtual) character in Weyl characters.

    Repeated leading-term elimination; raises NonInvariantError when the
    residual has support with no dominant maximal weight.
    """
    work = dict(chi.support)
    coeffs = {}
    while work:
        leads = leading_dominant_weights(work, rs)
        if not leads:
            residual = max(work)
            raise NonInvariantError(
                f"character is not W-invariant: residual leading weight {residual}"
            )
        lead = max(leads)
        c = work[lead]
        coeffs[lead] = c
        for w, m in weyl_character(lead, rs).support.items():
            new = work.get(w, 0) - c * m
            if new:
                work[w] = new
            else:
                work.pop(w, None)
    return coeffs


def from_weyl_basis(coeffs, rs):
    """Inverse of to_weyl_basis: assemble sum of c * chi(lam)."""
    total = Character(rs.rank)
    for lam, c in coeffs.items():
        total = total + c * weyl_character(tuple(lam), rs)
    return total


def steinberg_character(rs, p, r):
    """chi((p^r - 1) rho)."""
    return weyl_character(tuple((p**r - 1) * c for c in rs.rho), rs)
