"""Root-system combinatorics in fundamental-weight coordinates.

Weights are plain tuples of integers: the coefficients of the fundamental
weights (omega_1, ..., omega_l).  A simple root alpha_i is represented by
row i of the Cartan matrix, since <alpha_i, alpha_j^vee> is exactly its
j-th fundamental coordinate.  All linear algebra is exact (Fraction).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import NonDominantError, NotFiniteTypeError, RankMismatchError

#: A weight in fundamental-weight coordinates.
Weight = tuple

BUILTIN_CARTAN_MATRICES = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "G2": ((2, -1), (-3, 2)),
}


def _invert(matrix):
    """Exact inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(matrix)
    aug = [
        [Fraction(matrix[i][j]) for j in range(n)]
        + [Fraction(1 if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise NotFiniteTypeError("Cartan matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _principal_minors_positive(sym):
    """Leading principal minors of a symmetric Fraction matrix, all > 0."""
    n = len(sym)
    work = [list(row) for row in sym]
    # Fraction-exact LDL^T sweep; pivots are ratios of consecutive minors.
    for k in range(n):
        if work[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            factor = work[i][k] / work[k][k]
            for j in range(k, n):
                work[i][j] -= factor * work[k][j]
    return True


class CartanMatrix:
    """A finite-type Cartan matrix; entry (i, j) is <alpha_i, alpha_j^vee>.

    Validated at construction: square, 2 on the diagonal, nonpositive off
    the diagonal, zero-symmetric, symmetrizable with positive-definite
    symmetrization.
    """

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise NotFiniteTypeError(f"matrix is not square: {entries!r}")
        for i in range(n):
            if rows[i][i] != 2:
                raise NotFiniteTypeError(
                    f"diagonal entry ({i},{i}) is {rows[i][i]}, expected 2"
                )
            for j in range(n):
                if i == j:
                    continue
                if rows[i][j] > 0:
                    raise NotFiniteTypeError(
                        f"off-diagonal entry ({i},{j}) is {rows[i][j]}, expected <= 0"
                    )
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise NotFiniteTypeError(
                        f"entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                    )
        self.entries = rows
        self.rank = n
        self.symmetrizer = self._symmetrizer()
        sym = tuple(
            tuple(Fraction(rows[i][j]) * self.symmetrizer[j] for j in range(n))
            for i in range(n)
        )
        if not _principal_minors_positive(sym):
            raise NotFiniteTypeError(
                "symmetrized matrix is not positive definite (not finite type)"
            )

    def _symmetrizer(self):
        """Positive d with d_j * a_ij = d_i * a_ji, by graph propagation."""
        n = self.rank
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            queue = [start]
            while queue:
                i = queue.pop()
                for j in range(n):
                    if i == j or self.entries[i][j] == 0:
                        continue
                    required = d[i] * self.entries[j][i] / self.entries[i][j]
                    if d[j] is None:
                        d[j] = required
                        queue.append(j)
                    elif d[j] != required:
                        raise NotFiniteTypeError(
                            f"matrix is not symmetrizable at entry ({i},{j})"
                        )
        return tuple(d)

    @classmethod
    def builtin(cls, name):
        try:
            return cls(BUILTIN_CARTAN_MATRICES[name])
        except KeyError:
            raise NotFiniteTypeError(
                f"unknown built-in type {name!r}; known: "
                + ", ".join(sorted(BUILTIN_CARTAN_MATRICES))
            ) from None

    @classmethod
    def from_json_dict(cls, doc):
        """Build from {"type": name} or {"rank": l, "matrix": [[...]]}."""
        if "type" in doc:
            return cls.builtin(doc["type"])
        matrix = doc.get("matrix")
        if matrix is None:
            raise NotFiniteTypeError("document needs a 'type' or 'matrix' key")
        if "rank" in doc and doc["rank"] != len(matrix):
            raise NotFiniteTypeError(
                f"declared rank {doc['rank']} does not match matrix size {len(matrix)}"
            )
        return cls(matrix)

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"CartanMatrix({list(map(list, self.entries))})"


class RootSystem:
    """Immutable root-system data derived from a Cartan matrix.

    Carries the positive roots, rho, the Coxeter number, the longest-element
    action and the highest short coroot.  The Coxeter number and highest
    short coroot assume an irreducible system.
    """

    def __init__(self, cartan):
        if not isinstance(cartan, CartanMatrix):
            cartan = CartanMatrix(cartan)
        self.cartan = cartan
        self.rank = cartan.rank
        self._cartan_inv = _invert(cartan.entries)
        self.rho = (1,) * self.rank
        self.positive_roots = self._generate_positive_roots()
        self._short_norm, self.highest_short_root = self._find_highest_short_root()
        self.highest_short_coroot = self._coroot_pairing_vector(
            self.highest_short_root
        )
        self.coxeter_number = sum(self.highest_short_coroot) + 1
        self._w0_word = self._compute_w0_word()
        self._weyl_char_cache = {}

    # -- basic weight arithmetic ------------------------------------------

    def check_rank(self, weight):
        if len(weight) != self.rank:
            raise RankMismatchError(
                f"weight {weight} has length {len(weight)}, expected {self.rank}"
            )

    def simple_reflection(self, i, weight):
        c = weight[i]
        row = self.cartan.entries[i]
        return tuple(weight[j] - c * row[j] for j in range(self.rank))

    def is_dominant(self, weight):
        return all(c >= 0 for c in weight)

    def root_coords(self, weight):
        """Coordinates of a lattice vector in the simple-root basis."""
        return tuple(
            sum(Fraction(weight[i]) * self._cartan_inv[i][j] for i in range(self.rank))
            for j in range(self.rank)
        )

    def bilinear(self, x, y):
        """W-invariant symmetric form normalized so (alpha, alpha) = 2d."""
        n = self.root_coords(y)
        d = self.cartan.symmetrizer
        return sum(n[j] * x[j] * d[j] for j in range(self.rank))

    def _coroot_pairing_vector(self, root):
        """m with <lam, root^vee> = sum_j lam_j * m_j, as integers."""
        n = self.root_coords(root)
        norm = self.bilinear(root, root)
        m = []
        for j in range(self.rank):
            value = 2 * n[j] * self.cartan.symmetrizer[j] / norm
            if value.denominator != 1:
                raise NotFiniteTypeError(f"non-integral coroot for root {root}")
            m.append(int(value))
        return tuple(m)

    # -- derived structure ------------------------------------------------

    def _generate_positive_roots(self):
        simple = [self.cartan.entries[i] for i in range(self.rank)]
        roots = set(map(tuple, simple))
        frontier = set(roots)
        while frontier:
            new = set()
            for root in frontier:
                for i in range(self.rank):
                    image = self.simple_reflection(i, root)
                    if image not in roots:
                        roots.add(image)
                        new.add(image)
            frontier = new
        positive = [r for r in roots if all(c >= 0 for c in self.root_coords(r))]
        return tuple(sorted(positive))

    def _find_highest_short_root(self):
        norms = {root: self.bilinear(root, root) for root in self.positive_roots}
        short = min(norms.values())
        candidates = [r for r in self.positive_roots if norms[r] == short]
        # The highest short root is the one of maximal height.
        best = max(candidates, key=lambda r: (sum(self.root_coords(r)), r))
        return short, best

    def _compute_w0_word(self):
        word = []
        v = tuple(-c for c in self.rho)
        while not self.is_dominant(v):
            i = next(j for j in range(self.rank) if v[j] < 0)
            v = self.simple_reflection(i, v)
            word.append(i)
        return tuple(word)

    # -- weight operations ------------------------------------------------

    def w0_action(self, weight):
        self.check_rank(weight)
        for i in self._w0_word:
            weight = self.simple_reflection(i, weight)
        return weight

    def dual_weight(self, nu):
        """-w0 . nu; an involution preserving dominance."""
        return tuple(-c for c in self.w0_action(nu))

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative integral combination of simple roots."""
        self.check_rank(mu)
        self.check_rank(lam)
        diff = tuple(a - b for a, b in zip(lam, mu))
        return all(n.denominator == 1 and n >= 0 for n in self.root_coords(diff))

    def dominant_representative(self, weight):
        self.check_rank(weight)
        while not self.is_dominant(weight):
            i = next(j for j in range(self.rank) if weight[j] < 0)
            weight = self.simple_reflection(i, weight)
        return weight

    def weyl_orbit(self, lam):
        self.check_rank(lam)
        orbit = {lam}
        frontier = {lam}
        while frontier:
            new = set()
            for w in frontier:
                for i in range(self.rank):
                    image = self.simple_reflection(i, w)
                    if image not in orbit:
                        orbit.add(image)
                        new.add(image)
            frontier = new
        return orbit

    def restricted_weights(self, p, r):
        """All p^r-restricted weights in lexicographic order."""
        if p <= 1 or r < 1:
            raise ValueError(f"need p >= 2 and r >= 1, got p={p}, r={r}")
        bound = p**r
        return [tuple(w) for w in itertools.product(range(bound), repeat=self.rank)]

    def in_gamma_h(self, nu):
        """True iff <nu, alpha_0^vee> < h, for dominant nu."""
        self.check_rank(nu)
        if not self.is_dominant(nu):
            raise NonDominantError(f"weight {nu} is not dominant")
        pairing = sum(c * m for c, m in zip(nu, self.highest_short_coroot))
        return pairing < self.coxeter_number

    def dominant_weights_below(self, lam):
        """All dominant mu <= lam in dominance order (lam included)."""
        self.check_rank(lam)
        if not self.is_dominant(lam):
            raise NonDominantError(f"weight {lam} is not dominant")
        bounds = [int(n) for n in self.root_coords(lam)]
        found = []
        for coeffs in itertools.product(*(range(b + 1) for b in bounds)):
            mu = tuple(
                lam[i]
                - sum(coeffs[j] * self.cartan.entries[j][i] for j in range(self.rank))
                for i in range(self.rank)
            )
            if all(c >= 0 for c in mu):
                found.append(mu)
        return sorted(found)

    def weyl_dimension(self, lam):
        """Weyl dimension formula, as an exact integer."""
        self.check_rank(lam)
        if not self.is_dominant(lam):
            raise NonDominantError(f"weight {lam} is not dominant")
        lam_rho = tuple(c + 1 for c in lam)
        value = Fraction(1)
        for root in self.positive_roots:
            value *= Fraction(
                self.bilinear(lam_rho, root), self.bilinear(self.rho, root)
            )
        assert value.denominator == 1
        return int(value)

    def __repr__(self):
        return f"RootSystem(rank={self.rank}, positive_roots={len(self.positive_roots)})"


def build_root_system(cartan):
    """Construct a RootSystem from a CartanMatrix, matrix rows, or a name."""
    if isinstance(cartan, str):
        cartan = CartanMatrix.builtin(cartan)
    return RootSystem(cartan)
