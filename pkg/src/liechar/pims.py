"""Injective-hull multiplicity calculus and the identity checks.

Houses the q_r(lambda) characters, both sides of the Chastkofsky-Jantzen
formula, Jantzen's basis identity, the bar-Q multiset, the truncated
induced-filtration character, and the socle-multiplicity comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .characters import (
    Character,
    frobenius_twist,
    leading_dominant_weights,
    steinberg_character,
    weyl_character,
)
from .decomp import to_simple_basis, weight_digits
from .errors import CoverageError, DataValidationError, DivisionFailure
from .finite import contributing_nus, finite_composition_multiplicities, steinberg_multiplicity
from .rootdata import CartanMatrix, RootSystem


def character_divide(num, den, rs):
    """Exact quotient q with den * q = num, by leading-term long division.

    Works in the Weyl basis; unique when it exists.  Raises DivisionFailure
    with the first obstructing remainder term otherwise.
    """
    if not den.support:
        raise ZeroDivisionError("division by the zero character")
    den_leads = leading_dominant_weights(den.support, rs)
    if not den_leads:
        raise DivisionFailure(max(den.support), den.support[max(den.support)])
    den_lead = max(den_leads)
    den_coeff = den.support[den_lead]
    remainder = num
    quotient = Character(rs.rank)
    while remainder.support:
        leads = leading_dominant_weights(remainder.support, rs)
        if not leads:
            top = max(remainder.support)
            raise DivisionFailure(top, remainder.support[top])
        lead = max(leads)
        coeff = remainder.support[lead]
        term_weight = tuple(a - b for a, b in zip(lead, den_lead))
        if any(c < 0 for c in term_weight) or coeff % den_coeff != 0:
            raise DivisionFailure(lead, coeff)
        c = coeff // den_coeff
        term = c * weyl_character(term_weight, rs)
        quotient = quotient + term
        remainder = remainder - term * den
    return quotient


@dataclass
class QrEntry:
    qhat_char: Character
    q_char: Character


class QrData:
    """ch Q-hat_r(lambda) and the quotient q_r(lambda) over the restricted weights.

    Validated at construction: ch St_r * q_r(lambda) reproduces the stored
    Q-hat character exactly, and the Steinberg entry is trivial.
    """

    def __init__(self, rs, p, r, qhat_chars, provenance):
        self.rs = rs
        self.p = p
        self.r = r
        self.provenance = provenance
        self.entries = {}
        st = steinberg_character(rs, p, r)
        st_weight = tuple((p**r - 1) * c for c in rs.rho)
        for lam, qhat in qhat_chars.items():
            lam = tuple(lam)
            try:
                q = character_divide(qhat, st, rs)
            except DivisionFailure as exc:
                raise DataValidationError(
                    f"Q-hat character for {lam} is not divisible by the "
                    f"Steinberg character: {exc}"
                ) from exc
            self.entries[lam] = QrEntry(qhat, q)
        unit = Character(rs.rank, {(0,) * rs.rank: 1})
        if st_weight in self.entries and self.entries[st_weight].q_char != unit:
            raise DataValidationError(
                "Steinberg entry must divide to the trivial character"
            )

    def qhat(self, lam):
        try:
            return self.entries[tuple(lam)].qhat_char
        except KeyError:
            raise CoverageError(tuple(lam), f"no Q-hat data for weight {lam}")

    def q(self, lam):
        try:
            return self.entries[tuple(lam)].q_char
        except KeyError:
            raise CoverageError(tuple(lam), f"no Q-hat data for weight {lam}")

    @classmethod
    def builtin_sl2(cls, p, r, rs=None):
        """Rank-1 data from the classical closed form.

        ch Q-hat_1(m) = chi(2p-2-m) + chi(m) for m <= p-2 and chi(p-1) at
        the Steinberg weight; higher r comes from products of twisted
        first-kernel characters over the base-p digits.
        """
        rs = rs or RootSystem(CartanMatrix.builtin("A1"))
        if rs.rank != 1:
            raise DataValidationError("built-in Q-hat data supports only rank 1")

        def qhat1(m):
            if m == p - 1:
                return weyl_character((p - 1,), rs)
            return weyl_character((2 * p - 2 - m,), rs) + weyl_character((m,), rs)

        qhat_chars = {}
        for lam in rs.restricted_weights(p, r):
            digits = weight_digits(lam, p)
            digits += [(0,)] * (r - len(digits))
            chi = Character(1, {(0,): 1})
            for i, digit in enumerate(digits):
                chi = chi * frobenius_twist(qhat1(digit[0]), p, i)
            qhat_chars[lam] = chi
        return cls(rs, p, r, qhat_chars, "built-in A1")

    @classmethod
    def from_json_dict(cls, doc, rs=None):
        """Load from {"type"/"cartan": ..., "p": ..., "r": ..., "entries":
        [{"lambda": [...], "qhat": <character JSON>}, ...]}."""
        if not isinstance(doc, dict):
            raise DataValidationError("Q-hat document must be an object")
        if rs is None:
            if "type" in doc:
                rs = RootSystem(CartanMatrix.builtin(doc["type"]))
            elif "cartan" in doc:
                rs = RootSystem(CartanMatrix.from_json_dict(doc["cartan"]))
            else:
                raise DataValidationError("document needs a 'type' or 'cartan' key")
        p = doc.get("p")
        r = doc.get("r")
        if not isinstance(p, int) or p < 2 or not isinstance(r, int) or r < 1:
            raise DataValidationError(f"invalid (p, r): ({p!r}, {r!r})")
        raw = doc.get("entries")
        if not isinstance(raw, list):
            raise DataValidationError("document needs an 'entries' list")
        qhat_chars = {}
        for entry in raw:
            try:
                lam = tuple(int(c) for c in entry["lambda"])
                qhat = Character.from_json_dict(entry["qhat"])
            except (KeyError, TypeError, ValueError) as exc:
                raise DataValidationError(f"malformed entry {entry!r}") from exc
            if qhat.rank != rs.rank:
                raise DataValidationError(f"entry {lam}: rank mismatch")
            qhat_chars[lam] = qhat
        return cls(rs, p, r, qhat_chars, "file")


def qr_character(lam, qrdata):
    """q_r(lambda), the Steinberg quotient of the injective-hull character."""
    return qrdata.q(lam)


def cj_lhs(lam, mu, p, r, provider, qrdata, method="simple_basis", widen=False):
    """[Q-hat_r(lambda) : U_r(mu)] = [chi_p(mu) . q_r(lambda*) : St_r]_{G(F_q)}."""
    rs = provider.rs
    chi = provider.simple_character(tuple(mu)) * qrdata.q(rs.dual_weight(tuple(lam)))
    return steinberg_multiplicity(
        chi, p, r, provider=provider, method=method, rs=rs, widen=widen
    )


def cj_rhs(lam, mu, p, r, provider, widen=False):
    """sum over nu of [L(mu) x L(nu) : L(lambda + p^r nu)]_G."""
    rs = provider.rs
    lam = tuple(lam)
    mu = tuple(mu)
    total = 0
    chi_mu = provider.simple_character(mu)
    for nu in contributing_nus([mu], lam, p, r, rs, widen=widen):
        product = chi_mu * provider.simple_character(nu)
        target = tuple(a + p**r * n for a, n in zip(lam, nu))
        total += to_simple_basis(product, provider).get(target, 0)
    return total


@dataclass
class MultiplicityTable:
    """Both routes of the Chastkofsky-Jantzen table over X_r x X_r."""

    row_labels: list
    col_labels: list
    lhs: dict
    rhs: dict
    mismatches: list = field(default_factory=list)

    def agrees(self):
        return not self.mismatches


def cj_table(p, r, provider, qrdata, method="simple_basis", widen=False, cells=None):
    """Assemble both CJ routes for every (lambda, mu) pair of restricted weights.

    cells, when given, is a callable mapping a worker over the row labels
    (used for parallel table assembly); the default is plain iteration.
    """
    rs = provider.rs
    labels = rs.restricted_weights(p, r)

    def compute_row(lam):
        row = {}
        for mu in labels:
            row[mu] = (
                cj_lhs(lam, mu, p, r, provider, qrdata, method=method, widen=widen),
                cj_rhs(lam, mu, p, r, provider, widen=widen),
            )
        return row

    mapper = cells or map
    lhs = {}
    rhs = {}
    mismatches = []
    for lam, row in zip(labels, mapper(compute_row, labels)):
        for mu, (left, right) in row.items():
            lhs[(lam, mu)] = left
            rhs[(lam, mu)] = right
            if left != right:
                mismatches.append((lam, mu, left, right))
    return MultiplicityTable(labels, labels, lhs, rhs, mismatches)


def jantzen_identity_check(chi, lam, nu, p, r, provider, qrdata):
    """Both sides of [chi : chi_p(p^r nu + lam)]_G =
    [chi . q_r(lambda*) : chi_p((p^r-1) rho + p^r nu)]_G."""
    rs = provider.rs
    lam = tuple(lam)
    nu = tuple(nu)
    lhs_target = tuple(p**r * n + c for n, c in zip(nu, lam))
    lhs = to_simple_basis(chi, provider).get(lhs_target, 0)
    shifted = chi * qrdata.q(rs.dual_weight(lam))
    rhs_target = tuple((p**r - 1) * c + p**r * n for c, n in zip(rs.rho, nu))
    rhs = to_simple_basis(shifted, provider).get(rhs_target, 0)
    return {"lhs": lhs, "rhs": rhs}


def barq_multiplicities(lam, p, r, provider, widen=False):
    """The PIM exponents defining bar-Q_r(lambda); zero entries dropped."""
    rs = provider.rs
    result = {}
    for mu in rs.restricted_weights(p, r):
        value = cj_rhs(lam, mu, p, r, provider, widen=widen)
        if value:
            result[mu] = value
    return result


def split_restricted(sigma, p, r):
    """sigma = sigma_0 + p^r sigma_1 with sigma_0 restricted, coordinatewise."""
    bound = p**r
    sigma0 = tuple(c % bound for c in sigma)
    sigma1 = tuple(c // bound for c in sigma)
    return sigma0, sigma1


def induced_socle_multiplicity(mu, sigma, p, r, provider):
    """Number of I(sigma) summands in the induced injective hull of L(mu)."""
    sigma0, sigma1 = split_restricted(tuple(sigma), p, r)
    chi = provider.simple_character(sigma0) * provider.simple_character(sigma1)
    return finite_composition_multiplicities(chi, p, r, provider).get(tuple(mu), 0)


def gk_truncated_character(bound, p, r, rs):
    """Character of the truncated induced-trivial filtration.

    Sum over dominant lam with <lam, alpha_0^vee> <= bound of
    chi(lam) . chi(lam*)^{(r)}, each section once.
    """
    if bound < 0:
        raise ValueError(f"bound must be nonnegative, got {bound}")
    total = Character(rs.rank)
    for lam in _dominant_weights_with_pairing_at_most(bound, rs):
        section = weyl_character(lam, rs) * frobenius_twist(
            weyl_character(rs.dual_weight(lam), rs), p, r
        )
        total = total + section
    return total


def _dominant_weights_with_pairing_at_most(bound, rs):
    coroot = rs.highest_short_coroot
    box = [bound // m for m in coroot]
    found = []
    for lam in itertools.product(*(range(b + 1) for b in box)):
        if sum(c * m for c, m in zip(lam, coroot)) <= bound:
            found.append(tuple(lam))
    return sorted(found)


def theorem45a_socle_check(lam, mu, p, r, provider, widen=False):
    """Socle multiplicities of L(mu) on both sides of the induced bar-Q identity.

    lhs goes through the bar-Q multiset and the induced-hull socle counts;
    rhs is the direct tensor-decomposition sum.
    """
    lam = tuple(lam)
    mu = tuple(mu)
    barq = barq_multiplicities(lam, p, r, provider, widen=widen)
    lhs = sum(
        count * induced_socle_multiplicity(mu_prime, mu, p, r, provider)
        for mu_prime, count in barq.items()
    )
    rhs = cj_rhs(lam, mu, p, r, provider, widen=widen)
    return {"lhs": lhs, "rhs": rhs}
