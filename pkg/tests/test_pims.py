import itertools

import pytest

from liechar import (
    Character,
    DataValidationError,
    DivisionFailure,
    QrData,
    Sl2DecompositionProvider,
    barq_multiplicities,
    character_divide,
    cj_lhs,
    cj_rhs,
    cj_table,
    gk_truncated_character,
    induced_socle_multiplicity,
    jantzen_identity_check,
    qr_character,
    steinberg_character,
    theorem45a_socle_check,
    weyl_character,
)
from liechar.pims import split_restricted


class TestCharacterDivide:
    def test_worked_example(self, rs_a1):
        num = weyl_character((4,), rs_a1) + weyl_character((0,), rs_a1)
        den = weyl_character((2,), rs_a1)
        quotient = character_divide(num, den, rs_a1)
        assert quotient == weyl_character((2,), rs_a1) - weyl_character((0,), rs_a1)
        assert den * quotient == num

    def test_unit_divisor(self, rs_a1):
        chi = weyl_character((5,), rs_a1)
        assert character_divide(chi, weyl_character((0,), rs_a1), rs_a1) == chi

    def test_parity_obstruction(self, rs_a1):
        with pytest.raises(DivisionFailure):
            character_divide(
                weyl_character((2,), rs_a1), weyl_character((1,), rs_a1), rs_a1
            )

    def test_zero_divisor(self, rs_a1):
        with pytest.raises(ZeroDivisionError):
            character_divide(weyl_character((2,), rs_a1), Character(1), rs_a1)

    def test_rank_two(self, rs_a2):
        a = weyl_character((1, 0), rs_a2)
        b = weyl_character((1, 1), rs_a2)
        assert character_divide(a * b, b, rs_a2) == a


class TestQrData:
    def test_p3_examples(self, qr3):
        rs = qr3.rs
        assert qr_character((2,), qr3) == weyl_character((0,), rs)
        assert qr_character((1,), qr3) == weyl_character((1,), rs)
        assert qr_character((0,), qr3) == weyl_character((2,), rs) - weyl_character(
            (0,), rs
        )

    @pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
    def test_division_invariant(self, p, r):
        qrdata = QrData.builtin_sl2(p, r)
        st = steinberg_character(qrdata.rs, p, r)
        for lam, entry in qrdata.entries.items():
            assert st * entry.q_char == entry.qhat_char

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_qhat_dimensions(self, p):
        qrdata = QrData.builtin_sl2(p, 1)
        for (m,), entry in qrdata.entries.items():
            expected = p if m == p - 1 else 2 * p
            assert entry.qhat_char.dimension() == expected

    def test_json_roundtrip(self, qr3):
        doc = {
            "type": "A1",
            "p": 3,
            "r": 1,
            "entries": [
                {"lambda": list(lam), "qhat": entry.qhat_char.to_json_dict()}
                for lam, entry in sorted(qr3.entries.items())
            ],
        }
        loaded = QrData.from_json_dict(doc)
        assert loaded.provenance == "file"
        for lam, entry in qr3.entries.items():
            assert loaded.q(lam) == entry.q_char

    def test_rejects_non_divisible_qhat(self, rs_a1):
        doc = {
            "type": "A1",
            "p": 3,
            "r": 1,
            "entries": [
                {"lambda": [0], "qhat": weyl_character((1,), rs_a1).to_json_dict()}
            ],
        }
        with pytest.raises(DataValidationError, match="not divisible"):
            QrData.from_json_dict(doc)

    def test_missing_weight(self, qr3):
        from liechar import CoverageError

        with pytest.raises(CoverageError):
            qr3.q((7,))


class TestChastkofskyJantzen:
    def test_lhs_row_lambda_zero(self, prov3, qr3):
        values = [cj_lhs((0,), (m,), 3, 1, prov3, qr3) for m in range(3)]
        assert values == [1, 0, 1]

    def test_rhs_row_lambda_zero(self, prov3):
        values = [cj_rhs((0,), (m,), 3, 1, prov3) for m in range(3)]
        assert values == [1, 0, 1]

    def test_rhs_row_lambda_one(self, prov3):
        values = [cj_rhs((1,), (m,), 3, 1, prov3) for m in range(3)]
        assert values == [0, 1, 0]

    def test_golden_table_p3(self, prov3, qr3):
        table = cj_table(3, 1, prov3, qr3)
        assert table.agrees()
        rows = [
            [table.lhs[(lam, mu)] for mu in table.col_labels]
            for lam in table.row_labels
        ]
        assert rows == [[1, 0, 1], [0, 1, 0], [0, 0, 1]]

    def test_golden_table_p2(self):
        provider = Sl2DecompositionProvider(2)
        table = cj_table(2, 1, provider, QrData.builtin_sl2(2, 1))
        assert table.agrees()
        rows = [
            [table.lhs[(lam, mu)] for mu in table.col_labels]
            for lam in table.row_labels
        ]
        assert rows == [[1, 1], [0, 1]]

    @pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (5, 1), (2, 2)])
    def test_steinberg_row_is_delta(self, p, r):
        provider = Sl2DecompositionProvider(p)
        qrdata = QrData.builtin_sl2(p, r)
        st_weight = (p**r - 1,)
        for mu in provider.rs.restricted_weights(p, r):
            expected = 1 if mu == st_weight else 0
            assert cj_lhs(st_weight, mu, p, r, provider, qrdata) == expected
            assert cj_rhs(st_weight, mu, p, r, provider) == expected

    def test_method_flag(self, prov3, qr3):
        for method in ("direct", "good_filtration", "simple_basis"):
            assert cj_lhs((0,), (2,), 3, 1, prov3, qr3, method=method) == 1

    def test_widening_changes_nothing(self, prov3, qr3):
        for lam in range(3):
            for mu in range(3):
                narrow = cj_rhs((lam,), (mu,), 3, 1, prov3)
                assert cj_rhs((lam,), (mu,), 3, 1, prov3, widen=True) == narrow
                assert (
                    cj_lhs((lam,), (mu,), 3, 1, prov3, qr3, widen=True)
                    == cj_lhs((lam,), (mu,), 3, 1, prov3, qr3)
                )


class TestJantzenIdentity:
    def test_simple_input(self, prov3, qr3):
        chi = prov3.simple_character((1,))
        record = jantzen_identity_check(chi, (1,), (0,), 3, 1, prov3, qr3)
        assert record == {"lhs": 1, "rhs": 1}

    def test_twisted_input(self, prov3, qr3):
        chi = prov3.simple_character((4,))
        record = jantzen_identity_check(chi, (1,), (1,), 3, 1, prov3, qr3)
        assert record["lhs"] == 1
        assert record["lhs"] == record["rhs"]

    def test_trivial_character(self, prov3, qr3):
        chi = weyl_character((0,), prov3.rs)
        record = jantzen_identity_check(chi, (0,), (1,), 3, 1, prov3, qr3)
        assert record == {"lhs": 0, "rhs": 0}

    def test_sweep_p3(self, prov3, qr3):
        for sigma in range(9):
            chi = weyl_character((sigma,), prov3.rs)
            for lam in range(3):
                for nu in range(3):
                    record = jantzen_identity_check(
                        chi, (lam,), (nu,), 3, 1, prov3, qr3
                    )
                    assert record["lhs"] == record["rhs"], (sigma, lam, nu)


class TestBarQ:
    def test_rows_p3(self, prov3):
        assert barq_multiplicities((0,), 3, 1, prov3) == {(0,): 1, (2,): 1}
        assert barq_multiplicities((1,), 3, 1, prov3) == {(1,): 1}
        assert barq_multiplicities((2,), 3, 1, prov3) == {(2,): 1}

    def test_total_positive(self, prov3):
        for lam in range(3):
            assert sum(barq_multiplicities((lam,), 3, 1, prov3).values()) >= 1


class TestInducedSocle:
    def test_split(self):
        assert split_restricted((8,), 3, 1) == ((2,), (2,))
        assert split_restricted((5, 7), 2, 1) == ((1, 1), (2, 3))

    def test_restricted_delta(self, prov3):
        assert induced_socle_multiplicity((2,), (2,), 3, 1, prov3) == 1
        assert induced_socle_multiplicity((0,), (2,), 3, 1, prov3) == 0

    def test_spot_value(self, prov3):
        assert induced_socle_multiplicity((2,), (8,), 3, 1, prov3) == 2

    def test_delta_sweep(self, prov3):
        for mu in range(3):
            for sigma in range(3):
                expected = 1 if mu == sigma else 0
                assert (
                    induced_socle_multiplicity((mu,), (sigma,), 3, 1, prov3)
                    == expected
                )


class TestGkTruncatedCharacter:
    def test_bound_zero(self, rs_a1):
        assert gk_truncated_character(0, 3, 1, rs_a1) == weyl_character((0,), rs_a1)

    def test_bound_one(self, rs_a1):
        chi = gk_truncated_character(1, 3, 1, rs_a1)
        assert chi.support == {(0,): 1, (4,): 1, (2,): 1, (-2,): 1, (-4,): 1}

    def test_a2_sections(self, rs_a2):
        chi = gk_truncated_character(1, 2, 1, rs_a2)
        assert chi.dimension() == 1 + 9 + 9

    def test_layering_is_additive(self, rs_a1):
        from liechar import frobenius_twist

        for bound in range(1, 5):
            delta = gk_truncated_character(bound, 3, 1, rs_a1) - gk_truncated_character(
                bound - 1, 3, 1, rs_a1
            )
            sections = Character(1)
            for lam in range(bound, bound + 1):
                sections = sections + weyl_character((lam,), rs_a1) * frobenius_twist(
                    weyl_character((lam,), rs_a1), 3, 1
                )
            assert delta == sections

    def test_rejects_negative_bound(self, rs_a1):
        with pytest.raises(ValueError):
            gk_truncated_character(-1, 3, 1, rs_a1)


class TestTheorem45a:
    def test_examples(self, prov3):
        assert theorem45a_socle_check((0,), (0,), 3, 1, prov3) == {"lhs": 1, "rhs": 1}
        assert theorem45a_socle_check((0,), (1,), 3, 1, prov3) == {"lhs": 0, "rhs": 0}
        assert theorem45a_socle_check((2,), (2,), 3, 1, prov3) == {"lhs": 1, "rhs": 1}

    def test_sweep_p3(self, prov3):
        for lam, mu in itertools.product(range(3), repeat=2):
            record = theorem45a_socle_check((lam,), (mu,), 3, 1, prov3)
            assert record["lhs"] == record["rhs"], (lam, mu)
