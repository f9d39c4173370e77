"""Tests for the RTT model and the quantum reduction checks."""

import pytest

from spectral_reduction.algebra.qscalars import Q_INV
from spectral_reduction.config import scoped_settings
from spectral_reduction.exceptions import ModelError
from spectral_reduction.noncommutative.polynomial import NCPoly
from spectral_reduction.noncommutative.serialization import certificate_doc, replay_doc
from spectral_reduction.quantum.reduction import (
    aux_targets,
    build_reduction,
    char_identity_targets,
    characteristic_coefficients,
    check_aux_relations,
    check_char_identity,
    check_closed_relation,
    check_M_structure,
    check_mu_diagonal_commute,
    check_tj_commute_with_M,
    closed_relation_targets,
    localize,
    select_s_hat_reading,
)
from spectral_reduction.quantum.rtt import (
    check_all_integrals_commute,
    check_classical_degeneration,
    check_qdet_centrality,
    check_xx_relations,
    permutation_length,
    qdet,
    regrade,
)


class TestRTTModel:
    """Tests for the N=2, n=1 RTT model."""

    def test_alphabet_and_relations(self, model_21):
        """Six generators and a nonempty quadratic relation set."""
        assert len(model_21.alphabet) == 6
        assert len(model_21.rels) > 0
        assert all(r.is_homogeneous() and r.degree() == 2 for r in model_21.rels.relations)

    def test_mu_shape(self, model_21):
        """mu is lower triangular with mu11 = 0."""
        mu = model_21.mu
        assert mu[0, 0].is_zero()
        assert mu[0, 1].is_zero()
        assert mu[1, 1]

    def test_relations_vanish_at_q_one(self, model_21):
        """Every relation vanishes with q = 1 and commuting generators."""
        report = check_classical_degeneration(model_21)
        assert report.verdicts
        assert report.all_members

    def test_xx_trivial_entries(self, model_21):
        """Entries of the mu_jj exchange relation that cancel identically are members."""
        report = check_xx_relations(model_21)
        assert report.by_entry("mu[2](2,2)").status == "member"
        assert report.by_entry("mu[2](1,1)").status == "member"
        assert set(report.counts()) <= {"member", "inconclusive", "fail"}

    def test_regrade_rejects_localized(self, reduction_21):
        """Regrading is only defined without sigma generators."""
        loc = localize(reduction_21)
        with pytest.raises(ModelError):
            regrade(loc.S[1, 0], 2)

    def test_permutation_length(self):
        """Inversion counts."""
        assert permutation_length((0, 1, 2)) == 0
        assert permutation_length((2, 1, 0)) == 3

    def test_qdet_leading_coefficient(self, model_21):
        """q-det(wI + L(z)) has a w^N coefficient equal to one."""
        det = qdet(model_21, offset_w=True)
        assert det.t(0, 0) == NCPoly.constant(model_21.alphabet, 1)


class TestReduction:
    """Tests for the reduction data at N=2, n=1."""

    def test_characteristic_coefficients(self, model_21):
        """t_0 = 1 and t_1 = -q^{-1} mu22."""
        t = characteristic_coefficients(model_21.mu)
        mu22 = model_21.mu[1, 1]
        assert len(t) == 2
        assert t[0] == NCPoly.constant(model_21.alphabet, 1)
        assert t[1] == -mu22.scale(Q_INV)

    def test_s_rows(self, reduction_21):
        """S has rows e_1 and nu."""
        S, nu = reduction_21.S, reduction_21.nu
        assert S[0, 1].is_zero()
        assert S[1, 0] == nu[0, 0]
        assert S[1, 1] == nu[0, 1]

    def test_char_identity_entries(self, model_21, reduction_21):
        """The last component is a member, the first fails at q=1, S mu - U S vanishes in row 1."""
        report = check_char_identity(model_21, reduction_21)
        assert report.by_entry("ch(2)").status == "member"
        assert report.by_entry("ch(1)").status == "fail"
        assert report.by_entry("Smu-US(1,1)").status == "member"

    def test_char_targets_keys(self, model_21, reduction_21):
        """Components then matrix entries."""
        keys = list(char_identity_targets(model_21, reduction_21))
        assert keys[:2] == ["ch(1)", "ch(2)"]
        assert "Smu-US(2,1)" in keys

    def test_s_hat_reading(self, model_21):
        """Only the q^{-1} reading satisfies the first auxiliary relation entrywise."""
        assert select_s_hat_reading(model_21) == "inverse"

    def test_mu_diagonal_empty_at_n2(self, model_21):
        """With one diagonal entry of mu below mu11 there is nothing to commute."""
        report = check_mu_diagonal_commute(model_21)
        assert report.verdicts == []

    def test_localization_adds_sigma(self, reduction_21):
        """Localization appends N^2 sigma generators and 2N^2 relations."""
        loc = localize(reduction_21)
        assert len(loc.alphabet) == 6 + 4
        assert len(loc.rels) == len(reduction_21.model.rels) + 8


def _replays(report, rels):
    """Every member certificate re-expands to its target, directly and from its document."""
    for verdict in report.verdicts:
        if verdict.status != "member":
            continue
        for certificate in verdict.certificates:
            assert certificate.verify(rels), verdict.id
            assert replay_doc(certificate_doc(verdict.id, certificate, rels)), verdict.id
    return True


ALLOWED = {"member", "inconclusive", "fail"}


class TestAuxiliaryRelations:
    """Auxiliary relations at N=2, n=1."""

    def test_au1_scalar_reading(self, model_21, reduction_21):
        """Two degree-one entries cannot lie in the quadratic ideal; the RTT entries can."""
        report = check_aux_relations(model_21, reduction_21)
        assert report.by_entry("au1(2,1)").status == "inconclusive"
        assert report.by_entry("au1(3,1)").status == "inconclusive"
        assert report.by_entry("au1(4,2)").status == "member"
        assert report.by_entry("au1(4,3)").status == "member"
        assert report.by_entry("au1(1,1)").status == "member"
        assert any(v.entry.startswith("au2(") for v in report.verdicts)
        assert set(report.counts()) <= ALLOWED
        assert _replays(report, model_21.rels)

    def test_au1_inverse_reading(self, model_21):
        """With the q^{-1} factor in the second leg every entry of the first relation is a member."""
        red = build_reduction(model_21, "inverse")
        report = check_aux_relations(model_21, red)
        au1 = [v for v in report.verdicts if v.entry.startswith("au1(")]
        assert len(au1) == 16
        assert all(v.status == "member" for v in au1)
        assert report.notes["s_hat_reading"] == "inverse"
        assert _replays(report, model_21.rels)

    def test_au1_targets_lift_into_z_ring(self, model_21, reduction_21):
        """Both relations build at the smallest size."""
        targets = aux_targets(model_21, reduction_21)
        assert "au1(4,4)" in targets
        assert any(key.startswith("au2(") and " z^" in key for key in targets)


class TestCommutingElements:
    """t_j, integrals of motion and q-det coefficients at N=2, n=1."""

    def test_tj_commute_with_M(self, model_21, reduction_21):
        """Commutators with the constant row of S and the vanishing row of mu are trivial members."""
        report = check_tj_commute_with_M(model_21, reduction_21)
        assert report.by_entry("[t1,S(1,1)]").status == "member"
        assert report.by_entry("[t1,S(1,2)]").status == "member"
        assert report.by_entry("[t1,SL^1(1,1)]").status == "member"
        assert "[t1,S(2,1)]" in {v.entry for v in report.verdicts}
        assert set(report.counts()) <= ALLOWED
        assert _replays(report, model_21.rels)

    def test_integrals_commute(self, model_21):
        """Pairwise commutators are members or undecided; none fails."""
        report = check_all_integrals_commute(model_21)
        assert report.verdicts
        assert report.notes["qdet_shift"] == "printed"
        assert set(report.counts()) <= {"member", "inconclusive"}
        assert _replays(report, model_21.rels)

    def test_qdet_centrality(self, model_21):
        """One verdict per nonzero coefficient and generator."""
        report = check_qdet_centrality(model_21)
        assert report.verdicts
        assert len(report.verdicts) % len(model_21.alphabet) == 0
        assert set(report.counts()) <= {"member", "inconclusive"}
        assert _replays(report, model_21.rels)


class TestLocalizedChecks:
    """M(z) = S L(z) S^{-1} at N=2, n=1."""

    def test_M_structure(self, model_21, reduction_21):
        """The first row holds; the (2,1) entry of the leading coefficient fails at q=1."""
        loc = localize(reduction_21)
        report = check_M_structure(model_21, reduction_21, loc=loc)
        assert report.by_entry("M^n-U(1,1)").status == "member"
        assert report.by_entry("M^n-U(1,2)").status == "member"
        assert report.by_entry("M^n-U(2,1)").status == "fail"
        assert "q=1 residue" in report.by_entry("M^n-U(2,1)").detail
        # e_1 S L^(0) sigma is the second row of S sigma
        assert report.by_entry("e1M^0(1)").status == "member"
        assert report.by_entry("e1M^0(2)").status == "member"
        assert _replays(report, loc.rels)

    def test_closed_relation_targets(self, model_21, reduction_21):
        """Both closed relations produce entries per z1, z2 monomial."""
        targets = closed_relation_targets(model_21, localize(reduction_21))
        assert any(key.startswith("A(") for key in targets)
        assert any(key.startswith("B(") for key in targets)

    def test_closed_relation_verdicts(self, model_21, reduction_21):
        """Every entry of (A) and (B) gets a verdict under small budgets."""
        loc = localize(reduction_21)
        with scoped_settings(max_rewrite_steps=2_000, max_monomials=2_000, max_wall_seconds=5.0):
            report = check_closed_relation(model_21, reduction_21, loc=loc)
        entries = [v.entry for v in report.verdicts]
        assert any(entry.startswith("A(") for entry in entries)
        assert any(entry.startswith("B(") for entry in entries)
        assert set(report.counts()) <= ALLOWED
        assert _replays(report, loc.rels)
