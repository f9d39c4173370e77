"""Tests for noncommutative polynomials, relations and membership."""

import pytest

from spectral_reduction.algebra.qscalars import Q_MINUS_QINV, coefficient_ring
from spectral_reduction.algebra.rmatrix import build_Y_Z_K_Rtilde
from spectral_reduction.exceptions import AlphabetMismatchError, LocalizationError, ModelError
from spectral_reduction.noncommutative.alphabet import Alphabet, GenId
from spectral_reduction.noncommutative.membership import MembershipChecker, normal_form
from spectral_reduction.noncommutative.polynomial import NCMatrix, NCPoly


class TestAlphabet:
    """Tests for the generator alphabet."""

    def test_build_n2(self):
        """N=2, n=1 has mu21, mu22 and the four L0 entries, mu first."""
        alphabet = Alphabet.build(2, 1)
        assert alphabet.names() == ["mu21", "mu22", "L0_11", "L0_12", "L0_21", "L0_22"]

    def test_size_count(self):
        """nN^2 coefficients plus N(N+1)/2 - 1 entries of mu."""
        alphabet = Alphabet.build(3, 2)
        assert len(alphabet) == 2 * 9 + 5

    def test_invalid_size(self):
        """N < 2 is rejected."""
        with pytest.raises(ModelError):
            Alphabet.build(1, 1)

    def test_localize_once(self):
        """sigma generators are appended once."""
        localized = Alphabet.build(2, 1).with_localization()
        assert localized.names()[-4:] == ["sig11", "sig12", "sig21", "sig22"]
        with pytest.raises(LocalizationError):
            localized.with_localization()

    def test_parse_word(self):
        """Words print and parse by generator name."""
        alphabet = Alphabet.build(2, 1)
        word = alphabet.parse_word("mu21*L0_12")
        assert word == (0, 3)
        assert alphabet.word_text(word) == "mu21*L0_12"
        assert alphabet.parse_word("1") == ()

    def test_parse_unknown(self):
        """Unknown names raise an alphabet error."""
        with pytest.raises(AlphabetMismatchError):
            Alphabet.build(2, 1).parse_word("mu11")


class TestNCPoly:
    """Tests for NCPoly arithmetic."""

    def test_commutator_not_zero(self, commuting_pair):
        """xy - yx is a nonzero noncommutative polynomial."""
        _, x, y, _ = commuting_pair
        assert x.commutator(y)
        assert x.commutator(x).is_zero()

    def test_commutator_vanishes_at_q_one(self, commuting_pair):
        """Commuting specialization kills a commutator."""
        _, x, y, _ = commuting_pair
        assert not x.commutator(y).specialize_commutative(1)

    def test_degree_and_homogeneity(self, commuting_pair):
        """x*y + x is inhomogeneous of degree 2."""
        _, x, y, _ = commuting_pair
        poly = x * y + x
        assert poly.degree() == 2
        assert not poly.is_homogeneous()
        assert sorted(poly.homogeneous_components()) == [1, 2]

    def test_alphabet_mismatch(self, commuting_pair):
        """Polynomials over different alphabets do not mix."""
        _, x, _, _ = commuting_pair
        other = NCPoly.generator(Alphabet.build(3, 1), GenId.mu(2, 1))
        with pytest.raises(AlphabetMismatchError):
            x + other

    def test_lift_substitutes_into_ring(self, commuting_pair):
        """t1 in Z_12 becomes a scalar-domain NCPoly lifted into Q(s)[z]."""
        alphabet, _, y, _ = commuting_pair
        ring = coefficient_ring(("z",))
        Z12 = NCMatrix.from_cmatrix(build_Y_Z_K_Rtilde(2).Z12, alphabet, ring, {"t1": y})
        expected = y.with_domain(ring).scale(ring.gens[0] * ring.ground_new(Q_MINUS_QINV))
        assert Z12[3, 1] == expected
        assert Z12[0, 0] == NCPoly.constant(alphabet, 1, ring)
        assert Z12[1, 0].is_zero()


class TestMembership:
    """Tests for the membership facade."""

    def test_right_multiple_is_member(self, commuting_pair):
        """(xy - yx) x lies in the ideal and its certificate replays."""
        _, x, y, rels = commuting_pair
        target = (x * y - y * x) * x
        result = MembershipChecker(rels).check_scalar(target)
        assert result.is_member
        assert result.certificate is not None
        assert result.certificate.verify(rels)

    def test_square_is_inconclusive(self, commuting_pair):
        """x^2 is not reached at the default degree bound."""
        _, x, _, rels = commuting_pair
        result = MembershipChecker(rels).check(x * x)
        assert not result.is_member
        assert result.status == "inconclusive"

    def test_zero_target(self, commuting_pair):
        """The zero polynomial is trivially a member."""
        alphabet, _, _, rels = commuting_pair
        assert MembershipChecker(rels).check_scalar(NCPoly.zero(alphabet)).is_member

    def test_normal_form_sorts_letters(self, commuting_pair):
        """y x rewrites to x y."""
        _, x, y, rels = commuting_pair
        assert normal_form(y * x, rels) == x * y

    def test_normal_form_longer_word(self, commuting_pair):
        """Repeated rewrites sort every letter of y y x x."""
        _, x, y, rels = commuting_pair
        assert normal_form(y * y * x * x + y * x, rels) == x * x * y * y + x * y
