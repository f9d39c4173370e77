"""Tests for certificate serialization and replay."""

import pytest

from spectral_reduction.algebra.qscalars import S_HALF
from spectral_reduction.exceptions import CertificateError
from spectral_reduction.models import CertificateDoc
from spectral_reduction.noncommutative.membership import MembershipChecker
from spectral_reduction.noncommutative.serialization import (
    certificate_doc,
    parse_coefficient,
    poly_from_dict,
    poly_to_dict,
    read_certificate,
    replay_certificate,
    replay_doc,
    write_certificate,
)


@pytest.fixture
def member_doc(commuting_pair):
    """Certificate document for (xy - yx) x."""
    _, x, y, rels = commuting_pair
    target = (x * y - y * x) * x
    result = MembershipChecker(rels).check_scalar(target)
    return certificate_doc("test:member", result.certificate, rels)


class TestCoefficients:
    """Tests for coefficient text."""

    def test_parse_rational_function(self):
        """Coefficients read back with the symbol s."""
        assert parse_coefficient("(s**2 - 1)/s") == (S_HALF**2 - 1) / S_HALF
        assert parse_coefficient("1/2") == S_HALF**0 / 2

    def test_parse_garbage(self):
        """Unparseable coefficients raise a certificate error."""
        with pytest.raises(CertificateError):
            parse_coefficient("s +* 1")

    def test_polynomial_text_roundtrip(self, commuting_pair):
        """A polynomial survives its dictionary form."""
        alphabet, x, y, _ = commuting_pair
        poly = x * y - y * x
        assert poly_from_dict(alphabet, poly_to_dict(poly)) == poly


class TestReplay:
    """Tests for exact certificate replay."""

    def test_replay_member(self, member_doc):
        """A fresh certificate replays."""
        assert member_doc.terms
        assert replay_doc(member_doc)

    def test_tampered_coefficient(self, member_doc):
        """Scaling one coefficient breaks the replay."""
        member_doc.terms[0].coefficient = f"7*({member_doc.terms[0].coefficient})"
        assert not replay_doc(member_doc)

    def test_empty_certificate_for_zero(self):
        """No terms and a zero target replay."""
        doc = CertificateDoc(check_id="zero", N=2, n=1)
        assert replay_doc(doc)

    def test_file_roundtrip(self, member_doc, tmp_path):
        """Written certificates replay from disk."""
        path = write_certificate(member_doc, tmp_path / "certs" / "member.json")
        assert read_certificate(path).check_id == "test:member"
        assert replay_certificate(path)

    def test_malformed_file(self, tmp_path):
        """Non-JSON files raise a certificate error."""
        path = tmp_path / "bad.json"
        path.write_text("not json")
        with pytest.raises(CertificateError):
            read_certificate(path)

    def test_missing_file(self, tmp_path):
        """Missing files raise a certificate error."""
        with pytest.raises(CertificateError):
            read_certificate(tmp_path / "absent.json")

    def test_bad_relation_index(self, member_doc):
        """Terms pointing past the relation list are rejected."""
        member_doc.terms[0].relation = 99
        with pytest.raises(CertificateError):
            replay_doc(member_doc)
