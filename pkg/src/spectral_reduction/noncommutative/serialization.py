"""Canonical text form of polynomials and certificates, and exact replay."""

import json
from pathlib import Path

from pydantic import ValidationError
from sympy import Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import parse_expr

from spectral_reduction.algebra.qscalars import K, SCALAR_FIELD
from spectral_reduction.exceptions import AlphabetMismatchError, CertificateError
from spectral_reduction.logging import get_logger
from spectral_reduction.models.certificates import CertificateDoc, TermDoc
from spectral_reduction.noncommutative.alphabet import Alphabet
from spectral_reduction.noncommutative.engines.base import Certificate
from spectral_reduction.noncommutative.polynomial import NCPoly, word_key
from spectral_reduction.noncommutative.relations import RelationSet

logger = get_logger(__name__)

_S = Symbol("s")


def parse_coefficient(text: str) -> object:
    """Read an element of Q(s) written with the symbol ``s``."""
    try:
        return SCALAR_FIELD.from_expr(parse_expr(text, local_dict={"s": _S}))
    except (SympifyError, SyntaxError, TypeError, ValueError) as e:
        raise CertificateError(f"Malformed coefficient {text!r}") from e


def poly_to_dict(poly: NCPoly) -> dict[str, str]:
    if poly.domain != K:
        raise CertificateError("Only scalar-coefficient polynomials are serialized")
    return {poly.alphabet.word_text(word): str(coeff) for word, coeff in poly.sorted_terms()}


def poly_from_dict(alphabet: Alphabet, data: dict[str, str]) -> NCPoly:
    terms = {}
    for text, coeff in data.items():
        value = parse_coefficient(coeff)
        if value:
            terms[alphabet.parse_word(text)] = value
    return NCPoly(alphabet, K, terms)


def certificate_doc(check_id: str, certificate: Certificate, rels: RelationSet) -> CertificateDoc:
    """Serialize a certificate with only the relations it uses, renumbered."""
    alphabet = certificate.target.alphabet
    used = sorted({term.relation for term in certificate.terms})
    renumber = {old: new for new, old in enumerate(used)}
    return CertificateDoc(
        check_id=check_id,
        N=alphabet.N,
        n=alphabet.n,
        localized=alphabet.localized,
        alphabet=alphabet.names(),
        target=poly_to_dict(certificate.target),
        relations=[poly_to_dict(rels.relations[k]) for k in used],
        terms=[
            TermDoc(
                left=alphabet.word_text(term.left),
                relation=renumber[term.relation],
                right=alphabet.word_text(term.right),
                coefficient=str(term.coeff),
            )
            for term in sorted(
                certificate.terms, key=lambda t: (word_key(t.left), t.relation, word_key(t.right))
            )
        ],
    )


def doc_alphabet(doc: CertificateDoc) -> Alphabet:
    alphabet = Alphabet.build(doc.N, doc.n)
    if doc.localized:
        alphabet = alphabet.with_localization()
    if doc.alphabet and doc.alphabet != alphabet.names():
        raise AlphabetMismatchError(f"Certificate {doc.check_id} was written for another alphabet")
    return alphabet


def replay_doc(doc: CertificateDoc) -> bool:
    """Re-expand sum coefficient * left * relation * right and compare exactly."""
    alphabet = doc_alphabet(doc)
    relations = [poly_from_dict(alphabet, r) for r in doc.relations]
    total = NCPoly.zero(alphabet)
    for term in doc.terms:
        if not 0 <= term.relation < len(relations):
            raise CertificateError(f"Relation index {term.relation} out of range")
        piece = relations[term.relation].lmul_word(
            alphabet.parse_word(term.left), alphabet.parse_word(term.right)
        )
        total = total + piece.scale(parse_coefficient(term.coefficient))
    return total == poly_from_dict(alphabet, doc.target)


def write_certificate(doc: CertificateDoc, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(doc.model_dump_json(indent=2))
    return path


def read_certificate(path: str | Path) -> CertificateDoc:
    """Load a certificate file.

    Raises:
        CertificateError: If the file is missing or does not match the schema.
    """
    try:
        return CertificateDoc.model_validate(json.loads(Path(path).read_text()))
    except FileNotFoundError as e:
        raise CertificateError(f"No certificate at {path}") from e
    except (json.JSONDecodeError, ValidationError) as e:
        raise CertificateError(f"Malformed certificate {path}: {e}") from e


def replay_certificate(path: str | Path) -> bool:
    doc = read_certificate(path)
    ok = replay_doc(doc)
    logger.info(f"Replay {doc.check_id}: {'pass' if ok else 'fail'}")
    return ok
