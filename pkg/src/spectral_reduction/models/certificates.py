"""Serialized membership certificates."""

from pydantic import BaseModel, Field


class TermDoc(BaseModel):
    """``coefficient * left * relation * right``; words are generator names joined by ``*``."""

    left: str = Field(default="1")
    relation: int = Field(description="Index into the relation list")
    right: str = Field(default="1")
    coefficient: str = Field(description="Element of Q(s), s = q^(1/2)")


class CertificateDoc(BaseModel):
    """Self-contained certificate: the target, the relations and the combination."""

    check_id: str
    N: int
    n: int
    localized: bool = Field(default=False)
    alphabet: list[str] = Field(default_factory=list)
    target: dict[str, str] = Field(default_factory=dict, description="word -> coefficient")
    relations: list[dict[str, str]] = Field(default_factory=list)
    terms: list[TermDoc] = Field(default_factory=list)
