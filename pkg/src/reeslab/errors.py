"""Exception types shared across the package."""

from __future__ import annotations


class ReesLabError(Exception):
    """Base class for all library errors."""


# group core
class NotLatinSquare(ReesLabError):
    pass


class NoIdentity(ReesLabError):
    pass


class NotAssociative(ReesLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"associativity fails at {witness}")


class NotAPermutation(ReesLabError):
    pass


class OrderLimitExceeded(ReesLabError):
    pass


class BadIndex(ReesLabError):
    pass


class NotAHomomorphism(ReesLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"homomorphism law fails at {witness}")


# bimodules
class InvalidBimodule(ReesLabError):
    pass


class InvalidGroupData(ReesLabError):
    pass


class NotRightFree(ReesLabError):
    pass


class NotATransversal(ReesLabError):
    pass


# tensor monoids
class BimoduleMismatch(ReesLabError):
    pass


class ProductsNotEqual(ReesLabError):
    pass


class NotAMorphism(ReesLabError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a bimodule morphism at {witness}")


class WellDefinednessViolation(ReesLabError):
    pass


# self-similar actions
class AxiomViolation(ReesLabError):
    def __init__(self, axiom: str, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} fails at {witness}")


class NotEndomorphism(ReesLabError):
    pass


class GammaNotFunctional(ReesLabError):
    pass


class QuotientIllDefined(ReesLabError):
    pass


# universal groups
class InverseLetterWithoutAutomorphism(ReesLabError):
    pass


class NotIrreducible(ReesLabError):
    pass


class MixedGroups(ReesLabError):
    pass


class NotLeftSymmetric(ReesLabError):
    pass


class WordTooLong(ReesLabError):
    pass


# cli / io
class UnknownName(ReesLabError):
    pass


class SchemaError(ReesLabError):
    pass
