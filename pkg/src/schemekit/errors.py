"""Exception hierarchy shared by every schemekit module."""


class SchemeError(Exception):
    """Base class for all schemekit errors."""


class AxiomViolation(SchemeError, ValueError):
    """The relation matrix does not define a commutative association scheme.

    ``axiom`` is one of ``"A1"`` .. ``"A5"``; ``witness`` is a pair ``(x, y)``
    or a triple ``(x, y, z)`` exhibiting the failure (or ``None``).
    """

    def __init__(self, axiom, message, witness=None):
        self.axiom = axiom
        self.witness = witness
        text = f"axiom {axiom} violated: {message}"
        if witness is not None:
            text += f" (witness {witness})"
        super().__init__(text)


class NotAScheme(AxiomViolation):
    def __init__(self, message, witness=None):
        super().__init__("A4", message, witness)


class NonCommutative(AxiomViolation):
    def __init__(self, message, witness=None):
        super().__init__("A5", message, witness)


class InconsistentProduct(SchemeError):
    """A_i A_j is not constant on some relation."""


class BoundsExceeded(SchemeError, ValueError):
    pass


class DegenerateCombination(SchemeError):
    """Random combination of intersection matrices had clustered eigenvalues."""


class SpectrumInconsistent(SchemeError):
    pass


class SingularBasis(SchemeError):
    pass


class MalformedLabeling(SchemeError, ValueError):
    pass


class InferenceFailed(SchemeError):
    """Greedy labeling inference gave up; this is not a proof of non-polynomiality."""

    def __init__(self, message, partial=None, certificate=None):
        self.partial = partial
        self.certificate = certificate
        super().__init__(f"inference failed: {message}")


class AmbiguousLabeling(InferenceFailed):
    def __init__(self, multidegree, candidates, partial=None):
        self.multidegree = tuple(multidegree)
        self.candidates = tuple(sorted(candidates))
        super().__init__(
            f"multidegree {self.multidegree} could label any of {self.candidates}",
            partial,
        )


class IncompleteLabeling(InferenceFailed):
    def __init__(self, labeled, total, partial=None):
        self.labeled = labeled
        self.total = total
        super().__init__(f"frontier exhausted with {labeled} of {total} indices labeled", partial)


class SingularSystem(SchemeError):
    pass


class StaircaseGap(SchemeError):
    def __init__(self, point):
        self.point = tuple(point)
        super().__init__(f"exterior multidegree {self.point} is not covered by any generator")


class NonzeroRemainderAtA(SchemeError):
    def __init__(self, generator, variable):
        self.generator = generator
        self.variable = variable
        if variable is None:
            super().__init__(f"{generator} does not vanish at the generators")
        else:
            super().__init__(f"x_{variable + 1} * {generator} does not reduce to zero at the generators")


class OracleDomainError(SchemeError, ValueError):
    pass
