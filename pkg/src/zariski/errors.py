"""Exception hierarchy.

Every error carries a ``stage`` naming the module that raised it; the CLI
maps the class to an exit code and prints the stage tag.
"""


class ZariskiError(Exception):
    stage = "zariski"

    def __init__(self, message: str = "", *, stage: str | None = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


# exact-core
class CoreError(ZariskiError):
    stage = "exact-core"


class PolySyntaxError(CoreError):
    pass


class NotHomogeneous(CoreError):
    pass


class BothZero(CoreError):
    pass


class ZeroPolynomial(CoreError):
    pass


# algebraic-closure
class ClosureError(ZariskiError):
    stage = "algebraic-closure"


class ConstantModulus(ClosureError):
    pass


class DivisionByZero(ClosureError, ZeroDivisionError):
    pass


class TowerTooDeep(ClosureError):
    pass


# curve-geometry
class GeometryError(ZariskiError):
    stage = "curve-geometry"


class NonReduced(GeometryError):
    pass


class NotSmooth(GeometryError):
    pass


class CommonComponent(GeometryError):
    pass


class ProjectionRetryExceeded(GeometryError):
    pass


class NotOnBothCurves(GeometryError):
    pass


class FNotSmoothAtP(GeometryError):
    pass


# complement-homology
class HomologyError(ZariskiError):
    stage = "complement-homology"


class IncompleteIntersections(HomologyError):
    pass


class NotADivisor(HomologyError):
    pass


class NotCyclic(HomologyError):
    pass


# cubic-picard
class PicardError(ZariskiError):
    stage = "cubic-picard"


class PointNotOnCurve(PicardError):
    pass


class NoDivisorWorks(PicardError):
    pass


class NotAnInflection(PicardError):
    pass


class UnsupportedCover(PicardError):
    pass


class UnsupportedGenus(PicardError):
    pass


class UnsupportedDegreePair(PicardError):
    pass


class BranchMismatch(PicardError):
    pass


# zariski-factory
class FactoryError(ZariskiError):
    stage = "zariski-factory"


class InvalidFamilySpec(FactoryError, ValueError):
    pass


class CatalogError(FactoryError):
    pass


class InsufficientCatalog(FactoryError):
    pass


class RetriesExceeded(FactoryError):
    pass


class ClassConditionFails(FactoryError):
    pass


class SmoothingRetriesExceeded(FactoryError):
    pass
