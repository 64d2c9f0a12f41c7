"""Exception hierarchy.

Every error carries an optional ``witness`` (a face, a pair of faces, a
line number...) that pinpoints what went wrong.
"""


class PartitionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# complex-core
class FaceNotInComplex(PartitionError):
    pass


class ApexCollision(PartitionError):
    pass


class RelativeNotSubcomplex(PartitionError):
    pass


class NotPure(PartitionError):
    pass


class NonPseudomanifold(PartitionError):
    pass


# partition-engine
class NotAFacet(PartitionError):
    pass


class InvalidShelling(PartitionError):
    pass


class ResourceLimit(RuntimeError):
    """The search ran out of its node budget before reaching an answer."""

    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


# assembly
class GlueError(PartitionError):
    pass


class FacetContainment(GlueError):
    pass


class G1Violation(GlueError):
    pass


class G2NotSubcomplex(GlueError):
    pass


class SubsetPreconditionViolation(GlueError):
    pass


class UnverifiedScheme(PartitionError):
    pass


class NotAPosetIsomorphism(PartitionError):
    pass


class FoldingError(PartitionError):
    pass


class NotSimplicial(FoldingError):
    pass


class NotSurjective(FoldingError):
    pass


class Degenerate(FoldingError):
    pass


class F1Violation(FoldingError):
    pass


class F2Violation(FoldingError):
    pass


class CutError(PartitionError):
    pass


class LocusNotSubcomplex(CutError):
    pass


class LocusDimension(CutError):
    pass


class LocusNotSeparating(CutError):
    pass


# surfaces / corpus
class NotASurface(PartitionError):
    pass


class UnknownName(PartitionError, KeyError):
    pass


class SimplicialityFailure(PartitionError):
    pass


class NoSingularCircle(PartitionError):
    pass


class CornerAmbiguous(PartitionError):
    pass


# constructors
class ConstructionError(PartitionError):
    pass


class NotADisk(ConstructionError):
    pass


class UpsilonInvalid(ConstructionError):
    pass


class NotAMobius(ConstructionError):
    pass


class NotAnAnnulus(ConstructionError):
    pass


class NotAGraph(ConstructionError):
    pass


class NotRP2(ConstructionError):
    pass


class ClassificationFailure(ConstructionError):
    pass


class DiskAssertionFailure(ConstructionError):
    pass


class StructureViolation(ConstructionError):
    pass


# cli-io
class ParseError(PartitionError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message, witness=line)
        self.line = line


class SchemaError(PartitionError):
    pass


class HashMismatch(PartitionError):
    pass
