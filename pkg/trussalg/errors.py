class TrussAlgError(RuntimeError):
    pass


class WitnessedError(TrussAlgError):
    """
    Base class for failures that can point at a concrete counterexample.

    Attributes:
        witness (tuple, None): The offending tuple of element labels.
    """

    def __init__(self, message=None, witness=None):
        self.witness = witness
        if message is None:
            message = f"witness {witness!r}"
        TrussAlgError.__init__(self, message)


# Axioms
class AxiomViolation(WitnessedError):
    def __init__(self, axiom, witness=None, structure=None):
        self.axiom = axiom
        self.structure = structure
        where = f" in `{structure}`" if structure else ""
        WitnessedError.__init__(
            self, f"Axiom {axiom} fails{where} at {witness!r}.", witness=witness
        )


class EmptyHeap(TrussAlgError):
    pass


class ElementNotInCarrier(TrussAlgError):
    def __init__(self, element, structure=None):
        self.element = element
        self.structure = structure
        TrussAlgError.__init__(
            self, f"{element!r} is not an element of `{structure or 'structure'}`."
        )


# Substructures and morphisms
class NotASubheap(WitnessedError):
    pass


class NotInduced(WitnessedError):
    pass


class NotASubHeapOfModules(WitnessedError):
    pass


class NotAMorphism(WitnessedError):
    pass


class NotATrussMorphism(NotAMorphism):
    pass


class NotIsotropic(WitnessedError):
    pass


class NotSurjectiveProjection(WitnessedError):
    pass


# Verification
class VerificationFailure(WitnessedError):
    def __init__(self, check, witness=None):
        self.check = check
        WitnessedError.__init__(
            self, f"Verification of {check} failed at {witness!r}.", witness=witness
        )


class ConditionViolation(WitnessedError):
    def __init__(self, condition, witness=None):
        self.condition = condition
        WitnessedError.__init__(
            self, f"Condition ({condition}) fails at {witness!r}.", witness=witness
        )


class InconsistentDecomposition(WitnessedError):
    pass


# Isomorphism search
class SizeMismatch(TrussAlgError):
    pass


class NotIsomorphic(TrussAlgError):
    pass


# Structure files
class StructureSyntaxError(SyntaxError):
    def __init__(self, msg, line, col, text=None, filename=None):
        SyntaxError.__init__(self, msg, (filename, line, col, text))
        self.line = line
        self.col = col

    def __str__(self):
        return f"{self.msg} (line {self.line}, column {self.col})"


class UnresolvedReference(TrussAlgError):
    def __init__(self, name, kind=None):
        self.name = name
        self.kind = kind
        TrussAlgError.__init__(
            self,
            f"No {kind.value if hasattr(kind, 'value') else kind or 'structure'} named `{name}`.",
        )


class TableNotTotal(TrussAlgError):
    pass
