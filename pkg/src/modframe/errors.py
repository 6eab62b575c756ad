"""Exception types shared across the package."""


class ModframeError(Exception):
    """Base class for every error raised by this library."""


class PreconditionError(ModframeError, ValueError):
    """An operation was invoked outside its stated contract."""


class InvalidTables(ModframeError, ValueError):
    """An operation table violates a structure axiom.

    Carries the failing law and a witness tuple of element indices.
    """

    def __init__(self, structure, law, witness):
        self.structure = structure
        self.law = law
        self.witness = witness
        super().__init__(f"{structure}: {law} fails at {witness}")


class IncompatibleModuli(PreconditionError):
    """Cyclic-product moduli must divide the base modulus."""


class SizeCapExceeded(ModframeError):
    """A configured enumeration cap was hit."""


class NotALattice(ModframeError, ValueError):
    """The given order is not a complete lattice."""

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason} at {witness}"
        super().__init__(msg)


class NotMonotone(ModframeError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not monotone at {witness}")


class NotJoinPreserving(ModframeError):
    """Adjoint construction needs a map preserving all joins."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map fails to preserve the join of {witness}")


class ProductRequired(PreconditionError):
    """Multiplicative/quantic flags need a product table."""


class NotAFrame(PreconditionError):
    """The lattice fails the frame test."""


class NotFullyInvariant(PreconditionError):
    """The submodule is not stable under all endomorphisms."""


class NotProper(PreconditionError):
    """The submodule must be proper."""


class NotAssociative(ModframeError):
    """Quantale product fails associativity; carries a witness triple."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"product not associative at {witness}")


class NotSubQuasiQuantale(ModframeError):
    """The chosen base carrier fails the sub-quasi-quantale conditions."""
