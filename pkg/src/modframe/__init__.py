"""modframe: finite lattices, module spectra and pointfree topology on
explicit finite rings and modules."""

from ._kernels import BACKEND
from .errors import ModframeError
from .finmod import (
    Caps,
    FiniteModule,
    FiniteRing,
    HomSet,
    Submodule,
    annihilator,
    build_module,
    build_ring,
    closure_fi,
    cyclic_product_module,
    end,
    fully_invariant_lattice,
    hom,
    is_prime,
    is_semiprime,
    lemma_checks,
    matrix_ring,
    module_predicates,
    primitive_submodules,
    product,
    quotient_module,
    regular_module,
    ring_product,
    simple_subquotients,
    submodule_as_module,
    submodule_generate,
    submodule_lattice,
    zmod,
)
from .order import (
    ClosureReport,
    FiniteLattice,
    MonotoneMap,
    adjoint,
    classify_closure,
    classify_lattice,
    compact_elements,
    distributive_elements,
    identity_map,
    maximal_excluders,
    points,
)
from .psi import (
    is_regular,
    ler,
    psi,
    psi_structure_checks,
    rather_below,
    regular_core,
    regular_part,
)
from .spectra import (
    FiniteQuantale,
    SpectrumSpace,
    max_space,
    mx_sobriety_report,
    primes_relative,
    pt_prt_compare,
    quantale_of_submodules,
    spec_space,
)
from .topology import (
    FiniteSpace,
    closed_irreducibles,
    find_homeomorphism,
    is_sober,
    is_spatial,
    open_set_lattice,
    pt_space,
    separation,
    soberification,
)

__version__ = "0.1.0"
