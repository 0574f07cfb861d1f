"""Band edges of Lamé-type periodic potentials from quantum Hamilton-Jacobi residues."""
from .elliptic import EllipticDomainError, JacobiValues, complete_K, jacobi
from .potentials import Family, PotentialSpec, evaluate, fundamental_period, susy_offset
from .qhj import (
    BandEdgeSolution,
    BandEdgeSpectrum,
    MatrixPencil,
    QHJError,
    SolutionFamily,
    band_edge_energies,
    build_pencil,
    enumerate_families,
    full_spectrum,
)
from .oracle import band_edges, bloch_eigenvalues, verify

__version__ = "0.1.0"
