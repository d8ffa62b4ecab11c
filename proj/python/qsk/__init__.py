"""Python bindings for the qsk C++ library."""

from ._core import (
    ExtractionError,
    ObservableError,
    Realization,
    certified_bits,
    cglmp_realization,
    classical_bound,
    coefficient_a,
    cyclotomic,
    extract,
    ideal_alice_observables,
    ideal_realization,
    local_bound,
    maximally_entangled,
    probabilities,
    quantum_bound,
    satwap_value,
    scramble,
    sos_residuals,
    t_observable,
    w_alice,
    z_observable,
)

__all__ = [
    "ExtractionError",
    "ObservableError",
    "Realization",
    "certified_bits",
    "cglmp_realization",
    "classical_bound",
    "coefficient_a",
    "cyclotomic",
    "extract",
    "ideal_alice_observables",
    "ideal_realization",
    "local_bound",
    "maximally_entangled",
    "probabilities",
    "quantum_bound",
    "satwap_value",
    "scramble",
    "sos_residuals",
    "t_observable",
    "w_alice",
    "z_observable",
]
