"""Lengths, algebraic entropy and Kunz-type regularity tests for self-maps
of local rings presented as (k[x]/I) localized at the origin."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    DEGREVLEX,
    FieldSpec,
    MonomialOrder,
    Polynomial,
    PolyRing,
    format_polynomial,
    poly_arith,
    substitute,
)
from .groebner import (  # noqa: E402
    INFINITE,
    GroebnerBasis,
    Ideal,
    buchberger,
    colength,
    normal_form,
    standard_monomials,
)
from .local_ring import (  # noqa: E402
    INFINITE_OR_UNKNOWN,
    LocalLengthResult,
    LocalRingPresentation,
    embedding_dim,
    hilbert_samuel,
    local_length,
    regularity_check,
)
from .endomorphism import Endomorphism, contracting_check, iterate, validate  # noqa: E402
from .dynamics import (  # noqa: E402
    HKEstimate,
    KunzReport,
    LambdaSequence,
    LogRate,
    entropy_report,
    hk_estimate,
    kunz_test,
    lambda_n,
    nagata_sample_test,
    phi_cyclic,
)
from .parsing import parse_polynomial  # noqa: E402
