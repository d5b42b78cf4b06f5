"""Exact-arithmetic and numerical machinery around Hecke coefficient
operators, integral quaternions, and cusp geometry on hyperbolic 4-space.

Subpackage map:

* clifford     exact Clifford algebras C_n, involutions, group membership
* quaternions  Lipschitz quaternions, norm-p orbits, valuation lemma sweeps
* geometry     2x2 quaternion matrices acting on H^4, fundamental domain
* hecke        coefficient fields over Q(sqrt p) and the three operators
* sums         lattice sums, amplification bookkeeping, inequality reports
* asymptotics  the recursion-to-decay lemma with explicit constants
* numerics     K-Bessel of imaginary order, Parseval and cusp-mass checks
* files, cli   file formats and the command-line front end
"""

from .clifford import CliffordElement, involution, is_clifford_group_member, multiply, vector_utils
from .geometry import (
    IsometryMatrix,
    PointH4,
    act,
    is_in_region,
    is_integral_sv2,
    pseudo_det,
    reduce_to_fundamental_domain,
    verify_cusp_decomposition,
)
from .hecke import (
    CoefficientField,
    EigenvalueTriple,
    QComplex,
    QuadExt,
    apply_hecke,
    eigen_residual,
    epsilon_factor,
    legendre_symbol,
    verify_commutativity,
    verify_hecke_relation,
)
from .quaternions import (
    NormPOrbitTable,
    Quaternion,
    conjugate_action,
    enumerate_norm,
    orbit_representatives,
    valuation,
    verify_conjugation_lemmas,
)
from .sums import (
    MultiplicitySpec,
    PrimeWindow,
    amplified_sum,
    choose_parameters,
    inequality_report,
    partition_primes,
    split_sharp_flat,
    sum_R,
    sum_S_d,
    verify_R_shift_identity,
)
from .asymptotics import (
    DecayParams,
    SampledFunction,
    check_decay_conclusion,
    check_recursive_hypothesis,
    compute_R,
)
from .numerics import (
    SpectralForm,
    bessel_k_imag_order,
    cusp_sum_I,
    direct_cusp_integral,
    evaluate_form,
    laplace_eigen_residual,
    parseval_check,
)

__version__ = "0.1.0"
