"""Van der Put series, compatibility and Haar-measure preservation on Z/p^K Z."""

from vdput.analysis import (
    BranchMap,
    Condition,
    Verdict,
    Witness,
    branch_digit_map,
    check_compatible,
    check_measure_preserving,
    check_measure_preserving_local,
    check_mp_p2,
    oracle_bijective_mod,
    oracle_measure_preserving,
)
from vdput.construct import (
    SubstitutionFamily,
    build_additive_mp,
    build_affine_mp,
    build_xi,
    decompose_additive,
    example_section41,
    random_compatible,
    random_substitution_family,
)
from vdput.padic import PadicInt, Valuation, digit, from_integer, valuation
from vdput.vdp import (
    CompatibilityWitness,
    FunctionTable,
    VdpSeries,
    chi,
    coefficients,
    evaluate,
    normalize,
    to_table,
)

__version__ = "0.1.0"
