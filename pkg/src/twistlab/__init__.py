"""High-precision invariants, expansion polynomials and twist identities
for degree-2 Dirichlet series.

The package is organized around one working-precision context (mpmath's
global `mp`); set `mp.prec` before calling in, or use the helpers in
`twistlab.precision`.
"""

__version__ = "0.1.0"

from .arith import (divisors, factorize, is_squarefree, moebius,
                    multiplicative_order, prime_factors, primes_up_to,
                    totient)
from .bernoulli import bernoulli_number, bernoulli_poly_coeffs
from .characters import (DirichletCharacter, character_group, gauss_sum,
                         principal_character, ramanujan_sum)
from .dirichlet import (build_residue_sums, coeff_mass_bound, phase_table,
                        power_table, prefix_sums, rounding_radius,
                        series_tail_radius, unit_roots)
from .expansion import (CTable, ExpansionTables, asymptotic_residual_C,
                        asymptotic_residual_expV, build_tables,
                        calibrate_growth, compute_A, compute_C, compute_Q,
                        compute_R, compute_V, ctable_series_oracle,
                        load_tables, q_assembly_residual, save_tables)
from .extraction import (ExtractionReport, ExtractionSpec, GkCheckResult,
                         conductor_int, extract_euler, gk_identity_check,
                         torus_g_values)
from .gamma_data import GammaFactorData, Invariants, h_invariant, invariants
from .kronecker import (SearchBoundExceeded, TauSearchSpec, TauWitness,
                        tau_search, verify_witness)
from .lseries import (LSeries, LSeriesFormatError, catalog, catalog_names,
                      euler_inverse_coeffs, get_lseries, log_euler_coeffs,
                      lseries_from_file, lseries_to_file, prime_power_coeffs)
from .mellin import (MellinCheckResult, mellin_smoothing_check,
                     smoothed_vs_contour)
from .polynomials import PolyC
from .probe import ProbeReport, collapse_check, theorem2_probe
from .twists import (linear_twist_eval, multiplier_coeffs, multiplier_value,
                     smoothed_twist_eval, sum_lemma_check,
                     twist_decomposition_check, twist_fourier_coeff)

__all__ = [name for name in dir() if not name.startswith("_")]
