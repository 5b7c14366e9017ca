"""Exact computer algebra for singular vectors of Verma modules over cga_ell(1, C)."""

from .combinatorics import Partition, bernoulli_number, bernoulli_poly, count_no_ones, partition_stats, partitions_of
from .polyring import OMEGA, Eisenstein, MultiPoly
from .solver import (
    TruncatedSeries,
    brute_force_kernel,
    product_expansion,
    s_poly,
    shapovalov_inner,
    t0_poly,
    t_lambda,
    t_poly,
    weight_of,
    xu_solve,
)
from .symfunc import PExpr, a_coeffs, cauchy_check, e_in_p, expand_basis, power_sum_system_poly, reduce_p, reduce_p_mod_p1, u_poly
from .verma import CharSeries, SingularVector, char_F, char_M, counterexample_check, singular_vectors, to_enveloping, verify_singular
from .weyl import CgaElement, DiffOp, bracket, check_homomorphism, fourier, pi, pi_hat, pi_hat_res, sl2_triple

__version__ = "0.1.0"
