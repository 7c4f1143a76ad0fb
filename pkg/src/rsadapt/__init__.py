"""Soft-decision Reed-Solomon decoding by parity-check matrix adaptation."""

from .adapt import (AdaptedMatrix, adapt_matrix, deg2_connect, rank_order,
                    symbol_adapt, symbol_reliability)
from .algebraic import (HardDecodeOutcome, dual_fill_row,
                        errors_erasures_decode, gmd_decode, hdd_decode)
from .decoder import (DecodeResult, DecoderConfig, adp_decode,
                      multi_group_decode, select_candidate)
from .galois import GaloisField, PRIMITIVE_POLYS
from .harness import (FerPoint, SimConfig, awgn_llr, bec_llr, ebn0_at_fer,
                      hdd_fer_analytic, rayleigh_llr, run_fer,
                      trace_convergence)
from .rscode import (RSCodeSpec, binary_expansion, bits_to_symbols, encode,
                     hard_bits, hard_symbols, parity_check_symbol,
                     random_codeword, symbols_to_bits, syndrome_symbol)
from .siso import (SpaConfig, damped_update, extrinsic, gradient, potential,
                   tanh_domain_update, tanh_map, tanh_unmap)

__version__ = "0.1.0"
