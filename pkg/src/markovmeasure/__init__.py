"""Measures on [0, 1] driven by finite Markov chains and their multifractal
analysis."""

from .analysis import (dimension_entropy, dimension_tau, is_monofractal, legendre_spectrum,
                       support_box_dim, tau, tau_prime)
from .chain import (MarkovChain, bernoulli_chain, cantor_chain, cyclic_walk_chain,
                    non_maximal_3state, symmetric_chain, two_state_chain, uniform_rows_4state,
                    validate_chain)
from .gibbs import GibbsChain, gibbs_chain, gibbs_identity_deviation, maximal_chain
from .measure import Word, cdf, cylinder_mass, sample, support_count

__version__ = "0.1.0"
