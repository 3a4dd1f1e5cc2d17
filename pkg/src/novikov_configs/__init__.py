"""delta/gamma configurations and Novikov-Betti numbers of generic simplicial 1-cocycles."""

from .cocycle import (CocycleComplex, ComplexFormatError, ValidationReport, form_distance,
                      load_complex, parse_complex, perturb, potentials, validate)
from .configurations import (Analysis, CheckReport, Configuration, FoldError, analyze,
                             bottleneck_delta, bottleneck_gamma, duality_check, fold,
                             stability_probe, sum_identity_check, theorem_tt_check,
                             window_stabilization_check)
from .cover import CoverWindow, WindowError, WindowSpec, build_window
from .estimator import NovikovConfigurations, check_complex, check_complexes
from .fixtures import load_fixture, random_complex
from .twisted import novikov_betti_alg_oracle, novikov_betti_exact_k1
from .values import Generators, IndeterminateComparison, ValueVector

__version__ = "0.1.0"

__all__ = [
    "Analysis", "CheckReport", "CocycleComplex", "ComplexFormatError", "Configuration",
    "CoverWindow", "FoldError", "Generators", "IndeterminateComparison", "NovikovConfigurations",
    "ValidationReport", "ValueVector", "WindowError", "WindowSpec", "analyze", "bottleneck_delta",
    "bottleneck_gamma", "build_window", "check_complex", "check_complexes", "duality_check",
    "fold", "form_distance", "load_complex", "load_fixture", "novikov_betti_alg_oracle",
    "novikov_betti_exact_k1", "parse_complex", "perturb", "potentials", "random_complex",
    "stability_probe", "sum_identity_check", "theorem_tt_check", "validate",
    "window_stabilization_check",
]
