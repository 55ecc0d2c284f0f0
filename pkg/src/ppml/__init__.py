"""Path predicate modal logic: structures, unravellings, games and translations."""

__version__ = "0.1.0"

from .core import (Homomorphism, PointedStructure, PpTree, Signature, canonical_code,
                   count_homomorphisms, find_homomorphism, load_structure, product,
                   validate_pp_tree)
from .syntax import parse, to_text, modal_depth, modal_debt, rewrite_well_nested
from .semantics import DataKripkeModel, eval_datagl, eval_fol, eval_ppml
from .comonad import check_comonad_laws, ef_unravel, lift_morphism, unravel, unravel_at_chain
from .games import (build_bisim_span, decide_bisim_game, decide_graded_bisim,
                    is_bounded_morphism, strategy_to_kleisli)
from .canonical import canonical_model, nu_formula
from .translations import (datagl_to_structure, k_inverse, k_translate, phi_k,
                           standard_translation, structure_to_datagl, tr1, tr1_cdxp, tr2,
                           underline_k)
from .decision import (bml_sat, brute_force_ppml_sat, decide_k_bisim, model_check, ppml_sat)

__all__ = [
    "Homomorphism", "PointedStructure", "PpTree", "Signature", "canonical_code",
    "count_homomorphisms", "find_homomorphism", "load_structure", "product", "validate_pp_tree",
    "parse", "to_text", "modal_depth", "modal_debt", "rewrite_well_nested", "DataKripkeModel",
    "eval_datagl", "eval_fol", "eval_ppml", "check_comonad_laws", "ef_unravel", "lift_morphism",
    "unravel", "unravel_at_chain", "build_bisim_span", "decide_bisim_game", "decide_graded_bisim",
    "is_bounded_morphism", "strategy_to_kleisli", "canonical_model", "nu_formula",
    "datagl_to_structure", "k_inverse", "k_translate", "phi_k", "standard_translation",
    "structure_to_datagl", "tr1", "tr1_cdxp", "tr2", "underline_k", "bml_sat",
    "brute_force_ppml_sat", "decide_k_bisim", "model_check", "ppml_sat",
]
